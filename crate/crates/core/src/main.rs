use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ccsym::chen::{identity_suite, line_integral, transport, Form, QuadratureConfig};
use ccsym::parse::{
    parse_constant, parse_path, parse_point, parse_rational_function, parse_series, parse_sphere_point,
};
use ccsym::report::CheckReport;
use ccsym::verify::{
    bilinear_reciprocity_check, commutator_quadratic_check, lemma_check, main_theorem_check,
    weil_reciprocity_check, Lemma,
};
use ccsym::{
    cc_symbol_series, tame_symbol, AlgebraSpec, Backend, Error, GaussRat, LaurentSeries, Scalar, Signature,
};

#[derive(Parser)]
#[command(name = "ccsym", version, about = "Contou-Carrère symbols, Chen iterated integrals and reciprocity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the symbol of two series (or of two rational functions at --point)
    Symbol(PairArgs),
    /// Evaluate the tame symbol over the trivial algebra
    Tame(PairArgs),
    /// Print the canonical product factorization of a series
    Factorize(SingleArgs),
    /// Run an identity check
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Integrate df/f (and df/f ∘ dg/g when --g is given) along a path
    Integrate(IntegrateArgs),
}

#[derive(Args, Clone)]
struct AlgebraArg {
    /// Algebra, e.g. "gens=eps;degree=2;scalars=exact"
    #[arg(long, default_value = "gens=;degree=1;scalars=exact")]
    algebra: String,
}

#[derive(Args, Clone)]
struct QuadArgs {
    /// Runge-Kutta steps per path segment
    #[arg(long, default_value_t = 1024)]
    steps: usize,
    /// Pass threshold on the deviation
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    algebra: AlgebraArg,
    #[arg(long)]
    f: String,
    #[arg(long)]
    g: String,
    /// Expand rational functions at this point (a number or `inf`)
    #[arg(long)]
    point: Option<String>,
    #[arg(long, default_value_t = 16)]
    trunc: i64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SingleArgs {
    #[command(flatten)]
    algebra: AlgebraArg,
    #[arg(long)]
    f: String,
    #[arg(long)]
    point: Option<String>,
    #[arg(long, default_value_t = 16)]
    trunc: i64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct IntegrateArgs {
    #[command(flatten)]
    algebra: AlgebraArg,
    #[arg(long)]
    f: String,
    #[arg(long)]
    g: Option<String>,
    /// Path literal, e.g. "circle(0,1/2)"
    #[arg(long)]
    path: String,
    #[command(flatten)]
    quad: QuadArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Iterated-integral identities on small circles (ids 3.2 to 3.6)
    Lemma(LemmaArgs),
    /// exp((1/2πi) ∫ df/f ∘ dg/g) around one support point against the symbol
    MainTheorem(MainArgs),
    /// Exact product of local symbols over the support
    Weil(WeilArgs),
    /// Quadratic loop-sum identity for df/f and dg/g
    Bilinear(BilinearArgs),
    /// Quadratic term of a commutator of loops
    Commutator(CommutatorArgs),
    /// Shuffle, reversal, composition and homotopy checks
    Identities(IdentitiesArgs),
}

#[derive(Args)]
struct LemmaArgs {
    #[arg(long)]
    id: String,
    #[command(flatten)]
    algebra: AlgebraArg,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    n: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    j: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long)]
    f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    base: Option<String>,
    #[arg(long)]
    radius: Option<String>,
    #[command(flatten)]
    quad: QuadArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct MainArgs {
    #[command(flatten)]
    algebra: AlgebraArg,
    #[arg(long)]
    f: String,
    #[arg(long)]
    g: String,
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    #[arg(long, allow_hyphen_values = true)]
    base: String,
    #[arg(long)]
    radius: String,
    #[arg(long, default_value_t = 16)]
    trunc: i64,
    #[command(flatten)]
    quad: QuadArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WeilArgs {
    #[command(flatten)]
    algebra: AlgebraArg,
    #[arg(long)]
    f: String,
    #[arg(long)]
    g: String,
    #[arg(long, default_value_t = 16)]
    trunc: i64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BilinearArgs {
    #[command(flatten)]
    algebra: AlgebraArg,
    #[arg(long)]
    f: String,
    #[arg(long)]
    g: String,
    #[arg(long, allow_hyphen_values = true)]
    base: String,
    #[command(flatten)]
    quad: QuadArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CommutatorArgs {
    #[command(flatten)]
    algebra: AlgebraArg,
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    beta: String,
    /// ω₁ = df/f
    #[arg(long)]
    f: String,
    /// ω₂ = dg/g
    #[arg(long)]
    g: String,
    #[command(flatten)]
    quad: QuadArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct IdentitiesArgs {
    #[command(flatten)]
    quad: QuadArgs,
    #[arg(long)]
    json: bool,
}

fn algebra(arg: &AlgebraArg) -> Result<AlgebraSpec, Error> {
    AlgebraSpec::parse(&arg.algebra)
}

fn config(q: &QuadArgs, default_tol: f64) -> Result<QuadratureConfig, Error> {
    QuadratureConfig::new(q.steps, q.tol.unwrap_or(default_tol))
}

fn real(text: &str) -> Result<f64, Error> {
    let z = parse_point(text)?;
    let v = z.to_c64();
    if v.im != 0.0 || !(v.re > 0.0) {
        return Err(Error::InvalidInput(format!("expected a positive real number, got {text}")));
    }
    Ok(v.re)
}

fn need<T: Clone>(v: &Option<T>, flag: &str, id: &str) -> Result<T, Error> {
    v.clone()
        .ok_or_else(|| Error::InvalidInput(format!("lemma {id} needs --{flag}")))
}

fn series_pair(
    args: &PairArgs,
    sig: &Arc<Signature>,
) -> Result<(LaurentSeries<GaussRat>, LaurentSeries<GaussRat>), Error> {
    match &args.point {
        None => Ok((parse_series(&args.f, sig, args.trunc)?, parse_series(&args.g, sig, args.trunc)?)),
        Some(p) => {
            let s = parse_sphere_point(p)?;
            let f = parse_rational_function(&args.f, sig)?;
            let g = parse_rational_function(&args.g, sig)?;
            Ok((f.expand_at(&s, args.trunc)?, g.expand_at(&s, args.trunc)?))
        }
    }
}

enum Outcome {
    Done,
    Checks(Vec<CheckReport>, bool),
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Symbol(args) => {
            let spec = algebra(&args.algebra)?;
            let (f, g) = series_pair(&args, &spec.signature)?;
            let (text, value) = match spec.backend {
                Backend::Exact => {
                    let v = cc_symbol_series(&f, &g)?;
                    (v.to_string(), v.value.to_json())
                }
                Backend::Float => {
                    let v = cc_symbol_series(&f.to_float(), &g.to_float())?;
                    (v.to_string(), v.value.to_json())
                }
            };
            if args.json {
                println!("{}", json!({ "symbol": text, "value": value }));
            } else {
                println!("{text}");
            }
            Ok(Outcome::Done)
        }
        Command::Tame(args) => {
            let spec = algebra(&args.algebra)?;
            let (f, g) = series_pair(&args, &spec.signature)?;
            let v = tame_symbol(&f, &g)?;
            let text = match spec.backend {
                Backend::Exact => ccsym::scalar::ShowScalar(&v).to_string(),
                Backend::Float => ccsym::scalar::ShowScalar(&v.to_c64()).to_string(),
            };
            if args.json {
                let z = v.to_c64();
                println!("{}", json!({ "tame": text, "value": [z.re, z.im] }));
            } else {
                println!("{text}");
            }
            Ok(Outcome::Done)
        }
        Command::Factorize(args) => {
            let spec = algebra(&args.algebra)?;
            let sig = &spec.signature;
            let f = match &args.point {
                None => parse_series(&args.f, sig, args.trunc)?,
                Some(p) => parse_rational_function(&args.f, sig)?.expand_at(&parse_sphere_point(p)?, args.trunc)?,
            };
            let fac = f.factorize()?;
            if args.json {
                let side = |m: &std::collections::BTreeMap<i64, ccsym::ExactElem>| {
                    m.iter()
                        .map(|(j, a)| (j.to_string(), a.to_json()))
                        .collect::<serde_json::Map<_, _>>()
                };
                let out = json!({
                    "series": f.to_string(),
                    "nu": fac.nu,
                    "a0": fac.a0.to_json(),
                    "neg_factors": side(&fac.neg_factors),
                    "pos_factors": side(&fac.pos_factors),
                    "trunc_order": fac.trunc,
                });
                println!("{}", serde_json::to_string_pretty(&out).expect("json"));
            } else {
                println!("series  {f}");
                println!("nu      {}", fac.nu);
                println!("a0      {}", fac.a0);
                for (j, a) in fac.neg_factors.iter().chain(&fac.pos_factors) {
                    println!("a[{j}]    {a}");
                }
                println!("known for exponents below {}", fac.trunc);
            }
            Ok(Outcome::Done)
        }
        Command::Integrate(args) => {
            let spec = algebra(&args.algebra)?;
            let sig = &spec.signature;
            let cfg = config(&args.quad, 1e-8)?;
            let path = parse_path(&args.path)?;
            let f = Form::Dlog(parse_rational_function(&args.f, sig)?);
            let mut out: Vec<(&str, serde_json::Value)> = Vec::new();
            match &args.g {
                None => {
                    let v = line_integral(&f, &path, &cfg)?;
                    out.push(("df/f", json!({ "text": v.to_string(), "value": v.to_json() })));
                }
                Some(g) => {
                    let g = Form::Dlog(parse_rational_function(g, sig)?);
                    let series = transport(&[f, g], &path, 2, &cfg)?;
                    for (name, w) in [("df/f", &[0][..]), ("dg/g", &[1]), ("df/f.dg/g", &[0, 1])] {
                        let v = series.coeff(w).expect("tracked word");
                        out.push((name, json!({ "text": v.to_string(), "value": v.to_json() })));
                    }
                }
            }
            if args.json {
                let map: serde_json::Map<_, _> = out.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
                println!("{}", serde_json::to_string_pretty(&map).expect("json"));
            } else {
                for (k, v) in &out {
                    println!("{k:<10} {}", v["text"].as_str().unwrap_or_default());
                }
            }
            Ok(Outcome::Done)
        }
        Command::Verify { check } => {
            let (reports, json) = verify(check)?;
            Ok(Outcome::Checks(reports, json))
        }
    }
}

fn verify(check: VerifyCommand) -> Result<(Vec<CheckReport>, bool), Error> {
    Ok(match check {
        VerifyCommand::Lemma(a) => {
            let sig = algebra(&a.algebra)?.signature;
            let id = a.id.as_str();
            let radius = a.radius.as_deref().map(real).transpose()?;
            let radius_or = |d: f64| radius.unwrap_or(d);
            let elem = |v: &Option<String>, flag: &str| -> Result<_, Error> {
                parse_constant(&need(v, flag, id)?, &sig)
            };
            let lemma = match id {
                "3.2" => Lemma::PowersOfDlogX { r: need(&a.r, "r", id)?, radius: radius_or(0.5) },
                "3.3" => Lemma::Residue {
                    f: parse_rational_function(&need(&a.f, "f", id)?, &sig)?,
                    s: parse_point(a.point.as_deref().unwrap_or("0"))?,
                    radius,
                },
                "3.4" => Lemma::DlogXThenBinomial {
                    n: need(&a.n, "n", id)?,
                    a: elem(&a.a, "a")?,
                    radius: radius_or(0.5),
                },
                "3.5" => Lemma::TwoBinomials {
                    j: need(&a.j, "j", id)?,
                    k: need(&a.k, "k", id)?,
                    a: elem(&a.a, "a")?,
                    b: elem(&a.b, "b")?,
                    radius: radius_or(1.0),
                },
                "3.6" => Lemma::EndpointLog {
                    f: parse_rational_function(&need(&a.f, "f", id)?, &sig)?,
                    s: parse_point(a.point.as_deref().unwrap_or("0"))?,
                    base: parse_point(&need(&a.base, "base", id)?)?,
                    radius: radius_or(0.25),
                },
                other => return Err(Error::InvalidInput(format!("unknown lemma id {other} (use 3.2 to 3.6)"))),
            };
            (vec![lemma_check(&lemma, &config(&a.quad, 1e-8)?)?], a.json)
        }
        VerifyCommand::MainTheorem(a) => {
            let sig = algebra(&a.algebra)?.signature;
            let r = main_theorem_check(
                &parse_rational_function(&a.f, &sig)?,
                &parse_rational_function(&a.g, &sig)?,
                &parse_sphere_point(&a.point)?,
                &parse_point(&a.base)?,
                real(&a.radius)?,
                a.trunc,
                &config(&a.quad, 1e-6)?,
            )?;
            (vec![r], a.json)
        }
        VerifyCommand::Weil(a) => {
            let sig = algebra(&a.algebra)?.signature;
            let r = weil_reciprocity_check(
                &parse_rational_function(&a.f, &sig)?,
                &parse_rational_function(&a.g, &sig)?,
                a.trunc,
            )?;
            (vec![r], a.json)
        }
        VerifyCommand::Bilinear(a) => {
            let sig = algebra(&a.algebra)?.signature;
            let r = bilinear_reciprocity_check(
                &parse_rational_function(&a.f, &sig)?,
                &parse_rational_function(&a.g, &sig)?,
                &parse_point(&a.base)?,
                &config(&a.quad, 1e-6)?,
            )?;
            (vec![r], a.json)
        }
        VerifyCommand::Commutator(a) => {
            let sig = algebra(&a.algebra)?.signature;
            let r = commutator_quadratic_check(
                &parse_path(&a.alpha)?,
                &parse_path(&a.beta)?,
                &Form::Dlog(parse_rational_function(&a.f, &sig)?),
                &Form::Dlog(parse_rational_function(&a.g, &sig)?),
                &config(&a.quad, 1e-8)?,
            )?;
            (vec![r], a.json)
        }
        VerifyCommand::Identities(a) => (identity_suite(&config(&a.quad, 1e-8)?)?, a.json),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Checks(reports, json)) => {
            if json {
                if let [single] = reports.as_slice() {
                    println!("{}", single.to_json());
                } else {
                    println!("{}", serde_json::to_string_pretty(&reports).expect("json"));
                }
            } else {
                for r in &reports {
                    println!("{r}\n");
                }
            }
            if reports.iter().all(|r| r.pass) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
