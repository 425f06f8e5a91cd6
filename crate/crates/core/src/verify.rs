//! Numerical and exact checks tying the symbol to iterated integrals.
//!
//! Every identity that involves a logarithm of a path-dependent quantity is
//! compared after exponentiation, so branch choices never matter.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;

use crate::algebra::{Elem, ExactElem, FloatElem};
use crate::chen::{iterated_integral, line_integral, transport, Form, Path, QuadratureConfig};
use crate::error::{Error, Result};
use crate::ratfunc::{rf_support, RationalFunction, SpherePoint};
use crate::report::{CheckReport, ReportValue};
use crate::scalar::{GaussRat, Scalar, ShowScalar};
use crate::symbol::cc_symbol_series;

const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);
const MAX_TRUNC: i64 = 4096;

/// Parameters of the lemmas on iterated integrals over a small circle
/// `σ_ε: t ↦ s + ε e^{2πit}`.
#[derive(Clone, Debug)]
pub enum Lemma {
    /// `∫ dx/x ∘ … ∘ dx/x` (`r` times) `= (2πi)^r / r!`.
    PowersOfDlogX { r: usize, radius: f64 },
    /// `∫ df/f = 2πi ν_s(f)`; the radius defaults to a third of the
    /// distance to the nearest other support point.
    Residue { f: RationalFunction, s: GaussRat, radius: Option<f64> },
    /// `∫ dx/x ∘ d log(1 - a x^n) = 2πi log(1 - a ε^n)`.
    DlogXThenBinomial { n: i64, a: ExactElem, radius: f64 },
    /// `∫ d log(1 - a x^j) ∘ d log(1 - b x^k)`: zero when `jk > 0`, else
    /// `2πi sgn(j) d log(1 - a^{|k|/d} b^{|j|/d})` with `d = gcd(j, k)`.
    TwoBinomials { j: i64, k: i64, a: ExactElem, b: ExactElem, radius: f64 },
    /// `exp ∫_γ df/f = f(Q)/f(P)` along the segment `γ` from `P` to the
    /// point `Q` at distance `ε` from `s` in the direction of `P`.
    EndpointLog { f: RationalFunction, s: GaussRat, base: GaussRat, radius: f64 },
}

impl Lemma {
    pub fn id(&self) -> &'static str {
        match self {
            Lemma::PowersOfDlogX { .. } => "3.2",
            Lemma::Residue { .. } => "3.3",
            Lemma::DlogXThenBinomial { .. } => "3.4",
            Lemma::TwoBinomials { .. } => "3.5",
            Lemma::EndpointLog { .. } => "3.6",
        }
    }
}

fn c64(z: &GaussRat) -> Complex64 {
    z.to_c64()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidInput(msg()))
    }
}

/// Valuation of `f` at `s`, growing the expansion until a unit shows up.
pub fn valuation_at(f: &RationalFunction, s: &SpherePoint) -> Result<i64> {
    let mut t = 8;
    loop {
        match f.expand_at::<GaussRat>(s, t).and_then(|e| e.valuation()) {
            Ok(v) => return Ok(v),
            Err(Error::NotInvertible) if t < MAX_TRUNC => t *= 2,
            Err(e) => return Err(e),
        }
    }
}

/// The local symbol at `s` with the truncation raised until the double
/// products are complete; also returns `(ν_f, ν_g)`.
pub fn local_symbol(
    f: &RationalFunction,
    g: &RationalFunction,
    s: &SpherePoint,
    trunc: i64,
) -> Result<(ExactElem, i64, i64)> {
    let mut t = trunc.max(1);
    loop {
        let attempt = f.expand_at::<GaussRat>(s, t).and_then(|fs| {
            let gs = g.expand_at::<GaussRat>(s, t)?;
            let v = cc_symbol_series(&fs, &gs)?;
            Ok((v.value, fs.valuation()?, gs.valuation()?))
        });
        match attempt {
            Err(Error::InsufficientTruncation { .. }) | Err(Error::NotInvertible) if t < MAX_TRUNC => t *= 2,
            other => return other,
        }
    }
}

fn other_support_distance(f: &RationalFunction, s: &GaussRat) -> f64 {
    f.support()
        .iter()
        .filter_map(|p| p.finite())
        .filter(|p| *p != s)
        .map(|p| (c64(p) - c64(s)).norm())
        .fold(f64::INFINITY, f64::min)
}

pub fn lemma_check(lemma: &Lemma, cfg: &QuadratureConfig) -> Result<CheckReport> {
    let started = Instant::now();
    let steps = ("steps", cfg.steps_per_segment.to_string());
    let (lhs, rhs, inputs): (FloatElem, FloatElem, Vec<(&str, String)>) = match lemma {
        Lemma::PowersOfDlogX { r, radius } => {
            ensure(*r >= 1, || "r must be at least 1".into())?;
            let circle = Path::circle(Complex64::zero(), *radius, 0.0)?;
            let forms = vec![Form::Pole(Complex64::zero()); *r];
            let lhs = iterated_integral(&forms, &circle, cfg)?;
            let factorial: f64 = (1..=*r).map(|k| k as f64).product();
            let rhs = Elem::constant(lhs.signature(), TWO_PI_I.powi(*r as i32) / factorial);
            (lhs, rhs, vec![("r", r.to_string()), ("radius", radius.to_string()), steps])
        }
        Lemma::Residue { f, s, radius } => {
            let radius = radius.unwrap_or_else(|| (other_support_distance(f, s) / 3.0).min(0.5));
            let circle = Path::circle(c64(s), radius, 0.0)?;
            let lhs = line_integral(&Form::Dlog(f.clone()), &circle, cfg)?;
            let nu = valuation_at(f, &SpherePoint::Finite(s.clone()))?;
            let rhs = Elem::constant(f.signature(), TWO_PI_I * nu as f64);
            let inputs = vec![
                ("f", f.to_string()),
                ("point", ShowScalar(s).to_string()),
                ("radius", radius.to_string()),
                steps,
            ];
            (lhs, rhs, inputs)
        }
        Lemma::DlogXThenBinomial { n, a, radius } => {
            ensure(*n != 0, || "n must be nonzero".into())?;
            let eps_n = radius.powi(*n as i32);
            ensure(c64(&a.reduce()).norm() * eps_n < 1.0, || {
                format!("|a|·radius^n must be below 1 (got {})", c64(&a.reduce()).norm() * eps_n)
            })?;
            let a = a.to_float();
            let forms = [Form::Pole(Complex64::zero()), Form::Binomial { a: a.clone(), n: *n }];
            let circle = Path::circle(Complex64::zero(), *radius, 0.0)?;
            let lhs = iterated_integral(&forms, &circle, cfg)?;
            let inner = &Elem::one(a.signature()) - &a.scale(&Complex64::new(eps_n, 0.0));
            let rhs = inner.ln()?.scale(&TWO_PI_I);
            let inputs = vec![
                ("n", n.to_string()),
                ("a", a.to_string()),
                ("radius", radius.to_string()),
                steps,
            ];
            (lhs, rhs, inputs)
        }
        Lemma::TwoBinomials { j, k, a, b, radius } => {
            ensure(*j != 0 && *k != 0, || "j and k must be nonzero".into())?;
            for (c, e) in [(a, j), (b, k)] {
                let size = c64(&c.reduce()).norm() * radius.powi(*e as i32);
                ensure(size < 1.0, || format!("|coefficient|·radius^exponent must be below 1 (got {size})"))?;
            }
            let (a, b) = (a.to_float(), b.to_float());
            let forms = [
                Form::Binomial { a: a.clone(), n: *j },
                Form::Binomial { a: b.clone(), n: *k },
            ];
            let circle = Path::circle(Complex64::zero(), *radius, 0.0)?;
            let lhs = iterated_integral(&forms, &circle, cfg)?;
            let rhs = if j * k > 0 {
                Elem::zero(a.signature())
            } else {
                let d = j.gcd(k);
                let w = &a.ipow(k.abs() / d)? * &b.ipow(j.abs() / d)?;
                let sign = j.signum() as f64;
                (&Elem::one(a.signature()) - &w).ln()?.scale(&(TWO_PI_I * sign * d as f64))
            };
            let inputs = vec![
                ("j", j.to_string()),
                ("k", k.to_string()),
                ("a", a.to_string()),
                ("b", b.to_string()),
                ("radius", radius.to_string()),
                steps,
            ];
            (lhs, rhs, inputs)
        }
        Lemma::EndpointLog { f, s, base, radius } => {
            let (p, center) = (c64(base), c64(s));
            let dir = p - center;
            ensure(dir.norm() > *radius, || "base point lies inside the circle".into())?;
            let q = center + dir / dir.norm() * *radius;
            let path = Path::segment(p, q);
            let lhs = line_integral(&Form::Dlog(f.clone()), &path, cfg)?.exp()?;
            let rhs = &f.eval(&q)? * &f.eval(&p)?.invert()?;
            let inputs = vec![
                ("f", f.to_string()),
                ("point", ShowScalar(s).to_string()),
                ("base", ShowScalar(base).to_string()),
                ("radius", radius.to_string()),
                steps,
            ];
            (lhs, rhs, inputs)
        }
    };
    let deviation = lhs.max_abs_diff(&rhs);
    Ok(CheckReport::new(
        format!("lemma.{}", lemma.id()),
        inputs,
        ReportValue::elem(&lhs),
        ReportValue::elem(&rhs),
        deviation,
        cfg.tolerance,
        started,
    ))
}

/// `σ = γ · (loop around s) · γ⁻¹` from `base`: a counterclockwise circle of
/// the given radius around a finite `s`, or a clockwise circle of that
/// radius about the origin for `s = ∞`.
pub fn loop_around(s: &SpherePoint, base: Complex64, radius: f64) -> Result<Path> {
    match s {
        SpherePoint::Finite(c) => crate::chen::lasso(base, c64(c), radius),
        SpherePoint::Infinity => {
            if base.norm() >= radius {
                return Err(Error::LoopConstruction(format!(
                    "circle at infinity of radius {radius} must contain the base point"
                )));
            }
            let q = if base.norm() == 0.0 {
                Complex64::new(radius, 0.0)
            } else {
                base / base.norm() * radius
            };
            Path::concat(&[
                Path::segment(base, q),
                Path::arc(Complex64::zero(), radius, q.arg(), -2.0 * PI)?,
                Path::segment(q, base),
            ])
        }
    }
}

fn check_encloses_only(
    support: &[SpherePoint],
    s: &SpherePoint,
    radius: f64,
) -> Result<()> {
    for p in support.iter().filter(|p| *p != s) {
        let Some(z) = p.finite() else { continue };
        let z = c64(z);
        let inside = match s {
            SpherePoint::Finite(c) => (z - c64(c)).norm() < radius,
            SpherePoint::Infinity => z.norm() > radius,
        };
        if inside {
            return Err(Error::LoopConstruction(format!("loop around {s} also encloses {p}")));
        }
    }
    Ok(())
}

/// `exp((1/2πi) ∫_σ df/f ∘ dg/g)` against
/// `(-1)^{ν_f ν_g} g(P)^{ν_f} a₀^{ν_g} ∏… / (f(P)^{ν_g} b₀^{ν_f} ∏…)`.
pub fn main_theorem_check(
    f: &RationalFunction,
    g: &RationalFunction,
    s: &SpherePoint,
    base: &GaussRat,
    radius: f64,
    trunc: i64,
    cfg: &QuadratureConfig,
) -> Result<CheckReport> {
    let started = Instant::now();
    let support = rf_support(f, g)?;
    if !support.contains(s) {
        return Err(Error::InvalidInput(format!("{s} is not a zero or pole of f or g")));
    }
    let (fp, gp) = (f.eval(base)?, g.eval(base)?);
    check_encloses_only(&support, s, radius)?;
    let path = loop_around(s, c64(base), radius)?;

    let integral = iterated_integral(&[Form::Dlog(f.clone()), Form::Dlog(g.clone())], &path, cfg)?;
    let lhs = integral.scale(&(Complex64::new(1.0, 0.0) / TWO_PI_I)).exp()?;

    let (symbol, nf, ng) = local_symbol(f, g, s, trunc)?;
    let rhs = &(&symbol * &gp.ipow(nf)?) * &fp.ipow(-ng)?;
    let rhs_float = rhs.to_float();
    let deviation = lhs.max_abs_diff(&rhs_float);
    Ok(CheckReport::new(
        "main-theorem",
        vec![
            ("f", f.to_string()),
            ("g", g.to_string()),
            ("point", s.to_string()),
            ("base", ShowScalar(base).to_string()),
            ("radius", radius.to_string()),
            ("steps", cfg.steps_per_segment.to_string()),
            ("exact_rhs", rhs.to_string()),
        ],
        ReportValue::elem(&lhs),
        ReportValue::elem(&rhs_float),
        deviation,
        cfg.tolerance,
        started,
    ))
}

/// Exact product of the local symbols over the joint support.
pub fn weil_reciprocity_check(
    f: &RationalFunction,
    g: &RationalFunction,
    trunc: i64,
) -> Result<CheckReport> {
    let started = Instant::now();
    let sig = f.signature();
    let mut product = Elem::one(sig);
    let mut locals = Vec::new();
    for s in rf_support(f, g)? {
        let (v, _, _) = local_symbol(f, g, &s, trunc)?;
        locals.push(format!("{s}: {v}"));
        product = &product * &v;
    }
    let one: ExactElem = Elem::one(sig);
    let deviation = if product == one {
        0.0
    } else {
        product.max_abs_diff(&one).max(f64::MIN_POSITIVE)
    };
    Ok(CheckReport::new(
        "weil",
        vec![
            ("f", f.to_string()),
            ("g", g.to_string()),
            ("trunc", trunc.to_string()),
            ("local_symbols", locals.join("; ")),
        ],
        ReportValue::elem(&product),
        ReportValue::elem(&one),
        deviation,
        0.0,
        started,
    ))
}

/// Loops from a common base point, one around each support point, whose
/// product in the returned order is null-homotopic on the punctured sphere.
#[derive(Clone, Debug)]
pub struct LoopSystem {
    pub base: Complex64,
    pub shifted_base: Complex64,
    pub disk_radius: f64,
    pub outer_radius: f64,
    pub loops: Vec<(SpherePoint, Path)>,
}

fn segment_distance(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    Path::segment(a, b).distance_to(p)
}

/// Builds the loop system. Lassos leave from a shifted base point `P'` near
/// `P` so that their tails are pairwise separated; the connecting segment
/// `P → P'` conjugates every loop and so preserves the product relation.
pub fn reciprocity_loops(support: &[SpherePoint], base: Complex64) -> Result<LoopSystem> {
    let finite: Vec<Complex64> = support.iter().filter_map(|p| p.finite().map(c64)).collect();
    for z in &finite {
        if (*z - base).norm() == 0.0 {
            return Err(Error::OnSupport(z.to_string()));
        }
    }
    let mut rho = 0.5_f64;
    for (i, a) in finite.iter().enumerate() {
        for b in &finite[i + 1..] {
            rho = rho.min((a - b).norm() / 3.0);
        }
        rho = rho.min((a - base).norm() / 3.0);
    }
    let mut candidates = vec![base];
    for scale in [0.5, 1.0, 1.5, 3.0, 6.0, 12.0] {
        for k in 0..24 {
            candidates.push(base + Complex64::from_polar(scale * rho, 2.0 * PI * k as f64 / 24.0));
        }
    }
    for p in candidates {
        if let Some(system) = try_loops(support, &finite, base, p, rho)? {
            return Ok(system);
        }
    }
    Err(Error::LoopConstruction(
        "no base-point shift gives separated lassos; move the base point".into(),
    ))
}

fn try_loops(
    support: &[SpherePoint],
    finite: &[Complex64],
    base: Complex64,
    p: Complex64,
    rho: f64,
) -> Result<Option<LoopSystem>> {
    let clear = 1.25 * rho;
    if finite.iter().any(|z| (z - p).norm() <= 2.0 * rho) {
        return Ok(None);
    }
    if finite.iter().any(|z| segment_distance(base, p, *z) <= 0.5 * rho) {
        return Ok(None);
    }
    for (i, s) in finite.iter().enumerate() {
        let q = s + (p - s) / (p - s).norm() * rho;
        for (j, z) in finite.iter().enumerate() {
            if i != j && segment_distance(p, q, *z) <= clear {
                return Ok(None);
            }
        }
    }
    let outer = 3.0 * finite.iter().fold(p.norm().max(1.0), |m, z| m.max(z.norm()));

    // departure angle of the loop at infinity: middle of the widest gap
    let mut angles: Vec<f64> = finite.iter().map(|z| (z - p).arg().rem_euclid(2.0 * PI)).collect();
    angles.sort_by(f64::total_cmp);
    let theta_inf = if angles.is_empty() {
        0.0
    } else {
        let mut best = (angles[0] + 2.0 * PI - angles[angles.len() - 1], angles[angles.len() - 1]);
        for w in angles.windows(2) {
            if w[1] - w[0] > best.0 {
                best = (w[1] - w[0], w[0]);
            }
        }
        best.1 + best.0 / 2.0
    };
    let u = Complex64::from_polar(1.0, theta_inf);
    let pu = (p * u.conj()).re;
    let t = -pu + (pu * pu - p.norm_sqr() + outer * outer).sqrt();
    let q_inf = p + u * t;
    if finite.iter().any(|z| segment_distance(p, q_inf, *z) <= clear) {
        return Ok(None);
    }

    let delta = Path::segment(base, p);
    let mut loops = Vec::new();
    for s in support {
        let (angle, core) = match s {
            SpherePoint::Finite(c) => {
                let c = c64(c);
                ((c - p).arg(), crate::chen::lasso(p, c, rho)?)
            }
            SpherePoint::Infinity => {
                let core = Path::concat(&[
                    Path::segment(p, q_inf),
                    Path::arc(Complex64::zero(), outer, q_inf.arg(), -2.0 * PI)?,
                    Path::segment(q_inf, p),
                ])?;
                (theta_inf, core)
            }
        };
        let full = if base == p {
            core
        } else {
            Path::concat(&[delta.clone(), core, delta.reverse()])?
        };
        loops.push((angle.rem_euclid(2.0 * PI), s.clone(), full));
    }
    // counterclockwise lassos compose to the boundary of their union when
    // taken in counterclockwise order of departure
    loops.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(Some(LoopSystem {
        base,
        shifted_base: p,
        disk_radius: rho,
        outer_radius: outer,
        loops: loops.into_iter().map(|(_, s, path)| (s, path)).collect(),
    }))
}

/// `Σᵢ ∫_{σᵢ} ω₁∘ω₂ + Σ_{i<j} ∫_{σᵢ} ω₁ ∫_{σⱼ} ω₂` with `ω₁ = df/f`,
/// `ω₂ = dg/g`; zero on the sphere.
pub fn bilinear_reciprocity_check(
    f: &RationalFunction,
    g: &RationalFunction,
    base: &GaussRat,
    cfg: &QuadratureConfig,
) -> Result<CheckReport> {
    let started = Instant::now();
    let support = rf_support(f, g)?;
    let system = reciprocity_loops(&support, c64(base))?;
    let forms = [Form::Dlog(f.clone()), Form::Dlog(g.clone())];
    let sig = f.signature();
    let mut sum = Elem::zero(sig);
    let mut first_sum = Elem::zero(sig);
    for (_, path) in &system.loops {
        let fs = transport(&forms, path, 2, cfg)?;
        let c = |w: &[usize]| fs.coeff(w).cloned().expect("tracked word");
        sum = &(&sum + &c(&[0, 1])) + &(&first_sum * &c(&[1]));
        first_sum = &first_sum + &c(&[0]);
    }
    let zero: FloatElem = Elem::zero(sig);
    let order: Vec<String> = system.loops.iter().map(|(s, _)| s.to_string()).collect();
    Ok(CheckReport::new(
        "bilinear",
        vec![
            ("f", f.to_string()),
            ("g", g.to_string()),
            ("base", ShowScalar(base).to_string()),
            ("loop_order", order.join(", ")),
            ("disk_radius", system.disk_radius.to_string()),
            ("outer_radius", system.outer_radius.to_string()),
            ("steps", cfg.steps_per_segment.to_string()),
        ],
        ReportValue::elem(&sum),
        ReportValue::elem(&zero),
        sum.max_abs(),
        cfg.tolerance,
        started,
    ))
}

/// `∫_{[α,β]} ω₁∘ω₂ = ∫_α ω₁ ∫_β ω₂ - ∫_β ω₁ ∫_α ω₂`.
pub fn commutator_quadratic_check(
    alpha: &Path,
    beta: &Path,
    w1: &Form,
    w2: &Form,
    cfg: &QuadratureConfig,
) -> Result<CheckReport> {
    let started = Instant::now();
    if (alpha.start() - beta.start()).norm() > 1e-12 * alpha.start().norm().max(1.0) {
        return Err(Error::InvalidInput("alpha and beta must share a base point".into()));
    }
    let comm = Path::commutator(alpha, beta)?;
    let forms = [w1.clone(), w2.clone()];
    let get = |p: &Path| -> Result<(FloatElem, FloatElem, FloatElem)> {
        let f = transport(&forms, p, 2, cfg)?;
        let c = |w: &[usize]| f.coeff(w).cloned().expect("tracked word");
        Ok((c(&[0]), c(&[1]), c(&[0, 1])))
    };
    let (_, _, lhs) = get(&comm)?;
    let (a1, a2, _) = get(alpha)?;
    let (b1, b2, _) = get(beta)?;
    let rhs = &(&a1 * &b2) - &(&b1 * &a2);
    let deviation = lhs.max_abs_diff(&rhs);
    Ok(CheckReport::new(
        "commutator",
        vec![
            ("alpha", alpha.to_string()),
            ("beta", beta.to_string()),
            ("omega1", w1.to_string()),
            ("omega2", w2.to_string()),
            ("steps", cfg.steps_per_segment.to_string()),
        ],
        ReportValue::elem(&lhs),
        ReportValue::elem(&rhs),
        deviation,
        cfg.tolerance,
        started,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use crate::parse::parse_rational_function;
    use crate::scalar::{gauss_frac, gauss_int};
    use std::sync::Arc;

    fn cfg(steps: usize, tol: f64) -> QuadratureConfig {
        QuadratureConfig::new(steps, tol).unwrap()
    }

    fn dual() -> Arc<Signature> {
        Signature::new(&["eps"], 2).unwrap()
    }

    fn rf(text: &str, sig: &Arc<Signature>) -> RationalFunction {
        parse_rational_function(text, sig).unwrap()
    }

    #[test]
    fn lemma_examples() {
        let r = lemma_check(&Lemma::PowersOfDlogX { r: 2, radius: 0.5 }, &cfg(512, 1e-8)).unwrap();
        assert!(r.pass, "{r}");

        let s = Signature::trivial();
        let a = Elem::constant(&s, gauss_frac(1, 5));
        let b = Elem::constant(&s, gauss_frac(3, 10));
        let l = Lemma::TwoBinomials { j: 1, k: 2, a: a.clone(), b: b.clone(), radius: 1.0 };
        let r = lemma_check(&l, &cfg(1024, 1e-8)).unwrap();
        assert!(r.pass, "{r}");
        let l = Lemma::TwoBinomials { j: 1, k: -1, a, b, radius: 1.0 };
        let r = lemma_check(&l, &cfg(1024, 1e-7)).unwrap();
        assert!(r.pass, "{r}");
    }

    #[test]
    fn lemma_3_6_and_residue() {
        let s = dual();
        let f = rf("(x+eps)*(1-x)", &s);
        let l = Lemma::EndpointLog { f: f.clone(), s: gauss_int(0), base: gauss_frac(-1, 2), radius: 0.25 };
        assert!(lemma_check(&l, &cfg(256, 1e-10)).unwrap().pass);
        let l = Lemma::Residue { f, s: gauss_int(0), radius: None };
        assert!(lemma_check(&l, &cfg(256, 1e-10)).unwrap().pass);
    }

    #[test]
    fn main_theorem_examples() {
        let s = dual();
        let r = main_theorem_check(
            &rf("x+eps", &s),
            &rf("1-x", &s),
            &SpherePoint::Finite(gauss_int(0)),
            &gauss_frac(-1, 2),
            0.25,
            8,
            &cfg(1024, 1e-6),
        )
        .unwrap();
        assert!(r.pass, "{r}");
        assert_eq!(r.inputs["exact_rhs"], "3/2-3/2*eps");

        let t = Signature::trivial();
        let r = main_theorem_check(
            &rf("x", &t),
            &rf("x", &t),
            &SpherePoint::Finite(gauss_int(0)),
            &gauss_int(-1),
            0.25,
            8,
            &cfg(512, 1e-8),
        )
        .unwrap();
        assert!(r.pass, "{r}");
        assert_eq!(r.inputs["exact_rhs"], "-1");
    }

    #[test]
    fn main_theorem_at_infinity() {
        let s = dual();
        let r = main_theorem_check(
            &rf("x+eps", &s),
            &rf("x-1", &s),
            &SpherePoint::Infinity,
            &gauss_frac(-1, 2),
            4.0,
            8,
            &cfg(2048, 1e-6),
        )
        .unwrap();
        assert!(r.pass, "{r}");
    }

    #[test]
    fn loop_that_encloses_too_much_is_rejected() {
        let t = Signature::trivial();
        let err = main_theorem_check(
            &rf("x", &t),
            &rf("1-x", &t),
            &SpherePoint::Finite(gauss_int(0)),
            &gauss_int(-2),
            1.5,
            8,
            &cfg(64, 1e-6),
        )
        .unwrap_err();
        assert!(matches!(err, Error::LoopConstruction(_)));
    }

    #[test]
    fn weil_examples() {
        let t = Signature::trivial();
        for (f, g) in [("x", "1-x"), ("x^2", "x^3"), ("x*(x-1)^-1", "x-2")] {
            let r = weil_reciprocity_check(&rf(f, &t), &rf(g, &t), 8).unwrap();
            assert!(r.pass, "{r}");
            assert_eq!(r.lhs.text, "1");
        }
        let s = dual();
        let r = weil_reciprocity_check(&rf("x+eps", &s), &rf("x-1", &s), 8).unwrap();
        assert!(r.pass, "{r}");
    }

    #[test]
    fn bilinear_examples() {
        let t = Signature::trivial();
        let s = dual();
        for (f, g, sig) in [("x", "1-x", &t), ("x", "x", &t), ("x+eps", "x-1", &s)] {
            let r = bilinear_reciprocity_check(&rf(f, sig), &rf(g, sig), &gauss_int(-2), &cfg(1024, 1e-6))
                .unwrap();
            assert!(r.pass, "{r}");
        }
    }

    #[test]
    fn commutator_examples() {
        let base = Complex64::new(0.5, 0.3);
        let alpha = crate::chen::lasso(base, Complex64::zero(), 0.2).unwrap();
        let beta = crate::chen::lasso(base, Complex64::new(1.0, 0.0), 0.2).unwrap();
        let (p0, p1) = (Form::Pole(Complex64::zero()), Form::Pole(Complex64::new(1.0, 0.0)));
        let c = cfg(1024, 1e-8);
        let r = commutator_quadratic_check(&alpha, &beta, &p0, &p1, &c).unwrap();
        assert!(r.pass, "{r}");
        assert!((r.lhs.json["1"][0].as_f64().unwrap() + 4.0 * PI * PI).abs() < 1e-6);
        assert!(commutator_quadratic_check(&alpha, &alpha, &p0, &p1, &c).unwrap().pass);
        let r = commutator_quadratic_check(&alpha, &beta, &p0, &p0, &c).unwrap();
        assert!(r.pass && r.deviation < 1e-8, "{r}");
        let shifted = crate::chen::lasso(base + 0.1, Complex64::zero(), 0.2).unwrap();
        assert!(commutator_quadratic_check(&alpha, &shifted, &p0, &p1, &c).is_err());
    }
}
