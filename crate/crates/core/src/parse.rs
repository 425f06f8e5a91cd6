//! Text input: algebra-valued expressions in `x`, rational functions in
//! factored form, and path literals.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' int)?          int := ('-' | '+')? digits | '(' int ')'
//! atom   := number | 'x' | 'i' | generator | '(' expr ')'
//! ```
//!
//! Numbers are integers or decimals (`0.2` reads as `1/5`), so `p/q` is a
//! quotient of two literals. Positions in errors are 1-based character columns.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{Elem, ExactElem, Signature};
use crate::chen::Path;
use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;
use crate::ratfunc::{Divisor, RationalFunction, SpherePoint};
use crate::scalar::{gauss, gauss_i, GaussRat, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let pos = k + 1;
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() || (c == '.' && chars.get(k + 1).is_some_and(char::is_ascii_digit)) {
            let begin = k;
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                k += 1;
            }
            let lit: String = chars[begin..k].iter().collect();
            let (int, frac) = lit.split_once('.').unwrap_or((&lit, ""));
            if frac.contains('.') {
                return err(pos, format!("malformed number `{lit}`"));
            }
            let digits = format!("{int}{frac}");
            let num: BigInt = digits.parse().map_err(|_| Error::Parse {
                pos,
                msg: format!("malformed number `{lit}`"),
            })?;
            let den = num_traits::pow(BigInt::from(10), frac.len());
            out.push(Token { tok: Tok::Num(BigRational::new(num, den)), pos });
        } else if c.is_alphabetic() || c == '_' {
            let begin = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[begin..k].iter().collect()), pos });
        } else if "+-*/^(),".contains(c) {
            out.push(Token { tok: Tok::Sym(c), pos });
            k += 1;
        } else {
            return err(pos, format!("unexpected character `{c}`"));
        }
    }
    out.push(Token { tok: Tok::End, pos: chars.len() + 1 });
    Ok(out)
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigRational),
    Ident(String, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, i64, usize),
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser { toks: tokenize(text)?, at: 0 })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::End {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let t = self.peek();
            err(t.pos, format!("expected `{c}`, found {}", describe(&t.tok)))
        }
    }

    fn finish(&mut self) -> Result<()> {
        let t = self.peek();
        if t.tok == Tok::End {
            Ok(())
        } else {
            err(t.pos, format!("unexpected {}", describe(&t.tok)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek().tok == Tok::Sym('/') {
                let pos = self.bump().pos;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Sym('^') {
            return Ok(base);
        }
        let pos = self.bump().pos;
        let e = self.exponent()?;
        if self.peek().tok == Tok::Sym('^') {
            return err(self.peek().pos, "chained `^` is ambiguous; use parentheses");
        }
        Ok(Expr::Pow(Box::new(base), e, pos))
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat('(') {
            let e = self.exponent()?;
            self.expect(')')?;
            return Ok(e);
        }
        let sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        let t = self.bump();
        match t.tok {
            Tok::Num(q) if q.is_integer() => q
                .to_integer()
                .try_into()
                .map(|n: i64| sign * n)
                .or_else(|_| err(t.pos, "exponent too large")),
            other => err(t.pos, format!("exponent must be an integer, found {}", describe(&other))),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.bump();
        match t.tok {
            Tok::Num(q) => Ok(Expr::Num(q)),
            Tok::Ident(name) => Ok(Expr::Ident(name, t.pos)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            other => err(t.pos, format!("expected a value, found {}", describe(&other))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(q) => format!("number `{q}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".into(),
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Laurent polynomial in `x` with coefficients in `A`.
type Poly = BTreeMap<i64, ExactElem>;

fn poly_const(c: ExactElem) -> Poly {
    let mut p = Poly::new();
    if !c.is_zero() {
        p.insert(0, c);
    }
    p
}

fn poly_add(a: &Poly, b: &Poly, sign: i64) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        let c = c.scale(&GaussRat::from_i64(sign));
        let sum = match out.get(e) {
            Some(prev) => prev + &c,
            None => c,
        };
        if sum.is_zero() {
            out.remove(e);
        } else {
            out.insert(*e, sum);
        }
    }
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let term = poly_const(ca * cb);
            out = poly_add(&out, &term.into_values().map(|c| (ea + eb, c)).collect(), 1);
        }
    }
    out
}

/// `p / (c x^k)` when the divisor is a unit monomial.
fn as_unit_monomial(p: &Poly) -> Option<(i64, &ExactElem)> {
    match p.iter().collect::<Vec<_>>()[..] {
        [(e, c)] if c.is_unit() => Some((*e, c)),
        _ => None,
    }
}

/// A quotient `num / den` of Laurent polynomials.
#[derive(Clone, Debug)]
struct Ratio {
    num: Poly,
    den: Poly,
}

impl Ratio {
    fn normalize(self) -> Result<Self> {
        if let Some((k, c)) = as_unit_monomial(&self.den) {
            let inv = c.invert()?;
            let num = self.num.iter().map(|(e, a)| (e - k, a * &inv)).collect();
            return Ok(Ratio { num, den: poly_const(Elem::one(inv.signature())) });
        }
        Ok(self)
    }

    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

struct Evaluator<'a> {
    sig: &'a Arc<Signature>,
    allow_x: bool,
}

impl Evaluator<'_> {
    fn eval(&self, e: &Expr) -> Result<Ratio> {
        let one = poly_const(Elem::one(self.sig));
        let lift = |num: Poly| Ratio { num, den: one.clone() };
        let r = match e {
            Expr::Num(q) => lift(poly_const(
                Elem::one(self.sig).scale(&gauss(q.clone(), BigRational::zero())),
            )),
            Expr::Ident(name, pos) => match name.as_str() {
                "x" if self.allow_x => lift(Poly::from([(1, Elem::one(self.sig))])),
                "x" => return err(*pos, "`x` is not allowed in a constant"),
                "i" => lift(poly_const(Elem::one(self.sig).scale(&gauss_i()))),
                g => match Elem::generator(self.sig, g) {
                    Some(v) => lift(poly_const(v)),
                    None => {
                        return err(
                            *pos,
                            format!("unknown name `{g}` (generators: {})", self.sig.gens().join(",")),
                        )
                    }
                },
            },
            Expr::Neg(a) => {
                let a = self.eval(a)?;
                Ratio { num: poly_add(&Poly::new(), &a.num, -1), den: a.den }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let sign = if matches!(e, Expr::Add(..)) { 1 } else { -1 };
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                Ratio {
                    num: poly_add(&poly_mul(&a.num, &b.den), &poly_mul(&b.num, &a.den), sign),
                    den: poly_mul(&a.den, &b.den),
                }
            }
            Expr::Mul(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                Ratio { num: poly_mul(&a.num, &b.num), den: poly_mul(&a.den, &b.den) }
            }
            Expr::Div(a, b, pos) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                if b.is_zero() {
                    return err(*pos, "division by zero");
                }
                Ratio { num: poly_mul(&a.num, &b.den), den: poly_mul(&a.den, &b.num) }
            }
            Expr::Pow(a, n, pos) => {
                let a = self.eval(a)?;
                let (base, n) = if *n < 0 {
                    if a.is_zero() {
                        return err(*pos, "negative power of zero");
                    }
                    (Ratio { num: a.den, den: a.num }, -n)
                } else {
                    (a, *n)
                };
                let base = base.normalize()?;
                let mut out = lift(one.clone());
                for _ in 0..n {
                    out = Ratio {
                        num: poly_mul(&out.num, &base.num),
                        den: poly_mul(&out.den, &base.den),
                    }
                    .normalize()?;
                }
                out
            }
        };
        r.normalize()
    }
}

/// Evaluates an expression without `x` to an element of `A`.
pub fn parse_constant(text: &str, sig: &Arc<Signature>) -> Result<ExactElem> {
    let e = parse_expr(text)?;
    let r = Evaluator { sig, allow_x: false }.eval(&e)?;
    let den = r.den.get(&0).cloned().unwrap_or_else(|| Elem::zero(sig));
    let num = r.num.get(&0).cloned().unwrap_or_else(|| Elem::zero(sig));
    if !den.is_unit() {
        return err(1, format!("denominator {den} is not invertible"));
    }
    Ok(&num * &den.invert()?)
}

/// Evaluates an exact complex number such as `-1/2+3*i`.
pub fn parse_point(text: &str) -> Result<GaussRat> {
    Ok(parse_constant(text, &Signature::trivial())?.reduce())
}

/// Like [`parse_point`], also accepting `inf`.
pub fn parse_sphere_point(text: &str) -> Result<SpherePoint> {
    match text.trim() {
        "inf" | "infinity" | "∞" => Ok(SpherePoint::Infinity),
        t => Ok(SpherePoint::Finite(parse_point(t)?)),
    }
}

/// Expands an expression in `x` as a Laurent series at `x = 0`, exact
/// below `trunc`.
pub fn parse_series(text: &str, sig: &Arc<Signature>, trunc: i64) -> Result<LaurentSeries<GaussRat>> {
    let e = parse_expr(text)?;
    let r = Evaluator { sig, allow_x: true }.eval(&e)?;
    let num = LaurentSeries::from_terms(sig, r.num.clone(), trunc)?;
    if as_unit_monomial(&r.den).is_some() {
        // normalized: the denominator is 1
        return Ok(num);
    }
    let mut margin = 8;
    loop {
        let window = trunc + margin;
        let n = LaurentSeries::from_terms(sig, r.num.clone(), window)?;
        let d = LaurentSeries::from_terms(sig, r.den.clone(), window)?;
        let q = n.try_mul(&d.invert()?)?;
        if q.trunc_order() >= trunc {
            return Ok(q.truncate(trunc));
        }
        if margin > 1024 + 4 * trunc.abs() {
            return Err(Error::InsufficientTruncation { needed: trunc, have: q.trunc_order() });
        }
        margin *= 2;
    }
}

/// Splits a product into factors with integer exponents.
fn flatten(e: &Expr, exp: i64, out: &mut Vec<(Expr, i64)>) {
    match e {
        Expr::Mul(a, b) => {
            flatten(a, exp, out);
            flatten(b, exp, out);
        }
        Expr::Div(a, b, _) => {
            flatten(a, exp, out);
            flatten(b, -exp, out);
        }
        Expr::Pow(a, n, _) => flatten(a, exp * n, out),
        Expr::Neg(a) => {
            out.push((Expr::Num(-BigRational::one()), exp));
            flatten(a, exp, out);
        }
        other => out.push((other.clone(), exp)),
    }
}

/// Writes a nonzero Laurent polynomial as `c · ρ(x) · (1 + n(x)/ρ(x))` with
/// `ρ` a monic product of linear factors.
fn classify(p: &Poly, sig: &Arc<Signature>, text: &str) -> Result<RationalFunction> {
    let reduced: Vec<(i64, GaussRat)> = p
        .iter()
        .map(|(e, c)| (*e, c.reduce()))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let (Some(lo), Some(hi)) = (reduced.first(), reduced.last()) else {
        return err(1, format!("factor `{text}` is nilpotent, hence not invertible"));
    };
    if p.len() == 1 && lo.0 == 0 {
        return RationalFunction::constant(sig, p[&0].clone());
    }
    let (divisor, lead) = match hi.0 - lo.0 {
        0 => (Divisor::new([(GaussRat::zero(), lo.0)]), hi.1.clone()),
        1 => {
            let root = -lo.1.clone() / hi.1.clone();
            (Divisor::new([(GaussRat::zero(), lo.0), (root, 1)]), hi.1.clone())
        }
        _ => {
            return err(
                1,
                format!("factor `{text}` does not reduce to a monomial times a linear polynomial; split it into linear factors"),
            )
        }
    };
    let inv = GaussRat::one() / lead.clone();
    let num: Poly = p
        .iter()
        .map(|(e, c)| (*e, c.nilpotent_part().scale(&inv)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let scale = Elem::constant(sig, lead);
    RationalFunction::new(sig, scale, divisor.clone(), Vec::new())?.perturbed(num, divisor, 1)
}

fn expr_text(e: &Expr) -> String {
    match e {
        Expr::Num(q) => q.to_string(),
        Expr::Ident(n, _) => n.clone(),
        Expr::Neg(a) => format!("-{}", expr_text(a)),
        Expr::Add(a, b) => format!("{}+{}", expr_text(a), expr_text(b)),
        Expr::Sub(a, b) => format!("{}-({})", expr_text(a), expr_text(b)),
        Expr::Mul(a, b) => format!("({})*({})", expr_text(a), expr_text(b)),
        Expr::Div(a, b, _) => format!("({})/({})", expr_text(a), expr_text(b)),
        Expr::Pow(a, n, _) => format!("({})^{n}", expr_text(a)),
    }
}

/// Parses a rational function given as a product of factors whose
/// reductions are monomials times linear polynomials, e.g.
/// `x^2*(x-3)^-1`, `(x+eps)*(1-x)`, `(x-1)*(x-2)^-1*(1+eps/(x-3))`.
pub fn parse_rational_function(text: &str, sig: &Arc<Signature>) -> Result<RationalFunction> {
    let e = parse_expr(text)?;
    let mut factors = Vec::new();
    flatten(&e, 1, &mut factors);
    let ev = Evaluator { sig, allow_x: true };
    let mut out = RationalFunction::constant(sig, Elem::one(sig))?;
    for (factor, exp) in factors {
        let r = ev.eval(&factor)?;
        if r.is_zero() {
            return err(1, format!("factor `{}` is zero", expr_text(&factor)));
        }
        let text = expr_text(&factor);
        let num = classify(&r.num, sig, &text)?;
        let den = classify(&r.den, sig, &text)?;
        out = out.try_mul(&num.try_mul(&den.pow(-1)?)?.pow(exp)?)?;
    }
    Ok(out)
}

/// Float value of a path parameter; `pi` is allowed here.
fn eval_float(e: &Expr) -> Result<Complex64> {
    use num_traits::ToPrimitive;
    Ok(match e {
        Expr::Num(q) => Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0),
        Expr::Ident(n, pos) => match n.as_str() {
            "i" => Complex64::new(0.0, 1.0),
            "pi" => Complex64::new(std::f64::consts::PI, 0.0),
            other => return err(*pos, format!("unknown name `{other}` in a path parameter")),
        },
        Expr::Neg(a) => -eval_float(a)?,
        Expr::Add(a, b) => eval_float(a)? + eval_float(b)?,
        Expr::Sub(a, b) => eval_float(a)? - eval_float(b)?,
        Expr::Mul(a, b) => eval_float(a)? * eval_float(b)?,
        Expr::Div(a, b, pos) => {
            let d = eval_float(b)?;
            if d == Complex64::zero() {
                return err(*pos, "division by zero");
            }
            eval_float(a)? / d
        }
        Expr::Pow(a, n, _) => eval_float(a)?.powi(*n as i32),
    })
}

impl Parser {
    fn path(&mut self) -> Result<Path> {
        let t = self.bump();
        let Tok::Ident(name) = t.tok else {
            return err(t.pos, format!("expected a path constructor, found {}", describe(&t.tok)));
        };
        self.expect('(')?;
        let path = match name.as_str() {
            "circle" => {
                let center = eval_float(&self.expr()?)?;
                self.expect(',')?;
                let radius = eval_float(&self.expr()?)?;
                let angle = if self.eat(',') { eval_float(&self.expr()?)?.re } else { 0.0 };
                Path::circle(center, radius.re, angle)
            }
            "arc" => {
                let mut args = vec![eval_float(&self.expr()?)?];
                for _ in 0..3 {
                    self.expect(',')?;
                    args.push(eval_float(&self.expr()?)?);
                }
                Path::arc(args[0], args[1].re, args[2].re, args[3].re)
            }
            "seg" => {
                let a = eval_float(&self.expr()?)?;
                self.expect(',')?;
                let b = eval_float(&self.expr()?)?;
                Ok(Path::segment(a, b))
            }
            "point" => Ok(Path::point(eval_float(&self.expr()?)?)),
            "concat" => {
                let mut parts = vec![self.path()?];
                while self.eat(',') {
                    parts.push(self.path()?);
                }
                Path::concat(&parts)
            }
            "rev" => Ok(self.path()?.reverse()),
            "comm" => {
                let a = self.path()?;
                self.expect(',')?;
                let b = self.path()?;
                Path::commutator(&a, &b)
            }
            other => return err(t.pos, format!("unknown path constructor `{other}`")),
        }
        .map_err(|e| Error::Parse { pos: t.pos, msg: e.to_string() })?;
        self.expect(')')?;
        Ok(path)
    }
}

/// Parses `circle(c,r[,angle])`, `arc(c,r,start,sweep)`, `seg(a,b)`,
/// `point(z)`, `concat(p,...)`, `rev(p)` and `comm(p,q)`.
pub fn parse_path(text: &str) -> Result<Path> {
    let mut p = Parser::new(text)?;
    let path = p.path()?;
    p.finish()?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss_frac, gauss_int};

    fn dual() -> Arc<Signature> {
        Signature::new(&["eps"], 2).unwrap()
    }

    #[test]
    fn precedence() {
        let s = Signature::trivial();
        assert_eq!(parse_constant("-2^2", &s).unwrap().reduce(), gauss_int(-4));
        assert_eq!(parse_constant("1+2*3", &s).unwrap().reduce(), gauss_int(7));
        assert_eq!(parse_constant("1/2+1/3", &s).unwrap().reduce(), gauss_frac(5, 6));
        assert_eq!(parse_constant("2^-1", &s).unwrap().reduce(), gauss_frac(1, 2));
        assert_eq!(parse_constant("0.2", &s).unwrap().reduce(), gauss_frac(1, 5));
        assert_eq!(parse_constant("(1+i)*(1-i)", &s).unwrap().reduce(), gauss_int(2));
        assert_eq!(parse_point("-1/2").unwrap(), gauss_frac(-1, 2));
        assert_eq!(parse_sphere_point("inf").unwrap(), SpherePoint::Infinity);
    }

    #[test]
    fn errors_carry_positions() {
        let s = dual();
        assert_eq!(
            parse_expr("1+*2").unwrap_err(),
            Error::Parse { pos: 3, msg: "expected a value, found `*`".into() }
        );
        assert!(matches!(parse_expr("(1-x"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_expr("x^y"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_constant("2*delta", &s), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_constant("x", &s), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_expr("1 $"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_expr("x^2^3"), Err(Error::Parse { .. })));
    }

    #[test]
    fn series_literals() {
        let s = dual();
        let f = parse_series("x^-2*(1-eps*x^-1)*(1-x)", &s, 4).unwrap();
        assert_eq!(f.to_string(), "-eps*x^-3+(1+eps)*x^-2-x^-1+O(x^4)");
        assert_eq!(f.trunc_order(), 4);
        let g = parse_series("1/(1-x)", &s, 3).unwrap();
        assert_eq!(g.to_string(), "1+x+x^2+O(x^3)");
        let h = parse_series("x/(x+eps)", &s, 3).unwrap();
        // x^{-1}·x·(1 - eps x^{-1})
        assert_eq!(h.to_string(), "-eps*x^-1+1+O(x^3)");
    }

    #[test]
    fn rational_function_literals() {
        let s = dual();
        let f = parse_rational_function("(x+eps)*(x-1)^-1", &s).unwrap();
        assert_eq!(f.eval(&gauss_int(2)).unwrap().to_string(), "2+eps");
        let g = parse_rational_function("x^2*(x-3)^-1", &s).unwrap();
        assert_eq!(g.base().factors(), &[(gauss_int(0), 2), (gauss_int(3), -1)]);
        let h = parse_rational_function("2*(1-x)", &s).unwrap();
        assert_eq!(h.eval(&gauss_frac(1, 2)).unwrap().to_string(), "1");
        let k = parse_rational_function("-(x-i)/(2*x)", &s).unwrap();
        assert_eq!(k.eval(&gauss_int(1)).unwrap().to_string(), "-1/2+1/2*i");
        assert!(matches!(k.eval(&gauss_i()), Err(Error::OnSupport(_))));
        let p = parse_rational_function("(x-1)*(1+eps/(x-3))", &s).unwrap();
        let v = p.eval(&gauss_int(2)).unwrap();
        assert_eq!(v.to_string(), "1-eps");
        assert!(parse_rational_function("x^2+1", &s).is_err());
        assert!(parse_rational_function("eps*x", &s).is_err());
    }

    #[test]
    fn paths() {
        let p = parse_path("circle(0,1/2)").unwrap();
        assert!(p.is_closed());
        assert!((p.start() - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        let q = parse_path("concat(seg(-1/2,-1/4), circle(0,1/4,pi), seg(-1/4,-1/2))").unwrap();
        assert!(q.is_closed());
        assert_eq!(q.segments().len(), 3);
        let r = parse_path("rev(seg(0,1+i))").unwrap();
        assert_eq!(r.start(), Complex64::new(1.0, 1.0));
        assert!(parse_path("comm(circle(1,1,pi), circle(-1,1))").is_ok());
        assert!(matches!(parse_path("square(0,1)"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_path("concat(seg(0,1), seg(2,3))"), Err(Error::Parse { .. })));
    }
}
