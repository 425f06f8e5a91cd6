//! Local artinian ℂ-algebras `A = ℂ[ε₁,…,ε_g] / (monomials of total degree ≥ N)`.
//!
//! Elements are stored densely over the monomial basis of `A`, in the
//! canonical order (total degree, then exponent vector in descending
//! lexicographic order, so `eps` precedes `delta` when declared first).
//! Dense storage makes equality structural: two elements are equal iff
//! every coefficient agrees, which is the zero-pruned canonical form
//! compared entrywise.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::scalar::{Backend, GaussRat, Scalar, ShowScalar};

/// Generators and nilpotency degree of an algebra. Shared behind an `Arc`.
#[derive(Debug)]
pub struct Signature {
    gens: Vec<String>,
    degree: usize,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    /// `(i, j, k)` with `mon[i] * mon[j] = mon[k]` and total degree `< N`.
    table: Vec<(u32, u32, u32)>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.degree == other.degree
    }
}

impl Eq for Signature {}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new<S: AsRef<str>>(gens: &[S], degree: usize) -> Result<Arc<Self>> {
        if degree == 0 {
            return Err(Error::InvalidSignature("degree must be at least 1".into()));
        }
        let gens: Vec<String> = gens.iter().map(|g| g.as_ref().to_string()).collect();
        for (k, g) in gens.iter().enumerate() {
            if !is_identifier(g) {
                return Err(Error::InvalidSignature(format!("bad generator name {g:?}")));
            }
            if g == "x" || g == "i" {
                return Err(Error::InvalidSignature(format!(
                    "generator name {g:?} is reserved"
                )));
            }
            if gens[..k].contains(g) {
                return Err(Error::InvalidSignature(format!("duplicate generator {g:?}")));
            }
        }

        let mut monomials = Vec::new();
        let mut current = vec![0u32; gens.len()];
        enumerate_monomials(&mut current, 0, degree as u32 - 1, &mut monomials);
        monomials.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let index: HashMap<_, _> = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();

        let mut table = Vec::new();
        for (i, a) in monomials.iter().enumerate() {
            for (j, b) in monomials.iter().enumerate() {
                let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if let Some(&k) = index.get(&prod) {
                    table.push((i as u32, j as u32, k as u32));
                }
            }
        }

        Ok(Arc::new(Signature {
            gens,
            degree,
            monomials,
            index,
            table,
        }))
    }

    /// The residue field ℂ itself (no generators).
    pub fn trivial() -> Arc<Self> {
        Self::new::<&str>(&[], 1).expect("trivial signature")
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    /// Nilpotency bound `N`: every product of `N` elements of `m` vanishes.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dimension of `A` over ℂ.
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    /// True when `A = ℂ`, i.e. the maximal ideal is zero.
    pub fn is_trivial(&self) -> bool {
        self.dim() == 1
    }

    /// Nilpotency index of the maximal ideal: smallest `n` with `m^n = 0`.
    pub fn nilpotency(&self) -> usize {
        if self.gens.is_empty() {
            1
        } else {
            self.degree
        }
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn monomial_index(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g == name)
    }

    pub fn monomial_name(&self, k: usize) -> String {
        let exps = &self.monomials[k];
        let parts: Vec<String> = exps
            .iter()
            .zip(&self.gens)
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| if *e == 1 { g.clone() } else { format!("{g}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    fn describe(&self) -> String {
        format!("gens={};degree={}", self.gens.join(","), self.degree)
    }
}

fn enumerate_monomials(current: &mut Vec<u32>, pos: usize, budget: u32, out: &mut Vec<Vec<u32>>) {
    if pos == current.len() {
        out.push(current.clone());
        return;
    }
    for e in 0..=budget {
        current[pos] = e;
        enumerate_monomials(current, pos + 1, budget - e, out);
    }
    current[pos] = 0;
}

/// Signature plus scalar backend, as written on the command line:
/// `gens=eps,delta;degree=3;scalars=exact`.
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub signature: Arc<Signature>,
    pub backend: Backend,
}

impl AlgebraSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut gens: Vec<String> = Vec::new();
        let mut degree: Option<usize> = None;
        let mut backend = Backend::Exact;
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidSignature(format!("expected key=value, got {part:?}")))?;
            match key.trim() {
                "gens" => {
                    gens = value
                        .split(',')
                        .map(str::trim)
                        .filter(|g| !g.is_empty())
                        .map(String::from)
                        .collect();
                }
                "degree" => {
                    degree = Some(value.trim().parse().map_err(|_| {
                        Error::InvalidSignature(format!("bad degree {value:?}"))
                    })?);
                }
                "scalars" => {
                    backend = match value.trim() {
                        "exact" => Backend::Exact,
                        "float" => Backend::Float,
                        other => {
                            return Err(Error::InvalidSignature(format!(
                                "unknown scalar backend {other:?}"
                            )))
                        }
                    }
                }
                other => return Err(Error::InvalidSignature(format!("unknown key {other:?}"))),
            }
        }
        let degree = degree.unwrap_or(if gens.is_empty() { 1 } else { 2 });
        Ok(AlgebraSpec {
            signature: Signature::new(&gens, degree)?,
            backend,
        })
    }

    pub fn trivial() -> Self {
        AlgebraSpec {
            signature: Signature::trivial(),
            backend: Backend::Exact,
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};scalars={}", self.signature.describe(), self.backend)
    }
}

/// An element of `A` with coefficients in the scalar backend `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct Elem<S: Scalar> {
    sig: Arc<Signature>,
    coeffs: Vec<S>,
}

pub type ExactElem = Elem<GaussRat>;
pub type FloatElem = Elem<Complex64>;

pub(crate) fn check_same(a: &Arc<Signature>, b: &Arc<Signature>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::SignatureMismatch(a.describe(), b.describe()))
    }
}

impl<S: Scalar> Elem<S> {
    pub fn zero(sig: &Arc<Signature>) -> Self {
        Elem {
            sig: sig.clone(),
            coeffs: vec![S::zero(); sig.dim()],
        }
    }

    pub fn one(sig: &Arc<Signature>) -> Self {
        Self::constant(sig, S::one())
    }

    pub fn constant(sig: &Arc<Signature>, c: S) -> Self {
        let mut e = Self::zero(sig);
        e.coeffs[0] = c;
        e
    }

    pub fn from_i64(sig: &Arc<Signature>, n: i64) -> Self {
        Self::constant(sig, S::from_i64(n))
    }

    /// The generator called `name`, or `None` if the algebra has no such generator
    /// (or it vanishes because `N = 1`).
    pub fn generator(sig: &Arc<Signature>, name: &str) -> Option<Self> {
        let g = sig.generator_index(name)?;
        let mut exps = vec![0u32; sig.gens().len()];
        exps[g] = 1;
        let mut e = Self::zero(sig);
        if let Some(k) = sig.monomial_index(&exps) {
            e.coeffs[k] = S::one();
        }
        Some(e)
    }

    /// Builds an element from dense coefficients in canonical monomial order.
    pub fn from_coeffs(sig: &Arc<Signature>, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != sig.dim() {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients, got {}",
                sig.dim(),
                coeffs.len()
            )));
        }
        Ok(Elem {
            sig: sig.clone(),
            coeffs,
        })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, exps: &[u32]) -> S {
        self.sig
            .monomial_index(exps)
            .map(|k| self.coeffs[k].clone())
            .unwrap_or_else(S::zero)
    }

    /// Nonzero terms `(exponent vector, coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &S)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.sig.monomials[k].as_slice(), c))
    }

    /// Projection to the residue field: the coefficient of the empty monomial.
    pub fn reduce(&self) -> S {
        self.coeffs[0].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// Membership in the maximal ideal `m`.
    pub fn in_max_ideal(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// The nilpotent part `a - reduce(a)`.
    pub fn nilpotent_part(&self) -> Self {
        let mut e = self.clone();
        e.coeffs[0] = S::zero();
        e
    }

    pub fn scale(&self, c: &S) -> Self {
        Elem {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_same(&self.sig, &other.sig)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_same(&self.sig, &other.sig)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.sig, &other.sig)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        Elem {
            sig: self.sig.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        Elem {
            sig: self.sig.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = vec![S::zero(); self.coeffs.len()];
        for &(i, j, k) in &self.sig.table {
            let a = &self.coeffs[i as usize];
            if a.is_zero() {
                continue;
            }
            let b = &other.coeffs[j as usize];
            if b.is_zero() {
                continue;
            }
            let k = k as usize;
            out[k] = out[k].clone() + a.clone() * b.clone();
        }
        Elem {
            sig: self.sig.clone(),
            coeffs: out,
        }
    }

    /// Multiplicative inverse of a unit, via the finite geometric series of
    /// its nilpotent part.
    pub fn invert(&self) -> Result<Self> {
        let a0 = self.reduce();
        if a0.is_zero() {
            return Err(Error::NotUnit(self.to_string()));
        }
        let inv0 = S::one() / a0;
        // self = a0 (1 - n) with n nilpotent
        let n = Self::one(&self.sig).sub_unchecked(&self.scale(&inv0));
        let mut sum = Self::one(&self.sig);
        let mut power = Self::one(&self.sig);
        for _ in 1..self.sig.nilpotency() {
            power = power.mul_unchecked(&n);
            if power.is_zero() {
                break;
            }
            sum = sum.add_unchecked(&power);
        }
        Ok(sum.scale(&inv0))
    }

    pub fn ipow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.invert()?.ipow(-n);
        }
        let mut result = Self::one(&self.sig);
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(result)
    }

    /// `log(1 - a) = -Σ_{k≥1} a^k / k` for `a ∈ m` (a finite sum).
    pub fn log1m(&self) -> Result<Self> {
        if !self.in_max_ideal() {
            return Err(Error::NotNilpotent(self.to_string()));
        }
        let mut sum = Self::zero(&self.sig);
        let mut power = Self::one(&self.sig);
        for k in 1..self.sig.nilpotency() as i64 {
            power = power.mul_unchecked(self);
            if power.is_zero() {
                break;
            }
            sum = sum.sub_unchecked(&power.scale(&(S::one() / S::from_i64(k))));
        }
        Ok(sum)
    }

    /// `exp(a) = Σ a^n / n!`. Over the exact backend `a` must lie in `m`;
    /// the float backend accepts any `a` as `exp(reduce(a)) · exp(a - reduce(a))`.
    pub fn exp(&self) -> Result<Self> {
        let a0 = self.reduce();
        let head = a0
            .exp_checked()
            .ok_or_else(|| Error::NotNilpotent(self.to_string()))?;
        let n = self.nilpotent_part();
        let mut sum = Self::one(&self.sig);
        let mut term = Self::one(&self.sig);
        for k in 1..self.sig.nilpotency() as i64 {
            term = term.mul_unchecked(&n).scale(&(S::one() / S::from_i64(k)));
            if term.is_zero() {
                break;
            }
            sum = sum.add_unchecked(&term);
        }
        Ok(sum.scale(&head))
    }

    /// Largest coefficient-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a.to_c64() - b.to_c64()).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|a| a.to_c64().norm())
            .fold(0.0, f64::max)
    }

    pub fn to_float(&self) -> FloatElem {
        Elem {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().map(Scalar::to_c64).collect(),
        }
    }

    /// JSON form `{monomial: [re, im]}` over the nonzero terms.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = c.to_c64();
            map.insert(self.sig.monomial_name(k), serde_json::json!([z.re, z.im]));
        }
        Value::Object(map)
    }
}

impl ExactElem {
    /// Widening conversion into any backend.
    pub fn convert<T: Scalar>(&self) -> Elem<T> {
        Elem {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().map(T::from_gauss).collect(),
        }
    }
}

impl FloatElem {
    /// Principal logarithm of a unit: `ln(a₀) + log(1 - (1 - a/a₀))`.
    pub fn ln(&self) -> Result<Self> {
        let a0 = self.reduce();
        if a0 == Complex64::zero() {
            return Err(Error::NotUnit(self.to_string()));
        }
        let mut n = Self::one(&self.sig).sub_unchecked(&self.scale(&(Complex64::one() / a0)));
        n.coeffs[0] = Complex64::zero();
        let mut out = n.log1m()?;
        out.coeffs[0] += a0.ln();
        Ok(out)
    }
}

impl<S: Scalar> fmt::Display for Elem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let piece = if k == 0 {
                ShowScalar(c).to_string()
            } else {
                let mon = self.sig.monomial_name(k);
                if c.is_one() {
                    mon
                } else if *c == -S::one() {
                    format!("-{mon}")
                } else if c.is_simple() {
                    format!("{}*{mon}", ShowScalar(c))
                } else {
                    format!("({})*{mon}", ShowScalar(c))
                }
            };
            if !first && !piece.starts_with('-') {
                f.write_str("+")?;
            }
            f.write_str(&piece)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl<S: Scalar> std::ops::$trait<&Elem<S>> for &Elem<S> {
            type Output = Elem<S>;
            /// Panics if the operands belong to different algebras.
            fn $method(self, rhs: &Elem<S>) -> Elem<S> {
                check_same(&self.sig, &rhs.sig).expect("algebra signature mismatch");
                self.$inner(rhs)
            }
        }
        impl<S: Scalar> std::ops::$trait<Elem<S>> for Elem<S> {
            type Output = Elem<S>;
            fn $method(self, rhs: Elem<S>) -> Elem<S> {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_unchecked);
forward_binop!(Sub, sub, sub_unchecked);
forward_binop!(Mul, mul, mul_unchecked);

impl<S: Scalar> std::ops::Neg for &Elem<S> {
    type Output = Elem<S>;
    fn neg(self) -> Elem<S> {
        Elem {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<S: Scalar> std::ops::Neg for Elem<S> {
    type Output = Elem<S>;
    fn neg(self) -> Elem<S> {
        -&self
    }
}
