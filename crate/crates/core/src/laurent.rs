//! Truncated Laurent series over `A` and their canonical product factorization
//!
//! ```text
//! f = a₀ · x^ν · ∏_{j<0} (1 - a_j x^j) · ∏_{j>0} (1 - a_j x^j)
//! ```
//!
//! with `a₀` a unit and `a_j ∈ m` for `j < 0`.
//!
//! A series stores the coefficients it knows exactly, all of exponent below its
//! truncation order `T`; coefficients at `T` and above are unknown. Every
//! operation returns the largest order below which its result is exact.
//!
//! Because the negative part of a unit series is nilpotent, information from
//! high exponents leaks downwards through products with it: multiplying by a
//! term `c·x^{-d}` with `c ∈ m` can happen at most `N-1` times before the
//! product vanishes. That bound is what the truncation bookkeeping in
//! [`LaurentSeries::invert`] and [`LaurentSeries::factorize`] is built on.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{check_same, Elem, Signature};
use crate::error::{Error, Result};
use crate::scalar::{GaussRat, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries<S: Scalar> {
    sig: Arc<Signature>,
    coeffs: BTreeMap<i64, Elem<S>>,
    trunc: i64,
}

/// The data `(ν, a₀, {a_j})` of the canonical product decomposition.
///
/// `pos_factors` are determined for `0 < j < trunc - nu`; all factors with a
/// larger index are unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalFactorization<S: Scalar> {
    pub sig: Arc<Signature>,
    pub nu: i64,
    pub a0: Elem<S>,
    /// `j < 0 ↦ a_j ∈ m`, nonzero entries only.
    pub neg_factors: BTreeMap<i64, Elem<S>>,
    /// `0 < j < trunc - nu ↦ a_j`, nonzero entries only.
    pub pos_factors: BTreeMap<i64, Elem<S>>,
    pub trunc: i64,
}

/// Product of two coefficient maps keeping exponents `< window`.
fn mul_window<S: Scalar>(
    f: &BTreeMap<i64, Elem<S>>,
    g: &BTreeMap<i64, Elem<S>>,
    window: i64,
) -> BTreeMap<i64, Elem<S>> {
    let mut out: BTreeMap<i64, Elem<S>> = BTreeMap::new();
    let g_low = match g.keys().next() {
        Some(&e) => e,
        None => return out,
    };
    for (&i, a) in f {
        if i + g_low >= window {
            break;
        }
        for (&j, b) in g.range(..window - i) {
            let prod = a * b;
            if prod.is_zero() {
                continue;
            }
            out.entry(i + j)
                .and_modify(|c| *c = &*c + &prod)
                .or_insert(prod);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn add_into<S: Scalar>(target: &mut BTreeMap<i64, Elem<S>>, e: i64, value: &Elem<S>) {
    match target.get_mut(&e) {
        Some(c) => {
            *c = &*c + value;
            if c.is_zero() {
                target.remove(&e);
            }
        }
        None => {
            if !value.is_zero() {
                target.insert(e, value.clone());
            }
        }
    }
}

fn lowest<S: Scalar>(m: &BTreeMap<i64, Elem<S>>) -> Option<i64> {
    m.keys().next().copied()
}

impl<S: Scalar> LaurentSeries<S> {
    pub fn zero(sig: &Arc<Signature>, trunc: i64) -> Self {
        LaurentSeries {
            sig: sig.clone(),
            coeffs: BTreeMap::new(),
            trunc,
        }
    }

    /// Builds a series from terms; zero terms and exponents `>= trunc` are dropped,
    /// repeated exponents are summed.
    pub fn from_terms<I>(sig: &Arc<Signature>, terms: I, trunc: i64) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Elem<S>)>,
    {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            check_same(sig, c.signature())?;
            if e < trunc {
                add_into(&mut coeffs, e, &c);
            }
        }
        Ok(LaurentSeries {
            sig: sig.clone(),
            coeffs,
            trunc,
        })
    }

    pub fn monomial(sig: &Arc<Signature>, c: Elem<S>, exp: i64, trunc: i64) -> Self {
        let mut s = Self::zero(sig, trunc);
        if exp < trunc && !c.is_zero() {
            s.coeffs.insert(exp, c);
        }
        s
    }

    pub fn constant(sig: &Arc<Signature>, c: Elem<S>, trunc: i64) -> Self {
        Self::monomial(sig, c, 0, trunc)
    }

    pub fn one(sig: &Arc<Signature>, trunc: i64) -> Self {
        Self::constant(sig, Elem::one(sig), trunc)
    }

    /// The uniformizer `x` itself.
    pub fn x(sig: &Arc<Signature>, trunc: i64) -> Self {
        Self::monomial(sig, Elem::one(sig), 1, trunc)
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn trunc_order(&self) -> i64 {
        self.trunc
    }

    pub fn coeff(&self, e: i64) -> Elem<S> {
        self.coeffs
            .get(&e)
            .cloned()
            .unwrap_or_else(|| Elem::zero(&self.sig))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Elem<S>)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn lowest_exponent(&self) -> Option<i64> {
        lowest(&self.coeffs)
    }

    /// No nonzero coefficient lies below this exponent.
    pub fn lower_bound(&self) -> i64 {
        self.lowest_exponent().unwrap_or(self.trunc)
    }

    /// Drops everything at or above `trunc` (never raises the order).
    pub fn truncate(&self, trunc: i64) -> Self {
        let trunc = trunc.min(self.trunc);
        LaurentSeries {
            sig: self.sig.clone(),
            coeffs: self.coeffs.range(..trunc).map(|(e, c)| (*e, c.clone())).collect(),
            trunc,
        }
    }

    /// Agreement on every exponent below `min(T_self, T_other)`.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let t = self.trunc.min(other.trunc);
        self.truncate(t).coeffs == other.truncate(t).coeffs
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            trunc: self.trunc.saturating_add(k),
        }
    }

    pub fn scale(&self, c: &Elem<S>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, a) in &self.coeffs {
            let p = a * c;
            if !p.is_zero() {
                coeffs.insert(*e, p);
            }
        }
        LaurentSeries {
            sig: self.sig.clone(),
            coeffs,
            trunc: self.trunc,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_same(&self.sig, &other.sig)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out = self.truncate(trunc);
        for (&e, c) in other.coeffs.range(..trunc) {
            add_into(&mut out.coeffs, e, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
            trunc: self.trunc,
        }
    }

    /// Cauchy product, exact below `min(T_f + low(g), T_g + low(f))`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.sig, &other.sig)?;
        let trunc = self
            .trunc
            .saturating_add(other.lower_bound())
            .min(other.trunc.saturating_add(self.lower_bound()));
        Ok(LaurentSeries {
            sig: self.sig.clone(),
            coeffs: mul_window(&self.coeffs, &other.coeffs, trunc),
            trunc,
        })
    }

    /// True when some known coefficient is a unit of `A`.
    pub fn is_invertible(&self) -> bool {
        self.coeffs.values().any(Elem::is_unit)
    }

    /// Order of the reduction mod `m`: the lowest exponent with a unit coefficient.
    pub fn valuation(&self) -> Result<i64> {
        self.coeffs
            .iter()
            .find(|(_, c)| c.is_unit())
            .map(|(e, _)| *e)
            .ok_or(Error::NotInvertible)
    }

    /// Writes `self = c · x^ν · (1 + h)` and returns `(ν, c, h, W)`, where
    /// `h` has no constant term and is known below `W = T - ν`.
    fn normalize(&self) -> Result<(i64, Elem<S>, BTreeMap<i64, Elem<S>>, i64)> {
        let nu = self.valuation()?;
        let c = self.coeffs[&nu].clone();
        let inv = c.invert()?;
        let mut h = BTreeMap::new();
        for (e, a) in &self.coeffs {
            if *e == nu {
                continue;
            }
            let v = a * &inv;
            if !v.is_zero() {
                h.insert(e - nu, v);
            }
        }
        Ok((nu, c, h, self.trunc.saturating_sub(nu)))
    }

    /// Number of times a nilpotent factor can survive in a product, times the
    /// depth of the negative tail of `h`: how far unknown high coefficients can
    /// leak downwards.
    fn leak(&self, h: &BTreeMap<i64, Elem<S>>) -> i64 {
        let depth = lowest(h).map_or(0, |e| (-e).max(0));
        (self.sig.nilpotency() as i64 - 1) * depth
    }

    /// Multiplicative inverse, exact below `T - 2ν - (N-1)·D` where `D` is the
    /// depth of the nilpotent tail below the leading unit term.
    pub fn invert(&self) -> Result<Self> {
        let (nu, c, h, window) = self.normalize()?;
        let valid = window.saturating_sub(self.leak(&h));
        // u = Σ (-h)^k
        let neg_h: BTreeMap<i64, Elem<S>> = h.iter().map(|(e, a)| (*e, -a)).collect();
        let mut u: BTreeMap<i64, Elem<S>> = BTreeMap::new();
        if 0 < window {
            u.insert(0, Elem::one(&self.sig));
        }
        let mut term = u.clone();
        loop {
            term = mul_window(&term, &neg_h, window);
            if term.is_empty() {
                break;
            }
            for (e, a) in &term {
                add_into(&mut u, *e, a);
            }
        }
        let inv_c = c.invert()?;
        let result = LaurentSeries {
            sig: self.sig.clone(),
            coeffs: u
                .range(..valid)
                .map(|(e, a)| (*e, a * &inv_c))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
            trunc: valid,
        };
        Ok(result.shift(-nu))
    }

    pub fn ipow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.invert()?.ipow(-n);
        }
        let mut result = LaurentSeries::one(&self.sig, i64::MAX / 4);
        for _ in 0..n {
            result = result.try_mul(self)?;
        }
        Ok(result)
    }

    /// Canonical factorization. Internally takes the logarithm of the
    /// normalized unit `1 + h` and peels the factors `log(1 - a_j x^j)` off
    /// the negative and positive halves in order of increasing `|j|`.
    pub fn factorize(&self) -> Result<CanonicalFactorization<S>> {
        let (nu, c, h, window) = self.normalize()?;
        let positive_window = window.saturating_sub(self.leak(&h));
        if positive_window < 1 {
            return Err(Error::InsufficientTruncation {
                needed: nu + self.leak(&h) + 1,
                have: self.trunc,
            });
        }

        // log(1 + h) = Σ_{k≥1} (-1)^{k+1} h^k / k
        let mut log: BTreeMap<i64, Elem<S>> = BTreeMap::new();
        let mut power = h.clone();
        let mut k = 1i64;
        while !power.is_empty() {
            let mut w = S::one() / S::from_i64(k);
            if k % 2 == 0 {
                w = -w;
            }
            for (e, a) in &power {
                add_into(&mut log, *e, &a.scale(&w));
            }
            power = mul_window(&power, &h, window);
            k += 1;
        }

        let l0 = log.remove(&0).unwrap_or_else(|| Elem::zero(&self.sig));
        let a0 = &c * &l0.exp()?;

        let negative = log.range(..0).map(|(e, a)| (*e, a.clone())).collect();
        let neg_factors = peel(negative, true, 0)?;
        let positive = log
            .range(1..positive_window)
            .map(|(e, a)| (*e, a.clone()))
            .collect();
        let pos_factors = peel(positive, false, positive_window)?;

        Ok(CanonicalFactorization {
            sig: self.sig.clone(),
            nu,
            a0,
            neg_factors,
            pos_factors,
            trunc: nu + positive_window,
        })
    }

    /// Sum of the known terms at a point: `Σ c_n z^n` for `z ≠ 0`.
    pub fn eval_partial(&self, z: &S) -> Result<Elem<S>> {
        if z.is_zero() && self.lower_bound() < 0 {
            return Err(Error::InvalidInput("negative powers at zero".into()));
        }
        let mut acc = Elem::zero(&self.sig);
        for (e, c) in &self.coeffs {
            acc = &acc + &c.scale(&scalar_pow(z, *e));
        }
        Ok(acc)
    }
}

fn scalar_pow<S: Scalar>(z: &S, e: i64) -> S {
    let base = if e < 0 { S::one() / z.clone() } else { z.clone() };
    let mut out = S::one();
    for _ in 0..e.unsigned_abs() {
        out = out * base.clone();
    }
    out
}

/// Removes `Σ_j log(1 - a_j x^j)` from `log` and returns the recovered `a_j`.
///
/// `log(1 - a x^j) = -Σ_k a^k x^{jk} / k`, so the remaining coefficient with
/// the smallest `|j|` is exactly `-a_j`; its higher powers are subtracted
/// before moving on. Contributions at or beyond `limit` (positive side only)
/// are unknown and dropped.
fn peel<S: Scalar>(
    mut log: BTreeMap<i64, Elem<S>>,
    negative: bool,
    limit: i64,
) -> Result<BTreeMap<i64, Elem<S>>> {
    let mut factors = BTreeMap::new();
    loop {
        let next = if negative {
            log.keys().next_back().copied()
        } else {
            log.keys().next().copied()
        };
        let Some(j) = next else { break };
        let a = -log.remove(&j).expect("key present");
        if negative && !a.in_max_ideal() {
            return Err(Error::NotNilpotent(a.to_string()));
        }
        let mut power = a.clone();
        for k in 2.. {
            let e = j * k;
            if !negative && e >= limit {
                break;
            }
            power = &power * &a;
            if power.is_zero() {
                break;
            }
            add_into(&mut log, e, &power.scale(&(S::one() / S::from_i64(k))));
        }
        factors.insert(j, a);
    }
    Ok(factors)
}

impl<S: Scalar> CanonicalFactorization<S> {
    /// Expands the product back into a series, exact below `T - E` where `E`
    /// is the depth of the (finite) negative product.
    pub fn reconstruct(&self) -> LaurentSeries<S> {
        let sig = &self.sig;
        let p = self.trunc - self.nu;
        let one = Elem::one(sig);

        let mut minus: BTreeMap<i64, Elem<S>> = BTreeMap::from([(0, one.clone())]);
        for (j, a) in &self.neg_factors {
            let factor = BTreeMap::from([(0, one.clone()), (*j, -a)]);
            minus = mul_window(&minus, &factor, 1);
        }
        let depth = lowest(&minus).map_or(0, |e| (-e).max(0));

        let mut plus: BTreeMap<i64, Elem<S>> = BTreeMap::new();
        if p > 0 {
            plus.insert(0, one.clone());
        }
        for (j, a) in self.pos_factors.range(..p) {
            let factor: BTreeMap<i64, Elem<S>> =
                [(0, one.clone()), (*j, -a)].into_iter().filter(|(_, c)| !c.is_zero()).collect();
            plus = mul_window(&plus, &factor, p);
        }

        let window = p - depth;
        let body = LaurentSeries {
            sig: sig.clone(),
            coeffs: mul_window(&minus, &plus, window),
            trunc: window,
        };
        body.scale(&self.a0).shift(self.nu)
    }

    /// Largest index `k` with `a_{-k} ≠ 0` (0 if there is none).
    pub fn neg_depth(&self) -> i64 {
        lowest(&self.neg_factors).map_or(0, |j| -j)
    }

    /// Positive factors are known for `0 < j < pos_bound()`.
    pub fn pos_bound(&self) -> i64 {
        self.trunc - self.nu
    }

    pub fn pos(&self, j: i64) -> Elem<S> {
        self.pos_factors
            .get(&j)
            .cloned()
            .unwrap_or_else(|| Elem::zero(&self.sig))
    }

    pub fn neg(&self, j: i64) -> Elem<S> {
        self.neg_factors
            .get(&j)
            .cloned()
            .unwrap_or_else(|| Elem::zero(&self.sig))
    }

    /// Agreement with another factorization on the indices both determine.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let bound = self.pos_bound().min(other.pos_bound());
        self.nu == other.nu
            && self.a0 == other.a0
            && self.neg_factors == other.neg_factors
            && self.pos_factors.range(..bound).eq(other.pos_factors.range(..bound))
    }
}

impl LaurentSeries<GaussRat> {
    pub fn to_float(&self) -> LaurentSeries<num_complex::Complex64> {
        LaurentSeries {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.to_float())).collect(),
            trunc: self.trunc,
        }
    }
}

fn fmt_power(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

impl<S: Scalar> fmt::Display for LaurentSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.coeffs {
            let body = c.to_string();
            let compound = c.terms().count() > 1 || body.contains("*i") || body[1..].contains(['+', '-']);
            let piece = if *e == 0 {
                body
            } else if c.is_one() {
                fmt_power("x", *e)
            } else if *c == -Elem::one(&self.sig) {
                format!("-{}", fmt_power("x", *e))
            } else if compound {
                format!("({body})*{}", fmt_power("x", *e))
            } else {
                format!("{body}*{}", fmt_power("x", *e))
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
        write!(f, "+O(x^{})", self.trunc)
    }
}

impl<S: Scalar> fmt::Display for CanonicalFactorization<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nu = {}", self.nu)?;
        writeln!(f, "a0 = {}", self.a0)?;
        for (j, a) in self.neg_factors.iter().rev() {
            writeln!(f, "a[{j}] = {a}")?;
        }
        for (j, a) in &self.pos_factors {
            writeln!(f, "a[{j}] = {a}")?;
        }
        write!(f, "positive factors known for j < {}", self.pos_bound())
    }
}
