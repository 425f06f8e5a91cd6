//! Rational functions on the Riemann sphere with coefficients in `A`.
//!
//! A function is kept in factored form
//!
//! ```text
//! f(x) = c · ∏ (x - r_i)^{m_i} · ∏ (1 + n_l(x) / ρ_l(x))^{p_l}
//! ```
//!
//! where `c` is a unit of `A`, the roots `r_i` are exact Gaussian rationals,
//! each `n_l` is a Laurent polynomial in `x` with nilpotent coefficients and
//! each `ρ_l` is again an exact product of linear factors. The reduction of
//! `f` modulo `m` is `c₀ ∏ (x - r_i)^{m_i}`; the perturbation factors reduce
//! to 1 but may still be singular (at the roots of `ρ_l`, at 0 and at ∞),
//! and those points belong to the support as well.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{check_same, Elem, ExactElem, Signature};
use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;
use crate::scalar::{cmp_gauss, GaussRat, Scalar, ShowScalar};

/// A point of the Riemann sphere with exact finite coordinates.
#[derive(Clone, Debug, PartialEq)]
pub enum SpherePoint {
    Finite(GaussRat),
    Infinity,
}

impl SpherePoint {
    pub fn finite(&self) -> Option<&GaussRat> {
        match self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }
}

impl PartialOrd for SpherePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(match (self, other) {
            (SpherePoint::Finite(a), SpherePoint::Finite(b)) => cmp_gauss(a, b),
            (SpherePoint::Finite(_), SpherePoint::Infinity) => Ordering::Less,
            (SpherePoint::Infinity, SpherePoint::Finite(_)) => Ordering::Greater,
            (SpherePoint::Infinity, SpherePoint::Infinity) => Ordering::Equal,
        })
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Finite(z) => ShowScalar(z).fmt(f),
            SpherePoint::Infinity => f.write_str("inf"),
        }
    }
}

/// `∏ (x - r)^m` over distinct exact roots with nonzero multiplicities,
/// sorted by root.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Divisor {
    factors: Vec<(GaussRat, i64)>,
}

impl Divisor {
    pub fn new<I: IntoIterator<Item = (GaussRat, i64)>>(factors: I) -> Self {
        let mut out: Vec<(GaussRat, i64)> = Vec::new();
        for (r, m) in factors {
            match out.iter_mut().find(|(q, _)| *q == r) {
                Some(entry) => entry.1 += m,
                None => out.push((r, m)),
            }
        }
        out.retain(|(_, m)| *m != 0);
        out.sort_by(|a, b| cmp_gauss(&a.0, &b.0));
        Divisor { factors: out }
    }

    pub fn factors(&self) -> &[(GaussRat, i64)] {
        &self.factors
    }

    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, r: &GaussRat) -> i64 {
        self.factors
            .iter()
            .find(|(q, _)| q == r)
            .map_or(0, |(_, m)| *m)
    }

    fn scaled(&self, e: i64) -> Self {
        Divisor::new(self.factors.iter().map(|(r, m)| (r.clone(), m * e)))
    }

    fn merged(&self, other: &Self) -> Self {
        Divisor::new(self.factors.iter().chain(&other.factors).cloned())
    }

    fn on_root<S: Scalar>(&self, z: &S) -> Option<&GaussRat> {
        self.factors
            .iter()
            .map(|(r, _)| r)
            .find(|r| (S::from_gauss(r) - z.clone()).is_zero())
    }

    fn eval<S: Scalar>(&self, z: &S) -> S {
        self.factors.iter().fold(S::one(), |acc, (r, m)| {
            acc * scalar_pow(&(z.clone() - S::from_gauss(r)), *m)
        })
    }

    /// `Σ m / (z - r)`, the logarithmic derivative.
    fn dlog<S: Scalar>(&self, z: &S) -> S {
        self.factors.iter().fold(S::zero(), |acc, (r, m)| {
            acc + S::from_i64(*m) / (z.clone() - S::from_gauss(r))
        })
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (r, m) in &self.factors {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if r.is_zero() {
                f.write_str("(x)")?;
            } else {
                let neg = -r.clone();
                let shown = ShowScalar(&neg).to_string();
                if shown.starts_with('-') {
                    write!(f, "(x{shown})")?;
                } else if neg.is_simple() {
                    write!(f, "(x+{shown})")?;
                } else {
                    write!(f, "(x+({shown}))")?;
                }
            }
            if *m != 1 {
                write!(f, "^{m}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// `(1 + num(x) / den(x))^power` with nilpotent `num`.
#[derive(Clone, Debug, PartialEq)]
pub struct Perturbation {
    pub num: BTreeMap<i64, ExactElem>,
    pub den: Divisor,
    pub power: i64,
}

impl Perturbation {
    fn ratio<S: Scalar>(&self, sig: &Arc<Signature>, z: &S) -> (Elem<S>, Elem<S>) {
        // q = num/den and q' = (num' - num · den'/den) / den
        let mut num = Elem::zero(sig);
        let mut dnum = Elem::zero(sig);
        for (k, c) in &self.num {
            let c: Elem<S> = c.convert();
            num = &num + &c.scale(&scalar_pow(z, *k));
            if *k != 0 {
                dnum = &dnum + &c.scale(&(S::from_i64(*k) * scalar_pow(z, k - 1)));
            }
        }
        let inv_den = S::one() / self.den.eval(z);
        let q = num.scale(&inv_den);
        let dq = (&dnum - &num.scale(&self.den.dlog(z))).scale(&inv_den);
        (q, dq)
    }

    /// Points where `num/den` may have a pole.
    fn singular_points(&self) -> Vec<SpherePoint> {
        let mut out = Vec::new();
        for (r, m) in self.den.factors() {
            if *m > 0 && !r.is_zero() {
                out.push(SpherePoint::Finite(r.clone()));
            }
        }
        let zero = GaussRat::zero();
        if let Some(&low) = self.num.keys().next() {
            if low - self.den.multiplicity(&zero) < 0 {
                out.push(SpherePoint::Finite(zero));
            }
        }
        if let Some(&high) = self.num.keys().next_back() {
            if high > self.den.degree() {
                out.push(SpherePoint::Infinity);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    sig: Arc<Signature>,
    scale: ExactElem,
    base: Divisor,
    perts: Vec<Perturbation>,
}

fn scalar_pow<S: Scalar>(z: &S, e: i64) -> S {
    let base = if e < 0 { S::one() / z.clone() } else { z.clone() };
    (0..e.unsigned_abs()).fold(S::one(), |acc, _| acc * base.clone())
}

impl RationalFunction {
    pub fn new(
        sig: &Arc<Signature>,
        scale: ExactElem,
        base: Divisor,
        perts: Vec<Perturbation>,
    ) -> Result<Self> {
        check_same(sig, scale.signature())?;
        if !scale.is_unit() {
            return Err(Error::NotUnit(scale.to_string()));
        }
        for p in &perts {
            for c in p.num.values() {
                check_same(sig, c.signature())?;
                if !c.in_max_ideal() {
                    return Err(Error::NotNilpotent(c.to_string()));
                }
            }
        }
        let perts = perts
            .into_iter()
            .filter(|p| p.power != 0 && p.num.values().any(|c| !c.is_zero()))
            .collect();
        Ok(RationalFunction {
            sig: sig.clone(),
            scale,
            base,
            perts,
        })
    }

    pub fn constant(sig: &Arc<Signature>, c: ExactElem) -> Result<Self> {
        Self::new(sig, c, Divisor::default(), Vec::new())
    }

    /// `∏ (x - r)^m` with scale 1.
    pub fn from_roots<I: IntoIterator<Item = (GaussRat, i64)>>(sig: &Arc<Signature>, roots: I) -> Self {
        RationalFunction {
            sig: sig.clone(),
            scale: Elem::one(sig),
            base: Divisor::new(roots),
            perts: Vec::new(),
        }
    }

    /// Multiplies by `(1 + num(x)/den(x))^power`.
    pub fn perturbed(
        &self,
        num: BTreeMap<i64, ExactElem>,
        den: Divisor,
        power: i64,
    ) -> Result<Self> {
        let mut perts = self.perts.clone();
        perts.push(Perturbation { num, den, power });
        Self::new(&self.sig, self.scale.clone(), self.base.clone(), perts)
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn scale(&self) -> &ExactElem {
        &self.scale
    }

    /// Divisor of the reduction in the finite plane.
    pub fn base(&self) -> &Divisor {
        &self.base
    }

    pub fn perturbations(&self) -> &[Perturbation] {
        &self.perts
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.sig, &other.sig)?;
        Ok(RationalFunction {
            sig: self.sig.clone(),
            scale: &self.scale * &other.scale,
            base: self.base.merged(&other.base),
            perts: self.perts.iter().chain(&other.perts).cloned().collect(),
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        Ok(RationalFunction {
            sig: self.sig.clone(),
            scale: self.scale.ipow(e)?,
            base: self.base.scaled(e),
            perts: self
                .perts
                .iter()
                .map(|p| Perturbation {
                    power: p.power * e,
                    ..p.clone()
                })
                .filter(|p| p.power != 0)
                .collect(),
        })
    }

    /// Zeros and poles of this function alone (reduction divisor plus the
    /// singular points of the perturbations), sorted, ∞ last.
    pub fn support(&self) -> Vec<SpherePoint> {
        let mut pts: Vec<SpherePoint> = self
            .base
            .factors()
            .iter()
            .map(|(r, _)| SpherePoint::Finite(r.clone()))
            .collect();
        if self.base.degree() != 0 {
            pts.push(SpherePoint::Infinity);
        }
        for p in &self.perts {
            pts.extend(p.singular_points());
        }
        sort_dedup(pts)
    }

    fn check_off_support<S: Scalar>(&self, z: &S) -> Result<()> {
        if let Some(r) = self.base.on_root(z) {
            return Err(Error::OnSupport(ShowScalar(r).to_string()));
        }
        for p in &self.perts {
            if let Some(r) = p.den.on_root(z) {
                return Err(Error::OnSupport(ShowScalar(r).to_string()));
            }
            if z.is_zero() && p.num.keys().any(|k| *k < 0) {
                return Err(Error::OnSupport("0".into()));
            }
        }
        Ok(())
    }

    /// `f(z)` as an element of `A` over the backend of `z`.
    pub fn eval<S: Scalar>(&self, z: &S) -> Result<Elem<S>> {
        self.check_off_support(z)?;
        let mut value: Elem<S> = self.scale.convert::<S>().scale(&self.base.eval(z));
        for p in &self.perts {
            let (q, _) = p.ratio(&self.sig, z);
            let factor = &Elem::one(&self.sig) + &q;
            value = &value * &factor.ipow(p.power)?;
        }
        Ok(value)
    }

    /// `f'(z) / f(z)`, the coefficient of `df/f = φ(z) dz`.
    pub fn dlog_eval<S: Scalar>(&self, z: &S) -> Result<Elem<S>> {
        self.check_off_support(z)?;
        let mut value: Elem<S> = Elem::constant(&self.sig, self.base.dlog(z));
        for p in &self.perts {
            let (q, dq) = p.ratio(&self.sig, z);
            let inv = (&Elem::one(&self.sig) + &q).invert()?;
            value = &value + &(&dq * &inv).scale(&S::from_i64(p.power));
        }
        Ok(value)
    }

    /// Laurent expansion in the uniformizer `x - s` (finite `s`) or `1/x`
    /// (`s = ∞`), exact below `trunc`.
    pub fn expand_at<S: Scalar>(&self, s: &SpherePoint, trunc: i64) -> Result<LaurentSeries<S>> {
        let mut margin = 4;
        loop {
            let series = self.expand_window::<S>(s, trunc + margin)?;
            if series.trunc_order() >= trunc {
                return Ok(series.truncate(trunc));
            }
            if margin > 4 * (trunc.abs() + 64) {
                return Err(Error::InsufficientTruncation {
                    needed: trunc,
                    have: series.trunc_order(),
                });
            }
            margin *= 2;
        }
    }

    fn expand_window<S: Scalar>(&self, s: &SpherePoint, window: i64) -> Result<LaurentSeries<S>> {
        let sig = &self.sig;
        let mut out = LaurentSeries::constant(sig, self.scale.convert::<S>(), window);
        out = out.try_mul(&divisor_series::<S>(sig, &self.base, s, window)?)?;
        for p in &self.perts {
            let mut num = LaurentSeries::zero(sig, window);
            for (k, c) in &p.num {
                num = num.try_add(&x_power_series::<S>(sig, *k, s, window)?.scale(&c.convert()))?;
            }
            let den = divisor_series::<S>(sig, &p.den, s, window)?;
            let factor = LaurentSeries::one(sig, window).try_add(&num.try_mul(&den.invert()?)?)?;
            out = out.try_mul(&factor.ipow(p.power)?)?;
        }
        Ok(out)
    }
}

/// Sorted, deduplicated support of a pair of functions.
pub fn rf_support(f: &RationalFunction, g: &RationalFunction) -> Result<Vec<SpherePoint>> {
    check_same(&f.sig, &g.sig)?;
    let mut pts = f.support();
    pts.extend(g.support());
    Ok(sort_dedup(pts))
}

fn sort_dedup(mut pts: Vec<SpherePoint>) -> Vec<SpherePoint> {
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    pts.dedup();
    pts
}

/// `(x - r)` in the local uniformizer at `s`.
fn linear_series<S: Scalar>(
    sig: &Arc<Signature>,
    r: &GaussRat,
    s: &SpherePoint,
    window: i64,
) -> Result<LaurentSeries<S>> {
    let one = Elem::<S>::one(sig);
    let terms = match s {
        SpherePoint::Finite(s) => vec![(0, one.scale(&S::from_gauss(&(s.clone() - r.clone())))), (1, one)],
        // x - r = u^{-1} (1 - r u)
        SpherePoint::Infinity => vec![(-1, one.clone()), (0, one.scale(&-S::from_gauss(r)))],
    };
    LaurentSeries::from_terms(sig, terms, window)
}

fn x_power_series<S: Scalar>(
    sig: &Arc<Signature>,
    k: i64,
    s: &SpherePoint,
    window: i64,
) -> Result<LaurentSeries<S>> {
    match s {
        SpherePoint::Infinity => Ok(LaurentSeries::monomial(sig, Elem::one(sig), -k, window)),
        SpherePoint::Finite(z) if z.is_zero() => Ok(LaurentSeries::monomial(sig, Elem::one(sig), k, window)),
        SpherePoint::Finite(_) => linear_series::<S>(sig, &GaussRat::zero(), s, window)?.ipow(k),
    }
}

fn divisor_series<S: Scalar>(
    sig: &Arc<Signature>,
    d: &Divisor,
    s: &SpherePoint,
    window: i64,
) -> Result<LaurentSeries<S>> {
    let mut out = LaurentSeries::one(sig, window);
    for (r, m) in d.factors() {
        out = out.try_mul(&linear_series::<S>(sig, r, s, window)?.ipow(*m)?)?;
    }
    Ok(out)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.scale.is_one() {
            parts.push(format!("({})", self.scale));
        }
        if !self.base.factors().is_empty() {
            parts.push(self.base.to_string());
        }
        for p in &self.perts {
            let num = self
                .num_string(&p.num)
                .unwrap_or_else(|| "0".to_string());
            let body = if p.den.factors().is_empty() {
                format!("(1+{num})")
            } else {
                format!("(1+({num})/({}))", p.den)
            };
            if p.power == 1 {
                parts.push(body);
            } else {
                parts.push(format!("{body}^{}", p.power));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

impl RationalFunction {
    fn num_string(&self, num: &BTreeMap<i64, ExactElem>) -> Option<String> {
        let series = LaurentSeries::from_terms(&self.sig, num.clone(), i64::MAX).ok()?;
        let text = series.to_string();
        Some(text.trim_end_matches(&format!("+O(x^{})", i64::MAX)).to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss_frac, gauss_int};
    use num_complex::Complex64;

    fn dual() -> Arc<Signature> {
        Signature::new(&["eps"], 2).unwrap()
    }

    fn eps(sig: &Arc<Signature>) -> ExactElem {
        Elem::generator(sig, "eps").unwrap()
    }

    /// x + eps = x (1 + eps x^{-1})
    fn x_plus_eps(sig: &Arc<Signature>) -> RationalFunction {
        RationalFunction::from_roots(sig, [(gauss_int(0), 1)])
            .perturbed(BTreeMap::from([(-1, eps(sig))]), Divisor::default(), 1)
            .unwrap()
    }

    fn pt(n: i64, d: i64) -> SpherePoint {
        SpherePoint::Finite(gauss_frac(n, d))
    }

    #[test]
    fn eval_examples() {
        let s = dual();
        let f = x_plus_eps(&s)
            .try_mul(&RationalFunction::from_roots(&s, [(gauss_int(1), -1)]))
            .unwrap();
        assert_eq!(f.eval(&gauss_int(2)).unwrap().to_string(), "2+eps");

        let x = RationalFunction::from_roots(&s, [(gauss_int(0), 1)]);
        assert_eq!(x.eval(&gauss_frac(-1, 2)).unwrap().to_string(), "-1/2");

        let v = x_plus_eps(&s).eval(&gauss_int(1)).unwrap();
        assert_eq!(v.to_string(), "1+eps");
        assert_eq!(v.invert().unwrap().to_string(), "1-eps");

        assert!(matches!(x.eval(&gauss_int(0)), Err(Error::OnSupport(_))));
    }

    #[test]
    fn dlog_examples() {
        let s = dual();
        let x = RationalFunction::from_roots(&s, [(gauss_int(0), 1)]);
        assert_eq!(x.dlog_eval(&gauss_int(2)).unwrap().to_string(), "1/2");
        let f = RationalFunction::from_roots(&s, [(gauss_int(0), 1), (gauss_int(1), -1)]);
        assert_eq!(f.dlog_eval(&gauss_int(2)).unwrap().to_string(), "-1/2");

        // quotient rule oracle: (x+eps)'/(x+eps) at 1 = 1/(1+eps)
        let g = x_plus_eps(&s);
        let expected = (&Elem::one(&s) + &eps(&s)).invert().unwrap();
        assert_eq!(g.dlog_eval(&gauss_int(1)).unwrap(), expected);
        assert_eq!(expected.to_string(), "1-eps");
    }

    #[test]
    fn dlog_matches_finite_differences() {
        let s = dual();
        let f = x_plus_eps(&s)
            .try_mul(&RationalFunction::from_roots(&s, [(gauss_int(1), -2), (gauss_int(3), 1)]))
            .unwrap()
            .perturbed(
                BTreeMap::from([(1, eps(&s).scale(&gauss_frac(1, 3)))]),
                Divisor::new([(gauss_int(2), 1)]),
                -1,
            )
            .unwrap();
        for z in [Complex64::new(0.4, 0.7), Complex64::new(-1.3, 0.2), Complex64::new(2.6, -0.9)] {
            let h = 1e-5;
            let value = f.eval(&z).unwrap();
            let fp = &f.eval(&(z + h)).unwrap() - &f.eval(&(z - h)).unwrap();
            let derivative = fp.scale(&Complex64::new(1.0 / (2.0 * h), 0.0));
            // exact quotient rule in A: (f'/f)
            let numeric = &derivative * &value.invert().unwrap();
            let analytic = f.dlog_eval(&z).unwrap();
            assert!(numeric.max_abs_diff(&analytic) < 1e-6, "{numeric} vs {analytic}");
        }
    }

    #[test]
    fn support_examples() {
        let s = dual();
        let f = RationalFunction::from_roots(&s, [(gauss_int(0), 1), (gauss_int(1), -1)]);
        let g = RationalFunction::from_roots(&s, [(gauss_int(2), 1)]);
        let pts = rf_support(&f, &g).unwrap();
        assert_eq!(pts, vec![pt(0, 1), pt(1, 1), pt(2, 1), SpherePoint::Infinity]);

        let g = RationalFunction::from_roots(&s, [(gauss_int(1), 1)]);
        let pts = rf_support(&x_plus_eps(&s), &g).unwrap();
        assert_eq!(pts, vec![pt(0, 1), pt(1, 1), SpherePoint::Infinity]);

        let deg0 = RationalFunction::from_roots(&s, [(gauss_int(1), 1), (gauss_int(2), -1)])
            .perturbed(BTreeMap::from([(0, eps(&s))]), Divisor::default(), 1)
            .unwrap();
        let pts = rf_support(&deg0, &deg0).unwrap();
        assert_eq!(pts, vec![pt(1, 1), pt(2, 1)]);

        let nilpotent_pole = RationalFunction::constant(&s, Elem::one(&s))
            .unwrap()
            .perturbed(BTreeMap::from([(0, eps(&s))]), Divisor::new([(gauss_int(3), 1)]), 1)
            .unwrap();
        assert_eq!(nilpotent_pole.support(), vec![pt(3, 1)]);
    }

    #[test]
    fn expand_examples() {
        let s = dual();
        let f = RationalFunction::from_roots(&s, [(gauss_int(1), -1)]).pow(1).unwrap();
        // 1/(x-1) = -1/(1-x)
        let neg = RationalFunction::constant(&s, Elem::from_i64(&s, -1)).unwrap();
        let f = f.try_mul(&neg).unwrap();
        let e = f.expand_at::<GaussRat>(&pt(0, 1), 3).unwrap();
        assert_eq!(e.to_string(), "1+x+x^2+O(x^3)");

        let x = RationalFunction::from_roots(&s, [(gauss_int(0), 1)]);
        let e = x.expand_at::<GaussRat>(&SpherePoint::Infinity, 4).unwrap();
        assert_eq!(e.to_string(), "x^-1+O(x^4)");

        let e = x_plus_eps(&s).expand_at::<GaussRat>(&pt(0, 1), 2).unwrap();
        assert_eq!(e.to_string(), "eps+x+O(x^2)");
        assert_eq!(e.valuation(), Ok(1));
    }

    #[test]
    fn degree_zero_divisor() {
        let s = dual();
        let f = x_plus_eps(&s)
            .try_mul(&RationalFunction::from_roots(&s, [(gauss_int(1), -3), (gauss_frac(1, 2), 2)]))
            .unwrap();
        let total: i64 = f
            .support()
            .iter()
            .map(|p| f.expand_at::<GaussRat>(p, 6).unwrap().valuation().unwrap())
            .sum();
        assert_eq!(total, 0);
    }

    #[test]
    fn local_series_approximates_values() {
        let s = dual();
        let f = x_plus_eps(&s)
            .try_mul(&RationalFunction::from_roots(&s, [(gauss_int(2), -1)]))
            .unwrap();
        let h = gauss_frac(1, 10);
        let at = gauss_int(1);
        let exact = f.eval(&(at.clone() + h.clone())).unwrap().to_float();
        let mut last = f64::INFINITY;
        for t in [4, 8, 16] {
            let series = f.expand_at::<GaussRat>(&SpherePoint::Finite(at.clone()), t).unwrap();
            let approx = series.eval_partial(&h).unwrap().to_float();
            let err = approx.max_abs_diff(&exact);
            assert!(err < last);
            last = err;
        }
        assert!(last < 1e-15);
    }
}
