//! The Contou-Carrère symbol and its trivial-algebra specialization, the tame symbol.
//!
//! For canonical factorizations `f = a₀ x^{ν_f} ∏(1 - a_j x^j)` and
//! `g = b₀ x^{ν_g} ∏(1 - b_k x^k)`:
//!
//! ```text
//!            (-1)^{ν_f ν_g} a₀^{ν_g} ∏_{j,k≥1} (1 - a_j^{k/d} b_{-k}^{j/d})^d
//! ⟨f, g⟩ = ------------------------------------------------------------------
//!                      b₀^{ν_f}  ∏_{j,k≥1} (1 - a_{-j}^{k/d} b_k^{j/d})^d
//! ```
//!
//! with `d = gcd(j, k)`. Only finitely many factors differ from 1: `b_{-k}` is
//! nilpotent, so its `j/d`-th power vanishes once `j/d ≥ N`, i.e. the numerator
//! only needs `j ≤ (N-1)·k` (and symmetrically for the denominator).

use num_integer::Integer;

use crate::algebra::{check_same, Elem};
use crate::error::{Error, Result};
use crate::laurent::{CanonicalFactorization, LaurentSeries};
use crate::scalar::Scalar;

/// A value of the symbol: a unit of `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolValue<S: Scalar> {
    pub value: Elem<S>,
}

impl<S: Scalar> std::fmt::Display for SymbolValue<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.value.fmt(f)
    }
}

/// Product over one side of the formula:
/// `∏_{k ∈ supp(nil)} ∏_{j=1}^{(N-1)k} (1 - full_j^{k/d} nil_{-k}^{j/d})^d`.
///
/// `full` supplies the factors with positive index, `nil` the nilpotent ones.
fn side_product<S: Scalar>(
    full: &CanonicalFactorization<S>,
    nil: &CanonicalFactorization<S>,
    nilpotency: i64,
) -> Result<Elem<S>> {
    let sig = &full.sig;
    let one = Elem::one(sig);
    let mut acc = one.clone();
    for (&neg_index, b) in &nil.neg_factors {
        let k = -neg_index;
        let j_max = (nilpotency - 1) * k;
        if j_max >= full.pos_bound() {
            return Err(Error::InsufficientTruncation {
                needed: full.nu + j_max + 1,
                have: full.trunc,
            });
        }
        for (&j, a) in full.pos_factors.range(1..=j_max) {
            let d = j.gcd(&k);
            let term = &a.ipow(k / d)? * &b.ipow(j / d)?;
            if term.is_zero() {
                continue;
            }
            acc = &acc * &(&one - &term).ipow(d)?;
        }
    }
    Ok(acc)
}

/// Evaluates the symbol from two canonical factorizations.
pub fn cc_symbol<S: Scalar>(
    f: &CanonicalFactorization<S>,
    g: &CanonicalFactorization<S>,
) -> Result<SymbolValue<S>> {
    check_same(&f.sig, &g.sig)?;
    let n = f.sig.nilpotency() as i64;
    let numerator = side_product(f, g, n)?;
    let denominator = side_product(g, f, n)?;

    let sign = if (f.nu * g.nu) % 2 == 0 { 1 } else { -1 };
    let top = &f.a0.ipow(g.nu)? * &numerator;
    let bottom = &g.a0.ipow(f.nu)? * &denominator;
    let value = (&top * &bottom.invert()?).scale(&S::from_i64(sign));
    Ok(SymbolValue { value })
}

/// Factorizes both series and evaluates the symbol.
pub fn cc_symbol_series<S: Scalar>(
    f: &LaurentSeries<S>,
    g: &LaurentSeries<S>,
) -> Result<SymbolValue<S>> {
    check_same(f.signature(), g.signature())?;
    cc_symbol(&f.factorize()?, &g.factorize()?)
}

/// `(-1)^{ν(f)ν(g)} f^{ν(g)} / g^{ν(f)}` at the expansion point, computed from
/// the leading coefficients; only defined over `A = ℂ`.
pub fn tame_symbol<S: Scalar>(f: &LaurentSeries<S>, g: &LaurentSeries<S>) -> Result<S> {
    check_same(f.signature(), g.signature())?;
    let sig = f.signature();
    if !sig.is_trivial() {
        return Err(Error::NontrivialAlgebra(sig.degree()));
    }
    let (nf, ng) = (f.valuation()?, g.valuation()?);
    let lf = f.coeff(nf).reduce();
    let lg = g.coeff(ng).reduce();
    let value = scalar_ipow(&lf, ng) / scalar_ipow(&lg, nf);
    Ok(if (nf * ng) % 2 == 0 { value } else { -value })
}

fn scalar_ipow<S: Scalar>(z: &S, n: i64) -> S {
    let base = if n < 0 { S::one() / z.clone() } else { z.clone() };
    (0..n.unsigned_abs()).fold(S::one(), |acc, _| acc * base.clone())
}

/// `⟨f, 1 - f⟩`, which the Steinberg property says is 1.
pub fn steinberg_value<S: Scalar>(f: &LaurentSeries<S>) -> Result<SymbolValue<S>> {
    let one = LaurentSeries::one(f.signature(), f.trunc_order());
    let g = one.try_sub(f)?;
    if !g.is_invertible() {
        return Err(Error::NotInvertible);
    }
    cc_symbol_series(f, &g)
}

/// `⟨f, c·f⟩` for a unit constant `c`. Evaluated for inspection; the
/// identity that holds in general is `⟨f, -f⟩ = 1`.
pub fn scaled_pair_value<S: Scalar>(f: &LaurentSeries<S>, c: &Elem<S>) -> Result<SymbolValue<S>> {
    if !c.is_unit() {
        return Err(Error::NotUnit(c.to_string()));
    }
    cc_symbol_series(f, &f.scale(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ExactElem, Signature};
    use crate::scalar::{gauss_frac, gauss_int, GaussRat};
    use std::sync::Arc;

    type Series = LaurentSeries<GaussRat>;

    fn k(sig: &Arc<Signature>, n: i64) -> ExactElem {
        Elem::from_i64(sig, n)
    }

    fn poly(sig: &Arc<Signature>, terms: Vec<(i64, ExactElem)>, t: i64) -> Series {
        Series::from_terms(sig, terms, t).unwrap()
    }

    #[test]
    fn trivial_algebra_examples() {
        let s = Signature::trivial();
        let x = Series::x(&s, 8);
        assert_eq!(cc_symbol_series(&x, &x).unwrap().value, k(&s, -1));

        let one_minus_x = poly(&s, vec![(0, k(&s, 1)), (1, k(&s, -1))], 8);
        assert!(cc_symbol_series(&x, &one_minus_x).unwrap().value.is_one());

        let c = Series::constant(&s, k(&s, 5), 8);
        let v = cc_symbol_series(&x, &c).unwrap().value;
        assert_eq!(v.reduce(), gauss_frac(1, 5));

        let two = Series::constant(&s, k(&s, 2), 8);
        let three = Series::constant(&s, k(&s, 3), 8);
        assert!(cc_symbol_series(&two, &three).unwrap().value.is_one());
    }

    #[test]
    fn dual_numbers_example() {
        let s = Signature::new(&["eps"], 2).unwrap();
        let eps: ExactElem = Elem::generator(&s, "eps").unwrap();
        let f = poly(&s, vec![(0, k(&s, 1)), (-1, -eps.clone())], 8);
        let g = poly(&s, vec![(0, k(&s, 1)), (1, k(&s, -1))], 8);
        let v = cc_symbol_series(&f, &g).unwrap();
        assert_eq!(v.to_string(), "1+eps");
        // single denominator factor (1 - eps)
        assert!((&v.value * &(&k(&s, 1) - &eps)).is_one());
    }

    #[test]
    fn series_matches_factorization_pipeline() {
        let s = Signature::new(&["eps"], 2).unwrap();
        let eps: ExactElem = Elem::generator(&s, "eps").unwrap();
        let f = poly(&s, vec![(1, k(&s, 1)), (0, eps)], 10);
        let g = poly(&s, vec![(0, k(&s, 1)), (1, k(&s, -1))], 10);
        let direct = cc_symbol(&f.factorize().unwrap(), &g.factorize().unwrap()).unwrap();
        assert_eq!(cc_symbol_series(&f, &g).unwrap(), direct);
    }

    #[test]
    fn tame_examples() {
        let s = Signature::trivial();
        let x2 = Series::monomial(&s, k(&s, 1), 2, 8);
        let x3 = Series::monomial(&s, k(&s, 1), 3, 8);
        assert_eq!(tame_symbol(&x2, &x3).unwrap(), gauss_int(1));
        let x = Series::x(&s, 8);
        let two = Series::constant(&s, k(&s, 2), 8);
        assert_eq!(tame_symbol(&x, &two).unwrap(), gauss_frac(1, 2));
        assert_eq!(tame_symbol(&x, &x).unwrap(), gauss_int(-1));

        let s2 = Signature::new(&["eps"], 2).unwrap();
        let y = Series::x(&s2, 8);
        assert_eq!(tame_symbol(&y, &y), Err(Error::NontrivialAlgebra(2)));
    }

    #[test]
    fn steinberg_examples() {
        let s = Signature::trivial();
        assert!(steinberg_value(&Series::x(&s, 8)).unwrap().value.is_one());
        let two = Series::constant(&s, k(&s, 2), 8);
        assert!(steinberg_value(&two).unwrap().value.is_one());

        let s2 = Signature::new(&["eps"], 2).unwrap();
        let eps: ExactElem = Elem::generator(&s2, "eps").unwrap();
        let f = poly(&s2, vec![(1, k(&s2, 1)), (0, eps)], 10);
        assert!(steinberg_value(&f).unwrap().value.is_one());

        let one = Series::constant(&s, k(&s, 1), 8);
        assert_eq!(steinberg_value(&one), Err(Error::NotInvertible));
    }

    #[test]
    fn scaled_pair_matches_tame_arithmetic() {
        // d(x, c x) = (-1) · 1 / c
        let s = Signature::trivial();
        let x = Series::x(&s, 8);
        let v = scaled_pair_value(&x, &k(&s, 3)).unwrap();
        assert_eq!(v.value.reduce(), gauss_frac(-1, 3));
        let v = scaled_pair_value(&x, &k(&s, -1)).unwrap();
        assert!(v.value.is_one());
    }

    #[test]
    fn insufficient_truncation_detected() {
        let s = Signature::new(&["eps"], 3).unwrap();
        let eps: ExactElem = Elem::generator(&s, "eps").unwrap();
        // g has b_{-2}; f must know a_j for j ≤ 4
        let g = poly(&s, vec![(0, k(&s, 1)), (-2, eps)], 10);
        let f = poly(&s, vec![(0, k(&s, 1)), (1, k(&s, 1))], 3);
        assert!(matches!(
            cc_symbol_series(&f, &g),
            Err(Error::InsufficientTruncation { .. })
        ));
        let f = poly(&s, vec![(0, k(&s, 1)), (1, k(&s, 1))], 5);
        assert!(cc_symbol_series(&f, &g).is_ok());
    }
}
