#![allow(dead_code)]

use std::sync::Arc;

use ccsym::scalar::{gauss, rat};
use ccsym::{ExactElem, GaussRat, LaurentSeries, Signature};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Series = LaurentSeries<GaussRat>;

pub fn small_gauss(rng: &mut ChaCha8Rng) -> GaussRat {
    let re = rng.gen_range(-3..=3);
    let im = if rng.gen_bool(0.3) { rng.gen_range(-2..=2) } else { 0 };
    let den = if rng.gen_bool(0.2) { 2 } else { 1 };
    gauss(rat(re, den), rat(im, 1))
}

pub fn random_elem(sig: &Arc<Signature>, rng: &mut ChaCha8Rng, unit: bool, nilpotent: bool) -> ExactElem {
    let mut coeffs: Vec<GaussRat> = (0..sig.dim()).map(|_| small_gauss(rng)).collect();
    if nilpotent {
        coeffs[0] = gauss(rat(0, 1), rat(0, 1));
    } else if unit {
        while coeffs[0] == gauss(rat(0, 1), rat(0, 1)) {
            coeffs[0] = small_gauss(rng);
        }
    }
    ExactElem::from_coeffs(sig, coeffs).unwrap()
}

/// Random invertible series: unit at `ν`, nilpotent coefficients below it,
/// arbitrary coefficients in a short window above it.
pub fn random_series(sig: &Arc<Signature>, rng: &mut ChaCha8Rng, extra_trunc: i64) -> Series {
    let nu = rng.gen_range(-2..=2);
    let mut terms = vec![(nu, random_elem(sig, rng, true, false))];
    let depth = if sig.is_trivial() { 0 } else { rng.gen_range(0..=2) };
    for e in nu - depth..nu {
        if rng.gen_bool(0.7) {
            terms.push((e, random_elem(sig, rng, false, true)));
        }
    }
    for e in nu + 1..=nu + 3 {
        if rng.gen_bool(0.6) {
            terms.push((e, random_elem(sig, rng, false, false)));
        }
    }
    Series::from_terms(sig, terms, nu + extra_trunc).unwrap()
}

pub fn dual_numbers() -> Arc<Signature> {
    Signature::new(&["eps"], 2).unwrap()
}

pub fn algebras() -> Vec<Arc<Signature>> {
    vec![
        Signature::trivial(),
        Signature::new(&["eps"], 2).unwrap(),
        Signature::new(&["eps"], 3).unwrap(),
        Signature::new(&["eps", "delta"], 2).unwrap(),
    ]
}
