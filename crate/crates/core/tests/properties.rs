mod common;

use ccsym::symbol::{cc_symbol, cc_symbol_series, steinberg_value, tame_symbol};
use ccsym::{Elem, LaurentSeries};
use common::{algebras, random_series, Series};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pick(seed: u64) -> (ChaCha8Rng, std::sync::Arc<ccsym::Signature>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigs = algebras();
    let sig = sigs[rand::Rng::gen_range(&mut rng, 0..sigs.len())].clone();
    (rng, sig)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 48,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn bimultiplicative(seed in any::<u64>()) {
        let (mut rng, sig) = pick(seed);
        let f = random_series(&sig, &mut rng, 18);
        let g = random_series(&sig, &mut rng, 18);
        let h = random_series(&sig, &mut rng, 18);
        let gh = g.try_mul(&h).unwrap();
        let lhs = cc_symbol_series(&f, &gh).unwrap().value;
        let rhs = &cc_symbol_series(&f, &g).unwrap().value * &cc_symbol_series(&f, &h).unwrap().value;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antisymmetric(seed in any::<u64>()) {
        let (mut rng, sig) = pick(seed);
        let f = random_series(&sig, &mut rng, 24);
        let g = random_series(&sig, &mut rng, 24);
        let fg = cc_symbol_series(&f, &g).unwrap().value;
        let gf = cc_symbol_series(&g, &f).unwrap().value;
        prop_assert!((&fg * &gf).is_one());
        let ginv = g.invert().unwrap();
        let f_ginv = cc_symbol_series(&f, &ginv).unwrap().value;
        prop_assert_eq!(f_ginv, gf);
    }

    #[test]
    fn symbol_with_negative_is_trivial(seed in any::<u64>()) {
        let (mut rng, sig) = pick(seed);
        let f = random_series(&sig, &mut rng, 14);
        let v = cc_symbol_series(&f, &f.neg()).unwrap().value;
        prop_assert!(v.is_one());
    }

    #[test]
    fn steinberg(seed in any::<u64>()) {
        let (mut rng, sig) = pick(seed);
        let f = random_series(&sig, &mut rng, 14);
        let one = LaurentSeries::one(&sig, f.trunc_order());
        prop_assume!(one.try_sub(&f).unwrap().is_invertible());
        prop_assert!(steinberg_value(&f).unwrap().value.is_one());
    }

    #[test]
    fn tame_specialization(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sig = ccsym::Signature::trivial();
        let f = random_series(&sig, &mut rng, 10);
        let g = random_series(&sig, &mut rng, 10);
        let cc = cc_symbol_series(&f, &g).unwrap().value;
        prop_assert_eq!(cc.reduce(), tame_symbol(&f, &g).unwrap());
    }

    #[test]
    fn factorization_round_trip(seed in any::<u64>()) {
        let (mut rng, sig) = pick(seed);
        let f = random_series(&sig, &mut rng, 12);
        let fac = f.factorize().unwrap();
        for a in fac.neg_factors.values() {
            prop_assert!(a.in_max_ideal());
            prop_assert!(a.ipow(sig.nilpotency() as i64).unwrap().is_zero());
        }
        let back = fac.reconstruct();
        prop_assert!(back.trunc_order() > fac.nu);
        prop_assert!(back.agrees_with(&f));
        let again = back.factorize().unwrap();
        prop_assert!(again.agrees_with(&fac));
    }

    #[test]
    fn valuation_additive(seed in any::<u64>()) {
        let (mut rng, sig) = pick(seed);
        let f = random_series(&sig, &mut rng, 10);
        let g = random_series(&sig, &mut rng, 10);
        let fg = f.try_mul(&g).unwrap();
        prop_assert_eq!(fg.valuation().unwrap(), f.valuation().unwrap() + g.valuation().unwrap());
    }

    #[test]
    fn truncation_stable(seed in any::<u64>()) {
        let (mut rng, sig) = pick(seed);
        let f = random_series(&sig, &mut rng, 24);
        let g = random_series(&sig, &mut rng, 24);
        let full = cc_symbol(&f.factorize().unwrap(), &g.factorize().unwrap()).unwrap();
        let fs = f.truncate(f.lower_bound().max(f.valuation().unwrap()) + 10);
        let gs = g.truncate(g.lower_bound().max(g.valuation().unwrap()) + 10);
        if let Ok(short) = cc_symbol_series(&fs, &gs) {
            prop_assert_eq!(short, full);
        }
    }
}

#[test]
fn ring_axioms_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for sig in algebras() {
        for _ in 0..20 {
            let a = common::random_elem(&sig, &mut rng, false, false);
            let b = common::random_elem(&sig, &mut rng, false, false);
            let c = common::random_elem(&sig, &mut rng, false, false);
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &b, &b * &a);
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            let u = common::random_elem(&sig, &mut rng, true, false);
            assert!((&u * &u.invert().unwrap()).is_one());
            let n = common::random_elem(&sig, &mut rng, false, true);
            let one = Elem::one(&sig);
            assert_eq!(n.log1m().unwrap().exp().unwrap(), &one - &n);
            // log ∘ exp = id on m: exp(n) = 1 - m with m ∈ m, so log(1 - m) = n
            let m = &one - &n.exp().unwrap();
            assert_eq!(m.log1m().unwrap(), n);
            assert!(n.ipow(sig.nilpotency() as i64).unwrap().is_zero());
        }
    }
}

#[test]
fn round_trip_matrix_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let sig = common::dual_numbers();
    for _ in 0..10 {
        let f: Series = random_series(&sig, &mut rng, 12);
        assert!(f.factorize().unwrap().reconstruct().agrees_with(&f));
    }
}
