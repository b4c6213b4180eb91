mod common;

use common::*;
use lexdepth_core::hilbert::{self, fiber_numerator, HilbertFit};
use lexdepth_core::{Monomial, MonomialIdeal2};
use proptest::prelude::*;

/// `λ(R/I^n)` by grid count on the bounding box of `I^n`.
fn oracle_h(gens: &[Exp], n: u32) -> u64 {
    let xa = gens.iter().filter(|g| g.1 == 0).map(|g| g.0).min().unwrap() * n;
    let yb = gens.iter().filter(|g| g.0 == 0).map(|g| g.1).min().unwrap() * n;
    let mut count = 0;
    for a in 0..xa {
        for b in 0..yb {
            if !member_power(gens, n, (a, b)) {
                count += 1;
            }
        }
    }
    count
}

fn trimmed(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hilbert_function_matches_grid(gens in m_primary_gens(5, 3)) {
        let i = ideal_of(&gens);
        let h = hilbert::hilbert_sequence(&i, 3).unwrap();
        for n in 1..=3u32 {
            prop_assert_eq!(h[n as usize - 1], oracle_h(&gens, n));
        }
    }

    #[test]
    fn fit_agrees_with_newton_and_northcott(gens in m_primary_gens(12, 4)) {
        let i = ideal_of(&gens);
        let s = hilbert::summarize(&i, None).unwrap();
        prop_assert_eq!(s.e0, hilbert::newton_e0(&i).unwrap() as i64);
        prop_assert!(s.e1 >= s.e0 - s.colength() as i64);
        let fit = s.fit();
        for n in fit.n_stab..=s.horizon {
            prop_assert_eq!(fit.eval(n), s.h[n as usize - 1] as i64);
        }
        // the fit from the raw sequence is the same polynomial
        let refit = hilbert::fit_coefficients(&s.h).unwrap();
        prop_assert_eq!((refit.e0, refit.e1, refit.e2), (s.e0, s.e1, s.e2));
    }

    #[test]
    fn lex_generator_counts(spec in lex_spec(6, 9), n_max in 4u32..=8) {
        prop_assume!(spec.k() >= 1);
        let i = spec.to_ideal();
        let mu = hilbert::mu_sequence(&i, n_max);
        for n in 1..=n_max {
            prop_assert_eq!(mu[n as usize - 1], u64::from(n * spec.k() + 1));
        }
        let expected = trimmed(vec![1, i64::from(spec.k()) - 1]);
        prop_assert_eq!(fiber_numerator(&mu, 2), Some(expected));
    }

    #[test]
    fn spread_ignores_common_factor(gens in m_primary_gens(8, 3), m in 1u32..=3, c in 0u32..=2) {
        let l = ideal_of(&gens);
        let i = l.shift(Monomial::new(m, c));
        prop_assert_eq!(hilbert::analytic_spread(&i).unwrap(), hilbert::analytic_spread(&l).unwrap());
        prop_assert_eq!(hilbert::mu_sequence(&i, 5), hilbert::mu_sequence(&l, 5));
    }
}

#[test]
fn fixtures() {
    let l = ideal_of(&[(2, 0), (1, 1), (0, 3)]);
    assert_eq!(hilbert::hilbert_sequence(&l, 3).unwrap(), [4, 13, 27]);
    let s = hilbert::summarize(&l, None).unwrap();
    assert_eq!((s.e0, s.e1, s.e2), (5, 1, 0));
    let l = ideal_of(&[(3, 0), (2, 1), (1, 2), (0, 6)]);
    let s = hilbert::summarize(&l, None).unwrap();
    assert_eq!((s.e0, s.e1), (12, 3));
    for d in 1..=5u32 {
        let md = MonomialIdeal2::maximal().power(d);
        let s = hilbert::summarize(&md, None).unwrap();
        let d = i64::from(d);
        assert_eq!((s.e0, s.e1, s.e2), (d * d, d * (d - 1) / 2, 0));
        assert_eq!(s.fit(), HilbertFit { e0: d * d, e1: d * (d - 1) / 2, e2: 0, n_stab: s.n_stab });
    }
}
