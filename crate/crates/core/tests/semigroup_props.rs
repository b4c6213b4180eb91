use std::collections::BTreeSet;
use std::sync::Arc;

use lexdepth_core::semigroup::{NumericalSemigroup, SemigroupIdeal};
use proptest::prelude::*;

const BOUND: u64 = 200;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All sums of generators up to `BOUND`, by breadth-first closure.
fn subset_sums(gens: &[u64]) -> BTreeSet<u64> {
    let mut seen = BTreeSet::from([0]);
    let mut frontier = vec![0];
    while let Some(n) = frontier.pop() {
        for &g in gens {
            if n + g <= BOUND && seen.insert(n + g) {
                frontier.push(n + g);
            }
        }
    }
    seen
}

fn semigroup_gens() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..=40, 1..=5).prop_filter("gcd 1", |g| g.iter().fold(0, |a, &b| gcd(a, b)) == 1)
}

/// A semigroup and up to `count` ideals over it, generators drawn from S.
fn with_ideals(count: usize) -> impl Strategy<Value = (Arc<NumericalSemigroup>, Vec<SemigroupIdeal>)> {
    prop::collection::vec(2u64..=12, 2..=4)
        .prop_filter("gcd 1", |g| g.iter().fold(0, |a, &b| gcd(a, b)) == 1)
        .prop_flat_map(move |g| {
            let s = NumericalSemigroup::new(&g).unwrap();
            let members: Vec<u64> = (0..40).filter(|&n| s.contains(n)).collect();
            let ideals = prop::collection::vec(prop::collection::vec(prop::sample::select(members), 1..=3), count);
            (Just(s), ideals)
        })
        .prop_map(|(s, raw)| {
            let ideals = raw.iter().map(|g| SemigroupIdeal::new(s.clone(), g).unwrap()).collect();
            (s, ideals)
        })
}

fn elements(i: &SemigroupIdeal, bound: u64) -> BTreeSet<u64> {
    i.elements_below(bound).into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn membership_matches_enumeration(gens in semigroup_gens()) {
        let s = NumericalSemigroup::new(&gens).unwrap();
        let sums = subset_sums(&gens);
        for n in 0..=BOUND {
            prop_assert_eq!(s.contains(n), sums.contains(&n), "n = {}", n);
        }
        if let Some(f) = s.frobenius() {
            prop_assert!(!sums.contains(&f));
        }
    }

    #[test]
    fn products_are_sumsets((_s, ids) in with_ideals(2)) {
        let (i, j) = (&ids[0], &ids[1]);
        let p = i.multiply(j).unwrap();
        let bound = p.conductor() + 10;
        let ei = elements(i, bound);
        let ej = elements(j, bound);
        let sums: BTreeSet<u64> = ei.iter().flat_map(|a| ej.iter().map(move |b| a + b)).filter(|&n| n < bound).collect();
        prop_assert_eq!(elements(&p, bound), sums);
        // minimality
        for &g in p.gens() {
            for &h in p.gens() {
                prop_assert!(g <= h || !p.semigroup().contains(g - h));
            }
        }
    }

    #[test]
    fn multiplication_laws((_s, ids) in with_ideals(3), m in 0u32..=3, n in 0u32..=3) {
        let (i, j, k) = (&ids[0], &ids[1], &ids[2]);
        prop_assert_eq!(i.multiply(j).unwrap(), j.multiply(i).unwrap());
        prop_assert_eq!(i.multiply(j).unwrap().multiply(k).unwrap(), i.multiply(&j.multiply(k).unwrap()).unwrap());
        prop_assert_eq!(i.power(m).multiply(&i.power(n)).unwrap(), i.power(m + n));
    }

    #[test]
    fn colon_and_intersection_by_enumeration((s, ids) in with_ideals(2)) {
        let (i, j) = (&ids[0], &ids[1]);
        let c = i.colon(j).unwrap();
        let meet = i.intersect(j).unwrap();
        let bound = i.conductor().max(j.conductor()) + 20;
        for z in 0..bound {
            let in_colon = s.contains(z) && j.gens().iter().all(|&g| i.contains(z + g));
            prop_assert_eq!(c.contains(z), in_colon, "z = {}", z);
            if !c.contains(z) && s.contains(z) {
                prop_assert!(j.gens().iter().any(|&g| !i.contains(z + g)));
            }
            prop_assert_eq!(meet.contains(z), i.contains(z) && j.contains(z));
        }
        prop_assert!(i.includes(&c.multiply(j).unwrap()));
    }

    #[test]
    fn length_is_additive((_s, ids) in with_ideals(3)) {
        let i = &ids[0];
        let j = i.intersect(&ids[1]).unwrap();
        let k = j.intersect(&ids[2]).unwrap();
        prop_assert_eq!(i.length(&k).unwrap(), i.length(&j).unwrap() + j.length(&k).unwrap());
        let bound = k.conductor();
        let count = (0..bound).filter(|&n| i.contains(n) && !k.contains(n)).count() as u64;
        prop_assert_eq!(i.length(&k).unwrap(), count);
    }
}
