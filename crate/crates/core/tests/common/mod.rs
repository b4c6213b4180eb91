//! Brute-force oracles shared by the property suites. None of these call
//! into the library except to build inputs.
#![allow(dead_code)]

use lexdepth_core::{LexSpec, Monomial, MonomialIdeal2};
use proptest::prelude::*;

pub type Exp = (u32, u32);

pub fn mono(e: Exp) -> Monomial {
    Monomial::new(e.0, e.1)
}

pub fn ideal_of(gens: &[Exp]) -> MonomialIdeal2 {
    MonomialIdeal2::normalize(gens.iter().copied().map(mono))
}

pub fn exps(ideal: &MonomialIdeal2) -> Vec<Exp> {
    ideal.gens().iter().map(|m| (m.a, m.b)).collect()
}

/// Some generator divides `w`.
pub fn member(gens: &[Exp], w: Exp) -> bool {
    gens.iter().any(|&(a, b)| a <= w.0 && b <= w.1)
}

/// `w ∈ I^n`, by peeling one generator at a time.
pub fn member_power(gens: &[Exp], n: u32, w: Exp) -> bool {
    if n == 0 {
        return true;
    }
    gens.iter().any(|&(a, b)| a <= w.0 && b <= w.1 && member_power(gens, n - 1, (w.0 - a, w.1 - b)))
}

/// All pairwise products of generator lists.
pub fn product_gens(a: &[Exp], b: &[Exp]) -> Vec<Exp> {
    a.iter().flat_map(|&(p, q)| b.iter().map(move |&(r, s)| (p + r, q + s))).collect()
}

/// `w ∈ I : J`: `w·h ∈ I` for every generator `h` of `J`.
pub fn member_colon(i: &[Exp], j: &[Exp], w: Exp) -> bool {
    j.iter().all(|&(a, b)| member(i, (w.0 + a, w.1 + b)))
}

/// All exponents of total degree `≤ deg`.
pub fn grid(deg: u32) -> impl Iterator<Item = Exp> {
    (0..=deg).flat_map(move |s| (0..=s).map(move |j| (s - j, j)))
}

/// Number of standard monomials of an `m`-primary ideal, counted on its
/// bounding box.
pub fn grid_colength(gens: &[Exp]) -> u64 {
    let xa = gens.iter().filter(|g| g.1 == 0).map(|g| g.0).min().expect("pure x power");
    let yb = gens.iter().filter(|g| g.0 == 0).map(|g| g.1).min().expect("pure y power");
    let mut count = 0;
    for a in 0..xa {
        for b in 0..yb {
            if !member(gens, (a, b)) {
                count += 1;
            }
        }
    }
    count
}

/// Raw generator lists, possibly redundant.
pub fn raw_gens(max_exp: u32, max_len: usize) -> impl Strategy<Value = Vec<Exp>> {
    prop::collection::vec((0..=max_exp, 0..=max_exp), 1..=max_len)
}

/// `m`-primary ideals: pure powers of `x` and `y` plus extra generators.
pub fn m_primary_gens(max_exp: u32, extra: usize) -> impl Strategy<Value = Vec<Exp>> {
    (1..=max_exp, 1..=max_exp, prop::collection::vec((0..=max_exp, 0..=max_exp), 0..=extra)).prop_map(
        |(xa, yb, mut rest)| {
            rest.retain(|&g| g != (0, 0));
            rest.push((xa, 0));
            rest.push((0, yb));
            rest
        },
    )
}

pub fn lex_spec(max_d: u32, max_a: u32) -> impl Strategy<Value = LexSpec> {
    (1..=max_d)
        .prop_flat_map(move |d| (Just(d), prop::sample::subsequence((1..=max_a).collect::<Vec<_>>(), 0..=d as usize)))
        .prop_map(|(d, a)| LexSpec::new(d, a).expect("valid lex spec"))
}

/// Every lex spec with `d ≤ max_d`, `k ≥ 1`, `a_k ≤ max_a`.
pub fn all_lex_specs(max_d: u32, max_a: u32) -> Vec<LexSpec> {
    let mut out = Vec::new();
    for d in 1..=max_d {
        for mask in 1u32..(1 << max_a) {
            let a: Vec<u32> = (1..=max_a).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            if a.len() <= d as usize {
                out.push(LexSpec::new(d, a).unwrap());
            }
        }
    }
    out
}
