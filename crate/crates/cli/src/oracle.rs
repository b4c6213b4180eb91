//! Brute-force reference computations and deterministic samplers used by
//! `verify-paper`.

use rand::seq::SliceRandom;
use rand::Rng;

use lexdepth_core::{LexSpec, Monomial, MonomialIdeal2};

/// Standard monomials of an `m`-primary ideal given by raw generators,
/// counted on the bounding box `[0, x-degree) × [0, y-degree)`.
pub fn grid_colength(gens: &[(u32, u32)]) -> Option<u64> {
    let xa = gens.iter().filter(|g| g.1 == 0).map(|g| g.0).min()?;
    let yb = gens.iter().filter(|g| g.0 == 0).map(|g| g.1).min()?;
    let mut count = 0;
    for a in 0..xa {
        for b in 0..yb {
            if !gens.iter().any(|&(p, q)| p <= a && q <= b) {
                count += 1;
            }
        }
    }
    Some(count)
}

/// Random `m`-primary generator list with exponents `≤ max_exp`.
pub fn random_m_primary<R: Rng>(rng: &mut R, max_exp: u32, extra: usize) -> Vec<(u32, u32)> {
    let mut gens = vec![(rng.gen_range(1..=max_exp), 0), (0, rng.gen_range(1..=max_exp))];
    for _ in 0..rng.gen_range(0..=extra) {
        let g = (rng.gen_range(0..=max_exp), rng.gen_range(0..=max_exp));
        if g != (0, 0) {
            gens.push(g);
        }
    }
    gens
}

pub fn ideal_of(gens: &[(u32, u32)]) -> MonomialIdeal2 {
    MonomialIdeal2::normalize(gens.iter().map(|&(a, b)| Monomial::new(a, b)))
}

/// `count` specs drawn with replacement from `family`.
pub fn sample_specs<R: Rng>(rng: &mut R, family: &[LexSpec], count: usize) -> Vec<LexSpec> {
    (0..count).map(|_| family.choose(rng).expect("nonempty family").clone()).collect()
}
