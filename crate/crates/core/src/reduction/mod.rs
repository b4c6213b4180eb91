//! Monte-Carlo test of `r_J(I) ≤ 1` for random two-generated `J ⊆ I`.
//!
//! A pair `f, g` is drawn as random `F_p`-combinations of the minimal
//! generators of an `m`-primary monomial ideal `I`. Lengths are computed in
//! `K[[x, y]]` through the truncations `R/(J + M^T)`: once `dim` stops
//! growing from `T` to `T + 1`, Nakayama gives `M^T ⊆ J` and the value is
//! exact. `J` is a reduction iff `λ(R/J) = e0(I)`.

pub mod field;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::ReductionError;
use crate::hilbert;
use crate::staircase::{Monomial, MonomialIdeal2};
use field::{EchelonBasis, PrimeField};

pub const DEFAULT_PRIME: u64 = 2_147_483_647;
pub const ALT_PRIME: u64 = 998_244_353;
/// Draws per trial before giving up on a full-rank coefficient matrix.
const MAX_DRAWS: u32 = 32;

/// Sparse polynomial over `F_p`, terms keyed by exponent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, u64>,
}

impl Poly {
    pub fn from_terms<I: IntoIterator<Item = (Monomial, u64)>>(field: PrimeField, terms: I) -> Self {
        let mut poly = Poly::default();
        for (m, c) in terms {
            let e = poly.terms.entry(m).or_insert(0);
            *e = field.add(*e, c % field.modulus());
        }
        poly.terms.retain(|_, c| *c != 0);
        poly
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, u64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least total degree of a term.
    pub fn ord(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn times_monomial(&self, u: Monomial) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.try_mul(u).expect("exponent overflow"), *c)).collect() }
    }

    /// Every term lies in `ideal`.
    pub fn lies_in(&self, ideal: &MonomialIdeal2) -> bool {
        self.terms.keys().all(|&m| ideal.contains(m))
    }
}

/// Monomials of total degree `< T`, ordered by degree and then
/// lexicographically with `x > y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationSpace {
    pub degree_bound: u64,
}

impl TruncationSpace {
    pub fn new(degree_bound: u64) -> Self {
        TruncationSpace { degree_bound }
    }

    /// Number of monomials of degree `< t`: `C(t+1, 2)`.
    pub fn dim_below(t: u64) -> usize {
        (t * (t + 1) / 2) as usize
    }

    pub fn dim(&self) -> usize {
        Self::dim_below(self.degree_bound)
    }

    pub fn index(&self, m: Monomial) -> Option<usize> {
        let s = m.degree();
        (s < self.degree_bound).then(|| Self::dim_below(s) + m.b as usize)
    }

    pub fn basis(&self) -> impl Iterator<Item = Monomial> {
        (0..self.degree_bound).flat_map(|s| (0..=s).map(move |j| Monomial::new((s - j) as u32, j as u32)))
    }

    /// Coordinates of `p` modulo `M^degree_bound`.
    pub fn vector(&self, p: &Poly) -> Vec<u64> {
        let mut v = vec![0; self.dim()];
        for (m, c) in p.terms() {
            if let Some(i) = self.index(m) {
                v[i] = c;
            }
        }
        v
    }

    /// Echelon basis of `(gens) + M^T` modulo `M^T`.
    pub fn span_of_ideal(&self, field: PrimeField, gens: &[Poly]) -> EchelonBasis {
        let mut basis = EchelonBasis::new(field, self.dim());
        let mut jobs: Vec<(u64, &Poly)> = gens.iter().filter_map(|g| g.ord().map(|o| (o, g))).collect();
        jobs.sort_by_key(|(o, _)| *o);
        for (o, g) in jobs {
            if o >= self.degree_bound {
                continue;
            }
            for u in TruncationSpace::new(self.degree_bound - o).basis() {
                basis.insert(self.vector(&g.times_monomial(u)));
            }
        }
        basis
    }
}

/// `λ(R/J)`, or `ExceedsBound` once it is known to be larger than the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Colength {
    Finite(u64),
    ExceedsBound,
}

/// First `T ≥ start` with `dim(T) = dim(T+1)` for the ideal generated by
/// `gens`, with `dim(T) = λ(R/(gens + M^T))`. Gives up when `dim` passes
/// `bound`.
fn plateau(field: PrimeField, gens: &[Poly], bound: u64) -> Option<(u64, u64, EchelonBasis, TruncationSpace)> {
    let start = gens.iter().filter_map(Poly::ord).min()?;
    // dim strictly grows until the plateau and dim(start) ≥ start, so the
    // plateau (if any within the bound) sits below start + bound + 1
    let cap = start + bound + 2;
    let mut top = (start + 8).min(cap);
    loop {
        let space = TruncationSpace::new(top);
        let basis = space.span_of_ideal(field, gens);
        let dim = |t: u64| (TruncationSpace::dim_below(t) - basis.prefix_rank(TruncationSpace::dim_below(t))) as u64;
        let mut prev = dim(start);
        for t in start..top {
            if prev > bound {
                return None;
            }
            let next = dim(t + 1);
            if next == prev {
                return Some((t, prev, basis, space));
            }
            prev = next;
        }
        if top >= cap {
            return None;
        }
        top = (top * 2).min(cap);
    }
}

/// Verdict of the sampled `r_J(I) ≤ 1` test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RVerdict {
    Yes,
    No,
    Inconclusive,
}

impl RVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            RVerdict::Yes => "yes",
            RVerdict::No => "no",
            RVerdict::Inconclusive => "inconclusive",
        }
    }
}

impl std::fmt::Display for RVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `J = (f, g)` with `f, g` combinations of the generators of `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericPair {
    pub field: PrimeField,
    pub seed: u64,
    /// Row `r` holds the coefficients of the `r`-th element on the canonical
    /// generators of `I`; empty when the pair was built from polynomials.
    pub coeffs: [Vec<u64>; 2],
    pub f: Poly,
    pub g: Poly,
}

impl GenericPair {
    pub fn from_coefficients(ideal: &MonomialIdeal2, field: PrimeField, seed: u64, coeffs: [Vec<u64>; 2]) -> Self {
        let combine = |row: &[u64]| Poly::from_terms(field, ideal.gens().iter().copied().zip(row.iter().copied()));
        let f = combine(&coeffs[0]);
        let g = combine(&coeffs[1]);
        GenericPair { field, seed, coeffs, f, g }
    }

    /// A pair given directly by two polynomials.
    pub fn from_polys(field: PrimeField, f: Poly, g: Poly) -> Self {
        GenericPair { field, seed: 0, coeffs: [Vec::new(), Vec::new()], f, g }
    }

    /// Draws uniformly random nonzero coefficients until the `2 × μ(I)`
    /// matrix has rank 2.
    pub fn sample<R: Rng>(
        ideal: &MonomialIdeal2,
        field: PrimeField,
        seed: u64,
        rng: &mut R,
    ) -> Result<Self, ReductionError> {
        let mu = ideal.mu();
        let p = field.modulus();
        for _ in 0..MAX_DRAWS {
            let rows: [Vec<u64>; 2] = std::array::from_fn(|_| (0..mu).map(|_| rng.gen_range(1..p)).collect());
            if mu >= 2 && field::rank(field, &rows) == 2 {
                return Ok(Self::from_coefficients(ideal, field, seed, rows));
            }
        }
        Err(ReductionError::Degenerate(MAX_DRAWS))
    }

    pub fn gens(&self) -> [Poly; 2] {
        [self.f.clone(), self.g.clone()]
    }
}

/// `λ(R/J)` in `K[[x, y]]`, abandoned once it exceeds `e0_bound`.
pub fn pair_colength(pair: &GenericPair, e0_bound: u64) -> Colength {
    match plateau(pair.field, &pair.gens(), e0_bound) {
        Some((_, dim, _, _)) => Colength::Finite(dim),
        None => Colength::ExceedsBound,
    }
}

/// `J` is a reduction of the `m`-primary ideal `I` iff `λ(R/J) = e0(I)`.
pub fn is_reduction(pair: &GenericPair, ideal: &MonomialIdeal2) -> Result<bool, ReductionError> {
    let e0 = hilbert::newton_e0(ideal).map_err(|_| ReductionError::NotMPrimary)?;
    Ok(pair_colength(pair, e0) == Colength::Finite(e0))
}

/// Decides `I^{m+1} ⊆ J·I^m` (hence equality).
///
/// By Nakayama this holds iff `J·I^m + M·I^{m+1} = I^{m+1}`, i.e. iff the
/// products `f·u, g·u` (`u` a generator of `I^m`) span
/// `I^{m+1}/M·I^{m+1}`, whose basis is the minimal generators of `I^{m+1}`.
pub fn power_containment(ideal: &MonomialIdeal2, pair: &GenericPair, m: u32) -> bool {
    let lower = ideal.power(m);
    let upper = ideal.power(m + 1);
    if !pair.f.lies_in(ideal) || !pair.g.lies_in(ideal) {
        return false;
    }
    let index: BTreeMap<Monomial, usize> = upper.gens().iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let rows: Vec<Vec<u64>> = [&pair.f, &pair.g]
        .iter()
        .flat_map(|h| lower.gens().iter().map(move |&u| (h, u)))
        .map(|(h, u)| {
            let mut row = vec![0; index.len()];
            for (t, c) in h.terms() {
                if let Some(&i) = index.get(&t.try_mul(u).expect("exponent overflow")) {
                    row[i] = c;
                }
            }
            row
        })
        .collect();
    field::rank(pair.field, &rows) == upper.mu()
}

/// [`power_containment`] computed in the truncation `R/M^T` with `T` from
/// the plateau of `J·I^m`. `e0` bounds `λ(R/J)`.
pub fn power_containment_truncated(
    ideal: &MonomialIdeal2,
    pair: &GenericPair,
    m: u32,
    e0: u64,
) -> Result<bool, ReductionError> {
    let lower = ideal.power(m);
    let upper = ideal.power(m + 1);
    let products: Vec<Poly> =
        [&pair.f, &pair.g].iter().flat_map(|h| lower.gens().iter().map(move |&u| h.times_monomial(u))).collect();
    let m64 = u64::from(m);
    // λ(R/J·I^m) ≤ λ(R/J^{m+1}) = e0·C(m+2, 2)
    let bound = e0 * (m64 + 2) * (m64 + 1) / 2;
    let (t, _, basis, space) = plateau(pair.field, &products, bound).ok_or(ReductionError::NoPlateau { m, bound })?;
    Ok(upper.gens().iter().all(|&w| {
        if w.degree() >= t {
            return true;
        }
        let v = space.vector(&Poly::from_terms(pair.field, [(w, 1)]));
        basis.contains_prefix(v, TruncationSpace::dim_below(t))
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub coeffs: [Vec<u64>; 2],
    /// `None` when `λ(R/J) > e0(I)`.
    pub colength: Option<u64>,
    pub is_reduction: bool,
    pub i2_eq_ji: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub r_leq_1: RVerdict,
    pub prime: u64,
    pub seed: u64,
    pub pairs: Vec<PairReport>,
}

/// Samples `trials` pairs in the `m`-primary ideal `I`. `yes` if some
/// sampled reduction satisfies `I² = JI`, `no` if reductions were found and
/// none does, `inconclusive` if no reduction was found.
pub fn monte_carlo_r_leq_1(
    ideal: &MonomialIdeal2,
    trials: u32,
    prime: u64,
    seed: u64,
) -> Result<ReductionReport, ReductionError> {
    if trials == 0 {
        return Err(ReductionError::NoTrials);
    }
    let field = PrimeField::new(prime)?;
    let e0 = hilbert::newton_e0(ideal).map_err(|_| ReductionError::NotMPrimary)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(trials as usize);
    for _ in 0..trials {
        let pair = GenericPair::sample(ideal, field, seed, &mut rng)?;
        let colength = match pair_colength(&pair, e0) {
            Colength::Finite(c) => Some(c),
            Colength::ExceedsBound => None,
        };
        let is_reduction = colength == Some(e0);
        let i2_eq_ji = is_reduction && power_containment(ideal, &pair, 1);
        pairs.push(PairReport { coeffs: pair.coeffs.clone(), colength, is_reduction, i2_eq_ji });
    }
    let r_leq_1 = if pairs.iter().any(|p| p.i2_eq_ji) {
        RVerdict::Yes
    } else if pairs.iter().any(|p| p.is_reduction) {
        RVerdict::No
    } else {
        RVerdict::Inconclusive
    };
    Ok(ReductionReport { r_leq_1, prime, seed, pairs })
}
