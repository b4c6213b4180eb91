//! Monomial ideals of numerical semigroup rings `K[[t^S]]`.
//!
//! An ideal is a set of exponents `E ⊆ S` with `E + S ⊆ E`, stored by its
//! minimal generators. Past `min(E) + F(S) + 1` every integer is in `E`, so
//! all operations enumerate a finite window and are exact.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::SemigroupError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    /// `member[n]` for `n < conductor`; everything from `conductor` on is in.
    member: Vec<bool>,
    conductor: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl NumericalSemigroup {
    pub fn new(generators: &[u64]) -> Result<Arc<Self>, SemigroupError> {
        if generators.is_empty() || generators.contains(&0) {
            return Err(SemigroupError::EmptyGenerators);
        }
        let mut generators = generators.to_vec();
        generators.sort_unstable();
        generators.dedup();
        let g = generators.iter().fold(0, |acc, &x| gcd(acc, x));
        if g != 1 {
            return Err(SemigroupError::NotNumerical(g));
        }
        // grow the table until a run of min(gens) consecutive members
        let step = generators[0] as usize;
        let mut member = vec![true];
        let mut run = 1usize;
        while run < step {
            let n = member.len();
            let hit = generators.iter().any(|&x| (x as usize) <= n && member[n - x as usize]);
            run = if hit { run + 1 } else { 0 };
            member.push(hit);
        }
        let conductor = member.len() - run;
        member.truncate(conductor);
        Ok(Arc::new(NumericalSemigroup { generators, member, conductor: conductor as u64 }))
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.conductor || self.member[n as usize]
    }

    /// Largest gap; `None` for `S = N`.
    pub fn frobenius(&self) -> Option<u64> {
        self.conductor.checked_sub(1)
    }

    /// `F(S) + 1`.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn gaps(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.conductor).filter(|&n| !self.contains(n))
    }

    /// Minimal generators of the semigroup.
    pub fn minimal_generators(&self) -> Vec<u64> {
        let mut kept: Vec<u64> = Vec::new();
        for &g in &self.generators {
            if !kept.iter().any(|&k| g >= k && self.contains(g - k)) {
                kept.push(g);
            }
        }
        kept
    }
}

/// Exponent ideal `(t^{g_1}, ..., t^{g_r})` of `K[[t^S]]`.
#[derive(Debug, Clone)]
pub struct SemigroupIdeal {
    semigroup: Arc<NumericalSemigroup>,
    gens: Vec<u64>,
}

impl PartialEq for SemigroupIdeal {
    fn eq(&self, other: &Self) -> bool {
        same_semigroup(&self.semigroup, &other.semigroup) && self.gens == other.gens
    }
}

impl Eq for SemigroupIdeal {}

fn same_semigroup(a: &Arc<NumericalSemigroup>, b: &Arc<NumericalSemigroup>) -> bool {
    Arc::ptr_eq(a, b) || a.generators == b.generators
}

/// Drops every exponent lying in `g' + S` for a smaller kept `g'`.
fn minimalize(semigroup: &NumericalSemigroup, mut exps: Vec<u64>) -> Vec<u64> {
    exps.sort_unstable();
    exps.dedup();
    let mut kept: Vec<u64> = Vec::new();
    for e in exps {
        if !kept.iter().any(|&k| semigroup.contains(e - k)) {
            kept.push(e);
        }
    }
    kept
}

impl SemigroupIdeal {
    pub fn new(semigroup: Arc<NumericalSemigroup>, gens: &[u64]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::EmptyIdeal);
        }
        if let Some(&bad) = gens.iter().find(|&&g| !semigroup.contains(g)) {
            return Err(SemigroupError::NotInSemigroup(bad));
        }
        let gens = minimalize(&semigroup, gens.to_vec());
        Ok(SemigroupIdeal { semigroup, gens })
    }

    /// The whole ring, `(t^0)`.
    pub fn unit(semigroup: Arc<NumericalSemigroup>) -> Self {
        SemigroupIdeal { semigroup, gens: vec![0] }
    }

    /// The maximal ideal, generated by the generators of `S`.
    pub fn maximal(semigroup: Arc<NumericalSemigroup>) -> Self {
        let gens = semigroup.minimal_generators();
        SemigroupIdeal { semigroup, gens }
    }

    pub fn semigroup(&self) -> &Arc<NumericalSemigroup> {
        &self.semigroup
    }

    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    pub fn is_principal(&self) -> bool {
        self.gens.len() == 1
    }

    /// Every exponent from here on lies in the ideal.
    pub fn conductor(&self) -> u64 {
        self.gens[0] + self.semigroup.conductor()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.gens.iter().any(|&g| n >= g && self.semigroup.contains(n - g))
    }

    /// `other ⊆ self`.
    pub fn includes(&self, other: &SemigroupIdeal) -> bool {
        other.gens.iter().all(|&g| self.contains(g))
    }

    /// Exponents of the ideal below `bound`.
    pub fn elements_below(&self, bound: u64) -> Vec<u64> {
        (0..bound).filter(|&n| self.contains(n)).collect()
    }

    fn check_same(&self, other: &SemigroupIdeal) -> Result<(), SemigroupError> {
        if same_semigroup(&self.semigroup, &other.semigroup) {
            Ok(())
        } else {
            Err(SemigroupError::SemigroupMismatch)
        }
    }

    /// The ideal with element set `{n ∈ S : pred(n)}`, given that `pred`
    /// holds for every member `n ≥ bound`.
    fn from_predicate(semigroup: &Arc<NumericalSemigroup>, bound: u64, pred: impl Fn(u64) -> bool) -> Self {
        // nothing at or past bound + min(gens S) can be a minimal generator
        let top = bound + semigroup.generators[0];
        let exps = (0..top).filter(|&n| semigroup.contains(n) && (n >= bound || pred(n))).collect();
        SemigroupIdeal { semigroup: semigroup.clone(), gens: minimalize(semigroup, exps) }
    }

    pub fn multiply(&self, other: &SemigroupIdeal) -> Result<Self, SemigroupError> {
        self.check_same(other)?;
        let sums = self.gens.iter().flat_map(|&a| other.gens.iter().map(move |&b| a + b)).collect();
        Ok(SemigroupIdeal { semigroup: self.semigroup.clone(), gens: minimalize(&self.semigroup, sums) })
    }

    /// `I^n`, with `I^0 = (t^0)`.
    pub fn power(&self, n: u32) -> Self {
        let mut acc = SemigroupIdeal::unit(self.semigroup.clone());
        for _ in 0..n {
            acc = acc.multiply(self).expect("same semigroup");
        }
        acc
    }

    pub fn sum(&self, other: &SemigroupIdeal) -> Result<Self, SemigroupError> {
        self.check_same(other)?;
        let union = self.gens.iter().chain(&other.gens).copied().collect();
        Ok(SemigroupIdeal { semigroup: self.semigroup.clone(), gens: minimalize(&self.semigroup, union) })
    }

    pub fn intersect(&self, other: &SemigroupIdeal) -> Result<Self, SemigroupError> {
        self.check_same(other)?;
        let bound = self.conductor().max(other.conductor());
        Ok(Self::from_predicate(&self.semigroup, bound, |n| self.contains(n) && other.contains(n)))
    }

    /// `self : other = {z ∈ S : z + other ⊆ self}`.
    pub fn colon(&self, other: &SemigroupIdeal) -> Result<Self, SemigroupError> {
        self.check_same(other)?;
        if other.gens.is_empty() {
            return Err(SemigroupError::ColonByEmpty);
        }
        Ok(Self::from_predicate(&self.semigroup, self.conductor(), |z| {
            other.gens.iter().all(|&g| self.contains(z + g))
        }))
    }

    /// `λ(self / sub)`, the number of exponents in `self` but not in `sub`.
    pub fn length(&self, sub: &SemigroupIdeal) -> Result<u64, SemigroupError> {
        self.check_same(sub)?;
        if !self.includes(sub) {
            return Err(SemigroupError::NotContained);
        }
        Ok((0..sub.conductor()).filter(|&n| self.contains(n) && !sub.contains(n)).count() as u64)
    }
}

impl fmt::Display for SemigroupIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        write!(f, "sgid({}; {})", join(&self.semigroup.generators), join(&self.gens))
    }
}

/// Result of checking `I^n ∩ J = J·I^{n-1}` for `2 ≤ n ≤ n_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum VvCheck {
    Holds,
    /// `exponent ∈ I^n ∩ J` but not in `J·I^{n-1}`.
    Fails {
        n: u32,
        exponent: u64,
    },
}

impl VvCheck {
    pub fn holds(self) -> bool {
        self == VvCheck::Holds
    }
}

pub fn vv_check(i: &SemigroupIdeal, j: &SemigroupIdeal, n_max: u32) -> Result<VvCheck, SemigroupError> {
    i.check_same(j)?;
    if !j.is_principal() || !i.includes(j) {
        return Err(SemigroupError::NotPrincipalSubideal);
    }
    let mut prev = i.clone();
    for n in 2..=n_max {
        let cur = prev.multiply(i)?;
        let lhs = cur.intersect(j)?;
        let rhs = j.multiply(&prev)?;
        if lhs != rhs {
            // rhs ⊆ lhs always; report the first exponent it misses
            let exponent = (0..lhs.conductor())
                .find(|&e| lhs.contains(e) && !rhs.contains(e))
                .expect("ideals differ below the conductor");
            return Ok(VvCheck::Fails { n, exponent });
        }
        prev = cur;
    }
    Ok(VvCheck::Holds)
}

/// Membership facts for `I = (t^6, t^11, t^31)`, `J = (t^6)` in
/// `K[[t^6, t^11, t^15, t^31]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberWitnessReport {
    pub length_i2_over_ji: u64,
    pub i3_eq_ji2: bool,
    pub i2_cap_j_eq_ji: bool,
    pub t37_in_m_i2: bool,
    pub t37_in_m_ji: bool,
    pub t22_in_i2_not_ji: bool,
    /// `t^37 ∈ M·I²` but `t^37 ∉ M·J·I`, so `F(I)` is not Cohen–Macaulay.
    pub fiber_not_cm: bool,
}

pub fn fiber_witness_check() -> FiberWitnessReport {
    let s = NumericalSemigroup::new(&[6, 11, 15, 31]).expect("numerical semigroup");
    let i = SemigroupIdeal::new(s.clone(), &[6, 11, 31]).expect("ideal");
    let j = SemigroupIdeal::new(s.clone(), &[6]).expect("ideal");
    let m = SemigroupIdeal::maximal(s);
    let i2 = i.power(2);
    let ji = j.multiply(&i).expect("same semigroup");
    let m_i2 = m.multiply(&i2).expect("same semigroup");
    let m_ji = m.multiply(&ji).expect("same semigroup");
    let t37_in_m_i2 = m_i2.contains(37);
    let t37_in_m_ji = m_ji.contains(37);
    FiberWitnessReport {
        length_i2_over_ji: i2.length(&ji).expect("JI ⊆ I²"),
        i3_eq_ji2: i.power(3) == j.multiply(&i2).expect("same semigroup"),
        i2_cap_j_eq_ji: i2.intersect(&j).expect("same semigroup") == ji,
        t37_in_m_i2,
        t37_in_m_ji,
        t22_in_i2_not_ji: i2.contains(22) && !ji.contains(22),
        fiber_not_cm: t37_in_m_i2 && !t37_in_m_ji,
    }
}
