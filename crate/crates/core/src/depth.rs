//! Depth probes for `gr_I(R)` and `F(I)` built from colon ideals, and the
//! lex-segment classifier.
//!
//! A zero verdict always carries a monomial certificate that can be checked
//! from the ideal alone:
//!
//! * `gr`: `w ∈ I^{n+1} : I` and `w ∉ I^n`;
//! * fiber: `w ∈ (M·I^{n+1} : I) ∩ I^n` and `w ∉ M·I^n`.
//!
//! Positive verdicts only cover `n ≤ horizon`.

use serde::{Deserialize, Serialize};

use crate::error::{DepthError, HilbertError};
use crate::hilbert::{self, HilbertSummary};
use crate::reduction::{self, RVerdict, ReductionReport};
use crate::staircase::{Monomial, MonomialIdeal2, PowerTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub n: u32,
    pub monomial: Monomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrProbe {
    PositiveUpToHorizon { horizon: u32 },
    Zero(Witness),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberProbe {
    /// Strong equality `M·I^{n+1} : I = M·I^n` for every `n ≤ horizon`.
    PositiveUpToHorizon {
        horizon: u32,
    },
    Zero(Witness),
    /// Weak equality held throughout but strong equality failed at `n`.
    Inconclusive {
        horizon: u32,
        strong_failure_at: u32,
    },
}

impl GrProbe {
    pub fn witness(&self) -> Option<Witness> {
        match self {
            GrProbe::Zero(w) => Some(*w),
            GrProbe::PositiveUpToHorizon { .. } => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        matches!(self, GrProbe::PositiveUpToHorizon { .. })
    }
}

impl FiberProbe {
    pub fn witness(&self) -> Option<Witness> {
        match self {
            FiberProbe::Zero(w) => Some(*w),
            _ => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        matches!(self, FiberProbe::PositiveUpToHorizon { .. })
    }
}

/// First canonical generator of `big` outside `small`.
fn first_gen_outside(big: &MonomialIdeal2, small: &MonomialIdeal2) -> Option<Monomial> {
    big.gens().iter().copied().find(|&g| !small.contains(g))
}

fn require_proper(ideal: &MonomialIdeal2) -> Result<(), DepthError> {
    if ideal.is_zero() || ideal.is_unit() {
        Err(DepthError::TrivialIdeal)
    } else {
        Ok(())
    }
}

/// Tests `I^{n+1} : I = I^n` for `n = 1..=horizon` on the ideal as given.
pub fn gr_probe_unfactored(ideal: &MonomialIdeal2, horizon: u32) -> Result<GrProbe, DepthError> {
    require_proper(ideal)?;
    let powers = PowerTable::new(ideal.clone());
    gr_probe_in(&powers, horizon)
}

fn gr_probe_in(powers: &PowerTable, horizon: u32) -> Result<GrProbe, DepthError> {
    let base = powers.base();
    for n in 1..=horizon {
        let colon = powers.get(n + 1).colon(&base)?;
        let pow = powers.get(n);
        if let Some(w) = first_gen_outside(&colon, &pow) {
            return Ok(GrProbe::Zero(Witness { n, monomial: w }));
        }
    }
    Ok(GrProbe::PositiveUpToHorizon { horizon })
}

/// `gr_I(R)` positive-depth probe. Factors `I = z·L` and probes `L`; a
/// witness `w` for `L` at level `n` is returned as `zⁿ·w`.
pub fn gr_positive_depth_probe(ideal: &MonomialIdeal2, horizon: u32) -> Result<GrProbe, DepthError> {
    require_proper(ideal)?;
    let split = ideal.split_common_factor()?;
    if split.cofactor.is_unit() {
        return Ok(GrProbe::PositiveUpToHorizon { horizon });
    }
    let z = split.monomial();
    match gr_probe_in(&PowerTable::new(split.cofactor), horizon)? {
        GrProbe::Zero(w) => {
            let monomial = z.try_pow(w.n)?.try_mul(w.monomial)?;
            Ok(GrProbe::Zero(Witness { n: w.n, monomial }))
        }
        positive => Ok(positive),
    }
}

/// `F(I)` positive-depth probe: strong and weak colon equalities for
/// `n = 1..=horizon`.
pub fn fiber_positive_depth_probe(ideal: &MonomialIdeal2, horizon: u32) -> Result<FiberProbe, DepthError> {
    require_proper(ideal)?;
    let maximal = MonomialIdeal2::maximal();
    let powers = PowerTable::new(ideal.clone());
    let mut strong_failure = None;
    for n in 1..=horizon {
        let colon = maximal.multiply(&powers.get(n + 1)).colon(ideal)?;
        let pow = powers.get(n);
        let m_pow = maximal.multiply(&pow);
        if colon == m_pow {
            continue;
        }
        let weak = colon.intersect(&pow);
        if let Some(w) = first_gen_outside(&weak, &m_pow) {
            return Ok(FiberProbe::Zero(Witness { n, monomial: w }));
        }
        strong_failure.get_or_insert(n);
    }
    Ok(match strong_failure {
        None => FiberProbe::PositiveUpToHorizon { horizon },
        Some(n) => FiberProbe::Inconclusive { horizon, strong_failure_at: n },
    })
}

/// Checks a `gr` zero-certificate against the ideal alone.
pub fn check_gr_witness(ideal: &MonomialIdeal2, w: &Witness) -> bool {
    let next = ideal.power(w.n + 1);
    let in_colon = ideal.gens().iter().all(|&g| match g.try_mul(w.monomial) {
        Ok(p) => next.contains(p),
        Err(_) => false,
    });
    in_colon && !ideal.power(w.n).contains(w.monomial)
}

/// Checks a fiber zero-certificate against the ideal alone.
pub fn check_fiber_witness(ideal: &MonomialIdeal2, w: &Witness) -> bool {
    let maximal = MonomialIdeal2::maximal();
    let m_next = maximal.multiply(&ideal.power(w.n + 1));
    let pow = ideal.power(w.n);
    let in_colon = ideal.gens().iter().all(|&g| match g.try_mul(w.monomial) {
        Ok(p) => m_next.contains(p),
        Err(_) => false,
    });
    in_colon && pow.contains(w.monomial) && !maximal.multiply(&pow).contains(w.monomial)
}

/// Outcome of checking an ideal identity for `n` up to a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityCheck {
    Holds,
    Fails { n: u32, monomial: Monomial },
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        *self == IdentityCheck::Holds
    }
}

fn compare_sides(n: u32, lhs: &MonomialIdeal2, rhs: &MonomialIdeal2) -> Option<IdentityCheck> {
    if lhs == rhs {
        return None;
    }
    let monomial = first_gen_outside(lhs, rhs)
        .or_else(|| first_gen_outside(rhs, lhs))
        .expect("distinct canonical ideals differ in a generator");
    Some(IdentityCheck::Fails { n, monomial })
}

fn require_lex(ideal: &MonomialIdeal2) -> Result<(), DepthError> {
    ideal.is_lex_segment().map(|_| ()).ok_or(DepthError::LemmaNeedsLex)
}

/// `M·I^n : y = I^n` for `0 ≤ n ≤ horizon`.
pub fn lemma_colon_y(ideal: &MonomialIdeal2, horizon: u32) -> Result<IdentityCheck, DepthError> {
    require_lex(ideal)?;
    let maximal = MonomialIdeal2::maximal();
    let powers = PowerTable::new(ideal.clone());
    for n in 0..=horizon {
        let pow = powers.get(n);
        let lhs = maximal.multiply(&pow).colon_monomial(Monomial::Y);
        if let Some(fail) = compare_sides(n, &lhs, &pow) {
            return Ok(fail);
        }
    }
    Ok(IdentityCheck::Holds)
}

/// `M·I^{n+1} : I = M·(I^{n+1} : I)` for `0 ≤ n ≤ horizon`.
pub fn lemma_colon_factor(ideal: &MonomialIdeal2, horizon: u32) -> Result<IdentityCheck, DepthError> {
    require_lex(ideal)?;
    let maximal = MonomialIdeal2::maximal();
    let powers = PowerTable::new(ideal.clone());
    for n in 0..=horizon {
        let next = powers.get(n + 1);
        let lhs = maximal.multiply(&next).colon(ideal)?;
        let rhs = maximal.multiply(&next.colon(ideal)?);
        if let Some(fail) = compare_sides(n, &lhs, &rhs) {
            return Ok(fail);
        }
    }
    Ok(IdentityCheck::Holds)
}

/// For `I = x^m·L`, the `gr` probes of `I` and `L` (unfactored) agree, with
/// witnesses related by `w_I = x^{mn}·w_L`.
pub fn prop_inequality_check(l: &MonomialIdeal2, m: u32, horizon: u32) -> Result<bool, DepthError> {
    if !l.is_m_primary() {
        return Err(DepthError::NotMPrimary);
    }
    let i = l.try_shift(Monomial::new(m, 0))?;
    let on_l = gr_probe_unfactored(l, horizon)?;
    let on_i = gr_probe_unfactored(&i, horizon)?;
    Ok(match (on_l, on_i) {
        (GrProbe::PositiveUpToHorizon { .. }, GrProbe::PositiveUpToHorizon { .. }) => true,
        (GrProbe::Zero(wl), GrProbe::Zero(wi)) => {
            let shifted = Monomial::new(m, 0).try_pow(wl.n)?.try_mul(wl.monomial)?;
            wl.n == wi.n && wi.monomial == shifted
        }
        _ => false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DepthQualifier {
    CertifiedZero,
    PositiveUpToHorizon,
    CmCertified,
    Inconclusive,
}

/// Conditions raised while classifying. The first group marks a failed
/// consistency check between independent routes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    /// `e1 = e0 − λ` and the sampled `I² = JI` test disagree.
    CriterionDisagreement,
    /// `gr` and fiber probes disagree.
    DepthDisagreement,
    /// Numerically Cohen–Macaulay but a probe produced a zero witness.
    CmProbeConflict,
    FiberInconclusive,
    HilbertInconclusive,
    ReductionInconclusive,
    /// No trials were run; `r_leq_1` restates the numeric criterion.
    RFromE1Criterion,
    /// Hilbert fit inconclusive; Cohen–Macaulayness taken from sampling.
    CmFromReduction,
}

impl Flag {
    pub fn is_violation(self) -> bool {
        matches!(self, Flag::CriterionDisagreement | Flag::DepthDisagreement | Flag::CmProbeConflict)
    }

    pub fn is_inconclusive(self) -> bool {
        matches!(self, Flag::FiberInconclusive | Flag::HilbertInconclusive | Flag::ReductionInconclusive)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Probe and Hilbert horizon; `None` uses [`hilbert::default_horizon`].
    pub horizon: Option<u32>,
    pub trials: u32,
    pub prime: u64,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { horizon: None, trials: 3, prime: reduction::DEFAULT_PRIME, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthVerdict {
    pub depth_gr: u32,
    pub gr_qualifier: DepthQualifier,
    pub depth_fiber: u32,
    pub fiber_qualifier: DepthQualifier,
    pub cm_gr: bool,
    pub cm_fiber: bool,
    pub cm_rees: bool,
    pub r_leq_1: RVerdict,
    pub depth_rees: u32,
    pub horizon: u32,
    pub witness_gr: Option<Witness>,
    pub witness_fiber: Option<Witness>,
    pub flags: Vec<Flag>,
    /// Hilbert data of the `m`-primary factor (absent for principal ideals).
    pub hilbert: Option<HilbertSummary>,
    pub reduction: Option<ReductionReport>,
}

impl DepthVerdict {
    /// Numerical criterion verdict and sampled verdict agree (vacuous when
    /// either side is unavailable).
    pub fn criterion_agrees(&self) -> bool {
        !self.flags.contains(&Flag::CriterionDisagreement) && !self.flags.contains(&Flag::ReductionInconclusive)
    }

    pub fn has_violation(&self) -> bool {
        self.flags.iter().any(|f| f.is_violation())
    }

    pub fn is_inconclusive(&self) -> bool {
        self.flags.iter().any(|f| f.is_inconclusive())
    }
}

/// Classifies a lex-segment ideal.
///
/// With `I = x^{d−k}·L`, Cohen–Macaulayness of `gr_I(R)` (equivalently of
/// `F(I)` and `R(I)`) is decided by `e1(L) = e0(L) − λ(R/L)` and
/// cross-checked by sampling minimal reductions of `L`. Otherwise the depths
/// come from the colon probes.
pub fn classify(ideal: &MonomialIdeal2, opts: &ClassifyOptions) -> Result<DepthVerdict, DepthError> {
    let spec = ideal.is_lex_segment().ok_or(DepthError::NotLexSegment)?;
    let horizon = opts.horizon.unwrap_or_else(|| hilbert::default_horizon(ideal));
    if spec.k() == 0 {
        return Ok(DepthVerdict {
            depth_gr: 2,
            gr_qualifier: DepthQualifier::CmCertified,
            depth_fiber: 1,
            fiber_qualifier: DepthQualifier::CmCertified,
            cm_gr: true,
            cm_fiber: true,
            cm_rees: true,
            r_leq_1: RVerdict::Yes,
            depth_rees: 3,
            horizon,
            witness_gr: None,
            witness_fiber: None,
            flags: Vec::new(),
            hilbert: None,
            reduction: None,
        });
    }

    let mut flags = Vec::new();
    let l = ideal.split_common_factor()?.cofactor;
    let l_powers = PowerTable::new(l.clone());
    let summary = match hilbert::summarize_in(&l_powers, ideal.height(), Some(horizon)) {
        Ok(s) => Some(s),
        Err(HilbertError::Inconclusive { .. }) => {
            flags.push(Flag::HilbertInconclusive);
            None
        }
        Err(e) => return Err(e.into()),
    };
    let numeric = summary.as_ref().map(HilbertSummary::satisfies_e1_criterion);

    let report = if opts.trials > 0 {
        Some(reduction::monte_carlo_r_leq_1(&l, opts.trials, opts.prime, opts.seed)?)
    } else {
        None
    };
    let sampled = report.as_ref().map(|r| r.r_leq_1);
    if sampled == Some(RVerdict::Inconclusive) {
        flags.push(Flag::ReductionInconclusive);
    }
    let cm = match (numeric, sampled) {
        (Some(c), Some(RVerdict::Yes)) | (Some(c), Some(RVerdict::No)) => {
            if c != (sampled == Some(RVerdict::Yes)) {
                flags.push(Flag::CriterionDisagreement);
            }
            c
        }
        (Some(c), _) => c,
        (None, Some(RVerdict::Yes)) => {
            flags.push(Flag::CmFromReduction);
            true
        }
        (None, Some(RVerdict::No)) => {
            flags.push(Flag::CmFromReduction);
            false
        }
        (None, _) => return Err(DepthError::Hilbert(HilbertError::Inconclusive { horizon })),
    };
    let r_leq_1 = match sampled {
        Some(v) => v,
        None => {
            flags.push(Flag::RFromE1Criterion);
            if cm {
                RVerdict::Yes
            } else {
                RVerdict::No
            }
        }
    };

    let gr = gr_positive_depth_probe(ideal, horizon)?;
    let fiber = fiber_positive_depth_probe(ideal, horizon)?;
    let (depth_gr, gr_qualifier, depth_fiber, fiber_qualifier) = if cm {
        if !gr.is_positive() || fiber.witness().is_some() {
            flags.push(Flag::CmProbeConflict);
        }
        (2, DepthQualifier::CmCertified, 2, DepthQualifier::CmCertified)
    } else {
        let (dg, qg) = match gr {
            GrProbe::Zero(_) => (0, DepthQualifier::CertifiedZero),
            GrProbe::PositiveUpToHorizon { .. } => (1, DepthQualifier::PositiveUpToHorizon),
        };
        let (df, qf) = match fiber {
            FiberProbe::Zero(_) => (0, DepthQualifier::CertifiedZero),
            FiberProbe::PositiveUpToHorizon { .. } => (1, DepthQualifier::PositiveUpToHorizon),
            FiberProbe::Inconclusive { .. } => {
                flags.push(Flag::FiberInconclusive);
                (1, DepthQualifier::Inconclusive)
            }
        };
        (dg, qg, df, qf)
    };
    if depth_gr != depth_fiber {
        flags.push(Flag::DepthDisagreement);
    }

    Ok(DepthVerdict {
        depth_gr,
        gr_qualifier,
        depth_fiber,
        fiber_qualifier,
        cm_gr: cm,
        cm_fiber: cm,
        cm_rees: cm,
        r_leq_1,
        depth_rees: depth_gr + 1,
        horizon,
        witness_gr: gr.witness(),
        witness_fiber: fiber.witness(),
        flags,
        hilbert: summary,
        reduction: report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::staircase::LexSpec;

    fn ideal(gens: &[(u32, u32)]) -> MonomialIdeal2 {
        MonomialIdeal2::normalize(gens.iter().map(|&(a, b)| Monomial::new(a, b)))
    }

    fn lex(d: u32, a: &[u32]) -> MonomialIdeal2 {
        LexSpec::new(d, a.to_vec()).unwrap().to_ideal()
    }

    fn non_lex_fixture() -> MonomialIdeal2 {
        ideal(&[(5, 0), (3, 3), (1, 7), (0, 9)])
    }

    #[test]
    fn gr_probe_on_non_lex_example() {
        let i = non_lex_fixture();
        let probe = gr_positive_depth_probe(&i, 8).unwrap();
        let w = Witness { n: 1, monomial: Monomial::new(2, 6) };
        assert_eq!(probe, GrProbe::Zero(w));
        assert!(check_gr_witness(&i, &w));
    }

    #[test]
    fn fiber_probe_on_non_lex_example() {
        assert_eq!(
            fiber_positive_depth_probe(&non_lex_fixture(), 10).unwrap(),
            FiberProbe::PositiveUpToHorizon { horizon: 10 }
        );
    }

    #[test]
    fn simple_probes() {
        assert!(gr_positive_depth_probe(&lex(2, &[1, 3]), 8).unwrap().is_positive());
        assert!(gr_positive_depth_probe(&MonomialIdeal2::principal(Monomial::new(4, 0)), 8).unwrap().is_positive());
        assert!(fiber_positive_depth_probe(&MonomialIdeal2::maximal(), 8).unwrap().is_positive());
        assert_eq!(gr_positive_depth_probe(&MonomialIdeal2::unit(), 3), Err(DepthError::TrivialIdeal));
        assert_eq!(fiber_positive_depth_probe(&MonomialIdeal2::zero(), 3), Err(DepthError::TrivialIdeal));
    }

    #[test]
    fn lemma_identities() {
        let i = lex(2, &[1, 3]);
        let m_i = MonomialIdeal2::maximal().multiply(&i);
        assert_eq!(m_i, ideal(&[(3, 0), (2, 1), (1, 2), (0, 4)]));
        assert_eq!(m_i.colon_monomial(Monomial::Y), i);
        assert!(lemma_colon_y(&i, 6).unwrap().holds());
        assert!(lemma_colon_factor(&i, 6).unwrap().holds());
        assert!(lemma_colon_y(&lex(3, &[]), 6).unwrap().holds());
        assert_eq!(lemma_colon_y(&non_lex_fixture(), 2), Err(DepthError::LemmaNeedsLex));
    }

    #[test]
    fn classify_fixtures() {
        let opts = ClassifyOptions { horizon: Some(8), ..Default::default() };
        let v = classify(&ideal(&[(3, 0), (2, 1)]), &opts).unwrap();
        assert!(v.cm_gr && v.cm_fiber && v.cm_rees);
        assert_eq!((v.depth_gr, v.depth_fiber, v.depth_rees), (2, 2, 3));
        assert_eq!(v.r_leq_1, RVerdict::Yes);
        assert!(v.flags.is_empty(), "{:?}", v.flags);

        let v = classify(&lex(2, &[1, 3]), &opts).unwrap();
        assert_eq!((v.depth_gr, v.depth_fiber), (2, 2));

        for d in 1..=4 {
            let all: Vec<u32> = (1..=d).collect();
            let v = classify(&lex(d, &all), &opts).unwrap();
            assert!(v.cm_gr);
            let h = v.hilbert.unwrap();
            assert_eq!(h.e1, i64::from(d * (d - 1) / 2));
        }

        let v = classify(&lex(4, &[]), &opts).unwrap();
        assert_eq!((v.depth_gr, v.depth_fiber, v.depth_rees), (2, 1, 3));
        assert!(v.cm_gr && v.cm_fiber && v.cm_rees);

        assert_eq!(classify(&non_lex_fixture(), &opts), Err(DepthError::NotLexSegment));
    }

    #[test]
    fn classify_without_trials_restates_criterion() {
        let opts = ClassifyOptions { horizon: Some(8), trials: 0, ..Default::default() };
        let v = classify(&lex(2, &[1, 3]), &opts).unwrap();
        assert_eq!(v.flags, vec![Flag::RFromE1Criterion]);
        assert_eq!(v.r_leq_1, RVerdict::Yes);
        assert!(v.reduction.is_none());
    }

    #[test]
    fn factor_transfer() {
        assert!(prop_inequality_check(&MonomialIdeal2::maximal(), 2, 6).unwrap());
        let l = ideal(&[(2, 0), (1, 2), (0, 5)]);
        assert!(prop_inequality_check(&l, 3, 6).unwrap());
        let l = non_lex_fixture();
        let wl = gr_probe_unfactored(&l, 4).unwrap().witness().unwrap();
        let wi = gr_probe_unfactored(&l.shift(Monomial::new(2, 0)), 4).unwrap().witness().unwrap();
        assert_eq!(wi.monomial, Monomial::new(2 * wl.n, 0).try_mul(wl.monomial).unwrap());
        assert!(prop_inequality_check(&l, 2, 4).unwrap());
        assert_eq!(prop_inequality_check(&lex(3, &[1]), 1, 4), Err(DepthError::NotMPrimary));
    }
}
