//! Fixture-driven checks of the worked examples and the survey-scale claims.
//!
//! Expected values live in a JSON fixture file (an embedded default ships
//! with the binary); every check yields one named assertion.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use lexdepth_core::depth::{self, ClassifyOptions, FiberProbe, GrProbe, IdentityCheck, Witness};
use lexdepth_core::hilbert;
use lexdepth_core::reduction::{monte_carlo_r_leq_1, RVerdict};
use lexdepth_core::semigroup::{vv_check, NumericalSemigroup, SemigroupIdeal};
use lexdepth_core::{Monomial, MonomialIdeal2};

use crate::eval::{evaluate, Value};
use crate::oracle;
use crate::survey;

pub const DEFAULT_FIXTURES: &str = include_str!("../fixtures/default.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixtures {
    pub colon: ColonFixture,
    pub non_lex: NonLexFixture,
    pub semigroup: SemigroupFixture,
    pub lemmas: LemmaFixture,
    pub survey: SurveyFixture,
    pub concordance: ConcordanceFixture,
    pub oracles: OracleFixture,
    pub transfer: TransferFixture,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColonFixture {
    pub ideal: String,
    pub divisor: String,
    pub expected: String,
    pub equals_ideal: bool,
    pub cm_gr: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonLexFixture {
    pub ideal: String,
    pub gr_witness: Witness,
    pub fiber_horizon: u32,
    pub fiber_positive: bool,
    pub is_lex: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupFixture {
    pub semigroup: Vec<u64>,
    pub i: Vec<u64>,
    pub j: Vec<u64>,
    pub length_i2_over_ji: u64,
    pub gap: u64,
    pub i3_eq_ji2: bool,
    pub i2_cap_j_eq_ji: bool,
    pub vv_n_max: u32,
    pub vv_holds: bool,
    pub witness: u64,
    pub witness_in_m_i2: bool,
    pub witness_in_m_ji: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LemmaFixture {
    pub samples: usize,
    pub dmax: u32,
    pub amax: u32,
    pub n_max: u32,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurveyFixture {
    pub dmax: u32,
    pub amax: u32,
    pub horizon: u32,
    pub ideals: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConcordanceFixture {
    pub samples: usize,
    pub trials: u32,
    pub primes: Vec<u64>,
    pub horizon: u32,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertFixture {
    pub ideal: String,
    pub h: Option<Vec<u64>>,
    pub e0: i64,
    pub e1: i64,
    pub e2: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleFixture {
    pub samples: usize,
    pub max_exp: u32,
    pub seed: u64,
    pub mu_horizon: u32,
    pub hilbert: Vec<HilbertFixture>,
    pub maximal_powers: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransferFixture {
    pub samples: usize,
    pub max_exp: u32,
    pub m_max: u32,
    pub n_max: u32,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub assertions: Vec<Assertion>,
    pub passed: usize,
    pub failed: usize,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for a in &self.assertions {
            out.push_str(&format!("{} {}  {}\n", if a.pass { "PASS" } else { "FAIL" }, a.id, a.detail));
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

struct Collector(Vec<Assertion>);

impl Collector {
    fn check(&mut self, id: &str, pass: bool, detail: impl Into<String>) {
        self.0.push(Assertion { id: id.to_string(), pass, detail: detail.into() });
    }
}

fn poly(src: &str) -> Result<MonomialIdeal2, String> {
    match evaluate(src) {
        Ok(Value::Poly(i)) => Ok(i),
        Ok(other) => Err(format!("'{src}' is an ideal of the {}", other.ring())),
        Err(e) => Err(format!("'{src}': {e}")),
    }
}

/// Runs every fixture. `jobs` workers are used for the survey.
pub fn run(fx: &Fixtures, jobs: usize) -> VerifyReport {
    let mut c = Collector(Vec::new());
    colon_checks(&mut c, &fx.colon);
    non_lex_checks(&mut c, &fx.non_lex);
    semigroup_checks(&mut c, &fx.semigroup);
    lemma_checks(&mut c, &fx.lemmas);
    survey_checks(&mut c, &fx.survey, jobs);
    concordance_checks(&mut c, &fx.concordance, &fx.survey);
    oracle_checks(&mut c, &fx.oracles, &fx.survey);
    transfer_checks(&mut c, &fx.transfer);
    let passed = c.0.iter().filter(|a| a.pass).count();
    let failed = c.0.len() - passed;
    VerifyReport { assertions: c.0, passed, failed }
}

fn colon_checks(c: &mut Collector, fx: &ColonFixture) {
    let parsed = (poly(&fx.ideal), poly(&fx.divisor), poly(&fx.expected));
    let (Ok(i), Ok(div), Ok(expected)) = parsed else {
        c.check("F1.parse", false, "fixture ideals do not parse");
        return;
    };
    let colon = i.power(2).colon(&div).expect("nonzero divisor");
    c.check("F1.colon", colon == expected, format!("I^2 : {div} = {colon}, expected {expected}"));
    c.check(
        "F1.colon_vs_ideal",
        (colon == i) == fx.equals_ideal,
        format!("(I^2 : {div} == I) is {}, expected {}", colon == i, fx.equals_ideal),
    );
    match depth::classify(&i, &ClassifyOptions::default()) {
        Ok(v) => c.check("F1.cm_gr", v.cm_gr == fx.cm_gr, format!("cm_gr = {}, expected {}", v.cm_gr, fx.cm_gr)),
        Err(e) => c.check("F1.cm_gr", false, format!("classify failed: {e}")),
    }
}

fn non_lex_checks(c: &mut Collector, fx: &NonLexFixture) {
    let i = match poly(&fx.ideal) {
        Ok(i) => i,
        Err(e) => return c.check("F2.parse", false, e),
    };
    let gr = depth::gr_positive_depth_probe(&i, fx.fiber_horizon);
    let want = GrProbe::Zero(fx.gr_witness);
    let detail = match &gr {
        Ok(GrProbe::Zero(w)) => format!("gr probe: zero, witness {} at n = {}", w.monomial, w.n),
        other => format!("gr probe: {other:?}"),
    };
    c.check("F2.gr_witness", gr.as_ref().ok() == Some(&want), detail);
    c.check(
        "F2.gr_witness_checks",
        depth::check_gr_witness(&i, &fx.gr_witness),
        "witness satisfies w·I ⊆ I^{n+1}, w ∉ I^n",
    );
    let fiber = depth::fiber_positive_depth_probe(&i, fx.fiber_horizon);
    let positive = matches!(fiber, Ok(FiberProbe::PositiveUpToHorizon { .. }));
    c.check(
        "F2.fiber_positive",
        positive == fx.fiber_positive,
        format!("fiber probe to n = {}: {fiber:?}", fx.fiber_horizon),
    );
    let lex = i.is_lex_segment().is_some();
    c.check("F2.not_lex", lex == fx.is_lex, format!("is_lex_segment = {lex}, expected {}", fx.is_lex));
}

fn semigroup_checks(c: &mut Collector, fx: &SemigroupFixture) {
    let built = NumericalSemigroup::new(&fx.semigroup).and_then(|s| {
        Ok((SemigroupIdeal::new(s.clone(), &fx.i)?, SemigroupIdeal::new(s.clone(), &fx.j)?, SemigroupIdeal::maximal(s)))
    });
    let (i, j, m) = match built {
        Ok(t) => t,
        Err(e) => return c.check("F3.build", false, e.to_string()),
    };
    let i2 = i.power(2);
    let ji = j.multiply(&i).expect("same semigroup");
    let len = i2.length(&ji).ok();
    c.check(
        "F3.length",
        len == Some(fx.length_i2_over_ji),
        format!("λ(I²/JI) = {len:?}, expected {}", fx.length_i2_over_ji),
    );
    let gap = i2.contains(fx.gap) && !ji.contains(fx.gap);
    c.check("F3.gap", gap, format!("t^{} ∈ I² \\ JI: {gap}", fx.gap));
    let i3 = i.power(3) == j.multiply(&i2).expect("same semigroup");
    c.check("F3.i3_eq_ji2", i3 == fx.i3_eq_ji2, format!("I³ = JI²: {i3}"));
    let meet = i2.intersect(&j).expect("same semigroup") == ji;
    c.check("F3.i2_cap_j", meet == fx.i2_cap_j_eq_ji, format!("I² ∩ J = JI: {meet}"));
    let vv = vv_check(&i, &j, fx.vv_n_max);
    let holds = vv.as_ref().is_ok_and(|v| v.holds());
    c.check("F3.valabrega_valla", holds == fx.vv_holds, format!("n ≤ {}: {vv:?}", fx.vv_n_max));
    let m_i2 = m.multiply(&i2).expect("same semigroup").contains(fx.witness);
    let m_ji = m.multiply(&ji).expect("same semigroup").contains(fx.witness);
    c.check("F3.witness_in_m_i2", m_i2 == fx.witness_in_m_i2, format!("t^{} ∈ M·I²: {m_i2}", fx.witness));
    c.check("F3.witness_in_m_ji", m_ji == fx.witness_in_m_ji, format!("t^{} ∈ M·J·I: {m_ji}", fx.witness));
}

fn lemma_checks(c: &mut Collector, fx: &LemmaFixture) {
    let mut rng = ChaCha20Rng::seed_from_u64(fx.seed);
    let specs = oracle::sample_specs(&mut rng, &survey::enumerate(fx.dmax, fx.amax), fx.samples);
    let mut failures = Vec::new();
    for s in &specs {
        let i = s.to_ideal();
        let y = depth::lemma_colon_y(&i, fx.n_max);
        let f = depth::lemma_colon_factor(&i, fx.n_max);
        if y != Ok(IdentityCheck::Holds) || f != Ok(IdentityCheck::Holds) {
            failures.push(format!("{s}: {y:?} / {f:?}"));
        }
    }
    c.check(
        "F4.lemmas",
        failures.is_empty() && specs.len() == fx.samples,
        format!("{} specs, n ≤ {}, failures: {}", specs.len(), fx.n_max, summarize_failures(&failures)),
    );
}

fn summarize_failures(failures: &[String]) -> String {
    if failures.is_empty() {
        "none".into()
    } else {
        format!("{} (first: {})", failures.len(), failures[0])
    }
}

fn survey_checks(c: &mut Collector, fx: &SurveyFixture, jobs: usize) {
    let specs: Vec<_> = survey::enumerate(fx.dmax, fx.amax).into_iter().filter(|s| s.k() >= 1).collect();
    let opts = ClassifyOptions { horizon: Some(fx.horizon), ..Default::default() };
    let rows = survey::compute_rows(&specs, jobs, |s| survey::compute_row(s, &opts));
    let mut errors = Vec::new();
    let (mut depth_bad, mut cm_bad, mut crit_bad) = (Vec::new(), Vec::new(), Vec::new());
    for (s, r) in specs.iter().zip(&rows) {
        match r {
            Err(e) => errors.push(format!("{s}: {e}")),
            Ok(o) => {
                if !o.row.agree_depth {
                    depth_bad.push(s.to_string());
                }
                if !o.row.agree_cm {
                    cm_bad.push(s.to_string());
                }
                if !o.row.agree_criterion {
                    crit_bad.push(s.to_string());
                }
            }
        }
    }
    c.check("F5.ideals", specs.len() == fx.ideals, format!("{} ideals, expected {}", specs.len(), fx.ideals));
    c.check("F5.computed", errors.is_empty(), format!("errors: {}", summarize_failures(&errors)));
    c.check(
        "F5.depth_gr_eq_depth_fiber",
        depth_bad.is_empty(),
        format!("disagreements: {}", summarize_failures(&depth_bad)),
    );
    c.check("F5.cm_triple", cm_bad.is_empty(), format!("disagreements: {}", summarize_failures(&cm_bad)));
    c.check("F5.criterion", crit_bad.is_empty(), format!("disagreements: {}", summarize_failures(&crit_bad)));
}

fn concordance_checks(c: &mut Collector, fx: &ConcordanceFixture, family: &SurveyFixture) {
    let specs: Vec<_> = survey::enumerate(family.dmax, family.amax).into_iter().filter(|s| s.k() >= 1).collect();
    let mut rng = ChaCha20Rng::seed_from_u64(fx.seed);
    let sample = oracle::sample_specs(&mut rng, &specs, fx.samples);
    let mut agree = 0;
    let mut prime_bad = Vec::new();
    let mut disagreements = Vec::new();
    for (idx, s) in sample.iter().enumerate() {
        let l = s.to_ideal().split_common_factor().expect("nonzero").cofactor;
        let numeric = hilbert::summarize(&l, Some(fx.horizon)).map(|h| h.satisfies_e1_criterion());
        let verdicts: Vec<Option<RVerdict>> = fx
            .primes
            .iter()
            .map(|&p| monte_carlo_r_leq_1(&l, fx.trials, p, fx.seed.wrapping_add(idx as u64)).ok().map(|r| r.r_leq_1))
            .collect();
        let expected = match numeric {
            Ok(true) => Some(RVerdict::Yes),
            Ok(false) => Some(RVerdict::No),
            Err(_) => None,
        };
        if expected.is_some() && verdicts.first() == Some(&expected) {
            agree += 1;
        } else {
            disagreements.push(format!("{s}: e1 {expected:?} vs sampled {:?}", verdicts.first()));
        }
        if verdicts.windows(2).any(|w| w[0] != w[1]) {
            prime_bad.push(format!("{s}: {verdicts:?}"));
        }
    }
    c.check(
        "F6.e1_vs_sampling",
        agree == fx.samples,
        format!(
            "{agree}/{} agree (trials {}, p = {}); {}",
            fx.samples,
            fx.trials,
            fx.primes[0],
            summarize_failures(&disagreements)
        ),
    );
    c.check(
        "F6.prime_independence",
        prime_bad.is_empty(),
        format!("primes {:?}: {}", fx.primes, summarize_failures(&prime_bad)),
    );
}

fn oracle_checks(c: &mut Collector, fx: &OracleFixture, family: &SurveyFixture) {
    let mut rng = ChaCha20Rng::seed_from_u64(fx.seed);
    let (mut colength_bad, mut e0_bad) = (Vec::new(), Vec::new());
    for _ in 0..fx.samples {
        let gens = oracle::random_m_primary(&mut rng, fx.max_exp, 4);
        let i = oracle::ideal_of(&gens);
        let grid = oracle::grid_colength(&gens);
        if i.colength().ok() != grid {
            colength_bad.push(format!("{i}: {:?} vs grid {grid:?}", i.colength()));
        }
        let newton = hilbert::newton_e0(&i).ok().map(|e| e as i64);
        let fit = hilbert::summarize(&i, None).ok().map(|s| s.e0);
        if fit.is_none() || fit != newton {
            e0_bad.push(format!("{i}: fit {fit:?} vs newton {newton:?}"));
        }
    }
    c.check(
        "F7.colength_grid",
        colength_bad.is_empty(),
        format!("{} samples: {}", fx.samples, summarize_failures(&colength_bad)),
    );
    c.check("F7.e0_newton", e0_bad.is_empty(), format!("{} samples: {}", fx.samples, summarize_failures(&e0_bad)));

    let mut mu_bad = Vec::new();
    let lex: Vec<_> = survey::enumerate(family.dmax, family.amax).into_iter().filter(|s| s.k() >= 1).collect();
    for s in &lex {
        let mu = hilbert::mu_sequence(&s.to_ideal(), fx.mu_horizon);
        let k = u64::from(s.k());
        let formula = mu.iter().enumerate().all(|(n, &m)| m == (n as u64 + 1) * k + 1);
        let mut numerator = vec![1, k as i64 - 1];
        if k == 1 {
            numerator.pop();
        }
        if !formula || hilbert::fiber_numerator(&mu, 2) != Some(numerator) {
            mu_bad.push(s.to_string());
        }
    }
    c.check(
        "F7.mu_and_fiber_series",
        mu_bad.is_empty(),
        format!("{} ideals, n ≤ {}: {}", lex.len(), fx.mu_horizon, summarize_failures(&mu_bad)),
    );

    for (idx, h) in fx.hilbert.iter().enumerate() {
        let id = format!("F7.hilbert_fixture_{}", idx + 1);
        let i = match poly(&h.ideal) {
            Ok(i) => i,
            Err(e) => {
                c.check(&id, false, e);
                continue;
            }
        };
        let got = match &h.h {
            Some(expected) => {
                // the short prefix only pins the polynomial with a stabilisation run of one
                let seq = hilbert::hilbert_sequence(&i, expected.len() as u32).unwrap_or_default();
                let fit = hilbert::fit_coefficients_with_run(&seq, 1);
                let ok = &seq == expected
                    && fit.is_some_and(|f| f.e0 == h.e0 && f.e1 == h.e1 && h.e2.is_none_or(|e2| f.e2 == e2));
                (ok, format!("H = {seq:?}, fit {fit:?}"))
            }
            None => {
                let s = hilbert::summarize(&i, None);
                let ok = s.as_ref().is_ok_and(|s| s.e0 == h.e0 && s.e1 == h.e1 && h.e2.is_none_or(|e2| s.e2 == e2));
                (ok, format!("{}: {:?}", h.ideal, s.map(|s| (s.e0, s.e1, s.e2))))
            }
        };
        c.check(&id, got.0, got.1);
    }

    let mut md_bad = Vec::new();
    for d in 1..=fx.maximal_powers {
        let md = MonomialIdeal2::maximal().power(d);
        let s = hilbert::summarize(&md, None).map(|s| (s.e0, s.e1, s.e2));
        let d = i64::from(d);
        if s != Ok((d * d, d * (d - 1) / 2, 0)) {
            md_bad.push(format!("M^{d}: {s:?}"));
        }
    }
    c.check(
        "F7.maximal_powers",
        md_bad.is_empty(),
        format!("M^d for d ≤ {}: {}", fx.maximal_powers, summarize_failures(&md_bad)),
    );
}

fn transfer_checks(c: &mut Collector, fx: &TransferFixture) {
    use rand::Rng;
    let mut rng = ChaCha20Rng::seed_from_u64(fx.seed);
    let (mut identity_bad, mut prop_bad) = (Vec::new(), Vec::new());
    for _ in 0..fx.samples {
        let l = oracle::ideal_of(&oracle::random_m_primary(&mut rng, fx.max_exp, 3));
        let m = rng.gen_range(1..=fx.m_max);
        let i = l.shift(Monomial::new(m, 0));
        for n in 0..=fx.n_max {
            let lhs = i.power(n + 1).colon(&i).expect("nonzero");
            let rhs = l.power(n + 1).colon(&l).expect("nonzero").shift(Monomial::new(m * n, 0));
            if lhs != rhs {
                identity_bad.push(format!("{l}, m = {m}, n = {n}"));
                break;
            }
        }
        if depth::prop_inequality_check(&l, m, fx.n_max) != Ok(true) {
            prop_bad.push(format!("{l}, m = {m}"));
        }
    }
    c.check(
        "F8.colon_transfer",
        identity_bad.is_empty(),
        format!("{} pairs, n ≤ {}: {}", fx.samples, fx.n_max, summarize_failures(&identity_bad)),
    );
    c.check(
        "F8.probe_transfer",
        prop_bad.is_empty(),
        format!("{} pairs: {}", fx.samples, summarize_failures(&prop_bad)),
    );
}
