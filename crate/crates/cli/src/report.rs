//! Serializable command results and their text renderings.

use serde::Serialize;

use lexdepth_core::depth::{DepthVerdict, FiberProbe, Flag, GrProbe, Witness};
use lexdepth_core::hilbert::HilbertSummary;
use lexdepth_core::reduction::{PairReport, ReductionReport};
use lexdepth_core::{LexSpec, MonomialIdeal2};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LexJson {
    pub d: u32,
    pub k: u32,
    pub a: Vec<u32>,
}

impl From<&LexSpec> for LexJson {
    fn from(s: &LexSpec) -> Self {
        LexJson { d: s.d(), k: s.k(), a: s.a().to_vec() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorJson {
    pub x: u32,
    pub y: u32,
}

/// Facts shared by the `classify` report and survey rows. The Hilbert
/// numbers describe the `m`-primary factor `L` of `I = x^m·y^c·L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealFacts {
    pub canonical: String,
    pub factor: FactorJson,
    pub mu: usize,
    pub ord: u64,
    pub contracted: bool,
    pub e0: i64,
    pub e1: i64,
    pub e2: i64,
    pub colength: u64,
    pub spread: u32,
    pub height: u32,
}

impl IdealFacts {
    pub fn new(ideal: &MonomialIdeal2, summary: Option<&HilbertSummary>) -> Self {
        let split = ideal.split_common_factor().expect("nonzero ideal");
        let l = &split.cofactor;
        let contracted = l.is_unit() || l.ord().is_ok_and(|o| l.mu() as u64 == o + 1);
        let (e0, e1, e2, colength) = match summary {
            Some(s) => (s.e0, s.e1, s.e2, s.colength()),
            None => (0, 0, 0, l.colength().unwrap_or(0)),
        };
        IdealFacts {
            canonical: ideal.to_string(),
            factor: FactorJson { x: split.x, y: split.y },
            mu: ideal.mu(),
            ord: ideal.ord().expect("nonzero ideal"),
            contracted,
            e0,
            e1,
            e2,
            colength,
            spread: if l.is_unit() { 1 } else { 2 },
            height: ideal.height(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassifyReport {
    pub input: String,
    pub canonical: String,
    pub lex: LexJson,
    pub factor: FactorJson,
    pub mu: usize,
    pub ord: u64,
    pub contracted: bool,
    pub e0: i64,
    pub e1: i64,
    pub e2: i64,
    pub colength: u64,
    pub spread: u32,
    pub height: u32,
    pub cm_gr: bool,
    pub cm_fiber: bool,
    pub cm_rees: bool,
    pub r_leq_1: String,
    pub depth_gr: u32,
    pub depth_fiber: u32,
    pub depth_rees: u32,
    pub horizon: u32,
    pub witness_gr: Option<Witness>,
    pub witness_fiber: Option<Witness>,
    pub flags: Vec<Flag>,
}

impl ClassifyReport {
    pub fn new(input: &str, ideal: &MonomialIdeal2, spec: &LexSpec, v: &DepthVerdict) -> Self {
        let f = IdealFacts::new(ideal, v.hilbert.as_ref());
        ClassifyReport {
            input: input.to_string(),
            canonical: f.canonical,
            lex: spec.into(),
            factor: f.factor,
            mu: f.mu,
            ord: f.ord,
            contracted: f.contracted,
            e0: f.e0,
            e1: f.e1,
            e2: f.e2,
            colength: f.colength,
            spread: f.spread,
            height: f.height,
            cm_gr: v.cm_gr,
            cm_fiber: v.cm_fiber,
            cm_rees: v.cm_rees,
            r_leq_1: v.r_leq_1.to_string(),
            depth_gr: v.depth_gr,
            depth_fiber: v.depth_fiber,
            depth_rees: v.depth_rees,
            horizon: v.horizon,
            witness_gr: v.witness_gr,
            witness_fiber: v.witness_fiber,
            flags: v.flags.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantsReport {
    pub input: String,
    pub canonical: String,
    pub factor: FactorJson,
    pub cofactor: String,
    pub mu: usize,
    pub ord: u64,
    pub contracted: bool,
    pub height: u32,
    pub spread: u32,
    pub colength: u64,
    pub e0: i64,
    pub e1: i64,
    pub e2: i64,
    pub n_stab: u32,
    pub horizon: u32,
    pub hilbert: Vec<u64>,
    pub mu_seq: Vec<u64>,
    pub fiber_numerator: Option<Vec<i64>>,
    pub e1_criterion: bool,
}

impl InvariantsReport {
    pub fn new(input: &str, ideal: &MonomialIdeal2, s: &HilbertSummary) -> Self {
        let f = IdealFacts::new(ideal, Some(s));
        let cofactor = ideal.split_common_factor().expect("nonzero ideal").cofactor.to_string();
        InvariantsReport {
            input: input.to_string(),
            canonical: f.canonical,
            factor: f.factor,
            cofactor,
            mu: f.mu,
            ord: f.ord,
            contracted: f.contracted,
            height: f.height,
            spread: f.spread,
            colength: f.colength,
            e0: s.e0,
            e1: s.e1,
            e2: s.e2,
            n_stab: s.n_stab,
            horizon: s.horizon,
            hilbert: s.h.clone(),
            mu_seq: s.mu.clone(),
            fiber_numerator: s.fiber_numerator.clone(),
            e1_criterion: s.satisfies_e1_criterion(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeJson {
    pub status: &'static str,
    pub witness: Option<Witness>,
    pub strong_failure_at: Option<u32>,
}

impl From<&GrProbe> for ProbeJson {
    fn from(p: &GrProbe) -> Self {
        match p {
            GrProbe::Zero(w) => ProbeJson { status: "zero", witness: Some(*w), strong_failure_at: None },
            GrProbe::PositiveUpToHorizon { .. } => {
                ProbeJson { status: "positive-up-to-horizon", witness: None, strong_failure_at: None }
            }
        }
    }
}

impl From<&FiberProbe> for ProbeJson {
    fn from(p: &FiberProbe) -> Self {
        match p {
            FiberProbe::Zero(w) => ProbeJson { status: "zero", witness: Some(*w), strong_failure_at: None },
            FiberProbe::PositiveUpToHorizon { .. } => {
                ProbeJson { status: "positive-up-to-horizon", witness: None, strong_failure_at: None }
            }
            FiberProbe::Inconclusive { strong_failure_at, .. } => {
                ProbeJson { status: "inconclusive", witness: None, strong_failure_at: Some(*strong_failure_at) }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DepthsReport {
    pub input: String,
    pub canonical: String,
    pub horizon: u32,
    pub gr: ProbeJson,
    pub fiber: ProbeJson,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionJson {
    pub input: String,
    pub canonical: String,
    pub cofactor: String,
    pub e0: u64,
    pub trials: u32,
    pub prime: u64,
    pub seed: u64,
    pub r_leq_1: String,
    pub pairs: Vec<PairReport>,
}

impl ReductionJson {
    pub fn new(input: &str, ideal: &MonomialIdeal2, cofactor: &MonomialIdeal2, e0: u64, r: &ReductionReport) -> Self {
        ReductionJson {
            input: input.to_string(),
            canonical: ideal.to_string(),
            cofactor: cofactor.to_string(),
            e0,
            trials: r.pairs.len() as u32,
            prime: r.prime,
            seed: r.seed,
            r_leq_1: r.r_leq_1.to_string(),
            pairs: r.pairs.clone(),
        }
    }
}

/// Renders a report as `key  value` lines, one per top-level field, with
/// nested values in compact JSON.
pub fn text_table<T: Serialize>(report: &T) -> String {
    let value = serde_json::to_value(report).expect("serializable report");
    let serde_json::Value::Object(map) = value else { return format!("{value}\n") };
    let width = map.keys().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in &map {
        let shown = match v {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Null => "-".to_string(),
            other => other.to_string(),
        };
        out.push_str(&format!("{k:width$}  {shown}\n"));
    }
    out
}
