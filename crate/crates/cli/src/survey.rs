//! Exhaustive lex-segment survey.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use lexdepth_core::depth::{classify, ClassifyOptions, DepthVerdict, Flag};
use lexdepth_core::{DepthError, LexSpec};

use crate::report::IdealFacts;

/// Every `LexSpec` with `d ≤ dmax`, `0 ≤ k ≤ d` and `a_k ≤ amax`, in
/// lexicographic order of `(d, k, a)`.
pub fn enumerate(dmax: u32, amax: u32) -> Vec<LexSpec> {
    fn choose(from: u32, to: u32, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        for v in from..=to {
            if to - v + 1 < k {
                break;
            }
            prefix.push(v);
            choose(v + 1, to, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut specs = Vec::new();
    for d in 1..=dmax {
        for k in 0..=d.min(amax) {
            let mut seqs = Vec::new();
            choose(1, amax, k, &mut Vec::new(), &mut seqs);
            specs.extend(seqs.into_iter().map(|a| LexSpec::new(d, a).expect("valid by construction")));
        }
    }
    specs
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub d: u32,
    pub k: u32,
    /// The `a`-sequence, space separated.
    pub a_seq: String,
    pub mu: usize,
    pub ord: u64,
    pub contracted: bool,
    pub e0: i64,
    pub e1: i64,
    pub colength: u64,
    pub cm: bool,
    pub depth_gr: u32,
    pub depth_fiber: u32,
    pub r_leq_1: String,
    pub horizon: u32,
    pub agree_depth: bool,
    pub agree_cm: bool,
    pub agree_criterion: bool,
}

impl SurveyRow {
    pub fn agrees(&self) -> bool {
        self.agree_depth && self.agree_cm && self.agree_criterion
    }
}

/// A row plus whether any part of it was inconclusive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowOutcome {
    pub row: SurveyRow,
    pub inconclusive: bool,
}

pub fn row_from_verdict(spec: &LexSpec, v: &DepthVerdict) -> RowOutcome {
    let ideal = spec.to_ideal();
    let f = IdealFacts::new(&ideal, v.hilbert.as_ref());
    let a_seq = spec.a().iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    let agree_depth = (spec.k() == 0 || v.depth_gr == v.depth_fiber) && !v.flags.contains(&Flag::CmProbeConflict);
    let row = SurveyRow {
        d: spec.d(),
        k: spec.k(),
        a_seq,
        mu: f.mu,
        ord: f.ord,
        contracted: f.contracted,
        e0: f.e0,
        e1: f.e1,
        colength: f.colength,
        cm: v.cm_gr,
        depth_gr: v.depth_gr,
        depth_fiber: v.depth_fiber,
        r_leq_1: v.r_leq_1.to_string(),
        horizon: v.horizon,
        agree_depth,
        agree_cm: v.cm_gr == v.cm_fiber && v.cm_fiber == v.cm_rees,
        agree_criterion: v.criterion_agrees(),
    };
    RowOutcome { row, inconclusive: v.is_inconclusive() }
}

pub fn compute_row(spec: &LexSpec, opts: &ClassifyOptions) -> Result<RowOutcome, DepthError> {
    let v = classify(&spec.to_ideal(), opts)?;
    Ok(row_from_verdict(spec, &v))
}

/// Computes rows with `jobs` workers; results keep the order of `specs`.
pub fn compute_rows<F>(specs: &[LexSpec], jobs: usize, f: F) -> Vec<Result<RowOutcome, DepthError>>
where
    F: Fn(&LexSpec) -> Result<RowOutcome, DepthError> + Sync,
{
    if jobs <= 1 {
        return specs.iter().map(&f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    pool.install(|| specs.par_iter().map(&f).collect())
}

pub fn write_csv<W: Write>(rows: &[SurveyRow], out: W) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    if rows.is_empty() {
        w.write_record(HEADER)?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()
}

pub const HEADER: [&str; 17] = [
    "d",
    "k",
    "a_seq",
    "mu",
    "ord",
    "contracted",
    "e0",
    "e1",
    "colength",
    "cm",
    "depth_gr",
    "depth_fiber",
    "r_leq_1",
    "horizon",
    "agree_depth",
    "agree_cm",
    "agree_criterion",
];

/// Whitespace-aligned table with the CSV columns.
pub fn write_text<W: Write>(rows: &[SurveyRow], mut out: W) -> io::Result<()> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    let text = String::from_utf8(buf).expect("utf-8");
    let cells: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    let mut widths = vec![0; HEADER.len()];
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    for row in &cells {
        let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        writeln!(out, "{}", line.join("  ").trim_end())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: u32, k: u32) -> usize {
        (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
    }

    #[test]
    fn enumeration_counts_and_order() {
        for (dmax, amax) in [(3, 4), (6, 9), (4, 2)] {
            let expected: usize = (1..=dmax).map(|d| (0..=d.min(amax)).map(|k| binomial(amax, k)).sum::<usize>()).sum();
            let specs = enumerate(dmax, amax);
            assert_eq!(specs.len(), expected);
            let keys: Vec<(u32, u32, Vec<u32>)> = specs.iter().map(|s| (s.d(), s.k(), s.a().to_vec())).collect();
            let mut sorted = keys.clone();
            sorted.sort();
            assert_eq!(keys, sorted);
        }
        let first: Vec<String> = enumerate(2, 2).iter().map(|s| s.to_string()).collect();
        assert_eq!(first, ["lex(1;)", "lex(1; 1)", "lex(1; 2)", "lex(2;)", "lex(2; 1)", "lex(2; 2)", "lex(2; 1,2)"]);
    }

    #[test]
    fn csv_shape() {
        let opts = ClassifyOptions { horizon: Some(6), ..Default::default() };
        let rows: Vec<SurveyRow> = enumerate(2, 2).iter().map(|s| compute_row(s, &opts).unwrap().row).collect();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), HEADER.join(","));
        assert_eq!(lines.count(), rows.len());
        assert!(rows.iter().all(SurveyRow::agrees));
        assert!(text.contains("\n2,2,1 2,3,2,true,"));
    }
}
