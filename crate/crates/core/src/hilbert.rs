//! Hilbert–Samuel data of `m`-primary monomial ideals.
//!
//! The Hilbert function `n ↦ λ(R/I^n)` is read off the staircases of the
//! powers. Its polynomial `e0·C(n+1,2) − e1·n + e2` is fitted on the tail
//! where second differences stabilize, and `e0` is certified against the
//! Newton polygon.

use serde::{Deserialize, Serialize};

use crate::error::HilbertError;
use crate::staircase::{MonomialIdeal2, PowerTable};

/// Equal second differences required at the end of the Hilbert function.
pub const DEFAULT_MIN_RUN: usize = 3;
/// Largest horizon reached by adaptive doubling.
pub const HORIZON_CAP: u32 = 64;
/// Vanishing trailing coefficients required of a fiber-series numerator.
pub const NUMERATOR_ZERO_WINDOW: usize = 3;

/// Coefficients of `P(n) = e0·C(n+1,2) − e1·n + e2` and the first `n` from
/// which the observed Hilbert function agrees with `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertFit {
    pub e0: i64,
    pub e1: i64,
    pub e2: i64,
    pub n_stab: u32,
}

impl HilbertFit {
    pub fn eval(&self, n: u32) -> i64 {
        let n = i64::from(n);
        self.e0 * n * (n + 1) / 2 - self.e1 * n + self.e2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSummary {
    /// `λ(R/L^n)` for `n = 1..=horizon`, `L` the `m`-primary factor.
    pub h: Vec<u64>,
    pub e0: i64,
    pub e1: i64,
    pub e2: i64,
    pub n_stab: u32,
    /// `μ(I^n)` for `n = 1..=horizon`.
    pub mu: Vec<u64>,
    /// `None` when the numerator is not determined within the horizon.
    pub fiber_numerator: Option<Vec<i64>>,
    pub spread: u32,
    pub height: u32,
    pub horizon: u32,
}

impl HilbertSummary {
    /// `λ(R/L)`.
    pub fn colength(&self) -> u64 {
        self.h[0]
    }

    /// `e1 = e0 − λ(R/L)`, the numerical form of `L² = JL`.
    pub fn satisfies_e1_criterion(&self) -> bool {
        self.e1 == self.e0 - self.colength() as i64
    }

    pub fn fit(&self) -> HilbertFit {
        HilbertFit { e0: self.e0, e1: self.e1, e2: self.e2, n_stab: self.n_stab }
    }
}

pub fn hilbert_sequence(ideal: &MonomialIdeal2, horizon: u32) -> Result<Vec<u64>, HilbertError> {
    hilbert_sequence_in(&PowerTable::new(ideal.clone()), horizon)
}

pub fn hilbert_sequence_in(powers: &PowerTable, horizon: u32) -> Result<Vec<u64>, HilbertError> {
    if !powers.base().is_m_primary() {
        return Err(HilbertError::NotMPrimary);
    }
    if horizon < 3 {
        return Err(HilbertError::HorizonTooSmall(horizon));
    }
    (1..=horizon).map(|n| Ok(powers.get(n).colength()?)).collect()
}

/// Fits the Hilbert polynomial on the tail of `h` (entry `i` is `n = i+1`).
pub fn fit_coefficients(h: &[u64]) -> Option<HilbertFit> {
    fit_coefficients_with_run(h, DEFAULT_MIN_RUN)
}

/// As [`fit_coefficients`], requiring at least `min_run ≥ 1` equal second
/// differences at the end of `h`.
pub fn fit_coefficients_with_run(h: &[u64], min_run: usize) -> Option<HilbertFit> {
    let min_run = min_run.max(1);
    if h.len() < 3 {
        return None;
    }
    let h: Vec<i64> = h.iter().map(|&v| i64::try_from(v).ok()).collect::<Option<_>>()?;
    let d2: Vec<i64> = h.windows(3).map(|w| w[2] - 2 * w[1] + w[0]).collect();
    let c = *d2.last()?;
    let run = d2.iter().rev().take_while(|&&v| v == c).count();
    if run < min_run {
        return None;
    }
    let start = d2.len() - run;
    let n = start as i64 + 1;
    let e0 = c;
    let e1 = e0 * (n + 1) - (h[start + 1] - h[start]);
    let e2 = h[start] - e0 * n * (n + 1) / 2 + e1 * n;
    let fit = HilbertFit { e0, e1, e2, n_stab: start as u32 + 1 };
    let agrees = (start..h.len()).all(|i| fit.eval(i as u32 + 1) == h[i]);
    agrees.then_some(fit)
}

/// Twice the area under the lower convex hull of the generator exponents,
/// i.e. the multiplicity of an `m`-primary monomial ideal.
pub fn newton_e0(ideal: &MonomialIdeal2) -> Result<u64, HilbertError> {
    if !ideal.is_m_primary() {
        return Err(HilbertError::NotMPrimary);
    }
    let pts: Vec<(i128, i128)> = ideal.gens().iter().rev().map(|m| (i128::from(m.a), i128::from(m.b))).collect();
    let mut hull: Vec<(i128, i128)> = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2 {
            let (o, q) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (q.0 - o.0) * (p.1 - o.1) - (q.1 - o.1) * (p.0 - o.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let twice: i128 = hull.windows(2).map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1)).sum();
    u64::try_from(twice).map_err(|_| HilbertError::Staircase(crate::StaircaseError::ExponentOverflow))
}

/// `μ(I^n)` for `n = 1..=horizon`.
pub fn mu_sequence(ideal: &MonomialIdeal2, horizon: u32) -> Vec<u64> {
    mu_sequence_in(&PowerTable::new(ideal.clone()), horizon)
}

pub fn mu_sequence_in(powers: &PowerTable, horizon: u32) -> Vec<u64> {
    (1..=horizon).map(|n| powers.get(n).mu() as u64).collect()
}

/// Numerator of the fiber-cone Hilbert series: `Σ μ(I^n) tⁿ · (1 − t)^spread`
/// truncated to the observed window, with `μ(I^0) = 1`.
///
/// Returns the coefficients without trailing zeros, or `None` when fewer
/// than [`NUMERATOR_ZERO_WINDOW`] trailing coefficients vanish.
pub fn fiber_numerator(mu_seq: &[u64], spread: u32) -> Option<Vec<i64>> {
    let series: Vec<i64> = std::iter::once(1i64)
        .chain(mu_seq.iter().map(|&v| i64::try_from(v).ok()).collect::<Option<Vec<_>>>()?)
        .collect();
    let mut coeffs = series;
    for _ in 0..spread {
        for j in (1..coeffs.len()).rev() {
            coeffs[j] -= coeffs[j - 1];
        }
    }
    let last_nonzero = coeffs.iter().rposition(|&c| c != 0)?;
    if coeffs.len() - 1 - last_nonzero < NUMERATOR_ZERO_WINDOW {
        return None;
    }
    coeffs.truncate(last_nonzero + 1);
    Some(coeffs)
}

/// 1 for principal ideals, 2 otherwise.
pub fn analytic_spread(ideal: &MonomialIdeal2) -> Result<u32, HilbertError> {
    let split = ideal.split_common_factor()?;
    Ok(if split.cofactor.is_unit() { 1 } else { 2 })
}

/// `max(8, 2·ord(I) + 4)`.
pub fn default_horizon(ideal: &MonomialIdeal2) -> u32 {
    let ord = ideal.ord().unwrap_or(0).min(u64::from(HORIZON_CAP));
    (2 * ord as u32 + 4).max(8)
}

/// Hilbert data of a nonzero ideal `I = z·L` with `L` `m`-primary.
///
/// `h`, `e0..e2` describe `L`; `mu`, `spread` and `height` describe `I`
/// (the generator counts of `I^n` and `L^n` coincide). When the fit at the
/// given horizon fails, or disagrees with [`newton_e0`], the horizon is
/// doubled once (capped at [`HORIZON_CAP`]).
pub fn summarize(ideal: &MonomialIdeal2, horizon: Option<u32>) -> Result<HilbertSummary, HilbertError> {
    let split = ideal.split_common_factor()?;
    let l = split.cofactor;
    if !l.is_m_primary() {
        return Err(HilbertError::NotMPrimary);
    }
    let powers = PowerTable::new(l.clone());
    summarize_in(&powers, ideal.height(), horizon)
}

/// [`summarize`] over a precomputed power table of the `m`-primary factor.
pub fn summarize_in(powers: &PowerTable, height: u32, horizon: Option<u32>) -> Result<HilbertSummary, HilbertError> {
    let l = powers.base();
    let first = horizon.unwrap_or_else(|| default_horizon(&l));
    if first < 3 {
        return Err(HilbertError::HorizonTooSmall(first));
    }
    let newton = newton_e0(&l)? as i64;
    let lambda = l.colength()? as i64;
    let mut attempts = vec![first];
    let doubled = first.saturating_mul(2).min(HORIZON_CAP);
    if doubled > first {
        attempts.push(doubled);
    }
    for n in attempts {
        let h = hilbert_sequence_in(powers, n)?;
        let Some(fit) = fit_coefficients(&h) else { continue };
        if fit.e0 != newton || fit.e1 < fit.e0 - lambda {
            continue;
        }
        let mu = mu_sequence_in(powers, n);
        let fiber_numerator = fiber_numerator(&mu, 2);
        return Ok(HilbertSummary {
            h,
            e0: fit.e0,
            e1: fit.e1,
            e2: fit.e2,
            n_stab: fit.n_stab,
            mu,
            fiber_numerator,
            spread: 2,
            height,
            horizon: n,
        });
    }
    Err(HilbertError::Inconclusive { horizon: first.max(doubled) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::staircase::{LexSpec, Monomial};

    fn lex(d: u32, a: &[u32]) -> MonomialIdeal2 {
        LexSpec::new(d, a.to_vec()).unwrap().to_ideal()
    }

    #[test]
    fn hilbert_sequences() {
        assert_eq!(hilbert_sequence(&lex(2, &[1, 3]), 3), Ok(vec![4, 13, 27]));
        assert_eq!(hilbert_sequence(&MonomialIdeal2::maximal(), 3), Ok(vec![1, 3, 6]));
        assert_eq!(hilbert_sequence(&lex(3, &[1, 2, 6]), 2), Err(HilbertError::HorizonTooSmall(2)));
        assert_eq!(hilbert_sequence(&lex(3, &[1, 2, 6]), 3).unwrap()[..2], [9, 30]);
        assert_eq!(hilbert_sequence(&lex(3, &[1]), 4), Err(HilbertError::NotMPrimary));
    }

    #[test]
    fn fits() {
        let fit = fit_coefficients_with_run(&[4, 13, 27], 1).unwrap();
        assert_eq!(fit, HilbertFit { e0: 5, e1: 1, e2: 0, n_stab: 1 });
        assert_eq!(fit_coefficients(&[4, 13, 27]), None);

        let binom: Vec<u64> = (1..=8).map(|n| n * (n + 1) / 2).collect();
        assert_eq!(fit_coefficients(&binom), Some(HilbertFit { e0: 1, e1: 0, e2: 0, n_stab: 1 }));

        for d in 1..=5u64 {
            let h: Vec<u64> = (1..=8).map(|n| d * n * (d * n + 1) / 2).collect();
            let fit = fit_coefficients(&h).unwrap();
            assert_eq!((fit.e0, fit.e1, fit.e2), ((d * d) as i64, (d * (d - 1) / 2) as i64, 0));
        }
        // second difference changes at the end
        assert_eq!(fit_coefficients(&[1, 3, 6, 10, 15, 22]), None);
    }

    #[test]
    fn newton_multiplicity() {
        assert_eq!(newton_e0(&lex(2, &[1, 3])), Ok(5));
        assert_eq!(newton_e0(&lex(3, &[1, 2, 6])), Ok(12));
        for d in 1..6 {
            assert_eq!(newton_e0(&MonomialIdeal2::maximal().power(d)), Ok(u64::from(d * d)));
        }
        assert_eq!(newton_e0(&lex(3, &[1])), Err(HilbertError::NotMPrimary));
    }

    #[test]
    fn fiber_numerators() {
        assert_eq!(fiber_numerator(&[1; 8], 1), Some(vec![1]));
        let l = lex(4, &[1, 2, 3, 8]);
        assert_eq!(mu_sequence(&l, 5), vec![5, 9, 13, 17, 21]);
        assert_eq!(fiber_numerator(&mu_sequence(&l, 8), 2), Some(vec![1, 3]));
        let l = lex(6, &[2, 5]);
        assert_eq!(fiber_numerator(&mu_sequence(&l, 8), 2), Some(vec![1, 1]));
        // too short a window to see the trailing zeros
        assert_eq!(fiber_numerator(&[3, 5], 2), None);
    }

    #[test]
    fn spreads() {
        assert_eq!(analytic_spread(&MonomialIdeal2::principal(Monomial::new(5, 0))), Ok(1));
        assert_eq!(analytic_spread(&lex(5, &[3, 7, 9])), Ok(2));
        assert_eq!(analytic_spread(&MonomialIdeal2::normalize([Monomial::new(3, 0), Monomial::new(2, 1)])), Ok(2));
        assert!(analytic_spread(&MonomialIdeal2::zero()).is_err());
    }

    #[test]
    fn summaries() {
        let s = summarize(&lex(2, &[1, 3]), Some(8)).unwrap();
        assert_eq!(&s.h[..3], &[4, 13, 27]);
        assert_eq!((s.e0, s.e1, s.e2), (5, 1, 0));
        assert!(s.satisfies_e1_criterion());
        assert_eq!(s.fiber_numerator, Some(vec![1, 1]));
        assert_eq!((s.spread, s.height), (2, 2));

        let s = summarize(&lex(3, &[1, 2, 6]), None).unwrap();
        assert_eq!((s.e0, s.e1), (12, 3));
        assert_eq!(s.horizon, 10);

        let s = summarize(&lex(5, &[3, 7, 9]), Some(8)).unwrap();
        assert_eq!(s.height, 1);
        assert_eq!(s.mu, (1..=8).map(|n| 3 * n + 1).collect::<Vec<u64>>());
        assert_eq!(summarize(&lex(5, &[]), None), Err(HilbertError::NotMPrimary));
    }
}
