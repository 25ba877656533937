// SPDX-License-Identifier: MIT OR Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{score, CostModel, LocationHistory, ResidenceHistory};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub per_day_accuracy: f64,
    pub true_moves: usize,
    pub inferred_moves: usize,
    pub matched_moves: usize,
    /// Inferred move day minus true move day, per matched move.
    pub lags: Vec<i64>,
    pub eq1_score_inferred: Option<f64>,
    pub eq1_score_truth: Option<f64>,
}

impl EvalReport {
    /// Matched share of inferred moves; 1 when nothing was inferred.
    pub fn precision(&self) -> f64 {
        if self.inferred_moves == 0 {
            1.0
        } else {
            self.matched_moves as f64 / self.inferred_moves as f64
        }
    }

    /// Matched share of true moves; 1 when there were none.
    pub fn recall(&self) -> f64 {
        if self.true_moves == 0 {
            1.0
        } else {
            self.matched_moves as f64 / self.true_moves as f64
        }
    }
}

/// Pairs moves in chronological order: each true move takes the earliest
/// unclaimed inferred move within `tolerance` units, skipping inferred moves
/// that are already too early.
fn match_moves(truth: &[usize], inferred: &[usize], tolerance: usize) -> Vec<i64> {
    let mut lags = Vec::new();
    let mut j = 0;
    for &t in truth {
        while j < inferred.len() && inferred[j] + tolerance < t {
            j += 1;
        }
        if j < inferred.len() && inferred[j] <= t + tolerance {
            lags.push(inferred[j] as i64 - t as i64);
            j += 1;
        }
    }
    lags
}

pub fn evaluate(
    inferred: &ResidenceHistory,
    truth: &ResidenceHistory,
    match_tolerance: usize,
) -> Result<EvalReport> {
    if inferred.len() != truth.len() {
        return Err(Error::HistoryLengthMismatch {
            expected: truth.len(),
            actual: inferred.len(),
        });
    }
    let n = truth.len();
    let agree = inferred
        .to_dense()
        .into_iter()
        .zip(truth.to_dense())
        .filter(|(a, b)| a == b)
        .count();
    let true_moves = truth.moves();
    let inferred_moves = inferred.moves();
    let lags = match_moves(&true_moves, &inferred_moves, match_tolerance);
    Ok(EvalReport {
        per_day_accuracy: if n == 0 { 1.0 } else { agree as f64 / n as f64 },
        true_moves: true_moves.len(),
        inferred_moves: inferred_moves.len(),
        matched_moves: lags.len(),
        lags,
        eq1_score_inferred: None,
        eq1_score_truth: None,
    })
}

/// [`evaluate`] plus the default-model scores of both histories against
/// the observed trace.
pub fn evaluate_observed(
    inferred: &ResidenceHistory,
    truth: &ResidenceHistory,
    observed: &LocationHistory,
    match_tolerance: usize,
) -> Result<EvalReport> {
    let mut report = evaluate(inferred, truth, match_tolerance)?;
    let cost = CostModel::default();
    report.eq1_score_inferred = Some(score(observed, inferred, &cost)?);
    report.eq1_score_truth = Some(score(observed, truth, &cost)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(parts: &[(u32, usize)]) -> ResidenceHistory {
        ResidenceHistory::from_lengths(parts).unwrap()
    }

    #[test]
    fn identity() {
        let t = r(&[(0, 46), (1, 44)]);
        let e = evaluate(&t, &t, 0).unwrap();
        assert_eq!(e.per_day_accuracy, 1.0);
        assert_eq!(e.matched_moves, 1);
        assert_eq!(e.lags, vec![0]);
        assert_eq!((e.precision(), e.recall()), (1.0, 1.0));
    }

    #[test]
    fn modal_detection_lag() {
        let truth = r(&[(0, 46), (1, 44)]);
        let modal = r(&[(0, 60), (1, 30)]);
        let e = evaluate(&modal, &truth, 14).unwrap();
        assert_eq!(e.lags, vec![14]);
        assert_eq!(e.per_day_accuracy, 76.0 / 90.0);
        let tight = evaluate(&modal, &truth, 13).unwrap();
        assert_eq!(tight.matched_moves, 0);
        assert_eq!(tight.recall(), 0.0);
    }

    #[test]
    fn greedy_matching_is_chronological() {
        assert_eq!(match_moves(&[10, 20], &[8, 12, 19], 3), vec![-2, -1]);
        assert_eq!(match_moves(&[10], &[1, 2, 3], 3), Vec::<i64>::new());
        assert_eq!(match_moves(&[10, 11], &[10], 5), vec![0]);
    }

    #[test]
    fn observed_scores() {
        let h = LocationHistory::from_runs(&[(0, 16), (1, 14), (0, 16), (1, 44)], 2).unwrap();
        let truth = r(&[(0, 46), (1, 44)]);
        let e = evaluate_observed(&r(&[(0, 60), (1, 30)]), &truth, &h, 14).unwrap();
        assert_eq!(e.eq1_score_truth, Some(14.0));
        assert_eq!(e.eq1_score_inferred, Some(28.0));
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(
            evaluate(&r(&[(0, 3)]), &r(&[(0, 4)]), 0),
            Err(Error::HistoryLengthMismatch { .. })
        ));
    }
}
