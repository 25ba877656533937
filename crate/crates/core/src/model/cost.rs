// SPDX-License-Identifier: MIT OR Apache-2.0

use std::fmt;
use std::sync::Arc;

use super::{LocationHistory, LocationId, Observation, ResidenceHistory, TimeWarpedHistory};
use crate::error::{Error, Result};

type DayCostFn = dyn Fn(LocationId, Observation) -> f64 + Send + Sync;
type PenaltyFn = dyn Fn(usize) -> f64 + Send + Sync;

/// Cost of residing at a location on a unit with a given observation.
#[derive(Clone, Default)]
pub enum DayCost {
    /// 1 when a location other than the residence was observed, else 0.
    #[default]
    Mismatch,
    Custom(Arc<DayCostFn>),
}

/// Cost charged once per residence segment as a function of its duration.
#[derive(Clone, Default)]
pub enum SegmentPenalty {
    #[default]
    Zero,
    /// `per_segment + per_unit * duration`.
    Affine {
        per_segment: f64,
        per_unit: f64,
    },
    Custom(Arc<PenaltyFn>),
}

impl fmt::Debug for DayCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DayCost::Mismatch => f.write_str("Mismatch"),
            DayCost::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl fmt::Debug for SegmentPenalty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SegmentPenalty::Zero => f.write_str("Zero"),
            SegmentPenalty::Affine {
                per_segment,
                per_unit,
            } => f
                .debug_struct("Affine")
                .field("per_segment", per_segment)
                .field("per_unit", per_unit)
                .finish(),
            SegmentPenalty::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// Objective used by every solver: summed per-unit costs plus a penalty per
/// residence segment. Both parts must be non-negative.
#[derive(Clone, Debug, Default)]
pub struct CostModel {
    pub day: DayCost,
    pub penalty: SegmentPenalty,
}

impl CostModel {
    pub fn with_day_cost<F>(mut self, f: F) -> Self
    where
        F: Fn(LocationId, Observation) -> f64 + Send + Sync + 'static,
    {
        self.day = DayCost::Custom(Arc::new(f));
        self
    }

    pub fn with_penalty(mut self, penalty: SegmentPenalty) -> Self {
        self.penalty = penalty;
        self
    }

    #[inline]
    pub fn day_cost(&self, residence: LocationId, observed: Observation) -> f64 {
        match &self.day {
            DayCost::Mismatch => match observed {
                Observation::Seen(id) if id != residence => 1.0,
                _ => 0.0,
            },
            DayCost::Custom(f) => f(residence, observed),
        }
    }

    #[inline]
    pub fn segment_penalty(&self, duration: usize) -> f64 {
        match &self.penalty {
            SegmentPenalty::Zero => 0.0,
            SegmentPenalty::Affine {
                per_segment,
                per_unit,
            } => per_segment + per_unit * duration as f64,
            SegmentPenalty::Custom(f) => f(duration),
        }
    }
}

/// Total cost of `residence` against `history`.
pub fn score(
    history: &LocationHistory,
    residence: &ResidenceHistory,
    cost: &CostModel,
) -> Result<f64> {
    if residence.len() != history.len() {
        return Err(Error::HistoryLengthMismatch {
            expected: history.len(),
            actual: residence.len(),
        });
    }
    let units = history.units();
    let mut total = 0.0;
    for seg in residence.segments() {
        for &obs in &units[seg.start - 1..seg.end()] {
            total += cost.day_cost(seg.location, obs);
        }
        total += cost.segment_penalty(seg.len);
    }
    Ok(total)
}

/// Same objective as [`score`], computed by weighting each run's unit cost
/// by its overlap with each residence segment.
pub fn score_warped(
    warped: &TimeWarpedHistory,
    residence: &ResidenceHistory,
    cost: &CostModel,
) -> Result<f64> {
    if residence.len() != warped.total_units() {
        return Err(Error::HistoryLengthMismatch {
            expected: warped.total_units(),
            actual: residence.len(),
        });
    }
    let mut total = 0.0;
    let mut run_start = 1;
    let mut segs = residence.segments().iter().peekable();
    for run in warped.runs() {
        let run_end = run_start + run.count - 1;
        while let Some(seg) = segs.peek() {
            let lo = seg.start.max(run_start);
            let hi = seg.end().min(run_end);
            if lo <= hi {
                total += cost.day_cost(seg.location, run.value) * (hi - lo + 1) as f64;
            }
            if seg.end() > run_end {
                break;
            }
            segs.next();
        }
        run_start = run_end + 1;
    }
    total += residence
        .segments()
        .iter()
        .map(|s| cost.segment_penalty(s.len))
        .sum::<f64>();
    Ok(total)
}
