// SPDX-License-Identifier: MIT OR Apache-2.0

use super::{LocationHistory, Observation};
use crate::error::{Error, Result};

/// A maximal stretch of identical observations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub value: Observation,
    pub count: usize,
}

/// Run-length encoding of a location history.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TimeWarpedHistory {
    runs: Vec<Run>,
    total_units: usize,
}

impl TimeWarpedHistory {
    pub fn new(runs: Vec<Run>) -> Result<Self> {
        for (i, run) in runs.iter().enumerate() {
            if run.count == 0 {
                return Err(Error::InvalidWarpedHistory(format!(
                    "run {} is empty",
                    i + 1
                )));
            }
            if i > 0 && runs[i - 1].value == run.value {
                return Err(Error::InvalidWarpedHistory(format!(
                    "runs {} and {} share a value",
                    i,
                    i + 1
                )));
            }
        }
        let total_units = runs.iter().map(|r| r.count).sum();
        Ok(Self { runs, total_units })
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn len(&self) -> usize {
        self.runs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn total_units(&self) -> usize {
        self.total_units
    }

    /// Number of observed changes between consecutive units.
    pub fn moves(&self) -> usize {
        self.runs.len().saturating_sub(1)
    }

    /// 1-based day on which each run begins.
    pub fn run_starts(&self) -> Vec<usize> {
        let mut day = 1;
        self.runs
            .iter()
            .map(|r| {
                let start = day;
                day += r.count;
                start
            })
            .collect()
    }
}

pub fn warp(history: &LocationHistory) -> TimeWarpedHistory {
    let mut runs: Vec<Run> = Vec::new();
    for &value in history.units() {
        match runs.last_mut() {
            Some(last) if last.value == value => last.count += 1,
            _ => runs.push(Run { value, count: 1 }),
        }
    }
    TimeWarpedHistory {
        total_units: history.len(),
        runs,
    }
}

pub fn unwarp(warped: &TimeWarpedHistory, alphabet_size: usize) -> Result<LocationHistory> {
    let mut units = Vec::with_capacity(warped.total_units);
    for run in &warped.runs {
        units.extend(std::iter::repeat_n(run.value, run.count));
    }
    LocationHistory::new(units, alphabet_size)
}
