// SPDX-License-Identifier: MIT OR Apache-2.0

//! Fixed-interval modal-location heuristic.
//!
//! The trace is cut into consecutive intervals of `interval_length` units
//! starting at unit 1 (the last may be shorter) and each interval resides at
//! its most frequent observed location. Ties keep the previous interval's
//! residence when it is among the modes, otherwise take the smallest id. An
//! interval with no observations inherits the previous residence. The result
//! is not checked against any minimum residence length.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Params, Solution};
use crate::model::{score, Algorithm, CostModel, LocationHistory, LocationId, ResidenceHistory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModalConfig {
    pub interval_length: usize,
}

impl Default for ModalConfig {
    fn default() -> Self {
        Self {
            interval_length: 30,
        }
    }
}

/// Residence assigned to each interval, in order.
pub fn modal_assignments(
    history: &LocationHistory,
    config: &ModalConfig,
) -> Result<Vec<LocationId>> {
    if config.interval_length == 0 {
        return Err(Error::ConfigError(
            "interval length must be at least 1".into(),
        ));
    }
    if history.is_empty() {
        return Err(Error::EmptyHistory);
    }
    let mut counts = vec![0usize; history.alphabet_size()];
    let mut assignments: Vec<LocationId> = Vec::new();
    for interval in history.units().chunks(config.interval_length) {
        counts.iter_mut().for_each(|c| *c = 0);
        for obs in interval {
            if let Some(id) = obs.location() {
                counts[id.index()] += 1;
            }
        }
        let top = counts.iter().copied().max().unwrap_or(0);
        let previous = assignments.last().copied();
        let choice = if top == 0 {
            previous.ok_or(Error::InsufficientData)?
        } else {
            match previous {
                Some(prev) if counts[prev.index()] == top => prev,
                _ => LocationId(counts.iter().position(|&c| c == top).unwrap() as u32),
            }
        };
        assignments.push(choice);
    }
    Ok(assignments)
}

/// Runs the heuristic and scores the result with the default cost model.
pub fn solve_modal(history: &LocationHistory, config: &ModalConfig) -> Result<Solution> {
    let assignments = modal_assignments(history, config)?;
    let mut dense = Vec::with_capacity(history.len());
    for (i, &loc) in assignments.iter().enumerate() {
        let start = i * config.interval_length;
        let end = (start + config.interval_length).min(history.len());
        dense.extend(std::iter::repeat_n(loc, end - start));
    }
    let residence = ResidenceHistory::from_dense(&dense);
    let score = score(history, &residence, &CostModel::default())?;
    Ok(Solution {
        residence,
        score,
        algorithm: Algorithm::Modal,
        params: Params::Modal(*config),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Observation;

    #[test]
    fn modal_counterexample() {
        let h = LocationHistory::from_runs(&[(0, 16), (1, 14), (0, 16), (1, 44)], 2).unwrap();
        let config = ModalConfig::default();
        assert_eq!(
            modal_assignments(&h, &config).unwrap(),
            vec![LocationId(0), LocationId(0), LocationId(1)]
        );
        let s = solve_modal(&h, &config).unwrap();
        assert_eq!(
            s.residence,
            ResidenceHistory::from_lengths(&[(0, 60), (1, 30)]).unwrap()
        );
        assert_eq!(s.score, 28.0);
    }

    #[test]
    fn constant_history() {
        let h = LocationHistory::from_runs(&[(0, 45)], 1).unwrap();
        let s = solve_modal(&h, &ModalConfig::default()).unwrap();
        assert_eq!(s.residence, ResidenceHistory::single(LocationId(0), 45));
    }

    #[test]
    fn ties_keep_previous_residence() {
        // Interval 2 is 15 A / 15 B after an A interval.
        let h = LocationHistory::from_runs(&[(0, 30), (1, 15), (0, 15)], 2).unwrap();
        let a = modal_assignments(&h, &ModalConfig::default()).unwrap();
        assert_eq!(a, vec![LocationId(0), LocationId(0)]);
        // Same counts after a B interval stay at B.
        let h = LocationHistory::from_runs(&[(1, 30), (0, 15), (1, 15)], 2).unwrap();
        let a = modal_assignments(&h, &ModalConfig::default()).unwrap();
        assert_eq!(a, vec![LocationId(1), LocationId(1)]);
        // Tie that excludes the previous residence.
        let h = LocationHistory::from_compact("AAAA BCCB").unwrap();
        let a = modal_assignments(&h, &ModalConfig { interval_length: 4 }).unwrap();
        assert_eq!(a, vec![LocationId(0), LocationId(1)]);
    }

    #[test]
    fn unknown_intervals() {
        let h = LocationHistory::from_compact("AB?? ????").unwrap();
        let config = ModalConfig { interval_length: 4 };
        assert_eq!(
            modal_assignments(&h, &config).unwrap(),
            vec![LocationId(0); 2]
        );

        let mut units = vec![Observation::Unknown; 4];
        units.extend([Observation::Seen(LocationId(0)); 4]);
        let h = LocationHistory::new(units, 1).unwrap();
        assert_eq!(solve_modal(&h, &config), Err(Error::InsufficientData));
    }

    #[test]
    fn final_partial_interval_counts_on_its_own() {
        let h = LocationHistory::from_compact("AAAA BBA").unwrap();
        let a = modal_assignments(&h, &ModalConfig { interval_length: 4 }).unwrap();
        assert_eq!(a, vec![LocationId(0), LocationId(1)]);
    }
}
