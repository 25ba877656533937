// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact minimum-away-units solvers.
//!
//! All three solvers minimize the pair `(score, segment count)`
//! lexicographically, so among equally scored histories the one with the
//! fewest moves wins. Remaining ties go to the earliest predecessor end and
//! then the smallest location id.
//!
//! * [`solve_daylevel`] considers every unit as a possible move day. It is
//!   the reference: `O(n^2 |L|^2)`.
//! * [`solve_warped_paper`] only moves at observed location changes. That
//!   restriction is not lossless under a hard minimum length: on
//!   `A x7, B x5` with `rho = 6` the best run-boundary history scores 5 while
//!   moving on day 7 scores 1.
//! * [`solve_candidate`] moves only on days that are run starts or sit an
//!   exact multiple of `rho` from one, see [`pruned_candidate_boundaries`].
//!   It returns the day-level optimum in time governed by the number of runs.

mod candidate;
mod daylevel;
mod warped;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modal::ModalConfig;
use crate::model::{
    Algorithm, CostModel, LocationHistory, LocationId, ResidenceHistory, ResidenceSegment,
    SolverConfig,
};

pub use candidate::{
    candidate_boundaries, pruned_candidate_boundaries, solve_candidate, solve_candidate_warped,
};
pub use daylevel::solve_daylevel;
pub use warped::{q_set, solve_warped_paper, solve_warped_paper_runs};

/// Lexicographic DP objective: score first, then number of segments.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tally {
    pub score: f64,
    pub segments: u32,
}

impl Tally {
    pub const INFEASIBLE: Tally = Tally {
        score: f64::INFINITY,
        segments: u32::MAX,
    };

    #[inline]
    pub fn is_feasible(self) -> bool {
        self.score.is_finite()
    }

    /// Strictly better than `other`.
    #[inline]
    pub fn beats(self, other: Tally) -> bool {
        self.score < other.score || (self.score == other.score && self.segments < other.segments)
    }
}

/// Predecessor state: the previous segment ends at `end` with `location`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Back {
    pub end: usize,
    pub location: LocationId,
}

/// `A(i, l)` of a prefix program. `back` is `None` when the segment ending
/// here is the first one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DpCell {
    pub best: Tally,
    pub back: Option<Back>,
}

impl DpCell {
    pub const EMPTY: DpCell = DpCell {
        best: Tally::INFEASIBLE,
        back: None,
    };
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Params {
    Exact(SolverConfig),
    Modal(ModalConfig),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub residence: ResidenceHistory,
    pub score: f64,
    pub algorithm: Algorithm,
    pub params: Params,
}

impl Solution {
    pub fn segment_count(&self) -> usize {
        self.residence.segments().len()
    }
}

/// Runs the exact solver (or the brute-force oracle) named by
/// `config.algorithm`. The modal heuristic has its own entry point,
/// [`crate::modal::solve_modal`].
pub fn solve(
    history: &LocationHistory,
    cost: &CostModel,
    config: &SolverConfig,
) -> Result<Solution> {
    match config.algorithm {
        Algorithm::Daylevel => solve_daylevel(history, cost, config),
        Algorithm::WarpedPaper => solve_warped_paper(history, cost, config),
        Algorithm::Candidate => solve_candidate(history, cost, config),
        Algorithm::Bruteforce => crate::oracle::solve_bruteforce_solution(history, cost, config),
        Algorithm::Modal => Err(Error::ConfigError(
            "the modal heuristic takes a ModalConfig; call modal::solve_modal".into(),
        )),
    }
}

pub(crate) fn check_instance(history: &LocationHistory, config: &SolverConfig) -> Result<usize> {
    let rho = config.checked_rho()?;
    if history.is_empty() {
        return Err(Error::EmptyHistory);
    }
    if history.alphabet_size() == 0 {
        return Err(Error::EmptyAlphabet);
    }
    Ok(rho)
}

/// Builds segments from `(first_unit, last_unit, location)` triples listed
/// last-to-first, as produced by walking back pointers.
pub(crate) fn assemble(mut reversed: Vec<(usize, usize, LocationId)>) -> ResidenceHistory {
    reversed.reverse();
    let segments = reversed
        .into_iter()
        .map(|(first, last, loc)| ResidenceSegment::new(first, last - first + 1, loc))
        .collect();
    ResidenceHistory::new(segments).expect("back pointers describe a tiling")
}

/// Per-location prefix sums of day costs over a dense history, stored
/// location-major so `sum(l, i)` is the cost of residing at `l` on units
/// `1..=i`.
pub(crate) struct PrefixCosts {
    stride: usize,
    sums: Vec<f64>,
}

impl PrefixCosts {
    pub(crate) fn new(history: &LocationHistory, cost: &CostModel) -> Self {
        let n = history.len();
        let stride = n + 1;
        let mut sums = Vec::with_capacity(stride * history.alphabet_size());
        for l in 0..history.alphabet_size() {
            let loc = LocationId(l as u32);
            let mut acc = 0.0;
            sums.push(0.0);
            for &obs in history.units() {
                acc += cost.day_cost(loc, obs);
                sums.push(acc);
            }
        }
        Self { stride, sums }
    }

    #[inline]
    pub(crate) fn row(&self, l: usize) -> &[f64] {
        &self.sums[l * self.stride..(l + 1) * self.stride]
    }
}

/// Best and runner-up locations of one DP row, ties going to the smaller id.
#[derive(Clone, Copy, Debug)]
pub(crate) struct TopTwo {
    pub first: (Tally, usize),
    pub second: (Tally, usize),
}

impl TopTwo {
    pub(crate) fn of(row: &[DpCell]) -> Self {
        let mut first = (Tally::INFEASIBLE, usize::MAX);
        let mut second = (Tally::INFEASIBLE, usize::MAX);
        for (l, cell) in row.iter().enumerate() {
            if cell.best.beats(first.0) {
                second = first;
                first = (cell.best, l);
            } else if cell.best.beats(second.0) {
                second = (cell.best, l);
            }
        }
        Self { first, second }
    }

    /// Best entry whose location differs from `l`.
    #[inline]
    pub(crate) fn excluding(&self, l: usize) -> (Tally, usize) {
        if self.first.1 == l {
            self.second
        } else {
            self.first
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_orders_score_then_segments() {
        let a = Tally {
            score: 1.0,
            segments: 3,
        };
        let b = Tally {
            score: 1.0,
            segments: 2,
        };
        let c = Tally {
            score: 0.0,
            segments: 9,
        };
        assert!(b.beats(a));
        assert!(c.beats(b));
        assert!(!a.beats(a));
        assert!(a.beats(Tally::INFEASIBLE));
    }

    #[test]
    fn top_two_skips_excluded_location() {
        let cell = |score| DpCell {
            best: Tally { score, segments: 1 },
            back: None,
        };
        let row = [cell(2.0), cell(1.0), cell(1.0)];
        let top = TopTwo::of(&row);
        assert_eq!(top.first.1, 1);
        assert_eq!(top.second.1, 2);
        assert_eq!(top.excluding(1).1, 2);
        assert_eq!(top.excluding(0).1, 1);
    }

    #[test]
    fn modal_is_not_dispatched_here() {
        let h = LocationHistory::from_compact("AB").unwrap();
        let config = SolverConfig::new(1).with_algorithm(Algorithm::Modal);
        assert!(matches!(
            solve(&h, &CostModel::default(), &config),
            Err(Error::ConfigError(_))
        ));
    }
}
