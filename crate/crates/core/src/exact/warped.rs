// SPDX-License-Identifier: MIT OR Apache-2.0

use super::{assemble, check_instance, Back, DpCell, Params, Solution, Tally};
use crate::error::{Error, Result};
use crate::model::{
    warp, Algorithm, CostModel, LocationHistory, LocationId, Mode, QInterpretation, SolverConfig,
    TimeWarpedHistory,
};

/// Cumulative durations: `ends[j]` is the last unit of run `j` (1-based),
/// `ends[0] = 0`.
fn run_ends(warped: &TimeWarpedHistory) -> Vec<usize> {
    let mut ends = Vec::with_capacity(warped.len() + 1);
    ends.push(0);
    for run in warped.runs() {
        ends.push(ends.last().unwrap() + run.count);
    }
    ends
}

#[inline]
fn admits(ends: &[usize], t: usize, i: usize, rho: usize, q: QInterpretation) -> bool {
    match q {
        QInterpretation::Exclusive => ends[i] - ends[t] >= rho,
        QInterpretation::Literal => t > 0 && ends[i] - ends[t - 1] >= rho,
    }
}

/// Predecessor runs admissible for a segment ending at run `i` (1-based).
///
/// Under [`QInterpretation::Exclusive`] run `t` qualifies when runs
/// `t+1..=i` last at least `rho` units, with `t = 0` standing for the start
/// of the history. Under [`QInterpretation::Literal`] the runs `t..=i` are
/// summed and `t` ranges over `1..i`.
pub fn q_set(
    i: usize,
    warped: &TimeWarpedHistory,
    rho: usize,
    q: QInterpretation,
) -> Result<Vec<usize>> {
    if i == 0 || i > warped.len() {
        return Err(Error::IndexError {
            index: i,
            len: warped.len(),
        });
    }
    let ends = run_ends(warped);
    Ok((0..i).filter(|&t| admits(&ends, t, i, rho, q)).collect())
}

/// Run-level program: residence changes only where the observed location
/// changes.
///
/// Under [`QInterpretation::Exclusive`] the result is feasible for the
/// configured mode but may score worse than
/// [`super::solve_daylevel`]. Under [`QInterpretation::Literal`] segments
/// shorter than `rho` can be returned.
pub fn solve_warped_paper(
    history: &LocationHistory,
    cost: &CostModel,
    config: &SolverConfig,
) -> Result<Solution> {
    check_instance(history, config)?;
    solve_warped_paper_runs(&warp(history), history.alphabet_size(), cost, config)
}

/// [`solve_warped_paper`] on an already warped history.
pub fn solve_warped_paper_runs(
    warped: &TimeWarpedHistory,
    alphabet_size: usize,
    cost: &CostModel,
    config: &SolverConfig,
) -> Result<Solution> {
    let rho = config.checked_rho()?;
    if warped.is_empty() {
        return Err(Error::EmptyHistory);
    }
    if alphabet_size == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let k = warped.len();
    let nl = alphabet_size;
    let q = config.q_interpretation;
    let ends = run_ends(warped);

    // weighted[l * (k + 1) + j]: cost of residing at l through run j.
    let stride = k + 1;
    let mut weighted = Vec::with_capacity(stride * nl);
    for l in 0..nl {
        let loc = LocationId(l as u32);
        let mut acc = 0.0;
        weighted.push(0.0);
        for run in warped.runs() {
            acc += cost.day_cost(loc, run.value) * run.count as f64;
            weighted.push(acc);
        }
    }
    let row = |l: usize| &weighted[l * stride..(l + 1) * stride];

    let mut cells = vec![DpCell::EMPTY; (k + 1) * nl];
    for i in 1..=k {
        let (done, rest) = cells.split_at_mut(i * nl);
        let here = &mut rest[..nl];
        // The history start is always an admissible predecessor once the
        // first segment reaches rho, whichever reading of Q is in force.
        if ends[i] >= rho {
            let penalty = cost.segment_penalty(ends[i]);
            for (l, slot) in here.iter_mut().enumerate() {
                *slot = DpCell {
                    best: Tally {
                        score: row(l)[i] + penalty,
                        segments: 1,
                    },
                    back: None,
                };
            }
        }
        for t in (1..i).filter(|&t| admits(&ends, t, i, rho, q)) {
            let penalty = cost.segment_penalty(ends[i] - ends[t]);
            let prev = &done[t * nl..(t + 1) * nl];
            for (l, slot) in here.iter_mut().enumerate() {
                let segment = row(l)[i] - row(l)[t] + penalty;
                for (lp, cell) in prev.iter().enumerate() {
                    if lp == l || !cell.best.is_feasible() {
                        continue;
                    }
                    let cand = Tally {
                        score: cell.best.score + segment,
                        segments: cell.best.segments + 1,
                    };
                    if cand.beats(slot.best) {
                        *slot = DpCell {
                            best: cand,
                            back: Some(Back {
                                end: t,
                                location: LocationId(lp as u32),
                            }),
                        };
                    }
                }
            }
        }
    }

    let mut best = Tally::INFEASIBLE;
    let mut last: (usize, Option<Back>) = (0, None);
    let whole_penalty = cost.segment_penalty(ends[k]);
    for l in 0..nl {
        let cand = Tally {
            score: row(l)[k] + whole_penalty,
            segments: 1,
        };
        if cand.beats(best) {
            best = cand;
            last = (l, None);
        }
    }
    for l in 0..nl {
        let cell = cells[k * nl + l];
        if cell.best.beats(best) {
            best = cell.best;
            last = (l, cell.back);
        }
    }
    if config.mode == Mode::TrailingRelaxed {
        for t in 1..k {
            let penalty = cost.segment_penalty(ends[k] - ends[t]);
            for l in 0..nl {
                let segment = row(l)[k] - row(l)[t] + penalty;
                for lp in (0..nl).filter(|&lp| lp != l) {
                    let cell = cells[t * nl + lp];
                    if !cell.best.is_feasible() {
                        continue;
                    }
                    let cand = Tally {
                        score: cell.best.score + segment,
                        segments: cell.best.segments + 1,
                    };
                    if cand.beats(best) {
                        best = cand;
                        last = (
                            l,
                            Some(Back {
                                end: t,
                                location: LocationId(lp as u32),
                            }),
                        );
                    }
                }
            }
        }
    }

    let mut reversed = Vec::new();
    let (mut end, mut loc, mut back) = (k, last.0, last.1);
    loop {
        let first_run = back.map_or(0, |b| b.end);
        reversed.push((ends[first_run] + 1, ends[end], LocationId(loc as u32)));
        match back {
            None => break,
            Some(b) => {
                end = b.end;
                loc = b.location.index();
                back = cells[b.end * nl + loc].back;
            }
        }
    }

    Ok(Solution {
        residence: assemble(reversed),
        score: best.score,
        algorithm: Algorithm::WarpedPaper,
        params: Params::Exact(config.with_algorithm(Algorithm::WarpedPaper)),
    })
}
