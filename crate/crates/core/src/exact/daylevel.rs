// SPDX-License-Identifier: MIT OR Apache-2.0

use super::{assemble, check_instance, Back, DpCell, Params, PrefixCosts, Solution, Tally};
use crate::error::Result;
use crate::model::{Algorithm, CostModel, LocationHistory, LocationId, Mode, SolverConfig};

/// Reference solver over every unit boundary.
///
/// `A(i, l)` is the best tally for units `1..=i` when the last segment ends
/// at `i` with location `l`:
///
/// ```text
/// A(i, l) = min over t in {0} ∪ [rho, i - rho], l' != l of
///           A(t, l') + cost(l, t+1..=i) + penalty(i - t)
/// ```
///
/// with `A(0, ·) = 0` and the `t = 0` transition only allowed when
/// `i >= rho`. Single-segment histories are considered for any `n`.
pub fn solve_daylevel(
    history: &LocationHistory,
    cost: &CostModel,
    config: &SolverConfig,
) -> Result<Solution> {
    let rho = check_instance(history, config)?;
    let n = history.len();
    let nl = history.alphabet_size();
    let prefix = PrefixCosts::new(history, cost);
    let mut cells = vec![DpCell::EMPTY; (n + 1) * nl];

    for i in rho..=n {
        let first_penalty = cost.segment_penalty(i);
        for l in 0..nl {
            cells[i * nl + l] = DpCell {
                best: Tally {
                    score: prefix.row(l)[i] + first_penalty,
                    segments: 1,
                },
                back: None,
            };
        }
        if i < 2 * rho {
            continue;
        }
        let (done, rest) = cells.split_at_mut(i * nl);
        let here = &mut rest[..nl];
        for t in rho..=i - rho {
            let penalty = cost.segment_penalty(i - t);
            let prev = &done[t * nl..(t + 1) * nl];
            for (l, slot) in here.iter_mut().enumerate() {
                let row = prefix.row(l);
                let segment = row[i] - row[t] + penalty;
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
    let whole_penalty = cost.segment_penalty(n);
    for l in 0..nl {
        let cand = Tally {
            score: prefix.row(l)[n] + whole_penalty,
            segments: 1,
        };
        if cand.beats(best) {
            best = cand;
            last = (l, None);
        }
    }
    if n >= rho {
        for l in 0..nl {
            let cell = cells[n * nl + l];
            if cell.best.beats(best) {
                best = cell.best;
                last = (l, cell.back);
            }
        }
    }
    if config.mode == Mode::TrailingRelaxed {
        for t in rho..n {
            let penalty = cost.segment_penalty(n - t);
            for l in 0..nl {
                let row = prefix.row(l);
                let segment = row[n] - row[t] + penalty;
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
    let (mut end, mut loc, mut back) = (n, last.0, last.1);
    loop {
        let first = back.map_or(1, |b| b.end + 1);
        reversed.push((first, end, LocationId(loc as u32)));
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
        algorithm: Algorithm::Daylevel,
        params: Params::Exact(config.with_algorithm(Algorithm::Daylevel)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::model::{validate, ResidenceHistory};

    fn solve(h: &LocationHistory, rho: usize, mode: Mode) -> Solution {
        solve_daylevel(
            h,
            &CostModel::default(),
            &SolverConfig::new(rho).with_mode(mode),
        )
        .unwrap()
    }

    #[test]
    fn constant_history_is_one_segment() {
        let h = LocationHistory::from_compact("AAAAAAAAAA").unwrap();
        for rho in [1, 3, 10, 25] {
            let s = solve(&h, rho, Mode::Full);
            assert_eq!(s.score, 0.0);
            assert_eq!(s.residence, ResidenceHistory::single(LocationId(0), 10));
        }
    }

    #[test]
    fn rho_one_follows_observations() {
        let h = LocationHistory::from_compact("ABBACCAB").unwrap();
        let s = solve(&h, 1, Mode::Full);
        assert_eq!(s.score, 0.0);
        let dense: Vec<_> = h.units().iter().map(|o| o.location().unwrap()).collect();
        assert_eq!(s.residence.to_dense(), dense);
    }

    #[test]
    fn moves_inside_a_run_when_rho_forces_it() {
        let h = LocationHistory::from_runs(&[(0, 7), (1, 5)], 2).unwrap();
        let s = solve(&h, 6, Mode::Full);
        assert_eq!(s.score, 1.0);
        assert_eq!(
            s.residence,
            ResidenceHistory::from_lengths(&[(0, 6), (1, 6)]).unwrap()
        );
    }

    #[test]
    fn modal_counterexample() {
        let h = LocationHistory::from_runs(&[(0, 16), (1, 14), (0, 16), (1, 44)], 2).unwrap();
        let s = solve(&h, 30, Mode::Full);
        assert_eq!(s.score, 14.0);
        assert_eq!(
            s.residence,
            ResidenceHistory::from_lengths(&[(0, 46), (1, 44)]).unwrap()
        );
    }

    #[test]
    fn short_history_remains_feasible() {
        let h = LocationHistory::from_compact("ABB").unwrap();
        let s = solve(&h, 5, Mode::Full);
        assert_eq!(s.score, 1.0);
        assert_eq!(s.residence, ResidenceHistory::single(LocationId(1), 3));
    }

    #[test]
    fn relaxed_mode_allows_short_tail() {
        let h = LocationHistory::from_runs(&[(0, 6), (1, 3)], 2).unwrap();
        let full = solve(&h, 6, Mode::Full);
        let relaxed = solve(&h, 6, Mode::TrailingRelaxed);
        assert_eq!(full.score, 3.0);
        assert_eq!(relaxed.score, 0.0);
        assert!(validate(&relaxed.residence, 6, Mode::TrailingRelaxed).is_empty());
        assert!(!validate(&relaxed.residence, 6, Mode::Full).is_empty());
    }

    #[test]
    fn errors() {
        let empty = LocationHistory::from_ids(&[], 2).unwrap();
        let cost = CostModel::default();
        assert_eq!(
            solve_daylevel(&empty, &cost, &SolverConfig::new(2)),
            Err(Error::EmptyHistory)
        );
        let unknown = LocationHistory::new(vec![crate::model::Observation::Unknown], 0).unwrap();
        assert_eq!(
            solve_daylevel(&unknown, &cost, &SolverConfig::new(2)),
            Err(Error::EmptyAlphabet)
        );
        let h = LocationHistory::from_compact("A").unwrap();
        assert!(matches!(
            solve_daylevel(&h, &cost, &SolverConfig::new(0)),
            Err(Error::ConfigError(_))
        ));
    }
}
