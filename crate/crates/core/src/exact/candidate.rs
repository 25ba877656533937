// SPDX-License-Identifier: MIT OR Apache-2.0

//! Day-level optimum over a reduced set of move days.
//!
//! Fix the number of segments and the run each boundary falls in. The cost
//! is then linear in the boundary positions and the feasible positions form
//! a polytope cut out by difference constraints (`b_{j+1} - b_j >= rho`,
//! `b_1 - 1 >= rho`, `n + 1 - b_m >= rho` under full mode) and by run edges.
//! An optimal vertex puts every boundary at a run start, or at an exact
//! multiple of `rho` from one along a chain of length-`rho` segments. That
//! gives [`candidate_boundaries`].
//!
//! The chains are short in practice. Two adjacent segments lying inside the
//! same run can always be merged by relabelling one of them without raising
//! the score. A history that minimizes `(score, segments)` therefore never
//! has two such neighbours, so a chain of `k` segments from its anchor must
//! strictly contain at least `(k - 1) / 2` run starts. Keeping only those
//! chain ends gives [`pruned_candidate_boundaries`], whose size depends on
//! the run count and not on `n`.
//!
//! Both arguments need the segment penalty to be affine in duration. Other
//! penalties fall back to [`super::solve_daylevel`].

use super::{
    assemble, check_instance, solve_daylevel, Back, DpCell, Params, Solution, Tally, TopTwo,
};
use crate::error::{Error, Result};
use crate::model::{
    unwarp, warp, Algorithm, CostModel, LocationHistory, LocationId, Mode, SegmentPenalty,
    SolverConfig, TimeWarpedHistory,
};

/// Days (in `1..=n+1`) reachable from a run start, day 1 or day `n + 1` by
/// repeated steps of `±rho`.
pub fn candidate_boundaries(warped: &TimeWarpedHistory, rho: usize) -> Vec<usize> {
    let n = warped.total_units();
    let rho = rho.max(1);
    let mut seen = vec![false; n + 2];
    let mut stack = warped.run_starts();
    stack.push(1);
    stack.push(n + 1);
    while let Some(day) = stack.pop() {
        if seen[day] {
            continue;
        }
        seen[day] = true;
        if day + rho <= n + 1 {
            stack.push(day + rho);
        }
        if day > rho {
            stack.push(day - rho);
        }
    }
    seen.iter()
        .enumerate()
        .filter_map(|(day, &s)| s.then_some(day))
        .collect()
}

/// Subset of [`candidate_boundaries`] that keeps a chain end `a ± k·rho`
/// only when the open span between it and its anchor `a` holds at least
/// `(k - 1) / 2` run starts.
pub fn pruned_candidate_boundaries(warped: &TimeWarpedHistory, rho: usize) -> Vec<usize> {
    let n = warped.total_units();
    let rho = rho.max(1);
    let starts = warped.run_starts();
    let mut anchors = starts.clone();
    anchors.push(n + 1);
    let mut out = anchors.clone();
    out.push(1);

    for &a in &anchors {
        let at_or_before = starts.partition_point(|&s| s <= a);
        let before = starts.partition_point(|&s| s < a);

        let after = starts.len() - at_or_before;
        let mut k = 1;
        while k <= 2 * after + 1 {
            let Some(day) = a.checked_add(k * rho).filter(|&d| d <= n + 1) else {
                break;
            };
            let inside = starts.partition_point(|&s| s < day) - at_or_before;
            if k <= 2 * inside + 1 {
                out.push(day);
            }
            k += 1;
        }

        let mut k = 1;
        while k <= 2 * before + 1 && a > k * rho {
            let day = a - k * rho;
            let inside = before - starts.partition_point(|&s| s <= day);
            if k <= 2 * inside + 1 {
                out.push(day);
            }
            k += 1;
        }
    }

    out.sort_unstable();
    out.dedup();
    out
}

/// Exact solver over [`pruned_candidate_boundaries`].
pub fn solve_candidate(
    history: &LocationHistory,
    cost: &CostModel,
    config: &SolverConfig,
) -> Result<Solution> {
    check_instance(history, config)?;
    if matches!(cost.penalty, SegmentPenalty::Custom(_)) {
        return relabelled(solve_daylevel(history, cost, config)?, config);
    }
    solve_candidate_warped(&warp(history), history.alphabet_size(), cost, config)
}

fn relabelled(mut solution: Solution, config: &SolverConfig) -> Result<Solution> {
    solution.algorithm = Algorithm::Candidate;
    solution.params = Params::Exact(config.with_algorithm(Algorithm::Candidate));
    Ok(solution)
}

/// [`solve_candidate`] on an already warped history. Runs in
/// `O((|C| + |W|) · |L|)` for candidate set `C`.
pub fn solve_candidate_warped(
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
    let (per_segment, per_unit) = match cost.penalty {
        SegmentPenalty::Zero => (0.0, 0.0),
        SegmentPenalty::Affine {
            per_segment,
            per_unit,
        } => (per_segment, per_unit),
        SegmentPenalty::Custom(_) => {
            let history = unwarp(warped, alphabet_size)?;
            return relabelled(solve_daylevel(&history, cost, config)?, config);
        }
    };

    let n = warped.total_units();
    let nl = alphabet_size;
    // Prefix lengths at which a segment may end.
    let positions: Vec<usize> = pruned_candidate_boundaries(warped, rho)
        .into_iter()
        .map(|day| day - 1)
        .collect();
    let m = positions.len() - 1;

    // prefix[j * nl + l]: cost of residing at l on units 1..=positions[j],
    // plus the per-unit part of the penalty.
    let mut prefix = vec![0.0; positions.len() * nl];
    {
        let runs = warped.runs();
        let mut run = 0;
        let mut run_first = 1;
        let mut before = vec![0.0; nl];
        for (j, &p) in positions.iter().enumerate().skip(1) {
            while run_first + runs[run].count <= p {
                for (l, acc) in before.iter_mut().enumerate() {
                    *acc += cost.day_cost(LocationId(l as u32), runs[run].value)
                        * runs[run].count as f64;
                }
                run_first += runs[run].count;
                run += 1;
            }
            let into = (p + 1 - run_first) as f64;
            for l in 0..nl {
                prefix[j * nl + l] = before[l]
                    + cost.day_cost(LocationId(l as u32), runs[run].value) * into
                    + per_unit * p as f64;
            }
        }
    }

    // Running minimum, per location, of A(t, l') - prefix(t, l) over the
    // predecessors t admitted so far.
    struct Window {
        key: Tally,
        back: Option<Back>,
    }
    let admit = |windows: &mut [Window], cells: &[DpCell], t: usize| {
        if t == 0 {
            for w in windows.iter_mut() {
                let key = Tally {
                    score: 0.0,
                    segments: 0,
                };
                if key.beats(w.key) {
                    *w = Window { key, back: None };
                }
            }
            return;
        }
        let top = TopTwo::of(&cells[t * nl..(t + 1) * nl]);
        for (l, w) in windows.iter_mut().enumerate() {
            let (tally, lp) = top.excluding(l);
            if !tally.is_feasible() {
                continue;
            }
            let key = Tally {
                score: tally.score - prefix[t * nl + l],
                segments: tally.segments,
            };
            if key.beats(w.key) {
                *w = Window {
                    key,
                    back: Some(Back {
                        end: t,
                        location: LocationId(lp as u32),
                    }),
                };
            }
        }
    };
    let fresh = || -> Vec<Window> {
        (0..nl)
            .map(|_| Window {
                key: Tally::INFEASIBLE,
                back: None,
            })
            .collect()
    };

    let mut cells = vec![DpCell::EMPTY; positions.len() * nl];
    let mut windows = fresh();
    let mut admitted = 0;
    for j in 1..=m {
        let p = positions[j];
        if p < rho {
            continue;
        }
        while positions[admitted] <= p - rho {
            admit(&mut windows, &cells, admitted);
            admitted += 1;
        }
        for (l, w) in windows.iter().enumerate() {
            if w.key.is_feasible() {
                cells[j * nl + l] = DpCell {
                    best: Tally {
                        score: w.key.score + prefix[j * nl + l] + per_segment,
                        segments: w.key.segments + 1,
                    },
                    back: w.back,
                };
            }
        }
    }

    let mut best = Tally::INFEASIBLE;
    let mut last: (usize, Option<Back>) = (0, None);
    for l in 0..nl {
        let cand = Tally {
            score: prefix[m * nl + l] + per_segment,
            segments: 1,
        };
        if cand.beats(best) {
            best = cand;
            last = (l, None);
        }
    }
    for l in 0..nl {
        let cell = cells[m * nl + l];
        if cell.best.beats(best) {
            best = cell.best;
            last = (l, cell.back);
        }
    }
    if config.mode == Mode::TrailingRelaxed {
        let mut tail = fresh();
        for t in 1..m {
            admit(&mut tail, &cells, t);
        }
        for (l, w) in tail.iter().enumerate() {
            if !w.key.is_feasible() {
                continue;
            }
            let cand = Tally {
                score: w.key.score + prefix[m * nl + l] + per_segment,
                segments: w.key.segments + 1,
            };
            if cand.beats(best) {
                best = cand;
                last = (l, w.back);
            }
        }
    }

    let mut reversed = Vec::new();
    let (mut end, mut loc, mut back) = (m, last.0, last.1);
    loop {
        let first = back.map_or(0, |b| positions[b.end]);
        reversed.push((first + 1, positions[end], LocationId(loc as u32)));
        match back {
            None => break,
            Some(b) => {
                end = b.end;
                loc = b.location.index();
                back = cells[b.end * nl + loc].back;
            }
        }
    }

    let residence = assemble(reversed);
    debug_assert_eq!(residence.len(), n);
    Ok(Solution {
        residence,
        score: best.score,
        algorithm: Algorithm::Candidate,
        params: Params::Exact(config.with_algorithm(Algorithm::Candidate)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ResidenceHistory, Run};

    fn divergence() -> LocationHistory {
        LocationHistory::from_runs(&[(0, 7), (1, 5)], 2).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(
            candidate_boundaries(&warp(&divergence()), 6),
            vec![1, 2, 7, 8, 13]
        );
        let constant = LocationHistory::from_runs(&[(0, 12)], 1).unwrap();
        assert_eq!(candidate_boundaries(&warp(&constant), 6), vec![1, 7, 13]);
        let h = LocationHistory::from_compact("AABAB").unwrap();
        assert_eq!(
            candidate_boundaries(&warp(&h), 1),
            (1..=6).collect::<Vec<_>>()
        );
    }

    #[test]
    fn pruned_set_is_a_subset() {
        let h =
            LocationHistory::from_runs(&[(0, 40), (1, 3), (0, 50), (2, 9), (1, 70)], 3).unwrap();
        let w = warp(&h);
        for rho in [1, 2, 5, 7, 30] {
            let full = candidate_boundaries(&w, rho);
            let pruned = pruned_candidate_boundaries(&w, rho);
            assert!(pruned.iter().all(|d| full.binary_search(d).is_ok()));
            for s in w.run_starts() {
                assert!(pruned.contains(&s));
            }
            assert!(pruned.contains(&(w.total_units() + 1)));
        }
        assert_eq!(
            pruned_candidate_boundaries(&warp(&divergence()), 6),
            vec![1, 2, 7, 8, 13]
        );
    }

    #[test]
    fn pruned_set_does_not_grow_with_run_length() {
        let w = TimeWarpedHistory::new(vec![
            Run {
                value: crate::model::Observation::Seen(LocationId(0)),
                count: 100_000,
            },
            Run {
                value: crate::model::Observation::Seen(LocationId(1)),
                count: 200_000,
            },
        ])
        .unwrap();
        assert!(pruned_candidate_boundaries(&w, 30).len() <= 12);
        assert!(candidate_boundaries(&w, 30).len() > 10_000);
    }

    #[test]
    fn splits_inside_a_run() {
        let s =
            solve_candidate(&divergence(), &CostModel::default(), &SolverConfig::new(6)).unwrap();
        assert_eq!(s.score, 1.0);
        assert_eq!(
            s.residence,
            ResidenceHistory::from_lengths(&[(0, 6), (1, 6)]).unwrap()
        );
    }

    #[test]
    fn modal_counterexample() {
        let h = LocationHistory::from_runs(&[(0, 16), (1, 14), (0, 16), (1, 44)], 2).unwrap();
        let s = solve_candidate(&h, &CostModel::default(), &SolverConfig::new(30)).unwrap();
        assert_eq!(s.score, 14.0);
        assert_eq!(s.residence.moves(), vec![47]);
    }

    #[test]
    fn affine_penalty_matches_daylevel() {
        let h = LocationHistory::from_compact("AAABBBBAACCCCCBBAAAA").unwrap();
        let cost = CostModel::default().with_penalty(SegmentPenalty::Affine {
            per_segment: 1.5,
            per_unit: 0.25,
        });
        for rho in 1..=6 {
            for mode in [Mode::Full, Mode::TrailingRelaxed] {
                let config = SolverConfig::new(rho).with_mode(mode);
                let fast = solve_candidate(&h, &cost, &config).unwrap();
                let slow = solve_daylevel(&h, &cost, &config).unwrap();
                assert_eq!(fast.score, slow.score, "rho={rho} {mode:?}");
                assert_eq!(fast.segment_count(), slow.segment_count());
            }
        }
    }

    #[test]
    fn custom_penalty_falls_back_to_daylevel() {
        let h = LocationHistory::from_compact("AABBBAAB").unwrap();
        let cost =
            CostModel::default().with_penalty(SegmentPenalty::Custom(std::sync::Arc::new(|d| {
                4.0 / d as f64
            })));
        let config = SolverConfig::new(2);
        let fast = solve_candidate(&h, &cost, &config).unwrap();
        let slow = solve_daylevel(&h, &cost, &config).unwrap();
        assert_eq!(fast.score, slow.score);
        assert_eq!(fast.residence, slow.residence);
        assert_eq!(fast.algorithm, Algorithm::Candidate);
    }
}
