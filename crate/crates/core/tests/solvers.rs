// SPDX-License-Identifier: MIT OR Apache-2.0

use proptest::prelude::*;
use residency::exact::{
    candidate_boundaries, pruned_candidate_boundaries, solve_candidate, solve_daylevel,
    solve_warped_paper,
};
use residency::model::{score, score_warped, unwarp, validate, warp, Observation, SegmentPenalty};
use residency::oracle::solve_bruteforce;
use residency::{CostModel, LocationHistory, LocationId, Mode, ResidenceHistory, SolverConfig};

const MODES: [Mode; 2] = [Mode::Full, Mode::TrailingRelaxed];

fn history_strategy(
    max_len: usize,
    max_locations: u32,
    unknown: bool,
) -> impl Strategy<Value = LocationHistory> {
    (1..=max_locations).prop_flat_map(move |nl| {
        let unit = if unknown {
            prop_oneof![
                4 => (0..nl).prop_map(|id| Observation::Seen(LocationId(id))),
                1 => Just(Observation::Unknown),
            ]
            .boxed()
        } else {
            (0..nl)
                .prop_map(|id| Observation::Seen(LocationId(id)))
                .boxed()
        };
        prop::collection::vec(unit, 1..=max_len)
            .prop_map(move |units| LocationHistory::new(units, nl as usize).unwrap())
    })
}

/// Runs of random length so run-interior boundaries matter.
fn runs_strategy(
    max_runs: usize,
    max_run: usize,
    max_locations: u32,
) -> impl Strategy<Value = LocationHistory> {
    (2..=max_locations).prop_flat_map(move |nl| {
        prop::collection::vec(
            (
                prop_oneof![
                    6 => (0..nl).prop_map(Some),
                    1 => Just(None),
                ],
                1..=max_run,
            ),
            1..=max_runs,
        )
        .prop_map(move |runs| {
            let mut units = Vec::new();
            for (value, count) in runs {
                let obs =
                    value.map_or(Observation::Unknown, |id| Observation::Seen(LocationId(id)));
                units.extend(std::iter::repeat_n(obs, count));
            }
            LocationHistory::new(units, nl as usize).unwrap()
        })
    })
}

fn dense(h: &LocationHistory) -> Vec<LocationId> {
    h.units().iter().map(|o| o.location().unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn warp_round_trip(h in history_strategy(60, 4, true)) {
        let w = warp(&h);
        prop_assert_eq!(unwarp(&w, h.alphabet_size()).unwrap(), h.clone());
        prop_assert_eq!(warp(&unwarp(&w, h.alphabet_size()).unwrap()), w.clone());
        prop_assert_eq!(w.total_units(), h.len());
        prop_assert!(w.runs().windows(2).all(|p| p[0].value != p[1].value));
    }

    #[test]
    fn dense_and_run_weighted_scores_agree(h in history_strategy(60, 4, true), rho in 1usize..8) {
        let cost = CostModel::default();
        let s = solve_daylevel(&h, &cost, &SolverConfig::new(rho)).unwrap();
        let w = warp(&h);
        prop_assert_eq!(score(&h, &s.residence, &cost).unwrap(), score_warped(&w, &s.residence, &cost).unwrap());
        let single = ResidenceHistory::single(LocationId(0), h.len());
        prop_assert_eq!(score(&h, &single, &cost).unwrap(), score_warped(&w, &single, &cost).unwrap());
    }

    #[test]
    fn oracle_agreement(h in history_strategy(10, 3, true), rho in 1usize..=4) {
        let cost = CostModel::default();
        for mode in MODES {
            let config = SolverConfig::new(rho).with_mode(mode);
            let optima = solve_bruteforce(&h, &cost, &config).unwrap();
            let exact = solve_daylevel(&h, &cost, &config).unwrap();
            prop_assert_eq!(exact.score, optima.min_score);
            prop_assert!(optima.contains(&exact.residence), "{} not optimal", exact.residence);
            let fast = solve_candidate(&h, &cost, &config).unwrap();
            prop_assert_eq!(fast.score, optima.min_score);
            prop_assert!(optima.contains(&fast.residence));
        }
    }

    #[test]
    fn candidate_matches_daylevel(h in runs_strategy(12, 40, 5), rho in 1usize..60) {
        let cost = CostModel::default();
        for mode in MODES {
            let config = SolverConfig::new(rho).with_mode(mode);
            let slow = solve_daylevel(&h, &cost, &config).unwrap();
            let fast = solve_candidate(&h, &cost, &config).unwrap();
            prop_assert_eq!(fast.score, slow.score);
            prop_assert_eq!(fast.segment_count(), slow.segment_count());
            prop_assert!(validate(&fast.residence, rho, mode).is_empty());
        }
    }

    #[test]
    fn solutions_are_feasible_and_rescore(h in runs_strategy(10, 20, 4), rho in 1usize..30) {
        let cost = CostModel::default();
        for mode in MODES {
            let config = SolverConfig::new(rho).with_mode(mode);
            for s in [
                solve_daylevel(&h, &cost, &config).unwrap(),
                solve_candidate(&h, &cost, &config).unwrap(),
                solve_warped_paper(&h, &cost, &config).unwrap(),
            ] {
                prop_assert_eq!(score(&h, &s.residence, &cost).unwrap(), s.score);
                prop_assert!(validate(&s.residence, rho, mode).is_empty(), "{:?} {}", s.algorithm, s.residence);
            }
        }
    }

    #[test]
    fn run_level_score_is_dominated(h in runs_strategy(10, 20, 4), rho in 1usize..30) {
        let cost = CostModel::default();
        for mode in MODES {
            let config = SolverConfig::new(rho).with_mode(mode);
            let exact = solve_daylevel(&h, &cost, &config).unwrap();
            let run_level = solve_warped_paper(&h, &cost, &config).unwrap();
            prop_assert!(run_level.score >= exact.score);
        }
    }

    #[test]
    fn relaxed_never_worse_than_full(h in runs_strategy(10, 20, 4), rho in 1usize..30) {
        let cost = CostModel::default();
        let full = solve_daylevel(&h, &cost, &SolverConfig::new(rho)).unwrap();
        let relaxed = solve_daylevel(&h, &cost, &SolverConfig::new(rho).with_mode(Mode::TrailingRelaxed)).unwrap();
        prop_assert!(relaxed.score <= full.score);
        prop_assert!(validate(&full.residence, rho, Mode::TrailingRelaxed).is_empty());
    }

    #[test]
    fn score_non_decreasing_in_rho(h in runs_strategy(8, 15, 4)) {
        let cost = CostModel::default();
        let best_single = (0..h.alphabet_size())
            .map(|l| score(&h, &ResidenceHistory::single(LocationId(l as u32), h.len()), &cost).unwrap())
            .fold(f64::INFINITY, f64::min);
        let mut previous = 0.0;
        for rho in 1..=h.len() + 1 {
            let s = solve_candidate(&h, &cost, &SolverConfig::new(rho)).unwrap().score;
            prop_assert!(s >= previous);
            prop_assert!(s <= best_single);
            previous = s;
        }
    }

    #[test]
    fn rho_one_reproduces_observations(h in history_strategy(80, 5, false)) {
        let cost = CostModel::default();
        let config = SolverConfig::new(1);
        for s in [
            solve_daylevel(&h, &cost, &config).unwrap(),
            solve_candidate(&h, &cost, &config).unwrap(),
            solve_warped_paper(&h, &cost, &config).unwrap(),
        ] {
            prop_assert_eq!(s.score, 0.0);
            prop_assert_eq!(s.residence.to_dense(), dense(&h));
        }
    }

    #[test]
    fn relabelling_preserves_scores(h in runs_strategy(8, 10, 4), rho in 1usize..15, shift in 1u32..4) {
        let nl = h.alphabet_size() as u32;
        let map: Vec<LocationId> = (0..nl).map(|l| LocationId((l + shift) % nl)).collect();
        let moved = h.relabel(&map);
        let cost = CostModel::default();
        let config = SolverConfig::new(rho);
        let a = solve_daylevel(&h, &cost, &config).unwrap();
        let b = solve_daylevel(&moved, &cost, &config).unwrap();
        prop_assert_eq!(a.score, b.score);
        prop_assert_eq!(score(&moved, &a.residence.relabel(&map), &cost).unwrap(), a.score);
    }

    #[test]
    fn pruned_boundaries_inside_closure(h in runs_strategy(10, 30, 3), rho in 1usize..40) {
        let w = warp(&h);
        let full = candidate_boundaries(&w, rho);
        let pruned = pruned_candidate_boundaries(&w, rho);
        prop_assert!(pruned.iter().all(|d| full.binary_search(d).is_ok()));
        prop_assert_eq!(pruned.first().copied(), Some(1));
        prop_assert_eq!(pruned.last().copied(), Some(h.len() + 1));
    }

    #[test]
    fn affine_penalty_equivalence(
        h in runs_strategy(8, 15, 3),
        rho in 1usize..20,
        per_segment in 0u32..5,
        per_unit in 0u32..2,
    ) {
        let cost = CostModel::default().with_penalty(SegmentPenalty::Affine {
            per_segment: per_segment as f64,
            per_unit: per_unit as f64,
        });
        for mode in MODES {
            let config = SolverConfig::new(rho).with_mode(mode);
            let slow = solve_daylevel(&h, &cost, &config).unwrap();
            let fast = solve_candidate(&h, &cost, &config).unwrap();
            prop_assert_eq!(fast.score, slow.score);
            prop_assert_eq!(score(&h, &fast.residence, &cost).unwrap(), fast.score);
        }
    }
}

#[test]
fn determinism() {
    let h = LocationHistory::from_runs(&[(0, 20), (1, 3), (2, 30), (0, 9), (1, 40)], 3).unwrap();
    let cost = CostModel::default();
    for rho in [1, 5, 17, 33] {
        let config = SolverConfig::new(rho);
        assert_eq!(
            solve_daylevel(&h, &cost, &config),
            solve_daylevel(&h, &cost, &config)
        );
        assert_eq!(
            solve_candidate(&h, &cost, &config),
            solve_candidate(&h, &cost, &config)
        );
        assert_eq!(
            solve_warped_paper(&h, &cost, &config),
            solve_warped_paper(&h, &cost, &config)
        );
    }
}

#[test]
fn custom_day_cost_is_respected() {
    // Residing at location 1 is twice as expensive when away.
    let cost = CostModel::default().with_day_cost(|residence, observed| match observed {
        Observation::Seen(id) if id != residence => 1.0 + residence.0 as f64,
        _ => 0.0,
    });
    let h = LocationHistory::from_runs(&[(0, 5), (1, 5)], 2).unwrap();
    let config = SolverConfig::new(6);
    let s = solve_daylevel(&h, &cost, &config).unwrap();
    assert_eq!(s.score, 5.0);
    assert_eq!(s.residence, ResidenceHistory::single(LocationId(0), 10));
    assert_eq!(solve_candidate(&h, &cost, &config).unwrap().score, 5.0);
}
