// SPDX-License-Identifier: MIT OR Apache-2.0

//! Synthetic ground truth and solver comparison.

mod eval;
mod generate;
mod rng;

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use eval::{evaluate, evaluate_observed, EvalReport};
pub use generate::{generate, GenConfig};
pub use rng::SynthRng;

use crate::error::Result;
use crate::exact::{solve, Solution};
use crate::modal::{solve_modal, ModalConfig};
use crate::model::{CostModel, LocationHistory, SolverConfig};

/// A named solver configuration taking part in a comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverSpec {
    pub name: String,
    pub kind: SolverKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SolverKind {
    Exact(SolverConfig),
    Modal(ModalConfig),
}

impl SolverSpec {
    pub fn exact(name: impl Into<String>, config: SolverConfig) -> Self {
        Self {
            name: name.into(),
            kind: SolverKind::Exact(config),
        }
    }

    pub fn modal(name: impl Into<String>, config: ModalConfig) -> Self {
        Self {
            name: name.into(),
            kind: SolverKind::Modal(config),
        }
    }

    pub fn run(&self, history: &LocationHistory) -> Result<Solution> {
        match &self.kind {
            SolverKind::Exact(config) => solve(history, &CostModel::default(), config),
            SolverKind::Modal(config) => solve_modal(history, config),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub seed: u64,
    pub report: EvalReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverSummary {
    pub solver: String,
    pub instances: usize,
    pub mean_accuracy: f64,
    pub median_accuracy: f64,
    pub exact_recoveries: usize,
    pub true_moves: usize,
    pub inferred_moves: usize,
    pub matched_moves: usize,
    pub mean_lag: Option<f64>,
    pub median_lag: Option<f64>,
    pub mean_abs_lag: Option<f64>,
    pub mean_eq1_inferred: f64,
    pub mean_eq1_truth: f64,
    pub per_instance: Vec<InstanceResult>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub generator: GenConfig,
    pub seeds: Vec<u64>,
    pub match_tolerance: usize,
    pub rows: Vec<SolverSummary>,
}

fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

fn median(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    Some(if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    })
}

fn summarize(solver: &str, per_instance: Vec<InstanceResult>) -> SolverSummary {
    let accuracy: Vec<f64> = per_instance
        .iter()
        .map(|r| r.report.per_day_accuracy)
        .collect();
    let lags: Vec<f64> = per_instance
        .iter()
        .flat_map(|r| r.report.lags.iter().map(|&l| l as f64))
        .collect();
    let abs_lags: Vec<f64> = lags.iter().map(|l| l.abs()).collect();
    let eq1 = |f: fn(&EvalReport) -> Option<f64>| {
        let xs: Vec<f64> = per_instance.iter().filter_map(|r| f(&r.report)).collect();
        mean(&xs).unwrap_or(0.0)
    };
    SolverSummary {
        solver: solver.to_string(),
        instances: per_instance.len(),
        mean_accuracy: mean(&accuracy).unwrap_or(0.0),
        median_accuracy: median(&accuracy).unwrap_or(0.0),
        exact_recoveries: accuracy.iter().filter(|&&a| a == 1.0).count(),
        true_moves: per_instance.iter().map(|r| r.report.true_moves).sum(),
        inferred_moves: per_instance.iter().map(|r| r.report.inferred_moves).sum(),
        matched_moves: per_instance.iter().map(|r| r.report.matched_moves).sum(),
        mean_lag: mean(&lags),
        median_lag: median(&lags),
        mean_abs_lag: mean(&abs_lags),
        mean_eq1_inferred: eq1(|r| r.eq1_score_inferred),
        mean_eq1_truth: eq1(|r| r.eq1_score_truth),
        per_instance,
    }
}

/// Generates one instance per seed, runs every solver on it and aggregates
/// the evaluations. Instances are processed in parallel; results are
/// ordered by seed.
pub fn compare(
    seeds: &[u64],
    solvers: &[SolverSpec],
    generator: &GenConfig,
    match_tolerance: usize,
) -> Result<CompareReport> {
    let mut seeds = seeds.to_vec();
    seeds.sort_unstable();
    seeds.dedup();

    let per_seed: Vec<Vec<InstanceResult>> = seeds
        .par_iter()
        .map(|&seed| {
            let (truth, observed) = generate(&generator.with_seed(seed))?;
            solvers
                .iter()
                .map(|spec| {
                    let solution = spec.run(&observed)?;
                    let report =
                        evaluate_observed(&solution.residence, &truth, &observed, match_tolerance)?;
                    Ok(InstanceResult { seed, report })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let rows = solvers
        .iter()
        .enumerate()
        .map(|(i, spec)| summarize(&spec.name, per_seed.iter().map(|r| r[i].clone()).collect()))
        .collect();
    Ok(CompareReport {
        generator: generator.clone(),
        seeds,
        match_tolerance,
        rows,
    })
}

impl CompareReport {
    /// Aligned plain-text table, one row per solver.
    pub fn to_text(&self) -> String {
        let fmt_opt = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| format!("{v:.2}"));
        let header = [
            "solver",
            "n",
            "mean_acc",
            "median_acc",
            "exact",
            "moves",
            "inferred",
            "matched",
            "mean_lag",
            "median_lag",
            "mean_abs_lag",
            "eq1_inferred",
            "eq1_truth",
        ];
        let mut rows: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
        for r in &self.rows {
            rows.push(vec![
                r.solver.clone(),
                r.instances.to_string(),
                format!("{:.4}", r.mean_accuracy),
                format!("{:.4}", r.median_accuracy),
                r.exact_recoveries.to_string(),
                r.true_moves.to_string(),
                r.inferred_moves.to_string(),
                r.matched_moves.to_string(),
                fmt_opt(r.mean_lag),
                fmt_opt(r.median_lag),
                fmt_opt(r.mean_abs_lag),
                format!("{:.2}", r.mean_eq1_inferred),
                format!("{:.2}", r.mean_eq1_truth),
            ]);
        }
        let widths: Vec<usize> = (0..header.len())
            .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &rows {
            let line: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(c, cell)| {
                    if c == 0 {
                        format!("{cell:<w$}", w = widths[c])
                    } else {
                        format!("{cell:>w$}", w = widths[c])
                    }
                })
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out
    }
}
