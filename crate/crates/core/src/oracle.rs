// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exhaustive reference solver.
//!
//! Every sequence in `L^n` is generated, converted to segments and kept if
//! it passes [`validate`]. This is deliberately naive and is guarded by hard
//! size limits.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exact::{check_instance, Params, Solution};
use crate::model::{
    score, validate, Algorithm, CostModel, LocationHistory, LocationId, Mode, ResidenceHistory,
    SolverConfig,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_units: usize,
    /// Upper bound on `alphabet_size ^ n`.
    pub max_sequences: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_units: 14,
            max_sequences: 5_000_000,
        }
    }
}

impl Budget {
    fn check(&self, n: usize, alphabet_size: usize) -> Result<()> {
        if n > self.max_units {
            return Err(Error::InstanceTooLarge(format!(
                "{n} units exceeds the limit of {}",
                self.max_units
            )));
        }
        let total = (alphabet_size as u64).checked_pow(n as u32);
        match total {
            Some(total) if total <= self.max_sequences => Ok(()),
            _ => Err(Error::InstanceTooLarge(format!(
                "{alphabet_size}^{n} sequences exceeds the limit of {}",
                self.max_sequences
            ))),
        }
    }
}

/// All residence histories with the given minimum length, lexicographic by
/// their dense sequence.
pub struct FeasibleHistories {
    digits: Vec<u32>,
    alphabet_size: u32,
    rho: usize,
    mode: Mode,
    exhausted: bool,
}

impl Iterator for FeasibleHistories {
    type Item = ResidenceHistory;

    fn next(&mut self) -> Option<ResidenceHistory> {
        while !self.exhausted {
            let dense: Vec<LocationId> = self.digits.iter().map(|&d| LocationId(d)).collect();
            self.advance();
            let candidate = ResidenceHistory::from_dense(&dense);
            if validate(&candidate, self.rho, self.mode).is_empty() {
                return Some(candidate);
            }
        }
        None
    }
}

impl FeasibleHistories {
    fn advance(&mut self) {
        for digit in self.digits.iter_mut().rev() {
            *digit += 1;
            if *digit < self.alphabet_size {
                return;
            }
            *digit = 0;
        }
        self.exhausted = true;
    }
}

pub fn enumerate_feasible(
    n: usize,
    alphabet_size: usize,
    rho: usize,
    mode: Mode,
) -> Result<FeasibleHistories> {
    enumerate_feasible_with_budget(n, alphabet_size, rho, mode, &Budget::default())
}

pub fn enumerate_feasible_with_budget(
    n: usize,
    alphabet_size: usize,
    rho: usize,
    mode: Mode,
    budget: &Budget,
) -> Result<FeasibleHistories> {
    if n == 0 {
        return Err(Error::EmptyHistory);
    }
    if alphabet_size == 0 {
        return Err(Error::EmptyAlphabet);
    }
    if rho == 0 {
        return Err(Error::ConfigError("rho must be at least 1".into()));
    }
    budget.check(n, alphabet_size)?;
    Ok(FeasibleHistories {
        digits: vec![0; n],
        alphabet_size: alphabet_size as u32,
        rho,
        mode,
        exhausted: false,
    })
}

/// Minimum score and every history attaining it.
#[derive(Clone, Debug, PartialEq)]
pub struct OptimaSet {
    pub min_score: f64,
    pub histories: BTreeSet<ResidenceHistory>,
}

impl OptimaSet {
    pub fn contains(&self, residence: &ResidenceHistory) -> bool {
        self.histories.contains(residence)
    }

    /// Fewest segments first, then enumeration order.
    pub fn preferred(&self) -> &ResidenceHistory {
        self.histories
            .iter()
            .min_by_key(|r| (r.segments().len(), r.to_dense()))
            .expect("optima set is never empty")
    }
}

pub fn solve_bruteforce(
    history: &LocationHistory,
    cost: &CostModel,
    config: &SolverConfig,
) -> Result<OptimaSet> {
    solve_bruteforce_with_budget(history, cost, config, &Budget::default())
}

pub fn solve_bruteforce_with_budget(
    history: &LocationHistory,
    cost: &CostModel,
    config: &SolverConfig,
    budget: &Budget,
) -> Result<OptimaSet> {
    let rho = check_instance(history, config)?;
    let feasible = enumerate_feasible_with_budget(
        history.len(),
        history.alphabet_size(),
        rho,
        config.mode,
        budget,
    )?;
    let mut min_score = f64::INFINITY;
    let mut histories = BTreeSet::new();
    for candidate in feasible {
        let s = score(history, &candidate, cost)?;
        if s < min_score {
            min_score = s;
            histories.clear();
        }
        if s == min_score {
            histories.insert(candidate);
        }
    }
    Ok(OptimaSet {
        min_score,
        histories,
    })
}

/// The oracle's [`OptimaSet::preferred`] optimum as a [`Solution`].
pub fn solve_bruteforce_solution(
    history: &LocationHistory,
    cost: &CostModel,
    config: &SolverConfig,
) -> Result<Solution> {
    let optima = solve_bruteforce(history, cost, config)?;
    Ok(Solution {
        residence: optima.preferred().clone(),
        score: optima.min_score,
        algorithm: Algorithm::Bruteforce,
        params: Params::Exact(config.with_algorithm(Algorithm::Bruteforce)),
    })
}
