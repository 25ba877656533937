// SPDX-License-Identifier: MIT OR Apache-2.0

//! Flat `key = value` experiment files.
//!
//! One pair per line; blank lines and lines starting with `#` are ignored.
//! Generator keys, all optional:
//!
//! ```text
//! n_units = 365
//! n_locations = 4
//! rho_truth = 60
//! max_len = 180
//! p_travel = 0.05
//! max_trip = 7
//! p_missing = 0.0
//! seed = 0
//! user = synthetic
//! epoch = 2020-01-01
//! ```
//!
//! `bench` additionally reads
//!
//! ```text
//! seeds = 0..100            # half-open range, or a comma list: 1, 5, 9
//! tolerance = 30            # move-matching tolerance in units
//! solvers = candidate:30:full, warped:30:full:literal, modal:30
//! ```
//!
//! A solver is `algorithm[:rho[:mode[:q]]]`, or `modal[:interval]`; the
//! spec string doubles as the solver's name in reports.

use std::collections::BTreeMap;
use std::str::FromStr;

use chrono::NaiveDate;
use residency::modal::ModalConfig;
use residency::synth::{GenConfig, SolverSpec};
use residency::{Algorithm, SolverConfig};

use crate::error::{CliError, Result};

const GEN_KEYS: &[&str] = &[
    "n_units",
    "n_locations",
    "rho_truth",
    "max_len",
    "p_travel",
    "max_trip",
    "p_missing",
    "seed",
    "user",
    "epoch",
];
const BENCH_KEYS: &[&str] = &["seeds", "tolerance", "solvers"];

/// Parsed key-value pairs with the line each came from.
#[derive(Clone, Debug, Default)]
pub struct KeyValues(BTreeMap<String, (u64, String)>);

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i as u64 + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::parse(line_no, format!("expected key = value, got {line:?}"))
            })?;
            let value = value.split('#').next().unwrap_or("").trim();
            if map
                .insert(key.trim().to_string(), (line_no, value.to_string()))
                .is_some()
            {
                return Err(CliError::parse(
                    line_no,
                    format!("duplicate key {:?}", key.trim()),
                ));
            }
        }
        Ok(Self(map))
    }

    fn check_keys(&self, allowed: &[&[&str]]) -> Result<()> {
        for (key, (line, _)) in &self.0 {
            if !allowed.iter().any(|set| set.contains(&key.as_str())) {
                return Err(CliError::parse(*line, format!("unknown key {key:?}")));
            }
        }
        Ok(())
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.0.get(key) {
            None => Ok(None),
            Some((line, value)) => value
                .parse()
                .map(Some)
                .map_err(|_| CliError::parse(*line, format!("invalid value {value:?} for {key}"))),
        }
    }

    fn line(&self, key: &str) -> u64 {
        self.0.get(key).map_or(0, |(line, _)| *line)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenFile {
    pub generator: GenConfig,
    pub user: String,
    pub epoch: NaiveDate,
}

fn gen_from(kv: &KeyValues) -> Result<GenFile> {
    let d = GenConfig::default();
    let generator = GenConfig {
        n_units: kv.get("n_units")?.unwrap_or(d.n_units),
        n_locations: kv.get("n_locations")?.unwrap_or(d.n_locations),
        rho_truth: kv.get("rho_truth")?.unwrap_or(d.rho_truth),
        max_len: kv.get("max_len")?.unwrap_or(d.max_len),
        p_travel: kv.get("p_travel")?.unwrap_or(d.p_travel),
        max_trip: kv.get("max_trip")?.unwrap_or(d.max_trip),
        p_missing: kv.get("p_missing")?.unwrap_or(d.p_missing),
        seed: kv.get("seed")?.unwrap_or(d.seed),
    };
    Ok(GenFile {
        generator,
        user: kv.get("user")?.unwrap_or_else(|| "synthetic".to_string()),
        epoch: kv
            .get("epoch")?
            .unwrap_or_else(|| NaiveDate::from_ymd_opt(2020, 1, 1).unwrap()),
    })
}

pub fn parse_gen_config(text: &str) -> Result<GenFile> {
    let kv = KeyValues::parse(text)?;
    kv.check_keys(&[GEN_KEYS])?;
    gen_from(&kv)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchFile {
    pub generator: GenFile,
    pub seeds: Vec<u64>,
    pub tolerance: usize,
    pub solvers: Vec<SolverSpec>,
}

fn parse_seeds(value: &str) -> Option<Vec<u64>> {
    if let Some((a, b)) = value.split_once("..") {
        let (a, b): (u64, u64) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
        return Some((a..b).collect());
    }
    value.split(',').map(|s| s.trim().parse().ok()).collect()
}

/// Parses one `algorithm[:rho[:mode[:q]]]` or `modal[:interval]` spec.
pub fn parse_solver(spec: &str) -> std::result::Result<SolverSpec, String> {
    let mut parts = spec.split(':').map(str::trim);
    let algorithm: Algorithm = parts
        .next()
        .unwrap_or("")
        .parse()
        .map_err(|_| format!("unknown algorithm in {spec:?}"))?;
    let number = |p: Option<&str>, default: usize| -> std::result::Result<usize, String> {
        p.map_or(Ok(default), |s| {
            s.parse()
                .map_err(|_| format!("bad number {s:?} in {spec:?}"))
        })
    };
    if algorithm == Algorithm::Modal {
        let interval = number(parts.next(), ModalConfig::default().interval_length)?;
        if parts.next().is_some() {
            return Err(format!("too many fields in {spec:?}"));
        }
        return Ok(SolverSpec::modal(
            spec,
            ModalConfig {
                interval_length: interval,
            },
        ));
    }
    let rho = number(parts.next(), 30)?;
    let mut config = SolverConfig::new(rho).with_algorithm(algorithm);
    if let Some(mode) = parts.next() {
        config = config.with_mode(mode.parse().map_err(|_| format!("bad mode in {spec:?}"))?);
    }
    if let Some(q) = parts.next() {
        config = config.with_q(q.parse().map_err(|_| format!("bad q in {spec:?}"))?);
    }
    if parts.next().is_some() {
        return Err(format!("too many fields in {spec:?}"));
    }
    Ok(SolverSpec::exact(spec, config))
}

pub fn parse_bench_config(text: &str) -> Result<BenchFile> {
    let kv = KeyValues::parse(text)?;
    kv.check_keys(&[GEN_KEYS, BENCH_KEYS])?;
    let seeds = match kv.0.get("seeds") {
        None => (0..10).collect(),
        Some((line, value)) => parse_seeds(value)
            .ok_or_else(|| CliError::parse(*line, format!("invalid seeds {value:?}")))?,
    };
    let solvers = match kv.0.get("solvers") {
        None => vec![
            parse_solver("candidate:30:full").expect("default spec"),
            parse_solver("modal:30").expect("default spec"),
        ],
        Some((_, value)) => value
            .split(',')
            .map(|s| parse_solver(s.trim()).map_err(|m| CliError::parse(kv.line("solvers"), m)))
            .collect::<Result<_>>()?,
    };
    Ok(BenchFile {
        generator: gen_from(&kv)?,
        seeds,
        tolerance: kv.get("tolerance")?.unwrap_or(30),
        solvers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use residency::synth::SolverKind;
    use residency::{Mode, QInterpretation};

    #[test]
    fn generator_keys() {
        let g =
            parse_gen_config("# test\nn_units = 90\np_travel=0.2 # trips\nuser = u7\n").unwrap();
        assert_eq!(g.generator.n_units, 90);
        assert_eq!(g.generator.p_travel, 0.2);
        assert_eq!(g.generator.n_locations, GenConfig::default().n_locations);
        assert_eq!(g.user, "u7");
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        assert!(matches!(
            parse_gen_config("x = 1"),
            Err(CliError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_gen_config("seed = 1\nseed = 2"),
            Err(CliError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_gen_config("\nseed"),
            Err(CliError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_gen_config("seeds = 0..3"),
            Err(CliError::Parse { .. })
        ));
    }

    #[test]
    fn bench_keys() {
        let b = parse_bench_config(
            "seeds = 3..6\nsolvers = warped:12:trailing-relaxed:literal, modal:10\ntolerance = 5",
        )
        .unwrap();
        assert_eq!(b.seeds, vec![3, 4, 5]);
        assert_eq!(b.tolerance, 5);
        assert_eq!(b.solvers[0].name, "warped:12:trailing-relaxed:literal");
        let expected = SolverConfig::new(12)
            .with_algorithm(Algorithm::WarpedPaper)
            .with_mode(Mode::TrailingRelaxed)
            .with_q(QInterpretation::Literal);
        assert_eq!(b.solvers[0].kind, SolverKind::Exact(expected));
        assert_eq!(
            b.solvers[1].kind,
            SolverKind::Modal(ModalConfig {
                interval_length: 10
            })
        );
        assert_eq!(
            parse_bench_config("seeds = 4, 1").unwrap().seeds,
            vec![4, 1]
        );
        assert!(parse_bench_config("solvers = fast").is_err());
    }
}
