// SPDX-License-Identifier: MIT OR Apache-2.0

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use chrono::{Days, NaiveDate};
use rayon::prelude::*;
use residency::modal::{solve_modal, ModalConfig};
use residency::model::score;
use residency::synth::{compare, evaluate, generate, EvalReport};
use residency::{
    solve, Algorithm, Alphabet, CostModel, Mode, Observation, QInterpretation, SolverConfig,
};
use serde::Serialize;

use crate::config::{parse_bench_config, parse_gen_config};
use crate::error::{CliError, Result};
use crate::ingest::{parse_observations, Format, ObservationRecord};
use crate::quantize::quantize;
use crate::render::{
    parse_segments, render_segments, render_solution, DateRange, RunManifest, SolutionDocument,
};

#[derive(Clone, Debug)]
pub struct InferArgs {
    pub input: PathBuf,
    pub format: Format,
    pub algorithm: Algorithm,
    pub rho: Option<usize>,
    pub mode: Mode,
    pub q: QInterpretation,
    pub interval: Option<usize>,
    pub unit_days: u32,
    pub range: Option<(NaiveDate, NaiveDate)>,
    pub output: PathBuf,
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::io(format!("cannot open {}", path.display()), e))
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("cannot read {}", path.display()), e))
}

/// Writes `text` to `path`, or to stdout when `path` is `-`.
fn write_output(path: &Path, text: &str) -> Result<()> {
    let context = || format!("cannot write {}", path.display());
    if path.as_os_str() == "-" {
        let mut out = std::io::stdout().lock();
        return out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io(context(), e));
    }
    let file = File::create(path).map_err(|e| CliError::io(context(), e))?;
    let mut out = BufWriter::new(file);
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::io(context(), e))
}

fn manifest_for(args: &InferArgs) -> Result<RunManifest> {
    let modal = args.algorithm == Algorithm::Modal;
    if !modal && args.rho.is_none() {
        return Err(CliError::Usage(format!(
            "--rho is required for --algorithm {}",
            args.algorithm
        )));
    }
    if !modal && args.interval.is_some() {
        return Err(CliError::Usage(
            "--interval applies only to --algorithm modal".into(),
        ));
    }
    Ok(RunManifest {
        input: Some(args.input.display().to_string()),
        format: Some(args.format.as_str().to_string()),
        unit_days: args.unit_days,
        range: None,
        rho: (!modal).then_some(args.rho).flatten(),
        mode: (!modal).then_some(args.mode),
        algorithm: args.algorithm.as_str().to_string(),
        q_interpretation: (args.algorithm == Algorithm::WarpedPaper).then_some(args.q),
        interval_length: modal.then(|| {
            args.interval
                .unwrap_or(ModalConfig::default().interval_length)
        }),
        seed: None,
    })
}

fn infer_user(
    user: &str,
    records: &[ObservationRecord],
    args: &InferArgs,
    base: &RunManifest,
) -> Result<String> {
    let trace = quantize(records, args.unit_days, args.range)?;
    let solution = match (args.algorithm, base.interval_length) {
        (Algorithm::Modal, Some(interval_length)) => {
            solve_modal(&trace.history, &ModalConfig { interval_length })?
        }
        _ => {
            let config = SolverConfig::new(base.rho.unwrap_or(0))
                .with_mode(args.mode)
                .with_q(args.q)
                .with_algorithm(args.algorithm);
            solve(&trace.history, &CostModel::default(), &config)?
        }
    };
    let mut manifest = base.clone();
    manifest.range = Some(DateRange {
        start: trace.epoch,
        end: trace.unit_end(trace.history.len()),
    });
    Ok(render_solution(user, &solution, &trace, &manifest).to_json())
}

/// Infers every user's residence history and writes one JSON document per
/// user, in user order.
pub fn infer(args: &InferArgs) -> Result<()> {
    let base = manifest_for(args)?;
    let users = parse_observations(open(&args.input)?, args.format)?;
    let users: Vec<(&String, &Vec<ObservationRecord>)> = users.iter().collect();
    let lines = users
        .par_iter()
        .map(|(user, records)| infer_user(user, records, args, &base))
        .collect::<Result<Vec<_>>>()?;
    let mut text = lines.join("\n");
    text.push('\n');
    write_output(&args.output, &text)
}

#[derive(Serialize)]
struct ObservationRow<'a> {
    user: &'a str,
    time: NaiveDate,
    location: &'a str,
}

/// Writes a synthetic trace as JSON Lines observations (one per observed
/// unit, labels `L0`, `L1`, ...) and its truth as a solution document.
pub fn gen(
    config: &Path,
    seed: Option<u64>,
    output: &Path,
    truth_path: Option<&Path>,
) -> Result<()> {
    let mut file = parse_gen_config(&read_to_string(config)?)?;
    if let Some(seed) = seed {
        file.generator.seed = seed;
    }
    let (truth, observed) = generate(&file.generator)?;
    let alphabet = Alphabet::new((0..file.generator.n_locations).map(|l| format!("L{l}")))?;

    let mut text = String::new();
    for (i, unit) in observed.units().iter().enumerate() {
        if let Observation::Seen(id) = unit {
            let row = ObservationRow {
                user: &file.user,
                time: file.epoch + Days::new(i as u64),
                location: alphabet.label(*id).expect("generated id in alphabet"),
            };
            text.push_str(&serde_json::to_string(&row).expect("row serializes"));
            text.push('\n');
        }
    }
    write_output(output, &text)?;

    let g = &file.generator;
    let last = file.epoch + Days::new(g.n_units as u64 - 1);
    let doc = SolutionDocument {
        user: file.user.clone(),
        algorithm: "truth".into(),
        rho: Some(g.rho_truth),
        mode: Some(Mode::Full),
        score: score(&observed, &truth, &CostModel::default())?,
        segments: render_segments(&truth, &alphabet, file.epoch, 1),
        manifest: RunManifest {
            input: None,
            format: None,
            unit_days: 1,
            range: Some(DateRange {
                start: file.epoch,
                end: last,
            }),
            rho: Some(g.rho_truth),
            mode: Some(Mode::Full),
            algorithm: "truth".into(),
            q_interpretation: None,
            interval_length: None,
            seed: Some(g.seed),
        },
    };
    let truth_path = truth_path.map_or_else(|| default_truth_path(output), Path::to_path_buf);
    write_output(&truth_path, &(doc.to_json() + "\n"))
}

pub fn default_truth_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".truth.json");
    PathBuf::from(name)
}

fn read_documents(path: &Path) -> Result<BTreeMap<String, SolutionDocument>> {
    let mut docs = BTreeMap::new();
    for (i, line) in open(path)?.lines().enumerate() {
        let line_no = i as u64 + 1;
        let line = line.map_err(|e| CliError::io(format!("cannot read {}", path.display()), e))?;
        if line.trim().is_empty() {
            continue;
        }
        let doc: SolutionDocument =
            serde_json::from_str(&line).map_err(|e| CliError::parse(line_no, e.to_string()))?;
        if docs.insert(doc.user.clone(), doc).is_some() {
            return Err(CliError::parse(line_no, "duplicate user"));
        }
    }
    if docs.is_empty() {
        return Err(CliError::EmptyInput);
    }
    Ok(docs)
}

#[derive(Serialize)]
struct UserReport<'a> {
    user: &'a str,
    report: EvalReport,
}

/// Compares inferred documents against truth documents user by user, on the
/// truth's unit grid. Returns one JSON line per truth user.
pub fn eval(inferred: &Path, truth: &Path, tolerance: usize) -> Result<String> {
    let inferred = read_documents(inferred)?;
    let truth = read_documents(truth)?;
    let mut out = String::new();
    for (user, t) in &truth {
        let i = inferred
            .get(user)
            .ok_or_else(|| CliError::Usage(format!("no inferred history for user {user:?}")))?;
        let labels: BTreeSet<&str> = t
            .segments
            .iter()
            .chain(&i.segments)
            .map(|s| s.location.as_str())
            .collect();
        let alphabet = Alphabet::new(labels)?;
        let epoch = t
            .manifest
            .range
            .as_ref()
            .map(|r| r.start)
            .or_else(|| t.segments.first().map(|s| s.start))
            .ok_or(CliError::EmptyInput)?;
        let unit_days = t.manifest.unit_days;
        let true_history = parse_segments(&t.segments, &alphabet, epoch, unit_days)?;
        let inferred_history = parse_segments(&i.segments, &alphabet, epoch, unit_days)?;
        let report = evaluate(&inferred_history, &true_history, tolerance)?;
        out.push_str(
            &serde_json::to_string(&UserReport { user, report }).expect("report serializes"),
        );
        out.push('\n');
    }
    Ok(out)
}

/// Runs the configured comparison; returns the text table and the JSON
/// report.
pub fn bench(config: &Path) -> Result<(String, String)> {
    let file = parse_bench_config(&read_to_string(config)?)?;
    let report = compare(
        &file.seeds,
        &file.solvers,
        &file.generator.generator,
        file.tolerance,
    )?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    Ok((report.to_text(), json))
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    write_output(path, text)
}
