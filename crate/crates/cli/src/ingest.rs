// SPDX-License-Identifier: MIT OR Apache-2.0

//! Observation traces in CSV (`user,time,location` header) or JSON Lines
//! (one `{"user", "time", "location"}` object per line).

use std::collections::BTreeMap;
use std::io::{BufRead, Read};
use std::str::FromStr;

use chrono::{DateTime, NaiveDate, NaiveDateTime, Utc};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(CliError::Usage(format!("unknown format {other:?}"))),
        }
    }
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservationRecord {
    pub user: String,
    pub time: DateTime<Utc>,
    pub location: String,
}

/// Parses a date or date-time. Zone-less values are taken as UTC, bare
/// dates as midnight UTC.
pub fn parse_time(s: &str) -> Option<DateTime<Utc>> {
    let s = s.trim();
    if let Ok(t) = DateTime::parse_from_rfc3339(s) {
        return Some(t.with_timezone(&Utc));
    }
    for fmt in [
        "%Y-%m-%dT%H:%M:%S%.f",
        "%Y-%m-%d %H:%M:%S%.f",
        "%Y-%m-%dT%H:%M",
        "%Y-%m-%d %H:%M",
    ] {
        if let Ok(t) = NaiveDateTime::parse_from_str(s, fmt) {
            return Some(t.and_utc());
        }
    }
    NaiveDate::parse_from_str(s, "%Y-%m-%d")
        .ok()
        .map(|d| d.and_hms_opt(0, 0, 0).unwrap().and_utc())
}

fn record(
    line: u64,
    user: Option<&str>,
    time: Option<&str>,
    location: Option<&str>,
) -> Result<ObservationRecord> {
    let field = |value: Option<&str>, name: &str| -> Result<String> {
        match value.map(str::trim) {
            Some(v) if !v.is_empty() => Ok(v.to_string()),
            _ => Err(CliError::parse(line, format!("missing {name}"))),
        }
    };
    let user = field(user, "user")?;
    let raw_time = field(time, "time")?;
    let location = field(location, "location")?;
    let time = parse_time(&raw_time)
        .ok_or_else(|| CliError::parse(line, format!("unparseable time {raw_time:?}")))?;
    Ok(ObservationRecord {
        user,
        time,
        location,
    })
}

fn read_csv(input: impl Read) -> Result<Vec<ObservationRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| CliError::parse(1, e.to_string()))?
        .clone();
    let column = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| CliError::parse(1, format!("header lacks a {name:?} column")))
    };
    let (user, time, location) = (column("user")?, column("time")?, column("location")?);

    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::parse(line, e.to_string())
        })?;
        let line = row.position().map_or(0, |p| p.line());
        out.push(record(
            line,
            row.get(user),
            row.get(time),
            row.get(location),
        )?);
    }
    Ok(out)
}

#[derive(Deserialize)]
struct JsonRow {
    user: Option<String>,
    time: Option<String>,
    location: Option<String>,
}

fn read_jsonl(input: impl BufRead) -> Result<Vec<ObservationRecord>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line_no = i as u64 + 1;
        let line = line.map_err(|e| CliError::parse(line_no, e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let row: JsonRow =
            serde_json::from_str(&line).map_err(|e| CliError::parse(line_no, e.to_string()))?;
        out.push(record(
            line_no,
            row.user.as_deref(),
            row.time.as_deref(),
            row.location.as_deref(),
        )?);
    }
    Ok(out)
}

/// Reads every record, grouped by user and sorted by time within a user.
/// Records with equal timestamps keep their input order.
pub fn parse_observations(
    input: impl BufRead,
    format: Format,
) -> Result<BTreeMap<String, Vec<ObservationRecord>>> {
    let records = match format {
        Format::Csv => read_csv(input)?,
        Format::Jsonl => read_jsonl(input)?,
    };
    if records.is_empty() {
        return Err(CliError::EmptyInput);
    }
    let mut users: BTreeMap<String, Vec<ObservationRecord>> = BTreeMap::new();
    for r in records {
        users.entry(r.user.clone()).or_default().push(r);
    }
    for list in users.values_mut() {
        list.sort_by_key(|r| r.time);
    }
    Ok(users)
}
