// SPDX-License-Identifier: MIT OR Apache-2.0

//! JSON documents for solutions and the configuration that produced them.

use chrono::NaiveDate;
use residency::{
    Alphabet, LocationId, Mode, QInterpretation, ResidenceHistory, ResidenceSegment, Solution,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::quantize::{unit_start, Trace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DateRange {
    pub start: NaiveDate,
    pub end: NaiveDate,
}

/// The configuration behind one output document. Fields that do not apply
/// to the run are `null`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub input: Option<String>,
    pub format: Option<String>,
    pub unit_days: u32,
    pub range: Option<DateRange>,
    pub rho: Option<usize>,
    pub mode: Option<Mode>,
    pub algorithm: String,
    pub q_interpretation: Option<QInterpretation>,
    pub interval_length: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentDocument {
    pub start: NaiveDate,
    pub end: NaiveDate,
    pub location: String,
}

/// Field order here is the key order of the emitted JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionDocument {
    pub user: String,
    pub algorithm: String,
    pub rho: Option<usize>,
    pub mode: Option<Mode>,
    pub score: f64,
    pub segments: Vec<SegmentDocument>,
    pub manifest: RunManifest,
}

impl SolutionDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }
}

/// Segment dates for `residence`; a segment ends on the last day of its
/// last unit.
pub fn render_segments(
    residence: &ResidenceHistory,
    alphabet: &Alphabet,
    epoch: NaiveDate,
    unit_days: u32,
) -> Vec<SegmentDocument> {
    residence
        .segments()
        .iter()
        .map(|s| SegmentDocument {
            start: unit_start(epoch, unit_days, s.start),
            end: unit_start(epoch, unit_days, s.end() + 1)
                .pred_opt()
                .expect("date in range"),
            location: alphabet
                .label(s.location)
                .map_or_else(|| format!("#{}", s.location.0), str::to_string),
        })
        .collect()
}

pub fn render_solution(
    user: &str,
    solution: &Solution,
    trace: &Trace,
    manifest: &RunManifest,
) -> SolutionDocument {
    SolutionDocument {
        user: user.to_string(),
        algorithm: manifest.algorithm.clone(),
        rho: manifest.rho,
        mode: manifest.mode,
        score: solution.score,
        segments: render_segments(
            &solution.residence,
            &trace.alphabet,
            trace.epoch,
            trace.unit_days,
        ),
        manifest: manifest.clone(),
    }
}

/// Inverse of [`render_segments`]. Dates must fall on unit boundaries and
/// labels must be in `alphabet`.
pub fn parse_segments(
    segments: &[SegmentDocument],
    alphabet: &Alphabet,
    epoch: NaiveDate,
    unit_days: u32,
) -> Result<ResidenceHistory> {
    let unit_days = unit_days.max(1) as i64;
    let bad = |m: String| CliError::Core(residency::Error::InvalidResidence(m));
    let mut out = Vec::with_capacity(segments.len());
    for s in segments {
        let from = (s.start - epoch).num_days();
        let to = (s.end - epoch).num_days() + 1;
        if from < 0 || from % unit_days != 0 || to % unit_days != 0 || to <= from {
            return Err(bad(format!(
                "segment {}..{} does not align with {unit_days}-day units from {epoch}",
                s.start, s.end
            )));
        }
        let location: LocationId = alphabet
            .id(&s.location)
            .ok_or_else(|| bad(format!("unknown location {:?}", s.location)))?;
        out.push(ResidenceSegment {
            start: (from / unit_days) as usize + 1,
            len: ((to - from) / unit_days) as usize,
            location,
        });
    }
    Ok(ResidenceHistory::new(out)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn date(s: &str) -> NaiveDate {
        s.parse().unwrap()
    }

    #[test]
    fn single_segment_dates() {
        let alphabet = Alphabet::new(["A"]).unwrap();
        let r = ResidenceHistory::single(LocationId(0), 10);
        let docs = render_segments(&r, &alphabet, date("2020-01-01"), 1);
        assert_eq!(
            docs,
            vec![SegmentDocument {
                start: date("2020-01-01"),
                end: date("2020-01-10"),
                location: "A".into(),
            }]
        );
        assert_eq!(
            parse_segments(&docs, &alphabet, date("2020-01-01"), 1).unwrap(),
            r
        );
    }

    #[test]
    fn multi_day_units() {
        let alphabet = Alphabet::new(["A", "B"]).unwrap();
        let r = ResidenceHistory::from_lengths(&[(1, 2), (0, 3)]).unwrap();
        let docs = render_segments(&r, &alphabet, date("2021-02-25"), 7);
        assert_eq!(docs[0].end, date("2021-03-10"));
        assert_eq!(docs[1].start, date("2021-03-11"));
        assert_eq!(
            parse_segments(&docs, &alphabet, date("2021-02-25"), 7).unwrap(),
            r
        );
        let mut shifted = docs.clone();
        shifted[1].start = date("2021-03-12");
        assert!(parse_segments(&shifted, &alphabet, date("2021-02-25"), 7).is_err());
    }
}
