// SPDX-License-Identifier: MIT OR Apache-2.0

//! Observation records to a fixed-unit location history.

use std::collections::BTreeSet;

use chrono::{Days, NaiveDate};
use residency::{Alphabet, LocationHistory, Observation};

use crate::error::{CliError, Result};
use crate::ingest::ObservationRecord;

/// One user's quantized trace. Unit `u` (1-based) covers the `unit_days`
/// days starting at `epoch + (u - 1) * unit_days`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub history: LocationHistory,
    pub alphabet: Alphabet,
    pub epoch: NaiveDate,
    pub unit_days: u32,
}

impl Trace {
    pub fn unit_start(&self, unit: usize) -> NaiveDate {
        unit_start(self.epoch, self.unit_days, unit)
    }

    /// Last day covered by `unit`.
    pub fn unit_end(&self, unit: usize) -> NaiveDate {
        self.unit_start(unit + 1) - Days::new(1)
    }
}

pub(crate) fn unit_start(epoch: NaiveDate, unit_days: u32, unit: usize) -> NaiveDate {
    epoch + Days::new((unit as u64 - 1) * unit_days as u64)
}

/// Builds the unit sequence from `range` (inclusive dates) or, by default,
/// from the earliest to the latest observed date. Each unit takes the
/// location seen most often within it; among tied locations the one seen
/// first wins. Units without observations are [`Observation::Unknown`].
/// Records outside the range are dropped. Location ids follow the sorted
/// order of the user's labels.
pub fn quantize(
    records: &[ObservationRecord],
    unit_days: u32,
    range: Option<(NaiveDate, NaiveDate)>,
) -> Result<Trace> {
    if unit_days == 0 {
        return Err(CliError::Usage(
            "unit length must be at least one day".into(),
        ));
    }
    let first = records
        .iter()
        .map(|r| r.time)
        .min()
        .ok_or(CliError::EmptyInput)?;
    let last = records
        .iter()
        .map(|r| r.time)
        .max()
        .ok_or(CliError::EmptyInput)?;
    let (start, end) = match range {
        Some((s, e)) if e < s => {
            return Err(CliError::Usage(format!("range end {e} precedes start {s}")))
        }
        Some(r) => r,
        None => (first.date_naive(), last.date_naive()),
    };
    let days = (end - start).num_days() as usize + 1;
    let n = days.div_ceil(unit_days as usize);

    let labels: BTreeSet<&str> = records.iter().map(|r| r.location.as_str()).collect();
    let alphabet = Alphabet::new(labels)?;

    // Per unit: (count, first position in time order) for each location.
    let mut tallies: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut order: Vec<&ObservationRecord> = records.iter().collect();
    order.sort_by_key(|r| r.time);
    for (pos, r) in order.iter().enumerate() {
        let date = r.time.date_naive();
        if date < start || date > end {
            continue;
        }
        let unit = (date - start).num_days() as usize / unit_days as usize;
        let slot = &mut tallies[unit];
        if slot.is_empty() {
            slot.resize(alphabet.len(), (0, usize::MAX));
        }
        let id = alphabet
            .id(&r.location)
            .expect("label interned above")
            .index();
        slot[id].0 += 1;
        slot[id].1 = slot[id].1.min(pos);
    }

    let units = tallies
        .iter()
        .map(|slot| {
            slot.iter()
                .enumerate()
                .filter(|(_, t)| t.0 > 0)
                .min_by_key(|(_, &(count, pos))| (std::cmp::Reverse(count), pos))
                .map_or(Observation::Unknown, |(id, _)| {
                    Observation::Seen(residency::LocationId(id as u32))
                })
        })
        .collect();
    let history = LocationHistory::new(units, alphabet.len())?.with_unit_duration(unit_days);
    Ok(Trace {
        history,
        alphabet,
        epoch: start,
        unit_days,
    })
}
