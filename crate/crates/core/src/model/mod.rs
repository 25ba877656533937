// SPDX-License-Identifier: MIT OR Apache-2.0

//! Domain types shared by every solver: the location alphabet, dense and
//! run-length encoded location histories, residence histories, cost models
//! and solver configuration.

mod config;
mod cost;
mod residence;
mod warp;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use config::{Algorithm, Mode, QInterpretation, SolverConfig};
pub use cost::{score, score_warped, CostModel, DayCost, SegmentPenalty};
pub use residence::{validate, ResidenceHistory, ResidenceSegment, Violation};
pub use warp::{unwarp, warp, Run, TimeWarpedHistory};

/// Dense integer id of a location label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LocationId(pub u32);

impl LocationId {
    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for LocationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// One unit of a location history.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Observation {
    Seen(LocationId),
    /// No observation fell in this unit.
    Unknown,
}

impl Observation {
    pub const fn location(self) -> Option<LocationId> {
        match self {
            Observation::Seen(id) => Some(id),
            Observation::Unknown => None,
        }
    }
}

impl From<LocationId> for Observation {
    fn from(id: LocationId) -> Self {
        Observation::Seen(id)
    }
}

/// Ordered set of distinct place labels; a label's id is its position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    labels: Vec<String>,
    index: HashMap<String, LocationId>,
}

impl Alphabet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::default();
        for label in labels {
            let label = label.into();
            if alphabet.index.contains_key(&label) {
                return Err(Error::DuplicateLabel(label));
            }
            alphabet.intern(label);
        }
        Ok(alphabet)
    }

    /// Returns the id of `label`, adding it if absent.
    pub fn intern(&mut self, label: impl Into<String>) -> LocationId {
        let label = label.into();
        if let Some(&id) = self.index.get(&label) {
            return id;
        }
        let id = LocationId(self.labels.len() as u32);
        self.index.insert(label.clone(), id);
        self.labels.push(label);
        id
    }

    pub fn id(&self, label: &str) -> Option<LocationId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: LocationId) -> Option<&str> {
        self.labels.get(id.index()).map(String::as_str)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Dense per-unit location trace `h_1..h_n`.
///
/// Residence locations are drawn from `0..alphabet_size`, which may include
/// labels that never appear in `units`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocationHistory {
    units: Vec<Observation>,
    alphabet_size: usize,
    unit_duration: u32,
}

impl LocationHistory {
    pub fn new(units: Vec<Observation>, alphabet_size: usize) -> Result<Self> {
        for unit in &units {
            if let Observation::Seen(id) = *unit {
                if id.index() >= alphabet_size {
                    return Err(Error::UnknownLocation {
                        id: id.0,
                        alphabet_size,
                    });
                }
            }
        }
        Ok(Self {
            units,
            alphabet_size,
            unit_duration: 1,
        })
    }

    /// Builds a fully observed history from raw ids.
    pub fn from_ids(ids: &[u32], alphabet_size: usize) -> Result<Self> {
        Self::new(
            ids.iter()
                .map(|&id| Observation::Seen(LocationId(id)))
                .collect(),
            alphabet_size,
        )
    }

    /// Concatenates `(id, count)` runs of observed locations.
    pub fn from_runs(runs: &[(u32, usize)], alphabet_size: usize) -> Result<Self> {
        let mut units = Vec::with_capacity(runs.iter().map(|r| r.1).sum());
        for &(id, count) in runs {
            units.extend(std::iter::repeat_n(
                Observation::Seen(LocationId(id)),
                count,
            ));
        }
        Self::new(units, alphabet_size)
    }

    /// Parses a compact letter notation: `A`..`Z` map to ids 0..25 and `?`
    /// marks an unknown unit. The alphabet spans up to the largest letter.
    ///
    /// ```
    /// # use residency::model::{LocationHistory, Observation};
    /// let h = LocationHistory::from_compact("AB?B").unwrap();
    /// assert_eq!(h.len(), 4);
    /// assert_eq!(h.alphabet_size(), 2);
    /// assert_eq!(h.units()[2], Observation::Unknown);
    /// ```
    pub fn from_compact(s: &str) -> Result<Self> {
        let mut units = Vec::with_capacity(s.len());
        let mut alphabet_size = 0;
        for c in s.chars().filter(|c| !c.is_whitespace()) {
            match c {
                '?' => units.push(Observation::Unknown),
                'A'..='Z' => {
                    let id = c as u32 - 'A' as u32;
                    alphabet_size = alphabet_size.max(id as usize + 1);
                    units.push(Observation::Seen(LocationId(id)));
                }
                other => {
                    return Err(Error::ConfigError(format!(
                        "unexpected character {other:?} in compact history"
                    )))
                }
            }
        }
        Self::new(units, alphabet_size)
    }

    pub fn with_unit_duration(mut self, days: u32) -> Self {
        self.unit_duration = days.max(1);
        self
    }

    pub fn units(&self) -> &[Observation] {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// Size of one unit in days.
    pub fn unit_duration(&self) -> u32 {
        self.unit_duration
    }

    /// The 1-based unit `i`.
    pub fn get(&self, i: usize) -> Option<Observation> {
        i.checked_sub(1).and_then(|i| self.units.get(i).copied())
    }

    /// Applies `map` to every observed id. `map` must be a permutation of
    /// `0..alphabet_size`.
    pub fn relabel(&self, map: &[LocationId]) -> Self {
        let units = self
            .units
            .iter()
            .map(|o| match *o {
                Observation::Seen(id) => Observation::Seen(map[id.index()]),
                Observation::Unknown => Observation::Unknown,
            })
            .collect();
        Self {
            units,
            alphabet_size: self.alphabet_size,
            unit_duration: self.unit_duration,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_is_a_bijection() {
        let a = Alphabet::new(["home", "away"]).unwrap();
        assert_eq!(a.id("away"), Some(LocationId(1)));
        assert_eq!(a.label(LocationId(0)), Some("home"));
        assert_eq!(a.label(LocationId(2)), None);
        assert_eq!(
            Alphabet::new(["x", "x"]),
            Err(Error::DuplicateLabel("x".into()))
        );
    }

    #[test]
    fn intern_is_idempotent() {
        let mut a = Alphabet::default();
        let x = a.intern("x");
        let y = a.intern("y");
        assert_eq!(a.intern("x"), x);
        assert_ne!(x, y);
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn history_rejects_ids_outside_alphabet() {
        assert_eq!(
            LocationHistory::from_ids(&[0, 2], 2),
            Err(Error::UnknownLocation {
                id: 2,
                alphabet_size: 2
            })
        );
    }

    #[test]
    fn one_based_access() {
        let h = LocationHistory::from_compact("AB").unwrap();
        assert_eq!(h.get(0), None);
        assert_eq!(h.get(1), Some(Observation::Seen(LocationId(0))));
        assert_eq!(h.get(2), Some(Observation::Seen(LocationId(1))));
        assert_eq!(h.get(3), None);
    }
}
