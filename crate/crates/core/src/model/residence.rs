// SPDX-License-Identifier: MIT OR Apache-2.0

use std::fmt;

use super::{LocationId, Mode};
use crate::error::{Error, Result};

/// A maximal stretch of units with one residence location.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResidenceSegment {
    /// 1-based first unit.
    pub start: usize,
    pub len: usize,
    pub location: LocationId,
}

impl ResidenceSegment {
    pub const fn new(start: usize, len: usize, location: LocationId) -> Self {
        Self {
            start,
            len,
            location,
        }
    }

    /// 1-based last unit (inclusive).
    pub const fn end(&self) -> usize {
        self.start + self.len - 1
    }
}

/// Piecewise-constant residence history tiling `[1, n]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResidenceHistory {
    segments: Vec<ResidenceSegment>,
}

impl ResidenceHistory {
    pub fn new(segments: Vec<ResidenceSegment>) -> Result<Self> {
        let mut next = 1;
        for (i, seg) in segments.iter().enumerate() {
            if seg.len == 0 {
                return Err(Error::InvalidResidence(format!(
                    "segment {} is empty",
                    i + 1
                )));
            }
            if seg.start != next {
                return Err(Error::InvalidResidence(format!(
                    "segment {} starts at unit {} but unit {next} is next",
                    i + 1,
                    seg.start
                )));
            }
            if i > 0 && segments[i - 1].location == seg.location {
                return Err(Error::InvalidResidence(format!(
                    "segments {} and {} share location {}",
                    i,
                    i + 1,
                    seg.location
                )));
            }
            next += seg.len;
        }
        Ok(Self { segments })
    }

    pub fn single(location: LocationId, n: usize) -> Self {
        if n == 0 {
            return Self::default();
        }
        Self {
            segments: vec![ResidenceSegment::new(1, n, location)],
        }
    }

    /// Merges a dense `r_1..r_n` into segments.
    pub fn from_dense(dense: &[LocationId]) -> Self {
        let mut segments: Vec<ResidenceSegment> = Vec::new();
        for (i, &loc) in dense.iter().enumerate() {
            match segments.last_mut() {
                Some(last) if last.location == loc => last.len += 1,
                _ => segments.push(ResidenceSegment::new(i + 1, 1, loc)),
            }
        }
        Self { segments }
    }

    /// Builds a history from `(location, len)` pairs laid end to end.
    pub fn from_lengths(parts: &[(u32, usize)]) -> Result<Self> {
        let mut start = 1;
        let segments = parts
            .iter()
            .map(|&(loc, len)| {
                let seg = ResidenceSegment::new(start, len, LocationId(loc));
                start += len;
                seg
            })
            .collect();
        Self::new(segments)
    }

    pub fn to_dense(&self) -> Vec<LocationId> {
        let mut out = Vec::with_capacity(self.len());
        for seg in &self.segments {
            out.extend(std::iter::repeat_n(seg.location, seg.len));
        }
        out
    }

    pub fn segments(&self) -> &[ResidenceSegment] {
        &self.segments
    }

    /// Number of units covered.
    pub fn len(&self) -> usize {
        self.segments.last().map_or(0, |s| s.end())
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// First unit of every segment after the first, i.e. the move days.
    pub fn moves(&self) -> Vec<usize> {
        self.segments.iter().skip(1).map(|s| s.start).collect()
    }

    pub fn relabel(&self, map: &[LocationId]) -> Self {
        Self {
            segments: self
                .segments
                .iter()
                .map(|s| ResidenceSegment::new(s.start, s.len, map[s.location.index()]))
                .collect(),
        }
    }
}

impl fmt::Display for ResidenceHistory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, seg) in self.segments.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{}..{})", seg.location, seg.start, seg.end())?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `rho` must be at least 1.
    ZeroRho,
    /// Segment `segment` (1-based) is shorter than `rho`.
    ShortSegment {
        segment: usize,
        len: usize,
        rho: usize,
        is_final: bool,
    },
}

/// Lists the minimum-residence violations of `residence`.
///
/// A single-segment history is always feasible. Otherwise every segment
/// except the last must span at least `rho` units, and under [`Mode::Full`]
/// the last one must as well.
pub fn validate(residence: &ResidenceHistory, rho: usize, mode: Mode) -> Vec<Violation> {
    if rho == 0 {
        return vec![Violation::ZeroRho];
    }
    let segments = residence.segments();
    if segments.len() <= 1 {
        return Vec::new();
    }
    let last = segments.len() - 1;
    segments
        .iter()
        .enumerate()
        .filter(|&(i, seg)| seg.len < rho && (i < last || mode == Mode::Full))
        .map(|(i, seg)| Violation::ShortSegment {
            segment: i + 1,
            len: seg.len,
            rho,
            is_final: i == last,
        })
        .collect()
}
