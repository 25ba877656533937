// SPDX-License-Identifier: MIT OR Apache-2.0

use serde::{Deserialize, Serialize};

use super::SynthRng;
use crate::error::{Error, Result};
use crate::model::{LocationHistory, LocationId, Observation, ResidenceHistory, ResidenceSegment};

/// Parameters of the synthetic trace generator.
///
/// Draw order, all from one [`SynthRng`] seeded with `seed`:
///
/// 1. Segments, left to right: length uniform in `rho_truth..=max_len`,
///    clipped to the remaining units and stretched to the end when fewer
///    than `rho_truth` would remain. The first location is uniform over all
///    locations, later ones uniform over the locations other than the
///    previous one.
/// 2. Trips, segment by segment: at each unit not already on a trip, a
///    Bernoulli(`p_travel`) draw starts a trip of uniform length in
///    `1..=max_trip`, clipped to the segment, to a location drawn uniformly
///    from the other locations.
/// 3. Gaps: one Bernoulli(`p_missing`) draw per unit replaces the
///    observation with [`Observation::Unknown`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub n_units: usize,
    pub n_locations: usize,
    pub rho_truth: usize,
    pub max_len: usize,
    pub p_travel: f64,
    pub max_trip: usize,
    pub p_missing: f64,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            n_units: 365,
            n_locations: 4,
            rho_truth: 60,
            max_len: 180,
            p_travel: 0.05,
            max_trip: 7,
            p_missing: 0.0,
            seed: 0,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::ConfigError(m.to_string()));
        if self.n_units == 0 {
            return fail("n_units must be at least 1");
        }
        if self.n_locations == 0 {
            return fail("n_locations must be at least 1");
        }
        if self.rho_truth == 0 {
            return fail("rho_truth must be at least 1");
        }
        if self.max_len < self.rho_truth {
            return fail("max_len must be at least rho_truth");
        }
        if self.max_trip == 0 {
            return fail("max_trip must be at least 1");
        }
        for (name, p) in [("p_travel", self.p_travel), ("p_missing", self.p_missing)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::ConfigError(format!("{name} must lie in [0, 1]")));
            }
        }
        if self.p_travel > 0.0 && self.n_locations < 2 {
            return fail("trips need at least two locations");
        }
        Ok(())
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }
}

fn other_location(rng: &mut SynthRng, n_locations: usize, except: LocationId) -> LocationId {
    let draw = rng.uniform(0, n_locations as u64 - 2) as u32;
    LocationId(if draw < except.0 { draw } else { draw + 1 })
}

/// Draws a ground-truth residence history and the trace observed from it.
pub fn generate(config: &GenConfig) -> Result<(ResidenceHistory, LocationHistory)> {
    config.validate()?;
    let mut rng = SynthRng::new(config.seed);
    let n = config.n_units;

    let mut segments: Vec<ResidenceSegment> = Vec::new();
    let mut covered = 0;
    while covered < n {
        let remaining = n - covered;
        let mut len = rng.uniform(config.rho_truth as u64, config.max_len as u64) as usize;
        if len > remaining || remaining - len < config.rho_truth {
            len = remaining;
        }
        let location = match segments.last() {
            None => LocationId(rng.uniform(0, config.n_locations as u64 - 1) as u32),
            Some(_) if config.n_locations < 2 => {
                return Err(Error::ConfigError(
                    "more than one segment needs at least two locations".into(),
                ))
            }
            Some(prev) => other_location(&mut rng, config.n_locations, prev.location),
        };
        segments.push(ResidenceSegment::new(covered + 1, len, location));
        covered += len;
    }
    let truth = ResidenceHistory::new(segments)?;

    let mut units = Vec::with_capacity(n);
    for seg in truth.segments() {
        let mut offset = 0;
        while offset < seg.len {
            if rng.bernoulli(config.p_travel) {
                let trip = rng.uniform(1, config.max_trip as u64) as usize;
                let trip = trip.min(seg.len - offset);
                let away = other_location(&mut rng, config.n_locations, seg.location);
                units.extend(std::iter::repeat_n(Observation::Seen(away), trip));
                offset += trip;
            } else {
                units.push(Observation::Seen(seg.location));
                offset += 1;
            }
        }
    }
    for unit in units.iter_mut() {
        if rng.bernoulli(config.p_missing) {
            *unit = Observation::Unknown;
        }
    }

    let observed = LocationHistory::new(units, config.n_locations)?;
    Ok((truth, observed))
}
