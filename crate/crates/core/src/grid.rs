//! Polar sampling grids and the verdict type shared by every sampled inequality test.

use num_complex::Complex64;
use serde::Serialize;

use crate::{Error, Result};

pub const DEFAULT_RADII: usize = 24;
pub const DEFAULT_ANGLES: usize = 96;
pub const DEFAULT_R_MAX: f64 = 0.95;

/// Grid of `radii × angles` points `r_i e^{iθ_j}`.
///
/// Radii are Chebyshev-spaced in `(0, r_max]`, `r_i = r_max · sin(π i / 2n)` for
/// `i = 1..=n`, so they cluster toward the outer circle where the extrema of
/// low-order series sit. Angles are uniform, `θ_j = 2πj / angles`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarGrid {
    pub radii: usize,
    pub angles: usize,
    pub r_max: f64,
}

impl Default for PolarGrid {
    fn default() -> Self {
        Self {
            radii: DEFAULT_RADII,
            angles: DEFAULT_ANGLES,
            r_max: DEFAULT_R_MAX,
        }
    }
}

impl PolarGrid {
    pub fn with_radius(r_max: f64) -> Self {
        Self {
            r_max,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.radii == 0 || self.angles == 0 {
            return Err(Error::InvalidArgument(
                "grid needs at least one radius and one angle".into(),
            ));
        }
        if !(self.r_max > 0.0 && self.r_max <= 1.0) {
            return Err(Error::Domain(format!(
                "grid radius {} outside (0, 1]",
                self.r_max
            )));
        }
        Ok(())
    }

    /// Like [`validate`](Self::validate) but also rejects grids that touch `|z| = 1`.
    pub fn validate_interior(&self) -> Result<()> {
        self.validate()?;
        if self.r_max >= 1.0 {
            return Err(Error::Domain(format!(
                "grid radius {} must be strictly inside the unit disk",
                self.r_max
            )));
        }
        Ok(())
    }

    pub fn radius(&self, i: usize) -> f64 {
        let x = std::f64::consts::FRAC_PI_2 * (i + 1) as f64 / self.radii as f64;
        if i + 1 == self.radii {
            self.r_max
        } else {
            self.r_max * x.sin()
        }
    }

    pub fn len(&self) -> usize {
        self.radii * self.angles
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points in lexicographic (radius, angle) order.
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        let step = std::f64::consts::TAU / self.angles as f64;
        (0..self.radii).flat_map(move |i| {
            let r = self.radius(i);
            (0..self.angles).map(move |j| Complex64::from_polar(r, step * j as f64))
        })
    }
}

/// How much a verdict proves.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// No violation among the samples; evidence, not proof.
    NotFalsified { resolution: String },
    /// The witness point violates the inequality.
    Falsified,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipVerdict {
    pub holds: bool,
    /// Worst-case slack of the tested inequality over the samples.
    pub margin: f64,
    /// Sample attaining `margin`.
    pub witness: Complex64,
    pub samples: usize,
    pub evidence: Evidence,
    /// Set when the verdict holds with a margin below the degeneracy threshold.
    pub near_degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl MembershipVerdict {
    pub(crate) fn from_minimum(min: MarginMin, resolution: String) -> Self {
        let holds = min.margin > 0.0;
        Self {
            holds,
            margin: min.margin,
            witness: min.witness,
            samples: min.samples,
            evidence: if holds {
                Evidence::NotFalsified { resolution }
            } else {
                Evidence::Falsified
            },
            near_degenerate: false,
            diagnostic: None,
        }
    }

    pub(crate) fn flag_near_degenerate(mut self, threshold: f64) -> Self {
        self.near_degenerate = self.holds && self.margin < threshold;
        self
    }

    /// Forces a failing verdict for a reason other than the sampled margin.
    pub(crate) fn fail_with(mut self, diagnostic: String) -> Self {
        self.margin = self.margin.min(0.0);
        self.holds = false;
        self.evidence = Evidence::Falsified;
        self.diagnostic = Some(diagnostic);
        self
    }
}

/// Running minimum with first-index tie-breaking; a NaN margin sticks as a failure.
#[derive(Debug, Clone, Copy)]
pub(crate) struct MarginMin {
    pub margin: f64,
    pub witness: Complex64,
    pub samples: usize,
}

impl MarginMin {
    pub fn new() -> Self {
        Self {
            margin: f64::INFINITY,
            witness: Complex64::new(0.0, 0.0),
            samples: 0,
        }
    }

    pub fn push(&mut self, z: Complex64, margin: f64) {
        if self.margin.is_nan() {
            // keep the first NaN
        } else if margin.is_nan() || margin < self.margin {
            self.margin = margin;
            self.witness = z;
        }
        self.samples += 1;
    }
}

pub(crate) fn grid_resolution(grid: &PolarGrid) -> String {
    format!(
        "not falsified at resolution {} radii x {} angles, r_max = {}",
        grid.radii, grid.angles, grid.r_max
    )
}
