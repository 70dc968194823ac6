//! Boundary-behaviour analyzers: directional limits, sup profiles and growth
//! fits, the sub-mean-value ratio, the Domar-type transfer check and L¹
//! profiles of majorants.

mod checks;
mod growth;
mod limits;

pub use checks::{
    domar_transfer_check, l1_bound_profile, line_integral, mean_value_check, mean_value_report, DomarGrid, DomarReport,
    L1Profile, MeanValueReport,
};
pub use growth::{growth_fit, log_sup_profile, sup_profile, FitKind, GrowthFit};
pub use limits::{directional_limit, Approach, BoundaryPoint, DecayFit, LimitEstimate};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A level set on which sups and line integrals are taken.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Level {
    Circle { r: f64 },
    HLine { beta: f64, x_lo: f64, x_hi: f64 },
}

impl Level {
    /// Distance of the level from the boundary: `1 − r` or `β`.
    pub fn gap(&self) -> f64 {
        match *self {
            Level::Circle { r } => 1.0 - r,
            Level::HLine { beta, .. } => beta,
        }
    }

    /// Parameter interval of the level.
    pub fn span(&self) -> (f64, f64) {
        match *self {
            Level::Circle { .. } => (0.0, 2.0 * std::f64::consts::PI),
            Level::HLine { x_lo, x_hi, .. } => (x_lo, x_hi),
        }
    }

    pub fn point(&self, t: f64) -> Complex64 {
        match *self {
            Level::Circle { r } => Complex64::from_polar(r, t),
            Level::HLine { beta, .. } => Complex64::new(t, beta),
        }
    }

    fn periodic(&self) -> bool {
        matches!(self, Level::Circle { .. })
    }
}

/// A family of levels approaching the boundary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Levels {
    Circles { radii: Vec<f64> },
    HLines { betas: Vec<f64>, x_lo: f64, x_hi: f64 },
}

impl Levels {
    pub fn circles(radii: Vec<f64>) -> Self {
        Levels::Circles { radii }
    }

    pub fn hlines(betas: Vec<f64>, x_lo: f64, x_hi: f64) -> Self {
        Levels::HLines { betas, x_lo, x_hi }
    }

    pub fn levels(&self) -> Vec<Level> {
        match self {
            Levels::Circles { radii } => radii.iter().map(|&r| Level::Circle { r }).collect(),
            Levels::HLines { betas, x_lo, x_hi } => {
                betas.iter().map(|&beta| Level::HLine { beta, x_lo: *x_lo, x_hi: *x_hi }).collect()
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Levels::Circles { radii } => radii.len(),
            Levels::HLines { betas, .. } => betas.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Strictly monotone toward the boundary.
    pub fn is_monotone(&self) -> bool {
        let gaps: Vec<f64> = self.levels().iter().map(Level::gap).collect();
        gaps.windows(2).all(|w| w[1] < w[0]) && gaps.iter().all(|g| *g > 0.0)
    }
}

/// `count` points geometric in `1 − r` between `r_lo` and `r_hi`.
pub fn geometric_radii(r_lo: f64, r_hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = ((1.0 - r_lo).ln(), (1.0 - r_hi).ln());
    (0..count)
        .map(|k| 1.0 - (a + (b - a) * k as f64 / (count - 1).max(1) as f64).exp())
        .collect()
}

/// `count` points geometric between `hi` and `lo` (decreasing).
pub fn geometric_gaps(hi: f64, lo: f64, count: usize) -> Vec<f64> {
    let (a, b) = (hi.ln(), lo.ln());
    (0..count).map(|k| (a + (b - a) * k as f64 / (count - 1).max(1) as f64).exp()).collect()
}
