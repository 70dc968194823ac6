//! Regions, sector predicates, sampling grids and the explicit conformal maps.

use crate::error::{LabError, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    UnitDisc,
    Rectangle { x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64 },
    Quadrant,
    FiniteSector { theta: f64, rho: f64 },
    PuncturedDisc { rho: f64 },
}

impl Region {
    /// The rectangle (−1,1)×(0,1).
    pub const STRIP_BOX: Region = Region::Rectangle { x_lo: -1.0, x_hi: 1.0, y_lo: 0.0, y_hi: 1.0 };

    pub fn rectangle(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Result<Self> {
        if !(x_lo < x_hi && y_lo < y_hi) {
            return Err(LabError::InvalidParameter(format!(
                "rectangle bounds [{x_lo},{x_hi}]x[{y_lo},{y_hi}] are not ordered"
            )));
        }
        Ok(Region::Rectangle { x_lo, x_hi, y_lo, y_hi })
    }

    pub fn finite_sector(theta: f64, rho: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < PI && rho > 0.0) {
            return Err(LabError::InvalidParameter(format!(
                "finite sector needs 0 < theta < pi and rho > 0, got theta={theta}, rho={rho}"
            )));
        }
        Ok(Region::FiniteSector { theta, rho })
    }

    /// Open-region membership.
    pub fn contains(&self, z: Complex64) -> bool {
        match *self {
            Region::UnitDisc => z.norm() < 1.0,
            Region::Rectangle { x_lo, x_hi, y_lo, y_hi } => {
                z.re > x_lo && z.re < x_hi && z.im > y_lo && z.im < y_hi
            }
            Region::Quadrant => z.re > 0.0 && z.im > 0.0,
            Region::FiniteSector { theta, rho } => {
                let a = z.arg();
                z.norm() < rho && z.norm() > 0.0 && a > 0.0 && a < theta
            }
            Region::PuncturedDisc { rho } => {
                let r = z.norm();
                r > 0.0 && r < rho
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SectorSpec {
    /// Nontangential approach region at `e^{iφ}` in the disc.
    Stolz { phi: f64, theta: f64 },
    /// `α + {θ < arg < π − θ}` above a point of the real axis.
    Upper { alpha: f64, theta: f64 },
}

impl SectorSpec {
    pub fn stolz(phi: f64, theta: f64) -> Result<Self> {
        check_opening(theta)?;
        Ok(SectorSpec::Stolz { phi, theta })
    }

    pub fn upper(alpha: f64, theta: f64) -> Result<Self> {
        check_opening(theta)?;
        Ok(SectorSpec::Upper { alpha, theta })
    }

    pub fn theta(&self) -> f64 {
        match *self {
            SectorSpec::Stolz { theta, .. } | SectorSpec::Upper { theta, .. } => theta,
        }
    }
}

fn check_opening(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < FRAC_PI_2 {
        Ok(())
    } else {
        Err(LabError::InvalidParameter(format!("sector opening theta={theta} outside (0, pi/2)")))
    }
}

pub fn in_sector(z: Complex64, s: &SectorSpec) -> bool {
    match *s {
        SectorSpec::Stolz { phi, theta } => {
            if z.norm() >= 1.0 {
                return false;
            }
            let w = Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, -phi) * z;
            w.norm() > 0.0 && w.arg().abs() <= FRAC_PI_2 - theta
        }
        SectorSpec::Upper { alpha, theta } => {
            let w = z - alpha;
            if w.norm() == 0.0 {
                return false;
            }
            let a = w.arg();
            a > theta && a < PI - theta
        }
    }
}

/// `exp(2πi(z + θ))`.
pub fn strip_exp_map(z: Complex64, theta: f64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI) * (z + theta)).exp()
}

/// Conformal map of the quadrant onto the disc, `(z² − i)/(z² + i)`.
pub fn quadrant_to_disc(z: Complex64) -> Result<Complex64> {
    if z.re < 0.0 || z.im < 0.0 || !z.re.is_finite() || !z.im.is_finite() {
        return Err(LabError::Domain { point: z, what: "closed first quadrant".into() });
    }
    let i = Complex64::i();
    let s = z * z;
    Ok((s - i) / (s + i))
}

/// Inverse of [`quadrant_to_disc`]: the square root of `i(1+w)/(1−w)` with
/// argument in `[0, π/2]`.
pub fn disc_to_quadrant(w: Complex64) -> Result<Complex64> {
    if w.norm() > 1.0 + 1e-15 || w == Complex64::new(1.0, 0.0) {
        return Err(LabError::Domain { point: w, what: "closed unit disc minus 1".into() });
    }
    let one = Complex64::new(1.0, 0.0);
    let s = Complex64::i() * (one + w) / (one - w);
    // principal root has arg in (−π/2, π/2]; arg s ∈ [0, π] on the closed disc
    let mut r = s.sqrt();
    if r.re < 0.0 {
        r = -r;
    }
    Ok(Complex64::new(r.re.max(0.0), r.im.max(0.0)))
}

/// Point of the quadrant boundary hit by `e^{it}`: `i·sqrt(cot(t/2))` for
/// `t ∈ (0, π)` and `sqrt(−cot(t/2))` for `t ∈ (π, 2π)`.
pub fn quadrant_boundary_point(t: f64) -> Complex64 {
    let t = t.rem_euclid(2.0 * PI);
    let c = 1.0 / (0.5 * t).tan();
    if t < PI {
        Complex64::new(0.0, c.max(0.0).sqrt())
    } else {
        Complex64::new((-c).max(0.0).sqrt(), 0.0)
    }
}

/// Radial schedule, angular count and optional jitter seed for [`sample_grid`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub schedule: Vec<f64>,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl GridSpec {
    pub fn new(schedule: Vec<f64>, n: usize) -> Self {
        Self { schedule, n, seed: None }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// Deterministic interior points: one level per schedule entry with `n`
/// points per level. Levels are radii for discs and sectors, heights above
/// the bottom side for rectangles, and radii for the quadrant (angles in the
/// open first quadrant). A seed adds a reproducible angular/tangential jitter.
pub fn sample_grid(region: &Region, g: &GridSpec) -> Result<Vec<Complex64>> {
    if g.schedule.is_empty() {
        return Err(LabError::EmptySchedule);
    }
    if g.n < 8 {
        return Err(LabError::InvalidParameter(format!("grid needs n >= 8, got {}", g.n)));
    }
    let mut rng = g.seed.map(ChaCha8Rng::seed_from_u64);
    let mut jitter = |scale: f64| match rng.as_mut() {
        Some(r) => (r.gen::<f64>() - 0.5) * scale,
        None => 0.0,
    };
    let n = g.n;
    let mut out = Vec::with_capacity(n * g.schedule.len());
    for &level in &g.schedule {
        for j in 0..n {
            let z = match *region {
                Region::UnitDisc | Region::PuncturedDisc { .. } => {
                    let t = 2.0 * PI * j as f64 / n as f64 + jitter(2.0 * PI / n as f64);
                    Complex64::from_polar(level, t)
                }
                Region::Rectangle { x_lo, x_hi, y_lo, .. } => {
                    let h = (x_hi - x_lo) / n as f64;
                    let x = x_lo + (j as f64 + 0.5) * h + jitter(0.5 * h);
                    Complex64::new(x, y_lo + level)
                }
                Region::Quadrant => {
                    let t = FRAC_PI_2 * (j as f64 + 0.5) / n as f64 + jitter(0.5 * FRAC_PI_2 / n as f64);
                    Complex64::from_polar(level, t)
                }
                Region::FiniteSector { theta, .. } => {
                    let t = theta * (j as f64 + 0.5) / n as f64 + jitter(0.5 * theta / n as f64);
                    Complex64::from_polar(level, t)
                }
            };
            if !region.contains(z) {
                return Err(LabError::Domain { point: z, what: "grid level not interior".into() });
            }
            out.push(z);
        }
    }
    Ok(out)
}
