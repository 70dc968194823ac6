use crate::error::{LabError, Result};
use crate::field::HarmonicField;
use crate::geometry::SectorSpec;
use crate::quad::line_fit;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryPoint {
    Circle { phi: f64 },
    Line { alpha: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Approach {
    Radial,
    Sector(SectorSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub exponent: f64,
    pub r2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitEstimate {
    pub base: BoundaryPoint,
    pub distances: Vec<f64>,
    pub values: Vec<f64>,
    pub limit: f64,
    pub converged: bool,
    pub tolerance: f64,
    /// `|value|` strictly decreasing over the last four samples.
    pub tail_decreasing: bool,
    pub decay_fit: Option<DecayFit>,
}

const CROSS_SECTION: usize = 32;

/// Approaches `base` along `schedule` (distances, strictly decreasing to 0).
/// Radial approach records `u` itself; sectorial approach records the sup of
/// `|u|` over a 32-angle cross-section of the sector at each distance.
pub fn directional_limit(
    u: &HarmonicField,
    base: BoundaryPoint,
    approach: Approach,
    schedule: &[f64],
    tol: f64,
) -> Result<LimitEstimate> {
    if schedule.len() < 3 {
        return Err(LabError::EmptySchedule);
    }
    if !schedule.windows(2).all(|w| w[1] < w[0]) || schedule.iter().any(|d| *d <= 0.0) {
        return Err(LabError::InvalidParameter("approach distances must decrease strictly to 0".into()));
    }
    // cross-section directions, as offsets from the base point scaled by the distance
    let dirs: Vec<Complex64> = match (base, approach) {
        (BoundaryPoint::Circle { phi }, Approach::Radial) => vec![-Complex64::from_polar(1.0, phi)],
        (BoundaryPoint::Line { .. }, Approach::Radial) => vec![Complex64::new(0.0, 1.0)],
        (BoundaryPoint::Circle { phi }, Approach::Sector(SectorSpec::Stolz { phi: p2, theta })) => {
            if (phi - p2).abs() > 1e-12 {
                return Err(LabError::InvalidParameter("sector vertex differs from base point".into()));
            }
            let half = FRAC_PI_2 - theta;
            (0..CROSS_SECTION)
                .map(|j| {
                    let psi = -half + 2.0 * half * j as f64 / (CROSS_SECTION - 1) as f64;
                    -Complex64::from_polar(1.0, phi + psi)
                })
                .collect()
        }
        (BoundaryPoint::Line { alpha }, Approach::Sector(SectorSpec::Upper { alpha: a2, theta })) => {
            if (alpha - a2).abs() > 1e-12 {
                return Err(LabError::InvalidParameter("sector vertex differs from base point".into()));
            }
            let span = PI - 2.0 * theta;
            (0..CROSS_SECTION)
                .map(|j| Complex64::from_polar(1.0, theta + span * (j as f64 + 0.5) / CROSS_SECTION as f64))
                .collect()
        }
        _ => return Err(LabError::InvalidParameter("sector kind does not match the boundary point".into())),
    };
    let origin = match base {
        BoundaryPoint::Circle { phi } => Complex64::from_polar(1.0, phi),
        BoundaryPoint::Line { alpha } => Complex64::new(alpha, 0.0),
    };
    let radial = matches!(approach, Approach::Radial);
    let mut values = Vec::with_capacity(schedule.len());
    for &d in schedule {
        let mut best: f64 = 0.0;
        let mut any = false;
        for dir in &dirs {
            let z = origin + dir * d;
            if matches!(base, BoundaryPoint::Circle { .. }) && z.norm() >= 1.0 {
                continue;
            }
            any = true;
            let v = if radial { u.value(z) } else { u.modulus(z) };
            if !v.is_finite() {
                return Err(LabError::NonFinite { point: z });
            }
            if radial {
                best = v;
            } else {
                best = best.max(v);
            }
        }
        if !any {
            return Err(LabError::Domain { point: origin, what: "cross-section leaves the region".into() });
        }
        values.push(best);
    }
    let n = values.len();
    let q = schedule[n - 1] / schedule[n - 2];
    let limit = (values[n - 1] - q * values[n - 2]) / (1.0 - q);
    let converged = values[n - 3..].iter().all(|v| (v - limit).abs() <= tol);
    let tail_decreasing = n >= 4 && values[n - 4..].windows(2).all(|w| w[1].abs() < w[0].abs());

    let start = n / 2;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in start..n {
        let e = (values[k] - limit).abs();
        if e > 0.0 {
            xs.push(schedule[k].ln());
            ys.push(e.ln());
        }
    }
    let decay_fit = if xs.len() >= 3 {
        line_fit(&xs, &ys).map(|(s, _, r2)| DecayFit { exponent: s, r2 })
    } else {
        None
    };
    Ok(LimitEstimate {
        base,
        distances: schedule.to_vec(),
        values,
        limit,
        converged,
        tolerance: tol,
        tail_decreasing,
        decay_fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exemplars::u0_field;
    use crate::field::HarmonicField;
    use crate::geometry::Region;
    use proptest::prelude::*;

    fn dyadic(k0: i32, k1: i32) -> Vec<f64> {
        (k0..=k1).map(|k| 0.5f64.powi(k)).collect()
    }

    #[test]
    fn u0_radial_limit_is_zero_with_linear_decay() {
        let e = directional_limit(&u0_field(), BoundaryPoint::Circle { phi: 1.0 }, Approach::Radial, &dyadic(4, 20), 1e-4).unwrap();
        assert!(e.converged && e.limit.abs() < 1e-8);
        let fit = e.decay_fit.unwrap();
        assert!((fit.exponent - 1.0).abs() < 0.02 && fit.r2 > 0.99);
    }

    #[test]
    fn u0_nontangential_sup_blows_up() {
        let s = SectorSpec::stolz(0.0, PI / 4.0).unwrap();
        let e = directional_limit(&u0_field(), BoundaryPoint::Circle { phi: 0.0 }, Approach::Sector(s), &dyadic(4, 20), 1e-4).unwrap();
        assert!(!e.converged);
        assert!(e.values.iter().all(|v| *v > 0.1));
    }

    #[test]
    fn upper_sector_of_line() {
        let u = HarmonicField::real("y", Region::STRIP_BOX, crate::field::Regularity::Harmonic, |z| z.im);
        let s = SectorSpec::upper(0.2, 0.3).unwrap();
        let e = directional_limit(&u, BoundaryPoint::Line { alpha: 0.2 }, Approach::Sector(s), &dyadic(3, 16), 1e-4).unwrap();
        assert!(e.converged && e.limit.abs() < 1e-9);
    }

    #[test]
    fn mismatched_vertex_is_rejected() {
        let s = SectorSpec::stolz(0.5, 0.4).unwrap();
        let r = directional_limit(&u0_field(), BoundaryPoint::Circle { phi: 0.0 }, Approach::Sector(s), &dyadic(3, 8), 1e-6);
        assert!(r.is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn zero_field_always_converges(phi in -PI..PI, k0 in 1i32..6, len in 3i32..20, theta in 0.05f64..1.5) {
            let u = HarmonicField::zero(Region::UnitDisc);
            let sched = dyadic(k0, k0 + len);
            let r = directional_limit(&u, BoundaryPoint::Circle { phi }, Approach::Radial, &sched, 1e-12).unwrap();
            prop_assert!(r.converged && r.limit == 0.0);
            let s = SectorSpec::Stolz { phi, theta };
            let r = directional_limit(&u, BoundaryPoint::Circle { phi }, Approach::Sector(s), &sched, 1e-12).unwrap();
            prop_assert!(r.converged && r.limit == 0.0);
        }
    }
}
