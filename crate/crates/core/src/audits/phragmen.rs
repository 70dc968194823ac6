use super::{AuditConfig, AuditVerdict, ConclusionRecord, Evidence, HypothesisRecord, Status, TheoremId};
use crate::error::{LabError, Result};
use crate::field::HarmonicField;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PhragmenVariant {
    /// Nonnegative subharmonic `u` on `{|arg z| < θ, |z| < ρ}` with
    /// `0 ≤ l ≤ m < π/(2θ)`; boundary rays `arg z = ±θ`, interior weight `|z|^m`.
    Classical { theta: f64 },
    /// Harmonic `u` on the quarter disc with `l ∈ [0, 2)`; boundary rays
    /// `arg z ∈ {0, θ, π/2}`, interior weight `|Im z|^m`.
    ThreeRays { theta: f64 },
}

struct Sup {
    value: f64,
    at: Complex64,
}

/// `sup w(z)·|u(z)|` over the points; NaN samples are reported as infinite.
fn weighted_sup(u: &HarmonicField, pts: &[Complex64], weight: &(dyn Fn(Complex64) -> f64 + Sync)) -> Sup {
    let vals: Vec<f64> = pts
        .par_iter()
        .map(|&z| {
            let v = weight(z) * u.modulus(z);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        })
        .collect();
    let mut best = Sup { value: 0.0, at: pts.first().copied().unwrap_or_default() };
    for (z, v) in pts.iter().zip(vals) {
        if v > best.value {
            best = Sup { value: v, at: *z };
        }
    }
    best
}

fn radii(rho: f64, decades: usize) -> Vec<f64> {
    (1..=4 * decades).map(|j| rho * 10f64.powf(-(j as f64) / 4.0)).collect()
}

fn ray_points(rho: f64, decades: usize, angles: &[f64]) -> Vec<Complex64> {
    let rs = radii(rho, decades);
    angles.iter().flat_map(|&a| rs.iter().map(move |&r| Complex64::from_polar(r, a))).collect()
}

fn interior_points(rho: f64, decades: usize, lo: f64, hi: f64, n: usize) -> Vec<Complex64> {
    let rs = radii(rho, decades);
    (0..n)
        .flat_map(|j| {
            let a = lo + (hi - lo) * (j as f64 + 0.5) / n as f64;
            rs.iter().map(move |&r| Complex64::from_polar(r, a)).collect::<Vec<_>>()
        })
        .collect()
}

/// A weighted sup is bounded when it is finite and deepening the grid by
/// a factor of `10^decades` toward the vertex does not raise it.
fn bounded_check(
    name: &str,
    u: &HarmonicField,
    coarse: &[Complex64],
    fine: &[Complex64],
    weight: &(dyn Fn(Complex64) -> f64 + Sync),
    tol: f64,
) -> HypothesisRecord {
    let a = weighted_sup(u, coarse, weight);
    let b = weighted_sup(u, fine, weight);
    let stable = b.value.is_finite() && b.value <= a.value * (1.0 + tol) + tol;
    let status = if stable { Status::Pass } else { Status::Fail };
    let note = format!("sup {:.6e} on the coarse grid, {:.6e} on the deeper grid", a.value, b.value);
    HypothesisRecord::new(name, status, Evidence::Witness { point: b.at, value: b.value }).with_note(note)
}

/// Smallest `|cos nθ|`, `|sin nθ|` over `1 ≤ n ≤ max(1, ⌈m⌉)`.
fn angle_separation(theta: f64, m: f64) -> f64 {
    let top = (m.ceil() as usize).max(1);
    (1..=top)
        .map(|n| {
            let x = n as f64 * theta;
            x.cos().abs().min(x.sin().abs())
        })
        .fold(f64::INFINITY, f64::min)
}

/// Audits the sectorial Phragmén–Lindelöf statements: boundary-ray bounds
/// of `|z|^l|u|`, an interior a-priori bound, and boundedness of `|z|^l|u|`
/// throughout the sector.
pub fn audit_phragmen(u: &HarmonicField, l: f64, m: f64, variant: PhragmenVariant, cfg: &AuditConfig) -> Result<AuditVerdict> {
    let rho = cfg.sector_rho;
    let d = cfg.sector_decades.max(1);
    let n = cfg.sector_angles.max(4);
    let mut hyps = Vec::new();
    let mut notes = Vec::new();
    let (theorem, rays, lo, hi) = match variant {
        PhragmenVariant::Classical { theta } => {
            if !(theta > 0.0 && theta < PI) {
                return Err(LabError::InvalidParameter(format!("sector half-opening {theta} outside (0, pi)")));
            }
            if !(0.0 <= l && l <= m) {
                return Err(LabError::ExponentOrdering(format!("need 0 <= l <= m, got l={l}, m={m}")));
            }
            if m >= PI / (2.0 * theta) {
                return Err(LabError::ExponentOrdering(format!("need m < pi/(2 theta) = {}, got m={m}", PI / (2.0 * theta))));
            }
            hyps.push(HypothesisRecord::new("lower_semicontinuous_extension", Status::Declared, Evidence::None));
            (TheoremId::PhragmenClassical, vec![-theta, theta], -theta, theta)
        }
        PhragmenVariant::ThreeRays { theta } => {
            if !(theta > 0.0 && theta < FRAC_PI_2) {
                return Err(LabError::InvalidParameter(format!("middle ray angle {theta} outside (0, pi/2)")));
            }
            if !(0.0..2.0).contains(&l) || !(m >= 0.0) {
                return Err(LabError::ExponentOrdering(format!("need l in [0, 2) and m >= 0, got l={l}, m={m}")));
            }
            hyps.push(HypothesisRecord::new("continuous_extension", Status::Declared, Evidence::None));
            let sep = angle_separation(theta, m);
            hyps.push(
                HypothesisRecord::new("irrational_angle", Status::Declared, Evidence::Real { value: sep })
                    .with_note(format!("theta/pi = {:.12}; min |cos n theta|, |sin n theta| = {sep:.3e}", theta / PI)),
            );
            (TheoremId::PhragmenThreeRays, vec![0.0, theta, FRAC_PI_2], 0.0, FRAC_PI_2)
        }
    };
    if let PhragmenVariant::Classical { .. } = variant {
        let pts = interior_points(rho, d, lo, hi, n);
        let vals: Vec<f64> = pts.par_iter().map(|&z| u.value(z)).collect();
        let neg = pts.iter().zip(&vals).find(|(_, v)| **v < 0.0);
        hyps.push(match neg {
            Some((z, v)) => HypothesisRecord::new("nonnegative", Status::Fail, Evidence::Witness { point: *z, value: *v }),
            None => HypothesisRecord::new("nonnegative", Status::Pass, Evidence::None),
        });
    }
    let tol = cfg.stability_tol;
    let lw = move |z: Complex64| z.norm().powf(l);
    hyps.push(bounded_check("ray_bound", u, &ray_points(rho, d, &rays), &ray_points(rho, 2 * d, &rays), &lw, tol));
    let coarse = interior_points(rho, d, lo, hi, n);
    let fine = interior_points(rho, 2 * d, lo, hi, 2 * n);
    let interior = match variant {
        PhragmenVariant::Classical { .. } => {
            let mw = move |z: Complex64| z.norm().powf(m);
            bounded_check("interior_bound", u, &coarse, &fine, &mw, tol)
        }
        PhragmenVariant::ThreeRays { .. } => {
            let mw = move |z: Complex64| z.im.abs().powf(m);
            bounded_check("interior_bound", u, &coarse, &fine, &mw, tol)
        }
    };
    hyps.push(interior);
    notes.push(format!("radii 10^(-j/4) rho for j up to {} then {}, {} then {} interior angles", 4 * d, 8 * d, n, 2 * n));

    let c = bounded_check("conclusion", u, &coarse, &fine, &lw, tol);
    let conclusion = ConclusionRecord { checked: true, status: c.status, evidence: c.evidence };
    Ok(AuditVerdict::assemble(theorem, hyps, conclusion, notes))
}
