//! Theorem-level auditors: hypothesis checklists and conclusion checks
//! assembled from the boundary analyzers, returned as structured verdicts.

mod classical;
mod factorized;
mod phragmen;

pub use classical::{audit_classical, ClassicalTheorem};
pub use factorized::{audit_edge_of_wedge, audit_factorized, jump_profile, ContinuationSamples, EdgeOfWedgeReport, FactorizedRegion};
pub use phragmen::{audit_phragmen, PhragmenVariant};

use crate::boundary::{
    directional_limit, geometric_gaps, geometric_radii, Approach, BoundaryPoint, GrowthFit, L1Profile, LimitEstimate,
};
use crate::error::{LabError, Result};
use crate::field::HarmonicField;
use crate::geometry::SectorSpec;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    Dahlberg,
    BermanCohn,
    Wolf,
    FactorizedDiscHarmonic,
    FactorizedDiscSubharmonic,
    FactorizedRectangleHarmonic,
    FactorizedRectangleSubharmonic,
    PhragmenClassical,
    PhragmenThreeRays,
    EdgeOfWedge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
    /// Not measurable from samples; recorded as an assumption.
    Declared,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Indeterminate => "indeterminate",
            Status::Declared => "declared",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    None,
    Real { value: f64 },
    Witness { point: Complex64, value: f64 },
    Limit(LimitEstimate),
    Growth(GrowthFit),
    Profile(L1Profile),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisRecord {
    pub name: String,
    pub status: Status,
    pub evidence: Evidence,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl HypothesisRecord {
    fn new(name: &str, status: Status, evidence: Evidence) -> Self {
        HypothesisRecord { name: name.into(), status, evidence, note: None }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConclusionRecord {
    pub checked: bool,
    pub status: Status,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Consistency {
    Consistent,
    SharpnessWitness,
    #[serde(rename = "CONTRADICTION")]
    Contradiction,
}

impl fmt::Display for Consistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Consistency::Consistent => "consistent",
            Consistency::SharpnessWitness => "sharpness_witness",
            Consistency::Contradiction => "CONTRADICTION",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditVerdict {
    pub theorem: TheoremId,
    pub hypotheses: Vec<HypothesisRecord>,
    pub conclusion: ConclusionRecord,
    pub consistency: Consistency,
    pub notes: Vec<String>,
}

impl AuditVerdict {
    pub(crate) fn assemble(theorem: TheoremId, hypotheses: Vec<HypothesisRecord>, conclusion: ConclusionRecord, notes: Vec<String>) -> Self {
        let consistency = consistency_of(&hypotheses, &conclusion);
        AuditVerdict { theorem, hypotheses, conclusion, consistency, notes }
    }

    pub fn hypothesis(&self, name: &str) -> Option<&HypothesisRecord> {
        self.hypotheses.iter().find(|h| h.name == name)
    }

    /// Every measured hypothesis passed.
    pub fn all_measured_pass(&self) -> bool {
        self.hypotheses.iter().all(|h| matches!(h.status, Status::Pass | Status::Declared))
    }

    pub fn statuses(&self) -> Vec<Status> {
        self.hypotheses.iter().map(|h| h.status).collect()
    }
}

/// `CONTRADICTION` only when every measured hypothesis passes and the checked
/// conclusion fails; a failed conclusion with a failed hypothesis is a
/// sharpness witness.
pub fn consistency_of(hypotheses: &[HypothesisRecord], conclusion: &ConclusionRecord) -> Consistency {
    let failed_conclusion = conclusion.checked && conclusion.status == Status::Fail;
    if !failed_conclusion {
        return Consistency::Consistent;
    }
    if hypotheses.iter().all(|h| matches!(h.status, Status::Pass | Status::Declared)) {
        Consistency::Contradiction
    } else if hypotheses.iter().any(|h| h.status == Status::Fail) {
        Consistency::SharpnessWitness
    } else {
        Consistency::Consistent
    }
}

/// Sampling sizes and tolerances shared by the auditors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AuditConfig {
    /// Boundary points at which limits are checked.
    pub boundary_points: usize,
    /// Approach distances, strictly decreasing.
    pub limit_schedule: Vec<f64>,
    pub limit_tol: f64,
    /// Required gap below a critical growth exponent.
    pub growth_margin: f64,
    pub disc_radii: Vec<f64>,
    pub line_betas: Vec<f64>,
    pub sup_points: usize,
    pub pointwise_tol: f64,
    pub l1_rel_tol: f64,
    /// Conclusion passes when `sup|u| ≤ conclusion_tol·(1 + scale)`.
    pub conclusion_tol: f64,
    pub conclusion_radii: Vec<f64>,
    pub conclusion_angles: usize,
    pub wolf_epsilon0: f64,
    pub wolf_steps: usize,
    pub wolf_radii: Vec<f64>,
    pub sector_rho: f64,
    pub sector_decades: usize,
    pub sector_angles: usize,
    pub stability_tol: f64,
    pub continuation_points: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            boundary_points: 64,
            limit_schedule: (4..=30).map(|k| 0.5f64.powi(k)).collect(),
            limit_tol: 1e-4,
            growth_margin: 0.1,
            disc_radii: geometric_radii(0.9, 0.999, 10),
            line_betas: geometric_gaps(0.5, 1e-4, 10),
            sup_points: 512,
            pointwise_tol: 1e-9,
            l1_rel_tol: 1e-8,
            conclusion_tol: 1e-6,
            conclusion_radii: vec![0.1, 0.3, 0.5, 0.7, 0.9, 0.95],
            conclusion_angles: 128,
            wolf_epsilon0: 1.0,
            wolf_steps: 7,
            wolf_radii: geometric_radii(0.8, 0.98, 8),
            sector_rho: 1.0,
            sector_decades: 4,
            sector_angles: 32,
            stability_tol: 1e-3,
            continuation_points: 101,
        }
    }
}

impl AuditConfig {
    /// Every tolerance multiplied by `factor`, every margin divided by it.
    pub fn loosened(&self, factor: f64) -> Self {
        let mut c = self.clone();
        c.limit_tol *= factor;
        c.pointwise_tol *= factor;
        c.conclusion_tol *= factor;
        c.stability_tol *= factor;
        c.growth_margin /= factor;
        c
    }

    /// The `ε` schedule `ε₀·0.8^k`.
    pub fn wolf_epsilons(&self) -> Vec<f64> {
        (0..self.wolf_steps).map(|k| self.wolf_epsilon0 * 0.8f64.powi(k as i32)).collect()
    }
}

/// Pass: converged to 0. Indeterminate: not converged but still decreasing.
pub(crate) fn classify_limit(e: &LimitEstimate, tol: f64) -> Status {
    if e.converged && e.limit.abs() <= tol {
        Status::Pass
    } else if !e.converged && e.tail_decreasing {
        Status::Indeterminate
    } else {
        Status::Fail
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum BoundaryKind {
    DiscRadial,
    DiscStolz(f64),
    LineVertical,
    LineUpper(f64),
}

/// Estimates the limit along `sched`; when a sample overflows, retries on the
/// part of the schedule before the first non-finite distance. The flag marks
/// a truncated estimate.
fn limit_with_overflow(u: &HarmonicField, base: BoundaryPoint, approach: Approach, sched: &[f64], tol: f64) -> Result<(LimitEstimate, bool)> {
    let mut len = sched.len();
    loop {
        match directional_limit(u, base, approach, &sched[..len], tol) {
            Ok(e) => return Ok((e, len < sched.len())),
            Err(LabError::NonFinite { point }) if len > 3 => {
                let d = match base {
                    BoundaryPoint::Circle { phi } => (point - Complex64::from_polar(1.0, phi)).norm(),
                    BoundaryPoint::Line { alpha } => (point - Complex64::new(alpha, 0.0)).norm(),
                };
                let keep = sched[..len].iter().take_while(|s| **s > 2.0 * d).count();
                len = match keep {
                    k if k < 3 => return Err(LabError::NonFinite { point }),
                    k if k < len => k,
                    _ => len - 1,
                };
            }
            Err(e) => return Err(e),
        }
    }
}

/// Checks `lim u = 0` at a grid of boundary points and reduces to the worst
/// status, with the deciding estimate as evidence. Where evaluation overflows
/// close to the boundary the schedule is shortened and a passing estimate is
/// downgraded to indeterminate.
pub(crate) fn boundary_limits(
    u: &HarmonicField,
    kind: BoundaryKind,
    cfg: &AuditConfig,
    tol: f64,
) -> Result<(Status, Evidence, String)> {
    let k = cfg.boundary_points.max(1);
    let sched = &cfg.limit_schedule;
    let edge = sched.first().copied().unwrap_or(0.0).min(0.5);
    let estimates = (0..k)
        .into_par_iter()
        .map(|j| match kind {
            BoundaryKind::DiscRadial | BoundaryKind::DiscStolz(_) => {
                let phi = 2.0 * PI * j as f64 / k as f64;
                let base = BoundaryPoint::Circle { phi };
                let approach = match kind {
                    BoundaryKind::DiscStolz(theta) => Approach::Sector(SectorSpec::Stolz { phi, theta }),
                    _ => Approach::Radial,
                };
                limit_with_overflow(u, base, approach, sched, tol)
            }
            BoundaryKind::LineVertical | BoundaryKind::LineUpper(_) => {
                let span = 1.0 - edge;
                let alpha = -span + 2.0 * span * (j as f64 + 0.5) / k as f64;
                let base = BoundaryPoint::Line { alpha };
                let approach = match kind {
                    BoundaryKind::LineUpper(theta) => Approach::Sector(SectorSpec::Upper { alpha, theta }),
                    _ => Approach::Radial,
                };
                limit_with_overflow(u, base, approach, sched, tol)
            }
        })
        .collect::<Result<Vec<(LimitEstimate, bool)>>>()?;
    let statuses: Vec<Status> = estimates
        .iter()
        .map(|(e, truncated)| match classify_limit(e, tol) {
            Status::Pass if *truncated => Status::Indeterminate,
            s => s,
        })
        .collect();
    let truncated = estimates.iter().filter(|(_, t)| *t).count();
    let pick = statuses
        .iter()
        .position(|s| *s == Status::Fail)
        .or_else(|| statuses.iter().position(|s| *s == Status::Indeterminate));
    let mut note = format!("{k} boundary points, {} approach distances", sched.len());
    if truncated > 0 {
        note.push_str(&format!("; schedule shortened by overflow at {truncated} points"));
    }
    Ok(match pick {
        Some(i) => (statuses[i], Evidence::Limit(estimates[i].0.clone()), note),
        None => {
            let i = estimates
                .iter()
                .enumerate()
                .max_by(|a, b| a.1 .0.limit.abs().total_cmp(&b.1 .0.limit.abs()))
                .map(|(i, _)| i)
                .unwrap_or(0);
            (Status::Pass, Evidence::Limit(estimates[i].0.clone()), note)
        }
    })
}

/// Largest `|u|` over a set of points, with its location; NaN samples are skipped.
pub(crate) fn grid_sup(u: &HarmonicField, pts: &[Complex64]) -> (Complex64, f64) {
    let vals: Vec<f64> = pts.par_iter().map(|&z| u.modulus(z)).collect();
    let mut best = (Complex64::new(0.0, 0.0), 0.0);
    for (z, v) in pts.iter().zip(vals) {
        if v > best.1 || (v.is_infinite() && !best.1.is_infinite()) {
            best = (*z, v);
        }
    }
    best
}
