use super::{
    boundary_limits, grid_sup, AuditConfig, AuditVerdict, BoundaryKind, ConclusionRecord, Evidence, HypothesisRecord, Status,
    TheoremId,
};
use crate::boundary::{growth_fit, FitKind, GrowthFit, Levels};
use crate::error::{LabError, Result};
use crate::field::{HarmonicField, Regularity};
use crate::geometry::{sample_grid, GridSpec, Region};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalTheorem {
    /// Radial limits and `M_r = o((1−r)^{−2})`.
    Dahlberg,
    /// Stolz limits and `M_r = o((1−r)^{−π/θ})`.
    BermanCohn,
    /// Stolz limits and `M_r = O(exp(ε(1−r)^{−π/(2θ)}))` for every `ε`.
    Wolf,
}

impl ClassicalTheorem {
    fn id(self) -> TheoremId {
        match self {
            ClassicalTheorem::Dahlberg => TheoremId::Dahlberg,
            ClassicalTheorem::BermanCohn => TheoremId::BermanCohn,
            ClassicalTheorem::Wolf => TheoremId::Wolf,
        }
    }
}

fn growth_or_bounded(u: &HarmonicField, levels: &Levels, kind: FitKind, n: usize) -> Result<Option<GrowthFit>> {
    match growth_fit(u, levels, kind, n) {
        Ok(f) => Ok(Some(f)),
        Err(LabError::NonpositiveSup { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Audits one of the classical disc uniqueness theorems on `u`.
pub fn audit_classical(u: &HarmonicField, theorem: ClassicalTheorem, theta: Option<f64>, cfg: &AuditConfig) -> Result<AuditVerdict> {
    if u.region != Region::UnitDisc {
        return Err(LabError::RegionMismatch(format!("classical audits need the unit disc, got {:?}", u.region)));
    }
    let allowed = match theorem {
        ClassicalTheorem::Wolf => u.regularity == Regularity::Harmonic,
        _ => matches!(u.regularity, Regularity::Harmonic | Regularity::SubharmonicNonneg),
    };
    if !allowed {
        let required = match theorem {
            ClassicalTheorem::Wolf => "harmonic",
            _ => "harmonic or subharmonic_nonneg",
        };
        return Err(LabError::RegularityMismatch { found: u.regularity.to_string(), required: required.into() });
    }
    let theta = match (theorem, theta) {
        (ClassicalTheorem::Dahlberg, _) => None,
        (_, Some(t)) if t > 0.0 && t < PI / 2.0 => Some(t),
        (_, t) => return Err(LabError::InvalidParameter(format!("sector angle in (0, pi/2) required, got {t:?}"))),
    };
    let tol = cfg.limit_tol * (1.0 + u.scale);
    let mut hyps = Vec::new();
    let mut notes = Vec::new();

    let kind = match theta {
        None => BoundaryKind::DiscRadial,
        Some(t) => BoundaryKind::DiscStolz(t),
    };
    let (status, evidence, note) = boundary_limits(u, kind, cfg, tol)?;
    notes.push(format!("boundary limits checked on a finite grid: {note}"));
    hyps.push(HypothesisRecord::new("boundary_limit", status, evidence));

    let growth = match theorem {
        ClassicalTheorem::Dahlberg | ClassicalTheorem::BermanCohn => {
            let critical = match theta {
                None => 2.0,
                Some(t) => PI / t,
            };
            let levels = Levels::circles(cfg.disc_radii.clone());
            match growth_or_bounded(u, &levels, FitKind::Power, cfg.sup_points)? {
                None => HypothesisRecord::new("growth", Status::Pass, Evidence::Real { value: 0.0 }).with_note("sup vanishes on a level"),
                Some(fit) => {
                    let status = if fit.exponent <= critical - cfg.growth_margin { Status::Pass } else { Status::Fail };
                    let note = format!("fitted exponent {:.4} against critical {:.4} with margin {}", fit.exponent, critical, cfg.growth_margin);
                    HypothesisRecord::new("growth", status, Evidence::Growth(fit)).with_note(note)
                }
            }
        }
        ClassicalTheorem::Wolf => {
            let q = PI / (2.0 * theta.unwrap_or(PI / 4.0));
            let levels = Levels::circles(cfg.wolf_radii.clone());
            match growth_or_bounded(u, &levels, FitKind::ExpPower { inner: q }, cfg.sup_points)? {
                None => HypothesisRecord::new("growth", Status::Pass, Evidence::Real { value: 0.0 }).with_note("sup vanishes on a level"),
                Some(fit) => {
                    let b = fit.outer_coefficient.unwrap_or(0.0);
                    let eps = cfg.wolf_epsilons();
                    let failing: Vec<f64> = eps.iter().copied().filter(|e| b >= *e).collect();
                    let (status, note) = if failing.is_empty() {
                        (Status::Indeterminate, format!("outer coefficient {b:.4} below every epsilon in the schedule; supported, not verified"))
                    } else {
                        (Status::Fail, format!("outer coefficient {b:.4} exceeds epsilon {:.4}", failing[failing.len() - 1]))
                    };
                    HypothesisRecord::new("growth", status, Evidence::Growth(fit)).with_note(note)
                }
            }
        }
    };
    hyps.push(growth);

    let grid = GridSpec::new(cfg.conclusion_radii.clone(), cfg.conclusion_angles);
    let pts = sample_grid(&Region::UnitDisc, &grid)?;
    let (at, sup) = grid_sup(u, &pts);
    let ctol = cfg.conclusion_tol * (1.0 + u.scale);
    let conclusion = ConclusionRecord {
        checked: true,
        status: if sup <= ctol { Status::Pass } else { Status::Fail },
        evidence: Evidence::Witness { point: at, value: sup },
    };
    Ok(AuditVerdict::assemble(theorem.id(), hyps, conclusion, notes))
}
