use super::{
    boundary_limits, grid_sup, AuditConfig, AuditVerdict, BoundaryKind, ConclusionRecord, Evidence, HypothesisRecord, Status,
    TheoremId,
};
use crate::boundary::{growth_fit, l1_bound_profile, FitKind, Level, Levels};
use crate::error::{LabError, Result};
use crate::field::{FieldMetadata, HarmonicField, Regularity};
use crate::geometry::{sample_grid, GridSpec, Region};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorizedRegion {
    /// `|u| ≤ f·g` on the disc, checked on circles.
    Disc,
    /// `|u| ≤ f·g` on a rectangle above `(−1, 1)`, checked on horizontal lines.
    Rectangle,
}

fn region_ok(kind: FactorizedRegion, r: &Region) -> bool {
    match kind {
        FactorizedRegion::Disc => *r == Region::UnitDisc,
        FactorizedRegion::Rectangle => matches!(r, Region::Rectangle { .. }),
    }
}

fn levels_for(kind: FactorizedRegion, cfg: &AuditConfig) -> Levels {
    match kind {
        FactorizedRegion::Disc => Levels::circles(cfg.disc_radii.clone()),
        FactorizedRegion::Rectangle => Levels::hlines(cfg.line_betas.clone(), -1.0, 1.0),
    }
}

fn level_points(levels: &Levels, n: usize) -> Vec<Complex64> {
    let mut pts = Vec::new();
    for level in levels.levels() {
        let (a, b) = level.span();
        for j in 0..n {
            let t = match level {
                Level::Circle { .. } => a + (b - a) * j as f64 / n as f64,
                Level::HLine { .. } => a + (b - a) * (j as f64 + 0.5) / n as f64,
            };
            pts.push(level.point(t));
        }
    }
    pts
}

/// Audits the factorized-majorant uniqueness theorem for `u` with majorant
/// factors `f` (sectorial decay) and `g` (bounded L¹ profile). The
/// subharmonic variant applies when `u` is declared nonnegative subharmonic.
pub fn audit_factorized(
    u: &HarmonicField,
    f: &HarmonicField,
    g: &HarmonicField,
    region: FactorizedRegion,
    theta: f64,
    m: f64,
    cfg: &AuditConfig,
) -> Result<AuditVerdict> {
    for (name, field) in [("u", u), ("f", f), ("g", g)] {
        if !region_ok(region, &field.region) {
            return Err(LabError::RegionMismatch(format!("{name} lives on {:?}, audit region is {region:?}", field.region)));
        }
    }
    if !(theta > 0.0 && theta < PI / 2.0) || !(m >= 0.0) {
        return Err(LabError::InvalidParameter(format!("need theta in (0, pi/2) and m >= 0, got theta={theta}, m={m}")));
    }
    let subharmonic = u.regularity == Regularity::SubharmonicNonneg;
    let theorem = match (region, subharmonic) {
        (FactorizedRegion::Disc, false) => TheoremId::FactorizedDiscHarmonic,
        (FactorizedRegion::Disc, true) => TheoremId::FactorizedDiscSubharmonic,
        (FactorizedRegion::Rectangle, false) => TheoremId::FactorizedRectangleHarmonic,
        (FactorizedRegion::Rectangle, true) => TheoremId::FactorizedRectangleSubharmonic,
    };
    let levels = levels_for(region, cfg);
    let pts = level_points(&levels, cfg.sup_points / 2);
    let triples: Vec<(f64, f64, f64)> = pts.par_iter().map(|&z| (u.value(z), u.modulus(z), f.value(z) * g.value(z))).collect();
    if subharmonic {
        if let Some(k) = triples.iter().position(|t| t.0 < 0.0) {
            return Err(LabError::NegativeValue { point: pts[k], value: triples[k].0 });
        }
    }
    let mut hyps = Vec::new();
    let mut notes = vec!["lower semicontinuity of f is declared, not measured".to_string()];

    let mut worst = (Complex64::new(0.0, 0.0), f64::NEG_INFINITY);
    let mut violated = None;
    for (z, (_, a, b)) in pts.iter().zip(&triples) {
        if !(a.is_finite() && b.is_finite()) {
            violated.get_or_insert((*z, *a - *b));
            continue;
        }
        let excess = a - b;
        if excess > cfg.pointwise_tol * (1.0 + b) && violated.is_none() {
            violated = Some((*z, excess));
        }
        if excess > worst.1 {
            worst = (*z, excess);
        }
    }
    hyps.push(match violated {
        Some((point, value)) => HypothesisRecord::new("pointwise_majorant", Status::Fail, Evidence::Witness { point, value }),
        None => HypothesisRecord::new("pointwise_majorant", Status::Pass, Evidence::Witness { point: worst.0, value: worst.1 }),
    });
    hyps.push(HypothesisRecord::new("f_lower_semicontinuous", Status::Declared, Evidence::None));

    let tol = cfg.limit_tol * (1.0 + f.scale);
    let kind = match region {
        FactorizedRegion::Disc => BoundaryKind::DiscStolz(theta),
        FactorizedRegion::Rectangle => BoundaryKind::LineUpper(theta),
    };
    let (status, evidence, note) = boundary_limits(f, kind, cfg, tol)?;
    notes.push(format!("sectorial decay of f checked on a finite grid: {note}"));
    hyps.push(HypothesisRecord::new("f_sectorial_decay", status, evidence));

    let profile = l1_bound_profile(g, &levels, cfg.l1_rel_tol)?;
    let status = if profile.divergent || profile.unbounded_trend { Status::Fail } else { Status::Pass };
    hyps.push(HypothesisRecord::new("g_l1_bounded", status, Evidence::Profile(profile)));

    let growth = match growth_fit(u, &levels, FitKind::Power, cfg.sup_points) {
        Err(LabError::NonpositiveSup { .. }) => {
            HypothesisRecord::new("growth", Status::Pass, Evidence::Real { value: 0.0 }).with_note("sup vanishes on a level")
        }
        Err(e) => return Err(e),
        Ok(fit) => {
            let within = fit.exponent <= m + cfg.growth_margin;
            let below_critical = !subharmonic || m < PI / theta - cfg.growth_margin;
            let note = if subharmonic {
                format!("fitted exponent {:.4}, declared m={m}, critical {:.4}", fit.exponent, PI / theta)
            } else {
                format!("fitted exponent {:.4}, declared m={m}", fit.exponent)
            };
            let status = if within && below_critical { Status::Pass } else { Status::Fail };
            HypothesisRecord::new("growth", status, Evidence::Growth(fit)).with_note(note)
        }
    };
    hyps.push(growth);

    let ctol = cfg.conclusion_tol * (1.0 + u.scale);
    let conclusion = match region {
        FactorizedRegion::Disc => {
            let grid = GridSpec::new(cfg.conclusion_radii.clone(), cfg.conclusion_angles);
            let pts = sample_grid(&Region::UnitDisc, &grid)?;
            let (at, sup) = grid_sup(u, &pts);
            ConclusionRecord { checked: true, status: if sup <= ctol { Status::Pass } else { Status::Fail }, evidence: Evidence::Witness { point: at, value: sup } }
        }
        FactorizedRegion::Rectangle => {
            let (status, evidence, note) = boundary_limits(&u.abs(), BoundaryKind::LineVertical, cfg, ctol.max(tol))?;
            notes.push(format!("vanishing on the segment checked by vertical limits: {note}"));
            let status = if status == Status::Pass { Status::Pass } else { Status::Fail };
            ConclusionRecord { checked: true, status, evidence }
        }
    };
    Ok(AuditVerdict::assemble(theorem, hyps, conclusion, notes))
}

/// `|u(z) − u(z̄)|` on the upper half of the square.
pub fn jump_profile(u: &HarmonicField) -> HarmonicField {
    let u = u.clone();
    HarmonicField::real(format!("jump:{}", u.name), Region::STRIP_BOX, Regularity::SubharmonicNonneg, move |z: Complex64| {
        (u.complex_value(z) - u.complex_value(z.conj())).norm()
    })
    .with_metadata(FieldMetadata::Composite)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuationSamples {
    pub points: Vec<f64>,
    pub values: Vec<Complex64>,
    pub max_mismatch: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeOfWedgeReport {
    pub verdict: AuditVerdict,
    pub continuation: Option<ContinuationSamples>,
}

const MEAN_HEIGHT: f64 = 1e-5;

/// Audits analytic continuation of `u` across `(−1, 1)` through the odd part
/// `U(z) = (u(z) − u(z̄))/2`. When every hypothesis passes and a closed form
/// of the continuation is supplied, samples the continuation as the
/// extrapolated mean of the upper and lower boundary values.
pub fn audit_edge_of_wedge(
    u: &HarmonicField,
    f: &HarmonicField,
    g: &HarmonicField,
    theta: f64,
    m: f64,
    closed_form: Option<&(dyn Fn(f64) -> Complex64 + Sync)>,
    cfg: &AuditConfig,
) -> Result<EdgeOfWedgeReport> {
    let probes = [Complex64::new(0.0, 0.5), Complex64::new(0.5, 1e-3), Complex64::new(-0.5, 1e-6)];
    for z in probes {
        for w in [z, z.conj()] {
            let v = u.complex_value(w);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(LabError::NonFinite { point: w });
            }
        }
    }
    let uu = u.clone();
    let odd = HarmonicField::complex(format!("odd:{}", u.name), Region::STRIP_BOX, Regularity::Harmonic, move |z: Complex64| {
        0.5 * (uu.complex_value(z) - uu.complex_value(z.conj()))
    })
    .with_scale(u.scale);
    let mut verdict = audit_factorized(&odd, f, g, FactorizedRegion::Rectangle, theta, m, cfg)?;
    verdict.theorem = TheoremId::EdgeOfWedge;
    verdict.notes.push("growth of the jump u(z) - u(conj z) is twice the growth of its odd part".into());
    let continuation = match closed_form {
        Some(exact) if verdict.all_measured_pass() => {
            let n = cfg.continuation_points.max(1);
            let points: Vec<f64> = (0..n).map(|j| -1.0 + 2.0 * (j as f64 + 0.5) / n as f64).collect();
            let mean = |x: f64, b: f64| 0.5 * (u.complex_value(Complex64::new(x, b)) + u.complex_value(Complex64::new(x, -b)));
            let values: Vec<Complex64> = points
                .par_iter()
                .map(|&x| (4.0 * mean(x, 0.5 * MEAN_HEIGHT) - mean(x, MEAN_HEIGHT)) / 3.0)
                .collect();
            let max_mismatch = points.iter().zip(&values).map(|(x, v)| (v - exact(*x)).norm()).fold(0.0, f64::max);
            Some(ContinuationSamples { points, values, max_mismatch })
        }
        _ => None,
    };
    Ok(EdgeOfWedgeReport { verdict, continuation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audits::Consistency;
    use crate::exemplars::{catalog_field, u0_field, CatalogName};

    fn cfg() -> AuditConfig {
        AuditConfig::default()
    }

    #[test]
    fn trivial_disc_case() {
        let z = HarmonicField::zero(Region::UnitDisc);
        let one = HarmonicField::constant(Region::UnitDisc, 1.0);
        let v = audit_factorized(&z, &one, &one, FactorizedRegion::Disc, 0.5, 1.0, &cfg()).unwrap();
        // f ≡ 1 does not decay, so that hypothesis fails while u ≡ 0 satisfies the conclusion
        assert_eq!(v.hypothesis("f_sectorial_decay").unwrap().status, Status::Fail);
        assert_eq!(v.conclusion.status, Status::Pass);
        assert_eq!(v.consistency, Consistency::Consistent);
        let zf = HarmonicField::zero(Region::UnitDisc);
        let v = audit_factorized(&z, &zf, &one, FactorizedRegion::Disc, 0.5, 1.0, &cfg()).unwrap();
        assert!(v.all_measured_pass());
        assert_eq!(v.conclusion.status, Status::Pass);
    }

    #[test]
    fn u0_with_its_own_modulus_as_g() {
        let u = u0_field();
        let one = HarmonicField::constant(Region::UnitDisc, 1.0);
        let g = u.abs();
        let v = audit_factorized(&u, &one, &g, FactorizedRegion::Disc, 0.5, 3.0, &cfg()).unwrap();
        assert_eq!(v.hypothesis("pointwise_majorant").unwrap().status, Status::Pass);
        assert_eq!(v.hypothesis("g_l1_bounded").unwrap().status, Status::Fail);
        assert_eq!(v.consistency, Consistency::SharpnessWitness);
    }

    #[test]
    fn linearly_vanishing_height() {
        let u = HarmonicField::real("y", Region::STRIP_BOX, Regularity::Harmonic, |z: Complex64| z.im);
        let f = u.clone();
        let g = HarmonicField::constant(Region::STRIP_BOX, 1.0);
        let v = audit_factorized(&u, &f, &g, FactorizedRegion::Rectangle, 0.4, 1.0, &cfg()).unwrap();
        assert!(v.all_measured_pass(), "{:?}", v.statuses());
        assert_eq!(v.conclusion.status, Status::Pass);
    }

    #[test]
    fn region_and_sign_checks() {
        let u = u0_field();
        let g = HarmonicField::constant(Region::STRIP_BOX, 1.0);
        assert!(matches!(audit_factorized(&u, &u, &g, FactorizedRegion::Disc, 0.4, 1.0, &cfg()), Err(LabError::RegionMismatch(_))));
        let neg = HarmonicField::real("neg", Region::UnitDisc, Regularity::SubharmonicNonneg, |_| -1.0);
        let one = HarmonicField::constant(Region::UnitDisc, 1.0);
        assert!(matches!(audit_factorized(&neg, &one, &one, FactorizedRegion::Disc, 0.4, 1.0, &cfg()), Err(LabError::NegativeValue { .. })));
    }

    #[test]
    fn rational_pole_continues() {
        let u = catalog_field(CatalogName::RationalPole);
        let f = jump_profile(&u);
        let g = HarmonicField::constant(Region::STRIP_BOX, 1.0);
        let exact = |x: f64| CatalogName::RationalPole.continuation(x).unwrap();
        let r = audit_edge_of_wedge(&u, &f, &g, 0.4, 1.0, Some(&exact), &cfg()).unwrap();
        assert!(r.verdict.all_measured_pass(), "{:?}", r.verdict.hypotheses);
        let c = r.continuation.unwrap();
        assert_eq!(c.points.len(), 101);
        assert!(c.max_mismatch < 1e-6, "{}", c.max_mismatch);
    }

    #[test]
    fn boundary_jump_fails_sectorial_decay() {
        let u = catalog_field(CatalogName::BoundaryJump);
        let f = jump_profile(&u);
        let g = HarmonicField::constant(Region::STRIP_BOX, 1.0);
        let r = audit_edge_of_wedge(&u, &f, &g, 0.4, 1.0, None, &cfg()).unwrap();
        assert_eq!(r.verdict.hypothesis("f_sectorial_decay").unwrap().status, Status::Fail);
        assert!(r.continuation.is_none());
        assert_eq!(r.verdict.consistency, Consistency::SharpnessWitness);
    }

    #[test]
    fn zero_continues_to_zero() {
        let u = HarmonicField::complex("zero", Region::STRIP_BOX, Regularity::AnalyticOffReals, |_| Complex64::new(0.0, 0.0));
        let f = jump_profile(&u);
        let g = HarmonicField::constant(Region::STRIP_BOX, 1.0);
        let zero = |_: f64| Complex64::new(0.0, 0.0);
        let r = audit_edge_of_wedge(&u, &f, &g, 0.4, 0.0, Some(&zero), &cfg()).unwrap();
        assert!(r.verdict.all_measured_pass());
        assert_eq!(r.continuation.unwrap().max_mismatch, 0.0);
    }
}
