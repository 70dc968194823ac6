use super::{Level, Levels};
use crate::error::{LabError, Result};
use crate::field::HarmonicField;
use crate::quad::{golden_max, least_squares, line_fit};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FitKind {
    /// `log M` linear in `log 1/δ`.
    Power,
    /// `log M = a + b·δ^{−q} + c·log(1/δ)` with `q` fixed.
    ExpPower { inner: f64 },
    /// As `ExpPower`, with `q` chosen in `[lo, hi]` to minimise the residual.
    ExpPowerFreeInner { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub kind: FitKind,
    /// Distances `1 − r` or `β` of the levels from the boundary.
    pub gaps: Vec<f64>,
    pub log_sups: Vec<f64>,
    /// Power kind: the slope `m̂`. Exponential kinds: the inner exponent `q`.
    pub exponent: f64,
    /// Coefficient of `δ^{−q}` for the exponential kinds.
    pub outer_coefficient: Option<f64>,
    pub r2: f64,
    /// `R² < 0.9`.
    pub degenerate: bool,
}

impl GrowthFit {
    pub fn sups(&self) -> Vec<f64> {
        self.log_sups.iter().map(|l| l.exp()).collect()
    }
}

const GOLDEN_PASSES: usize = 3;
const REFINED_CELLS: usize = 3;

fn profile<F>(level: &Level, n: usize, f: F) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    if n < 64 {
        return Err(LabError::InvalidParameter(format!("sup profile needs n >= 64, got {n}")));
    }
    match *level {
        Level::Circle { r } if !(0.0..1.0).contains(&r) => {
            return Err(LabError::InvalidParameter(format!("circle radius {r} not interior")));
        }
        Level::HLine { beta, x_lo, x_hi } if beta <= 0.0 || x_hi <= x_lo => {
            return Err(LabError::InvalidParameter("line level must have β > 0 and x_lo < x_hi".into()));
        }
        _ => {}
    }
    let (a, b) = level.span();
    let periodic = level.periodic();
    let step = if periodic { (b - a) / n as f64 } else { (b - a) / (n - 1) as f64 };
    let ts: Vec<f64> = (0..n).map(|j| a + step * j as f64).collect();
    let vals: Vec<f64> = ts.par_iter().map(|&t| f(t)).collect();
    if let Some(k) = vals.iter().position(|v| v.is_nan()) {
        return Err(LabError::NonFinite { point: level.point(ts[k]) });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]).then(i.cmp(&j)));
    let mut best = vals[order[0]];
    for &j in order.iter().take(REFINED_CELLS) {
        let mut centre = ts[j];
        let mut half = step;
        for _ in 0..GOLDEN_PASSES {
            let (mut lo, mut hi) = (centre - half, centre + half);
            if !periodic {
                lo = lo.max(a);
                hi = hi.min(b);
            }
            let (x, fx) = golden_max(&f, lo, hi, 40);
            if fx.is_finite() && fx > best {
                best = fx;
            }
            if fx >= f(centre) {
                centre = x;
            }
            half /= 3.0;
        }
    }
    Ok(best)
}

/// `sup |u|` over a circle or a horizontal segment: grid maximum over `n`
/// points refined by golden-section passes around the best cells.
pub fn sup_profile(u: &HarmonicField, level: &Level, n: usize) -> Result<f64> {
    profile(level, n, |t| u.modulus(level.point(t)))
}

/// `sup log|u|`, evaluated in log space when the field provides it.
pub fn log_sup_profile(u: &HarmonicField, level: &Level, n: usize) -> Result<f64> {
    profile(level, n, |t| u.log_modulus(level.point(t)))
}

fn exp_rows(gaps: &[f64], q: f64) -> Vec<Vec<f64>> {
    gaps.iter().map(|d| vec![1.0, d.powf(-q), -d.ln()]).collect()
}

fn residual(gaps: &[f64], y: &[f64], q: f64) -> Option<(Vec<f64>, f64, f64)> {
    let rows = exp_rows(gaps, q);
    let (coef, r2) = least_squares(&rows, y)?;
    let rss: f64 = rows
        .iter()
        .zip(y)
        .map(|(row, yy)| {
            let fit: f64 = row.iter().zip(&coef).map(|(a, b)| a * b).sum();
            (yy - fit).powi(2)
        })
        .sum();
    Some((coef, r2, rss))
}

/// Fits the growth of `sup |u|` over the levels in `levels` (≥ 6 of them,
/// strictly monotone toward the boundary).
pub fn growth_fit(u: &HarmonicField, levels: &Levels, kind: FitKind, n: usize) -> Result<GrowthFit> {
    if levels.len() < 6 {
        return Err(LabError::InvalidParameter(format!("growth fit needs >= 6 levels, got {}", levels.len())));
    }
    if !levels.is_monotone() {
        return Err(LabError::InvalidParameter("levels must approach the boundary strictly monotonically".into()));
    }
    let ls = levels.levels();
    let gaps: Vec<f64> = ls.iter().map(Level::gap).collect();
    let mut log_sups = Vec::with_capacity(ls.len());
    for level in &ls {
        let l = match kind {
            FitKind::Power => {
                let m = sup_profile(u, level, n)?;
                if !(m > 0.0) || !m.is_finite() {
                    return Err(LabError::NonpositiveSup { level: level.gap(), value: m });
                }
                m.ln()
            }
            _ => {
                let l = log_sup_profile(u, level, n)?;
                if !l.is_finite() {
                    return Err(LabError::NonpositiveSup { level: level.gap(), value: l.exp() });
                }
                l
            }
        };
        log_sups.push(l);
    }
    let (exponent, outer, r2) = match kind {
        FitKind::Power => {
            let x: Vec<f64> = gaps.iter().map(|d| -d.ln()).collect();
            let (s, _, r2) = line_fit(&x, &log_sups).ok_or(LabError::SingularSolve { residual: f64::NAN })?;
            (s, None, r2)
        }
        FitKind::ExpPower { inner } => {
            let (coef, r2, _) = residual(&gaps, &log_sups, inner).ok_or(LabError::SingularSolve { residual: f64::NAN })?;
            (inner, Some(coef[1]), r2)
        }
        FitKind::ExpPowerFreeInner { lo, hi } => {
            if !(0.0 < lo && lo < hi) {
                return Err(LabError::InvalidParameter("inner exponent bracket must satisfy 0 < lo < hi".into()));
            }
            let (q, _) = golden_max(|q| residual(&gaps, &log_sups, q).map_or(f64::NEG_INFINITY, |r| -r.2), lo, hi, 80);
            let (coef, r2, _) = residual(&gaps, &log_sups, q).ok_or(LabError::SingularSolve { residual: f64::NAN })?;
            (q, Some(coef[1]), r2)
        }
    };
    Ok(GrowthFit { kind, gaps, log_sups, exponent, outer_coefficient: outer, r2, degenerate: r2 < 0.9 })
}
