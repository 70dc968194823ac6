use super::{Level, Levels};
use crate::error::{LabError, Result};
use crate::field::HarmonicField;
use crate::quad::{composite_rule, gauss_legendre, line_fit};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `u(z)^p` divided by the area average of `u^p` over `B(z, r)`, using `n`
/// Gauss–Legendre radial nodes and `2n` equispaced angles.
pub fn mean_value_check(u: &HarmonicField, p: f64, z: Complex64, r: f64, n: usize) -> Result<f64> {
    if !(p > 0.0) || !(r > 0.0) || n < 2 {
        return Err(LabError::InvalidParameter("mean-value check needs p > 0, r > 0, n >= 2".into()));
    }
    let centre = u.value(z);
    if centre < 0.0 {
        return Err(LabError::NegativeValue { point: z, value: centre });
    }
    let (xs, ws) = gauss_legendre(n);
    let na = 2 * n;
    let mut sum = 0.0;
    for (x, w) in xs.iter().zip(&ws) {
        let rho = 0.5 * r * (x + 1.0);
        let mut ring = 0.0;
        for j in 0..na {
            let q = z + Complex64::from_polar(rho, 2.0 * PI * (j as f64 + 0.5) / na as f64);
            let v = u.value(q);
            if v < 0.0 {
                return Err(LabError::NegativeValue { point: q, value: v });
            }
            if !v.is_finite() {
                return Err(LabError::NonFinite { point: q });
            }
            ring += v.powf(p);
        }
        sum += 0.5 * r * w * rho * ring * 2.0 * PI / na as f64;
    }
    let avg = sum / (PI * r * r);
    let num = centre.powf(p);
    if avg == 0.0 {
        return Ok(if num == 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok(num / avg)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanValueReport {
    pub p: f64,
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
    pub finite: bool,
}

/// Aggregates [`mean_value_check`] over `(centre, radius)` samples.
pub fn mean_value_report(u: &HarmonicField, p: f64, samples: &[(Complex64, f64)], n: usize) -> Result<MeanValueReport> {
    let ratios = samples
        .par_iter()
        .map(|&(z, r)| mean_value_check(u, p, z, r, n))
        .collect::<Result<Vec<f64>>>()?;
    let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
    Ok(MeanValueReport { p, ratios, max_ratio, finite: max_ratio.is_finite() })
}

/// Polar sample grid on `0 < |z| ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomarGrid {
    pub radii: usize,
    pub angles: usize,
    pub r_min: f64,
}

impl Default for DomarGrid {
    fn default() -> Self {
        DomarGrid { radii: 48, angles: 128, r_min: 1e-3 }
    }
}

impl DomarGrid {
    pub fn refined(&self) -> Self {
        DomarGrid { radii: 2 * self.radii, angles: 2 * self.angles, r_min: self.r_min }
    }

    pub fn points(&self) -> Vec<Complex64> {
        let (a, b) = (self.r_min.ln(), 0.0f64);
        let mut out = Vec::with_capacity(self.radii * self.angles);
        for i in 0..self.radii {
            let r = (a + (b - a) * i as f64 / (self.radii - 1).max(1) as f64).exp();
            for j in 0..self.angles {
                out.push(Complex64::from_polar(r, 2.0 * PI * j as f64 / self.angles as f64));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomarReport {
    pub m: f64,
    pub c: f64,
    /// `max u(z)·|z|^m` on the grid.
    pub empirical_constant: f64,
    pub refined_constant: f64,
    pub stable: bool,
    pub pass: bool,
    pub grid_points: usize,
}

const STENCIL_REL: f64 = 0.01;
const NEAR_AXIS: f64 = 0.05;
const SUBMEAN_SLACK: f64 = 1e-2;

fn submean_violation(u: &HarmonicField, z: Complex64, centre: f64) -> bool {
    let h = if z.im != 0.0 && z.im.abs() <= NEAR_AXIS * z.norm() { 2.0 * z.im.abs() } else { STENCIL_REL * z.norm() };
    let around = [Complex64::new(h, 0.0), Complex64::new(-h, 0.0), Complex64::new(0.0, h), Complex64::new(0.0, -h)];
    let mut sum = 0.0;
    for d in around {
        let v = u.value(z + d);
        if v.is_nan() {
            return false;
        }
        sum += v;
    }
    sum / 4.0 < centre * (1.0 - SUBMEAN_SLACK) - 1e-12
}

fn scan(u: &HarmonicField, m: f64, c: f64, grid: &DomarGrid) -> Result<f64> {
    let pts = grid.points();
    let vals: Vec<f64> = pts.par_iter().map(|&z| u.value(z)).collect();
    let flags: Vec<bool> = pts
        .par_iter()
        .zip(&vals)
        .map(|(&z, &v)| v.is_finite() && submean_violation(u, z, v))
        .collect();
    if let Some(k) = flags.iter().position(|f| *f) {
        return Err(LabError::HypothesisViolation { what: "discrete sub-mean-value test".into(), witness: pts[k] });
    }
    let mut best: f64 = 0.0;
    for (z, v) in pts.iter().zip(&vals) {
        if !v.is_finite() {
            return Err(LabError::HypothesisViolation { what: "non-finite value".into(), witness: *z });
        }
        if *v < 0.0 {
            return Err(LabError::HypothesisViolation { what: "negative value".into(), witness: *z });
        }
        let bound = c * z.im.abs().powf(-m);
        if *v > bound * (1.0 + 1e-9) {
            return Err(LabError::HypothesisViolation { what: "u <= C|Im z|^-m".into(), witness: *z });
        }
        best = best.max(v * z.norm().powf(m));
    }
    Ok(best)
}

/// Verifies `u ≤ C|Im z|^{−m}` and sub-harmonicity on the grid, then
/// reports `C′ = max u(z)|z|^m` and its stability under grid refinement.
pub fn domar_transfer_check(u: &HarmonicField, m: f64, c: f64, grid: &DomarGrid) -> Result<DomarReport> {
    if !(m > 0.0) || !(c > 0.0) || grid.radii < 2 || grid.angles < 8 || !(grid.r_min > 0.0 && grid.r_min < 1.0) {
        return Err(LabError::InvalidParameter("Domar check needs m > 0, C > 0 and a nondegenerate grid".into()));
    }
    let coarse = scan(u, m, c, grid)?;
    let fine_grid = grid.refined();
    let fine = scan(u, m, c, &fine_grid)?;
    let stable = (fine - coarse).abs() <= 1e-6 * coarse.abs().max(1.0);
    Ok(DomarReport {
        m,
        c,
        empirical_constant: coarse,
        refined_constant: fine,
        stable,
        pass: stable && fine.is_finite(),
        grid_points: fine_grid.radii * fine_grid.angles,
    })
}

/// Composite Gauss–Legendre quadrature of `g` along `level`.
pub fn line_integral(g: &HarmonicField, level: &Level, panels: usize, order: usize) -> Result<f64> {
    let (a, b) = level.span();
    let (ts, ws) = composite_rule(a, b, panels, order);
    let vals: Vec<f64> = ts.par_iter().map(|&t| g.value(level.point(t))).collect();
    let mut s = 0.0;
    for (k, (v, w)) in vals.iter().zip(&ws).enumerate() {
        if *v < 0.0 {
            return Err(LabError::NegativeValue { point: level.point(ts[k]), value: *v });
        }
        if !v.is_finite() {
            return Err(LabError::NonFinite { point: level.point(ts[k]) });
        }
        s += v * w;
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct L1Profile {
    pub gaps: Vec<f64>,
    pub values: Vec<f64>,
    pub sup: f64,
    /// Refinement still moved the last level's integral by more than 10%.
    pub divergent: bool,
    /// Integrals grow steadily as the levels approach the boundary.
    pub unbounded_trend: bool,
}

const ORDER: usize = 8;
const START_PANELS: usize = 32;
const MAX_PANELS: usize = 1 << 14;

/// Integrals of `g ≥ 0` along each level, refined by panel doubling until
/// they settle to `rel_tol`, and their supremum.
pub fn l1_bound_profile(g: &HarmonicField, levels: &Levels, rel_tol: f64) -> Result<L1Profile> {
    if levels.is_empty() {
        return Err(LabError::EmptySchedule);
    }
    let ls = levels.levels();
    let mut values = Vec::with_capacity(ls.len());
    let mut last_change = 0.0;
    for level in &ls {
        let mut panels = START_PANELS;
        let mut prev = line_integral(g, level, panels, ORDER)?;
        let mut change;
        loop {
            panels *= 2;
            let next = line_integral(g, level, panels, ORDER)?;
            change = (next - prev).abs() / next.abs().max(f64::MIN_POSITIVE);
            prev = next;
            if change <= rel_tol || panels >= MAX_PANELS {
                break;
            }
        }
        last_change = change;
        values.push(prev);
    }
    let gaps: Vec<f64> = ls.iter().map(Level::gap).collect();
    let sup = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let unbounded_trend = if values.len() >= 3 && values.iter().all(|v| *v > 0.0) {
        let x: Vec<f64> = gaps.iter().map(|d| -d.ln()).collect();
        let y: Vec<f64> = values.iter().map(|v| v.ln()).collect();
        let grows = values[values.len() - 1] > 1.5 * values[0];
        line_fit(&x, &y).is_some_and(|(s, _, _)| s > 0.1) && grows
    } else {
        false
    };
    Ok(L1Profile { gaps, values, sup, divergent: last_change > 0.1, unbounded_trend })
}
