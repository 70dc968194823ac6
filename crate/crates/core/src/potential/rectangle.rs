use super::BoundaryFunction;
use crate::error::{LabError, Result};
use crate::geometry::Region;
use crate::quad::{integrate, QuadConfig};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

/// Boundary data on the four sides. Each function takes the tangential
/// coordinate measured from the lower or left corner; `None` means zero.
#[derive(Debug, Clone, Default)]
pub struct RectangleData {
    pub bottom: Option<BoundaryFunction>,
    pub right: Option<BoundaryFunction>,
    pub top: Option<BoundaryFunction>,
    pub left: Option<BoundaryFunction>,
}

impl RectangleData {
    pub fn on(side: Side, h: BoundaryFunction) -> Self {
        let mut d = Self::default();
        d.set(side, h);
        d
    }

    pub fn set(&mut self, side: Side, h: BoundaryFunction) {
        match side {
            Side::Bottom => self.bottom = Some(h),
            Side::Right => self.right = Some(h),
            Side::Top => self.top = Some(h),
            Side::Left => self.left = Some(h),
        }
    }
}

struct SideSeries {
    side: Side,
    coeffs: Vec<f64>,
    /// bound on |c_n|: (2/L)·‖h‖₁
    coeff_bound: f64,
}

/// Sine-series solution of the rectangle Dirichlet problem with precomputed
/// coefficients.
pub struct RectangleDirichlet {
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
    sides: Vec<SideSeries>,
}

/// `sinh(a·d)/sinh(a·big_d)` for `0 ≤ d ≤ big_d`, without overflow.
fn sinh_ratio(a: f64, d: f64, big_d: f64) -> f64 {
    (a * (d - big_d)).exp() * (-(-2.0 * a * d).exp_m1()) / (-(-2.0 * a * big_d).exp_m1())
}

impl RectangleDirichlet {
    pub fn new(region: &Region, data: &RectangleData, terms: usize) -> Result<Self> {
        let Region::Rectangle { x_lo, x_hi, y_lo, y_hi } = *region else {
            return Err(LabError::RegionMismatch("dirichlet_rectangle needs a rectangle".into()));
        };
        if terms < 16 {
            return Err(LabError::InvalidParameter(format!("terms={terms} below 16")));
        }
        let (w, h) = (x_hi - x_lo, y_hi - y_lo);
        let cfg = QuadConfig { abs_tol: 1e-13, rel_tol: 1e-13, max_intervals: 20_000 };
        let mut sides = Vec::new();
        for (side, f) in [
            (Side::Bottom, &data.bottom),
            (Side::Right, &data.right),
            (Side::Top, &data.top),
            (Side::Left, &data.left),
        ] {
            let Some(f) = f else { continue };
            let len = if matches!(side, Side::Bottom | Side::Top) { w } else { h };
            let mut breaks: Vec<f64> = Vec::new();
            for s in &f.singular {
                breaks.push(s.at);
                for k in 1..=10 {
                    let d = len * 0.5f64.powi(k + 2);
                    breaks.extend([s.at - d, s.at + d]);
                }
            }
            let l1 = integrate(|t| f.eval(t).abs(), 0.0, len, &breaks, &cfg)?.value;
            let mut coeffs = Vec::with_capacity(terms);
            for n in 1..=terms {
                let k = n as f64 * PI / len;
                let mut b = breaks.clone();
                b.extend((1..n).map(|j| j as f64 * len / n as f64));
                let c = integrate(|t| f.eval(t) * (k * t).sin(), 0.0, len, &b, &cfg)?.value;
                coeffs.push(2.0 * c / len);
            }
            sides.push(SideSeries { side, coeffs, coeff_bound: 2.0 * l1 / len });
        }
        Ok(Self { x_lo, x_hi, y_lo, y_hi, sides })
    }

    /// Value at interior `z`; errors when the series tail bound exceeds `tol`.
    pub fn eval(&self, z: Complex64, tol: f64) -> Result<f64> {
        let (x, y) = (z.re, z.im);
        if !(x > self.x_lo && x < self.x_hi && y > self.y_lo && y < self.y_hi) {
            return Err(LabError::Domain { point: z, what: "open rectangle".into() });
        }
        let (w, h) = (self.x_hi - self.x_lo, self.y_hi - self.y_lo);
        let mut total = 0.0;
        let mut tail = 0.0;
        for s in &self.sides {
            // (length, tangential coordinate, transverse distance from the opposite side, full transverse extent)
            let (len, t, d, big_d) = match s.side {
                Side::Bottom => (w, x - self.x_lo, self.y_hi - y, h),
                Side::Top => (w, x - self.x_lo, y - self.y_lo, h),
                Side::Left => (h, y - self.y_lo, self.x_hi - x, w),
                Side::Right => (h, y - self.y_lo, x - self.x_lo, w),
            };
            let mut v = 0.0;
            for (i, c) in s.coeffs.iter().enumerate() {
                let k = (i + 1) as f64 * PI / len;
                v += c * (k * t).sin() * sinh_ratio(k, d, big_d);
            }
            total += v;
            let n = s.coeffs.len() as f64;
            let q = (-PI * (big_d - d) / len).exp();
            tail += s.coeff_bound * q.powf(n + 1.0) / ((1.0 - q) * (-(-2.0 * PI * big_d / len).exp_m1()));
        }
        if tail > tol {
            return Err(LabError::Truncation { bound: tail, tol, terms: self.sides.first().map_or(0, |s| s.coeffs.len()) });
        }
        Ok(total)
    }
}

/// One-shot evaluation of the rectangle Dirichlet solution.
pub fn dirichlet_rectangle(region: &Region, data: &RectangleData, z: Complex64, terms: usize, tol: f64) -> Result<f64> {
    RectangleDirichlet::new(region, data, terms)?.eval(z, tol)
}
