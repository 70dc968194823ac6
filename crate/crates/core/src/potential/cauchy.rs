//! `T(z) = (1/2π)∬ F(ζ)/(z−ζ) dm(ζ)` over star-shaped domains.
//!
//! With `∂̄ = ½(∂x + i∂y)` this convention gives `∂̄T = F/2`. The integrand's
//! pole is removed by subtracting `F(z)`; the constant part is integrated in
//! closed form through `∬_D dm/(z−ζ) = (1/2i)∮_{∂D} (ζ̄ − z̄)/(z − ζ) dζ`.

use crate::error::{LabError, Result};
use crate::quad::{composite_rule, integrate, QuadConfig};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// `{c + s·e^{iα} : α ∈ [α₀, α₁], 0 ≤ s ≤ R(α)}`.
#[derive(Clone)]
pub struct StarDomain {
    pub center: Complex64,
    pub angle_lo: f64,
    pub angle_hi: f64,
    reach: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for StarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StarDomain")
            .field("center", &self.center)
            .field("angle_lo", &self.angle_lo)
            .field("angle_hi", &self.angle_hi)
            .finish()
    }
}

impl StarDomain {
    pub fn new<R: Fn(f64) -> f64 + Send + Sync + 'static>(center: Complex64, angle_lo: f64, angle_hi: f64, reach: R) -> Result<Self> {
        if !(angle_hi > angle_lo && angle_hi - angle_lo <= 2.0 * PI + 1e-12) {
            return Err(LabError::InvalidParameter("star domain angles must satisfy lo < hi <= lo + 2pi".into()));
        }
        Ok(Self { center, angle_lo, angle_hi, reach: Arc::new(reach) })
    }

    pub fn disc(center: Complex64, radius: f64) -> Self {
        Self { center, angle_lo: -PI, angle_hi: PI, reach: Arc::new(move |_| radius) }
    }

    pub fn reach(&self, alpha: f64) -> f64 {
        (self.reach)(alpha)
    }

    fn full_turn(&self) -> bool {
        self.angle_hi - self.angle_lo >= 2.0 * PI - 1e-12
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let d = z - self.center;
        let s = d.norm();
        if s == 0.0 {
            return true;
        }
        let mut a = d.arg();
        if self.full_turn() {
            a = self.angle_lo + (a - self.angle_lo).rem_euclid(2.0 * PI);
        } else {
            // bring a into [lo, lo + 2π)
            a = self.angle_lo + (a - self.angle_lo).rem_euclid(2.0 * PI);
            if a > self.angle_hi {
                return false;
            }
        }
        s < self.reach(a)
    }

    fn boundary_point(&self, alpha: f64) -> (Complex64, Complex64) {
        let r = self.reach(alpha);
        let h = 2e-4 * (1.0 + alpha.abs());
        let dr = (8.0 * (self.reach(alpha + h) - self.reach(alpha - h)) - (self.reach(alpha + 2.0 * h) - self.reach(alpha - 2.0 * h))) / (12.0 * h);
        let e = Complex64::from_polar(1.0, alpha);
        (self.center + e * r, e * Complex64::new(dr, r))
    }

    /// The direction of `z` seen from the centre, when it lies inside the angular range.
    fn angle_breaks(&self, z: Complex64) -> Vec<f64> {
        let d = z - self.center;
        if d.norm() == 0.0 {
            return Vec::new();
        }
        let a = self.angle_lo + (d.arg() - self.angle_lo).rem_euclid(2.0 * PI);
        if a > self.angle_lo && a < self.angle_hi {
            vec![a]
        } else {
            Vec::new()
        }
    }

    /// `∬_D dm(ζ)/(z−ζ)` by the boundary formula.
    pub fn reciprocal_area_integral(&self, z: Complex64) -> Result<Complex64> {
        let cfg = QuadConfig { abs_tol: 1e-10, rel_tol: 1e-10, max_intervals: 20_000 };
        let integrand = |zeta: Complex64| {
            let d = z - zeta;
            if d.norm() == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                (zeta - z).conj() / d
            }
        };
        let arc = integrate(
            |a| {
                let (zeta, dz) = self.boundary_point(a);
                integrand(zeta) * dz
            },
            self.angle_lo,
            self.angle_hi,
            &self.angle_breaks(z),
            &cfg,
        )?
        .value;
        let mut total = arc;
        if !self.full_turn() {
            for (alpha, sign) in [(self.angle_lo, 1.0), (self.angle_hi, -1.0)] {
                let e = Complex64::from_polar(1.0, alpha);
                let r = self.reach(alpha);
                // the integrand turns fastest at the foot of the perpendicular from z
                let foot = ((z - self.center) * e.conj()).re;
                let breaks: Vec<f64> = [foot].into_iter().filter(|t| *t > 0.0 && *t < r).collect();
                let seg = integrate(|s| integrand(self.center + e * s) * e, 0.0, r, &breaks, &cfg)?.value;
                total += seg * sign;
            }
        }
        Ok(total / Complex64::new(0.0, 2.0))
    }
}

/// Tensor rule: composite Gauss–Legendre in angle and in radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaQuad {
    pub angle_panels: usize,
    pub radial_panels: usize,
    pub order: usize,
}

impl Default for AreaQuad {
    fn default() -> Self {
        Self { angle_panels: 16, radial_panels: 16, order: 8 }
    }
}

impl AreaQuad {
    pub fn refined(&self) -> Self {
        Self { angle_panels: 2 * self.angle_panels, radial_panels: 2 * self.radial_panels, order: self.order }
    }
}

/// Precomputed nodes `ζ_j`, weights `w_j` and products `F(ζ_j)·w_j`.
pub struct CauchyTable {
    domain: StarDomain,
    field: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    nodes: Vec<Complex64>,
    weights: Vec<f64>,
    weighted: Vec<Complex64>,
}

impl CauchyTable {
    pub fn new<F>(field: F, domain: StarDomain, quad: &AreaQuad) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        Self::from_arc(Arc::new(field), domain, quad)
    }

    pub fn from_arc(field: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>, domain: StarDomain, quad: &AreaQuad) -> Self {
        let (an, aw) = composite_rule(domain.angle_lo, domain.angle_hi, quad.angle_panels, quad.order);
        let (sn, sw) = composite_rule(0.0, 1.0, quad.radial_panels, quad.order);
        let mut nodes = Vec::with_capacity(an.len() * sn.len());
        let mut weights = Vec::with_capacity(nodes.capacity());
        for (a, wa) in an.iter().zip(&aw) {
            let r = domain.reach(*a);
            let e = Complex64::from_polar(1.0, *a);
            for (s, ws) in sn.iter().zip(&sw) {
                let rad = s * r;
                nodes.push(domain.center + e * rad);
                weights.push(wa * ws * r * rad);
            }
        }
        let weighted = nodes.iter().zip(&weights).map(|(z, w)| field(*z) * *w).collect();
        Self { domain, field, nodes, weights, weighted }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let c = if self.domain.contains(z) { (self.field)(z) } else { Complex64::new(0.0, 0.0) };
        let mut acc = Complex64::new(0.0, 0.0);
        for ((zeta, w), fw) in self.nodes.iter().zip(&self.weights).zip(&self.weighted) {
            let d = z - zeta;
            if d.norm_sqr() == 0.0 {
                continue;
            }
            acc += (fw - c * *w) / d;
        }
        if c.norm() != 0.0 {
            acc += c * self.domain.reciprocal_area_integral(z)?;
        }
        Ok(acc / (2.0 * PI))
    }
}

/// Transform at one point, doubling the tensor grid until two successive
/// levels agree to `tol` (relative to `1 + |T|`), at most three doublings.
pub fn cauchy_area_transform<F>(field: F, domain: &StarDomain, z: Complex64, quad: &AreaQuad, tol: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
{
    let field: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync> = Arc::new(field);
    let mut q = *quad;
    let mut prev = CauchyTable::from_arc(field.clone(), domain.clone(), &q).eval(z)?;
    let mut last_gap = f64::INFINITY;
    for _ in 0..3 {
        q = q.refined();
        let next = CauchyTable::from_arc(field.clone(), domain.clone(), &q).eval(z)?;
        last_gap = (next - prev).norm();
        if last_gap <= tol * (1.0 + next.norm()) {
            return Ok(next);
        }
        prev = next;
    }
    Err(LabError::RefinementBudget { discrepancy: last_gap, tol })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: f64, b: f64) -> Complex64 {
        Complex64::new(a, b)
    }

    #[test]
    fn reciprocal_area_integral_of_disc() {
        let d = StarDomain::disc(c(0.0, 0.0), 1.0);
        for z in [c(0.0, 0.0), c(0.3, -0.4), c(0.9, 0.1)] {
            let j = d.reciprocal_area_integral(z).unwrap();
            assert!((j - PI * z.conj()).norm() < 1e-10, "{z}: {j}");
        }
        // outside: π/z
        let z = c(2.0, 1.0);
        assert!((d.reciprocal_area_integral(z).unwrap() - PI / z).norm() < 1e-10);
    }

    #[test]
    fn wedge_boundary_formula_matches_tensor_rule() {
        let d = StarDomain::new(c(1.0, 0.0), 2.5, 3.0, |a: f64| 1.0 + 0.2 * a.cos()).unwrap();
        let z = c(-3.0, 2.0);
        let table = CauchyTable::new(|_| c(1.0, 0.0), d.clone(), &AreaQuad::default());
        let direct = table.eval(z).unwrap() * (2.0 * PI);
        let formula = d.reciprocal_area_integral(z).unwrap();
        assert!((direct - formula).norm() < 1e-10);
    }

    #[test]
    fn examples() {
        let d = StarDomain::disc(c(0.0, 0.0), 1.0);
        let q = AreaQuad::default();
        assert_eq!(cauchy_area_transform(|_| c(0.0, 0.0), &d, c(0.2, 0.1), &q, 1e-8).unwrap(), c(0.0, 0.0));
        assert!(cauchy_area_transform(|_| c(1.0, 0.0), &d, c(0.0, 0.0), &q, 1e-8).unwrap().norm() < 1e-12);
    }

    #[test]
    fn dbar_of_transform_is_half_the_density() {
        let field = |z: Complex64| c(1.0 + z.re * z.im, (2.0 * z.re).sin());
        let d = StarDomain::disc(c(0.0, 0.0), 1.0);
        let table = CauchyTable::new(field, d, &AreaQuad { angle_panels: 32, radial_panels: 32, order: 8 });
        for z in [c(0.1, 0.2), c(-0.4, 0.3), c(0.5, -0.5)] {
            let h = 1e-3;
            let dx = (table.eval(z + h).unwrap() - table.eval(z - h).unwrap()) / (2.0 * h);
            let dy = (table.eval(z + c(0.0, h)).unwrap() - table.eval(z - c(0.0, h)).unwrap()) / (2.0 * h);
            let dbar = 0.5 * (dx + c(0.0, 1.0) * dy);
            let target = 0.5 * field(z);
            assert!((dbar - target).norm() <= 0.05 * target.norm(), "{z}: {dbar} vs {target}");
        }
    }
}
