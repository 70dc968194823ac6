//! Harmonic function on the disc with vanishing boundary values off `z = 1`,
//! vanishing nontangential limit at `1`, and growth
//! `log|w| ≈ C ε (1−|z|)^{−π/(2θ)}` along the circle.
//!
//! Pieces: `f = ((1−z)/(1+z))^A · exp(Z^p)` with `Z = K + iε(1+z)/(1−z)` and
//! `p = π/(2θ)` on the angular region `Δ` near `1`; a smooth angular cutoff
//! `g`; `h = f·g`; `h₁ = T(∂̄h)` (so `H = h − h₁` is holomorphic); `v` the
//! harmonic extension of `Im(h₁ − h)` from the circle; `w = v + Im H`.

use crate::error::{LabError, Result};
use crate::field::{FieldMetadata, HarmonicField, Regularity};
use crate::geometry::Region;
use crate::potential::{poisson_integral_disc_with, AreaQuad, BoundaryFunction, CauchyTable, StarDomain};
use crate::quad::QuadConfig;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WolfParams {
    pub theta: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub a: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    /// Width of the band added outside the circle along the cutoff arc.
    pub tube_width: f64,
    pub angle_panels: usize,
    pub radial_panels: usize,
    pub order: usize,
    /// Knots of the periodic boundary table for `Im(h₁ − h)`.
    pub boundary_samples: usize,
}

impl Default for WolfParams {
    fn default() -> Self {
        Self {
            theta: 0.3 * PI,
            beta: 0.05,
            epsilon: 0.05,
            a: 8,
            k: None,
            tube_width: 0.005,
            angle_panels: 4,
            radial_panels: 64,
            order: 8,
            boundary_samples: 4096,
        }
    }
}

impl WolfParams {
    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.theta > 0.0 && self.theta < FRAC_PI_2) {
            return Err(LabError::InvalidParameter(format!("theta={} outside (0, pi/2)", self.theta)));
        }
        if !(self.beta > 0.0 && self.beta < self.theta / 4.0) {
            return Err(LabError::InvalidParameter(format!("beta={} outside (0, theta/4)", self.beta)));
        }
        if self.a < 4 || self.a % 2 != 0 {
            return Err(LabError::InvalidParameter(format!("A={} must be even and >= 4", self.a)));
        }
        if !(self.epsilon >= 0.0) || !(self.tube_width > 0.0) {
            return Err(LabError::InvalidParameter("epsilon >= 0 and tube_width > 0 required".into()));
        }
        if self.boundary_samples < 64 || self.order == 0 || self.angle_panels == 0 || self.radial_panels == 0 {
            return Err(LabError::InvalidParameter("quadrature sizes too small".into()));
        }
        Ok(())
    }

    pub fn exponent(&self) -> f64 {
        PI / (2.0 * self.theta)
    }

    /// Angular band `[ψ_a, ψ_b]` of `arg(1−z)` where the cutoff rises from 0 to 1.
    pub fn transition(&self) -> (f64, f64) {
        let top = FRAC_PI_2 - self.theta;
        (top - 2.0 * self.beta / 3.0, top - self.beta / 3.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KChoice {
    pub k: f64,
    /// `min |d ∓ e^{iθ}|` for the sampled direction `d`.
    pub direction_deviation: f64,
    /// Distance of the third sample's image from the ray `e^{iθ}ℝ₊`, relative.
    pub residual: f64,
}

fn moebius(eps: f64, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    Complex64::new(0.0, eps) * (one + z) / (one - z)
}

/// Real shift placing the image of the ray `arg(1−z) = π/2−θ` on `e^{iθ}ℝ₊`.
pub fn wolf_choose_k(params: &WolfParams) -> Result<KChoice> {
    params.validate()?;
    let th = params.theta;
    let psi = FRAC_PI_2 - th;
    let chord = 2.0 * psi.cos();
    let on_ray = |frac: f64| Complex64::new(1.0, 0.0) - Complex64::from_polar(frac * chord, psi);
    let eps = params.epsilon;
    let (q1, q2, q3) = (moebius(eps, on_ray(0.3)), moebius(eps, on_ray(0.6)), moebius(eps, on_ray(0.45)));
    let diff = q2 - q1;
    if diff.norm() == 0.0 {
        // ε = 0: every image is 0 and K = 0 puts it on the ray's vertex
        return Ok(KChoice { k: 0.0, direction_deviation: 0.0, residual: 0.0 });
    }
    let d = diff / diff.norm();
    let e = Complex64::from_polar(1.0, th);
    let deviation = (d - e).norm().min((d + e).norm());
    if deviation > 1e-6 {
        return Err(LabError::DegenerateRay { deviation });
    }
    let rot = Complex64::from_polar(1.0, -th);
    let k = (q1 * rot).im / th.sin();
    let w3 = (q3 + k) * rot;
    let residual = w3.im.abs() / (1.0 + q3.norm());
    if residual > 1e-8 || w3.re <= 0.0 {
        return Err(LabError::DegenerateRay { deviation: residual });
    }
    Ok(KChoice { k, direction_deviation: deviation, residual })
}

/// `S(x) = 6x⁵ − 15x⁴ + 10x³` on `[0,1]`, clamped.
fn smoothstep(x: f64) -> (f64, f64) {
    if x <= 0.0 {
        (0.0, 0.0)
    } else if x >= 1.0 {
        (1.0, 0.0)
    } else {
        let x2 = x * x;
        (x2 * x * (10.0 - 15.0 * x + 6.0 * x2), 30.0 * x2 * (1.0 - x) * (1.0 - x))
    }
}

/// Logarithmic form `log|h|` plus phase, so that huge values stay representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub log_modulus: f64,
    pub phase: f64,
}

impl LogValue {
    pub fn to_complex(self) -> Complex64 {
        if self.log_modulus == f64::NEG_INFINITY {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.log_modulus.exp(), self.phase)
    }

    pub fn imag(self) -> f64 {
        if self.log_modulus == f64::NEG_INFINITY {
            0.0
        } else {
            self.log_modulus.exp() * self.phase.sin()
        }
    }
}

/// The pieces `f, g, h` in closed form; shared by the assembled field and by
/// the density of the area transform.
#[derive(Debug, Clone, Copy)]
struct Core {
    theta: f64,
    beta: f64,
    eps: f64,
    a: i32,
    k: f64,
    p: f64,
    psi_a: f64,
}

impl Core {
    fn psi(z: Complex64) -> f64 {
        (Complex64::new(1.0, 0.0) - z).arg()
    }

    fn cutoff(&self, psi: f64) -> (f64, f64) {
        let width = self.beta / 3.0;
        let (s, ds) = smoothstep((psi - self.psi_a) / width);
        (s, ds / width)
    }

    fn in_delta(&self, z: Complex64) -> bool {
        Self::psi(z) > FRAC_PI_2 - self.theta - self.beta
    }

    /// `Z^p` with `arg Z ∈ (−π/2, 3π/2]`, keeping the cut off the image of `Δ`.
    fn zpow(&self, zz: Complex64) -> Complex64 {
        let r = zz.norm();
        if r == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let mut a = zz.arg();
        if a <= -FRAC_PI_2 {
            a += 2.0 * PI;
        }
        Complex64::from_polar(r.powf(self.p), self.p * a)
    }

    fn big_z(&self, z: Complex64) -> Complex64 {
        moebius(self.eps, z) + self.k
    }

    /// `log f` as (log-modulus, phase).
    fn log_f(&self, z: Complex64) -> LogValue {
        let one = Complex64::new(1.0, 0.0);
        let q = (one - z) / (one + z);
        let zp = self.zpow(self.big_z(z));
        LogValue { log_modulus: self.a as f64 * q.norm().ln() + zp.re, phase: self.a as f64 * q.arg() + zp.im }
    }

    fn log_h(&self, z: Complex64) -> LogValue {
        let (g, _) = self.cutoff(Self::psi(z));
        if g == 0.0 || !self.in_delta(z) {
            return LogValue { log_modulus: f64::NEG_INFINITY, phase: 0.0 };
        }
        let lf = self.log_f(z);
        LogValue { log_modulus: lf.log_modulus + g.ln(), phase: lf.phase }
    }

    fn f(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let q = (one - z) / (one + z);
        q.powi(self.a) * self.zpow(self.big_z(z)).exp()
    }

    fn h(&self, z: Complex64) -> Complex64 {
        let (g, _) = self.cutoff(Self::psi(z));
        if g == 0.0 || !self.in_delta(z) {
            return Complex64::new(0.0, 0.0);
        }
        self.f(z) * g
    }

    /// `(∂x + i∂y)h = 2∂̄h = −i f g'(ψ)/conj(1−z)`; zero off the transition band.
    fn grad_h(&self, z: Complex64) -> Complex64 {
        let (_, dg) = self.cutoff(Self::psi(z));
        if dg == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let one = Complex64::new(1.0, 0.0);
        Complex64::new(0.0, -1.0) * self.f(z) * dg / (one - z).conj()
    }

    /// `Im h(e^{it})` from the exact boundary forms `(1+z)/(1−z) = i·cot(t/2)`
    /// and `((1−z)/(1+z))^A = (−1)^{A/2} tan^A(t/2)`. Where `Z ≥ 0` the value is
    /// real and this returns exactly `0`.
    fn im_h_on_circle(&self, t: f64) -> f64 {
        let t = t.rem_euclid(2.0 * PI);
        let psi = 0.5 * (t - PI);
        let (g, _) = self.cutoff(psi);
        if g == 0.0 || psi <= FRAC_PI_2 - self.theta - self.beta || t == 0.0 {
            return 0.0;
        }
        let half = 0.5 * t;
        let zr = self.k - self.eps * half.cos() / half.sin();
        if zr >= 0.0 {
            return 0.0;
        }
        let sign = if (self.a / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let qa = half.tan().powi(self.a);
        let m = (-zr).powf(self.p);
        let (s, c) = (self.p * PI).sin_cos();
        sign * qa * g * (m * c).exp() * (m * s).sin()
    }

    /// The full complex `h(e^{it})` from the exact boundary forms.
    fn h_on_circle(&self, t: f64) -> Complex64 {
        let t = t.rem_euclid(2.0 * PI);
        let psi = 0.5 * (t - PI);
        let (g, _) = self.cutoff(psi);
        if g == 0.0 || psi <= FRAC_PI_2 - self.theta - self.beta || t == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let half = 0.5 * t;
        let zr = self.k - self.eps * half.cos() / half.sin();
        let sign = if (self.a / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let qa = sign * half.tan().powi(self.a) * g;
        if zr >= 0.0 {
            Complex64::new(qa * zr.powf(self.p).exp(), 0.0)
        } else {
            let m = (-zr).powf(self.p);
            qa * Complex64::from_polar(1.0, 0.0) * Complex64::new(m * (self.p * PI).cos(), m * (self.p * PI).sin()).exp()
        }
    }
}

/// Periodic Catmull–Rom interpolation on equispaced knots of `[0, 2π)`.
#[derive(Debug, Clone)]
struct PeriodicTable {
    values: Vec<f64>,
}

impl PeriodicTable {
    fn eval(&self, t: f64) -> f64 {
        let n = self.values.len();
        let x = t.rem_euclid(2.0 * PI) / (2.0 * PI) * n as f64;
        let i = x.floor() as isize;
        let u = x - i as f64;
        let at = |k: isize| self.values[k.rem_euclid(n as isize) as usize];
        let (p0, p1, p2, p3) = (at(i - 1), at(i), at(i + 1), at(i + 2));
        0.5 * (2.0 * p1 + (-p0 + p2) * u + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u * u + (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * u * u * u)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WolfDiagnostics {
    pub k: KChoice,
    /// Largest `|Im h(e^{it})|` over plateau knots where `Z > 0`.
    pub plateau_im_h_max: f64,
    /// Relative mismatch between the analytic `(∂x+i∂y)h` and central differences.
    pub gradient_residual: f64,
    /// Change of `h₁` at probe points when the area grid is doubled.
    pub area_refinement_gap: f64,
    /// Largest `|Im(h₁ − h)|` on the circle.
    pub boundary_data_max: f64,
    pub area_nodes: usize,
    pub warnings: Vec<String>,
}

/// The assembled construction with evaluators for every piece.
pub struct WolfField {
    pub params: WolfParams,
    core: Core,
    h1_table: Arc<CauchyTable>,
    boundary: Arc<PeriodicTable>,
    pub diagnostics: WolfDiagnostics,
}

impl WolfField {
    pub fn exponent(&self) -> f64 {
        self.core.p
    }

    pub fn k(&self) -> f64 {
        self.core.k
    }

    pub fn f(&self, z: Complex64) -> Complex64 {
        if self.core.in_delta(z) {
            self.core.f(z)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn g(&self, z: Complex64) -> f64 {
        self.core.cutoff(Core::psi(z)).0
    }

    pub fn h(&self, z: Complex64) -> Complex64 {
        self.core.h(z)
    }

    pub fn log_h(&self, z: Complex64) -> LogValue {
        self.core.log_h(z)
    }

    pub fn h_on_circle(&self, t: f64) -> Complex64 {
        self.core.h_on_circle(t)
    }

    pub fn im_h_on_circle(&self, t: f64) -> f64 {
        self.core.im_h_on_circle(t)
    }

    /// `(∂x + i∂y)h`.
    pub fn grad_h(&self, z: Complex64) -> Complex64 {
        self.core.grad_h(z)
    }

    pub fn h1(&self, z: Complex64) -> Result<Complex64> {
        self.h1_table.eval(z)
    }

    pub fn big_h(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.h(z) - self.h1(z)?)
    }

    /// Interpolated boundary data `Im(h₁ − h)(e^{it})`.
    pub fn boundary_data(&self, t: f64) -> f64 {
        self.boundary.eval(t)
    }

    pub fn v(&self, z: Complex64) -> Result<f64> {
        let table = self.boundary.clone();
        let b = BoundaryFunction::new(move |t| table.eval(t));
        let (pa, pb) = self.params.transition();
        let breaks = [0.0, PI + 2.0 * pa, PI + 2.0 * pb, PI + 2.0 * (FRAC_PI_2 - self.params.theta)];
        let cfg = QuadConfig { abs_tol: 1e-10, rel_tol: 1e-12, max_intervals: 8000 };
        poisson_integral_disc_with(&b, z, &breaks, &cfg)
    }

    /// `w = v + Im h − Im h₁`.
    pub fn w(&self, z: Complex64) -> Result<f64> {
        Ok(self.v(z)? + self.h(z).im - self.h1(z)?.im)
    }

    /// `log|w|`, switching to the logarithmic form of `h` once it dominates.
    pub fn log_abs_w(&self, z: Complex64) -> Result<f64> {
        let lh = self.core.log_h(z);
        if lh.log_modulus > 40.0 {
            return Ok(lh.log_modulus + lh.phase.sin().abs().ln());
        }
        Ok(self.w(z)?.abs().ln())
    }

    /// `w` as a field on the disc, with the overflow-free `log|w|` attached.
    pub fn w_field(self: &Arc<Self>) -> HarmonicField {
        let me = self.clone();
        let me2 = self.clone();
        HarmonicField::real("wolf", Region::UnitDisc, Regularity::Harmonic, move |z| me.w(z).unwrap_or(f64::NAN))
            .with_metadata(FieldMetadata::Composite)
            .with_log_abs(move |z| me2.log_abs_w(z).unwrap_or(f64::NAN))
    }
}

/// Builds every piece of the construction and its diagnostics.
pub fn wolf_assemble(params: &WolfParams) -> Result<WolfField> {
    params.validate()?;
    if !(params.epsilon > 0.0) {
        return Err(LabError::InvalidParameter("epsilon must be positive".into()));
    }
    let kc = match params.k {
        Some(k) => KChoice { k, direction_deviation: f64::NAN, residual: f64::NAN },
        None => wolf_choose_k(params)?,
    };
    let (psi_a, psi_b) = params.transition();
    let core = Core {
        theta: params.theta,
        beta: params.beta,
        eps: params.epsilon,
        a: params.a as i32,
        k: kc.k,
        p: params.exponent(),
        psi_a,
    };
    let tau = params.tube_width;
    let domain = StarDomain::new(Complex64::new(1.0, 0.0), psi_a + PI, psi_b + PI, move |alpha: f64| {
        let psi = alpha - PI;
        2.0 * psi.cos() + tau / psi.cos()
    })?;
    let quad = AreaQuad { angle_panels: params.angle_panels, radial_panels: params.radial_panels, order: params.order };
    let density = move |z: Complex64| core.grad_h(z);
    let table = Arc::new(CauchyTable::new(density, domain.clone(), &quad));

    let n = params.boundary_samples;
    let knots: Vec<f64> = (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect();
    let values: Vec<f64> = knots
        .par_iter()
        .map(|&t| {
            let z = Complex64::from_polar(1.0, t);
            let h1 = if t == 0.0 { table.eval(Complex64::new(1.0, 0.0)) } else { table.eval(z) };
            h1.map(|v| v.im - core.im_h_on_circle(t))
        })
        .collect::<Result<Vec<f64>>>()?;
    let boundary_data_max = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    let plateau_im_h_max = knots
        .iter()
        .filter(|&&t| {
            let psi = 0.5 * (t - PI);
            let half = 0.5 * t;
            psi > FRAC_PI_2 - params.theta && core.k - params.epsilon * half.cos() / half.sin() > 0.0
        })
        .map(|&t| core.im_h_on_circle(t).abs())
        .fold(0.0, f64::max);

    let mid_band = 0.5 * (psi_a + psi_b);
    let probes: Vec<Complex64> = [0.3, 0.6, 0.9]
        .iter()
        .map(|s| Complex64::new(1.0, 0.0) - Complex64::from_polar(s * 2.0 * mid_band.cos(), mid_band))
        .collect();
    let mut gradient_residual: f64 = 0.0;
    for &z in &probes {
        let hstep = 1e-6;
        let dx = (core.h(z + hstep) - core.h(z - hstep)) / (2.0 * hstep);
        let dy = (core.h(z + Complex64::new(0.0, hstep)) - core.h(z - Complex64::new(0.0, hstep))) / (2.0 * hstep);
        let fd = dx + Complex64::new(0.0, 1.0) * dy;
        let an = core.grad_h(z);
        gradient_residual = gradient_residual.max((fd - an).norm() / (1e-12 + an.norm()));
    }
    let refined = CauchyTable::new(density, domain, &quad.refined());
    let mut area_refinement_gap: f64 = 0.0;
    for z in [Complex64::new(0.0, 0.0), Complex64::from_polar(0.9, PI + 2.0 * mid_band), Complex64::new(0.5, -0.5)] {
        area_refinement_gap = area_refinement_gap.max((refined.eval(z)? - table.eval(z)?).norm());
    }
    let mut warnings = Vec::new();
    if area_refinement_gap > 1e-3 * (1.0 + boundary_data_max) {
        warnings.push(format!("area quadrature gap {area_refinement_gap:.3e} is large; increase panels"));
    }
    if params.epsilon * params.exponent() < 0.5 {
        warnings.push("epsilon small: exponential growth may not separate from the polynomial factor".into());
    }
    let diagnostics = WolfDiagnostics {
        k: kc,
        plateau_im_h_max,
        gradient_residual,
        area_refinement_gap,
        boundary_data_max,
        area_nodes: table.len(),
        warnings,
    };
    Ok(WolfField { params: params.clone(), core, h1_table: table, boundary: Arc::new(PeriodicTable { values }), diagnostics })
}
