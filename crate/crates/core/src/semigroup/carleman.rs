use super::{norm, resolvent_apply, ModelKind, Mode, OperatorModel, Vector};
use crate::error::{LabError, Result};
use crate::quad::{integrate, QuadConfig};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

type Trajectory = dyn Fn(f64) -> Vector + Send + Sync;

/// A complete trajectory `F: ℝ → ℂⁿ` with `‖F(t)‖ ≤ bound`.
#[derive(Clone)]
pub struct TrajectoryModel {
    f: Arc<Trajectory>,
    pub bound: f64,
    pub dim: usize,
}

impl fmt::Debug for TrajectoryModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TrajectoryModel").field("bound", &self.bound).field("dim", &self.dim).finish()
    }
}

impl TrajectoryModel {
    pub fn new(dim: usize, bound: f64, f: impl Fn(f64) -> Vector + Send + Sync + 'static) -> Result<Self> {
        if !(bound >= 0.0 && bound.is_finite()) {
            return Err(LabError::InvalidParameter(format!("trajectory bound must be finite and >= 0, got {bound}")));
        }
        Ok(TrajectoryModel { f: Arc::new(f), bound, dim })
    }

    /// Scalar `F(t) = a·e^{iωt}`.
    pub fn scalar_wave(amplitude: Complex64, omega: f64) -> Self {
        TrajectoryModel {
            f: Arc::new(move |t: f64| vec![amplitude * Complex64::new(0.0, omega * t).exp()]),
            bound: amplitude.norm(),
            dim: 1,
        }
    }

    pub fn zero(dim: usize) -> Self {
        TrajectoryModel { f: Arc::new(move |_| vec![Complex64::new(0.0, 0.0); dim]), bound: 0.0, dim }
    }

    /// The orbit `F(t) = e^{tA}x` of a diagonal group generator (`Re λ_k = 0`),
    /// defined for every real `t`.
    pub fn group_orbit(op: &OperatorModel, x: &[Complex64]) -> Result<Self> {
        let values = match (&op.kind, op.mode) {
            (ModelKind::Diagonal(v), Mode::ContinuousGenerator) if v.iter().all(|l| l.re == 0.0) => v.clone(),
            _ => return Err(LabError::InvalidParameter("complete orbits need a diagonal generator on the imaginary axis".into())),
        };
        if x.len() != values.len() {
            return Err(LabError::Dimension { expected: values.len(), got: x.len() });
        }
        let x = x.to_vec();
        let bound = norm(&x);
        let dim = x.len();
        Ok(TrajectoryModel {
            f: Arc::new(move |t: f64| values.iter().zip(&x).map(|(l, xk)| (l * t).exp() * xk).collect()),
            bound,
            dim,
        })
    }

    pub fn eval(&self, t: f64) -> Vector {
        (self.f)(t)
    }

    /// Largest `‖F(t)‖ − bound` over the samples; nonpositive when the bound holds.
    pub fn bound_excess(&self, samples: &[f64]) -> f64 {
        samples.iter().map(|&t| norm(&self.eval(t)) - self.bound).fold(f64::NEG_INFINITY, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CarlemanConfig {
    /// Target for both the truncation tail and the quadrature error.
    pub tol: f64,
    pub max_horizon: f64,
    pub max_intervals: usize,
}

impl Default for CarlemanConfig {
    fn default() -> Self {
        CarlemanConfig { tol: 1e-10, max_horizon: 1e4, max_intervals: 20_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarlemanValue {
    pub lambda: Complex64,
    pub value: Vector,
    pub horizon: f64,
    pub tail_bound: f64,
    /// Quadrature error estimate plus the tail bound.
    pub error: f64,
}

/// `F̂(λ) = ∫_0^∞ e^{−λt}F(t)dt` for `Re λ > 0` and `−∫_{−∞}^0 e^{−λt}F(t)dt`
/// for `Re λ < 0`, truncated at the horizon where `e^{−|Re λ|H}·bound/|Re λ|`
/// drops below the tolerance.
pub fn carleman_transform(f: &TrajectoryModel, lambda: Complex64, cfg: &CarlemanConfig) -> Result<CarlemanValue> {
    let sigma = lambda.re.abs();
    if sigma == 0.0 || !lambda.re.is_finite() || !lambda.im.is_finite() {
        return Err(LabError::ImaginaryAxis { lambda });
    }
    if f.bound == 0.0 {
        return Ok(CarlemanValue { lambda, value: vec![Complex64::new(0.0, 0.0); f.dim], horizon: 0.0, tail_bound: 0.0, error: 0.0 });
    }
    let horizon = ((f.bound / (sigma * cfg.tol)).ln() / sigma).max(0.0);
    if horizon > cfg.max_horizon {
        return Err(LabError::HorizonInsufficient { required: horizon, allowed: cfg.max_horizon });
    }
    let tail_bound = f.bound * (-sigma * horizon).exp() / sigma;
    let sign = if lambda.re > 0.0 { 1.0 } else { -1.0 };
    let integrand = |s: f64| {
        let t = sign * s;
        let w = (-lambda * t).exp();
        f.eval(t).into_iter().map(|v| v * w).collect::<Vector>()
    };
    let breaks: Vec<f64> = (1..64).map(|k| horizon * k as f64 / 64.0).collect();
    let quad = QuadConfig { abs_tol: cfg.tol, rel_tol: 0.0, max_intervals: cfg.max_intervals };
    let est = integrate(integrand, 0.0, horizon, &breaks, &quad)?;
    let value: Vector = est.value.into_iter().map(|v| v * sign).collect();
    Ok(CarlemanValue { lambda, value, horizon, tail_bound, error: est.error + tail_bound })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityResidual {
    pub lambda: Complex64,
    pub mu: Complex64,
    pub residual: f64,
    /// Combined quadrature error bound the residual is compared against.
    pub tolerance: f64,
    pub within: bool,
}

/// `‖F̂(μ) − R(λ, A*)F(0) − (λ − μ)R(λ, A*)F̂(μ)‖` for `Re λ > 0`.
pub fn carleman_identity_check(
    adjoint: &OperatorModel,
    f: &TrajectoryModel,
    lambda: Complex64,
    mu: Complex64,
    cfg: &CarlemanConfig,
) -> Result<IdentityResidual> {
    if !(lambda.re > 0.0) {
        return Err(LabError::InvalidParameter(format!("identity check needs Re lambda > 0, got {lambda}")));
    }
    let fm = carleman_transform(f, mu, cfg)?;
    let r0 = resolvent_apply(adjoint, lambda, &f.eval(0.0))?;
    let rm = resolvent_apply(adjoint, lambda, &fm.value)?;
    let diff: Vector = fm.value.iter().zip(&r0).zip(&rm).map(|((a, b), c)| a - b - (lambda - mu) * c).collect();
    let residual = norm(&diff);
    let resolvent_scale = 1.0 + (lambda - mu).norm() / lambda.re;
    let tolerance = fm.error * resolvent_scale + 1e-12 * (1.0 + norm(&fm.value));
    Ok(IdentityResidual { lambda, mu, residual, tolerance, within: residual <= tolerance })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularScan {
    pub sigma: f64,
    pub taus: Vec<f64>,
    /// `σ‖F̂(σ + iτ)‖`.
    pub scores: Vec<f64>,
    pub peak_tau: f64,
    pub peak_score: f64,
}

/// Scores `σ‖F̂(σ + iτ)‖` along a line parallel to the imaginary axis; scores
/// that stay away from 0 as `σ ↓ 0` mark points of the singular set.
pub fn carleman_singular_scan(f: &TrajectoryModel, taus: &[f64], sigma: f64, cfg: &CarlemanConfig) -> Result<SingularScan> {
    if taus.is_empty() {
        return Err(LabError::EmptySchedule);
    }
    if !(sigma > 0.0) {
        return Err(LabError::InvalidParameter(format!("scan offset must be positive, got {sigma}")));
    }
    let scores = taus
        .par_iter()
        .map(|&tau| carleman_transform(f, Complex64::new(sigma, tau), cfg).map(|v| sigma * norm(&v.value)))
        .collect::<Result<Vec<f64>>>()?;
    let (k, peak) = scores.iter().copied().enumerate().fold((0, f64::NEG_INFINITY), |best, (k, s)| if s > best.1 { (k, s) } else { best });
    Ok(SingularScan { sigma, taus: taus.to_vec(), scores, peak_tau: taus[k], peak_score: peak })
}
