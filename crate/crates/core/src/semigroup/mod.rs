//! Finite operator models: resolvents, semigroup and power evolution,
//! boundedness and stability probes, the Fourier-type resolvent criterion,
//! fractional resolvents, and Carleman transforms of complete trajectories.

mod carleman;
mod expm;
mod rule;

pub use carleman::{
    carleman_identity_check, carleman_singular_scan, carleman_transform, CarlemanConfig, CarlemanValue, IdentityResidual,
    SingularScan, TrajectoryModel,
};
pub use expm::{expm, matrix_power, norm1};
pub use rule::LambdaRule;
pub use nalgebra::DMatrix;

use crate::error::{LabError, Result};
use crate::quad::line_fit;
use nalgebra::DVector;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub type Vector = Vec<Complex64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `A` generates `T(t) = e^{tA}`.
    ContinuousGenerator,
    /// `T` acts by powers `Tⁿ`.
    DiscreteOperator,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelKind {
    Diagonal(Vec<Complex64>),
    Matrix(DMatrix<Complex64>),
}

/// A finite-dimensional generator or operator.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorModel {
    pub kind: ModelKind,
    pub mode: Mode,
}

impl OperatorModel {
    /// Diagonal model; continuous models need `Re λ_k ≤ 0`, discrete ones `|μ_k| ≤ 1`.
    pub fn diagonal(values: Vec<Complex64>, mode: Mode) -> Result<Self> {
        if values.is_empty() {
            return Err(LabError::InvalidParameter("diagonal model needs at least one entry".into()));
        }
        for (k, v) in values.iter().enumerate() {
            let ok = match mode {
                Mode::ContinuousGenerator => v.re <= 0.0,
                Mode::DiscreteOperator => v.norm() <= 1.0,
            };
            if !ok || !v.re.is_finite() || !v.im.is_finite() {
                return Err(LabError::InvalidParameter(format!("entry {} = {v} violates the boundedness constraint of {mode:?}", k + 1)));
            }
        }
        Ok(OperatorModel { kind: ModelKind::Diagonal(values), mode })
    }

    /// Diagonal model from a rule `k ↦ λ_k`, `k = 1..=n`.
    pub fn from_rule(rule: &LambdaRule, n: usize, mode: Mode) -> Result<Self> {
        Self::diagonal(rule.sequence(n)?, mode)
    }

    pub fn matrix(a: DMatrix<Complex64>, mode: Mode) -> Result<Self> {
        if a.nrows() != a.ncols() || a.nrows() == 0 {
            return Err(LabError::Dimension { expected: a.nrows(), got: a.ncols() });
        }
        Ok(OperatorModel { kind: ModelKind::Matrix(a), mode })
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            ModelKind::Diagonal(v) => v.len(),
            ModelKind::Matrix(a) => a.nrows(),
        }
    }

    /// The Hilbert adjoint.
    pub fn adjoint(&self) -> Self {
        let kind = match &self.kind {
            ModelKind::Diagonal(v) => ModelKind::Diagonal(v.iter().map(|z| z.conj()).collect()),
            ModelKind::Matrix(a) => ModelKind::Matrix(a.adjoint()),
        };
        OperatorModel { kind, mode: self.mode }
    }

    fn check_dim(&self, x: &[Complex64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(LabError::Dimension { expected: self.dim(), got: x.len() });
        }
        Ok(())
    }
}

pub fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Standard basis vector `e_k` (1-based).
pub fn basis(n: usize, k: usize) -> Vector {
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    v[k - 1] = Complex64::new(1.0, 0.0);
    v
}

const HIT: f64 = 1e-300;
const RESIDUAL_TOL: f64 = 1e-10;

/// `R(λ)x = (λ − A)^{−1}x`.
pub fn resolvent_apply(op: &OperatorModel, lambda: Complex64, x: &[Complex64]) -> Result<Vector> {
    op.check_dim(x)?;
    match &op.kind {
        ModelKind::Diagonal(values) => {
            let hits: Vec<usize> = values.iter().enumerate().filter(|(_, v)| (lambda - *v).norm() <= HIT).map(|(k, _)| k + 1).collect();
            if !hits.is_empty() {
                return Err(LabError::SpectrumHit { indices: hits });
            }
            Ok(values.iter().zip(x).map(|(v, xk)| xk / (lambda - v)).collect())
        }
        ModelKind::Matrix(a) => {
            let n = a.nrows();
            let m = DMatrix::<Complex64>::identity(n, n) * lambda - a;
            let rhs = DVector::from_column_slice(x);
            let y = m.clone().lu().solve(&rhs).ok_or(LabError::SingularSolve { residual: f64::INFINITY })?;
            let residual = (&m * &y - &rhs).norm();
            let scale = rhs.norm();
            if !(residual <= RESIDUAL_TOL * scale) && scale > 0.0 {
                return Err(LabError::SingularSolve { residual: residual / scale });
            }
            Ok(y.iter().copied().collect())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Time {
    Continuous(f64),
    Steps(u64),
}

fn finite(v: &[Complex64]) -> bool {
    v.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// `T(t)x = e^{tA}x` or `Tⁿx`.
pub fn evolve(op: &OperatorModel, time: Time, x: &[Complex64]) -> Result<Vector> {
    op.check_dim(x)?;
    match (op.mode, time) {
        (Mode::ContinuousGenerator, Time::Continuous(t)) => {
            if !(t >= 0.0) {
                return Err(LabError::InvalidParameter(format!("time must be >= 0, got {t}")));
            }
            if t == 0.0 {
                return Ok(x.to_vec());
            }
            let y: Vector = match &op.kind {
                ModelKind::Diagonal(values) => values.iter().zip(x).map(|(v, xk)| (v * t).exp() * xk).collect(),
                ModelKind::Matrix(a) => {
                    let e = expm(&(a * Complex64::new(t, 0.0)))?;
                    (e * DVector::from_column_slice(x)).iter().copied().collect()
                }
            };
            if !finite(&y) {
                return Err(LabError::Overflow);
            }
            Ok(y)
        }
        (Mode::DiscreteOperator, Time::Steps(n)) => {
            if n == 0 {
                return Ok(x.to_vec());
            }
            let y: Vector = match &op.kind {
                ModelKind::Diagonal(values) => values.iter().zip(x).map(|(v, xk)| pow_u64(*v, n) * xk).collect(),
                ModelKind::Matrix(a) => (matrix_power(a, n)? * DVector::from_column_slice(x)).iter().copied().collect(),
            };
            if !finite(&y) {
                return Err(LabError::Overflow);
            }
            Ok(y)
        }
        (mode, time) => Err(LabError::ModeMismatch(format!("{mode:?} model cannot evolve by {time:?}"))),
    }
}

fn pow_u64(mut base: Complex64, mut n: u64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        base *= base;
        n >>= 1;
    }
    acc
}

fn time_at(mode: Mode, s: f64) -> Time {
    match mode {
        Mode::ContinuousGenerator => Time::Continuous(s),
        Mode::DiscreteOperator => Time::Steps(s.round().max(0.0) as u64),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundedReport {
    pub schedule: Vec<f64>,
    pub norms: Vec<f64>,
    pub sup: f64,
    /// Decided from the spectrum alone (diagonal models).
    pub exact: bool,
    pub bounded: bool,
    pub growth_trend: bool,
}

fn spectral_norm(m: &DMatrix<Complex64>) -> f64 {
    m.clone().singular_values().iter().copied().fold(0.0, f64::max)
}

/// `sup ‖T(t)‖` over a schedule of times (or step counts).
pub fn bounded_check(op: &OperatorModel, schedule: &[f64]) -> Result<BoundedReport> {
    if schedule.is_empty() {
        return Err(LabError::EmptySchedule);
    }
    let norms: Vec<f64> = match &op.kind {
        ModelKind::Diagonal(values) => schedule
            .iter()
            .map(|&s| match op.mode {
                Mode::ContinuousGenerator => values.iter().map(|v| (v.re * s).exp()).fold(0.0, f64::max),
                Mode::DiscreteOperator => values.iter().map(|v| v.norm().powf(s.round())).fold(0.0, f64::max),
            })
            .collect(),
        ModelKind::Matrix(a) => schedule
            .par_iter()
            .map(|&s| {
                let m = match time_at(op.mode, s) {
                    Time::Continuous(t) => expm(&(a * Complex64::new(t, 0.0))),
                    Time::Steps(n) => matrix_power(a, n),
                };
                m.map(|m| spectral_norm(&m)).unwrap_or(f64::INFINITY)
            })
            .collect(),
    };
    let sup = norms.iter().copied().fold(0.0, f64::max);
    let (exact, bounded, growth_trend) = match &op.kind {
        ModelKind::Diagonal(values) => {
            let b = match op.mode {
                Mode::ContinuousGenerator => values.iter().all(|v| v.re <= 0.0),
                Mode::DiscreteOperator => values.iter().all(|v| v.norm() <= 1.0),
            };
            (true, b, !b)
        }
        ModelKind::Matrix(_) => {
            let half = norms.len().div_ceil(2);
            let early = norms[..half].iter().copied().fold(0.0, f64::max);
            let last = norms[norms.len() - 1];
            let growing = !last.is_finite() || (norms.len() >= 2 && last > 2.0 * early);
            (false, sup.is_finite() && !growing, growing)
        }
    };
    Ok(BoundedReport { schedule: schedule.to_vec(), norms, sup, exact, bounded, growth_trend })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Decaying,
    Flat,
    Growing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub schedule: Vec<f64>,
    pub norms: Vec<f64>,
    pub initial: f64,
    pub final_norm: f64,
    pub trend: Trend,
}

/// `‖T(t)x‖` along the schedule. Unless `override_bound` is set the model
/// must pass [`bounded_check`] on the same schedule.
pub fn stability_probe(op: &OperatorModel, x: &[Complex64], schedule: &[f64], override_bound: bool) -> Result<StabilityReport> {
    if schedule.is_empty() {
        return Err(LabError::EmptySchedule);
    }
    if !override_bound {
        let b = bounded_check(op, schedule)?;
        if !b.bounded {
            return Err(LabError::InvalidParameter("model is not bounded on the schedule; pass the override to probe anyway".into()));
        }
    }
    let norms = schedule
        .par_iter()
        .map(|&s| evolve(op, time_at(op.mode, s), x).map(|y| norm(&y)))
        .collect::<Result<Vec<f64>>>()?;
    let initial = norm(x);
    let final_norm = norms[norms.len() - 1];
    let trend = if initial == 0.0 || (final_norm - initial).abs() <= 1e-9 * initial {
        Trend::Flat
    } else if final_norm < initial {
        Trend::Decaying
    } else {
        Trend::Growing
    };
    Ok(StabilityReport { schedule: schedule.to_vec(), norms, initial, final_norm, trend })
}

/// Fourier type `p ∈ (1, 2]` of the ambient space, with `1/p + 1/q = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierType {
    pub p: f64,
    pub q: f64,
}

impl FourierType {
    pub fn new(p: f64) -> Result<Self> {
        if p == 1.0 {
            return Err(LabError::PNotMeaningful);
        }
        if !(p > 1.0 && p <= 2.0) {
            return Err(LabError::InvalidParameter(format!("Fourier type must lie in (1, 2], got {p}")));
        }
        Ok(FourierType { p, q: p / (p - 1.0) })
    }

    /// `(p − 1)/p`.
    pub fn weight_exponent(&self) -> f64 {
        (self.p - 1.0) / self.p
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionRow {
    /// `β` (continuous) or the angle of `ξ` (discrete).
    pub frequency: f64,
    /// `α` (continuous) or `r − 1` (discrete).
    pub approach: Vec<f64>,
    pub values: Vec<f64>,
    /// Log-log slope over the second half of the schedule; absent for a zero row.
    pub slope: Option<f64>,
    pub decayed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub fourier_type: FourierType,
    pub dimension: usize,
    pub rows: Vec<CriterionRow>,
    /// Every row decays.
    pub member: bool,
    /// Frequencies whose rows do not decay.
    pub blow_up: Vec<f64>,
}

fn spectral_point(mode: Mode, frequency: f64, approach: f64) -> Complex64 {
    match mode {
        Mode::ContinuousGenerator => Complex64::new(approach, frequency),
        Mode::DiscreteOperator => Complex64::from_polar(1.0 + approach, frequency),
    }
}

/// Rows `s^{(p−1)/p}·‖R(λ(s))x‖` with `λ = s + iβ` (continuous) or
/// `λ = (1 + s)e^{iξ}` (discrete) along a schedule `s ↓ 0`.
pub fn criterion_probe(op: &OperatorModel, x: &[Complex64], ft: FourierType, frequencies: &[f64], approach: &[f64]) -> Result<CriterionReport> {
    op.check_dim(x)?;
    if approach.len() < 2 || frequencies.is_empty() {
        return Err(LabError::EmptySchedule);
    }
    if !approach.windows(2).all(|w| w[1] < w[0]) || approach.iter().any(|s| *s <= 0.0) {
        return Err(LabError::InvalidParameter("approach schedule must decrease strictly to 0".into()));
    }
    let e = ft.weight_exponent();
    let rows = frequencies
        .par_iter()
        .map(|&freq| {
            let values = approach
                .iter()
                .map(|&s| resolvent_apply(op, spectral_point(op.mode, freq, s), x).map(|y| s.powf(e) * norm(&y)))
                .collect::<Result<Vec<f64>>>()?;
            let start = values.len() / 2;
            let slope = if values[start..].iter().all(|v| *v > 0.0) && values.len() - start >= 2 {
                let lx: Vec<f64> = approach[start..].iter().map(|s| s.ln()).collect();
                let ly: Vec<f64> = values[start..].iter().map(|v| v.ln()).collect();
                line_fit(&lx, &ly).map(|(s, _, _)| s)
            } else {
                None
            };
            let first = values[0];
            let last = values[values.len() - 1];
            let decayed = if values.iter().all(|v| *v == 0.0) { true } else { last <= first * 1e-2 && slope.is_some_and(|s| s > 0.1) };
            Ok(CriterionRow { frequency: freq, approach: approach.to_vec(), values, slope, decayed })
        })
        .collect::<Result<Vec<CriterionRow>>>()?;
    let blow_up: Vec<f64> = rows.iter().filter(|r| !r.decayed).map(|r| r.frequency).collect();
    Ok(CriterionReport { fourier_type: ft, dimension: op.dim(), member: blow_up.is_empty(), blow_up, rows })
}

/// The approach schedule `α_j = 10^{−4−j/2}`, `j = 0..=10`.
pub fn default_approach() -> Vec<f64> {
    (0..=10).map(|j| 10f64.powf(-4.0 - j as f64 / 2.0)).collect()
}

/// A preimage of `x` under `(iβ − A)^γ` (continuous) or `(e^{iξ} − T)^γ`
/// (discrete) on a diagonal model, with the principal branch.
pub fn fractional_resolve(op: &OperatorModel, frequency: f64, gamma: f64, x: &[Complex64]) -> Result<Vector> {
    op.check_dim(x)?;
    let values = match &op.kind {
        ModelKind::Diagonal(v) => v,
        ModelKind::Matrix(_) => return Err(LabError::InvalidParameter("fractional powers need a diagonal model".into())),
    };
    if !(gamma > 0.0) {
        return Err(LabError::InvalidParameter(format!("gamma must be positive, got {gamma}")));
    }
    let point = spectral_point(op.mode, frequency, 0.0);
    let hits: Vec<usize> = values
        .iter()
        .zip(x)
        .enumerate()
        .filter(|(_, (v, xk))| (point - **v).norm() <= HIT && xk.norm() != 0.0)
        .map(|(k, _)| k + 1)
        .collect();
    if !hits.is_empty() {
        return Err(LabError::SpectrumHit { indices: hits });
    }
    Ok(values
        .iter()
        .zip(x)
        .map(|(v, xk)| {
            if xk.norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let base = point - v;
            if gamma == 1.0 {
                xk / base
            } else {
                xk / base.powf(gamma)
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn nilpotent(mode: Mode) -> OperatorModel {
        OperatorModel::matrix(DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]), mode).unwrap()
    }

    fn damped(n: usize) -> OperatorModel {
        OperatorModel::from_rule(&LambdaRule::parse("-1/k + ik").unwrap(), n, Mode::ContinuousGenerator).unwrap()
    }

    fn unitary(n: usize) -> OperatorModel {
        OperatorModel::from_rule(&LambdaRule::parse("ik").unwrap(), n, Mode::ContinuousGenerator).unwrap()
    }

    #[test]
    fn resolvent_examples() {
        let op = OperatorModel::diagonal(vec![c(-1.0, 1.0)], Mode::ContinuousGenerator).unwrap();
        let y = resolvent_apply(&op, c(1.0, 0.0), &[c(1.0, 0.0)]).unwrap();
        assert!((y[0] - c(0.4, 0.2)).norm() < 1e-15);
        let y = resolvent_apply(&nilpotent(Mode::ContinuousGenerator), c(1.0, 0.0), &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((y[0] - c(1.0, 0.0)).norm() < 1e-15 && (y[1] - c(1.0, 0.0)).norm() < 1e-15);
        let hit = resolvent_apply(&op, c(-1.0, 1.0), &[c(1.0, 0.0)]);
        assert_eq!(hit, Err(LabError::SpectrumHit { indices: vec![1] }));
        assert!(matches!(resolvent_apply(&nilpotent(Mode::ContinuousGenerator), c(0.0, 0.0), &[c(1.0, 0.0), c(1.0, 0.0)]), Err(LabError::SingularSolve { .. })));
    }

    #[test]
    fn neumann_asymptotics() {
        let lam = c(0.6e6, 0.8e6);
        for op in [damped(20), nilpotent(Mode::ContinuousGenerator)] {
            let x: Vector = (0..op.dim()).map(|k| c(1.0 / (k + 1) as f64, 0.5)).collect();
            let y = resolvent_apply(&op, lam, &x).unwrap();
            let d: Vector = y.iter().zip(&x).map(|(a, b)| a * lam - b).collect();
            assert!(norm(&d) <= 1e-4 * norm(&x));
        }
    }

    #[test]
    fn evolution_examples() {
        let op = OperatorModel::diagonal(vec![c(-1.0, 1.0)], Mode::ContinuousGenerator).unwrap();
        let y = evolve(&op, Time::Continuous(1.0), &[c(1.0, 0.0)]).unwrap();
        assert!((y[0].norm() - 0.367_879_441_171_442_3).abs() < 1e-15);
        let x = vec![c(0.3, -0.2)];
        assert_eq!(evolve(&op, Time::Continuous(0.0), &x).unwrap(), x);
        let y = evolve(&nilpotent(Mode::ContinuousGenerator), Time::Continuous(1.0), &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((y[0] - c(1.0, 0.0)).norm() < 1e-15 && (y[1] - c(1.0, 0.0)).norm() < 1e-15);
        let disc = OperatorModel::diagonal(vec![c(0.0, 1.0)], Mode::DiscreteOperator).unwrap();
        assert_eq!(evolve(&disc, Time::Steps(0), &x).unwrap(), x);
        assert!((evolve(&disc, Time::Steps(2), &[c(1.0, 0.0)]).unwrap()[0] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(matches!(evolve(&disc, Time::Continuous(1.0), &x), Err(LabError::ModeMismatch(_))));
        let grow = OperatorModel::matrix(DMatrix::from_element(1, 1, c(2.0, 0.0)), Mode::ContinuousGenerator).unwrap();
        assert_eq!(evolve(&grow, Time::Continuous(1e4), &[c(1.0, 0.0)]), Err(LabError::Overflow));
    }

    #[test]
    fn boundedness() {
        let sched: Vec<f64> = (0..=10).map(|k| 2f64.powi(k)).collect();
        let b = bounded_check(&unitary(50), &sched).unwrap();
        assert!(b.bounded && b.exact && b.sup == 1.0);
        let b = bounded_check(&damped(50), &sched).unwrap();
        assert!(b.bounded && (b.sup - (-1.0f64 / 50.0).exp()).abs() < 1e-15);
        let b = bounded_check(&nilpotent(Mode::ContinuousGenerator), &sched).unwrap();
        assert!(b.growth_trend && !b.bounded);
        assert!(b.norms[10] > 1000.0);
    }

    #[test]
    fn stability_examples() {
        let sched: Vec<f64> = (0..=6).map(|k| 10f64.powf(k as f64 / 2.0)).collect();
        let x: Vector = (1..=200).map(|k| c(1.0 / k as f64, 0.0)).collect();
        let r = stability_probe(&damped(200), &x, &sched, false).unwrap();
        assert_eq!(r.trend, Trend::Decaying);
        assert!(r.norms.windows(2).all(|w| w[1] < w[0]));
        let r = stability_probe(&unitary(200), &basis(200, 1), &sched, false).unwrap();
        assert_eq!(r.trend, Trend::Flat);
        assert!(r.norms.iter().all(|n| (n - 1.0).abs() < 1e-12));
        let r = stability_probe(&damped(10), &[c(0.0, 0.0); 10], &sched, false).unwrap();
        assert!(r.norms.iter().all(|n| *n == 0.0));
        assert!(stability_probe(&nilpotent(Mode::ContinuousGenerator), &[c(0.0, 0.0), c(1.0, 0.0)], &sched, false).is_err());
    }

    #[test]
    fn criterion_examples() {
        let ft = FourierType::new(2.0).unwrap();
        let alpha = default_approach();
        let r = criterion_probe(&damped(200), &basis(200, 1), ft, &[1.0], &alpha).unwrap();
        assert!(r.member);
        assert!((r.rows[0].slope.unwrap() - 0.5).abs() < 0.05);
        for (a, v) in alpha.iter().zip(&r.rows[0].values) {
            assert!((v - a.sqrt() / (a + 1.0)).abs() < 1e-14);
        }
        let r = criterion_probe(&unitary(200), &basis(200, 1), ft, &[1.0], &alpha).unwrap();
        assert!(!r.member && r.blow_up == vec![1.0]);
        assert!((r.rows[0].slope.unwrap() + 0.5).abs() < 0.05);
        let r = criterion_probe(&unitary(20), &[c(0.0, 0.0); 20], ft, &[1.0, 2.0], &alpha).unwrap();
        assert!(r.member && r.rows.iter().all(|row| row.values.iter().all(|v| *v == 0.0)));
        assert_eq!(FourierType::new(1.0), Err(LabError::PNotMeaningful));
        assert!(FourierType::new(2.5).is_err());
    }

    #[test]
    fn discrete_criterion() {
        let op = OperatorModel::diagonal(vec![c(0.5, 0.0), c(0.0, 1.0)], Mode::DiscreteOperator).unwrap();
        let ft = FourierType::new(2.0).unwrap();
        let r = criterion_probe(&op, &basis(2, 1), ft, &[0.0, std::f64::consts::FRAC_PI_2], &default_approach()).unwrap();
        assert!(r.member);
        let r = criterion_probe(&op, &basis(2, 2), ft, &[std::f64::consts::FRAC_PI_2], &default_approach()).unwrap();
        assert!(!r.member);
    }

    #[test]
    fn fractional_examples() {
        let op = OperatorModel::diagonal(vec![c(-1.0, 0.0)], Mode::ContinuousGenerator).unwrap();
        assert_eq!(fractional_resolve(&op, 0.0, 0.5, &[c(1.0, 0.0)]).unwrap(), vec![c(1.0, 0.0)]);
        let op = OperatorModel::diagonal(vec![c(-1.0, 1.0), c(-0.5, 3.0)], Mode::ContinuousGenerator).unwrap();
        let x = vec![c(1.0, 0.5), c(-2.0, 1.0)];
        assert_eq!(fractional_resolve(&op, 1.0, 1.0, &x).unwrap(), resolvent_apply(&op, c(0.0, 1.0), &x).unwrap());
        let half = fractional_resolve(&op, 1.0, 0.5, &x).unwrap();
        let twice = fractional_resolve(&op, 1.0, 0.5, &half).unwrap();
        let once = fractional_resolve(&op, 1.0, 1.0, &x).unwrap();
        for (a, b) in twice.iter().zip(&once) {
            assert!((a - b).norm() <= 1e-12 * b.norm());
        }
        let u = unitary(3);
        assert_eq!(fractional_resolve(&u, 2.0, 0.5, &basis(3, 2)), Err(LabError::SpectrumHit { indices: vec![2] }));
        assert!(fractional_resolve(&u, 2.0, 0.5, &basis(3, 1)).is_ok());
    }

    fn random_matrix(seed: &[f64], n: usize, scale: f64) -> DMatrix<Complex64> {
        DMatrix::from_fn(n, n, |i, j| {
            let k = 2 * (i * n + j);
            c(seed[k % seed.len()] * scale, seed[(k + 1) % seed.len()] * scale)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn resolvent_identity(seed in proptest::collection::vec(-1.0f64..1.0, 32), lr in 2.0f64..5.0, li in -3.0f64..3.0, mr in 2.0f64..5.0, mi in -3.0f64..3.0) {
            let (lam, mu) = (c(lr, li), c(mr, mi));
            let models = [
                OperatorModel::matrix(random_matrix(&seed, 4, 0.5), Mode::ContinuousGenerator).unwrap(),
                OperatorModel::diagonal(seed[..4].iter().zip(&seed[4..8]).map(|(a, b)| c(-a.abs(), *b)).collect(), Mode::ContinuousGenerator).unwrap(),
            ];
            for op in &models {
                let x: Vector = seed[8..12].iter().map(|v| c(*v, 1.0)).collect();
                let rl = resolvent_apply(op, lam, &x).unwrap();
                let rm = resolvent_apply(op, mu, &x).unwrap();
                let rlrm = resolvent_apply(op, lam, &rm).unwrap();
                for k in 0..4 {
                    let lhs = rl[k] - rm[k];
                    let rhs = (mu - lam) * rlrm[k];
                    prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
                }
            }
        }

        #[test]
        fn semigroup_law(seed in proptest::collection::vec(-1.0f64..1.0, 32), t in 0.0f64..1.0, s in 0.0f64..1.0) {
            let a = random_matrix(&seed, 4, 1.0);
            let total = super::expm::norm1(&a) * (t + s);
            prop_assume!(total <= 50.0);
            let op = OperatorModel::matrix(a, Mode::ContinuousGenerator).unwrap();
            let x: Vector = seed[..4].iter().map(|v| c(*v, 0.25)).collect();
            let direct = evolve(&op, Time::Continuous(t + s), &x).unwrap();
            let composed = evolve(&op, Time::Continuous(t), &evolve(&op, Time::Continuous(s), &x).unwrap()).unwrap();
            let d: Vector = direct.iter().zip(&composed).map(|(a, b)| a - b).collect();
            prop_assert!(norm(&d) <= 1e-9 * (1.0 + norm(&direct)));
        }
    }
}
