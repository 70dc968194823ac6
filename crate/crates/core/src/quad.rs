//! One-dimensional quadrature: adaptive Gauss–Kronrod (21-point) with
//! breakpoints, Gauss–Legendre node tables, composite fixed rules, the
//! real-line substitution and a golden-section maximizer.

use crate::error::{LabError, Result};
use num_complex::Complex64;
use std::collections::BinaryHeap;

/// Values that the adaptive integrator can accumulate.
pub trait QuadValue: Clone {
    fn zeroed(&self) -> Self;
    fn add_scaled(&mut self, other: &Self, w: f64);
    fn distance(&self, other: &Self) -> f64;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zeroed(&self) -> Self {
        0.0
    }
    fn add_scaled(&mut self, other: &Self, w: f64) {
        *self += w * other;
    }
    fn distance(&self, other: &Self) -> f64 {
        (self - other).abs()
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zeroed(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add_scaled(&mut self, other: &Self, w: f64) {
        *self += other * w;
    }
    fn distance(&self, other: &Self) -> f64 {
        (self - other).norm()
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl QuadValue for Vec<Complex64> {
    fn zeroed(&self) -> Self {
        vec![Complex64::new(0.0, 0.0); self.len()]
    }
    fn add_scaled(&mut self, other: &Self, w: f64) {
        for (a, b) in self.iter_mut().zip(other) {
            *a += b * w;
        }
    }
    fn distance(&self, other: &Self) -> f64 {
        self.iter()
            .zip(other)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
    fn magnitude(&self) -> f64 {
        self.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Tolerances and subdivision budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            rel_tol: 1e-12,
            max_intervals: 4000,
        }
    }
}

impl QuadConfig {
    pub fn with_abs_tol(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate<V> {
    pub value: V,
    pub error: f64,
    pub evaluations: usize,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

fn gk21<V: QuadValue, F: Fn(f64) -> V>(f: &F, a: f64, b: f64) -> (V, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc.zeroed();
    let mut gauss = fc.zeroed();
    kron.add_scaled(&fc, WGK[10]);
    for j in 0..10 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        kron.add_scaled(&f1, WGK[j]);
        kron.add_scaled(&f2, WGK[j]);
        if j % 2 == 1 {
            gauss.add_scaled(&f1, WG[j / 2]);
            gauss.add_scaled(&f2, WG[j / 2]);
        }
    }
    let mut k = kron.zeroed();
    k.add_scaled(&kron, h);
    let mut g = gauss.zeroed();
    g.add_scaled(&gauss, h);
    let err = k.distance(&g);
    (k, err)
}

struct Panel<V> {
    a: f64,
    b: f64,
    value: V,
    error: f64,
}

struct Keyed(f64, usize);

impl PartialEq for Keyed {
    fn eq(&self, o: &Self) -> bool {
        self.0.total_cmp(&o.0).is_eq() && self.1 == o.1
    }
}
impl Eq for Keyed {}
impl PartialOrd for Keyed {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Keyed {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&o.0).then(o.1.cmp(&self.1))
    }
}

/// Adaptive Gauss–Kronrod integration of `f` over `[a, b]`, split first at the
/// interior `breakpoints`. The final sum runs over panels ordered by their
/// left endpoint so results are bit-stable.
pub fn integrate<V: QuadValue, F: Fn(f64) -> V>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    cfg: &QuadConfig,
) -> Result<Estimate<V>> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(LabError::InvalidParameter("integration limits must be finite".into()));
    }
    if a == b {
        return Ok(Estimate { value: f(a).zeroed(), error: 0.0, evaluations: 1 });
    }
    let mut cuts = vec![a];
    let mut inner: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|x| x.is_finite() && *x > a.min(b) && *x < a.max(b))
        .collect();
    inner.sort_by(f64::total_cmp);
    if b < a {
        inner.reverse();
    }
    inner.dedup();
    cuts.extend(inner);
    cuts.push(b);

    let mut panels: Vec<Panel<V>> = Vec::new();
    let mut heap = BinaryHeap::new();
    for w in cuts.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        let (value, error) = gk21(&f, w[0], w[1]);
        heap.push(Keyed(error, panels.len()));
        panels.push(Panel { a: w[0], b: w[1], value, error });
    }
    let mut evaluations = 21 * panels.len();
    let total = |panels: &[Panel<V>]| {
        let mut order: Vec<usize> = (0..panels.len()).collect();
        order.sort_by(|&i, &j| panels[i].a.total_cmp(&panels[j].a));
        let mut sum = panels[0].value.zeroed();
        let mut err = 0.0;
        for i in order {
            sum.add_scaled(&panels[i].value, 1.0);
            err += panels[i].error;
        }
        (sum, err)
    };
    let mut err_sum: f64 = panels.iter().map(|p| p.error).sum();
    let mut mag: f64 = {
        let (s, _) = total(&panels);
        s.magnitude()
    };
    let mut retired = vec![false; panels.len()];
    let mut live = panels.len();
    while err_sum > cfg.abs_tol.max(cfg.rel_tol * mag) {
        if live >= cfg.max_intervals {
            break;
        }
        let Some(Keyed(_, idx)) = heap.pop() else { break };
        let (pa, pb) = (panels[idx].a, panels[idx].b);
        let mid = 0.5 * (pa + pb);
        if mid == pa || mid == pb {
            // panel at floating-point resolution; keep it
            continue;
        }
        retired[idx] = true;
        live += 1;
        err_sum -= panels[idx].error;
        for (lo, hi) in [(pa, mid), (mid, pb)] {
            let (value, error) = gk21(&f, lo, hi);
            err_sum += error;
            heap.push(Keyed(error, panels.len()));
            panels.push(Panel { a: lo, b: hi, value, error });
            retired.push(false);
        }
        evaluations += 42;
        if evaluations % (42 * 64) == 0 {
            let (s, e) = total(&live_panels(&panels, &retired));
            mag = s.magnitude();
            err_sum = e;
        }
    }
    let live = live_panels(&panels, &retired);
    let (value, error) = total(&live);
    let tol = cfg.abs_tol.max(cfg.rel_tol * value.magnitude());
    if !(error <= tol) {
        return Err(LabError::QuadratureNonConvergence {
            tol,
            error,
            budget: cfg.max_intervals,
        });
    }
    Ok(Estimate { value, error, evaluations })
}

fn live_panels<V: QuadValue>(panels: &[Panel<V>], retired: &[bool]) -> Vec<Panel<V>> {
    panels
        .iter()
        .zip(retired)
        .filter(|(_, r)| !**r)
        .map(|(p, _)| Panel { a: p.a, b: p.b, value: p.value.clone(), error: p.error })
        .collect()
}

/// Integrates over the whole real line through `x = t/(1−t²)`.
pub fn integrate_real_line<V: QuadValue, F: Fn(f64) -> V>(
    f: F,
    breakpoints: &[f64],
    cfg: &QuadConfig,
) -> Result<Estimate<V>> {
    let to_t = |x: f64| {
        if x == 0.0 {
            0.0
        } else {
            (-1.0 + (1.0 + 4.0 * x * x).sqrt()) / (2.0 * x)
        }
    };
    let bp: Vec<f64> = breakpoints.iter().map(|&x| to_t(x)).collect();
    integrate(
        |t: f64| {
            let d = 1.0 - t * t;
            let x = t / d;
            let jac = (1.0 + t * t) / (d * d);
            let v = f(x);
            let mut out = v.zeroed();
            out.add_scaled(&v, jac);
            out
        },
        -1.0,
        1.0,
        &bp,
        cfg,
    )
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            if n == 1 {
                p1 = z;
                p0 = 1.0;
            } else {
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        if n == 1 {
            dp = 1.0;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n == 1 {
        x[0] = 0.0;
        w[0] = 2.0;
    }
    (x, w)
}

/// Composite Gauss–Legendre rule: `panels` equal panels of `order` nodes each.
/// Returns (nodes, weights) on `[a, b]`.
pub fn composite_rule(a: f64, b: f64, panels: usize, order: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let c = a + (p as f64 + 0.5) * h;
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push(c + 0.5 * h * xi);
            weights.push(0.5 * h * wi);
        }
    }
    (nodes, weights)
}

/// Golden-section search for a maximum of `f` on `[a, b]`.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Ordinary least squares `y ≈ X·coef` for a small design matrix given by rows.
/// Returns the coefficients and R².
pub fn least_squares(rows: &[Vec<f64>], y: &[f64]) -> Option<(Vec<f64>, f64)> {
    let k = rows.first()?.len();
    let n = rows.len();
    if n < k {
        return None;
    }
    let x = nalgebra::DMatrix::from_fn(n, k, |i, j| rows[i][j]);
    let yv = nalgebra::DVector::from_column_slice(y);
    let svd = x.clone().svd(true, true);
    let coef = svd.solve(&yv, 1e-13).ok()?;
    let fitted = &x * &coef;
    let mean = y.iter().sum::<f64>() / n as f64;
    let ss_res: f64 = y.iter().zip(fitted.iter()).map(|(a, b)| (a - b).powi(2)).sum();
    let ss_tot: f64 = y.iter().map(|a| (a - mean).powi(2)).sum();
    let r2 = if ss_tot <= 1e-300 {
        if ss_res <= 1e-24 {
            1.0
        } else {
            0.0
        }
    } else {
        1.0 - ss_res / ss_tot
    };
    Some((coef.iter().copied().collect(), r2))
}

/// Slope and R² of the straight-line fit `y ≈ a + s·x`.
pub fn line_fit(x: &[f64], y: &[f64]) -> Option<(f64, f64, f64)> {
    let rows: Vec<Vec<f64>> = x.iter().map(|&t| vec![1.0, t]).collect();
    let (c, r2) = least_squares(&rows, y)?;
    Some((c[1], c[0], r2))
}
