use crate::error::{LabError, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

type CMat = DMatrix<Complex64>;

const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371_920_351_148_152;

/// Maximum absolute column sum.
pub fn norm1(a: &CMat) -> f64 {
    (0..a.ncols()).map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

fn scaled(m: &CMat, c: f64) -> CMat {
    m.map(|z| z * c)
}

/// Matrix exponential by scaling and squaring with the order-13 diagonal
/// Padé approximant.
pub fn expm(a: &CMat) -> Result<CMat> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(LabError::Dimension { expected: n, got: a.ncols() });
    }
    if a.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(LabError::Overflow);
    }
    let id = CMat::identity(n, n);
    let nrm = norm1(a);
    if nrm == 0.0 {
        return Ok(id);
    }
    let s = if nrm > THETA13 { (nrm / THETA13).log2().ceil() as i32 } else { 0 };
    let a = scaled(a, 0.5f64.powi(s));
    let b = PADE13;
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let inner_u = &a6 * (scaled(&a6, b[13]) + scaled(&a4, b[11]) + scaled(&a2, b[9]));
    let u = &a * (inner_u + scaled(&a6, b[7]) + scaled(&a4, b[5]) + scaled(&a2, b[3]) + scaled(&id, b[1]));
    let inner_v = &a6 * (scaled(&a6, b[12]) + scaled(&a4, b[10]) + scaled(&a2, b[8]));
    let v = inner_v + scaled(&a6, b[6]) + scaled(&a4, b[4]) + scaled(&a2, b[2]) + scaled(&id, b[0]);
    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.lu().solve(&p).ok_or(LabError::SingularSolve { residual: f64::NAN })?;
    for _ in 0..s {
        r = &r * &r;
    }
    if r.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(LabError::Overflow);
    }
    Ok(r)
}

/// `aⁿ` by repeated squaring.
pub fn matrix_power(a: &CMat, mut n: u64) -> Result<CMat> {
    let dim = a.nrows();
    let mut result = CMat::identity(dim, dim);
    let mut base = a.clone();
    while n > 0 {
        if n & 1 == 1 {
            result = &result * &base;
        }
        n >>= 1;
        if n > 0 {
            base = &base * &base;
        }
    }
    if result.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(LabError::Overflow);
    }
    Ok(result)
}
