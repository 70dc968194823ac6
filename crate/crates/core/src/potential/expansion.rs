use crate::error::{LabError, Result};
use crate::field::HarmonicField;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `u = a·log r + Σ_{n=-m}^{-1} rⁿ(aₙ cos nφ + bₙ sin nφ) + w₀` with `w₀`
/// bounded near the origin. Index `k` of `a_neg`/`b_neg` holds `n = −(k+1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionCoefficients {
    pub log_coefficient: f64,
    pub a_neg: Vec<f64>,
    pub b_neg: Vec<f64>,
    pub remainder_bound: f64,
}

/// Recovers the singular part of a harmonic function on a punctured disc from
/// its Fourier coefficients on the circles `rho1 < rho2`.
pub fn singularity_expansion(u: &HarmonicField, rho1: f64, rho2: f64, m: usize, samples: usize) -> Result<ExpansionCoefficients> {
    if !(rho1 > 0.0 && rho1 < rho2) || m < 1 {
        return Err(LabError::InvalidParameter(format!("need 0 < rho1 < rho2 and m >= 1 (rho1={rho1}, rho2={rho2}, m={m})")));
    }
    if rho1 / rho2 > 0.95 {
        return Err(LabError::IllConditioned { ratio: rho1 / rho2 });
    }
    if samples < 4 * m {
        return Err(LabError::Aliasing { samples, required: 4 * m });
    }
    let angles: Vec<f64> = (0..samples).map(|j| 2.0 * PI * j as f64 / samples as f64).collect();
    let sample = |rho: f64| -> Result<Vec<f64>> {
        angles
            .iter()
            .map(|&t| {
                let z = Complex64::from_polar(rho, t);
                let v = u.value(z);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(LabError::NonFinite { point: z })
                }
            })
            .collect()
    };
    let s1 = sample(rho1)?;
    let s2 = sample(rho2)?;
    let nf = samples as f64;
    // cosine/sine coefficients of frequency k at one radius
    let fourier = |s: &[f64], k: usize| -> (f64, f64) {
        let (mut c, mut d) = (0.0, 0.0);
        for (v, t) in s.iter().zip(&angles) {
            let a = k as f64 * t;
            c += v * a.cos();
            d += v * a.sin();
        }
        if k == 0 {
            (c / nf, 0.0)
        } else {
            (2.0 * c / nf, 2.0 * d / nf)
        }
    };
    let (l1, l2) = (rho1.ln(), rho2.ln());
    let (m1, _) = fourier(&s1, 0);
    let (m2, _) = fourier(&s2, 0);
    let log_coefficient = (m2 - m1) / (l2 - l1);

    let mut a_neg = Vec::with_capacity(m);
    let mut b_neg = Vec::with_capacity(m);
    for k in 1..=m {
        let kf = k as f64;
        let (c1, d1) = fourier(&s1, k);
        let (c2, d2) = fourier(&s2, k);
        // [ρ₁ᵏ ρ₁⁻ᵏ; ρ₂ᵏ ρ₂⁻ᵏ] · (pos, neg) = coefficient; Cramer's rule
        let (p1, q1) = (rho1.powf(kf), rho1.powf(-kf));
        let (p2, q2) = (rho2.powf(kf), rho2.powf(-kf));
        let det = p1 * q2 - p2 * q1;
        let solve = |y1: f64, y2: f64| ((y1 * q2 - y2 * q1) / det, (p1 * y2 - p2 * y1) / det);
        let (_, an) = solve(c1, c2);
        let (_, bn) = solve(d1, d2);
        a_neg.push(an);
        // r⁻ᵏ b₋ₖ sin(−kφ) contributes −b₋ₖ to the sin(kφ) coefficient
        b_neg.push(-bn);
    }
    let mut remainder_bound: f64 = 0.0;
    for (v, t) in s1.iter().zip(&angles) {
        let mut sing = log_coefficient * l1;
        for k in 1..=m {
            let kf = k as f64;
            sing += rho1.powf(-kf) * (a_neg[k - 1] * (kf * t).cos() - b_neg[k - 1] * (kf * t).sin());
        }
        remainder_bound = remainder_bound.max((v - sing).abs());
    }
    let fix = |x: f64| if x.abs() < 1e-300 { 0.0 } else { x };
    Ok(ExpansionCoefficients {
        log_coefficient: fix(log_coefficient),
        a_neg: a_neg.into_iter().map(fix).collect(),
        b_neg: b_neg.into_iter().map(fix).collect(),
        remainder_bound,
    })
}
