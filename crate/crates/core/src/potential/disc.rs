use super::kernel::disc_kernel;
use super::BoundaryFunction;
use crate::error::{LabError, Result};
use crate::geometry::{quadrant_boundary_point, quadrant_to_disc};
use crate::quad::{integrate, QuadConfig};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Harmonic extension of `h(e^{it})` to the point `z` of the open disc.
pub fn poisson_integral_disc(h: &BoundaryFunction, z: Complex64) -> Result<f64> {
    poisson_integral_disc_with(h, z, &[], &QuadConfig::default())
}

/// As [`poisson_integral_disc`] with extra angular breakpoints and an explicit
/// quadrature configuration.
pub fn poisson_integral_disc_with(
    h: &BoundaryFunction,
    z: Complex64,
    extra_breaks: &[f64],
    cfg: &QuadConfig,
) -> Result<f64> {
    let r = z.norm();
    if !(r < 1.0) {
        return Err(LabError::Domain { point: z, what: "open unit disc".into() });
    }
    let phi0 = if r == 0.0 { 0.0 } else { z.arg() };
    let (lo, hi) = (phi0 - PI, phi0 + PI);
    let wrap = |t: f64| lo + (t - lo).rem_euclid(2.0 * PI);
    let mut breaks = vec![phi0];
    let delta = 1.0 - r;
    for k in [1.0, 8.0, 64.0] {
        if k * delta < PI {
            breaks.push(phi0 - k * delta);
            breaks.push(phi0 + k * delta);
        }
    }
    let mut singular_tails = Vec::new();
    for s in &h.singular {
        let c = wrap(s.at);
        breaks.push(c);
        // geometric panels shrinking toward the singular point
        for k in 1..=12 {
            let d = 0.5f64.powi(k);
            breaks.push(c - d);
            breaks.push(c + d);
        }
        singular_tails.push(c);
    }
    breaks.extend(extra_breaks.iter().map(|&t| wrap(t)));
    let est = integrate(|t| h.eval(t) * disc_kernel(r, t - phi0).unwrap_or(0.0), lo, hi, &breaks, cfg)?;
    Ok(est.value / PI)
}

/// Boundary data of the quadrant: one function on each edge, parameterized by
/// the distance from the corner.
#[derive(Debug, Clone)]
pub struct QuadrantBoundary {
    pub real_edge: BoundaryFunction,
    pub imag_edge: BoundaryFunction,
}

/// Harmonic extension into the quadrant, pulled back through the conformal
/// map onto the disc.
pub fn poisson_integral_quadrant(h: &QuadrantBoundary, z: Complex64) -> Result<f64> {
    if !(z.re > 0.0 && z.im > 0.0) {
        return Err(LabError::Domain { point: z, what: "open first quadrant".into() });
    }
    let w = quadrant_to_disc(z)?;
    let (re, im) = (h.real_edge.clone(), h.imag_edge.clone());
    let pulled = BoundaryFunction::new(move |t| {
        let q = quadrant_boundary_point(t);
        if q.re > 0.0 {
            re.eval(q.re)
        } else if q.im > 0.0 {
            im.eval(q.im)
        } else {
            0.0
        }
    });
    let mut breaks = vec![0.0, PI];
    for s in &h.real_edge.singular {
        breaks.push(2.0 * PI - 2.0 * (1.0 / (s.at * s.at)).atan());
    }
    for s in &h.imag_edge.singular {
        breaks.push(2.0 * (1.0 / (s.at * s.at)).atan());
    }
    // the corner and infinity are where pulled-back data typically blow up
    for k in 1..=10 {
        let d = 0.5f64.powi(k);
        breaks.extend([PI - d, PI + d, d, 2.0 * PI - d]);
    }
    poisson_integral_disc_with(&pulled, w, &breaks, &QuadConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::halfplane_kernel;
    use proptest::prelude::*;

    #[test]
    fn constant_and_cosine() {
        let one = BoundaryFunction::constant(1.0);
        assert!((poisson_integral_disc(&one, Complex64::new(0.3, 0.2)).unwrap() - 1.0).abs() < 1e-10);
        let cos = BoundaryFunction::new(f64::cos);
        for (r, p) in [(0.5, 0.3), (0.9, 2.0), (0.99, -1.0)] {
            let z = Complex64::from_polar(r, p);
            let v = poisson_integral_disc(&cos, z).unwrap();
            assert!((v - r * p.cos()).abs() < 1e-8, "{v} vs {}", r * p.cos());
        }
    }

    #[test]
    fn singular_data_grows_like_declared_exponent() {
        let h = BoundaryFunction::new(|t: f64| {
            let d = (Complex64::from_polar(1.0, t) - 1.0).norm();
            d.powf(-0.5)
        })
        .with_singularity(0.0, 0.5)
        .unwrap();
        let ds: Vec<f64> = (4..12).map(|k| 0.5f64.powi(k)).collect();
        let vals: Vec<f64> = ds.iter().map(|&d| poisson_integral_disc(&h, Complex64::new(1.0 - d, 0.0)).unwrap()).collect();
        let x: Vec<f64> = ds.iter().map(|d| -d.ln()).collect();
        let y: Vec<f64> = vals.iter().map(|v| v.ln()).collect();
        let (slope, _, _) = crate::quad::line_fit(&x, &y).unwrap();
        assert!(slope <= 0.5 + 0.02 && slope > 0.4, "slope {slope}");
    }

    #[test]
    fn quadrant_constant_and_zero() {
        let one = QuadrantBoundary { real_edge: BoundaryFunction::constant(1.0), imag_edge: BoundaryFunction::constant(1.0) };
        let zero = QuadrantBoundary { real_edge: BoundaryFunction::constant(0.0), imag_edge: BoundaryFunction::constant(0.0) };
        for z in [Complex64::new(0.3, 0.7), Complex64::new(2.0, 0.1)] {
            assert!((poisson_integral_quadrant(&one, z).unwrap() - 1.0).abs() < 1e-9);
            assert_eq!(poisson_integral_quadrant(&zero, z).unwrap(), 0.0);
        }
    }

    #[test]
    fn quadrant_extension_of_reciprocal_height_is_pi_times_kernel() {
        // v = 1/y on the imaginary edge, 0 on the real edge; Im(−1/z) has
        // these boundary values and grows slower than any competitor.
        let v = QuadrantBoundary {
            real_edge: BoundaryFunction::constant(0.0),
            imag_edge: BoundaryFunction::new(|y| 1.0 / y),
        };
        for z in [Complex64::new(0.5, 0.5), Complex64::new(1.3, 0.2), Complex64::new(0.1, 2.0)] {
            let got = poisson_integral_quadrant(&v, z).unwrap();
            let expect = PI * halfplane_kernel(z.re, z.im).unwrap();
            assert!((got - expect).abs() < 1e-6 * expect.max(1.0), "{got} vs {expect}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn maximum_principle_and_mean_value(r in 0.0f64..0.95, p in -3.0f64..3.0, a in -2.0f64..2.0, b in -2.0f64..2.0) {
            let h = BoundaryFunction::new(move |t: f64| a * (2.0 * t).sin() + b * t.cos() + (3.0 * t).cos().powi(2));
            let z = Complex64::from_polar(r, p);
            let v = poisson_integral_disc(&h, z).unwrap();
            let samples: Vec<f64> = (0..4096).map(|k| h.eval(2.0 * PI * k as f64 / 4096.0)).collect();
            let lo = samples.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(v >= lo - 1e-6 && v <= hi + 1e-6);
            let mean = samples.iter().sum::<f64>() / 4096.0;
            let at0 = poisson_integral_disc(&h, Complex64::new(0.0, 0.0)).unwrap();
            prop_assert!((at0 - mean).abs() < 1e-9);
        }
    }
}
