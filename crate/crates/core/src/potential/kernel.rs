use crate::error::{LabError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelDomain {
    Disc,
    HalfPlane,
}

/// Disc kernel `½(1−r²)/(1−2r cos φ + r²)`; its φ-derivative is
/// `−Σ n rⁿ sin nφ`.
pub fn disc_kernel(r: f64, phi: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(LabError::Domain { point: Complex64::from_polar(r, phi), what: "0 <= r < 1".into() });
    }
    let s = (0.5 * phi).sin();
    let om = 1.0 - r;
    Ok(0.5 * om * (1.0 + r) / (om * om + 4.0 * r * s * s))
}

/// The unnormalized kernel `(1−r²)/(1−2r cos φ + r²)`, twice [`disc_kernel`].
pub fn disc_kernel_standard(r: f64, phi: f64) -> Result<f64> {
    disc_kernel(r, phi).map(|p| 2.0 * p)
}

/// Half-plane kernel `β/(π(α²+β²))`.
pub fn halfplane_kernel(alpha: f64, beta: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(LabError::Domain { point: Complex64::new(alpha, beta), what: "beta > 0".into() });
    }
    Ok(beta / (PI * (alpha * alpha + beta * beta)))
}

/// Dispatches on the domain; for the disc `z = r e^{iφ}`.
pub fn poisson_kernel(domain: KernelDomain, z: Complex64) -> Result<f64> {
    match domain {
        KernelDomain::Disc => disc_kernel(z.norm(), z.arg()),
        KernelDomain::HalfPlane => halfplane_kernel(z.re, z.im),
    }
}
