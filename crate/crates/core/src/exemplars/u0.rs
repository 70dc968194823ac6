use crate::error::{LabError, Result};
use crate::field::{HarmonicField, Regularity};
use crate::geometry::Region;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum U0Mode {
    Closed,
    Series,
}

/// `u0(r e^{iφ}) = −Σ n rⁿ sin nφ = −r(1−r²) sin φ/(1−2r cos φ + r²)²`.
///
/// Radial limits vanish everywhere while `M_r(u0) ≍ (1−r)^{−2}`.
pub fn u0_eval(r: f64, phi: f64, mode: U0Mode, terms: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(LabError::Domain { point: Complex64::from_polar(r, phi), what: "0 <= r < 1".into() });
    }
    match mode {
        U0Mode::Closed => Ok(closed(r, phi)),
        U0Mode::Series => {
            if terms < 16 {
                return Err(LabError::InvalidParameter(format!("series needs N >= 16, got {terms}")));
            }
            let mut s = 0.0;
            let mut rn = 1.0;
            for n in 1..=terms {
                rn *= r;
                s += n as f64 * rn * (n as f64 * phi).sin();
            }
            Ok(-s)
        }
    }
}

fn closed(r: f64, phi: f64) -> f64 {
    let om = 1.0 - r;
    let s = (0.5 * phi).sin();
    let d = om * om + 4.0 * r * s * s;
    -r * om * (1.0 + r) * phi.sin() / (d * d)
}

pub fn u0_field() -> HarmonicField {
    HarmonicField::real("u0", Region::UnitDisc, Regularity::Harmonic, |z: Complex64| {
        let r = z.norm();
        if r >= 1.0 {
            f64::NAN
        } else {
            closed(r, z.arg())
        }
    })
}
