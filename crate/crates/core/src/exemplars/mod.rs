//! Explicit test functions: the derivative-of-kernel counterexample, the
//! sharpness construction with an exponential-power boundary blow-up, and a
//! catalog of analytic functions for continuation audits.

mod catalog;
mod u0;
mod wolf;

pub use catalog::{catalog_eval, catalog_field, CatalogName};
pub use u0::{u0_eval, u0_field, U0Mode};
pub use wolf::{wolf_assemble, wolf_choose_k, KChoice, WolfDiagnostics, WolfField, WolfParams};

use crate::error::{LabError, Result};
use crate::field::{HarmonicField, Regularity};
use crate::geometry::Region;

/// Names accepted by [`named_field`].
pub const FIELD_NAMES: &[&str] = &[
    "u0",
    "zero",
    "one",
    "abs_re_inv",
    "re_inv",
    "re_inv_sqrt",
    "log_abs",
    "power:<m>",
    "catalog:rational_pole",
    "catalog:boundary_jump",
    "catalog:principal_log",
    "catalog:principal_log_cut_inside",
];

/// Resolves a named field. `wolf` needs parameters and is built separately.
pub fn named_field(name: &str) -> Result<HarmonicField> {
    if let Some(rest) = name.strip_prefix("catalog:") {
        let c = CatalogName::parse(rest)?;
        return Ok(catalog_field(c));
    }
    if let Some(m) = name.strip_prefix("power:") {
        let m: f64 = m
            .parse()
            .map_err(|_| LabError::InvalidParameter(format!("bad exponent in {name}")))?;
        return Ok(power_field(m));
    }
    let f = match name {
        "u0" => u0_field(),
        "zero" => HarmonicField::zero(Region::UnitDisc),
        "one" => HarmonicField::constant(Region::UnitDisc, 1.0),
        "abs_re_inv" => HarmonicField::real("abs_re_inv", Region::PuncturedDisc { rho: 2.0 }, Regularity::SubharmonicNonneg, |z| {
            (1.0 / z).re.abs()
        }),
        "re_inv" => HarmonicField::real("re_inv", Region::PuncturedDisc { rho: 2.0 }, Regularity::Harmonic, |z| (1.0 / z).re),
        "re_inv_sqrt" => HarmonicField::real("re_inv_sqrt", Region::Quadrant, Regularity::Harmonic, |z| (1.0 / z.sqrt()).re),
        "log_abs" => HarmonicField::real("log_abs", Region::PuncturedDisc { rho: 2.0 }, Regularity::Harmonic, |z| z.norm().ln()),
        other => return Err(LabError::InvalidParameter(format!("unknown field '{other}'"))),
    };
    Ok(f)
}

/// The radial profile `(1−|z|)^{−m}` on the disc, with `M_r = (1−r)^{−m}`.
pub fn power_field(m: f64) -> HarmonicField {
    HarmonicField::real(format!("power:{m}"), Region::UnitDisc, Regularity::SubharmonicNonneg, move |z| {
        (1.0 - z.norm()).powf(-m)
    })
}
