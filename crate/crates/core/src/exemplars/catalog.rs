use crate::error::{LabError, Result};
use crate::field::{HarmonicField, Regularity};
use crate::geometry::Region;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogName {
    /// `1/(z−2)`, analytic across the whole real segment of the square.
    RationalPole,
    /// `1` above the real axis and `0` below.
    BoundaryJump,
    /// `log(z + 1.5)`; the cut stays left of the square.
    PrincipalLog,
    /// `log(z + 0.5)`; the cut crosses `(−1, −0.5]`.
    PrincipalLogCutInside,
}

impl CatalogName {
    pub const ALL: [CatalogName; 4] = [
        CatalogName::RationalPole,
        CatalogName::BoundaryJump,
        CatalogName::PrincipalLog,
        CatalogName::PrincipalLogCutInside,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogName::RationalPole => "rational_pole",
            CatalogName::BoundaryJump => "boundary_jump",
            CatalogName::PrincipalLog => "principal_log",
            CatalogName::PrincipalLogCutInside => "principal_log_cut_inside",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| LabError::InvalidParameter(format!("unknown catalog entry '{s}'")))
    }

    /// Closed form of the analytic continuation across the real segment, if any.
    pub fn continuation(&self, x: f64) -> Option<Complex64> {
        match self {
            CatalogName::RationalPole => Some(Complex64::new(1.0 / (x - 2.0), 0.0)),
            CatalogName::PrincipalLog => Some(Complex64::new((x + 1.5).ln(), 0.0)),
            _ => None,
        }
    }
}

pub fn catalog_eval(name: CatalogName, z: Complex64) -> Result<Complex64> {
    match name {
        CatalogName::RationalPole => {
            if z == Complex64::new(2.0, 0.0) {
                return Err(LabError::Domain { point: z, what: "pole at 2".into() });
            }
            Ok(1.0 / (z - 2.0))
        }
        CatalogName::BoundaryJump => {
            if z.im > 0.0 {
                Ok(Complex64::new(1.0, 0.0))
            } else if z.im < 0.0 {
                Ok(Complex64::new(0.0, 0.0))
            } else {
                Err(LabError::OnCut { point: z })
            }
        }
        CatalogName::PrincipalLog => log_shifted(z, 1.5),
        CatalogName::PrincipalLogCutInside => log_shifted(z, 0.5),
    }
}

fn log_shifted(z: Complex64, shift: f64) -> Result<Complex64> {
    let w = z + shift;
    if w.im == 0.0 && w.re <= 0.0 {
        return Err(LabError::OnCut { point: z });
    }
    Ok(w.ln())
}

/// Complex field on the square `(−1,1)×(−1,1)` minus the reals; evaluation
/// on a cut yields NaN.
pub fn catalog_field(name: CatalogName) -> HarmonicField {
    let region = Region::Rectangle { x_lo: -1.0, x_hi: 1.0, y_lo: -1.0, y_hi: 1.0 };
    HarmonicField::complex(format!("catalog:{}", name.as_str()), region, Regularity::AnalyticOffReals, move |z| {
        catalog_eval(name, z).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let c = |a, b| Complex64::new(a, b);
        assert_eq!(catalog_eval(CatalogName::RationalPole, c(0.0, 0.0)).unwrap(), c(-0.5, 0.0));
        assert_eq!(catalog_eval(CatalogName::BoundaryJump, c(0.0, 0.1)).unwrap(), c(1.0, 0.0));
        assert_eq!(catalog_eval(CatalogName::BoundaryJump, c(0.0, -0.1)).unwrap(), c(0.0, 0.0));
        assert!(catalog_eval(CatalogName::BoundaryJump, c(0.3, 0.0)).is_err());
        assert!(catalog_eval(CatalogName::PrincipalLogCutInside, c(-0.7, 0.0)).is_err());
        assert!(catalog_eval(CatalogName::PrincipalLog, c(-0.7, 0.0)).is_ok());
    }

    #[test]
    fn rational_pole_jump_vanishes() {
        for k in 1..8 {
            let beta = 10f64.powi(-k);
            let mut worst: f64 = 0.0;
            for j in 0..=40 {
                let a = -1.0 + j as f64 * 0.05;
                let z = Complex64::new(a, beta);
                let jump = catalog_eval(CatalogName::RationalPole, z).unwrap() - catalog_eval(CatalogName::RationalPole, z.conj()).unwrap();
                let closed = Complex64::new(0.0, 2.0 * (1.0 / (z - 2.0)).im);
                assert!((jump - closed).norm() < 1e-14);
                worst = worst.max(jump.norm());
            }
            assert!(worst <= 2.0 * beta);
        }
    }
}
