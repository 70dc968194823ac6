//! The evaluatable field type consumed by every analyzer.

use crate::geometry::Region;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

pub type Evaluator = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;
pub type LogEvaluator = Arc<dyn Fn(Complex64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldMetadata {
    ClosedForm,
    Series { truncation: usize, tail_bound: f64 },
    Composite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regularity {
    Harmonic,
    SubharmonicNonneg,
    AnalyticOffReals,
}

impl fmt::Display for Regularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regularity::Harmonic => "harmonic",
            Regularity::SubharmonicNonneg => "subharmonic_nonneg",
            Regularity::AnalyticOffReals => "analytic_off_reals",
        };
        f.write_str(s)
    }
}

/// A real or complex field on a region. Real fields store their value in the
/// real part. `log_abs` is an optional overflow-free evaluator of `log|u|`.
#[derive(Clone)]
pub struct HarmonicField {
    pub name: String,
    pub region: Region,
    pub metadata: FieldMetadata,
    pub regularity: Regularity,
    /// Declared magnitude scale, used by conclusion tolerances.
    pub scale: f64,
    eval: Evaluator,
    log_abs: Option<LogEvaluator>,
}

impl fmt::Debug for HarmonicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HarmonicField")
            .field("name", &self.name)
            .field("region", &self.region)
            .field("metadata", &self.metadata)
            .field("regularity", &self.regularity)
            .finish()
    }
}

impl HarmonicField {
    pub fn real<F>(name: impl Into<String>, region: Region, regularity: Regularity, f: F) -> Self
    where
        F: Fn(Complex64) -> f64 + Send + Sync + 'static,
    {
        Self::complex(name, region, regularity, move |z| Complex64::new(f(z), 0.0))
    }

    pub fn complex<F>(name: impl Into<String>, region: Region, regularity: Regularity, f: F) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            region,
            metadata: FieldMetadata::ClosedForm,
            regularity,
            scale: 1.0,
            eval: Arc::new(f),
            log_abs: None,
        }
    }

    pub fn zero(region: Region) -> Self {
        Self::real("zero", region, Regularity::Harmonic, |_| 0.0)
    }

    pub fn constant(region: Region, c: f64) -> Self {
        Self::real(format!("const({c})"), region, Regularity::Harmonic, move |_| c)
    }

    pub fn with_metadata(mut self, m: FieldMetadata) -> Self {
        self.metadata = m;
        self
    }

    pub fn with_scale(mut self, s: f64) -> Self {
        self.scale = s;
        self
    }

    pub fn with_log_abs<F>(mut self, f: F) -> Self
    where
        F: Fn(Complex64) -> f64 + Send + Sync + 'static,
    {
        self.log_abs = Some(Arc::new(f));
        self
    }

    pub fn value(&self, z: Complex64) -> f64 {
        (self.eval)(z).re
    }

    pub fn complex_value(&self, z: Complex64) -> Complex64 {
        (self.eval)(z)
    }

    pub fn modulus(&self, z: Complex64) -> f64 {
        (self.eval)(z).norm()
    }

    pub fn log_modulus(&self, z: Complex64) -> f64 {
        match &self.log_abs {
            Some(l) => l(z),
            None => self.modulus(z).ln(),
        }
    }

    pub fn has_log_evaluator(&self) -> bool {
        self.log_abs.is_some()
    }

    /// `c·u`, with the declared scale multiplied accordingly.
    pub fn scaled(&self, c: f64) -> Self {
        let e = self.eval.clone();
        let mut out = Self::complex(format!("{c}*{}", self.name), self.region, self.regularity, move |z| e(z) * c);
        out.metadata = self.metadata.clone();
        out.scale = self.scale * c.abs();
        if let Some(l) = self.log_abs.clone() {
            let lc = c.abs().ln();
            out.log_abs = Some(Arc::new(move |z| l(z) + lc));
        }
        out
    }

    /// `|u|`, which is subharmonic and nonnegative whenever `u` is harmonic.
    pub fn abs(&self) -> Self {
        let e = self.eval.clone();
        let mut out = Self::real(format!("|{}|", self.name), self.region, Regularity::SubharmonicNonneg, move |z| {
            e(z).norm()
        });
        out.metadata = FieldMetadata::Composite;
        out.scale = self.scale;
        out.log_abs = self.log_abs.clone();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling_and_modulus() {
        let u = HarmonicField::real("re", Region::UnitDisc, Regularity::Harmonic, |z| z.re);
        let z = Complex64::new(-0.4, 0.1);
        assert_eq!(u.value(z), -0.4);
        assert_eq!(u.abs().value(z), 0.4);
        assert!((u.scaled(10.0).value(z) + 4.0).abs() < 1e-15);
        assert_eq!(u.scaled(10.0).scale, 10.0);
        assert!((u.log_modulus(z) - 0.4f64.ln()).abs() < 1e-15);
    }
}
