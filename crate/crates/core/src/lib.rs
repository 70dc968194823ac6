//! Numerical laboratory for boundary uniqueness of harmonic and subharmonic
//! functions and for resolvent criteria of operator semigroups.

pub mod audits;
pub mod boundary;
pub mod error;
pub mod exemplars;
pub mod field;
pub mod geometry;
pub mod potential;
pub mod quad;
pub mod semigroup;

pub use error::{LabError, Result};
pub use field::{FieldMetadata, HarmonicField, Regularity};
pub use geometry::{GridSpec, Region, SectorSpec};
pub use semigroup::{Mode, OperatorModel, TrajectoryModel};
pub use num_complex::Complex64;
