//! Poisson kernels and integrals, rectangle Dirichlet solutions, the Cauchy
//! area transform and the isolated-singularity expansion.

mod cauchy;
mod disc;
mod expansion;
mod kernel;
mod rectangle;

pub use cauchy::{cauchy_area_transform, AreaQuad, CauchyTable, StarDomain};
pub use disc::{poisson_integral_disc, poisson_integral_disc_with, poisson_integral_quadrant, QuadrantBoundary};
pub use expansion::{singularity_expansion, ExpansionCoefficients};
pub use kernel::{disc_kernel, disc_kernel_standard, halfplane_kernel, poisson_kernel, KernelDomain};
pub use rectangle::{dirichlet_rectangle, RectangleData, RectangleDirichlet, Side};

use std::fmt;
use std::sync::Arc;

/// A boundary singularity at parameter `at` with blow-up `|ξ − c|^{−exponent}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularPoint {
    pub at: f64,
    pub exponent: f64,
}

/// Real boundary data in a one-parameter description of the boundary
/// (angle on the circle, tangential coordinate on a rectangle side, distance
/// from the corner on a quadrant edge).
#[derive(Clone)]
pub struct BoundaryFunction {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub singular: Vec<SingularPoint>,
}

impl fmt::Debug for BoundaryFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryFunction").field("singular", &self.singular).finish()
    }
}

impl BoundaryFunction {
    pub fn new<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        Self { f: Arc::new(f), singular: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(move |_| c)
    }

    /// Declares a singular point; the exponent must be nonnegative.
    pub fn with_singularity(mut self, at: f64, exponent: f64) -> crate::Result<Self> {
        if !(exponent >= 0.0 && exponent < 1.0) {
            return Err(crate::LabError::InvalidParameter(format!(
                "singular exponent {exponent} outside [0, 1)"
            )));
        }
        self.singular.push(SingularPoint { at, exponent });
        Ok(self)
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }
}
