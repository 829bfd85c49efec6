//! Exact arithmetic: big rationals, Gaussian rationals, sparse Laurent
//! polynomials and truncated multivariate Taylor series in θ.
//!
//! Nothing in this module touches floating point.

mod exponent;
mod gaussian;
mod laurent;
mod rational;
mod theta;

pub(crate) use exponent::var_name;
pub(crate) use rational::fmt_rational;
pub use exponent::ExponentVector;
pub use gaussian::GaussianRational;
pub use laurent::LaurentPoly;
pub use rational::{factorial, rat, Rational};
pub use theta::ThetaSeries;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("series has nonzero constant term {0}")]
    NonzeroConstantTerm(String),
    #[error("series has zero constant term and cannot be inverted")]
    NotInvertible,
    #[error("truncation degree {have} is below the required {need}")]
    InsufficientTruncation { have: u32, need: u32 },
    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },
}
