//! Asymptotics of walk and excursion counts from the minimal critical points
//! of the rational generating function.

mod compare;
mod expansion;
mod points;
mod surd;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use compare::{compare_with_dp, ComparisonRow, DpComparison};
pub use expansion::{
    apply_operator_power, asymptotics, correction_terms, default_degree, excursion_asymptotics,
    inverse_hessian_diagonal, leading_constant, minimal_degree, point_contribution, prefactor,
    smooth_point_constant, walk_asymptotics, AsymptoticExpansion, ExpansionOptions, ExpansionTerm,
    PointContribution,
};
pub(crate) use points::MinimalPointJson;
pub use points::{hessian_det, minimal_points, phase_hessian, MinimalPoint};
pub use surd::{format_significant, SurdConstant};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsymptoticsError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    /// Axis is 1-based.
    #[error("degenerate point {w:?}: S1 vanishes for axis {axis}")]
    Degenerate { w: Vec<i32>, axis: usize },
    #[error("phase Hessian at {w:?} is not the expected diagonal matrix")]
    HessianMismatch { w: Vec<i32> },
    #[error("L_{k} at {w:?} has a nonzero imaginary part: {value}")]
    NonRealCoefficient { w: Vec<i32>, k: usize, value: String },
    #[error("theta-series truncation {have} is below the required {need}")]
    InsufficientTruncation { have: u32, need: u32 },
    #[error("excursion expansion has a nonzero term at l = {l}, above the n^(-3d/2) bound")]
    ExcursionBoundViolated { l: u32 },
    #[error("leading coefficient {computed} differs from {expected}")]
    LeadingConstantMismatch { computed: String, expected: String },
    #[error("at least one term must be requested")]
    ZeroTerms,
    #[error("window {start}..={end} is not covered by counts up to {available}")]
    WindowExceedsTable {
        start: usize,
        end: usize,
        available: usize,
    },
}
