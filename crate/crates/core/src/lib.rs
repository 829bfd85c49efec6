//! Exact enumeration and asymptotics for lattice walks in an orthant with
//! highly symmetric step sets.
//!
//! ```
//! use orthant_walks::{asymptotics, models};
//!
//! let c = asymptotics::leading_constant(&models::six_step());
//! assert_eq!(c.to_string(), "√6/π");
//! ```

// Discrepancy carries exact witnesses; boxing them buys nothing here.
#![allow(clippy::result_large_err)]

pub mod algebra;
pub mod asymptotics;
pub mod diagonal;
pub mod enumerate;
pub mod exec;
pub mod holonomic;
pub mod report;
pub mod stepset;

use thiserror::Error;

pub use asymptotics::{AsymptoticExpansion, AsymptoticsError, SurdConstant};
pub use diagonal::{Discrepancy, RationalFunctionSpec, SeriesKind};
pub use enumerate::{
    count_totals, count_walks, CountSummary, CountTable, DpOptions, EnumerateError,
};
pub use exec::Execution;
pub use holonomic::{HolonomicError, OdeSpec, RecurrenceSpec};
pub use stepset::{models, StepSet, StepSetError};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    StepSet(#[from] StepSetError),
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Asymptotics(#[from] AsymptoticsError),
    #[error(transparent)]
    Holonomic(#[from] HolonomicError),
    #[error("identity check failed: {0}")]
    Discrepancy(#[from] Discrepancy),
}
