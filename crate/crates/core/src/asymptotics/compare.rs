//! Numerical comparison of an expansion against exact counts.

use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use super::{AsymptoticExpansion, AsymptoticsError};
use crate::algebra::Rational;

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub n: usize,
    /// `c_n / |S|^n`.
    pub observed: f64,
    /// Prediction divided by `|S|^n`.
    pub predicted: f64,
    /// `(c_n − prediction) / (|S|^n·n^{−e})`, `e` the next omitted order.
    pub scaled_residual: f64,
}

impl ComparisonRow {
    /// `|c_n − prediction| / |S|^n`.
    pub fn abs_residual(&self) -> f64 {
        (self.observed - self.predicted).abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DpComparison {
    pub rows: Vec<ComparisonRow>,
    pub max_abs_scaled_residual: f64,
}

/// Scaled residuals of `expansion` against `counts[n]` for `n` in `window`
/// (`n = 0` is skipped).
pub fn compare_with_dp(
    expansion: &AsymptoticExpansion,
    counts: &[BigUint],
    window: RangeInclusive<usize>,
) -> Result<DpComparison, AsymptoticsError> {
    let (start, end) = (*window.start(), *window.end());
    if end >= counts.len() {
        return Err(AsymptoticsError::WindowExceedsTable {
            start,
            end,
            available: counts.len().saturating_sub(1),
        });
    }
    let base = BigInt::from(expansion.base);
    let e = expansion.next_order_exponent();
    let mut rows = Vec::new();
    let mut max = 0f64;
    let first = start.max(1);
    for (n, count) in counts.iter().enumerate().take(end + 1).skip(first) {
        let ratio = Rational::new(BigInt::from(count.clone()), base.pow(n as u32));
        let observed = ratio.to_f64().unwrap_or(f64::NAN);
        let predicted = expansion.evaluate_scaled(n);
        let scaled_residual = (observed - predicted) * (n as f64).powf(e);
        max = max.max(scaled_residual.abs());
        rows.push(ComparisonRow {
            n,
            observed,
            predicted,
            scaled_residual,
        });
    }
    Ok(DpComparison {
        rows,
        max_abs_scaled_residual: max,
    })
}
