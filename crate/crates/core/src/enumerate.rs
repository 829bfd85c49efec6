//! Dynamic-programming enumeration of walks confined to the orthant `ℕ^d`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{ExponentVector, LaurentPoly, Rational};
use crate::exec::Execution;
use crate::stepset::StepSet;

/// Environment variable overriding [`DEFAULT_CELL_BUDGET`].
pub const CELL_BUDGET_ENV: &str = "WALKS_DP_CELL_BUDGET";
pub const DEFAULT_CELL_BUDGET: u64 = 1 << 28;

const MAX_DIM: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("refusing to enumerate: {cells} cells per layer ((N+1)^d with N = {max_len}, d = {dim}) exceeds the budget of {budget}")]
    ResourceLimit {
        cells: u128,
        budget: u64,
        max_len: usize,
        dim: usize,
    },
    #[error("length {n} is beyond the table (max {max_len})")]
    OutOfRange { n: usize, max_len: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpOptions {
    pub execution: Execution,
    pub cell_budget: u64,
}

impl Default for DpOptions {
    /// Parallel execution; budget from [`CELL_BUDGET_ENV`] when set and valid.
    fn default() -> Self {
        DpOptions {
            execution: Execution::default(),
            cell_budget: cell_budget_from_env(),
        }
    }
}

impl DpOptions {
    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }
}

pub fn cell_budget_from_env() -> u64 {
    std::env::var(CELL_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CELL_BUDGET)
}

/// `(N+1)^d`, saturating.
pub fn cell_estimate(dim: usize, max_len: usize) -> u128 {
    let side = max_len as u128 + 1;
    let mut cells: u128 = 1;
    for _ in 0..dim {
        cells = cells.saturating_mul(side);
    }
    cells
}

fn guard(steps: &StepSet, max_len: usize, budget: u64) -> Result<(), EnumerateError> {
    let cells = cell_estimate(steps.dim(), max_len);
    if cells > budget as u128 || steps.dim() > MAX_DIM {
        return Err(EnumerateError::ResourceLimit {
            cells,
            budget,
            max_len,
            dim: steps.dim(),
        });
    }
    Ok(())
}

/// Walks of length `n` ending at each point of `[0,n]^d`, stored densely in
/// row-major order with side `n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Layer {
    side: usize,
    cells: Vec<BigUint>,
}

impl Layer {
    fn origin(dim: usize) -> Self {
        let _ = dim;
        Layer {
            side: 1,
            cells: vec![BigUint::one()],
        }
    }

    fn total(&self) -> BigUint {
        self.cells.iter().sum()
    }

    fn next(&self, steps: &StepSet, execution: Execution) -> Layer {
        let dim = steps.dim();
        let old_side = self.side;
        let side = old_side + 1;
        let len = side.pow(dim as u32);
        let cells = execution.map_range(len, |flat| {
            let mut coords = [0usize; MAX_DIM];
            let mut rest = flat;
            for k in (0..dim).rev() {
                coords[k] = rest % side;
                rest /= side;
            }
            let mut acc = BigUint::zero();
            'steps: for s in steps.steps() {
                let mut idx = 0usize;
                for k in 0..dim {
                    let q = coords[k] as i64 - s[k] as i64;
                    if q < 0 || q >= old_side as i64 {
                        continue 'steps;
                    }
                    idx = idx * old_side + q as usize;
                }
                acc += &self.cells[idx];
            }
            acc
        });
        Layer { side, cells }
    }

    fn flat_index(&self, point: &[usize]) -> Option<usize> {
        let mut idx = 0;
        for &c in point {
            if c >= self.side {
                return None;
            }
            idx = idx * self.side + c;
        }
        Some(idx)
    }
}

/// Endpoint-resolved counts `s_i(n)` for `n ≤ N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    steps: StepSet,
    layers: Vec<Layer>,
    totals: Vec<BigUint>,
}

/// Totals and excursion counts only; memory stays at two layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSummary {
    pub totals: Vec<BigUint>,
    pub excursions: Vec<BigUint>,
}

/// Builds every layer up to `max_len`.
pub fn count_walks(
    steps: &StepSet,
    max_len: usize,
    options: DpOptions,
) -> Result<CountTable, EnumerateError> {
    guard(steps, max_len, options.cell_budget)?;
    let mut layers = vec![Layer::origin(steps.dim())];
    for _ in 0..max_len {
        let next = layers.last().unwrap().next(steps, options.execution);
        layers.push(next);
    }
    let totals = layers.iter().map(Layer::total).collect();
    Ok(CountTable {
        steps: steps.clone(),
        layers,
        totals,
    })
}

/// `s_n` and `e_n` for `n ≤ max_len` without keeping old layers.
pub fn count_totals(
    steps: &StepSet,
    max_len: usize,
    options: DpOptions,
) -> Result<CountSummary, EnumerateError> {
    guard(steps, max_len, options.cell_budget)?;
    let mut layer = Layer::origin(steps.dim());
    let mut totals = vec![layer.total()];
    let mut excursions = vec![layer.cells[0].clone()];
    for _ in 0..max_len {
        layer = layer.next(steps, options.execution);
        totals.push(layer.total());
        excursions.push(layer.cells[0].clone());
    }
    Ok(CountSummary { totals, excursions })
}

impl CountTable {
    pub fn steps(&self) -> &StepSet {
        &self.steps
    }

    pub fn max_len(&self) -> usize {
        self.layers.len() - 1
    }

    /// `s_n = Σ_i s_i(n)`.
    pub fn totals(&self) -> &[BigUint] {
        &self.totals
    }

    /// `e_n = s_0(n)`.
    pub fn excursions(&self) -> Vec<BigUint> {
        self.layers.iter().map(|l| l.cells[0].clone()).collect()
    }

    /// `s_i(n)`; zero outside `[0,n]^d`.
    pub fn count(&self, n: usize, point: &[usize]) -> Result<BigUint, EnumerateError> {
        let layer = self.layers.get(n).ok_or(EnumerateError::OutOfRange {
            n,
            max_len: self.max_len(),
        })?;
        assert_eq!(point.len(), self.steps.dim(), "point dimension");
        Ok(layer
            .flat_index(point)
            .map(|i| layer.cells[i].clone())
            .unwrap_or_default())
    }

    /// Nonzero cells of layer `n` as `(endpoint, count)` in row-major order.
    pub fn endpoints(&self, n: usize) -> Result<Vec<(Vec<usize>, BigUint)>, EnumerateError> {
        let layer = self.layers.get(n).ok_or(EnumerateError::OutOfRange {
            n,
            max_len: self.max_len(),
        })?;
        let dim = self.steps.dim();
        let mut out = Vec::new();
        for (flat, c) in layer.cells.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut point = vec![0; dim];
            let mut rest = flat;
            for k in (0..dim).rev() {
                point[k] = rest % layer.side;
                rest /= layer.side;
            }
            out.push((point, c.clone()));
        }
        Ok(out)
    }

    /// `Σ_i s_i(n)·z^i`.
    pub fn endpoint_series(&self, n: usize) -> Result<LaurentPoly, EnumerateError> {
        let terms = self.endpoints(n)?.into_iter().map(|(p, c)| {
            (
                ExponentVector::new(p.into_iter().map(|e| e as i32).collect()),
                Rational::from_integer(BigInt::from(c)),
            )
        });
        Ok(LaurentPoly::from_terms(self.steps.dim(), terms).expect("endpoint dimension"))
    }
}
