//! Checks that externally supplied differential operators and recurrences
//! annihilate a truncated counting sequence.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HolonomicError {
    #[error("invalid specification: {0}")]
    Invalid(String),
    #[error("{have} terms are not enough; at least {need} are required")]
    InsufficientOrder { have: usize, need: usize },
    #[error("nonzero residual {residual} at order {order}")]
    NonzeroResidual { order: usize, residual: BigInt },
    #[error("recurrence fails at n = {n} with residual {residual}")]
    RecurrenceFails { n: usize, residual: BigInt },
}

/// `Σ_j p_j(t)·D_t^j`; `coefficients[j]` lists `p_j` lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OdeSpec {
    pub order: usize,
    pub coefficients: Vec<Vec<i64>>,
}

/// `Σ_j q_j(n)·c_{n+j} = 0`; `coefficients[j]` lists `q_j` lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceSpec {
    pub span: usize,
    pub coefficients: Vec<Vec<i64>>,
}

fn check_shape(len: usize, expected: usize, what: &str, last: &[i64]) -> Result<(), HolonomicError> {
    if len != expected + 1 {
        return Err(HolonomicError::Invalid(format!(
            "{what} {expected} needs {} coefficient polynomials, found {len}",
            expected + 1
        )));
    }
    if last.iter().all(|&c| c == 0) {
        return Err(HolonomicError::Invalid(
            "leading coefficient polynomial is zero".into(),
        ));
    }
    Ok(())
}

fn degree(p: &[i64]) -> usize {
    p.iter().rposition(|&c| c != 0).unwrap_or(0)
}

fn eval_poly(p: &[i64], n: usize) -> BigInt {
    let x = BigInt::from(n);
    p.iter()
        .rev()
        .fold(BigInt::zero(), |acc, &c| acc * &x + BigInt::from(c))
}

impl OdeSpec {
    pub fn validate(&self) -> Result<(), HolonomicError> {
        let last = self.coefficients.last().map(Vec::as_slice).unwrap_or(&[]);
        check_shape(self.coefficients.len(), self.order, "order", last)
    }

    pub fn max_degree(&self) -> usize {
        self.coefficients.iter().map(|p| degree(p)).max().unwrap_or(0)
    }

    /// Highest residual order that the first `len` terms determine.
    pub fn checkable_through(&self, len: usize) -> Option<usize> {
        (len - 1).checked_sub(self.order.max(self.max_degree()))
    }

    /// `[t^m] Σ_j p_j(t)·D^j f` for `m = 0..=checkable_through`.
    pub fn residuals(&self, series: &[BigInt]) -> Result<Vec<BigInt>, HolonomicError> {
        self.validate()?;
        let need = self.order.max(self.max_degree()) + 1;
        let last = self
            .checkable_through(series.len().max(1))
            .filter(|_| !series.is_empty())
            .ok_or(HolonomicError::InsufficientOrder {
                have: series.len(),
                need,
            })?;
        let mut out = Vec::with_capacity(last + 1);
        for m in 0..=last {
            let mut acc = BigInt::zero();
            for (j, p) in self.coefficients.iter().enumerate() {
                for (a, &c) in p.iter().enumerate() {
                    if c == 0 || a > m {
                        continue;
                    }
                    // [t^k] D^j f = (k+1)⋯(k+j)·f_{k+j}
                    let k = m - a;
                    let mut falling = BigInt::from(c);
                    for i in 1..=j {
                        falling *= k + i;
                    }
                    acc += falling * &series[k + j];
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Ok with the last checked order, or the first nonzero residual.
    pub fn check(&self, series: &[BigInt]) -> Result<usize, HolonomicError> {
        let res = self.residuals(series)?;
        if let Some((order, r)) = res.iter().enumerate().find(|(_, r)| !r.is_zero()) {
            return Err(HolonomicError::NonzeroResidual {
                order,
                residual: r.clone(),
            });
        }
        Ok(res.len() - 1)
    }
}

impl RecurrenceSpec {
    pub fn validate(&self) -> Result<(), HolonomicError> {
        let last = self.coefficients.last().map(Vec::as_slice).unwrap_or(&[]);
        check_shape(self.coefficients.len(), self.span, "span", last)
    }

    /// `Σ_j q_j(n)·c_{n+j}`.
    pub fn residual(&self, seq: &[BigInt], n: usize) -> BigInt {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(j, q)| eval_poly(q, n) * &seq[n + j])
            .sum()
    }

    /// Checks every `n ≤ N − span` where `N = seq.len() − 1`; returns the last
    /// checked `n`.
    pub fn check(&self, seq: &[BigInt]) -> Result<usize, HolonomicError> {
        self.validate()?;
        if seq.len() <= self.span {
            return Err(HolonomicError::InsufficientOrder {
                have: seq.len(),
                need: self.span + 1,
            });
        }
        let last = seq.len() - 1 - self.span;
        for n in 0..=last {
            let r = self.residual(seq, n);
            if !r.is_zero() {
                return Err(HolonomicError::RecurrenceFails { n, residual: r });
            }
        }
        Ok(last)
    }
}

pub fn to_signed(v: &[BigUint]) -> Vec<BigInt> {
    v.iter().cloned().map(BigInt::from).collect()
}
