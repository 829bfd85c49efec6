//! Step-set models: validation, inventory, and the per-axis decomposition
//! `S(z) = (z̄_k + z_k)·S₁⁽ᵏ⁾ + S₀⁽ᵏ⁾`.

use std::collections::HashSet;
use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::algebra::{AlgebraError, ExponentVector, LaurentPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepSetError {
    /// Axes are reported 1-based.
    #[error("step set is not symmetric about axis {axis}: reflection of {witness:?} is missing")]
    NotSymmetric { axis: usize, witness: Vec<i32> },
    #[error("no step moves forward along axis {axis}")]
    NoForwardStep { axis: usize },
    #[error("the zero step is not allowed")]
    ZeroStepPresent,
    #[error("step {step:?} has an entry outside {{-1, 0, 1}}")]
    OutOfRangeEntry { step: Vec<i32> },
    #[error("duplicate step {step:?}")]
    DuplicateStep { step: Vec<i32> },
    #[error("step {step:?} has length {found}, expected dimension {expected}")]
    DimensionMismatch {
        step: Vec<i32>,
        expected: usize,
        found: usize,
    },
    #[error("empty step set")]
    Empty,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

/// A validated, highly symmetric step set in `{-1,0,1}^d \ {0}`.
///
/// Steps keep their input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepSet {
    dim: usize,
    steps: Vec<Vec<i32>>,
}

/// `S₁⁽ᵏ⁾` and `S₀⁽ᵏ⁾` for one axis, both in the `d − 1` remaining variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InventoryDecomposition {
    /// 0-based axis.
    pub axis: usize,
    pub s1: LaurentPoly,
    pub s0: LaurentPoly,
}

impl InventoryDecomposition {
    /// `(z̄_k + z_k)·S₁ + S₀` in all `d` variables.
    pub fn reconstruct(&self) -> LaurentPoly {
        let dim = self.s1.dim() + 1;
        let k = self.axis;
        let s1 = self.s1.insert_variable(k);
        let s0 = self.s0.insert_variable(k);
        let pair = &LaurentPoly::var(dim, k) + &LaurentPoly::var_pow(dim, k, -1);
        &(&pair * &s1) + &s0
    }
}

impl StepSet {
    /// Structural checks followed by the symmetry and forward-step hypotheses.
    pub fn validate(dim: usize, steps: Vec<Vec<i32>>) -> Result<Self, StepSetError> {
        if steps.is_empty() {
            return Err(StepSetError::Empty);
        }
        let mut seen = HashSet::new();
        for s in &steps {
            if s.len() != dim {
                return Err(StepSetError::DimensionMismatch {
                    step: s.clone(),
                    expected: dim,
                    found: s.len(),
                });
            }
            if s.iter().any(|&e| !(-1..=1).contains(&e)) {
                return Err(StepSetError::OutOfRangeEntry { step: s.clone() });
            }
            if s.iter().all(|&e| e == 0) {
                return Err(StepSetError::ZeroStepPresent);
            }
            if !seen.insert(s.clone()) {
                return Err(StepSetError::DuplicateStep { step: s.clone() });
            }
        }
        for k in 0..dim {
            for s in &steps {
                let mut r = s.clone();
                r[k] = -r[k];
                if !seen.contains(&r) {
                    return Err(StepSetError::NotSymmetric {
                        axis: k + 1,
                        witness: s.clone(),
                    });
                }
            }
            if !steps.iter().any(|s| s[k] == 1) {
                return Err(StepSetError::NoForwardStep { axis: k + 1 });
            }
        }
        Ok(StepSet { dim, steps })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn steps(&self) -> &[Vec<i32>] {
        &self.steps
    }

    /// `|S|`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `S(z) = Σ_{i∈S} z^i`.
    pub fn inventory(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.dim,
            self.steps
                .iter()
                .map(|s| (ExponentVector::new(s.clone()), Rational::one())),
        )
        .expect("steps have the model dimension")
    }

    /// `P(z) = (z_1⋯z_d)·S(z)`, a genuine polynomial.
    pub fn orthant_polynomial(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.dim,
            self.steps
                .iter()
                .map(|s| (ExponentVector::new(s.iter().map(|e| e + 1).collect()), Rational::one())),
        )
        .expect("steps have the model dimension")
    }

    /// Splits the inventory along `axis` (0-based).
    pub fn decompose(&self, axis: usize) -> Result<InventoryDecomposition, AlgebraError> {
        if axis >= self.dim {
            return Err(AlgebraError::AxisOutOfRange {
                axis,
                dim: self.dim,
            });
        }
        let rest = |s: &Vec<i32>| ExponentVector::new(s.clone()).without(axis);
        let s1 = LaurentPoly::from_terms(
            self.dim - 1,
            self.steps
                .iter()
                .filter(|s| s[axis] == 1)
                .map(|s| (rest(s), Rational::one())),
        )?;
        let s0 = LaurentPoly::from_terms(
            self.dim - 1,
            self.steps
                .iter()
                .filter(|s| s[axis] == 0)
                .map(|s| (rest(s), Rational::one())),
        )?;
        let dec = InventoryDecomposition { axis, s1, s0 };
        debug_assert_eq!(dec.reconstruct(), self.inventory());
        Ok(dec)
    }

    /// `s⁽ᵏ⁾ = #{steps with k-th coordinate +1}` for every axis.
    pub fn forward_counts(&self) -> Vec<u64> {
        (0..self.dim)
            .map(|k| self.steps.iter().filter(|s| s[k] == 1).count() as u64)
            .collect()
    }

    /// Same model with coordinates reordered: new axis `j` is old axis `perm[j]`.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Result<Self, StepSetError> {
        let steps = self
            .steps
            .iter()
            .map(|s| perm.iter().map(|&p| s[p]).collect())
            .collect();
        StepSet::validate(self.dim, steps)
    }

    /// Parses either the compass grammar (`N,S,E,W,NE,…`, d = 2) or the tuple
    /// grammar (`1,0,-1; -1,0,-1; …`) and validates the result.
    pub fn parse(text: &str) -> Result<Self, StepSetError> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(StepSetError::Parse {
                position: 0,
                message: "empty input".into(),
            });
        }
        if trimmed.chars().any(|c| c.is_ascii_digit()) {
            parse_tuples(text)
        } else {
            parse_compass(text)
        }
    }

    /// Tuple-grammar text; `StepSet::parse` inverts it.
    pub fn to_spec_string(&self) -> String {
        self.steps
            .iter()
            .map(|s| s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for StepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_spec_string())
    }
}

/// `σ(p)`: exponent `i_k` becomes `σ_k·i_k`.
pub fn apply_sign_map(p: &LaurentPoly, sigma: &[i32]) -> Result<LaurentPoly, AlgebraError> {
    p.apply_sign_map(sigma)
}

/// All `2^d` sign vectors in lexicographic order with `+1` before `−1`.
pub fn sign_vectors(dim: usize) -> Vec<Vec<i32>> {
    (0..1usize << dim)
        .map(|mask| {
            (0..dim)
                .map(|k| if mask >> (dim - 1 - k) & 1 == 1 { -1 } else { 1 })
                .collect()
        })
        .collect()
}

fn compass(token: &str) -> Option<[i32; 2]> {
    Some(match token {
        "N" => [0, 1],
        "S" => [0, -1],
        "E" => [1, 0],
        "W" => [-1, 0],
        "NE" => [1, 1],
        "NW" => [-1, 1],
        "SE" => [1, -1],
        "SW" => [-1, -1],
        _ => return None,
    })
}

/// Splits on `sep`, yielding each piece with its byte offset in `text`.
fn split_with_offsets(text: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if c == sep {
            out.push((start, &text[start..i]));
            start = i + c.len_utf8();
        }
    }
    out.push((start, &text[start..]));
    out
}

fn parse_compass(text: &str) -> Result<StepSet, StepSetError> {
    let mut steps = Vec::new();
    for (pos, raw) in split_with_offsets(text, ',') {
        let tok = raw.trim();
        let offset = pos + raw.len() - raw.trim_start().len();
        let step = compass(&tok.to_ascii_uppercase()).ok_or_else(|| StepSetError::Parse {
            position: offset,
            message: format!("unknown compass direction {tok:?}"),
        })?;
        steps.push(step.to_vec());
    }
    StepSet::validate(2, steps)
}

fn parse_tuples(text: &str) -> Result<StepSet, StepSetError> {
    let mut steps: Vec<Vec<i32>> = Vec::new();
    for (pos, raw) in split_with_offsets(text, ';') {
        if raw.trim().is_empty() {
            // tolerate a trailing separator
            if pos + raw.len() == text.len() && !steps.is_empty() {
                continue;
            }
            return Err(StepSetError::Parse {
                position: pos,
                message: "empty step".into(),
            });
        }
        let mut step = Vec::new();
        for (p2, entry) in split_with_offsets(raw, ',') {
            let e = entry.trim();
            let offset = pos + p2 + entry.len() - entry.trim_start().len();
            let v: i32 = e.parse().map_err(|_| StepSetError::Parse {
                position: offset,
                message: format!("expected an integer, found {e:?}"),
            })?;
            step.push(v);
        }
        steps.push(step);
    }
    let dim = steps[0].len();
    StepSet::validate(dim, steps)
}

/// Named models used throughout tests, examples and the CLI.
pub mod models {
    use super::StepSet;

    fn build(dim: usize, steps: &[&[i32]]) -> StepSet {
        StepSet::validate(dim, steps.iter().map(|s| s.to_vec()).collect())
            .expect("built-in model is valid")
    }

    /// `{N, S, E, W}`.
    pub fn nsew() -> StepSet {
        build(2, &[&[0, 1], &[0, -1], &[1, 0], &[-1, 0]])
    }

    /// `{NE, SE, NW, SW}`.
    pub fn diagonal() -> StepSet {
        build(2, &[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]])
    }

    /// `{N, S, NE, SE, NW, SW}`.
    pub fn six_step() -> StepSet {
        build(
            2,
            &[&[0, 1], &[0, -1], &[1, 1], &[1, -1], &[-1, 1], &[-1, -1]],
        )
    }

    /// All eight unit steps of the plane.
    pub fn king() -> StepSet {
        full(2)
    }

    /// `{±e_1, …, ±e_d}`.
    pub fn simple(dim: usize) -> StepSet {
        let mut steps = Vec::new();
        for k in 0..dim {
            for s in [1, -1] {
                let mut v = vec![0; dim];
                v[k] = s;
                steps.push(v);
            }
        }
        StepSet::validate(dim, steps).expect("simple model is valid")
    }

    /// `{-1,0,1}^d \ {0}`.
    pub fn full(dim: usize) -> StepSet {
        let mut steps = Vec::new();
        for code in 0..3usize.pow(dim as u32) {
            let mut c = code;
            let mut v = vec![0; dim];
            for slot in v.iter_mut() {
                *slot = (c % 3) as i32 - 1;
                c /= 3;
            }
            if v.iter().any(|&e| e != 0) {
                steps.push(v);
            }
        }
        StepSet::validate(dim, steps).expect("full model is valid")
    }

    /// Eight-step octant model `{(±1,0,±1), (0,±1,±1)}`.
    pub fn octant_eight() -> StepSet {
        build(
            3,
            &[
                &[-1, 0, 1],
                &[-1, 0, -1],
                &[1, 0, 1],
                &[1, 0, -1],
                &[0, 1, 1],
                &[0, 1, -1],
                &[0, -1, 1],
                &[0, -1, -1],
            ],
        )
    }

    /// Twelve-step octant model: [`octant_eight`] plus `(±1,±1,0)`.
    pub fn octant_twelve() -> StepSet {
        build(
            3,
            &[
                &[-1, 0, 1],
                &[-1, 0, -1],
                &[1, 0, 1],
                &[1, 0, -1],
                &[0, 1, 1],
                &[0, 1, -1],
                &[0, -1, 1],
                &[0, -1, -1],
                &[1, 1, 0],
                &[-1, 1, 0],
                &[1, -1, 0],
                &[-1, -1, 0],
            ],
        )
    }

    /// One-dimensional `{+1, −1}`.
    pub fn dyck() -> StepSet {
        simple(1)
    }

    /// The four highly symmetric quarter-plane models, in table order.
    pub fn quarter_plane() -> Vec<(&'static str, StepSet)> {
        vec![
            ("nsew", nsew()),
            ("diagonal", diagonal()),
            ("six_step", six_step()),
            ("king", king()),
        ]
    }

    /// Looks up a built-in model by name.
    pub fn by_name(name: &str) -> Option<StepSet> {
        Some(match name {
            "nsew" => nsew(),
            "diagonal" => diagonal(),
            "six_step" => six_step(),
            "king" => king(),
            "octant_eight" => octant_eight(),
            "octant_twelve" => octant_twelve(),
            "dyck" => dyck(),
            _ => return None,
        })
    }
}
