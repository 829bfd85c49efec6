//! Minimal critical points `(w, 1/(w_1⋯w_d·S(w)))` with `w ∈ {±1}^d`, and
//! the Hessian of the phase at each.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::AsymptoticsError;
use crate::algebra::{GaussianRational, Rational, ThetaSeries};
use crate::stepset::{sign_vectors, StepSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalPoint {
    pub w: Vec<i32>,
    /// `S(w) = ±|S|`.
    pub s_w: Rational,
    /// `t_w = 1/(w_1⋯w_d·S(w))`.
    pub t: Rational,
    /// `S₁⁽ᵏ⁾(w)` for each axis.
    pub s1: Vec<Rational>,
    /// Determinant of the phase Hessian at `θ = 0`.
    pub hessian: Rational,
}

impl MinimalPoint {
    /// `+1` when `S(w) = |S|`, `−1` when `S(w) = −|S|`.
    pub fn sign(&self) -> i32 {
        if self.s_w.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn is_all_ones(&self) -> bool {
        self.w.iter().all(|&x| x == 1)
    }

    /// Order to which `Π(1 + z_k)` vanishes at `w`.
    pub fn walk_vanishing_order(&self) -> usize {
        self.w.iter().filter(|&&x| x == -1).count()
    }
}

#[derive(Serialize)]
pub(crate) struct MinimalPointJson {
    w: Vec<i32>,
    #[serde(rename = "S(w)")]
    s_w: String,
    t: String,
    hessian: String,
}

impl From<&MinimalPoint> for MinimalPointJson {
    fn from(p: &MinimalPoint) -> Self {
        use crate::algebra::fmt_rational;
        MinimalPointJson {
            w: p.w.clone(),
            s_w: fmt_rational(&p.s_w),
            t: fmt_rational(&p.t),
            hessian: fmt_rational(&p.hessian),
        }
    }
}

/// `2^d·Π w_k·Π S₁⁽ᵏ⁾(w) / S(w)^d`, the determinant of
/// `diag(2·w_k·S₁⁽ᵏ⁾(w)/S(w))`.
pub fn hessian_det(steps: &StepSet, w: &[i32]) -> Result<Rational, AsymptoticsError> {
    let s_w = steps.inventory().eval_signs(w)?;
    let mut det = Rational::one();
    for (k, &wk) in w.iter().enumerate() {
        let rest: Vec<i32> = w.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x).collect();
        let s1 = steps.decompose(k)?.s1.eval_signs(&rest)?;
        if s1.is_zero() {
            return Err(AsymptoticsError::Degenerate {
                w: w.to_vec(),
                axis: k + 1,
            });
        }
        det *= Rational::from_integer(BigInt::from(2 * wk)) * s1 / &s_w;
    }
    Ok(det)
}

/// `S(w·e^{iθ})` as a series; real and even in each `θ_k`.
pub(crate) fn inventory_on_torus(steps: &StepSet, w: &[i32], degree: u32) -> ThetaSeries {
    let d = steps.dim();
    let mut acc = ThetaSeries::zero(d, degree);
    for s in steps.steps() {
        let sign: i32 = s.iter().zip(w).map(|(&e, &x)| if e == 0 { 1 } else { x.pow(e.unsigned_abs()) }).product();
        let term = ThetaSeries::exp_i_linear(d, s, degree).even_part();
        acc = acc.add(&term.scale_rational(&Rational::from_integer(sign.into())));
    }
    acc
}

/// Phase `log S(w) − log S(w·e^{iθ}) = −log(1 + x)` with
/// `x = S(w·e^{iθ})/S(w) − 1`; also returns `x`.
pub(crate) fn phase(steps: &StepSet, w: &[i32], degree: u32) -> Result<(ThetaSeries, ThetaSeries), AsymptoticsError> {
    let s_w = steps.inventory().eval_signs(w)?;
    let d = steps.dim();
    let x = inventory_on_torus(steps, w, degree)
        .scale_rational(&s_w.recip())
        .sub(&ThetaSeries::one(d, degree));
    let f = x.log1p()?.neg();
    Ok((f, x))
}

/// Hessian matrix of the phase at `θ = 0`, read from its series.
pub fn phase_hessian(steps: &StepSet, w: &[i32]) -> Result<Vec<Vec<GaussianRational>>, AsymptoticsError> {
    let (f, _) = phase(steps, w, 2)?;
    Ok(f.second_partials_at_zero()?)
}

/// All `w ∈ {±1}^d` with `|S(w)| = |S|`, sorted with `+1` before `−1`.
///
/// Each point is checked for non-degeneracy and its Hessian determinant is
/// cross-checked against the phase series, which must have a diagonal Hessian.
pub fn minimal_points(steps: &StepSet) -> Result<Vec<MinimalPoint>, AsymptoticsError> {
    let inv = steps.inventory();
    let size = Rational::from_integer(BigInt::from(steps.len()));
    let mut out = Vec::new();
    for w in sign_vectors(steps.dim()) {
        let s_w = inv.eval_signs(&w)?;
        if s_w.abs() != size {
            continue;
        }
        let mut s1 = Vec::with_capacity(w.len());
        for k in 0..w.len() {
            let rest: Vec<i32> = w.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x).collect();
            s1.push(steps.decompose(k)?.s1.eval_signs(&rest)?);
        }
        let hessian = hessian_det(steps, &w)?;
        let matrix = phase_hessian(steps, &w)?;
        let mut series_det = GaussianRational::one();
        for (j, row) in matrix.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                if j != k && !v.is_zero() {
                    return Err(AsymptoticsError::HessianMismatch { w: w.clone() });
                }
            }
            series_det = &series_det * &row[j];
        }
        if series_det != GaussianRational::real(hessian.clone()) {
            return Err(AsymptoticsError::HessianMismatch { w: w.clone() });
        }
        let sign: i32 = w.iter().product();
        let t = (Rational::from_integer(sign.into()) * &s_w).recip();
        out.push(MinimalPoint {
            w,
            s_w,
            t,
            s1,
            hessian,
        });
    }
    assert!(
        out.first().is_some_and(|p| p.is_all_ones()),
        "the all-ones point is always minimal"
    );
    Ok(out)
}
