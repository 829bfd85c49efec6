//! Full asymptotic expansions: per-point correction terms `L_k` and their
//! sum over all minimal points.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::points::{minimal_points, phase, MinimalPoint};
use super::surd::SurdConstant;
use super::AsymptoticsError;
use crate::algebra::{factorial, rat, GaussianRational, Rational, ThetaSeries};
use crate::diagonal::SeriesKind;
use crate::exec::Execution;
use crate::stepset::StepSet;

/// Default truncation degree of every θ-series when `k_count` correction
/// terms are requested.
pub fn default_degree(k_count: usize) -> u32 {
    6 * k_count as u32 + 2
}

/// Smallest degree that still determines `L_0 … L_{k_count−1}`: the
/// amplitude-times-`g^r` products are read at degree `2(r + k)` and `g`
/// starts at degree 4, so only `r ≤ k` contributes.
pub fn minimal_degree(k_count: usize) -> u32 {
    4 * k_count.saturating_sub(1) as u32
}

/// Diagonal entries `|S| / (2 s⁽ʳ⁾)` of the inverse phase Hessian; the same
/// at every minimal point.
pub fn inverse_hessian_diagonal(steps: &StepSet) -> Vec<Rational> {
    let size = steps.len() as i64;
    steps
        .forward_counts()
        .iter()
        .map(|&s| rat(size, 2 * s as i64))
        .collect()
}

/// `𝒟^m(A)(0)` for `𝒟 = −Σ_r c_r ∂²_r`:
/// `θ^α ↦ (−1)^m·m!·Π_r c_r^{α_r/2}·α_r!/(α_r/2)!` when `|α| = 2m` with every
/// `α_r` even, and zero otherwise.
pub fn apply_operator_power(series: &ThetaSeries, m: u32, c: &[Rational]) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for (e, coef) in series.terms() {
        if e.total_degree() != 2 * m as i64 || e.as_slice().iter().any(|a| a % 2 != 0) {
            continue;
        }
        let mut w = Rational::from_integer(factorial(m));
        for (r, &a) in e.as_slice().iter().enumerate() {
            let half = (a / 2) as u32;
            w *= num_traits::pow(c[r].clone(), half as usize);
            w *= Rational::new(factorial(a as u32), factorial(half));
        }
        if m % 2 == 1 {
            w = -w;
        }
        acc += &coef.scale(&w);
    }
    acc
}

/// Amplitude `ũ` at `w`, projected onto its part even in every `θ_k`
/// (the odd part cannot survive the functionals).
///
/// Walks: `Π_k (1 + w_k e^{iθ_k})`. Excursions: `t(z)²·Π_k (z_k² − 1)` with
/// `t(z) = t_w e^{−iΣθ}/(1 + x)`, i.e. `t_w²·Π_k (1 − e^{−2iθ_k})/(1 + x)²`.
fn amplitude(
    steps: &StepSet,
    point: &MinimalPoint,
    kind: SeriesKind,
    x: &ThetaSeries,
    degree: u32,
) -> Result<ThetaSeries, AsymptoticsError> {
    let d = steps.dim();
    let one = ThetaSeries::one(d, degree);
    let mut u = one.clone();
    match kind {
        SeriesKind::Walks => {
            for k in 0..d {
                let f = one.add(&ThetaSeries::exp_circle(d, k, point.w[k], degree).even_part());
                u = u.mul(&f);
            }
        }
        SeriesKind::Excursions => {
            for k in 0..d {
                let mut coeffs = vec![0; d];
                coeffs[k] = -2;
                let f = one.sub(&ThetaSeries::exp_i_linear(d, &coeffs, degree).even_part());
                u = u.mul(&f);
            }
            let r = one.add(x).reciprocal()?;
            u = u.mul(&r).mul(&r).scale_rational(&(&point.t * &point.t));
        }
    }
    Ok(u)
}

/// `L_0 … L_{k_count−1}` at `point`, computed with θ-series truncated at
/// `degree`.
pub fn correction_terms(
    steps: &StepSet,
    point: &MinimalPoint,
    kind: SeriesKind,
    k_count: usize,
    degree: u32,
) -> Result<Vec<Rational>, AsymptoticsError> {
    let need = minimal_degree(k_count);
    if degree < need {
        return Err(AsymptoticsError::InsufficientTruncation { have: degree, need });
    }
    let (f, x) = phase(steps, &point.w, degree)?;
    let g = f.drop_below(3);
    let u = amplitude(steps, point, kind, &x, degree)?;
    let c = inverse_hessian_diagonal(steps);

    // products[r] = ũ·g^r; only r < k_count is ever needed.
    let mut products = vec![u];
    for r in 1..k_count {
        let next = products[r - 1].mul(&g);
        products.push(next);
    }
    let mut out = Vec::with_capacity(k_count);
    for k in 0..k_count {
        let mut lk = GaussianRational::zero();
        for (r, prod) in products.iter().enumerate().take(k + 1) {
            let m = (r + k) as u32;
            let value = apply_operator_power(prod, m, &c);
            if value.is_zero() {
                continue;
            }
            let mut denom = BigInt::from(2).pow(m) * factorial(r as u32) * factorial(m);
            if k % 2 == 1 {
                denom = -denom;
            }
            lk += &value.scale(&Rational::new(BigInt::one(), denom));
        }
        if !lk.is_real() {
            return Err(AsymptoticsError::NonRealCoefficient {
                w: point.w.clone(),
                k,
                value: lk.to_string(),
            });
        }
        out.push(lk.re);
    }
    Ok(out)
}

/// `2^{−d}·π^{−d/2}·|S|^{d/2}·(s⁽¹⁾⋯s⁽ᵈ⁾)^{−1/2}`.
pub fn prefactor(steps: &StepSet) -> SurdConstant {
    let d = steps.dim() as u32;
    let prod: u64 = steps.forward_counts().iter().product();
    let radicand = Rational::new(
        BigInt::from(steps.len()).pow(d),
        BigInt::from(prod),
    );
    SurdConstant::new(rat(1, 1 << d), radicand, -(d as i32))
}

/// `(s⁽¹⁾⋯s⁽ᵈ⁾)^{−1/2}·π^{−d/2}·|S|^{d/2}`.
pub fn leading_constant(steps: &StepSet) -> SurdConstant {
    prefactor(steps).scale(&Rational::from_integer(BigInt::from(1u64 << steps.dim())))
}

/// `(2π)^{−d/2}·𝓗^{−1/2}·G/(t·H_t)` at `z = 1`, `t = 1/|S|`. With
/// `G = Π(1 + z_k)` and `t·H_t = −t·P = −1` this is the negative of
/// [`leading_constant`].
pub fn smooth_point_constant(steps: &StepSet) -> Result<SurdConstant, AsymptoticsError> {
    let d = steps.dim() as u32;
    let ones = vec![1; steps.dim()];
    let h = super::points::hessian_det(steps, &ones)?;
    let g = Rational::from_integer(BigInt::from(1u64 << d));
    let t_ht = rat(-1, 1);
    let radicand = Rational::new(BigInt::one(), BigInt::from(1u64 << d)) / h;
    Ok(SurdConstant::new(g / t_ht, radicand, -(d as i32)))
}

/// `(a choose j)` for rational `a`.
fn binomial(a: &Rational, j: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc *= a - Rational::from_integer(i.into());
    }
    acc / Rational::from_integer(factorial(j))
}

/// Contribution of one point: entry `k` multiplies `S(w)^n·n^{−d/2−k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointContribution {
    pub point: MinimalPoint,
    pub terms: Vec<SurdConstant>,
}

/// Per-point coefficients for `k < k_count`. Excursion terms are re-indexed
/// from `t^{n+2}` to `n` by expanding `(n+2)^{−d/2−k}` in powers of `1/n`;
/// `S(w)^{n+2} = S(w)^n·|S|²`.
pub fn point_contribution(
    steps: &StepSet,
    point: &MinimalPoint,
    kind: SeriesKind,
    k_count: usize,
    degree: u32,
) -> Result<PointContribution, AsymptoticsError> {
    let l = correction_terms(steps, point, kind, k_count, degree)?;
    let coeffs: Vec<Rational> = match kind {
        SeriesKind::Walks => l,
        SeriesKind::Excursions => {
            let size_sq = Rational::from_integer(BigInt::from(steps.len()).pow(2));
            let half_d = rat(steps.dim() as i64, 2);
            (0..k_count)
                .map(|target| {
                    let mut acc = Rational::zero();
                    for (k, lk) in l.iter().enumerate().take(target + 1) {
                        let j = (target - k) as u32;
                        let a = -(&half_d + Rational::from_integer(k.into()));
                        acc += lk * binomial(&a, j) * Rational::from_integer(BigInt::from(2).pow(j));
                    }
                    acc * &size_sq
                })
                .collect()
        }
    };
    let pre = prefactor(steps);
    Ok(PointContribution {
        point: point.clone(),
        terms: coeffs.iter().map(|c| pre.scale(c)).collect(),
    })
}

/// One order of the expansion: the coefficient of `n^{−(d+l)/2}·|S|^n` is
/// `even + (−1)^n·odd`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionTerm {
    pub l: u32,
    pub even: SurdConstant,
    pub odd: SurdConstant,
}

impl ExpansionTerm {
    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// `even + (−1)^n·odd` as a float.
    pub fn value_at_parity(&self, n: usize) -> f64 {
        let odd = self.odd.to_f64();
        self.even.to_f64() + if n.is_multiple_of(2) { odd } else { -odd }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticExpansion {
    pub kind: SeriesKind,
    pub dim: usize,
    /// `|S|`.
    pub base: u64,
    /// One entry per `k`, with `l = 2k`.
    pub terms: Vec<ExpansionTerm>,
    pub points: Vec<PointContribution>,
}

impl AsymptoticExpansion {
    /// First term with a nonzero coefficient.
    pub fn leading_term(&self) -> Option<&ExpansionTerm> {
        self.terms.iter().find(|t| !t.is_zero())
    }

    /// Exponent `e` such that the first omitted term is of order
    /// `|S|^n·n^{−e}`.
    pub fn next_order_exponent(&self) -> f64 {
        self.dim as f64 / 2.0 + self.terms.len() as f64
    }

    /// Prediction divided by `|S|^n`.
    pub fn evaluate_scaled(&self, n: usize) -> f64 {
        let nf = n as f64;
        self.terms
            .iter()
            .map(|t| t.value_at_parity(n) * nf.powf(-((self.dim as f64 + t.l as f64) / 2.0)))
            .sum()
    }

    /// Prediction, `|S|^n·Σ_l (even + (−1)^n·odd)·n^{−(d+l)/2}`.
    pub fn evaluate(&self, n: usize) -> f64 {
        (self.base as f64).powi(n as i32) * self.evaluate_scaled(n)
    }

    /// Keeps only the first `count` terms.
    pub fn truncated(&self, count: usize) -> Self {
        let mut out = self.clone();
        out.terms.truncate(count);
        for p in &mut out.points {
            p.terms.truncate(count);
        }
        out
    }
}

/// Options for building expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExpansionOptions {
    pub execution: Execution,
    /// θ-series truncation; [`default_degree`] when unset.
    pub degree: Option<u32>,
}

fn assemble(
    steps: &StepSet,
    kind: SeriesKind,
    k_count: usize,
    options: ExpansionOptions,
) -> Result<AsymptoticExpansion, AsymptoticsError> {
    if k_count == 0 {
        return Err(AsymptoticsError::ZeroTerms);
    }
    let degree = options.degree.unwrap_or_else(|| default_degree(k_count));
    let points = minimal_points(steps)?;
    let contributions = options
        .execution
        .map(&points, |p| point_contribution(steps, p, kind, k_count, degree))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let mut terms: Vec<ExpansionTerm> = (0..k_count)
        .map(|k| ExpansionTerm {
            l: 2 * k as u32,
            even: SurdConstant::zero(),
            odd: SurdConstant::zero(),
        })
        .collect();
    // Points are sorted by w, so the summation order is fixed.
    for c in &contributions {
        for (term, v) in terms.iter_mut().zip(&c.terms) {
            let slot = if c.point.sign() > 0 {
                &mut term.even
            } else {
                &mut term.odd
            };
            *slot = slot
                .checked_add(v)
                .expect("every point shares the prefactor's radicand");
        }
    }
    Ok(AsymptoticExpansion {
        kind,
        dim: steps.dim(),
        base: steps.len() as u64,
        terms,
        points: contributions,
    })
}

/// Walk counts `s_n`, with `n_terms` orders `n^{−d/2}, …, n^{−d/2−n_terms+1}`.
pub fn walk_asymptotics(
    steps: &StepSet,
    n_terms: usize,
    options: ExpansionOptions,
) -> Result<AsymptoticExpansion, AsymptoticsError> {
    let exp = assemble(steps, SeriesKind::Walks, n_terms, options)?;
    let lead = leading_constant(steps);
    if exp.terms[0].even != lead {
        return Err(AsymptoticsError::LeadingConstantMismatch {
            computed: exp.terms[0].even.to_string(),
            expected: lead.to_string(),
        });
    }
    Ok(exp)
}

/// Excursion counts `e_n`. The orders `n^{−d/2−k}` with `k < d` must vanish;
/// they are kept (as zeros) and followed by `n_terms` further orders.
pub fn excursion_asymptotics(
    steps: &StepSet,
    n_terms: usize,
    options: ExpansionOptions,
) -> Result<AsymptoticExpansion, AsymptoticsError> {
    if n_terms == 0 {
        return Err(AsymptoticsError::ZeroTerms);
    }
    let d = steps.dim();
    let exp = assemble(steps, SeriesKind::Excursions, n_terms + d, options)?;
    if let Some(t) = exp.terms.iter().take(d).find(|t| !t.is_zero()) {
        return Err(AsymptoticsError::ExcursionBoundViolated { l: t.l });
    }
    Ok(exp)
}

pub fn asymptotics(
    steps: &StepSet,
    kind: SeriesKind,
    n_terms: usize,
    options: ExpansionOptions,
) -> Result<AsymptoticExpansion, AsymptoticsError> {
    match kind {
        SeriesKind::Walks => walk_asymptotics(steps, n_terms, options),
        SeriesKind::Excursions => excursion_asymptotics(steps, n_terms, options),
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::stepset::models::*;

    fn surd(qn: i64, qd: i64, r: i64, h: i32) -> SurdConstant {
        SurdConstant::new(rat(qn, qd), rat(r, 1), h)
    }

    #[test]
    fn operator_power_matches_repeated_partials() {
        let d = 2;
        let deg = 8;
        let c = vec![rat(3, 2), rat(1, 1)];
        let s = ThetaSeries::exp_i_linear(d, &[1, 2], deg)
            .mul(&ThetaSeries::exp_circle(d, 0, -1, deg))
            .even_part();
        for m in 0..=4u32 {
            let mut cur = s.clone();
            for _ in 0..m {
                let mut next = ThetaSeries::zero(d, cur.max_degree() - 2);
                for (r, cr) in c.iter().enumerate() {
                    next = next.sub(&cur.second_partial(r).unwrap().scale_rational(cr));
                }
                cur = next;
            }
            assert_eq!(apply_operator_power(&s, m, &c), cur.constant_term());
        }
    }

    #[test]
    fn table_constants() {
        assert_eq!(leading_constant(&nsew()), surd(4, 1, 1, -2));
        assert_eq!(leading_constant(&diagonal()), surd(2, 1, 1, -2));
        assert_eq!(leading_constant(&six_step()), surd(1, 1, 6, -2));
        assert_eq!(leading_constant(&king()), surd(8, 3, 1, -2));
        assert_eq!(leading_constant(&octant_eight()), surd(4, 1, 2, -3));
        for m in [nsew(), six_step(), king(), octant_twelve()] {
            assert_eq!(smooth_point_constant(&m).unwrap(), leading_constant(&m).neg());
        }
    }

    #[test]
    fn six_step_per_point_terms() {
        let m = six_step();
        let pts = minimal_points(&m).unwrap();
        let p = point_contribution(&m, &pts[0], SeriesKind::Walks, 3, default_degree(3)).unwrap();
        assert_eq!(
            p.terms,
            vec![surd(1, 1, 6, -2), surd(-17, 16, 6, -2), surd(605, 512, 6, -2)]
        );
        let s = point_contribution(&m, &pts[1], SeriesKind::Walks, 3, default_degree(3)).unwrap();
        assert_eq!(
            s.terms,
            vec![SurdConstant::zero(), surd(1, 4, 6, -2), surd(-33, 64, 6, -2)]
        );
    }

    #[test]
    fn truncation_degree_is_invisible() {
        let m = six_step();
        let pts = minimal_points(&m).unwrap();
        for kind in [SeriesKind::Walks, SeriesKind::Excursions] {
            let a = correction_terms(&m, &pts[1], kind, 3, default_degree(3)).unwrap();
            let b = correction_terms(&m, &pts[1], kind, 3, 2 * default_degree(3)).unwrap();
            let c = correction_terms(&m, &pts[1], kind, 3, minimal_degree(3)).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, c);
        }
        assert!(matches!(
            correction_terms(&m, &pts[0], SeriesKind::Walks, 3, 7),
            Err(AsymptoticsError::InsufficientTruncation { have: 7, need: 8 })
        ));
    }

    #[test]
    fn excursion_leading_term() {
        let e = excursion_asymptotics(&six_step(), 1, ExpansionOptions::default()).unwrap();
        let lead = e.leading_term().unwrap();
        assert_eq!(lead.l, 4);
        assert_eq!(lead.even, surd(3, 2, 6, -2));
        assert_eq!(lead.odd, surd(3, 2, 6, -2));
    }

    #[test]
    fn binomial_half_integers() {
        assert_eq!(binomial(&rat(-3, 2), 2), rat(15, 8));
        assert_eq!(binomial(&rat(5, 1), 0), rat(1, 1));
    }
}
