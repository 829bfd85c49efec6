//! Rational-function representations of walk and excursion generating
//! functions, with truncated-series oracles for the kernel-method identities.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{ExponentVector, LaurentPoly, Rational};
use crate::enumerate::CountTable;
use crate::exec::Execution;
use crate::stepset::{sign_vectors, StepSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    Walks,
    Excursions,
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesKind::Walks => "walks",
            SeriesKind::Excursions => "excursions",
        })
    }
}

/// `t^shift·G(z) / (1 − t·P(z))` with `P = (z_1⋯z_d)·S(z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionSpec {
    pub kind: SeriesKind,
    /// `G(z)`, without the power of `t`.
    pub numerator: LaurentPoly,
    pub t_shift: u32,
    pub step_poly: LaurentPoly,
}

/// `Π_k (1 + z_k)` over `1 − t·P`.
pub fn build_walk_rational(steps: &StepSet) -> RationalFunctionSpec {
    let d = steps.dim();
    let mut g = LaurentPoly::one(d);
    for k in 0..d {
        g = &g * &(&LaurentPoly::one(d) + &LaurentPoly::var(d, k));
    }
    RationalFunctionSpec {
        kind: SeriesKind::Walks,
        numerator: g,
        t_shift: 0,
        step_poly: steps.orthant_polynomial(),
    }
}

/// `t²·Π_k (z_k² − 1)` over `1 − t·P`.
pub fn build_excursion_rational(steps: &StepSet) -> RationalFunctionSpec {
    let d = steps.dim();
    let mut g = LaurentPoly::one(d);
    for k in 0..d {
        g = &g * &(&LaurentPoly::var_pow(d, k, 2) - &LaurentPoly::one(d));
    }
    RationalFunctionSpec {
        kind: SeriesKind::Excursions,
        numerator: g,
        t_shift: 2,
        step_poly: steps.orthant_polynomial(),
    }
}

pub fn build_rational(steps: &StepSet, kind: SeriesKind) -> RationalFunctionSpec {
    match kind {
        SeriesKind::Walks => build_walk_rational(steps),
        SeriesKind::Excursions => build_excursion_rational(steps),
    }
}

fn full_name(d: usize) -> impl Fn(usize) -> String {
    move |k| {
        if k == d {
            "t".to_string()
        } else {
            crate::algebra::var_name(d, k)
        }
    }
}

impl RationalFunctionSpec {
    pub fn dim(&self) -> usize {
        self.step_poly.dim()
    }

    /// `t^shift·G` in the variables `(z_1, …, z_d, t)`.
    pub fn numerator_full(&self) -> LaurentPoly {
        let d = self.dim();
        &self.numerator.insert_variable(d) * &LaurentPoly::var_pow(d + 1, d, self.t_shift as i32)
    }

    /// `H = 1 − t·P` in the variables `(z_1, …, z_d, t)`.
    pub fn denominator_full(&self) -> LaurentPoly {
        let d = self.dim();
        let tp = &self.step_poly.insert_variable(d) * &LaurentPoly::var(d + 1, d);
        &LaurentPoly::one(d + 1) - &tp
    }

    /// Exact check of `t·∂H/∂t = H − 1`, so `H` and `H_t` share no zero.
    pub fn smoothness_identity_holds(&self) -> bool {
        let d = self.dim();
        let h = self.denominator_full();
        let lhs = &LaurentPoly::var(d + 1, d) * &h.partial(d);
        lhs == &h - &LaurentPoly::one(d + 1)
    }

    /// Canonical two-line text: numerator and denominator in graded-lex order.
    pub fn canonical_string(&self) -> String {
        let name = full_name(self.dim());
        format!(
            "kind: {}\nnumerator: {}\ndenominator: {}",
            self.kind,
            self.numerator_full().to_string_with(&name),
            self.denominator_full().to_string_with(&name)
        )
    }
}

/// The orbit sum `R = Π(z_k − z̄_k) / ((z_1⋯z_d)(1 − t·S))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSum {
    pub numerator: LaurentPoly,
    /// `z_1⋯z_d`.
    pub monomial: LaurentPoly,
    pub inventory: LaurentPoly,
}

pub fn build_orbit_sum(steps: &StepSet) -> OrbitSum {
    let d = steps.dim();
    let mut num = LaurentPoly::one(d);
    for k in 0..d {
        num = &num * &(&LaurentPoly::var(d, k) - &LaurentPoly::var_pow(d, k, -1));
    }
    OrbitSum {
        numerator: num,
        monomial: LaurentPoly::monomial(ExponentVector::new(vec![1; d]), Rational::one()),
        inventory: steps.inventory(),
    }
}

impl OrbitSum {
    /// `[t^n] R = Π(z_k − z̄_k)·(z̄_1⋯z̄_d)·S^n`.
    pub fn coefficient(&self, n: u32) -> LaurentPoly {
        let d = self.numerator.dim();
        let inv_mono = LaurentPoly::monomial(ExponentVector::new(vec![-1; d]), Rational::one());
        &(&self.numerator * &inv_mono) * &self.inventory.pow(n)
    }
}

/// `Σ_σ sgn(σ)·σ(z_1⋯z_d)` expanded over all sign maps.
pub fn signed_orbit_of_monomial(dim: usize) -> LaurentPoly {
    let mono = LaurentPoly::monomial(ExponentVector::new(vec![1; dim]), Rational::one());
    let mut acc = LaurentPoly::zero(dim);
    for sigma in sign_vectors(dim) {
        let term = mono.apply_sign_map(&sigma).expect("dimension");
        if sigma.iter().product::<i32>() == 1 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

/// Coefficients `c_m = G·P^m` of `t^{m + shift}` in the expansion of the spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTable {
    pub kind: SeriesKind,
    pub t_shift: u32,
    /// When set, every exponent above this bound was discarded.
    pub pruned_above: Option<i32>,
    pub coeffs: Vec<LaurentPoly>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExpandOptions {
    pub execution: Execution,
    /// Drop monomials with some exponent above this bound after every step.
    pub prune_above: Option<i32>,
}

fn prune(p: LaurentPoly, bound: Option<i32>) -> LaurentPoly {
    match bound {
        None => p,
        Some(b) => p.filter(|e| e.as_slice().iter().all(|&x| x <= b)),
    }
}

const MIN_CHUNK: usize = 64;

/// `a·b` with the terms of `a` split into chunks that are multiplied
/// independently and summed in chunk order.
fn chunked_product(
    a: &LaurentPoly,
    b: &LaurentPoly,
    bound: Option<i32>,
    execution: Execution,
) -> LaurentPoly {
    let terms: Vec<(ExponentVector, Rational)> =
        a.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    if !execution.is_parallel() || terms.len() < 2 * MIN_CHUNK {
        return prune(a * b, bound);
    }
    let chunks: Vec<&[(ExponentVector, Rational)]> = terms.chunks(MIN_CHUNK.max(terms.len() / 64)).collect();
    let partials = execution.map(&chunks, |chunk| {
        let part = LaurentPoly::from_terms(a.dim(), chunk.iter().cloned()).expect("dimension");
        prune(&part * b, bound)
    });
    let mut acc = LaurentPoly::zero(a.dim());
    for p in partials {
        acc = acc + p;
    }
    acc
}

/// `c_0 = G`, `c_m = P·c_{m−1}` for `m ≤ order`.
pub fn series_expand(
    spec: &RationalFunctionSpec,
    order: usize,
    options: ExpandOptions,
) -> SeriesTable {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = prune(spec.numerator.clone(), options.prune_above);
    for _ in 0..order {
        let next = chunked_product(&c, &spec.step_poly, options.prune_above, options.execution);
        coeffs.push(c);
        c = next;
    }
    coeffs.push(c);
    SeriesTable {
        kind: spec.kind,
        t_shift: spec.t_shift,
        pruned_above: options.prune_above,
        coeffs,
    }
}

impl SeriesTable {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `[z^{(m+shift)·1}] c_m` for every `m`: the diagonal read at `t^{m+shift}`.
    pub fn diagonal(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| {
                let n = (m + self.t_shift as usize) as i32;
                c.coefficient(&ExponentVector::new(vec![n; c.dim()]))
            })
            .collect()
    }
}

/// Diagonal coefficients `n = 0..=order`; for excursions entry `n` is read
/// at `t^{n+2}`.
///
/// Exponents above `order + shift` are pruned: `G` and `P` have no negative
/// exponents, so such monomials never reach the diagonal.
pub fn diagonal_coeffs(
    spec: &RationalFunctionSpec,
    order: usize,
    execution: Execution,
) -> Vec<Rational> {
    let bound = (order + spec.t_shift as usize) as i32;
    series_expand(
        spec,
        order,
        ExpandOptions {
            execution,
            prune_above: Some(bound),
        },
    )
    .diagonal()
}

/// Keeps the monomials with non-negative exponent in every listed axis.
pub fn positive_part(p: &LaurentPoly, axes: &[usize]) -> LaurentPoly {
    p.filter(|e| axes.iter().all(|&k| e[k] >= 0))
}

/// [`positive_part`] applied to every coefficient of a table.
pub fn positive_part_table(table: &SeriesTable, axes: &[usize]) -> SeriesTable {
    SeriesTable {
        coeffs: table.coeffs.iter().map(|c| positive_part(c, axes)).collect(),
        ..table.clone()
    }
}

/// First mismatch found by an identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub n: usize,
    /// `None` when the mismatch is in a scalar rather than a coefficient.
    pub monomial: Option<ExponentVector>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.monomial {
            Some(m) => write!(
                f,
                "order {}: coefficient of {:?} is {} on the left, {} on the right",
                self.n, m, self.lhs, self.rhs
            ),
            None => write!(
                f,
                "order {}: {} on the left, {} on the right",
                self.n, self.lhs, self.rhs
            ),
        }
    }
}

impl std::error::Error for Discrepancy {}

fn first_difference(n: usize, lhs: &LaurentPoly, rhs: &LaurentPoly) -> Option<Discrepancy> {
    let diff = lhs - rhs;
    let e = diff.terms().next()?.0.clone();
    Some(Discrepancy {
        n,
        lhs: lhs.coefficient(&e),
        rhs: rhs.coefficient(&e),
        monomial: Some(e),
    })
}

/// Checks `Σ_σ sgn(σ)·σ(z_1⋯z_d·F_n) = Π(z_k − z̄_k)·S^n` for each supplied
/// endpoint polynomial `F_n`.
pub fn verify_orbit_sum_identity_series(
    steps: &StepSet,
    endpoint_series: &[LaurentPoly],
) -> Result<(), Discrepancy> {
    let d = steps.dim();
    let orbit = build_orbit_sum(steps);
    let signs = sign_vectors(d);
    let mut s_pow = LaurentPoly::one(d);
    for (n, f) in endpoint_series.iter().enumerate() {
        let shifted = &orbit.monomial * f;
        let mut lhs = LaurentPoly::zero(d);
        for sigma in &signs {
            let term = shifted.apply_sign_map(sigma).expect("dimension");
            if sigma.iter().product::<i32>() == 1 {
                lhs = lhs + term;
            } else {
                lhs = lhs - term;
            }
        }
        let rhs = &orbit.numerator * &s_pow;
        if let Some(bad) = first_difference(n, &lhs, &rhs) {
            return Err(bad);
        }
        s_pow = &s_pow * &orbit.inventory;
    }
    Ok(())
}

/// [`verify_orbit_sum_identity_series`] on the DP table through `order`.
pub fn verify_orbit_sum_identity(
    steps: &StepSet,
    table: &CountTable,
    order: usize,
) -> Result<(), Discrepancy> {
    let series: Vec<LaurentPoly> = (0..=order)
        .map(|n| table.endpoint_series(n).expect("table covers the order"))
        .collect();
    verify_orbit_sum_identity_series(steps, &series)
}

/// Positive part of the orbit sum at `z = 1`, order by order.
pub fn pospart_totals(steps: &StepSet, order: usize) -> Vec<Rational> {
    let d = steps.dim();
    let axes: Vec<usize> = (0..d).collect();
    let orbit = build_orbit_sum(steps);
    (0..=order as u32)
        .map(|n| positive_part(&orbit.coefficient(n), &axes).eval_ones())
        .collect()
}

/// Diagonal of `R(z̄_1,…,z̄_d, z_1⋯z_d·t) / Π(1 − z_k)`, order by order.
///
/// `[t^n]` of the numerator is `R_n(z̄)·(z_1⋯z_d)^n`, a polynomial; dividing
/// by `Π(1 − z_k)` and reading `z^{n·1}` sums its coefficients over the box
/// `[0,n]^d`.
pub fn transformed_diagonal(steps: &StepSet, order: usize) -> Vec<Rational> {
    let d = steps.dim();
    let orbit = build_orbit_sum(steps);
    let all_flip = vec![-1; d];
    (0..=order as u32)
        .map(|n| {
            let b = orbit.coefficient(n).apply_sign_map(&all_flip).expect("dimension");
            let shifted = &b
                * &LaurentPoly::monomial(ExponentVector::new(vec![n as i32; d]), Rational::one());
            debug_assert!(shifted.is_polynomial());
            shifted
                .terms()
                .filter(|(e, _)| e.as_slice().iter().all(|&x| x <= n as i32))
                .fold(Rational::zero(), |acc, (_, c)| acc + c)
        })
        .collect()
}

/// Positive-part extraction at `z = 1` against the diagonal of the
/// transformed function, both expanded through `order`.
pub fn verify_pospart_to_diagonal(steps: &StepSet, order: usize) -> Result<(), Discrepancy> {
    let lhs = pospart_totals(steps, order);
    let rhs = transformed_diagonal(steps, order);
    for (n, (a, b)) in lhs.into_iter().zip(rhs).enumerate() {
        if a != b {
            return Err(Discrepancy {
                n,
                monomial: None,
                lhs: a,
                rhs: b,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::stepset::models::*;

    fn ints(v: &[Rational]) -> Vec<i64> {
        v.iter()
            .map(|q| {
                assert!(q.is_integer());
                i64::try_from(q.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn denominators_match_closed_forms() {
        let (x, y, z, t) = (
            LaurentPoly::var(4, 0),
            LaurentPoly::var(4, 1),
            LaurentPoly::var(4, 2),
            LaurentPoly::var(4, 3),
        );
        let one = LaurentPoly::one(4);
        let h8 = &one - &(&(&(&t * &(&(&z * &z) + &one)) * &(&x + &y)) * &(&(&x * &y) + &one));
        assert_eq!(build_walk_rational(&octant_eight()).denominator_full(), h8);
        let h12 = &h8 - &(&(&(&t * &z) * &(&(&y * &y) + &one)) * &(&(&x * &x) + &one));
        assert_eq!(build_walk_rational(&octant_twelve()).denominator_full(), h12);

        for d in 1..=4 {
            let spec = build_walk_rational(&simple(d));
            let mut p = LaurentPoly::zero(d);
            for k in 0..d {
                let mut term = &LaurentPoly::one(d) + &LaurentPoly::var_pow(d, k, 2);
                for j in (0..d).filter(|&j| j != k) {
                    term = &term * &LaurentPoly::var(d, j);
                }
                p = &p + &term;
            }
            assert_eq!(spec.step_poly, p);
            assert_eq!(spec.step_poly.eval_ones(), rat(2 * d as i64, 1));
        }
    }

    #[test]
    fn smoothness_identity() {
        for m in [nsew(), six_step(), king(), octant_eight(), octant_twelve(), dyck()] {
            assert!(build_walk_rational(&m).smoothness_identity_holds());
            assert!(build_excursion_rational(&m).smoothness_identity_holds());
        }
    }

    #[test]
    fn orbit_numerator_identity() {
        for d in 1..=4 {
            assert_eq!(signed_orbit_of_monomial(d), build_orbit_sum(&simple(d)).numerator);
        }
    }

    #[test]
    fn orbit_sum_one_dimensional() {
        let o = build_orbit_sum(&dyck());
        let z = LaurentPoly::var(1, 0);
        let zb = LaurentPoly::var_pow(1, 0, -1);
        assert_eq!(o.numerator, &z - &zb);
        // [t^1] R = (z − z̄)·z̄·(z + z̄) = 1 − z̄^2 ... times z̄^0
        assert_eq!(o.coefficient(1), &(&(&z - &zb) * &zb) * &(&z + &zb));
    }

    #[test]
    fn series_basics() {
        let spec = build_walk_rational(&nsew());
        let t = series_expand(&spec, 4, ExpandOptions::default());
        assert_eq!(t.coeffs[0], spec.numerator);
        assert_eq!(ints(&t.diagonal()), vec![1, 2, 6, 18, 60]);
        let e = diagonal_coeffs(&build_excursion_rational(&nsew()), 6, Execution::Sequential);
        assert_eq!(ints(&e), vec![1, 0, 2, 0, 10, 0, 70]);
    }

    #[test]
    fn pruning_is_invisible_on_the_diagonal() {
        for m in [six_step(), octant_twelve()] {
            for kind in [SeriesKind::Walks, SeriesKind::Excursions] {
                let spec = build_rational(&m, kind);
                let full = series_expand(&spec, 7, ExpandOptions::default()).diagonal();
                assert_eq!(full, diagonal_coeffs(&spec, 7, Execution::Parallel));
            }
        }
    }

    #[test]
    fn positive_part_examples() {
        let z = LaurentPoly::var(1, 0);
        let zb = LaurentPoly::var_pow(1, 0, -1);
        assert_eq!(positive_part(&(&z + &zb), &[0]), z);
        let c = &LaurentPoly::constant(1, rat(3, 1)) + &zb;
        assert_eq!(positive_part(&c, &[0]), LaurentPoly::constant(1, rat(3, 1)));
        assert_eq!(ints(&pospart_totals(&nsew(), 5)), vec![1, 2, 6, 18, 60, 200]);
    }

    #[test]
    fn pospart_diagonal_correspondence() {
        assert!(verify_pospart_to_diagonal(&nsew(), 8).is_ok());
        assert!(verify_pospart_to_diagonal(&six_step(), 8).is_ok());
        assert!(verify_pospart_to_diagonal(&simple(3), 6).is_ok());
        assert_eq!(
            transformed_diagonal(&six_step(), 8),
            diagonal_coeffs(&build_walk_rational(&six_step()), 8, Execution::Sequential)
        );
    }

    #[test]
    fn canonical_string_for_nsew() {
        let s = build_walk_rational(&nsew()).canonical_string();
        assert_eq!(
            s,
            "kind: walks\nnumerator: x*y + x + y + 1\ndenominator: -x^2*y*t - x*y^2*t - x*t - y*t + 1"
        );
    }
}
