use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::exponent::fmt_monomial;
use super::rational::factorial;
use super::{AlgebraError, ExponentVector, GaussianRational, Rational};

/// Truncated Taylor series in `θ_1 … θ_d` with Gaussian-rational coefficients.
///
/// Every stored monomial has total degree at most `max_degree`; products
/// discard anything above it. Results up to that degree are exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThetaSeries {
    dim: usize,
    max_degree: u32,
    terms: BTreeMap<ExponentVector, GaussianRational>,
}

impl ThetaSeries {
    pub fn zero(dim: usize, max_degree: u32) -> Self {
        ThetaSeries {
            dim,
            max_degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, max_degree: u32, c: GaussianRational) -> Self {
        let mut s = ThetaSeries::zero(dim, max_degree);
        s.add_term(ExponentVector::zero(dim), c);
        s
    }

    pub fn one(dim: usize, max_degree: u32) -> Self {
        ThetaSeries::constant(dim, max_degree, GaussianRational::one())
    }

    /// `θ_axis` (or zero when `max_degree` is 0).
    pub fn variable(dim: usize, max_degree: u32, axis: usize) -> Self {
        let mut s = ThetaSeries::zero(dim, max_degree);
        s.add_term(ExponentVector::unit(dim, axis, 1), GaussianRational::one());
        s
    }

    pub fn from_terms<I>(dim: usize, max_degree: u32, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (ExponentVector, GaussianRational)>,
    {
        let mut s = ThetaSeries::zero(dim, max_degree);
        for (e, c) in terms {
            if e.dim() != dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: dim,
                    found: e.dim(),
                });
            }
            assert!(
                e.as_slice().iter().all(|&p| p >= 0),
                "θ-series exponents must be non-negative"
            );
            s.add_term(e, c);
        }
        Ok(s)
    }

    /// `w·e^{iθ_axis} = w·Σ_{m ≤ D} (iθ_axis)^m / m!`.
    pub fn exp_circle(dim: usize, axis: usize, w: i32, max_degree: u32) -> Self {
        let mut coeffs = vec![0; dim];
        coeffs[axis] = 1;
        ThetaSeries::exp_i_linear(dim, &coeffs, max_degree)
            .scale_rational(&Rational::from(BigInt::from(w)))
    }

    /// `exp(i·Σ_k c_k θ_k)`, using `[θ^α] = i^{|α|} Π c_k^{α_k} / α_k!`.
    pub fn exp_i_linear(dim: usize, coeffs: &[i32], max_degree: u32) -> Self {
        assert_eq!(coeffs.len(), dim);
        let mut s = ThetaSeries::zero(dim, max_degree);
        let active: Vec<usize> = (0..dim).filter(|&k| coeffs[k] != 0).collect();
        let mut alpha = vec![0i32; dim];
        fn rec(
            idx: usize,
            left: u32,
            active: &[usize],
            coeffs: &[i32],
            alpha: &mut Vec<i32>,
            out: &mut ThetaSeries,
        ) {
            if idx == active.len() {
                let total: i64 = alpha.iter().map(|&a| a as i64).sum();
                let mut q = Rational::one();
                for &k in active {
                    let a = alpha[k] as u32;
                    q *= Rational::new(BigInt::from(coeffs[k]).pow(a), factorial(a));
                }
                out.add_term(
                    ExponentVector::new(alpha.clone()),
                    GaussianRational::i_pow(total).scale(&q),
                );
                return;
            }
            let k = active[idx];
            for a in 0..=left {
                alpha[k] = a as i32;
                rec(idx + 1, left - a, active, coeffs, alpha, out);
            }
            alpha[k] = 0;
        }
        rec(0, max_degree, &active, coeffs, &mut alpha, &mut s);
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &ExponentVector) -> GaussianRational {
        self.terms.get(exps).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coefficient(&ExponentVector::zero(self.dim))
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().next().map(|e| e.total_degree() as u32)
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussianRational::is_real)
    }

    fn add_term(&mut self, e: ExponentVector, c: GaussianRational) {
        if c.is_zero() || e.total_degree() > self.max_degree as i64 {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, o: &Self) {
        assert_eq!(self.dim, o.dim, "θ-series dimension mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_dim(o);
        let mut out = self.truncate(self.max_degree.min(o.max_degree));
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale_rational(&-Rational::one())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = ThetaSeries::zero(self.dim, self.max_degree);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        let mut out = ThetaSeries::zero(self.dim, self.max_degree);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.scale(q));
        }
        out
    }

    /// Truncated product; the result keeps the smaller of the two truncations.
    pub fn mul(&self, o: &Self) -> Self {
        self.check_dim(o);
        let deg = self.max_degree.min(o.max_degree) as i64;
        let mut out = ThetaSeries::zero(self.dim, deg as u32);
        // Terms iterate in graded order, so both loops can stop at the degree bound.
        for (ea, ca) in &self.terms {
            let da = ea.total_degree();
            if da > deg {
                break;
            }
            for (eb, cb) in &o.terms {
                if da + eb.total_degree() > deg {
                    break;
                }
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = ThetaSeries::one(self.dim, self.max_degree);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        let max_degree = max_degree.min(self.max_degree);
        ThetaSeries {
            dim: self.dim,
            max_degree,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total_degree() <= max_degree as i64)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps only the terms of total degree at least `min_degree`.
    pub fn drop_below(&self, min_degree: u32) -> Self {
        ThetaSeries {
            dim: self.dim,
            max_degree: self.max_degree,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total_degree() >= min_degree as i64)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Part that is even in every variable separately.
    pub fn even_part(&self) -> Self {
        ThetaSeries {
            dim: self.dim,
            max_degree: self.max_degree,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.as_slice().iter().all(|p| p % 2 == 0))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// `log(1 + s) = Σ_{m≥1} (−1)^{m+1} s^m / m`, truncated.
    pub fn log1p(&self) -> Result<Self, AlgebraError> {
        let c0 = self.constant_term();
        if !c0.is_zero() {
            return Err(AlgebraError::NonzeroConstantTerm(c0.to_string()));
        }
        let mut out = ThetaSeries::zero(self.dim, self.max_degree);
        let mut power = self.clone();
        let mut m: i64 = 1;
        while !power.is_zero() {
            let sign = if m % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale_rational(&Rational::new(sign.into(), m.into())));
            power = power.mul(self);
            m += 1;
        }
        Ok(out)
    }

    /// `1/s` via the geometric series around the constant term.
    pub fn reciprocal(&self) -> Result<Self, AlgebraError> {
        let c0 = self.constant_term();
        let inv = c0.inv().ok_or(AlgebraError::NotInvertible)?;
        let one = ThetaSeries::one(self.dim, self.max_degree);
        let y = self.scale(&inv).sub(&one);
        let neg_y = y.neg();
        let mut out = one.clone();
        let mut power = neg_y.clone();
        while !power.is_zero() {
            out = out.add(&power);
            power = power.mul(&neg_y);
        }
        Ok(out.scale(&inv))
    }

    /// `∂²/∂θ_axis²`; the truncation drops by two.
    pub fn second_partial(&self, axis: usize) -> Result<Self, AlgebraError> {
        if axis >= self.dim {
            return Err(AlgebraError::AxisOutOfRange {
                axis,
                dim: self.dim,
            });
        }
        if self.max_degree < 2 {
            return Err(AlgebraError::InsufficientTruncation {
                have: self.max_degree,
                need: 2,
            });
        }
        let mut out = ThetaSeries::zero(self.dim, self.max_degree - 2);
        for (e, c) in &self.terms {
            let p = e[axis];
            if p >= 2 {
                let mut v = e.as_slice().to_vec();
                v[axis] -= 2;
                let f = Rational::from(BigInt::from(p as i64 * (p as i64 - 1)));
                out.add_term(ExponentVector::new(v), c.scale(&f));
            }
        }
        Ok(out)
    }

    /// Matrix of second partials at θ = 0, read off the degree-2 coefficients
    /// (off-diagonal ×1, diagonal ×2).
    pub fn second_partials_at_zero(&self) -> Result<Vec<Vec<GaussianRational>>, AlgebraError> {
        if self.max_degree < 2 {
            return Err(AlgebraError::InsufficientTruncation {
                have: self.max_degree,
                need: 2,
            });
        }
        let d = self.dim;
        let mut m = vec![vec![GaussianRational::zero(); d]; d];
        for (j, row) in m.iter_mut().enumerate() {
            for (k, entry) in row.iter_mut().enumerate() {
                let mut e = vec![0; d];
                e[j] += 1;
                e[k] += 1;
                let c = self.coefficient(&ExponentVector::new(e));
                *entry = if j == k {
                    c.scale(&Rational::from(BigInt::from(2)))
                } else {
                    c
                };
            }
        }
        Ok(m)
    }
}

/// Ascending graded-lex order, variables `θ1 … θd`, complex coefficients
/// in parentheses.
impl fmt::Display for ThetaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono = fmt_monomial(e, |k| format!("θ{}", k + 1));
                let coeff = if c.is_real() {
                    c.to_string()
                } else {
                    format!("({})", c)
                };
                if mono.is_empty() {
                    coeff
                } else if c.is_one() {
                    mono
                } else {
                    format!("{}*{}", coeff, mono)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
