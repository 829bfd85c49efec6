use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::exponent::{fmt_monomial, var_name};
use super::rational::fmt_rational;
use super::{AlgebraError, ExponentVector, Rational};

/// Sparse Laurent polynomial in `dim` variables with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    dim: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl LaurentPoly {
    pub fn zero(dim: usize) -> Self {
        LaurentPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        LaurentPoly::monomial(ExponentVector::zero(dim), c)
    }

    pub fn one(dim: usize) -> Self {
        LaurentPoly::constant(dim, Rational::one())
    }

    pub fn monomial(exps: ExponentVector, c: Rational) -> Self {
        let mut p = LaurentPoly::zero(exps.dim());
        p.add_term(exps, c);
        p
    }

    /// `z_axis^power`.
    pub fn var_pow(dim: usize, axis: usize, power: i32) -> Self {
        LaurentPoly::monomial(ExponentVector::unit(dim, axis, power), Rational::one())
    }

    pub fn var(dim: usize, axis: usize) -> Self {
        LaurentPoly::var_pow(dim, axis, 1)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = LaurentPoly::zero(dim);
        for (e, c) in terms {
            if e.dim() != dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: dim,
                    found: e.dim(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &ExponentVector) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exps: ExponentVector, c: Rational) {
        debug_assert_eq!(exps.dim(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero(self.dim);
        }
        LaurentPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one(self.dim);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `Σ coeff(i)·w^i` for a sign vector `w ∈ {±1}^d`.
    pub fn eval_signs(&self, w: &[i32]) -> Result<Rational, AlgebraError> {
        if w.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: w.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let odd = e
                .as_slice()
                .iter()
                .zip(w)
                .filter(|(&p, &s)| s < 0 && p.rem_euclid(2) == 1)
                .count();
            if odd % 2 == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        Ok(acc)
    }

    /// Value at `z = (1, …, 1)`.
    pub fn eval_ones(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }

    /// Substitutes `z_k ↦ z_k^{σ_k}`, i.e. every exponent `i_k` becomes `σ_k i_k`.
    pub fn apply_sign_map(&self, sigma: &[i32]) -> Result<Self, AlgebraError> {
        if sigma.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: sigma.len(),
            });
        }
        let mut out = LaurentPoly::zero(self.dim);
        for (e, c) in &self.terms {
            out.add_term(e.flip(sigma), c.clone());
        }
        Ok(out)
    }

    /// Keeps the terms whose exponent vector satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&ExponentVector) -> bool) -> Self {
        LaurentPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.as_slice().iter().all(|&p| p >= 0))
    }

    /// Formal partial derivative with respect to `z_axis`.
    pub fn partial(&self, axis: usize) -> Self {
        let mut out = LaurentPoly::zero(self.dim);
        for (e, c) in &self.terms {
            let p = e[axis];
            if p != 0 {
                let mut v = e.as_slice().to_vec();
                v[axis] -= 1;
                out.add_term(ExponentVector::new(v), c * Rational::from(BigInt::from(p)));
            }
        }
        out
    }

    /// Embeds into `dim + 1` variables by inserting a new variable at `axis`
    /// with exponent zero.
    pub fn insert_variable(&self, axis: usize) -> Self {
        LaurentPoly {
            dim: self.dim + 1,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.with_inserted(axis, 0), c.clone()))
                .collect(),
        }
    }

    /// Mapping over all exponent vectors; coefficients of colliding images add.
    pub fn map_exponents(&self, dim: usize, f: impl Fn(&ExponentVector) -> ExponentVector) -> Self {
        let mut out = LaurentPoly::zero(dim);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Canonical text with caller-chosen variable names.
    pub fn to_string_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = fmt_monomial(e, &name);
            if mono.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_rational(&mag));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

/// Terms in descending graded-lex order, `num/den` coefficients,
/// variables `x, y, z` (or `z1 … zd` for d > 3).
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dim = self.dim;
        write!(f, "{}", self.to_string_with(|k| var_name(dim, k)))
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let mut out = LaurentPoly::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
