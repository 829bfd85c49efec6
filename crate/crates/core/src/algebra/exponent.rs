use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `(i_1, …, i_d)` of a monomial `z_1^{i_1}⋯z_d^{i_d}`.
///
/// Entries are signed so the same type serves Laurent monomials and the
/// non-negative exponents of θ-series. Ordering is graded lexicographic:
/// total degree first, ties broken lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<i32>);

impl ExponentVector {
    pub fn new(exps: Vec<i32>) -> Self {
        ExponentVector(exps)
    }

    pub fn zero(dim: usize) -> Self {
        ExponentVector(vec![0; dim])
    }

    pub fn unit(dim: usize, axis: usize, power: i32) -> Self {
        let mut v = vec![0; dim];
        v[axis] = power;
        ExponentVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise product with a sign vector: `i_k ↦ σ_k i_k`.
    pub fn flip(&self, signs: &[i32]) -> Self {
        ExponentVector(self.0.iter().zip(signs).map(|(e, s)| e * s).collect())
    }

    /// Drop coordinate `axis`.
    pub fn without(&self, axis: usize) -> Self {
        let mut v = self.0.clone();
        v.remove(axis);
        ExponentVector(v)
    }

    /// Insert `value` at coordinate `axis`.
    pub fn with_inserted(&self, axis: usize, value: i32) -> Self {
        let mut v = self.0.clone();
        v.insert(axis, value);
        ExponentVector(v)
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = i32;
    fn index(&self, i: usize) -> &i32 {
        &self.0[i]
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Variable names used by the canonical text form: `x, y, z` up to three
/// variables, `z1 … zd` beyond.
pub(crate) fn var_name(dim: usize, axis: usize) -> String {
    if dim <= 3 {
        ["x", "y", "z"][axis].to_string()
    } else {
        format!("z{}", axis + 1)
    }
}

pub(crate) fn fmt_monomial(e: &ExponentVector, name: impl Fn(usize) -> String) -> String {
    e.as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p != 0)
        .map(|(k, &p)| {
            if p == 1 {
                name(k)
            } else {
                format!("{}^{}", name(k), p)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = ExponentVector::new(vec![2, 0]);
        let b = ExponentVector::new(vec![0, 1]);
        let c = ExponentVector::new(vec![1, 1]);
        let d = ExponentVector::new(vec![-1, 0]);
        let mut v = vec![c.clone(), a.clone(), d.clone(), b.clone()];
        v.sort();
        assert_eq!(v, vec![d, b, c, a]);
    }
}
