//! Exact constants `q·√m·π^{h/2}` with `q` rational and `m` a square-free
//! positive integer.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurdConstant {
    q: Rational,
    radicand: BigUint,
    pi_half_power: i32,
}

/// Writes `n = f²·m` with `m` square-free; returns `(f, m)`.
fn split_square(n: &BigUint) -> (BigUint, BigUint) {
    let mut f = BigUint::one();
    let mut m = BigUint::one();
    let mut rest = n.clone();
    let mut p = BigUint::from(2u32);
    let limit = BigUint::from(1_000_000u32);
    while &p * &p <= rest && p <= limit {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            m *= &p;
        }
        p += 1u32;
    }
    // Whatever remains has no factor below the limit: it is square-free
    // unless it is a perfect square of a larger prime.
    let r = rest.sqrt();
    if &r * &r == rest {
        f *= r;
    } else {
        m *= rest;
    }
    (f, m)
}

impl SurdConstant {
    /// `q·√radicand·π^{h/2}` in canonical form. `radicand` must be positive.
    pub fn new(q: Rational, radicand: Rational, pi_half_power: i32) -> Self {
        assert!(radicand.is_positive(), "radicand must be positive");
        if q.is_zero() {
            return SurdConstant::zero();
        }
        // √(a/b) = √(ab)/b
        let a = radicand.numer().magnitude().clone();
        let b = radicand.denom().magnitude().clone();
        let (f, m) = split_square(&(&a * &b));
        let q = q * Rational::new(BigInt::from(f), BigInt::from(b));
        SurdConstant {
            q,
            radicand: m,
            pi_half_power,
        }
    }

    pub fn rational(q: Rational) -> Self {
        SurdConstant::new(q, Rational::one(), 0)
    }

    pub fn zero() -> Self {
        SurdConstant {
            q: Rational::zero(),
            radicand: BigUint::one(),
            pi_half_power: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn coefficient(&self) -> &Rational {
        &self.q
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn pi_half_power(&self) -> i32 {
        self.pi_half_power
    }

    /// Sum when both share radicand and power of `π`; `None` otherwise.
    pub fn checked_add(&self, o: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(o.clone());
        }
        if o.is_zero() {
            return Some(self.clone());
        }
        if self.radicand != o.radicand || self.pi_half_power != o.pi_half_power {
            return None;
        }
        let q = &self.q + &o.q;
        if q.is_zero() {
            return Some(SurdConstant::zero());
        }
        Some(SurdConstant { q, ..self.clone() })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() || self.is_zero() {
            return SurdConstant::zero();
        }
        SurdConstant {
            q: &self.q * c,
            ..self.clone()
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return SurdConstant::zero();
        }
        let r = Rational::from_integer(BigInt::from(&self.radicand * &o.radicand));
        SurdConstant::new(
            &self.q * &o.q,
            r,
            self.pi_half_power + o.pi_half_power,
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1, 1))
    }

    pub fn to_f64(&self) -> f64 {
        self.q.to_f64().unwrap_or(f64::NAN)
            * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
            * std::f64::consts::PI.powf(self.pi_half_power as f64 / 2.0)
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn decimal(&self, digits: usize) -> String {
        format_significant(self.to_f64(), digits)
    }
}

/// `v` rounded to `digits` significant digits.
pub fn format_significant(v: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..=15).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{:.*e}", digits - 1, v)
    }
}

impl fmt::Display for SurdConstant {
    /// `4/π`, `605√6/(512π)`, `4√2·π^{-3/2}`, `-√6/(4π)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let sign = if self.q.is_negative() { "-" } else { "" };
        let num = self.q.numer().magnitude();
        let den = self.q.denom().magnitude();
        let root = if self.radicand.is_one() {
            String::new()
        } else {
            format!("√{}", self.radicand)
        };
        let top = match (num.is_one(), root.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => root,
            (false, _) => format!("{num}{root}"),
        };
        let h = self.pi_half_power;
        match h {
            0 if den.is_one() => write!(f, "{sign}{top}"),
            0 => write!(f, "{sign}{top}/{den}"),
            -2 if den.is_one() => write!(f, "{sign}{top}/π"),
            -2 => write!(f, "{sign}{top}/({den}π)"),
            _ => {
                let power = if h % 2 == 0 {
                    format!("{}", h / 2)
                } else {
                    format!("{h}/2")
                };
                if den.is_one() {
                    write!(f, "{sign}{top}·π^{{{power}}}")
                } else {
                    write!(f, "{sign}{top}/{den}·π^{{{power}}}")
                }
            }
        }
    }
}

/// JSON form `{q, radicand, piHalfPower}` with `q` as `"num/den"`.
impl Serialize for SurdConstant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SurdConstant", 3)?;
        st.serialize_field("q", &crate::algebra::fmt_rational(&self.q))?;
        st.serialize_field("radicand", &self.radicand.to_string())?;
        st.serialize_field("piHalfPower", &self.pi_half_power)?;
        st.end()
    }
}
