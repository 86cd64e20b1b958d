//! Formal products `prod b_i^(e_i)` with rational exponents.
//!
//! Quantities like `dim(C)^(1/2) / FPdim(X)` are kept in this form so that
//! integrality can be decided on an integral power, where every factor is
//! exact again.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use super::Scalar;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerProduct {
    factors: Vec<(Scalar, Ratio<i64>)>,
}

impl PowerProduct {
    pub fn one() -> Self {
        PowerProduct { factors: Vec::new() }
    }

    pub fn of(base: Scalar) -> Self {
        PowerProduct::one().with(base, Ratio::one())
    }

    pub fn power_of(base: Scalar, exponent: Ratio<i64>) -> Self {
        PowerProduct::one().with(base, exponent)
    }

    /// Multiplies by `base^exponent`, merging equal bases.
    pub fn with(mut self, base: Scalar, exponent: Ratio<i64>) -> Self {
        if exponent.is_zero() || base == Scalar::one() {
            return self;
        }
        if let Some(slot) = self.factors.iter_mut().find(|(b, _)| *b == base) {
            slot.1 += exponent;
        } else {
            self.factors.push((base, exponent));
        }
        self.factors.retain(|(_, e)| !e.is_zero());
        self
    }

    pub fn factors(&self) -> &[(Scalar, Ratio<i64>)] {
        &self.factors
    }

    pub fn times(&self, other: &PowerProduct) -> PowerProduct {
        other.factors.iter().fold(self.clone(), |acc, (b, e)| acc.with(b.clone(), *e))
    }

    pub fn over(&self, other: &PowerProduct) -> PowerProduct {
        other.factors.iter().fold(self.clone(), |acc, (b, e)| acc.with(b.clone(), -*e))
    }

    pub fn pow(&self, exponent: Ratio<i64>) -> PowerProduct {
        let factors = self
            .factors
            .iter()
            .map(|(b, e)| (b.clone(), e * exponent))
            .filter(|(_, e)| !e.is_zero())
            .collect();
        PowerProduct { factors }
    }

    /// Least common denominator of the exponents.
    pub fn denominator(&self) -> i64 {
        self.factors.iter().fold(1, |acc, (_, e)| acc.lcm(e.denom()))
    }

    pub fn has_integral_exponents(&self) -> bool {
        self.denominator() == 1
    }

    /// `self^q` evaluated; exact when `q` clears every exponent denominator
    /// and the bases are exact.
    pub fn power(&self, q: i64) -> Result<Scalar> {
        self.pow(Ratio::from_integer(q)).eval()
    }

    pub fn eval(&self) -> Result<Scalar> {
        let mut acc = Scalar::one();
        for (b, e) in &self.factors {
            acc = acc.mul_ref(&b.pow_ratio(e)?);
        }
        Ok(acc)
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(b, e)| {
                let base = match b {
                    Scalar::Rational(r) if r.is_integer() && *r >= num_rational::BigRational::zero() => b.render(),
                    _ => format!("({})", b.render()),
                };
                if e.is_one() {
                    base
                } else if e.is_integer() {
                    format!("{base}^{}", e.numer())
                } else {
                    format!("{base}^({}/{})", e.numer(), e.denom())
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}
