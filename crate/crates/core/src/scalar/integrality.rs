//! Layered algebraic-integrality decisions.
//!
//! 1. rationals: denominator 1;
//! 2. quadratic irrationals: integer minimal polynomial;
//! 3. intervals with a Galois-stable superset of conjugates: the product
//!    `prod (x - w)` has all coefficients within tolerance of integers;
//! 4. otherwise: within tolerance of an integer, or no verdict.
//!
//! Only steps 1 and 2 can answer "not integral".

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::power::PowerProduct;
use super::{tolerance_bits, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IntegralityTier {
    IntegralExact,
    IntegralOrbit,
    IntegralHeuristic,
    NotIntegral,
    Indeterminate,
}

impl IntegralityTier {
    pub fn is_integral(self) -> Option<bool> {
        match self {
            IntegralityTier::IntegralExact | IntegralityTier::IntegralOrbit | IntegralityTier::IntegralHeuristic => {
                Some(true)
            }
            IntegralityTier::NotIntegral => Some(false),
            IntegralityTier::Indeterminate => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            IntegralityTier::IntegralExact => "INTEGRAL_EXACT",
            IntegralityTier::IntegralOrbit => "INTEGRAL_ORBIT",
            IntegralityTier::IntegralHeuristic => "INTEGRAL_HEURISTIC",
            IntegralityTier::NotIntegral => "NOT_INTEGRAL",
            IntegralityTier::Indeterminate => "INDETERMINATE",
        }
    }
}

impl fmt::Display for IntegralityTier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A tier together with the monic polynomial that justifies it, if any.
/// Coefficients run from the leading term down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityVerdict {
    pub tier: IntegralityTier,
    pub witness: Option<Vec<BigInt>>,
}

impl IntegralityVerdict {
    fn bare(tier: IntegralityTier) -> Self {
        IntegralityVerdict { tier, witness: None }
    }

    pub fn is_integral(&self) -> Option<bool> {
        self.tier.is_integral()
    }

    pub fn witness_string(&self) -> Option<String> {
        self.witness.as_deref().map(render_polynomial)
    }
}

/// Renders integer coefficients (leading first) as `x^2 - 5*x + 5`.
pub fn render_polynomial(coeffs: &[BigInt]) -> String {
    let deg = coeffs.len().saturating_sub(1);
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        let power = deg - i;
        if c.is_zero() && !(power == 0 && out.is_empty()) {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let var = match power {
            0 => String::new(),
            1 => "x".to_string(),
            k => format!("x^{k}"),
        };
        if var.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&format!("{mag}*{var}"));
        }
    }
    out
}

/// Coefficients of `prod (x - w)`, leading coefficient first.
pub fn orbit_product_polynomial(values: &[Scalar]) -> Vec<Scalar> {
    let mut coeffs = vec![Scalar::one()];
    for w in values {
        let mut next = coeffs.clone();
        next.push(Scalar::zero());
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].sub_ref(&c.mul_ref(w));
        }
        coeffs = next;
    }
    coeffs
}

fn integer_of(r: &BigRational) -> Option<BigInt> {
    r.is_integer().then(|| r.numer().clone())
}

/// Nearest integer to an enclosure lying within the tolerance, if any.
fn certified_integer(c: &Scalar) -> Option<BigInt> {
    match c {
        Scalar::Rational(r) => integer_of(r),
        Scalar::Quadratic(_) => None,
        Scalar::Interval(b) => {
            let k = b.nearest_integer();
            b.within_of_integer(&k, tolerance_bits(b.precision())).then_some(k)
        }
    }
}

pub fn is_algebraic_integer(v: &Scalar, conjugate_superset: Option<&[Scalar]>) -> IntegralityVerdict {
    match v {
        Scalar::Rational(r) => match integer_of(r) {
            Some(k) => IntegralityVerdict {
                tier: IntegralityTier::IntegralExact,
                witness: Some(vec![BigInt::one(), -k]),
            },
            None => IntegralityVerdict::bare(IntegralityTier::NotIntegral),
        },
        Scalar::Quadratic(q) => {
            let t = q.trace();
            let n = q.norm();
            match (integer_of(&t), integer_of(&n)) {
                (Some(t), Some(n)) => IntegralityVerdict {
                    tier: IntegralityTier::IntegralExact,
                    witness: Some(vec![BigInt::one(), -t, n]),
                },
                _ => IntegralityVerdict::bare(IntegralityTier::NotIntegral),
            }
        }
        Scalar::Interval(b) => {
            if let Some(superset) = conjugate_superset.filter(|s| !s.is_empty()) {
                let coeffs: Option<Vec<BigInt>> =
                    orbit_product_polynomial(superset).iter().map(certified_integer).collect();
                if let Some(coeffs) = coeffs {
                    return IntegralityVerdict { tier: IntegralityTier::IntegralOrbit, witness: Some(coeffs) };
                }
            }
            let k = b.nearest_integer();
            if b.within_of_integer(&k, tolerance_bits(b.precision())) {
                IntegralityVerdict::bare(IntegralityTier::IntegralHeuristic)
            } else {
                IntegralityVerdict::bare(IntegralityTier::Indeterminate)
            }
        }
    }
}

/// Whether `alpha / beta` is an algebraic integer. The superset, when given,
/// lists conjugate pairs `(beta', alpha')`.
pub fn divides(
    beta: &Scalar,
    alpha: &Scalar,
    conjugate_superset: Option<&[(Scalar, Scalar)]>,
) -> Result<IntegralityVerdict> {
    if beta.zero_test() == super::Equality::Equal {
        return Err(Error::DivisionByZero);
    }
    let quotient = alpha.div_ref(beta)?;
    let superset: Option<Vec<Scalar>> =
        conjugate_superset.and_then(|pairs| pairs.iter().map(|(b, a)| a.div_ref(b).ok()).collect());
    Ok(is_algebraic_integer(&quotient, superset.as_deref()))
}

/// `P(x^q)` for `P` given leading coefficient first.
pub fn compose_power(coeffs: &[BigInt], q: usize) -> Vec<BigInt> {
    if q <= 1 {
        return coeffs.to_vec();
    }
    let deg = coeffs.len() - 1;
    let mut out = vec![BigInt::zero(); deg * q + 1];
    for (i, c) in coeffs.iter().enumerate() {
        out[i * q] = c.clone();
    }
    out
}

/// Integrality of a power product. With `q` the common exponent
/// denominator, `v` is integral iff `v^q` is, and a witness `P` for `v^q`
/// gives the witness `P(x^q)` for `v`.
pub fn power_is_integral(
    value: &PowerProduct,
    conjugate_superset: Option<&[PowerProduct]>,
) -> Result<IntegralityVerdict> {
    let q = conjugate_superset
        .unwrap_or_default()
        .iter()
        .fold(value.denominator(), |acc, p| num_integer::lcm(acc, p.denominator()));
    let vq = value.power(q)?;
    let superset: Option<Vec<Scalar>> = match conjugate_superset {
        Some(s) => Some(s.iter().map(|p| p.power(q)).collect::<Result<_>>()?),
        None => None,
    };
    let mut verdict = is_algebraic_integer(&vq, superset.as_deref());
    verdict.witness = verdict.witness.map(|w| compose_power(&w, q as usize));
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_scalar, with_precision};
    use num_rational::Ratio;

    fn s(text: &str) -> Scalar {
        parse_scalar(text).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn exact_layers() {
        let phi = is_algebraic_integer(&s("(1+sqrt(5))/2"), None);
        assert_eq!(phi.tier, IntegralityTier::IntegralExact);
        assert_eq!(phi.witness_string().unwrap(), "x^2 - x - 1");
        assert_eq!(is_algebraic_integer(&s("1/2"), None).tier, IntegralityTier::NotIntegral);
        let v = is_algebraic_integer(&s("(5-sqrt(5))/2"), None);
        assert_eq!(v.witness, Some(ints(&[1, -5, 5])));
        assert_eq!(is_algebraic_integer(&s("sqrt(5)/2"), None).tier, IntegralityTier::NotIntegral);
        assert_eq!(is_algebraic_integer(&s("(1+sqrt(-3))/2"), None).tier, IntegralityTier::IntegralExact);
    }

    #[test]
    fn divisibility_examples() {
        let v = divides(&s("sqrt(2)"), &s("2"), None).unwrap();
        assert_eq!(v.tier, IntegralityTier::IntegralExact);
        assert_eq!(divides(&s("2"), &s("1"), None).unwrap().tier, IntegralityTier::NotIntegral);
        let phi2 = s("(1+sqrt(5))/2").pow_i(2).unwrap();
        let v = divides(&phi2, &s("(5+sqrt(5))/2"), None).unwrap();
        assert_eq!(v.witness, Some(ints(&[1, -5, 5])));
        assert_eq!(divides(&Scalar::zero(), &s("1"), None), Err(Error::DivisionByZero));
    }

    #[test]
    fn orbit_products() {
        let c = orbit_product_polynomial(&[s("(1+sqrt(5))/2"), s("(1-sqrt(5))/2")]);
        assert_eq!(c, vec![s("1"), s("-1"), s("-1")]);
        assert_eq!(orbit_product_polynomial(&[s("0")]), vec![s("1"), s("0")]);
        assert_eq!(orbit_product_polynomial(&[s("2"), s("3")]), vec![s("1"), s("-5"), s("6")]);
    }

    #[test]
    fn orbit_tier_for_intervals() {
        // sqrt(2) + sqrt(3) has conjugates +-sqrt(2) +- sqrt(3); minimal polynomial x^4 - 10x^2 + 1.
        let conj: Vec<Scalar> = ["sqrt(2)+sqrt(3)", "sqrt(2)-sqrt(3)", "-sqrt(2)+sqrt(3)", "-sqrt(2)-sqrt(3)"]
            .iter()
            .map(|t| s(t))
            .collect();
        let v = is_algebraic_integer(&conj[0], Some(&conj));
        assert_eq!(v.tier, IntegralityTier::IntegralOrbit);
        assert_eq!(v.witness, Some(ints(&[1, 0, -10, 0, 1])));
        // halving breaks integrality; numerics may only abstain
        let halves: Vec<Scalar> = conj.iter().map(|c| c.div_ref(&s("2")).unwrap()).collect();
        let v = is_algebraic_integer(&halves[0], Some(&halves));
        assert_eq!(v.tier, IntegralityTier::Indeterminate);
    }

    #[test]
    fn near_integers_are_heuristic() {
        let v = s("(sqrt(2)+sqrt(3))*(sqrt(2)-sqrt(3))");
        assert!(!v.is_exact());
        assert_eq!(is_algebraic_integer(&v, None).tier, IntegralityTier::IntegralHeuristic);
    }

    #[test]
    fn fractional_powers_are_decided_on_integral_powers() {
        let d = s("(5+sqrt(5))/2");
        let root = PowerProduct::power_of(d, Ratio::new(1, 2));
        let v = power_is_integral(&root, None).unwrap();
        assert_eq!(v.tier, IntegralityTier::IntegralExact);
        assert_eq!(v.witness_string().unwrap(), "x^4 - 5*x^2 + 5");
        let half = PowerProduct::power_of(s("1/2"), Ratio::new(1, 3));
        assert_eq!(power_is_integral(&half, None).unwrap().tier, IntegralityTier::NotIntegral);
    }

    #[test]
    fn higher_precision_keeps_orbit_verdicts() {
        let texts = ["sqrt(2)+sqrt(3)", "sqrt(2)-sqrt(3)", "-sqrt(2)+sqrt(3)", "-sqrt(2)-sqrt(3)"];
        for prec in [64, 128, 256, 512] {
            with_precision(prec, || {
                let conj: Vec<Scalar> = texts.iter().map(|t| s(t)).collect();
                assert_eq!(is_algebraic_integer(&conj[1], Some(&conj)).tier, IntegralityTier::IntegralOrbit);
            });
        }
    }

    #[test]
    fn polynomial_rendering() {
        assert_eq!(render_polynomial(&ints(&[1, -3])), "x - 3");
        assert_eq!(render_polynomial(&ints(&[1, 0])), "x");
        assert_eq!(render_polynomial(&ints(&[1, 0, 2])), "x^2 + 2");
        assert_eq!(render_polynomial(&ints(&[0])), "0");
    }
}
