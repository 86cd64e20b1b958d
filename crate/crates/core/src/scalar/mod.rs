//! Exact rationals, exact quadratic irrationals, and certified complex balls.
//!
//! Arithmetic stays exact while both operands live in `Q` or in one common
//! field `Q(sqrt(d))` (with `d < 0` allowed, which covers the imaginary
//! quadratic values of small cyclic character tables). Anything else is
//! enclosed in a [`Ball`] at the working precision of the current thread.

pub mod ball;
pub mod integrality;
pub mod parse;
pub mod power;
pub mod quadratic;

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use ball::Ball;
pub use integrality::{
    compose_power, divides, is_algebraic_integer, orbit_product_polynomial, power_is_integral, render_polynomial,
    IntegralityTier, IntegralityVerdict,
};
pub use parse::{parse_expr, parse_scalar, Expr};
pub use power::PowerProduct;
pub use quadratic::{render_rational, squarefree_decomposition, Quadratic};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 256;
pub const MIN_PRECISION: u32 = 32;

thread_local! {
    static WORKING_PRECISION: Cell<u32> = const { Cell::new(DEFAULT_PRECISION) };
}

/// Precision in bits used when exact values have to be enclosed in balls.
pub fn working_precision() -> u32 {
    WORKING_PRECISION.with(|p| p.get())
}

/// Runs `f` with the working precision of this thread set to `bits`.
pub fn with_precision<R>(bits: u32, f: impl FnOnce() -> R) -> R {
    struct Restore(u32);
    impl Drop for Restore {
        fn drop(&mut self) {
            WORKING_PRECISION.with(|p| p.set(self.0));
        }
    }
    let bits = bits.max(MIN_PRECISION);
    let _restore = Restore(WORKING_PRECISION.with(|p| p.replace(bits)));
    f()
}

/// Exponent of the integrality tolerance `tau = 2^-(prec/2)`.
pub fn tolerance_bits(prec: u32) -> u32 {
    prec / 2
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Quadratic(Quadratic),
    Interval(Ball),
}

/// Outcome of comparing two scalars for equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Equality {
    /// Decided exactly.
    Equal,
    /// Enclosures overlap and are tighter than the tolerance.
    WithinRadius,
    Distinct,
    Indeterminate,
}

impl Equality {
    pub fn holds(self) -> Option<bool> {
        match self {
            Equality::Equal | Equality::WithinRadius => Some(true),
            Equality::Distinct => Some(false),
            Equality::Indeterminate => None,
        }
    }

    /// Conjunction keeping the weakest certainty.
    pub fn and(self, other: Equality) -> Equality {
        use Equality::*;
        match (self, other) {
            (Distinct, _) | (_, Distinct) => Distinct,
            (Indeterminate, _) | (_, Indeterminate) => Indeterminate,
            (WithinRadius, _) | (_, WithinRadius) => WithinRadius,
            _ => Equal,
        }
    }
}

/// Field of an exact operand: `None` for rationals.
enum Field {
    Q,
    Sqrt(i64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::Rational(BigRational::from_integer(n))
    }

    pub fn from_ratio(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(BigInt::from(p), BigInt::from(q))))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    /// `a + b*sqrt(n)` for an arbitrary nonzero integer `n`, normalized.
    pub fn quadratic(a: BigRational, b: BigRational, n: i64) -> Self {
        let (f, d) = squarefree_decomposition(n as i128);
        if b.is_zero() || n == 0 {
            return Scalar::Rational(a);
        }
        let b = b * BigRational::from_integer(BigInt::from(f));
        if d == 1 {
            return Scalar::Rational(a + b);
        }
        // |d| <= |n|, so the core fits back into an i64
        Scalar::Quadratic(Quadratic::new(a, b, d as i64))
    }

    /// Exact `sqrt(n)`; imaginary for negative `n`.
    pub fn sqrt_int(n: i64) -> Self {
        Scalar::quadratic(BigRational::zero(), BigRational::one(), n)
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Interval(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Scalar::Rational(_) => "exact-rational",
            Scalar::Quadratic(_) => "exact-quadratic",
            Scalar::Interval(_) => "interval",
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.numer().clone())
    }

    pub fn precision(&self) -> Option<u32> {
        match self {
            Scalar::Interval(b) => Some(b.precision()),
            _ => None,
        }
    }

    pub fn to_ball(&self, prec: u32) -> Ball {
        match self {
            Scalar::Rational(r) => Ball::from_ratio(r, prec),
            Scalar::Quadratic(q) => q.to_ball(prec),
            Scalar::Interval(b) => b.at_precision(prec.max(b.precision())),
        }
    }

    fn field(&self) -> Option<Field> {
        match self {
            Scalar::Rational(_) => Some(Field::Q),
            Scalar::Quadratic(q) => Some(Field::Sqrt(q.d())),
            Scalar::Interval(_) => None,
        }
    }

    fn parts(&self) -> (BigRational, BigRational) {
        match self {
            Scalar::Rational(r) => (r.clone(), BigRational::zero()),
            Scalar::Quadratic(q) => (q.a().clone(), q.b().clone()),
            Scalar::Interval(_) => unreachable!("parts of an interval"),
        }
    }

    fn from_parts(a: BigRational, b: BigRational, d: i64) -> Self {
        if b.is_zero() {
            Scalar::Rational(a)
        } else {
            Scalar::Quadratic(Quadratic::new(a, b, d))
        }
    }

    /// Common field of two exact operands, if any.
    fn common_field(&self, other: &Scalar) -> Option<Option<i64>> {
        match (self.field()?, other.field()?) {
            (Field::Q, Field::Q) => Some(None),
            (Field::Q, Field::Sqrt(d)) | (Field::Sqrt(d), Field::Q) => Some(Some(d)),
            (Field::Sqrt(d1), Field::Sqrt(d2)) if d1 == d2 => Some(Some(d1)),
            _ => None,
        }
    }

    fn ball_precision(&self, other: &Scalar) -> u32 {
        let p = working_precision();
        p.max(self.precision().unwrap_or(0)).max(other.precision().unwrap_or(0))
    }

    fn binary_balls(&self, other: &Scalar) -> (Ball, Ball) {
        let p = self.ball_precision(other);
        (self.to_ball(p), other.to_ball(p))
    }

    pub fn add_ref(&self, other: &Scalar) -> Scalar {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, other) {
            return Scalar::Rational(a + b);
        }
        match self.common_field(other) {
            Some(Some(d)) => {
                let (a1, b1) = self.parts();
                let (a2, b2) = other.parts();
                Scalar::from_parts(a1 + a2, b1 + b2, d)
            }
            _ => {
                let (a, b) = self.binary_balls(other);
                Scalar::Interval(a.add(&b))
            }
        }
    }

    pub fn sub_ref(&self, other: &Scalar) -> Scalar {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Quadratic(q) => Scalar::Quadratic(Quadratic::new(-q.a(), -q.b(), q.d())),
            Scalar::Interval(b) => Scalar::Interval(b.neg()),
        }
    }

    pub fn mul_ref(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => return Scalar::Rational(a * b),
            (Scalar::Rational(r), Scalar::Quadratic(q)) | (Scalar::Quadratic(q), Scalar::Rational(r)) => {
                return Scalar::from_parts(q.a() * r, q.b() * r, q.d());
            }
            (Scalar::Quadratic(x), Scalar::Quadratic(y)) => {
                if x.d() == y.d() {
                    let (a, b) = x.mul(y);
                    return Scalar::from_parts(a, b, x.d());
                }
                if x.a().is_zero() && y.a().is_zero() {
                    // b1 sqrt(d1) * b2 sqrt(d2) = b1 b2 sqrt(d1 d2)
                    let n = x.d() as i128 * y.d() as i128;
                    let (f, d) = squarefree_decomposition(n);
                    let coeff = x.b() * y.b() * BigRational::from_integer(BigInt::from(f));
                    if d == 1 {
                        return Scalar::Rational(coeff);
                    }
                    if d == -1 || i64::try_from(d).is_ok() {
                        return Scalar::from_parts(BigRational::zero(), coeff, d as i64);
                    }
                }
            }
            _ => {}
        }
        let (a, b) = self.binary_balls(other);
        Scalar::Interval(a.mul(&b))
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Quadratic(q) => {
                let (a, b) = q.inv();
                Ok(Scalar::from_parts(a, b, q.d()))
            }
            Scalar::Interval(b) => Ok(Scalar::Interval(b.inv()?)),
        }
    }

    pub fn div_ref(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_exact() && self.is_exact() && self.common_field(other).is_none() {
            // Quotients of pure radicals stay exact: a / (b sqrt(d)) = a sqrt(d) / (b d).
            if let Scalar::Quadratic(q) = other {
                if q.a().is_zero() {
                    let scale = (q.b() * BigRational::from_integer(BigInt::from(q.d()))).recip();
                    let num = self.mul_ref(&Scalar::sqrt_int(q.d()));
                    return Ok(num.mul_ref(&Scalar::Rational(scale)));
                }
            }
        }
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow_i(&self, k: i64) -> Result<Scalar> {
        if k < 0 {
            return self.inv()?.pow_i(-k);
        }
        if let Scalar::Interval(b) = self {
            return Ok(Scalar::Interval(b.pow_int(k)?));
        }
        let mut result = Scalar::one();
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        Ok(result)
    }

    /// `self^(p/q)`: the positive real `q`-th root of `self^p` for non-integral exponents.
    pub fn pow_ratio(&self, exponent: &num_rational::Ratio<i64>) -> Result<Scalar> {
        let (p, q) = (*exponent.numer(), *exponent.denom());
        if q == 1 {
            return self.pow_i(p);
        }
        if self.real_sign() != Some(Ordering::Greater) {
            return Err(Error::NegativeBase);
        }
        let q = u32::try_from(q).map_err(|_| Error::Input("exponent denominator too large".into()))?;
        let base = self.pow_i(p)?;
        if let Scalar::Rational(r) = &base {
            if let Some(root) = rational_root(r, q) {
                return Ok(Scalar::Rational(root));
            }
            if q == 2 {
                // sqrt(n/m) = sqrt(n m) / m
                let n = r.numer() * r.denom();
                if let Some(n) = n.to_i64() {
                    let inv_den = BigRational::new(BigInt::one(), r.denom().clone());
                    return Ok(Scalar::quadratic(BigRational::zero(), inv_den, n));
                }
            }
        }
        let prec = working_precision().max(base.precision().unwrap_or(0));
        Ok(Scalar::Interval(base.to_ball(prec).nth_root_real(q)?))
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Quadratic(q) if !q.is_real() => Scalar::Quadratic(q.galois_conjugate()),
            Scalar::Interval(b) => Scalar::Interval(b.conj()),
            other => other.clone(),
        }
    }

    pub fn re(&self) -> Scalar {
        match self {
            Scalar::Quadratic(q) if !q.is_real() => Scalar::Rational(q.a().clone()),
            Scalar::Interval(b) => Scalar::Interval(b.real_part()),
            other => other.clone(),
        }
    }

    pub fn im(&self) -> Scalar {
        match self {
            Scalar::Quadratic(q) if !q.is_real() => {
                Scalar::quadratic(BigRational::zero(), q.b().clone(), -q.d())
            }
            Scalar::Interval(b) => Scalar::Interval(b.imag_part()),
            _ => Scalar::zero(),
        }
    }

    /// `|z|^2`, exact for exact input.
    pub fn norm_sq(&self) -> Scalar {
        self.mul_ref(&self.conj())
    }

    /// `|z|`; exact for exact input.
    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            Scalar::Quadratic(q) if q.is_real() => {
                if q.real_sign() == Ordering::Less {
                    self.neg_ref()
                } else {
                    self.clone()
                }
            }
            Scalar::Quadratic(_) => {
                let n = self.norm_sq();
                n.pow_ratio(&num_rational::Ratio::new(1, 2)).unwrap_or(n)
            }
            Scalar::Interval(b) => Scalar::Interval(b.abs()),
        }
    }

    /// Known to be real: exact real values, or balls meeting the real axis.
    pub fn is_real(&self) -> Option<bool> {
        match self {
            Scalar::Rational(_) => Some(true),
            Scalar::Quadratic(q) => Some(q.is_real()),
            Scalar::Interval(b) => {
                if b.imag_part().contains_zero() {
                    let tol = tolerance_bits(b.precision());
                    if b.imag_part().within_of_integer(&BigInt::zero(), tol) {
                        Some(true)
                    } else {
                        None
                    }
                } else {
                    Some(false)
                }
            }
        }
    }

    /// Sign of the real part, when decidable. `None` for non-real exact
    /// values and for balls whose real part straddles zero.
    pub fn real_sign(&self) -> Option<Ordering> {
        match self {
            Scalar::Rational(r) => Some(r.cmp(&BigRational::zero())),
            Scalar::Quadratic(q) if q.is_real() => Some(q.real_sign()),
            Scalar::Quadratic(_) => None,
            Scalar::Interval(b) => {
                if self.is_real() != Some(true) {
                    return None;
                }
                let re = b.real_part();
                if re.contains_zero() {
                    if re.within_of_integer(&BigInt::zero(), tolerance_bits(b.precision())) {
                        Some(Ordering::Equal)
                    } else {
                        None
                    }
                } else if re.mid_re().is_positive() {
                    Some(Ordering::Greater)
                } else {
                    Some(Ordering::Less)
                }
            }
        }
    }

    pub fn is_positive_real(&self) -> Option<bool> {
        match self.is_real() {
            Some(false) => Some(false),
            None => None,
            Some(true) => self.real_sign().map(|s| s == Ordering::Greater),
        }
    }

    pub fn compare_eq(&self, other: &Scalar) -> Equality {
        if self.is_exact() && other.is_exact() {
            return if self == other { Equality::Equal } else { Equality::Distinct };
        }
        let (a, b) = self.binary_balls(other);
        if !a.overlaps(&b) {
            return Equality::Distinct;
        }
        let diff = a.sub(&b);
        if diff.within_of_integer(&BigInt::zero(), tolerance_bits(diff.precision())) {
            Equality::WithinRadius
        } else {
            Equality::Indeterminate
        }
    }

    pub fn zero_test(&self) -> Equality {
        self.compare_eq(&Scalar::zero())
    }

    /// Definitely nonzero.
    pub fn is_nonzero(&self) -> bool {
        self.zero_test() == Equality::Distinct
    }

    pub fn approx(&self) -> (f64, f64) {
        match self {
            Scalar::Rational(r) => (r.to_f64().unwrap_or(f64::NAN), 0.0),
            Scalar::Quadratic(q) => {
                let a = q.a().to_f64().unwrap_or(f64::NAN);
                let b = q.b().to_f64().unwrap_or(f64::NAN);
                let r = (q.d().unsigned_abs() as f64).sqrt();
                if q.is_real() {
                    (a + b * r, 0.0)
                } else {
                    (a, b * r)
                }
            }
            Scalar::Interval(b) => b.approx(),
        }
    }

    pub fn approx_abs(&self) -> f64 {
        let (x, y) = self.approx();
        x.hypot(y)
    }

    /// Upper bound on `|self|`; zero only for an exact zero.
    pub fn magnitude_upper(&self) -> f64 {
        match self {
            Scalar::Interval(b) => b.magnitude_upper_f64(),
            _ => self.approx_abs(),
        }
    }

    /// Total order used for deterministic sorting: real part, then imaginary part.
    pub fn lex_cmp(&self, other: &Scalar) -> Ordering {
        if self.compare_eq(other).holds() == Some(true) {
            return Ordering::Equal;
        }
        let by_part = |x: Scalar, y: Scalar| -> Ordering {
            let d = x.sub_ref(&y);
            match d.real_sign() {
                Some(s) => s,
                None => {
                    let (a, _) = x.approx();
                    let (b, _) = y.approx();
                    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
                }
            }
        };
        match by_part(self.re(), other.re()) {
            Ordering::Equal => by_part(self.im(), other.im()),
            o => o,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Scalar::Rational(r) => render_rational(r),
            Scalar::Quadratic(q) => q.render(),
            Scalar::Interval(b) => b.render(),
        }
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
        items.into_iter().fold(Scalar::zero(), |acc, x| acc.add_ref(x))
    }
}

fn rational_root(r: &BigRational, q: u32) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().nth_root(q);
    let d = r.denom().nth_root(q);
    if num_traits::pow(n.clone(), q as usize) == *r.numer() && num_traits::pow(d.clone(), q as usize) == *r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Serialized as its rendering: a grammar expression when exact, a
/// midpoint with radius otherwise.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_bigint(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$inner(rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$inner(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$inner(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn phi() -> Scalar {
        parse_scalar("(1+sqrt(5))/2").unwrap()
    }

    #[test]
    fn golden_ratio_squared() {
        assert_eq!(phi().mul_ref(&phi()), parse_scalar("(3+sqrt(5))/2").unwrap());
    }

    #[test]
    fn two_over_root_two() {
        let r = Scalar::from_int(2).div_ref(&Scalar::sqrt_int(2)).unwrap();
        assert_eq!(r, Scalar::sqrt_int(2));
    }

    #[test]
    fn mixed_radicals_become_intervals() {
        let x = Scalar::sqrt_int(2).add_ref(&Scalar::sqrt_int(3));
        assert!(!x.is_exact());
        let y = Scalar::sqrt_int(2).mul_ref(&Scalar::sqrt_int(3));
        assert_eq!(y, Scalar::sqrt_int(6));
    }

    #[test]
    fn division_of_radicals_in_different_fields() {
        let r = Scalar::sqrt_int(6).div_ref(&Scalar::sqrt_int(2)).unwrap();
        assert_eq!(r, Scalar::sqrt_int(3));
    }

    #[test]
    fn square_root_of_codegree_is_an_interval() {
        let x = parse_scalar("(5+sqrt(5))/2").unwrap();
        let r = x.pow_ratio(&Ratio::new(1, 2)).unwrap();
        assert!(!r.is_exact());
        let back = r.mul_ref(&r);
        assert_eq!(back.compare_eq(&x), Equality::WithinRadius);
        assert!((r.approx().0 - 1.902_113_032_590_307).abs() < 1e-12);
    }

    #[test]
    fn rational_square_roots_stay_exact() {
        let r = Scalar::from_ratio(8, 3).unwrap().pow_ratio(&Ratio::new(1, 2)).unwrap();
        assert_eq!(r.mul_ref(&r), Scalar::from_ratio(8, 3).unwrap());
        assert!(r.is_exact());
    }

    #[test]
    fn negative_base_rejected() {
        assert_eq!(Scalar::from_int(-2).pow_ratio(&Ratio::new(1, 2)), Err(Error::NegativeBase));
    }

    #[test]
    fn imaginary_parts() {
        let w = parse_scalar("(-1+sqrt(-3))/2").unwrap();
        assert_eq!(w.re(), Scalar::from_ratio(-1, 2).unwrap());
        assert_eq!(w.im(), parse_scalar("sqrt(3)/2").unwrap());
        assert_eq!(w.abs(), Scalar::one());
        assert_eq!(w.pow_i(3).unwrap(), Scalar::one());
    }

    #[test]
    fn precision_scope_restores() {
        let before = working_precision();
        with_precision(96, || assert_eq!(working_precision(), 96));
        assert_eq!(working_precision(), before);
    }
}
