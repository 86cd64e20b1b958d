//! Complex midpoint-radius balls over fixed-point dyadics.
//!
//! A ball at precision `p` stores integers `re`, `im`, `rad` and denotes the
//! closed disk of centre `(re + i*im) / 2^p` and radius `rad / 2^p`. Every
//! operation returns a ball containing all results of the operation applied to
//! points of its inputs.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ball {
    re: BigInt,
    im: BigInt,
    rad: BigInt,
    prec: u32,
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k as usize
}

/// Floor of `x / 2^k` together with an inexactness flag.
fn shr_floor(x: &BigInt, k: u32) -> (BigInt, bool) {
    if k == 0 {
        return (x.clone(), false);
    }
    let q = x >> k as usize;
    let inexact = &q << k as usize != *x;
    (q, inexact)
}

/// Ceiling of `x / 2^k` for nonnegative `x`.
fn shr_ceil(x: &BigInt, k: u32) -> BigInt {
    let (q, inexact) = shr_floor(x, k);
    if inexact {
        q + 1
    } else {
        q
    }
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

fn bigint_to_f64_scaled(x: &BigInt, prec: u32) -> f64 {
    // x / 2^prec without overflowing the f64 range on the way.
    let bits = x.bits() as i64;
    let shift = (bits - 60).max(0) as u32;
    let top = (x >> shift as usize).to_f64().unwrap_or(0.0);
    top * 2f64.powi(shift as i32 - prec as i32)
}

impl Ball {
    pub fn zero(prec: u32) -> Self {
        Ball { re: BigInt::zero(), im: BigInt::zero(), rad: BigInt::zero(), prec }
    }

    pub fn from_parts(re: BigInt, im: BigInt, rad: BigInt, prec: u32) -> Self {
        debug_assert!(!rad.is_negative());
        Ball { re, im, rad, prec }
    }

    pub fn from_integer(n: &BigInt, prec: u32) -> Self {
        Ball { re: n << prec as usize, im: BigInt::zero(), rad: BigInt::zero(), prec }
    }

    pub fn from_ratio(r: &BigRational, prec: u32) -> Self {
        let num = r.numer() << prec as usize;
        let (q, rem) = num.div_mod_floor(r.denom());
        let rad = if rem.is_zero() { BigInt::zero() } else { BigInt::one() };
        Ball { re: q, im: BigInt::zero(), rad, prec }
    }

    /// Enclosure of `sqrt(n)`; imaginary for negative `n`.
    pub fn sqrt_of_integer(n: &BigInt, prec: u32) -> Self {
        let m = n.abs() << (2 * prec) as usize;
        let s = m.sqrt();
        let rad = if &s * &s == m { BigInt::zero() } else { BigInt::one() };
        if n.is_negative() {
            Ball { re: BigInt::zero(), im: s, rad, prec }
        } else {
            Ball { re: s, im: BigInt::zero(), rad, prec }
        }
    }

    /// Ball centred at a double-precision complex number with zero radius.
    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        let conv = |x: f64| -> BigInt {
            if x == 0.0 || !x.is_finite() {
                return BigInt::zero();
            }
            let scaled = BigInt::from((x * 2f64.powi(52)) as i128);
            if prec >= 52 {
                scaled << (prec - 52) as usize
            } else {
                scaled >> (52 - prec) as usize
            }
        };
        Ball { re: conv(re), im: conv(im), rad: BigInt::zero(), prec }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn mid_re(&self) -> &BigInt {
        &self.re
    }

    pub fn mid_im(&self) -> &BigInt {
        &self.im
    }

    pub fn radius_units(&self) -> &BigInt {
        &self.rad
    }

    /// Same centre, zero radius.
    pub fn midpoint(&self) -> Self {
        Ball { re: self.re.clone(), im: self.im.clone(), rad: BigInt::zero(), prec: self.prec }
    }

    pub fn with_radius_units(&self, rad: BigInt) -> Self {
        Ball { re: self.re.clone(), im: self.im.clone(), rad, prec: self.prec }
    }

    pub fn is_point(&self) -> bool {
        self.rad.is_zero()
    }

    /// Re-express at precision `prec`, rounding outward when lowering.
    pub fn at_precision(&self, prec: u32) -> Self {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let k = (prec - self.prec) as usize;
                Ball { re: &self.re << k, im: &self.im << k, rad: &self.rad << k, prec }
            }
            Ordering::Less => {
                let k = self.prec - prec;
                let (re, e1) = shr_floor(&self.re, k);
                let (im, e2) = shr_floor(&self.im, k);
                let rad = shr_ceil(&self.rad, k) + (e1 as u8 + e2 as u8);
                Ball { re, im, rad, prec }
            }
        }
    }

    fn align(a: &Ball, b: &Ball) -> (Ball, Ball) {
        let p = a.prec.max(b.prec);
        (a.at_precision(p), b.at_precision(p))
    }

    pub fn add(&self, other: &Ball) -> Ball {
        let (a, b) = Ball::align(self, other);
        Ball { re: a.re + b.re, im: a.im + b.im, rad: a.rad + b.rad, prec: a.prec }
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        let (a, b) = Ball::align(self, other);
        Ball { re: a.re - b.re, im: a.im - b.im, rad: a.rad + b.rad, prec: a.prec }
    }

    pub fn neg(&self) -> Ball {
        Ball { re: -&self.re, im: -&self.im, rad: self.rad.clone(), prec: self.prec }
    }

    pub fn conj(&self) -> Ball {
        Ball { re: self.re.clone(), im: -&self.im, rad: self.rad.clone(), prec: self.prec }
    }

    /// Upper bound on `|mid|` in units.
    fn mid_mag_upper(&self) -> BigInt {
        self.re.abs() + self.im.abs()
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        let (a, b) = Ball::align(self, other);
        let p = a.prec;
        let re_full = &a.re * &b.re - &a.im * &b.im;
        let im_full = &a.re * &b.im + &a.im * &b.re;
        let (re, e1) = shr_floor(&re_full, p);
        let (im, e2) = shr_floor(&im_full, p);
        let mut rad = BigInt::zero();
        if !(a.rad.is_zero() && b.rad.is_zero()) {
            let full = a.mid_mag_upper() * &b.rad + b.mid_mag_upper() * &a.rad + &a.rad * &b.rad;
            rad = shr_ceil(&full, p);
        }
        rad += e1 as u8 + e2 as u8;
        Ball { re, im, rad, prec: p }
    }

    pub fn mul_integer(&self, k: &BigInt) -> Ball {
        Ball { re: &self.re * k, im: &self.im * k, rad: &self.rad * k.abs(), prec: self.prec }
    }

    /// Squared modulus of the midpoint, in units squared.
    fn mid_norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn contains_zero(&self) -> bool {
        self.mid_norm() <= &self.rad * &self.rad
    }

    pub fn inv(&self) -> Result<Ball> {
        let p = self.prec;
        let norm = self.mid_norm();
        if norm.is_zero() {
            return Err(if self.rad.is_zero() { Error::DivisionByZero } else { Error::IndeterminateDivision });
        }
        let lower = norm.sqrt();
        if lower <= self.rad {
            return Err(Error::IndeterminateDivision);
        }
        let scale = pow2(2 * p);
        let (re, r1) = (&self.re * &scale).div_mod_floor(&norm);
        let (im, r2) = (-&self.im * &scale).div_mod_floor(&norm);
        let mut rad = BigInt::from((!r1.is_zero()) as u8 + (!r2.is_zero()) as u8);
        if !self.rad.is_zero() {
            let den = &lower * (&lower - &self.rad);
            rad += ceil_div(&(&self.rad * &scale), &den);
        }
        Ok(Ball { re, im, rad, prec: p })
    }

    pub fn div(&self, other: &Ball) -> Result<Ball> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow_int(&self, k: i64) -> Result<Ball> {
        if k < 0 {
            return self.inv()?.pow_int(-k);
        }
        let mut result = Ball::from_integer(&BigInt::one(), self.prec);
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Real part as a ball; valid for every point of the disk.
    pub fn real_part(&self) -> Ball {
        Ball { re: self.re.clone(), im: BigInt::zero(), rad: self.rad.clone(), prec: self.prec }
    }

    pub fn imag_part(&self) -> Ball {
        Ball { re: self.im.clone(), im: BigInt::zero(), rad: self.rad.clone(), prec: self.prec }
    }

    /// Positive `q`-th root of a value known to be real and positive.
    pub fn nth_root_real(&self, q: u32) -> Result<Ball> {
        if q == 0 {
            return Err(Error::Input("zeroth root".into()));
        }
        if q == 1 {
            return Ok(self.real_part());
        }
        let p = self.prec;
        let low = &self.re - &self.rad;
        if !low.is_positive() {
            return Err(Error::NegativeBase);
        }
        let shift = (p as usize) * (q as usize - 1);
        let root = |x: &BigInt| -> BigInt { (x << shift).nth_root(q) };
        let mid = root(&self.re);
        let exact_mid = num_traits::pow(mid.clone(), q as usize) == (&self.re << shift);
        let mut rad = BigInt::from((!exact_mid) as u8);
        if !self.rad.is_zero() {
            let lower = root(&low);
            if lower.is_zero() {
                return Err(Error::NegativeBase);
            }
            let num = &self.rad << shift;
            let den = num_traits::pow(lower, q as usize - 1) * BigInt::from(q);
            rad += ceil_div(&num, &den);
        }
        Ok(Ball { re: mid, im: BigInt::zero(), rad, prec: p })
    }

    pub fn sqrt_real(&self) -> Result<Ball> {
        self.nth_root_real(2)
    }

    /// Enclosure of `|z|` as a real ball.
    pub fn abs(&self) -> Ball {
        let p = self.prec;
        let norm = self.mid_norm();
        let s = norm.sqrt();
        let exact = &s * &s == norm;
        // |  |z| - |mid| | <= |z - mid| <= rad.
        let rad = &self.rad + BigInt::from((!exact) as u8);
        Ball { re: s, im: BigInt::zero(), rad, prec: p }
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        let (a, b) = Ball::align(self, other);
        let dre = &a.re - &b.re;
        let dim = &a.im - &b.im;
        let r = &a.rad + &b.rad;
        &dre * &dre + &dim * &dim <= &r * &r
    }

    /// True when `inner` lies entirely within `self`.
    pub fn contains(&self, inner: &Ball) -> bool {
        let (a, b) = Ball::align(self, inner);
        if b.rad > a.rad {
            return false;
        }
        let dre = &a.re - &b.re;
        let dim = &a.im - &b.im;
        let r = &a.rad - &b.rad;
        &dre * &dre + &dim * &dim <= &r * &r
    }

    /// Upper bound on `sup |z|` over the ball, as an `f64`.
    pub fn magnitude_upper_f64(&self) -> f64 {
        let m = self.abs();
        bigint_to_f64_scaled(&(m.re + m.rad), self.prec)
    }

    pub fn approx(&self) -> (f64, f64) {
        (bigint_to_f64_scaled(&self.re, self.prec), bigint_to_f64_scaled(&self.im, self.prec))
    }

    pub fn radius_f64(&self) -> f64 {
        bigint_to_f64_scaled(&self.rad, self.prec)
    }

    /// `log2` of the radius rounded up; `None` for a zero radius.
    pub fn radius_log2(&self) -> Option<i64> {
        if self.rad.is_zero() {
            None
        } else {
            Some(self.rad.bits() as i64 - self.prec as i64)
        }
    }

    /// True when the ball lies within `2^-tol_bits` of the integer `k`.
    pub fn within_of_integer(&self, k: &BigInt, tol_bits: u32) -> bool {
        let t = if tol_bits >= self.prec { BigInt::zero() } else { pow2(self.prec - tol_bits) };
        if self.rad > t {
            return false;
        }
        let dre = &self.re - (k << self.prec as usize);
        let r = &t - &self.rad;
        &dre * &dre + &self.im * &self.im <= &r * &r
    }

    /// Integer nearest to the real part of the midpoint.
    pub fn nearest_integer(&self) -> BigInt {
        let half = pow2(self.prec) >> 1usize;
        (&self.re + half) >> self.prec as usize
    }

    /// Decimal midpoint followed by `±2^e` for a nonzero radius.
    pub fn render(&self) -> String {
        let digits = 30usize;
        let part = |x: &BigInt| -> String { render_fixed(x, self.prec, digits) };
        let mut s = part(&self.re);
        if !self.im.is_zero() {
            let ims = part(&self.im.abs());
            let sign = if self.im.sign() == Sign::Minus { "-" } else { "+" };
            s = format!("{s}{sign}{ims}*i");
        }
        match self.radius_log2() {
            None => s,
            Some(e) => format!("{s}±2^{e}"),
        }
    }
}

fn render_fixed(x: &BigInt, prec: u32, digits: usize) -> String {
    let neg = x.is_negative();
    let a = x.abs();
    let int = &a >> prec as usize;
    let frac = &a - (&int << prec as usize);
    let scaled = (frac * num_traits::pow(BigInt::from(10), digits)) >> prec as usize;
    let mut frac_str = scaled.to_string();
    while frac_str.len() < digits {
        frac_str.insert(0, '0');
    }
    let frac_str = frac_str.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if frac_str.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac_str}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn sqrt_two_squared_contains_two() {
        let s = Ball::sqrt_of_integer(&int(2), 128);
        let sq = s.mul(&s);
        assert!(sq.overlaps(&Ball::from_integer(&int(2), 128)));
        assert!(sq.radius_f64() < 1e-30);
    }

    #[test]
    fn inverse_round_trip() {
        let x = Ball::from_ratio(&BigRational::new(int(7), int(3)), 96);
        let y = x.inv().unwrap().mul(&x);
        assert!(y.overlaps(&Ball::from_integer(&int(1), 96)));
    }

    #[test]
    fn inverse_of_ball_around_zero_fails() {
        let b = Ball::from_parts(int(1), int(0), int(4), 64);
        assert!(matches!(b.inv(), Err(Error::IndeterminateDivision)));
    }

    #[test]
    fn cube_root_of_eight() {
        let b = Ball::from_integer(&int(8), 80).nth_root_real(3).unwrap();
        assert!(b.within_of_integer(&int(2), 40));
    }

    #[test]
    fn rendering_is_stable() {
        let b = Ball::from_ratio(&BigRational::new(int(1), int(4)), 64);
        assert_eq!(b.render(), "0.25");
        let s = Ball::sqrt_of_integer(&int(-1), 64);
        assert_eq!(s.render(), "0+1*i");
    }
}
