//! Elements `a + b*sqrt(d)` of a quadratic field, `d` squarefree and not 0 or 1.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ball::Ball;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadratic {
    a: BigRational,
    b: BigRational,
    d: i64,
}

/// Split `n` as `f^2 * m` with `m` squarefree. Returns `(f, m)`.
pub fn squarefree_decomposition(n: i128) -> (i128, i128) {
    if n == 0 {
        return (0, 0);
    }
    let sign = n.signum();
    let mut rest = n.abs();
    let (mut f, mut core): (i128, i128) = (1, 1);
    let mut p: i128 = 2;
    // After removing every prime up to the cube root of what is left, the
    // remainder has at most two prime factors: squarefree unless a square.
    while p * p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = i128::try_from(BigInt::from(rest).sqrt()).unwrap_or(0);
    if r > 1 && r * r == rest {
        f *= r;
    } else {
        core *= rest;
    }
    (f, sign * core)
}

impl Quadratic {
    /// Builds `a + b*sqrt(d)`; `d` must already be squarefree and not 0 or 1.
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Self {
        debug_assert!(d != 0 && d != 1);
        Quadratic { a, b, d }
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_real(&self) -> bool {
        self.d > 0
    }

    fn dq(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.d))
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * self.dq()
    }

    /// The other root of the minimal polynomial.
    pub fn galois_conjugate(&self) -> Self {
        Quadratic { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    pub fn add(&self, o: &Self) -> (BigRational, BigRational) {
        (&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &Self) -> (BigRational, BigRational) {
        (&self.a - &o.a, &self.b - &o.b)
    }

    pub fn mul(&self, o: &Self) -> (BigRational, BigRational) {
        let a = &self.a * &o.a + &self.b * &o.b * self.dq();
        let b = &self.a * &o.b + &self.b * &o.a;
        (a, b)
    }

    /// Inverse; the norm of a nonzero element never vanishes.
    pub fn inv(&self) -> (BigRational, BigRational) {
        let n = self.norm();
        (&self.a / &n, -&self.b / &n)
    }

    /// Sign of a real element, decided exactly.
    pub fn real_sign(&self) -> Ordering {
        debug_assert!(self.is_real());
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sa != Ordering::Less && sb != Ordering::Less {
            return if sa == Ordering::Equal && sb == Ordering::Equal { Ordering::Equal } else { Ordering::Greater };
        }
        if sa != Ordering::Greater && sb != Ordering::Greater {
            return Ordering::Less;
        }
        // Opposite signs: compare a^2 with b^2 d.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * self.dq();
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn to_ball(&self, prec: u32) -> Ball {
        let a = Ball::from_ratio(&self.a, prec);
        let b = Ball::from_ratio(&self.b, prec);
        let r = Ball::sqrt_of_integer(&BigInt::from(self.d), prec);
        a.add(&b.mul(&r))
    }

    pub fn render(&self) -> String {
        let radical = format!("sqrt({})", self.d);
        let bterm = |b: &BigRational| -> String {
            if b.is_one() {
                radical.clone()
            } else {
                format!("{}*{}", render_rational(b), radical)
            }
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                format!("-{}", bterm(&-&self.b))
            } else {
                bterm(&self.b)
            }
        } else {
            let sign = if self.b.is_negative() { "-" } else { "+" };
            format!("{}{}{}", render_rational(&self.a), sign, bterm(&self.b.abs()))
        }
    }
}

pub fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_decomposition(12), (2, 3));
        assert_eq!(squarefree_decomposition(-27), (3, -3));
        assert_eq!(squarefree_decomposition(49), (7, 1));
        assert_eq!(squarefree_decomposition(2 * 1_000_003 * 1_000_003), (1_000_003, 2));
        assert_eq!(squarefree_decomposition(30), (1, 30));
        assert_eq!(squarefree_decomposition(-1), (1, -1));
    }

    #[test]
    fn sign_of_real_elements() {
        // 3 - 2*sqrt(2) > 0, 1 - sqrt(2) < 0, -3 + 2*sqrt(2) < 0
        assert_eq!(Quadratic::new(q(3, 1), q(-2, 1), 2).real_sign(), Ordering::Greater);
        assert_eq!(Quadratic::new(q(1, 1), q(-1, 1), 2).real_sign(), Ordering::Less);
        assert_eq!(Quadratic::new(q(-3, 1), q(2, 1), 2).real_sign(), Ordering::Less);
    }

    #[test]
    fn render_forms() {
        assert_eq!(Quadratic::new(q(1, 2), q(1, 2), 5).render(), "1/2+1/2*sqrt(5)");
        assert_eq!(Quadratic::new(q(0, 1), q(-1, 1), 2).render(), "-sqrt(2)");
        assert_eq!(Quadratic::new(q(-1, 2), q(-3, 2), -3).render(), "-1/2-3/2*sqrt(-3)");
    }
}
