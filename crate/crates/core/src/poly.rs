//! Integer polynomials: exact characteristic polynomials, squarefree parts,
//! and certified root isolation with exact recognition of rational and
//! quadratic roots.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{render_polynomial, squarefree_decomposition, Ball, Scalar};

/// Integer polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn from_high_first(coeffs: &[BigInt]) -> Self {
        let mut c: Vec<BigInt> = coeffs.iter().rev().cloned().collect();
        trim(&mut c);
        IntPoly(c)
    }

    pub fn from_i64(low_first: &[i64]) -> Self {
        let mut c: Vec<BigInt> = low_first.iter().map(|&x| BigInt::from(x)).collect();
        trim(&mut c);
        IntPoly(c)
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn high_first(&self) -> Vec<BigInt> {
        self.0.iter().rev().cloned().collect()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_ball(&self, x: &Ball) -> Ball {
        let p = x.precision();
        self.0
            .iter()
            .rev()
            .fold(Ball::zero(p), |acc, c| acc.mul(x).add(&Ball::from_integer(c, p)))
    }

    fn eval_c64(&self, x: Complex64) -> Complex64 {
        self.0
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> IntPoly {
        let mut c: Vec<BigInt> = self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
        trim(&mut c);
        IntPoly(c)
    }

    /// Exact quotient by a monic divisor, or `None` when the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        debug_assert!(divisor.leading().is_one());
        let dd = divisor.degree();
        if self.degree() < dd {
            return None;
        }
        let mut rem = self.0.clone();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let coef = rem[k + dd].clone();
            if coef.is_zero() {
                continue;
            }
            for (i, d) in divisor.0.iter().enumerate() {
                rem[k + i] -= &coef * d;
            }
            quot[k] = coef;
        }
        if rem.iter().all(Zero::is_zero) {
            trim(&mut quot);
            Some(IntPoly(quot))
        } else {
            None
        }
    }

    /// Greatest common divisor over `Q`, scaled to a primitive integer
    /// polynomial with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let to_q = |p: &IntPoly| -> Vec<BigRational> { p.0.iter().map(|c| BigRational::from_integer(c.clone())).collect() };
        let (mut a, mut b) = (to_q(self), to_q(other));
        while !(b.is_empty() || b.iter().all(Zero::is_zero)) {
            let r = rational_rem(&a, &b);
            a = b;
            b = r;
        }
        primitive(&a)
    }

    /// Product of the distinct irreducible factors; monic when `self` is.
    pub fn squarefree_part(&self) -> IntPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.clone();
        }
        let q = rational_div(&self.0, &g.0);
        primitive(&q)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_polynomial(&self.high_first()))
    }
}

fn trim(c: &mut Vec<BigInt>) {
    while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    if c.is_empty() {
        c.push(BigInt::zero());
    }
}

fn rtrim(c: &mut Vec<BigRational>) {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
}

fn rational_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let mut b = b.to_vec();
    rtrim(&mut r);
    rtrim(&mut b);
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let coef = r.last().unwrap().clone() / &lb;
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= &coef * c;
        }
        r.pop();
        rtrim(&mut r);
    }
    r
}

fn rational_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigRational> {
    let mut r: Vec<BigRational> = a.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let b: Vec<BigRational> = b.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let db = b.len() - 1;
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let coef = r[k + db].clone() / &b[db];
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= &coef * c;
        }
        q[k] = coef;
    }
    q
}

fn primitive(c: &[BigRational]) -> IntPoly {
    let mut c = c.to_vec();
    rtrim(&mut c);
    if c.is_empty() {
        return IntPoly(vec![BigInt::zero()]);
    }
    let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    IntPoly(ints.into_iter().map(|x| x / &content * &sign).collect())
}

/// Characteristic polynomial `det(xI - M)` by the Faddeev-LeVerrier recurrence.
/// Every division in the recurrence is exact over the integers.
pub fn charpoly(m: &[Vec<BigInt>]) -> IntPoly {
    let n = m.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = matmul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let am = matmul(m, &next);
        let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -tr / BigInt::from(k);
        mk = next;
    }
    IntPoly(coeffs)
}

fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// A root isolated in a disk that contains no other root. `value` is exact
/// when the root was recognized as rational or quadratic.
#[derive(Clone, Debug)]
pub struct CertifiedRoot {
    pub value: Scalar,
    pub disk: Ball,
}

fn durand_kerner_f64(p: &IntPoly) -> Vec<Complex64> {
    let n = p.degree();
    let lead = p.leading().to_f64().unwrap_or(1.0);
    let bound = 1.0
        + p.0[..n]
            .iter()
            .map(|c| (c.to_f64().unwrap_or(f64::MAX) / lead).abs())
            .fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * (bound / 2.0).max(1.0)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let num = p.eval_c64(z[i]) / lead;
            let den: Complex64 = (0..n).filter(|&j| j != i).map(|j| z[i] - z[j]).product();
            if den.norm() == 0.0 {
                z[i] += Complex64::new(1e-8, 1e-8);
                delta = f64::INFINITY;
                continue;
            }
            let step = num / den;
            z[i] -= step;
            delta = delta.max(step.norm() / (1.0 + z[i].norm()));
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

/// `(p(z_i), prod_{j != i} (z_i - z_j))` as balls.
fn weierstrass_parts(p: &IntPoly, z: &[Ball], i: usize) -> (Ball, Ball) {
    let prec = z[i].precision();
    let num = p.eval_ball(&z[i]);
    let den = (0..z.len())
        .filter(|&j| j != i)
        .fold(Ball::from_integer(&BigInt::one(), prec), |acc, j| acc.mul(&z[i].sub(&z[j])));
    (num, den)
}

/// Isolates every root of a monic squarefree integer polynomial in pairwise
/// disjoint disks and recognizes rational and quadratic roots exactly.
pub fn certified_roots(p: &IntPoly, prec: u32) -> Result<Vec<CertifiedRoot>> {
    if !p.leading().is_one() {
        return Err(Error::Inconsistent("root isolation needs a monic polynomial".into()));
    }
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let work = prec + 32;
    let mut z: Vec<Ball> = durand_kerner_f64(p).into_iter().map(|c| Ball::from_f64(c.re, c.im, work)).collect();
    let unit = BigInt::one() << (work as usize);
    for _ in 0..400 {
        let mut converged = true;
        for i in 0..n {
            let (num, den) = weierstrass_parts(p, &z, i);
            let step = match num.midpoint().div(&den.midpoint()) {
                Ok(s) => s.midpoint(),
                Err(_) => {
                    converged = false;
                    z[i] = z[i].add(&Ball::from_f64(1e-6, 1e-6, work)).midpoint();
                    continue;
                }
            };
            // stop once every correction is below 2^-prec relative to 1 + |z_i|
            let threshold = (&unit + z[i].abs().mid_re()) >> (prec as usize);
            if step.abs().mid_re() > &threshold {
                converged = false;
            }
            z[i] = z[i].sub(&step).midpoint();
        }
        if converged {
            break;
        }
    }
    // Weierstrass inclusion: each disk D(z_i, n |W_i|) of a disjoint family holds exactly one root.
    let mut disks = Vec::with_capacity(n);
    for i in 0..n {
        let (num, den) = weierstrass_parts(p, &z, i);
        let w = num.div(&den).map_err(|_| Error::Separation("coincident root approximations".into()))?;
        let r = w.abs();
        let bound = (r.mid_re() + r.radius_units() + BigInt::one()) * BigInt::from(n);
        disks.push(z[i].with_radius_units(bound));
    }
    for i in 0..n {
        for j in i + 1..n {
            if disks[i].overlaps(&disks[j]) {
                return Err(Error::Separation(format!("root disks {i} and {j} overlap")));
            }
        }
    }
    let mut values: Vec<Option<Scalar>> = vec![None; n];
    for i in 0..n {
        let k = disks[i].nearest_integer();
        if p.eval_int(&k).is_zero() && disks[i].overlaps(&Ball::from_integer(&k, work)) {
            values[i] = Some(Scalar::from_bigint(k));
        }
    }
    identify_quadratic_pairs(p, &disks, &mut values, work);
    Ok(disks
        .into_iter()
        .zip(values)
        .map(|(disk, v)| {
            let disk = disk.at_precision(prec);
            CertifiedRoot { value: v.unwrap_or_else(|| Scalar::Interval(disk.clone())), disk }
        })
        .collect())
}

fn identify_quadratic_pairs(p: &IntPoly, disks: &[Ball], values: &mut [Option<Scalar>], work: u32) {
    let n = disks.len();
    for i in 0..n {
        if values[i].is_some() {
            continue;
        }
        for j in i + 1..n {
            if values[i].is_some() || values[j].is_some() {
                continue;
            }
            let t = disks[i].add(&disks[j]).nearest_integer();
            let nn = disks[i].mul(&disks[j]).nearest_integer();
            let disc = &t * &t - BigInt::from(4) * &nn;
            let Some(disc_i) = disc.to_i128() else { continue };
            if disc_i == 0 {
                continue;
            }
            let (f, d) = squarefree_decomposition(disc_i);
            if d == 1 {
                continue;
            }
            let q = IntPoly(vec![nn.clone(), -t.clone(), BigInt::one()]);
            if p.div_exact_monic(&q).is_none() {
                continue;
            }
            let Ok(d) = i64::try_from(d) else { continue };
            // roots (t +- f sqrt(d)) / 2
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let a = BigRational::from_integer(t.clone()) * &half;
            let b = BigRational::from_integer(BigInt::from(f)) * &half;
            let plus = Scalar::quadratic(a.clone(), b.clone(), d);
            let minus = Scalar::quadratic(a, -b, d);
            let (bp, bm) = (plus.to_ball(work), minus.to_ball(work));
            if disks[i].overlaps(&bp) && disks[j].overlaps(&bm) && !disks[i].overlaps(&bm) {
                values[i] = Some(plus);
                values[j] = Some(minus);
            } else if disks[i].overlaps(&bm) && disks[j].overlaps(&bp) && !disks[i].overlaps(&bp) {
                values[i] = Some(minus);
                values[j] = Some(plus);
            }
        }
    }
}

/// Index of the certified root whose disk meets `value`, if exactly one does.
pub fn locate(roots: &[CertifiedRoot], value: &Ball) -> Option<usize> {
    let mut hits = roots.iter().enumerate().filter(|(_, r)| r.disk.overlaps(value)).map(|(i, _)| i);
    let first = hits.next()?;
    hits.next().is_none().then_some(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn charpoly_of_small_matrices() {
        assert_eq!(charpoly(&mat(&[&[0, 1], &[1, 1]])), IntPoly::from_i64(&[-1, -1, 1]));
        // Ising sigma: x^3 - 2x
        let sigma = mat(&[&[0, 0, 1], &[0, 0, 1], &[1, 1, 0]]);
        assert_eq!(charpoly(&sigma), IntPoly::from_i64(&[0, -2, 0, 1]));
        assert_eq!(charpoly(&mat(&[&[2, 0], &[0, 2]])), IntPoly::from_i64(&[4, -4, 1]));
    }

    #[test]
    fn squarefree_parts() {
        let p = IntPoly::from_i64(&[4, -4, 1]);
        assert_eq!(p.squarefree_part(), IntPoly::from_i64(&[-2, 1]));
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let q = IntPoly::from_i64(&[2, -3, 0, 1]);
        assert_eq!(q.squarefree_part(), IntPoly::from_i64(&[-2, 1, 1]));
        assert!(IntPoly::from_i64(&[-1, -1, 1]).is_squarefree());
    }

    #[test]
    fn exact_root_recognition() {
        let roots = certified_roots(&IntPoly::from_i64(&[0, -2, 0, 1]), 128).unwrap();
        let mut vals: Vec<String> = roots.iter().map(|r| r.value.render()).collect();
        vals.sort();
        assert_eq!(vals, vec!["-sqrt(2)", "0", "sqrt(2)"]);
        let roots = certified_roots(&IntPoly::from_i64(&[1, 1, 1]), 128).unwrap();
        let w = parse_scalar("(-1+sqrt(-3))/2").unwrap();
        assert!(roots.iter().any(|r| r.value == w));
        assert!(roots.iter().any(|r| r.value == w.conj()));
    }

    #[test]
    fn quartic_roots_stay_certified_balls() {
        // x^4 + x^3 + x^2 + x + 1: primitive fifth roots of unity
        let roots = certified_roots(&IntPoly::from_i64(&[1, 1, 1, 1, 1]), 128).unwrap();
        assert_eq!(roots.len(), 4);
        for r in &roots {
            assert!(!r.value.is_exact());
            let (x, y) = r.value.approx();
            assert!((x.hypot(y) - 1.0).abs() < 1e-12);
            assert!(r.disk.radius_log2().unwrap() < -100);
        }
    }
}
