//! The `lambda_s` invariant, s-Isaacs verdicts and the divisibility
//! theorems built on them.

use std::cell::OnceCell;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::analysis::{Analysis, Frame};
use crate::chars::weakly_integral_check;
use crate::dual::star_orbits;
use crate::error::{Error, Result};
use crate::report::{aggregate, claims, Check, Claim, Flag, Hypothesis, Outcome, TheoremReport, Verdict};
use crate::scalar::{Equality, IntegralityTier, IntegralityVerdict, PowerProduct, Scalar};

/// Largest supported denominator of `s`.
pub const MAX_S_DENOMINATOR: i64 = 12;

pub fn check_exponent(s: Ratio<i64>) -> Result<()> {
    if s.is_negative() {
        return Err(Error::Input(format!("s = {s} is negative")));
    }
    if *s.denom() > MAX_S_DENOMINATOR {
        return Err(Error::Input(format!("s = {s} has denominator above {MAX_S_DENOMINATOR}")));
    }
    Ok(())
}

/// Parses `p/q` or an integer and validates it.
pub fn parse_exponent(text: &str) -> Result<Ratio<i64>> {
    let s: Ratio<i64> = text.trim().parse().map_err(|_| Error::Input(format!("'{text}' is not a rational number p/q")))?;
    check_exponent(s)?;
    Ok(s)
}

fn int(n: i64) -> Ratio<i64> {
    Ratio::from_integer(n)
}

fn nonzero(v: Scalar) -> Result<Scalar> {
    match v.zero_test() {
        Equality::Equal => Err(Error::DivisionByZero),
        _ => Ok(v),
    }
}

fn indeterminate() -> IntegralityVerdict {
    IntegralityVerdict { tier: IntegralityTier::Indeterminate, witness: None }
}

/// `lambda_s(mu_j, X)` in a frame.
fn lambda_in(a: &Analysis, f: &Frame, j: usize, x: usize, s: Ratio<i64>) -> Result<PowerProduct> {
    let dim_x = nonzero(a.frame_dim(f, x))?;
    Ok(PowerProduct::power_of(a.frame_dim_c(f), s)
        .with(a.frame_class_dim(f, j)?, Ratio::one() - s)
        .with(a.table().value(j, x).clone(), Ratio::one())
        .with(dim_x, int(-1)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lambda {
    pub value: Scalar,
    pub form: PowerProduct,
    pub verdict: IntegralityVerdict,
}

/// `lambda_s(mu_j, X) = (dim C)^s dim(C^j)^(1-s) mu_j(X) / dim X` with its
/// integrality verdict.
pub fn lambda_s(a: &Analysis, j: usize, x: usize, s: Ratio<i64>) -> Result<Lambda> {
    check_exponent(s)?;
    let (form, verdict) = a.certify(&[j], |f, t| lambda_in(a, f, t[0], x, s))?;
    Ok(Lambda { value: form.eval()?, form, verdict })
}

fn isaacs_checks(a: &Analysis, s: Ratio<i64>) -> Vec<Check> {
    let mut checks = Vec::new();
    for x in 0..a.rank() {
        for j in 0..a.rank() {
            let label = format!("lambda(mu_{j}, {})", a.label(x));
            checks.push(match lambda_s(a, j, x, s) {
                Ok(l) => Check::new(label, Some(l.value), Verdict::integrality(&l.verdict)),
                Err(e) => Check::new(format!("{label}: {e}"), None, Verdict::integrality(&indeterminate())),
            });
        }
    }
    checks
}

fn exactly_integral(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.verdict.tier() == Some(IntegralityTier::IntegralExact))
}

/// Whether every `lambda_s(mu_j, X)` of the ring is an algebraic integer.
/// Evaluate on a subring's analysis to decide it for a subcategory. When
/// every verdict is exact the ring is also checked at `s + 1`.
pub fn is_s_isaacs(a: &Analysis, s: Ratio<i64>) -> TheoremReport {
    let mut rep = TheoremReport::new(&claims::S_ISAACS, format!("{}, s = {s}", a.name()));
    rep.note(format!("dimension character {}", a.dimension_character()));
    if let Err(e) = check_exponent(s) {
        rep.skip(e.to_string());
        return rep;
    }
    let checks = isaacs_checks(a, s);
    let all_exact = exactly_integral(&checks);
    rep.set_verdict(aggregate(&checks));
    rep.checks = checks;
    if rep.outcome == Outcome::Pass && all_exact {
        let next = isaacs_checks(a, s + Ratio::one());
        rep.check(Check::new(format!("monotonicity: {}-Isaacs", s + Ratio::one()), None, aggregate(&next)));
        rep.conclude_from_checks();
    }
    rep
}

/// Whether `dim X` divides `(dim C)^s` for every simple `X`.
pub fn frobenius_type(a: &Analysis, s: Ratio<i64>) -> TheoremReport {
    let mut rep = TheoremReport::query(&claims::FROBENIUS_TYPE, format!("{}, s = {s}", a.name()));
    if let Err(e) = check_exponent(s) {
        rep.skip(e.to_string());
        return rep;
    }
    for x in 0..a.rank() {
        let label = format!("dim {} | (dim C)^{s}", a.label(x));
        let res = a.certify(&[], |f, _| {
            Ok(PowerProduct::power_of(a.frame_dim_c(f), s).with(nonzero(a.frame_dim(f, x))?, int(-1)))
        });
        rep.check(match res.and_then(|(pp, v)| Ok((pp.eval()?, v))) {
            Ok((value, v)) => Check::new(label, Some(value), Verdict::integrality(&v)),
            Err(e) => Check::new(format!("{label}: {e}"), None, Verdict::integrality(&indeterminate())),
        });
    }
    rep.conclude_from_checks();
    rep
}

fn s_name(s: Ratio<i64>) -> String {
    if s.is_zero() {
        "Isaacs".into()
    } else {
        format!("{s}-Isaacs")
    }
}

/// The divisibility theorems for one simple object and one exponent,
/// sharing the s-Isaacs verdicts of `<X>` between them.
pub struct Divisibility<'a> {
    a: &'a Analysis,
    x: usize,
    s: Ratio<i64>,
    generated_isaacs: [OnceCell<Option<bool>>; 2],
}

impl<'a> Divisibility<'a> {
    pub fn new(a: &'a Analysis, x: usize, s: Ratio<i64>) -> Result<Self> {
        check_exponent(s)?;
        if x >= a.rank() {
            return Err(Error::IndexOutOfRange { index: x, rank: a.rank() });
        }
        Ok(Divisibility { a, x, s, generated_isaacs: [OnceCell::new(), OnceCell::new()] })
    }

    fn subject(&self, with_s: bool) -> String {
        let base = format!("{}, X = {}", self.a.name(), self.a.label(self.x));
        if with_s {
            format!("{base}, s = {}", self.s)
        } else {
            base
        }
    }

    fn report(&self, claim: &Claim, with_s: bool) -> TheoremReport {
        let mut rep = TheoremReport::new(claim, self.subject(with_s));
        rep.note(format!("dimension character {}", self.a.dimension_character()));
        rep
    }

    /// Whether `<X>` is t-Isaacs for `t = s` (slot 0) or `t = 0` (slot 1).
    fn isaacs_of_generated(&self, zero: bool) -> Option<bool> {
        let t = if zero { Ratio::zero() } else { self.s };
        let slot = if zero && !self.s.is_zero() { 1 } else { 0 };
        *self.generated_isaacs[slot].get_or_init(|| {
            let members = self.a.generated(&[self.x]);
            let checks = if members.len() == self.a.rank() {
                isaacs_checks(self.a, t)
            } else {
                match self.a.subring(&members) {
                    Ok(sub) => isaacs_checks(&sub, t),
                    Err(_) => return None,
                }
            };
            match aggregate(&checks).outcome() {
                Outcome::Pass => Some(true),
                Outcome::Fail => Some(false),
                _ => None,
            }
        })
    }

    fn hyp_isaacs(&self, zero: bool, whole: bool) -> Hypothesis {
        let t = if zero { Ratio::zero() } else { self.s };
        let scope = if whole { "C" } else { "<X>" };
        Hypothesis::from_data(format!("{scope} is {}", s_name(t)), self.isaacs_of_generated(zero))
    }

    fn hyp_faithful(&self) -> Hypothesis {
        Hypothesis::from_data("<X> = C", Some(self.a.is_faithful(self.x)))
    }

    fn hyp_rn(&self) -> Hypothesis {
        Hypothesis::from_data("dual coefficients real non-negative", self.a.rn())
    }

    fn hyp_half(&self) -> Hypothesis {
        Hypothesis::from_data("s >= 1/2", Some(self.s >= Ratio::new(1, 2)))
    }

    /// Sets the integrality verdict of `quantity` at the identity frame.
    fn conclude(&self, rep: &mut TheoremReport, name: &str, quantity: impl Fn(&Frame) -> Result<PowerProduct>) {
        match self.a.certify(&[], |f, _| quantity(f)).and_then(|(pp, v)| Ok((pp.eval()?, v))) {
            Ok((value, v)) => {
                rep.quantity(name, value);
                rep.set_verdict(Verdict::integrality(&v));
            }
            Err(e) => {
                rep.note(e.to_string());
                rep.set_verdict(Verdict::integrality(&indeterminate()));
            }
        }
    }

    fn u(&self) -> Scalar {
        Scalar::from(self.a.grading_order() as i64)
    }

    fn dim_x(&self, f: &Frame) -> Result<Scalar> {
        nonzero(self.a.frame_dim(f, self.x))
    }

    fn n_dim_center(&self, f: &Frame) -> Result<Scalar> {
        self.a.frame_dim_order(f, &self.a.center_in(f, self.x)?)
    }

    fn n_center(&self, f: &Frame) -> Result<Scalar> {
        self.a.frame_order(f, &self.a.center_in(f, self.x)?)
    }

    /// `FPdim(X) | FPdim(C) / |U(C)|`.
    pub fn fpdim_divides(&self) -> TheoremReport {
        let mut rep = self.report(&claims::FPDIM_DIVIDES, false);
        rep.hypothesis(Hypothesis::from_flag(Flag::PseudoUnitary, self.a.assumptions()))
            .hypothesis(Hypothesis::from_flag(Flag::Ribbon, self.a.assumptions()));
        if rep.skip_if_unmet() {
            return rep;
        }
        self.conclude(&mut rep, "FPdim(C) / (|U(C)| FPdim(X))", |f| {
            Ok(PowerProduct::of(self.a.frame_fp_global(f))
                .with(self.u(), int(-1))
                .with(nonzero(self.a.frame_fp_dim(f, self.x))?, int(-1)))
        });
        rep
    }

    /// `(dim C)^(2s) FPdim(C) / (dim(X)^2 |U(C)|)`, for `s >= 1/2`.
    pub fn isaacs_half(&self) -> TheoremReport {
        let mut rep = self.report(&claims::ISAACS_HALF, true);
        rep.hypothesis(self.hyp_half()).hypothesis(self.hyp_rn()).hypothesis(self.hyp_isaacs(false, false));
        if rep.skip_if_unmet() {
            return rep;
        }
        self.conclude(&mut rep, "(dim C)^(2s) FPdim(C) / (dim(X)^2 |U(C)|)", |f| self.c_s(f));
        rep
    }

    fn c_s(&self, f: &Frame) -> Result<PowerProduct> {
        Ok(PowerProduct::power_of(self.a.frame_dim_c(f), self.s * 2)
            .with(self.a.frame_fp_global(f), Ratio::one())
            .with(self.dim_x(f)?, int(-2))
            .with(self.u(), int(-1)))
    }

    fn d_s(&self, f: &Frame) -> Result<PowerProduct> {
        Ok(PowerProduct::power_of(self.a.frame_dim_c(f), self.s)
            .with(self.a.frame_fp_global(f), Ratio::one())
            .with(self.dim_x(f)?, int(-1))
            .with(self.u(), int(-1)))
    }

    /// `(dim C)^s FPdim(C) / (dim(X) |U(C)|)`.
    pub fn isaacs_any(&self) -> TheoremReport {
        let mut rep = self.report(&claims::ISAACS_ANY, true);
        rep.hypothesis(self.hyp_rn()).hypothesis(self.hyp_isaacs(false, false));
        if rep.skip_if_unmet() {
            return rep;
        }
        self.conclude(&mut rep, "(dim C)^s FPdim(C) / (dim(X) |U(C)|)", |f| self.d_s(f));
        rep
    }

    /// `(dim C)^(2s+1) / (|U(C)| dim(X)^2)` when `X` generates.
    pub fn generated_half(&self) -> TheoremReport {
        let mut rep = self.report(&claims::GENERATED_HALF, true);
        rep.hypothesis(self.hyp_faithful()).hypothesis(self.hyp_half());
        if !rep.skip_if_unmet() {
            rep.hypothesis(self.hyp_isaacs(false, true));
            if rep.skip_if_unmet() {
                return rep;
            }
            self.conclude(&mut rep, "(dim C)^(2s+1) / (|U(C)| dim(X)^2)", |f| {
                Ok(PowerProduct::power_of(self.a.frame_dim_c(f), self.s * 2 + 1)
                    .with(self.u(), int(-1))
                    .with(self.dim_x(f)?, int(-2)))
            });
        }
        rep
    }

    /// `(dim C)^(2s+1) / (dim(X)^2 n_dim(Z_C(X)))`.
    pub fn center_half(&self) -> TheoremReport {
        let mut rep = self.report(&claims::CENTER_HALF, true);
        rep.hypothesis(self.hyp_half()).hypothesis(self.hyp_isaacs(false, false));
        if rep.skip_if_unmet() {
            return rep;
        }
        self.conclude(&mut rep, "(dim C)^(2s+1) / (dim(X)^2 n_dim(Z_C(X)))", |f| {
            Ok(PowerProduct::power_of(self.a.frame_dim_c(f), self.s * 2 + 1)
                .with(self.dim_x(f)?, int(-2))
                .with(nonzero(self.n_dim_center(f)?)?, int(-1)))
        });
        rep
    }

    /// `(dim C)^(s+1) / (|U(C)| dim X)` when `X` generates.
    pub fn generated_any(&self) -> TheoremReport {
        let mut rep = self.report(&claims::GENERATED_ANY, true);
        rep.hypothesis(self.hyp_faithful());
        if !rep.skip_if_unmet() {
            rep.hypothesis(self.hyp_isaacs(false, true));
            if rep.skip_if_unmet() {
                return rep;
            }
            self.conclude(&mut rep, "(dim C)^(s+1) / (|U(C)| dim X)", |f| {
                Ok(PowerProduct::power_of(self.a.frame_dim_c(f), self.s + 1)
                    .with(self.u(), int(-1))
                    .with(self.dim_x(f)?, int(-1)))
            });
        }
        rep
    }

    /// `(dim C)^(s+1) / (n_dim(Z_C(X)) dim X)`.
    pub fn center_any(&self) -> TheoremReport {
        let mut rep = self.report(&claims::CENTER_ANY, true);
        rep.hypothesis(self.hyp_isaacs(false, false));
        if rep.skip_if_unmet() {
            return rep;
        }
        self.conclude(&mut rep, "(dim C)^(s+1) / (n_dim(Z_C(X)) dim X)", |f| {
            Ok(PowerProduct::power_of(self.a.frame_dim_c(f), self.s + 1)
                .with(nonzero(self.n_dim_center(f)?)?, int(-1))
                .with(self.dim_x(f)?, int(-1)))
        });
        rep
    }

    /// `dim X | FPdim(C) / n(Z_C(X))`.
    pub fn center_isaacs(&self) -> TheoremReport {
        let mut rep = self.report(&claims::CENTER_ISAACS, false);
        rep.hypothesis(self.hyp_isaacs(true, false));
        if rep.skip_if_unmet() {
            return rep;
        }
        self.conclude(&mut rep, "FPdim(C) / (n(Z_C(X)) dim X)", |f| {
            Ok(PowerProduct::of(self.a.frame_fp_global(f))
                .with(nonzero(self.n_center(f)?)?, int(-1))
                .with(self.dim_x(f)?, int(-1)))
        });
        rep
    }

    /// `dim X | FPdim(C) / |U(C)|`.
    pub fn grading_isaacs(&self) -> TheoremReport {
        let mut rep = self.report(&claims::GRADING_ISAACS, false);
        rep.hypothesis(self.hyp_rn()).hypothesis(self.hyp_isaacs(true, false));
        if rep.skip_if_unmet() {
            return rep;
        }
        self.conclude(&mut rep, "FPdim(C) / (|U(C)| dim X)", |f| {
            Ok(PowerProduct::of(self.a.frame_fp_global(f)).with(self.u(), int(-1)).with(self.dim_x(f)?, int(-1)))
        });
        rep
    }

    /// `D_s^2 = C_s FPdim(C) / |U(C)|`, compared on a power that clears the
    /// exponent denominators.
    pub fn square_identity(&self) -> TheoremReport {
        let mut rep = self.report(&claims::SQUARE_IDENTITY, true);
        let f = self.a.identity_frame();
        let run = || -> Result<(Scalar, Scalar, Equality)> {
            let c = self.c_s(&f)?;
            let d = self.d_s(&f)?;
            let lhs = d.pow(int(2));
            let rhs = c.clone().with(self.a.fp_global().clone(), Ratio::one()).with(self.u(), int(-1));
            let q = lhs.denominator().lcm(&rhs.denominator());
            Ok((c.eval()?, d.eval()?, lhs.power(q)?.compare_eq(&rhs.power(q)?)))
        };
        match run() {
            Ok((c, d, e)) => {
                rep.quantity("C_s", c).quantity("D_s", d);
                rep.set_verdict(Verdict::Equality { result: e });
            }
            Err(err) => {
                rep.note(err.to_string());
                rep.set_verdict(Verdict::holds(None));
            }
        }
        rep
    }

    /// `(dim C)^2 FPdim(C) / (dim(X)^2 |U(C)|)`, with the ring's 1-Isaacs
    /// verdict alongside.
    pub fn conjecture(&self) -> TheoremReport {
        let mut rep = self.report(&claims::CONJECTURE, false);
        rep.hypothesis(self.hyp_rn());
        if rep.skip_if_unmet() {
            return rep;
        }
        let mut inner = self.report(&claims::CONJECTURE, false);
        self.conclude(&mut inner, "(dim C)^2 FPdim(C) / (dim(X)^2 |U(C)|)", |f| {
            Ok(PowerProduct::power_of(self.a.frame_dim_c(f), int(2))
                .with(self.a.frame_fp_global(f), Ratio::one())
                .with(self.dim_x(f)?, int(-2))
                .with(self.u(), int(-1)))
        });
        rep.quantities = inner.quantities;
        rep.notes.extend(inner.notes.into_iter().skip(1));
        rep.check(Check::new("integrality of the displayed quantity", None, inner.verdict));
        rep.check(Check::new("C is 1-Isaacs", None, aggregate(&isaacs_checks(self.a, Ratio::one()))));
        rep.conclude_from_checks();
        rep
    }

    /// Every divisibility report in claim order.
    pub fn all(&self) -> Vec<TheoremReport> {
        vec![
            self.fpdim_divides(),
            self.isaacs_half(),
            self.isaacs_any(),
            self.generated_half(),
            self.center_half(),
            self.generated_any(),
            self.center_any(),
            self.center_isaacs(),
            self.grading_isaacs(),
            self.square_identity(),
        ]
    }
}

/// Orbit decompositions of `dim C / |G|` and `(dim C)^(2s+1) / dim(X)^2`
/// for a generating simple `X`.
pub fn orbit_sum_identities(a: &Analysis, x: usize, s: Ratio<i64>) -> TheoremReport {
    let mut rep = TheoremReport::new(&claims::ORBIT_SUMS, format!("{}, X = {}, s = {s}", a.name(), a.label(x)));
    rep.hypothesis(Hypothesis::from_data("<X> = C", Some(a.is_faithful(x))));
    if rep.skip_if_unmet() {
        return rep;
    }
    if let Err(e) = orbit_sums_into(a, x, s, &mut rep) {
        rep.note(e.to_string());
        rep.set_verdict(Verdict::holds(None));
    }
    rep
}

fn orbit_sums_into(a: &Analysis, x: usize, s: Ratio<i64>, rep: &mut TheoremReport) -> Result<()> {
    check_exponent(s)?;
    let t = a.table();
    let orbits = star_orbits(t, a.dual(), a.group(), Some(x))?;
    let reps = orbits.non_vanishing_representatives();
    let weighted = |j: usize| a.class_dim(j).mul_ref(&t.value(j, x).norm_sq());
    let orbit_terms: Vec<Scalar> = reps.iter().map(|&j| weighted(j)).collect();
    let orbit_sum = Scalar::sum(orbit_terms.iter());
    let lhs = a.dim_c().div_ref(&Scalar::from(a.grading_order() as i64))?;
    let full_terms: Vec<Scalar> = (0..a.rank()).map(weighted).collect();
    let full = Scalar::sum(full_terms.iter());

    let dim_x = nonzero(a.dim(x).clone())?;
    let scaled = PowerProduct::power_of(a.dim_c().clone(), s * 2 + 1).with(dim_x.clone(), int(-2));
    let mut lambda_terms = Vec::new();
    for j in 0..a.rank() {
        let jj = t.involution(j);
        let class = a.class_dim(j).clone();
        let term = PowerProduct::power_of(a.dim_c().clone(), s * 2)
            .with(class, Ratio::one())
            .with(t.value(j, x).mul_ref(t.value(jj, x)), Ratio::one())
            .with(dim_x.clone(), int(-2));
        lambda_terms.push(term.eval()?);
    }
    let lambda_sum = Scalar::sum(lambda_terms.iter());
    let scaled_value = scaled.eval()?;

    rep.note(format!("non-vanishing orbit representatives {reps:?}"));
    rep.quantity("dim C / |G|", lhs.clone()).quantity("(dim C)^(2s+1) / dim(X)^2", scaled_value.clone());
    rep.check(Check::new(
        format!("sum of dim(C^j) |mu_j(X)|^2 over all characters = {full}"),
        Some(full.clone()),
        Verdict::Equality { result: full.compare_eq(a.dim_c()) },
    ));
    rep.check(Check::new(
        format!("sum over orbit representatives = {orbit_sum}"),
        Some(orbit_sum.clone()),
        Verdict::Equality { result: orbit_sum.compare_eq(&lhs) },
    ));
    rep.check(Check::new(
        format!("sum of lambda_s(mu_j, X) lambda_s(mu_j#, X) dim(C^j)^(2s-1) = {lambda_sum}"),
        Some(lambda_sum.clone()),
        Verdict::Equality { result: lambda_sum.compare_eq(&scaled_value) },
    ));
    rep.conclude_from_checks();
    Ok(())
}

/// Primes dividing a positive integer, ascending.
pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            out.push(p.to_u64().expect("prime factor fits in u64"));
            while (&n % &p).is_zero() {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n.to_u64().expect("prime factor fits in u64"));
    }
    out
}

fn is_prime(p: u64) -> bool {
    p >= 2 && prime_divisors(&BigInt::from(p)) == [p]
}

/// Ito-Michler criterion at the prime `p`: the braided direction and, under
/// the modular flag, the biconditional.
pub fn ito_michler(a: &Analysis, p: u64) -> Result<[TheoremReport; 2]> {
    if !is_prime(p) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    let weak = weakly_integral_check(a.table())?;
    let n = a.fp_global().as_integer().filter(|_| weak.weakly_integral).ok_or_else(|| {
        Error::Input(format!("{} is not weakly integral: FPdim(C) = {}", a.name(), a.fp_global()))
    })?;
    let pb = BigInt::from(p);
    if !(&n % &pb).is_zero() {
        return Err(Error::Input(format!("{p} does not divide FPdim(C) = {n}")));
    }
    let mut alpha = 0u32;
    let mut rest = n.clone();
    while (&rest % &pb).is_zero() {
        rest /= &pb;
        alpha += 1;
    }
    let p_alpha = pb.pow(alpha);
    let u = BigInt::from(a.grading_order());
    let grading = (&u % &p_alpha).is_zero();

    let mut squares = Vec::new();
    for x in 0..a.rank() {
        let d = a.fp_dim(x);
        squares.push(d.mul_ref(d).as_integer());
    }
    let divisible: Vec<usize> =
        (0..a.rank()).filter(|&x| squares[x].as_ref().is_some_and(|s| (s % &pb).is_zero())).collect();
    let undecided = squares.iter().any(Option::is_none);
    let coprime = if undecided && divisible.is_empty() { None } else { Some(divisible.is_empty()) };

    let subject = format!("{}, p = {p}", a.name());
    let describe = |rep: &mut TheoremReport| {
        rep.hypothesis(Hypothesis::from_data("weakly integral", Some(true)))
            .quantity("FPdim(C)", Scalar::from(n.clone()))
            .quantity("p^alpha", Scalar::from(p_alpha.clone()))
            .quantity("|U(C)|", Scalar::from(u.clone()));
        rep.note(format!("alpha = {alpha}; p^alpha {} |U(C)|", if grading { "divides" } else { "does not divide" }));
        if !divisible.is_empty() {
            let labels: Vec<&str> = divisible.iter().map(|&x| a.label(x)).collect();
            rep.note(format!("FPdim(X)^2 divisible by p for X in {{{}}}", labels.join(", ")));
        }
    };

    let mut braided = TheoremReport::new(&claims::ITO_MICHLER_BRAIDED, subject.clone());
    braided.hypothesis(Hypothesis::from_flag(Flag::Braided, a.assumptions()));
    describe(&mut braided);
    if !braided.skip_if_unmet() {
        let holds = if grading { coprime } else { Some(true) };
        braided.check(Check::new("p^alpha | |U(C)| implies p does not divide any FPdim(X)^2", None, Verdict::holds(holds)));
        braided.conclude_from_checks();
    }

    let mut modular = TheoremReport::new(&claims::ITO_MICHLER, subject);
    modular.hypothesis(Hypothesis::from_flag(Flag::Modular, a.assumptions()));
    describe(&mut modular);
    if !modular.skip_if_unmet() {
        let forward = if grading { coprime } else { Some(true) };
        let backward = match coprime {
            Some(true) => Some(grading),
            Some(false) => Some(true),
            None => None,
        };
        modular
            .check(Check::new("p^alpha | |U(C)| implies p does not divide any FPdim(X)^2", None, Verdict::holds(forward)))
            .check(Check::new("p divides no FPdim(X)^2 implies p^alpha | |U(C)|", None, Verdict::holds(backward)));
        modular.conclude_from_checks();
    }
    Ok([braided, modular])
}

/// The Ito-Michler reports for every prime dividing `FPdim(C)`, or a pair of
/// skipped reports when the ring is not weakly integral.
pub fn ito_michler_all(a: &Analysis) -> Vec<TheoremReport> {
    let primes = match a.fp_global().as_integer() {
        Some(n) => prime_divisors(&n),
        None => {
            let mut out = Vec::new();
            for claim in [&claims::ITO_MICHLER_BRAIDED, &claims::ITO_MICHLER] {
                let mut rep = TheoremReport::new(claim, a.name().to_string());
                rep.hypothesis(Hypothesis::from_data("weakly integral", Some(false)));
                rep.skip_if_unmet();
                out.push(rep);
            }
            return out;
        }
    };
    let mut out = Vec::new();
    for p in primes {
        match ito_michler(a, p) {
            Ok(pair) => out.extend(pair),
            Err(e) => {
                let mut rep = TheoremReport::new(&claims::ITO_MICHLER_BRAIDED, format!("{}, p = {p}", a.name()));
                rep.note(e.to_string());
                rep.set_verdict(Verdict::holds(None));
                out.push(rep);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Assumptions;
    use crate::ring::{from_rule, pointed_cyclic, FusionRing};
    use crate::scalar::parse_scalar;

    fn sc(text: &str) -> Scalar {
        parse_scalar(text).unwrap()
    }

    fn ising() -> FusionRing {
        from_rule(&["1", "eps", "sigma"], &[0, 1, 2], |i, j| match (i, j) {
            (0, k) | (k, 0) => vec![(k, 1)],
            (1, 1) => vec![(0, 1)],
            (1, 2) | (2, 1) => vec![(2, 1)],
            _ => vec![(0, 1), (1, 1)],
        })
        .unwrap()
    }

    fn fibonacci() -> FusionRing {
        from_rule(&["1", "tau"], &[0, 1], |i, j| match (i, j) {
            (0, k) | (k, 0) => vec![(k, 1)],
            _ => vec![(0, 1), (1, 1)],
        })
        .unwrap()
    }

    fn rep_s3() -> FusionRing {
        from_rule(&["1", "sgn", "V"], &[0, 1, 2], |i, j| match (i, j) {
            (0, k) | (k, 0) => vec![(k, 1)],
            (1, 1) => vec![(0, 1)],
            (1, 2) | (2, 1) => vec![(2, 1)],
            _ => vec![(0, 1), (1, 1), (2, 1)],
        })
        .unwrap()
    }

    fn analysis(name: &str, ring: FusionRing, flags: &str) -> Analysis {
        Analysis::new(name, ring, None, Assumptions::parse_list(flags).unwrap()).unwrap()
    }

    fn half() -> Ratio<i64> {
        Ratio::new(1, 2)
    }

    #[test]
    fn lambda_examples() {
        let a = analysis("ising", ising(), "");
        let l = lambda_s(&a, 2, 2, Ratio::zero()).unwrap();
        assert_eq!(l.value, Scalar::zero());
        assert_eq!(l.verdict.tier, IntegralityTier::IntegralExact);
        assert_eq!(lambda_s(&a, 1, 1, Ratio::zero()).unwrap().value, Scalar::one());
        for x in 0..3 {
            assert_eq!(lambda_s(&a, 0, x, Ratio::zero()).unwrap().value, Scalar::one());
        }
        let f = analysis("fib", fibonacci(), "");
        assert_eq!(lambda_s(&f, 1, 1, Ratio::zero()).unwrap().value, Scalar::from(-1));
        assert!(lambda_s(&f, 1, 1, Ratio::new(-1, 2)).is_err());
        assert!(lambda_s(&f, 1, 1, Ratio::new(1, 13)).is_err());
    }

    #[test]
    fn isaacs_and_frobenius() {
        for (name, ring) in [("ising", ising()), ("fib", fibonacci()), ("s3", rep_s3())] {
            let a = analysis(name, ring, "");
            for s in [Ratio::zero(), half(), Ratio::one()] {
                assert_eq!(is_s_isaacs(&a, s).outcome, Outcome::Pass, "{name} s = {s}");
            }
            assert_eq!(frobenius_type(&a, Ratio::one()).verdict.outcome(), Outcome::Pass, "{name}");
        }
        // sqrt(2) does not divide (dim C)^0 = 1
        let a = analysis("ising", ising(), "");
        let f = frobenius_type(&a, Ratio::zero());
        assert_eq!((f.verdict.outcome(), f.outcome), (Outcome::Fail, Outcome::Info));
    }

    #[test]
    fn divisibility_examples() {
        let a = analysis("ising", ising(), "modular,pseudo_unitary");
        let d = Divisibility::new(&a, 2, Ratio::zero()).unwrap();
        let r = d.grading_isaacs();
        assert_eq!(r.outcome, Outcome::Pass);
        assert_eq!(r.quantities[0].value, sc("sqrt(2)"));
        assert_eq!(r.verdict.tier(), Some(IntegralityTier::IntegralExact));
        assert_eq!(d.center_isaacs().quantities[0].value, sc("sqrt(2)"));
        assert_eq!(d.fpdim_divides().outcome, Outcome::Pass);
        // s = 0 is below the threshold of the half-integral statements
        assert_eq!(d.isaacs_half().outcome, Outcome::Skipped);
        for s in [Ratio::zero(), half(), Ratio::one(), Ratio::new(1, 3)] {
            let d = Divisibility::new(&a, 2, s).unwrap();
            for r in d.all() {
                assert!(matches!(r.outcome, Outcome::Pass | Outcome::Skipped), "{r:?}");
            }
        }

        let s3 = analysis("s3", rep_s3(), "");
        let d = Divisibility::new(&s3, 2, Ratio::zero()).unwrap();
        assert_eq!(d.grading_isaacs().quantities[0].value, Scalar::from(3));
        assert_eq!(d.fpdim_divides().outcome, Outcome::Skipped);
        let c = d.conjecture();
        assert_eq!(c.outcome, Outcome::Pass);
        assert_eq!(c.quantities[0].value, Scalar::from(54));
        let c = Divisibility::new(&a, 2, Ratio::zero()).unwrap().conjecture();
        assert_eq!(c.quantities[0].value, Scalar::from(16));
    }

    #[test]
    fn non_generating_object_skips() {
        let a = analysis("ising", ising(), "");
        let d = Divisibility::new(&a, 1, half()).unwrap();
        assert_eq!(d.generated_half().outcome, Outcome::Skipped);
        assert_eq!(d.center_half().outcome, Outcome::Pass);
        assert_eq!(orbit_sum_identities(&a, 1, half()).outcome, Outcome::Skipped);
    }

    #[test]
    fn orbit_sums() {
        for (name, ring, x) in [("ising", ising(), 2), ("s3", rep_s3(), 2), ("fib", fibonacci(), 1)] {
            let a = analysis(name, ring, "");
            for s in [Ratio::zero(), half(), Ratio::one()] {
                let r = orbit_sum_identities(&a, x, s);
                assert_eq!(r.verdict, Verdict::Equality { result: Equality::Equal }, "{name}: {r:?}");
            }
        }
    }

    #[test]
    fn ito_michler_cases() {
        let toric = from_rule(&["1", "e", "m", "f"], &[0, 1, 2, 3], |i, j| vec![(i ^ j, 1)]).unwrap();
        let a = analysis("toric", toric, "modular");
        for r in ito_michler(&a, 2).unwrap() {
            assert_eq!(r.outcome, Outcome::Pass, "{r:?}");
        }
        let a = analysis("ising", ising(), "modular");
        for r in ito_michler(&a, 2).unwrap() {
            assert_eq!(r.outcome, Outcome::Pass, "{r:?}");
        }
        assert!(ito_michler(&a, 3).is_err());
        assert!(ito_michler(&a, 4).is_err());
        let z3 = analysis("z3", pointed_cyclic(3), "braided");
        let [b, m] = ito_michler(&z3, 3).unwrap();
        assert_eq!((b.outcome, m.outcome), (Outcome::Pass, Outcome::Skipped));
        let fib = analysis("fib", fibonacci(), "modular");
        assert!(ito_michler_all(&fib).iter().all(|r| r.outcome == Outcome::Skipped));
        assert_eq!(prime_divisors(&BigInt::from(360)), vec![2, 3, 5]);
    }
}
