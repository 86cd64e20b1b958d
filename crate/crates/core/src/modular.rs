//! Modular data: the unnormalized S-matrix, the character table it
//! induces, Verlinde reconstruction and the squared-dimension divisibility.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::analysis::Analysis;
use crate::chars::{character_table, CharacterTable};
use crate::dual::star_orbits;
use crate::error::{Error, Result};
use crate::report::{claims, Assumptions, Check, Flag, Hypothesis, Outcome, TheoremReport, Verdict};
use crate::ring::FusionRing;
use crate::scalar::{Equality, IntegralityTier, IntegralityVerdict, PowerProduct, Scalar};

/// Unnormalized S-matrix with `S[0][0] = 1`, and optional T eigenvalues
/// that are stored but not used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularData {
    s: Vec<Vec<Scalar>>,
    dims: Vec<Scalar>,
    dim_c: Scalar,
    t: Option<Vec<Scalar>>,
}

fn decided(e: Equality, what: impl FnOnce() -> String) -> Result<bool> {
    e.holds().ok_or_else(|| Error::Indeterminate(what()))
}

impl ModularData {
    pub fn new(s: Vec<Vec<Scalar>>, t: Option<Vec<Scalar>>) -> Result<Self> {
        let r = s.len();
        if r == 0 || s.iter().any(|row| row.len() != r) {
            return Err(Error::Modular(format!("S-matrix must be square, got {r} rows")));
        }
        if let Some(t) = &t {
            if t.len() != r {
                return Err(Error::Modular(format!("T has {} entries for rank {r}", t.len())));
            }
        }
        if s[0][0] != Scalar::one() {
            return Err(Error::Modular(format!("S[0][0] = {} instead of 1", s[0][0])));
        }
        for i in 0..r {
            for j in i + 1..r {
                if !decided(s[i][j].compare_eq(&s[j][i]), || format!("symmetry at ({i}, {j})"))? {
                    return Err(Error::Modular(format!("not symmetric at ({i}, {j}): {} vs {}", s[i][j], s[j][i])));
                }
            }
        }
        let dims = s[0].clone();
        for (i, d) in dims.iter().enumerate() {
            if d.is_real() != Some(true) || !d.is_nonzero() {
                return Err(Error::Modular(format!("d_{i} = {d} is not a nonzero real")));
            }
        }
        let squares: Vec<Scalar> = dims.iter().map(|d| d.mul_ref(d)).collect();
        let dim_c = Scalar::sum(squares.iter());
        let data = ModularData { s, dims, dim_c, t };
        let rows = data.character_rows()?;
        for a in 0..r {
            for b in a + 1..r {
                let mut e = Equality::Equal;
                for (x, y) in rows[a].iter().zip(&rows[b]) {
                    e = e.and(x.compare_eq(y));
                }
                if decided(e, || format!("distinctness of characters {a} and {b}"))? {
                    return Err(Error::Modular(format!("degenerate: characters of objects {a} and {b} coincide")));
                }
            }
        }
        Ok(data)
    }

    pub fn rank(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self, i: usize, j: usize) -> &Scalar {
        &self.s[i][j]
    }

    pub fn dims(&self) -> &[Scalar] {
        &self.dims
    }

    /// `sum d_i^2`.
    pub fn dim_c(&self) -> &Scalar {
        &self.dim_c
    }

    pub fn t(&self) -> Option<&[Scalar]> {
        self.t.as_deref()
    }

    /// `rows[i'][i] = S[i][i'] / d_i'`.
    fn character_rows(&self) -> Result<Vec<Vec<Scalar>>> {
        let r = self.rank();
        (0..r).map(|c| (0..r).map(|i| self.s[i][c].div_ref(&self.dims[c])).collect()).collect()
    }

    /// Duality read off the S-matrix: `S[i*][j] = conj(S[i][j])`.
    fn object_dual(&self) -> Result<Vec<usize>> {
        let r = self.rank();
        let mut out = Vec::with_capacity(r);
        for i in 0..r {
            let conj: Vec<Scalar> = self.s[i].iter().map(Scalar::conj).collect();
            let hit = (0..r).find(|&k| self.s[k].iter().zip(&conj).all(|(a, b)| a.compare_eq(b).holds() == Some(true)));
            out.push(hit.ok_or_else(|| Error::Modular(format!("no dual found for object {i}")))?);
        }
        Ok(out)
    }
}

/// Characters induced by modular data, one per object.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularCharacters {
    /// Row `i'` is the character attached to object `i'`.
    pub table: CharacterTable,
    /// Object `i'` to the row of the ring's own character table, when a
    /// ring was supplied.
    pub to_ring_table: Option<Vec<usize>>,
}

pub fn characters_from_s(data: &ModularData, ring: Option<&FusionRing>) -> Result<ModularCharacters> {
    let object_dual = match ring {
        Some(ring) => {
            if ring.rank() != data.rank() {
                return Err(Error::Modular(format!("S-matrix has rank {}, ring has rank {}", data.rank(), ring.rank())));
            }
            ring.duals().to_vec()
        }
        None => data.object_dual()?,
    };
    let table = CharacterTable::from_rows(object_dual, data.character_rows()?, ring)?;
    let to_ring_table = match ring {
        Some(ring) => {
            let own = character_table(ring)?;
            let mut map = Vec::with_capacity(data.rank());
            for c in 0..data.rank() {
                let hit = (0..own.rank()).find(|&t| {
                    table.row(c).iter().zip(own.row(t)).all(|(a, b)| a.compare_eq(b).holds() == Some(true))
                });
                map.push(hit.ok_or_else(|| Error::Modular(format!("character of object {c} is missing from the ring's table")))?);
            }
            Some(map)
        }
        None => None,
    };
    Ok(ModularCharacters { table, to_ring_table })
}

/// `dim(C^i) = d_i^2`, checked against `dim C / n_i` from the induced table.
pub fn class_dims_modular(data: &ModularData, table: &CharacterTable) -> Result<Vec<Scalar>> {
    let mut out = Vec::with_capacity(data.rank());
    for (i, d) in data.dims().iter().enumerate() {
        let square = d.mul_ref(d);
        let derived = data.dim_c().div_ref(table.codegree(i))?;
        if square.compare_eq(&derived).holds() != Some(true) {
            return Err(Error::Modular(format!("d_{i}^2 = {square} but dim C / n_{i} = {derived}")));
        }
        out.push(square);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerlindeEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub reconstructed: Scalar,
    pub expected: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerlindeReport {
    pub verdict: Equality,
    /// Entries that differ from the ring's multiplicities.
    pub mismatches: Vec<VerlindeEntry>,
    /// Entries that are not nonnegative integers.
    pub non_integral: Vec<VerlindeEntry>,
}

impl VerlindeReport {
    pub fn holds(&self) -> Option<bool> {
        self.verdict.holds()
    }
}

/// `N_ij^k = sum_l S_il S_jl conj(S_kl) / (d_l dim C)` against the ring.
pub fn verlinde_cross_check(data: &ModularData, ring: &FusionRing) -> Result<VerlindeReport> {
    let r = data.rank();
    if ring.rank() != r {
        return Err(Error::Modular(format!("S-matrix has rank {r}, ring has rank {}", ring.rank())));
    }
    let weights = (0..r).map(|l| data.dims()[l].mul_ref(data.dim_c()).inv()).collect::<Result<Vec<_>>>()?;
    let mut verdict = Equality::Equal;
    let mut mismatches = Vec::new();
    let mut non_integral = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let terms: Vec<Scalar> = (0..r)
                    .map(|l| data.s(i, l).mul_ref(data.s(j, l)).mul_ref(&data.s(k, l).conj()).mul_ref(&weights[l]))
                    .collect();
                let value = Scalar::sum(terms.iter());
                let expected = ring.n(i, j, k);
                let entry = || VerlindeEntry { i, j, k, reconstructed: value.clone(), expected };
                let e = value.compare_eq(&Scalar::from(BigInt::from(expected)));
                verdict = verdict.and(e);
                if e.holds() == Some(false) {
                    mismatches.push(entry());
                }
                let integral = match value.as_rational() {
                    Some(q) => Some(q.is_integer() && !q.is_negative()),
                    None if value.is_exact() => Some(false),
                    None => None,
                };
                if integral == Some(false) {
                    non_integral.push(entry());
                    verdict = verdict.and(Equality::Distinct);
                }
            }
        }
    }
    Ok(VerlindeReport { verdict, mismatches, non_integral })
}

/// Analysis of a ring with the character table and dimensions induced by
/// modular data; rows are in object order.
pub fn modular_analysis(name: &str, ring: FusionRing, data: &ModularData, assumptions: Assumptions) -> Result<Analysis> {
    let chars = characters_from_s(data, Some(&ring))?;
    Analysis::from_table(name, ring, chars.table, Some(0), assumptions)
}

/// `d_X^2 | dim C / |U(C)|` for a generating simple `X`, with the orbit
/// identity `dim C / (|G| d_X^2) = sum |mu_X(X_i)|^2` over non-vanishing
/// orbit representatives.
pub fn theorem_1_2(a: &Analysis, x: usize) -> TheoremReport {
    let mut rep = TheoremReport::new(&claims::MODULAR_SQUARE, format!("{}, X = {}", a.name(), a.label(x)));
    rep.hypothesis(Hypothesis::from_flag(Flag::Modular, a.assumptions()))
        .hypothesis(Hypothesis::from_data("<X> = C", Some(a.is_faithful(x))));
    let u = Scalar::from(a.grading_order() as i64);
    if rep.unmet().is_some() {
        // the quotient is still shown for a non-generating X
        let d2 = a.dim(x).mul_ref(a.dim(x));
        if let Ok(q) = a.dim_c().div_ref(&u).and_then(|v| v.div_ref(&d2)) {
            rep.quantity("dim C / (|U(C)| d_X^2)", q);
        }
        rep.skip_if_unmet();
        return rep;
    }
    let certified = a.certify(&[], |f, _| {
        let d = a.frame_dim(f, x);
        if d.zero_test() == Equality::Equal {
            return Err(Error::DivisionByZero);
        }
        Ok(PowerProduct::of(a.frame_dim_c(f)).with(u.clone(), Ratio::from_integer(-1)).with(d, Ratio::from_integer(-2)))
    });
    let d2 = a.dim(x).mul_ref(a.dim(x));
    match certified.and_then(|(pp, v)| Ok((pp.eval()?, v))) {
        Ok((quotient, v)) => {
            rep.quantity("dim C", a.dim_c().clone())
                .quantity("|U(C)|", u.clone())
                .quantity("d_X^2", d2.clone())
                .quantity("dim C / (|U(C)| d_X^2)", quotient.clone());
            rep.check(Check::new("d_X^2 | dim C / |U(C)|", Some(quotient.clone()), Verdict::integrality(&v)));
            let back = quotient.mul_ref(&u).mul_ref(&d2);
            rep.check(Check::new(
                "quotient |U(C)| d_X^2 = dim C",
                Some(back.clone()),
                Verdict::Equality { result: back.compare_eq(a.dim_c()) },
            ));
            match orbit_identity(a, x, &quotient) {
                Ok(c) => rep.check(c),
                Err(e) => rep.check(Check::new(format!("orbit identity: {e}"), None, Verdict::holds(None))),
            };
            // the headline is the divisibility; a failed identity overrides it
            if rep.checks[1..].iter().all(|c| c.verdict.outcome() == Outcome::Pass) {
                let headline = rep.checks[0].verdict.clone();
                rep.set_verdict(headline);
            } else {
                rep.conclude_from_checks();
            }
        }
        Err(e) => {
            rep.note(e.to_string());
            rep.set_verdict(Verdict::integrality(&IntegralityVerdict { tier: IntegralityTier::Indeterminate, witness: None }));
        }
    }
    rep
}

fn orbit_identity(a: &Analysis, x: usize, quotient: &Scalar) -> Result<Check> {
    let t = a.table();
    let orbits = star_orbits(t, a.dual(), a.group(), Some(x))?;
    let reps = orbits.non_vanishing_representatives();
    let terms: Vec<Scalar> = reps.iter().map(|&i| t.value(x, i).norm_sq()).collect();
    let sum = Scalar::sum(terms.iter());
    Ok(Check::new(
        format!("sum of |mu_X(X_i)|^2 over representatives {reps:?} = {sum}"),
        Some(sum.clone()),
        Verdict::Equality { result: sum.compare_eq(quotient) },
    ))
}

/// Integer `d_X^2 |U(C)|` divisibility for integral modular data, used by
/// callers that need a plain integer witness.
pub fn integral_quotient(a: &Analysis, x: usize) -> Option<BigInt> {
    let q = a.dim_c().div_ref(&Scalar::from(a.grading_order() as i64)).ok()?.div_ref(&a.dim(x).mul_ref(a.dim(x))).ok()?;
    q.as_rational().filter(|r| r.is_integer() && !r.is_zero()).map(|r| r.to_integer())
}
