//! Character tables of commutative fusion rings.
//!
//! Characters are the common eigenvectors of the fusion matrices. A random
//! integer combination `M = sum c_i N_i^T` separates them generically; its
//! characteristic polynomial is computed exactly, its roots are isolated in
//! certified disks, and each eigenvector is solved for over [`Scalar`].

use std::cmp::Ordering;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{certified_roots, charpoly, locate, CertifiedRoot};
use crate::ring::FusionRing;
use crate::scalar::{is_algebraic_integer, with_precision, working_precision, Equality, IntegralityVerdict, Scalar};

const SEED: u64 = 0x5eed_f00d;
const ATTEMPTS_PER_PRECISION: u64 = 24;
const PRECISION_DOUBLINGS: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    values: Vec<Vec<Scalar>>,
    fp_index: usize,
    codegrees: Vec<Scalar>,
    involution: Vec<usize>,
    object_dual: Vec<usize>,
}

impl CharacterTable {
    /// Builds a table from rows `values[j][i] = mu_j(X_i)` given in any order.
    /// Rows are checked for multiplicativity when `ring` is supplied.
    pub fn from_rows(object_dual: Vec<usize>, values: Vec<Vec<Scalar>>, ring: Option<&FusionRing>) -> Result<Self> {
        let r = object_dual.len();
        if values.len() != r || values.iter().any(|row| row.len() != r) {
            return Err(Error::Shape(format!("character table must be {r}x{r}")));
        }
        if let Some(ring) = ring {
            for (j, row) in values.iter().enumerate() {
                if let Some((i, k)) = homomorphism_defect(ring, row) {
                    return Err(Error::Inconsistent(format!(
                        "row {j} is not multiplicative at ({}, {})",
                        ring.label(i),
                        ring.label(k)
                    )));
                }
            }
        }
        let positive: Vec<usize> = (0..r)
            .filter(|&j| values[j].iter().all(|v| v.is_positive_real() == Some(true)))
            .collect();
        let fp_index = match positive.as_slice() {
            [j] => *j,
            [] => return Err(Error::Inconsistent("no strictly positive character".into())),
            _ => return Err(Error::Inconsistent("more than one strictly positive character".into())),
        };
        let codegrees: Vec<Scalar> = values
            .iter()
            .map(|row| Scalar::sum((0..r).map(|i| row[i].mul_ref(&row[object_dual[i]])).collect::<Vec<_>>().iter()))
            .collect();
        for (j, n) in codegrees.iter().enumerate() {
            if n.is_positive_real() == Some(false) {
                return Err(Error::Inconsistent(format!("codegree of character {j} is not positive")));
            }
        }
        let mut involution = Vec::with_capacity(r);
        for row in &values {
            let conj: Vec<Scalar> = row.iter().map(Scalar::conj).collect();
            let matches: Vec<usize> = (0..r).filter(|&k| rows_equal(&values[k], &conj) == Some(true)).collect();
            match matches.as_slice() {
                [k] => involution.push(*k),
                _ => return Err(Error::Inconsistent("conjugation does not permute the characters".into())),
            }
        }
        Ok(CharacterTable { values, fp_index, codegrees, involution, object_dual })
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    /// `mu_j(X_i)`.
    pub fn value(&self, j: usize, i: usize) -> &Scalar {
        &self.values[j][i]
    }

    pub fn row(&self, j: usize) -> &[Scalar] {
        &self.values[j]
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.values
    }

    pub fn fp_index(&self) -> usize {
        self.fp_index
    }

    pub fn fp_dims(&self) -> &[Scalar] {
        &self.values[self.fp_index]
    }

    pub fn fp_dim_global(&self) -> &Scalar {
        &self.codegrees[self.fp_index]
    }

    pub fn codegree(&self, j: usize) -> &Scalar {
        &self.codegrees[j]
    }

    pub fn codegrees(&self) -> &[Scalar] {
        &self.codegrees
    }

    /// `j#`, the character with conjugate values.
    pub fn involution(&self, j: usize) -> usize {
        self.involution[j]
    }

    pub fn object_dual(&self, i: usize) -> usize {
        self.object_dual[i]
    }

    pub fn is_exact(&self) -> bool {
        self.values.iter().flatten().all(Scalar::is_exact)
    }

    /// Largest interval precision among the entries, or the working precision.
    pub fn precision(&self) -> u32 {
        self.values.iter().flatten().filter_map(Scalar::precision).max().unwrap_or_else(working_precision)
    }
}

fn rows_equal(a: &[Scalar], b: &[Scalar]) -> Option<bool> {
    let mut all = Equality::Equal;
    for (x, y) in a.iter().zip(b) {
        all = all.and(x.compare_eq(y));
        if all == Equality::Distinct {
            return Some(false);
        }
    }
    all.holds()
}

/// First pair `(i, k)` where `mu(X_i) mu(X_k) != sum_l N_ik^l mu(X_l)` is certain.
fn homomorphism_defect(ring: &FusionRing, row: &[Scalar]) -> Option<(usize, usize)> {
    let r = ring.rank();
    for i in 0..r {
        for k in i..r {
            let lhs = row[i].mul_ref(&row[k]);
            let rhs = ring
                .constituents(i, k)
                .fold(Scalar::zero(), |acc, l| acc.add_ref(&row[l].mul_ref(&Scalar::from(ring.n(i, k, l) as i64))));
            if lhs.compare_eq(&rhs).holds() != Some(true) {
                return Some((i, k));
            }
        }
    }
    None
}

enum Failure {
    Collision,
    Precision(String),
    Fatal(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Separation(m) | Error::Indeterminate(m) => Failure::Precision(m),
            Error::IndeterminateDivision => Failure::Precision("pivot enclosure contains zero".into()),
            other => Failure::Fatal(other),
        }
    }
}

/// Solves `A u = 0` with `u_0 = 1` by Gaussian elimination over scalars.
fn null_vector(a: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
    let n = a.len();
    if n == 1 {
        return Ok(vec![Scalar::one()]);
    }
    // unknowns u_1..u_{n-1}; augmented column holds -A[r][0]
    let mut rows: Vec<Vec<Scalar>> = a
        .iter()
        .map(|row| {
            let mut r: Vec<Scalar> = row[1..].to_vec();
            r.push(row[0].neg_ref());
            r
        })
        .collect();
    let unknowns = n - 1;
    let mut pivot_rows = Vec::with_capacity(unknowns);
    let mut used = vec![false; n];
    for c in 0..unknowns {
        let candidate = (0..n)
            .filter(|&r| !used[r] && rows[r][c].is_nonzero())
            .max_by(|&x, &y| {
                let ex = rows[x][c].is_exact();
                let ey = rows[y][c].is_exact();
                ex.cmp(&ey).then(rows[x][c].approx_abs().total_cmp(&rows[y][c].approx_abs()))
            });
        let p = candidate.ok_or_else(|| Error::Separation(format!("no certified pivot in column {}", c + 1)))?;
        used[p] = true;
        let inv = rows[p][c].inv()?;
        for r in 0..n {
            if r == p || rows[r][c].zero_test() == Equality::Equal {
                continue;
            }
            let f = rows[r][c].mul_ref(&inv);
            for cc in c..=unknowns {
                let t = f.mul_ref(&rows[p][cc]);
                rows[r][cc] = rows[r][cc].sub_ref(&t);
            }
            rows[r][c] = Scalar::zero();
        }
        pivot_rows.push(p);
    }
    let mut u = vec![Scalar::one()];
    for (c, &p) in pivot_rows.iter().enumerate() {
        u.push(rows[p][unknowns].div_ref(&rows[p][c])?);
    }
    Ok(u)
}

/// Certified spectrum of each fusion matrix, used to recognize exact values.
fn spectra(ring: &FusionRing, prec: u32) -> Result<Vec<Vec<CertifiedRoot>>> {
    (0..ring.rank())
        .map(|i| certified_roots(&charpoly(&ring.fusion_matrix_big(i)?).squarefree_part(), prec))
        .collect()
}

fn attempt(ring: &FusionRing, attempt: u64) -> std::result::Result<Vec<Vec<Scalar>>, Failure> {
    let r = ring.rank();
    let prec = working_precision();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED.wrapping_add(attempt));
    let coeffs: Vec<i64> = (0..r).map(|i| if i == 0 { 0 } else { rng.gen_range(1..=32) }).collect();
    // M = sum c_i N_i^T; its eigenvectors are the character rows.
    let m: Vec<Vec<BigInt>> = (0..r)
        .map(|j| {
            (0..r)
                .map(|k| BigInt::from((0..r).map(|i| coeffs[i] * ring.n(i, j, k) as i64).sum::<i64>()))
                .collect()
        })
        .collect();
    let p = charpoly(&m);
    if !p.is_squarefree() {
        return Err(Failure::Collision);
    }
    let roots = certified_roots(&p, prec)?;
    let mut rows = Vec::with_capacity(r);
    for root in &roots {
        let a: Vec<Vec<Scalar>> = (0..r)
            .map(|x| {
                (0..r)
                    .map(|y| {
                        let e = Scalar::from_bigint(m[x][y].clone());
                        if x == y {
                            e.sub_ref(&root.value)
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect();
        rows.push(null_vector(&a)?);
    }
    if rows.iter().flatten().any(|v| !v.is_exact()) {
        let spec = spectra(ring, prec)?;
        for row in rows.iter_mut() {
            for (i, v) in row.iter_mut().enumerate() {
                if let Scalar::Interval(b) = v {
                    if let Some(k) = locate(&spec[i], b) {
                        if spec[i][k].value.is_exact() {
                            *v = spec[i][k].value.clone();
                        }
                    }
                }
            }
        }
    }
    for row in &rows {
        if let Some((i, k)) = homomorphism_defect(ring, row) {
            return Err(Failure::Precision(format!(
                "eigenvector is not multiplicative at ({}, {})",
                ring.label(i),
                ring.label(k)
            )));
        }
    }
    Ok(rows)
}

fn order_rows(rows: &mut [Vec<Scalar>]) {
    let positive = |row: &Vec<Scalar>| row.iter().all(|v| v.is_positive_real() == Some(true));
    rows.sort_by(|a, b| match (positive(a), positive(b)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => b.iter().zip(a.iter()).map(|(x, y)| x.lex_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal),
    });
}

/// The character table, FP character first and the rest in descending
/// lexicographic order of their value tuples.
pub fn character_table(ring: &FusionRing) -> Result<CharacterTable> {
    if !ring.is_commutative() {
        return Err(Error::NonCommutative);
    }
    if let Some(v) = ring.validate().first() {
        return Err(Error::Invalid(v.describe(ring)));
    }
    let base = working_precision();
    let mut last = String::from("no attempt made");
    for doubling in 0..=PRECISION_DOUBLINGS {
        let prec = base << doubling;
        for k in 0..ATTEMPTS_PER_PRECISION {
            match with_precision(prec, || attempt(ring, k)) {
                Ok(mut rows) => {
                    order_rows(&mut rows);
                    return with_precision(prec, || CharacterTable::from_rows(ring.duals().to_vec(), rows, None));
                }
                Err(Failure::Collision) => last = "eigenvalues of every random combination collide".into(),
                Err(Failure::Precision(m)) => {
                    last = m;
                    break;
                }
                Err(Failure::Fatal(e)) => return Err(e),
            }
        }
    }
    Err(Error::Separation(format!(
        "{last} (after {PRECISION_DOUBLINGS} precision doublings from {base} bits)"
    )))
}

/// Dimension function `d_i = mu_delta(X_i)` and the derived class dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalData {
    pub index: usize,
    pub dims: Vec<Scalar>,
    pub dim_c: Scalar,
    pub class_dims: Vec<Scalar>,
}

impl SphericalData {
    /// `dim(C^j)` summed over a set of characters.
    pub fn n_dim(&self, set: &[usize]) -> Scalar {
        Scalar::sum(set.iter().map(|&j| &self.class_dims[j]))
    }
}

/// Selects the dimension character (the FP character by default) and
/// derives `dim C = n_delta` and `dim(C^j) = dim C / n_j`.
pub fn spherical_data(table: &CharacterTable, index: Option<usize>) -> Result<SphericalData> {
    let delta = index.unwrap_or(table.fp_index());
    if delta >= table.rank() {
        return Err(Error::IndexOutOfRange { index: delta, rank: table.rank() });
    }
    let dims = table.row(delta).to_vec();
    if dims[0] != Scalar::one() {
        return Err(Error::DimensionCharacter("d_0 must be 1".into()));
    }
    for (i, d) in dims.iter().enumerate() {
        if d.is_real() != Some(true) {
            return Err(Error::DimensionCharacter(format!("d_{i} = {d} is not real")));
        }
        if !d.is_nonzero() {
            return Err(Error::DimensionCharacter(format!("d_{i} vanishes")));
        }
        if d.compare_eq(&dims[table.object_dual(i)]).holds() != Some(true) {
            return Err(Error::DimensionCharacter(format!("d_{i} differs from the dimension of its dual")));
        }
    }
    let dim_c = table.codegree(delta).clone();
    let class_dims = table.codegrees().iter().map(|n| dim_c.div_ref(n)).collect::<Result<Vec<_>>>()?;
    Ok(SphericalData { index: delta, dims, dim_c, class_dims })
}

/// Outcome of an identity check with the largest observed deviation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub verdict: Equality,
    pub max_deviation: f64,
    pub failures: Vec<String>,
}

impl IdentityCheck {
    pub(crate) fn new() -> Self {
        IdentityCheck { verdict: Equality::Equal, max_deviation: 0.0, failures: Vec::new() }
    }

    pub(crate) fn record(&mut self, what: impl FnOnce() -> String, lhs: &Scalar, rhs: &Scalar) {
        let e = lhs.compare_eq(rhs);
        self.verdict = self.verdict.and(e);
        if e != Equality::Equal {
            self.max_deviation = self.max_deviation.max(lhs.sub_ref(rhs).magnitude_upper());
        }
        if e.holds() != Some(true) {
            self.failures.push(format!("{}: {} vs {}", what(), lhs, rhs));
        }
    }

    pub fn holds(&self) -> Option<bool> {
        self.verdict.holds()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrthogonalityReport {
    pub first: IdentityCheck,
    pub second: IdentityCheck,
    pub inverse_codegrees: IdentityCheck,
}

impl OrthogonalityReport {
    pub fn max_deviation(&self) -> f64 {
        self.first.max_deviation.max(self.second.max_deviation).max(self.inverse_codegrees.max_deviation)
    }

    pub fn verdict(&self) -> Equality {
        self.first.verdict.and(self.second.verdict).and(self.inverse_codegrees.verdict)
    }
}

/// Both orthogonality relations and `sum_j 1/n_j = 1`.
pub fn verify_orthogonality(table: &CharacterTable, spherical: &SphericalData) -> Result<OrthogonalityReport> {
    let r = table.rank();
    let mut first = IdentityCheck::new();
    for j in 0..r {
        for k in 0..r {
            let lhs =
                Scalar::sum((0..r).map(|i| table.value(j, i).mul_ref(table.value(k, table.object_dual(i)))).collect::<Vec<_>>().iter());
            let rhs = if j == k { table.codegree(j).clone() } else { Scalar::zero() };
            first.record(|| format!("rows {j}, {k}"), &lhs, &rhs);
        }
    }
    let weights: Vec<Scalar> =
        spherical.class_dims.iter().map(|c| c.div_ref(&spherical.dim_c)).collect::<Result<_>>()?;
    let mut second = IdentityCheck::new();
    for x in 0..r {
        for y in 0..r {
            let y_dual = table.object_dual(y);
            let lhs = Scalar::sum(
                (0..r)
                    .map(|j| weights[j].mul_ref(&table.value(j, x).mul_ref(table.value(j, y_dual))))
                    .collect::<Vec<_>>()
                    .iter(),
            );
            let rhs = Scalar::from((x == y) as i64);
            second.record(|| format!("objects {x}, {y}"), &lhs, &rhs);
        }
    }
    let mut inverse_codegrees = IdentityCheck::new();
    let total = Scalar::sum(table.codegrees().iter().map(|n| n.inv()).collect::<Result<Vec<_>>>()?.iter());
    inverse_codegrees.record(|| "sum of inverse codegrees".into(), &total, &Scalar::one());
    Ok(OrthogonalityReport { first, second, inverse_codegrees })
}

/// Orders `h_j = FPdim(C)/n_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orders {
    pub h: Vec<Scalar>,
}

impl Orders {
    /// `n(S) = sum_{j in S} h_j`.
    pub fn n_of(&self, set: &[usize]) -> Scalar {
        Scalar::sum(set.iter().map(|&j| &self.h[j]))
    }
}

/// Orders together with the check `h_j = (FPdim(C)/dim C) dim(C^j)`.
pub fn orders(table: &CharacterTable, spherical: &SphericalData) -> Result<(Orders, IdentityCheck)> {
    let fp = table.fp_dim_global();
    let h: Vec<Scalar> = table.codegrees().iter().map(|n| fp.div_ref(n)).collect::<Result<_>>()?;
    let ratio = fp.div_ref(&spherical.dim_c)?;
    let mut check = IdentityCheck::new();
    for (j, hj) in h.iter().enumerate() {
        check.record(|| format!("order of character {j}"), hj, &ratio.mul_ref(&spherical.class_dims[j]));
    }
    Ok((Orders { h }, check))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakIntegrality {
    pub weakly_integral: bool,
    pub fp_global: Scalar,
    /// Verdicts on `FPdim(X_i)^2`.
    pub fp_squares: Vec<IntegralityVerdict>,
    /// Verdicts on `FPdim(C)/n_j`.
    pub class_dims: Vec<IntegralityVerdict>,
}

pub fn weakly_integral_check(table: &CharacterTable) -> Result<WeakIntegrality> {
    let fp_global = table.fp_dim_global().clone();
    let weakly_integral = fp_global.as_integer().is_some();
    let (fp_squares, class_dims) = if weakly_integral {
        let sq = table.fp_dims().iter().map(|d| is_algebraic_integer(&d.mul_ref(d), None)).collect();
        let cd = table
            .codegrees()
            .iter()
            .map(|n| fp_global.div_ref(n).map(|h| is_algebraic_integer(&h, None)))
            .collect::<Result<_>>()?;
        (sq, cd)
    } else {
        (Vec::new(), Vec::new())
    };
    Ok(WeakIntegrality { weakly_integral, fp_global, fp_squares, class_dims })
}
