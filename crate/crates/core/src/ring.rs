//! Fusion rings: structure constants, axiom validation, fusion matrices and
//! Frobenius-Perron dimensions.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{certified_roots, charpoly};
use crate::scalar::{working_precision, Equality, Scalar};

/// Largest multiplicity accepted by [`FusionRing::validate`].
pub const MAX_MULTIPLICITY: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    dual: Vec<usize>,
    n: Vec<Vec<Vec<u64>>>,
    original_index: Vec<usize>,
}

/// A failed ring axiom with the offending indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    /// No basis element acts as a two-sided unit.
    MissingUnit,
    Unit { i: usize, j: usize, k: usize, value: u64 },
    DualNotInvolution { i: usize },
    DualUnit,
    Duality { i: usize, j: usize, value: u64 },
    Associativity { i: usize, j: usize, k: usize, l: usize, lhs: u64, rhs: u64 },
    Reciprocity { i: usize, j: usize, k: usize },
    Multiplicity { i: usize, j: usize, k: usize, value: u64 },
}

impl Violation {
    pub fn describe(&self, ring: &FusionRing) -> String {
        let l = |i: &usize| ring.label(*i);
        match self {
            Violation::MissingUnit => "no basis element is a two-sided unit".into(),
            Violation::Unit { i, j, k, value } => {
                format!("unit law: N[{}][{}][{}] = {value}", l(i), l(j), l(k))
            }
            Violation::DualNotInvolution { i } => format!("duality is not an involution at {}", l(i)),
            Violation::DualUnit => "the unit is not self-dual".into(),
            Violation::Duality { i, j, value } => {
                format!("duality: N[{}][{}][{}] = {value}", l(i), l(j), l(&0))
            }
            Violation::Associativity { i, j, k, l: m, lhs, rhs } => format!(
                "associativity at ({}, {}, {}, {}): ({}{}){} has {lhs}, {}({}{}) has {rhs}",
                l(i),
                l(j),
                l(k),
                l(m),
                l(i),
                l(j),
                l(k),
                l(i),
                l(j),
                l(k)
            ),
            Violation::Reciprocity { i, j, k } => {
                format!("Frobenius reciprocity fails at ({}, {}, {})", l(i), l(j), l(k))
            }
            Violation::Multiplicity { i, j, k, value } => {
                format!("multiplicity N[{}][{}][{}] = {value} exceeds {MAX_MULTIPLICITY}", l(i), l(j), l(k))
            }
        }
    }
}

/// Frobenius-Perron dimensions of the basis and of the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpDims {
    pub dims: Vec<Scalar>,
    pub global: Scalar,
}

impl FusionRing {
    /// Checks shapes, then moves the unit (if one is found) to index 0.
    pub fn new(labels: Vec<String>, dual: Vec<usize>, n: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        let rank = labels.len();
        if rank == 0 {
            return Err(Error::Shape("rank must be positive".into()));
        }
        if dual.len() != rank {
            return Err(Error::Shape(format!("dual has length {}, expected {rank}", dual.len())));
        }
        if let Some(&bad) = dual.iter().find(|&&d| d >= rank) {
            return Err(Error::IndexOutOfRange { index: bad, rank });
        }
        if n.len() != rank || n.iter().any(|a| a.len() != rank || a.iter().any(|b| b.len() != rank)) {
            return Err(Error::Shape(format!("fusion tensor must be {rank}x{rank}x{rank}")));
        }
        let ring = FusionRing { labels, dual, n, original_index: (0..rank).collect() };
        Ok(match ring.find_unit() {
            Some(u) if u != 0 => ring.move_to_front(u),
            _ => ring,
        })
    }

    fn find_unit(&self) -> Option<usize> {
        let r = self.rank();
        (0..r).find(|&u| {
            (0..r).all(|j| (0..r).all(|k| self.n[u][j][k] == (j == k) as u64 && self.n[j][u][k] == (j == k) as u64))
        })
    }

    fn move_to_front(&self, u: usize) -> FusionRing {
        let perm: Vec<usize> = std::iter::once(u).chain((0..self.rank()).filter(|&i| i != u)).collect();
        self.permuted(&perm)
    }

    /// Relabels so that new index `a` is old index `perm[a]`.
    pub fn permuted(&self, perm: &[usize]) -> FusionRing {
        let r = self.rank();
        let mut inv = vec![0; r];
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        let n = (0..r)
            .map(|a| (0..r).map(|b| (0..r).map(|c| self.n[perm[a]][perm[b]][perm[c]]).collect()).collect())
            .collect();
        FusionRing {
            labels: perm.iter().map(|&p| self.labels[p].clone()).collect(),
            dual: perm.iter().map(|&p| inv[self.dual[p]]).collect(),
            n,
            original_index: perm.iter().map(|&p| self.original_index[p]).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    /// `N[i][j][k]`: multiplicity of `X_k` in `X_i X_j`.
    pub fn n(&self, i: usize, j: usize, k: usize) -> u64 {
        self.n[i][j][k]
    }

    pub fn tensor(&self) -> &[Vec<Vec<u64>>] {
        &self.n
    }

    /// Input position of each basis element, after moving the unit first.
    pub fn original_index(&self) -> &[usize] {
        &self.original_index
    }

    pub fn was_relabeled(&self) -> bool {
        self.original_index.iter().enumerate().any(|(a, &b)| a != b)
    }

    /// Constituents of `X_i X_j`.
    pub fn constituents(&self, i: usize, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&k| self.n[i][j][k] > 0)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let r = self.rank();
        let n = &self.n;
        let mut out = Vec::new();
        if self.find_unit() != Some(0) {
            out.push(Violation::MissingUnit);
            for j in 0..r {
                for k in 0..r {
                    let want = (j == k) as u64;
                    if n[0][j][k] != want {
                        out.push(Violation::Unit { i: 0, j, k, value: n[0][j][k] });
                    }
                    if j != 0 && n[j][0][k] != want {
                        out.push(Violation::Unit { i: j, j: 0, k, value: n[j][0][k] });
                    }
                }
            }
        }
        if self.dual[0] != 0 {
            out.push(Violation::DualUnit);
        }
        for i in 0..r {
            if self.dual[self.dual[i]] != i {
                out.push(Violation::DualNotInvolution { i });
            }
        }
        for i in 0..r {
            for j in 0..r {
                let want = (j == self.dual[i]) as u64;
                if n[i][j][0] != want {
                    out.push(Violation::Duality { i, j, value: n[i][j][0] });
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    if n[i][j][k] > MAX_MULTIPLICITY {
                        out.push(Violation::Multiplicity { i, j, k, value: n[i][j][k] });
                    }
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        let lhs: u64 = (0..r).map(|m| n[i][j][m] * n[m][k][l]).sum();
                        let rhs: u64 = (0..r).map(|m| n[j][k][m] * n[i][m][l]).sum();
                        if lhs != rhs {
                            out.push(Violation::Associativity { i, j, k, l, lhs, rhs });
                        }
                    }
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let v = n[i][j][k];
                    if v != n[self.dual[i]][k][j] || v != n[k][self.dual[j]][i] {
                        out.push(Violation::Reciprocity { i, j, k });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `(N_i)_{k,j} = N[i][j][k]`: left multiplication by `X_i`.
    pub fn fusion_matrix(&self, i: usize) -> Result<Vec<Vec<u64>>> {
        let r = self.rank();
        if i >= r {
            return Err(Error::IndexOutOfRange { index: i, rank: r });
        }
        Ok((0..r).map(|k| (0..r).map(|j| self.n[i][j][k]).collect()).collect())
    }

    pub fn fusion_matrix_big(&self, i: usize) -> Result<Vec<Vec<BigInt>>> {
        Ok(self
            .fusion_matrix(i)?
            .into_iter()
            .map(|row| row.into_iter().map(BigInt::from).collect())
            .collect())
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..r).all(|j| (0..r).all(|k| self.n[i][j][k] == self.n[j][i][k])))
    }

    /// The ring spanned by `members` (sorted, containing 0, closed under
    /// products and duals), relabeled to `0..members.len()`.
    pub fn restrict(&self, members: &[usize]) -> Result<FusionRing> {
        let mut pos = vec![None; self.rank()];
        for (a, &m) in members.iter().enumerate() {
            if m >= self.rank() {
                return Err(Error::IndexOutOfRange { index: m, rank: self.rank() });
            }
            pos[m] = Some(a);
        }
        if members.first() != Some(&0) {
            return Err(Error::Invalid("a subring must contain the unit first".into()));
        }
        for &i in members {
            if pos[self.dual[i]].is_none() {
                return Err(Error::Invalid(format!("subring is missing the dual of {}", self.label(i))));
            }
            for &j in members {
                if let Some(k) = self.constituents(i, j).find(|&k| pos[k].is_none()) {
                    return Err(Error::Invalid(format!(
                        "subring is not closed: {} appears in {} x {}",
                        self.label(k),
                        self.label(i),
                        self.label(j)
                    )));
                }
            }
        }
        let n = members
            .iter()
            .map(|&i| members.iter().map(|&j| members.iter().map(|&k| self.n[i][j][k]).collect()).collect())
            .collect();
        Ok(FusionRing {
            labels: members.iter().map(|&i| self.labels[i].clone()).collect(),
            dual: members.iter().map(|&i| pos[self.dual[i]].unwrap()).collect(),
            n,
            original_index: members.to_vec(),
        })
    }

    /// Perron-Frobenius vector of `sum_i N_i` in double precision, scaled so
    /// that the unit entry is 1.
    pub fn perron_vector_f64(&self) -> Vec<f64> {
        let r = self.rank();
        let a: Vec<Vec<f64>> = (0..r)
            .map(|k| (0..r).map(|j| (0..r).map(|i| self.n[i][j][k] as f64).sum()).collect())
            .collect();
        let mut v = vec![1.0; r];
        for _ in 0..10_000 {
            let w: Vec<f64> = (0..r).map(|k| (0..r).map(|j| a[k][j] * v[j]).sum()).collect();
            let scale = w[0];
            let next: Vec<f64> = w.iter().map(|x| x / scale).collect();
            let change = next.iter().zip(&v).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            v = next;
            if change < 1e-14 {
                break;
            }
        }
        v
    }

    /// FP dimensions as spectral radii of the fusion matrices, recognized
    /// exactly whenever they are rational or quadratic.
    pub fn fp_dims(&self) -> Result<FpDims> {
        if !self.is_commutative() {
            return Err(Error::NonCommutative);
        }
        let prec = working_precision();
        let approx = self.perron_vector_f64();
        let mut dims = Vec::with_capacity(self.rank());
        for (i, &guess) in approx.iter().enumerate() {
            if i == 0 {
                dims.push(Scalar::one());
                continue;
            }
            let p = charpoly(&self.fusion_matrix_big(i)?).squarefree_part();
            let roots = certified_roots(&p, prec)?;
            let top = roots
                .iter()
                .max_by(|a, b| a.value.approx().0.total_cmp(&b.value.approx().0))
                .expect("nonempty spectrum");
            let value = match &top.value {
                Scalar::Interval(b) => Scalar::Interval(b.real_part()),
                exact => exact.clone(),
            };
            let got = value.approx().0;
            if (got - guess).abs() > 1e-6 * guess.max(1.0) {
                return Err(Error::Inconsistent(format!(
                    "spectral radius {got} of {} disagrees with power iteration {guess}",
                    self.label(i)
                )));
            }
            dims.push(value);
        }
        let r = self.rank();
        for i in 0..r {
            for j in 0..r {
                let lhs = dims[i].mul_ref(&dims[j]);
                let rhs = Scalar::sum(
                    (0..r)
                        .filter(|&k| self.n[i][j][k] > 0)
                        .map(|k| dims[k].mul_ref(&Scalar::from_int(self.n[i][j][k] as i64)))
                        .collect::<Vec<_>>()
                        .iter(),
                );
                if lhs.compare_eq(&rhs) == Equality::Distinct {
                    return Err(Error::Inconsistent(format!(
                        "FP dimensions are not multiplicative at ({}, {})",
                        self.label(i),
                        self.label(j)
                    )));
                }
            }
        }
        let global = Scalar::sum(dims.iter().map(|d| d.mul_ref(d)).collect::<Vec<_>>().iter());
        Ok(FpDims { dims, global })
    }
}

impl fmt::Display for FusionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.rank();
        for i in 0..r {
            for j in i..r {
                let terms: Vec<String> = self
                    .constituents(i, j)
                    .map(|k| match self.n[i][j][k] {
                        1 => self.labels[k].clone(),
                        m => format!("{m}{}", self.labels[k]),
                    })
                    .collect();
                writeln!(f, "{} x {} = {}", self.labels[i], self.labels[j], terms.join(" + "))?;
            }
        }
        Ok(())
    }
}

/// Builds a ring from its multiplication rule on labels; used by fixtures and tests.
pub fn from_rule(labels: &[&str], dual: &[usize], rule: impl Fn(usize, usize) -> Vec<(usize, u64)>) -> Result<FusionRing> {
    let r = labels.len();
    let mut n = vec![vec![vec![0u64; r]; r]; r];
    for (i, row) in n.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for (k, m) in rule(i, j) {
                cell[k] += m;
            }
        }
    }
    FusionRing::new(labels.iter().map(|s| s.to_string()).collect(), dual.to_vec(), n)
}

/// The group ring of `Z/n` (or any abelian group given by its addition table).
pub fn pointed_cyclic(n: usize) -> FusionRing {
    let labels: Vec<String> = (0..n).map(|g| format!("g{g}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let dual: Vec<usize> = (0..n).map(|g| (n - g) % n).collect();
    from_rule(&refs, &dual, |i, j| vec![((i + j) % n, 1)]).expect("cyclic group ring")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    fn fibonacci() -> FusionRing {
        from_rule(&["1", "tau"], &[0, 1], |i, j| match (i, j) {
            (0, k) | (k, 0) => vec![(k, 1)],
            _ => vec![(0, 1), (1, 1)],
        })
        .unwrap()
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

    #[test]
    fn small_rings_validate() {
        assert!(fibonacci().is_valid());
        assert!(ising().is_valid());
        assert!(pointed_cyclic(5).is_valid());
    }

    #[test]
    fn corrupted_ising_breaks_associativity() {
        let mut r = ising();
        r.n[2][2][1] = 2;
        let v = r.validate();
        assert!(v.iter().any(|x| matches!(x, Violation::Associativity { .. })));
    }

    #[test]
    fn fusion_matrices() {
        assert_eq!(fibonacci().fusion_matrix(1).unwrap(), vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(ising().fusion_matrix(0).unwrap(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(ising().fusion_matrix(2).unwrap(), vec![vec![0, 0, 1], vec![0, 0, 1], vec![1, 1, 0]]);
        assert_eq!(ising().fusion_matrix(3), Err(Error::IndexOutOfRange { index: 3, rank: 3 }));
    }

    #[test]
    fn unit_is_moved_to_the_front() {
        let r = from_rule(&["tau", "1"], &[0, 1], |i, j| match (i, j) {
            (1, k) | (k, 1) => vec![(k, 1)],
            _ => vec![(0, 1), (1, 1)],
        })
        .unwrap();
        assert_eq!(r.labels(), &["1".to_string(), "tau".to_string()]);
        assert_eq!(r.original_index(), &[1, 0]);
        assert!(r.is_valid());
    }

    #[test]
    fn fp_dimensions() {
        let f = fibonacci().fp_dims().unwrap();
        assert_eq!(f.dims[1], parse_scalar("(1+sqrt(5))/2").unwrap());
        assert_eq!(f.global, parse_scalar("(5+sqrt(5))/2").unwrap());
        let i = ising().fp_dims().unwrap();
        assert_eq!(i.dims, vec![Scalar::one(), Scalar::one(), Scalar::sqrt_int(2)]);
        assert_eq!(i.global, Scalar::from_int(4));
        let z = pointed_cyclic(2).fp_dims().unwrap();
        assert_eq!(z.global, Scalar::from_int(2));
    }

    #[test]
    fn noncommutative_group_ring_is_refused() {
        // S3 as permutations of {0,1,2}
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let compose = |a: &[usize; 3], b: &[usize; 3]| -> [usize; 3] { [a[b[0]], a[b[1]], a[b[2]]] };
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let dual: Vec<usize> = perms
            .iter()
            .map(|p| perms.iter().position(|q| compose(p, q) == [0, 1, 2]).unwrap())
            .collect();
        let r = from_rule(&["e", "a", "b", "c", "d", "f"], &dual, |i, j| vec![(idx(compose(&perms[i], &perms[j])), 1)])
            .unwrap();
        assert!(r.is_valid());
        assert!(!r.is_commutative());
        assert_eq!(r.fp_dims(), Err(Error::NonCommutative));
    }
}
