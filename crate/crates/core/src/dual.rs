//! The dual hypergroup spanned by the characters.
//!
//! Characters multiply pointwise after normalizing by Frobenius-Perron
//! dimensions: `(mu_i * mu_j)(X) = mu_i(X) mu_j(X) / FPdim(X)`. The structure
//! constants of that product are `p_k(i, j)`.

use serde::Serialize;

use crate::chars::{CharacterTable, IdentityCheck, SphericalData};
use crate::error::{Error, Result};
use crate::scalar::{Equality, Scalar};

#[derive(Clone, Debug)]
pub struct DualHypergroup {
    /// `p[i][j][k] = p_k(i, j)`.
    p: Vec<Vec<Vec<Scalar>>>,
    unit: usize,
    rn: Option<bool>,
    rn_violations: Vec<(usize, usize, usize)>,
    rn_undecided: Vec<(usize, usize, usize)>,
    reconstruction: IdentityCheck,
    order_check: IdentityCheck,
}

impl DualHypergroup {
    pub fn rank(&self) -> usize {
        self.p.len()
    }

    /// `p_k(i, j)`.
    pub fn coefficient(&self, k: usize, i: usize, j: usize) -> &Scalar {
        &self.p[i][j][k]
    }

    /// The unit of the product, the FP character.
    pub fn unit(&self) -> usize {
        self.unit
    }

    /// `Some(true)` when every coefficient is real and nonnegative,
    /// `Some(false)` when one certainly is not, `None` otherwise.
    pub fn rn(&self) -> Option<bool> {
        self.rn
    }

    pub fn rn_violations(&self) -> &[(usize, usize, usize)] {
        &self.rn_violations
    }

    pub fn rn_undecided(&self) -> &[(usize, usize, usize)] {
        &self.rn_undecided
    }

    pub fn reconstruction(&self) -> &IdentityCheck {
        &self.reconstruction
    }

    /// Agreement of `1/p_0(i, i#)` with `FPdim(C)/n_i`.
    pub fn order_check(&self) -> &IdentityCheck {
        &self.order_check
    }

    /// `k` when `mu_i * mu_j = mu_k` holds with certainty.
    pub fn single_product(&self, i: usize, j: usize) -> Option<usize> {
        let row = &self.p[i][j];
        let one = Scalar::one();
        let k = row.iter().position(|c| c.compare_eq(&one).holds() == Some(true))?;
        let others_vanish = row.iter().enumerate().all(|(l, c)| l == k || c.zero_test().holds() == Some(true));
        others_vanish.then_some(k)
    }
}

fn nonnegative(c: &Scalar) -> Option<bool> {
    match c.is_real() {
        Some(false) => return Some(false),
        None => return None,
        Some(true) => {}
    }
    match c.real_sign() {
        Some(std::cmp::Ordering::Less) => Some(false),
        Some(_) => Some(true),
        None => None,
    }
}

/// Structure constants `p_k(i,j) = (1/n_k) sum_X mu_i(X) mu_j(X) mu_k(X*) / FPdim(X)`.
pub fn dual_constants(table: &CharacterTable) -> Result<DualHypergroup> {
    let r = table.rank();
    let fp = table.fp_dims();
    let inv_fp: Vec<Scalar> = fp.iter().map(Scalar::inv).collect::<Result<_>>()?;
    let inv_n: Vec<Scalar> = table.codegrees().iter().map(Scalar::inv).collect::<Result<_>>()?;
    // pointwise products mu_i(X) mu_j(X) / FPdim(X)
    let mut star = vec![vec![Vec::with_capacity(r); r]; r];
    for i in 0..r {
        for j in 0..r {
            star[i][j] = (0..r).map(|x| table.value(i, x).mul_ref(table.value(j, x)).mul_ref(&inv_fp[x])).collect();
        }
    }
    let mut p = vec![vec![Vec::with_capacity(r); r]; r];
    for i in 0..r {
        for j in 0..r {
            if j < i {
                p[i][j] = p[j][i].clone();
                continue;
            }
            p[i][j] = (0..r)
                .map(|k| {
                    let terms: Vec<Scalar> =
                        (0..r).map(|x| star[i][j][x].mul_ref(table.value(k, table.object_dual(x)))).collect();
                    Scalar::sum(terms.iter()).mul_ref(&inv_n[k])
                })
                .collect();
        }
    }

    let mut reconstruction = IdentityCheck::new();
    for i in 0..r {
        for j in i..r {
            for x in 0..r {
                let terms: Vec<Scalar> = (0..r).map(|k| p[i][j][k].mul_ref(table.value(k, x))).collect();
                reconstruction.record(|| format!("characters {i}, {j} at object {x}"), &Scalar::sum(terms.iter()), &star[i][j][x]);
            }
        }
    }

    let unit = table.fp_index();
    let fp_global = table.fp_dim_global();
    let mut order_check = IdentityCheck::new();
    for i in 0..r {
        let c = &p[i][table.involution(i)][unit];
        let from_dual = c.inv().map_err(|_| Error::Inconsistent(format!("p_0({i}, {i}#) vanishes")))?;
        let from_codegree = fp_global.mul_ref(&inv_n[i]);
        order_check.record(|| format!("order of character {i}"), &from_dual, &from_codegree);
    }
    if order_check.holds() == Some(false) {
        return Err(Error::Inconsistent(format!("character orders disagree: {}", order_check.failures.join("; "))));
    }

    let mut rn_violations = Vec::new();
    let mut rn_undecided = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                match nonnegative(&p[i][j][k]) {
                    Some(true) => {}
                    Some(false) => rn_violations.push((i, j, k)),
                    None => rn_undecided.push((i, j, k)),
                }
            }
        }
    }
    let rn = if !rn_violations.is_empty() {
        Some(false)
    } else if rn_undecided.is_empty() {
        Some(true)
    } else {
        None
    };
    Ok(DualHypergroup { p, unit, rn, rn_violations, rn_undecided, reconstruction, order_check })
}

/// Unit, commutativity and associativity of the dual product.
pub fn star_axioms(dual: &DualHypergroup) -> IdentityCheck {
    let r = dual.rank();
    let u = dual.unit();
    let mut check = IdentityCheck::new();
    for i in 0..r {
        for k in 0..r {
            let delta = Scalar::from((i == k) as i64);
            check.record(|| format!("unit on {i}, coefficient {k}"), dual.coefficient(k, u, i), &delta);
        }
        for j in 0..r {
            for k in 0..r {
                check.record(|| format!("commutativity {i}, {j}, {k}"), dual.coefficient(k, i, j), dual.coefficient(k, j, i));
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                for l in 0..r {
                    let lhs: Vec<Scalar> =
                        (0..r).map(|m| dual.coefficient(m, i, j).mul_ref(dual.coefficient(l, m, k))).collect();
                    let rhs: Vec<Scalar> =
                        (0..r).map(|m| dual.coefficient(m, j, k).mul_ref(dual.coefficient(l, i, m))).collect();
                    check.record(
                        || format!("associativity {i}, {j}, {k} -> {l}"),
                        &Scalar::sum(lhs.iter()),
                        &Scalar::sum(rhs.iter()),
                    );
                }
            }
        }
    }
    check
}

/// The group of characters with `|mu(X)| = FPdim(X)` for every simple `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupLikes {
    members: Vec<usize>,
    /// `table[a][b]` is the character index of `members[a] * members[b]`.
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl GroupLikes {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, j: usize) -> bool {
        self.members.contains(&j)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Character index of `mu_a * mu_b` for members `a`, `b`.
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[self.position(a)][self.position(b)]
    }

    fn position(&self, j: usize) -> usize {
        self.members.iter().position(|&m| m == j).expect("not a group-like character")
    }
}

fn unitary_on_simples(table: &CharacterTable, j: usize) -> Result<bool> {
    let fp = table.fp_dims();
    let mut all = Equality::Equal;
    for (x, d) in fp.iter().enumerate() {
        let v = table.value(j, x);
        all = all.and(v.norm_sq().compare_eq(&d.mul_ref(d)));
        if all == Equality::Distinct {
            return Ok(false);
        }
    }
    all.holds().ok_or_else(|| Error::Indeterminate(format!("group-like membership of character {j}")))
}

pub fn group_likes(table: &CharacterTable, dual: &DualHypergroup) -> Result<GroupLikes> {
    let mut members = Vec::new();
    for j in 0..table.rank() {
        if unitary_on_simples(table, j)? {
            members.push(j);
        }
    }
    let mut mult = Vec::with_capacity(members.len());
    for &a in &members {
        let mut row = Vec::with_capacity(members.len());
        for &b in &members {
            match dual.single_product(a, b) {
                Some(k) if members.contains(&k) => row.push(k),
                _ => {
                    return Err(Error::Inconsistent(format!(
                        "product of group-like characters {a} and {b} is not a group-like character"
                    )))
                }
            }
        }
        mult.push(row);
    }
    let identity = dual.unit();
    let g = GroupLikes { members, table: mult, identity };
    check_group(&g, table)?;
    Ok(g)
}

fn check_group(g: &GroupLikes, table: &CharacterTable) -> Result<()> {
    if !g.contains(g.identity) {
        return Err(Error::Inconsistent("the unit character is not group-like".into()));
    }
    for &a in &g.members {
        if g.product(g.identity, a) != a {
            return Err(Error::Inconsistent(format!("unit does not fix group-like character {a}")));
        }
        let inv = table.involution(a);
        if !g.contains(inv) || g.product(a, inv) != g.identity {
            return Err(Error::Inconsistent(format!("group-like character {a} has no inverse")));
        }
        for &b in &g.members {
            for &c in &g.members {
                if g.product(g.product(a, b), c) != g.product(a, g.product(b, c)) {
                    return Err(Error::Inconsistent(format!("group-like product not associative at {a}, {b}, {c}")));
                }
            }
        }
    }
    Ok(())
}

/// Orbits of the group-like characters acting on all characters by the
/// dual product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarOrbits {
    pub orbits: Vec<Vec<usize>>,
    /// Orbits on which the designated object has nonzero values.
    pub non_vanishing: Vec<usize>,
    pub representatives: Vec<usize>,
}

impl StarOrbits {
    pub fn non_vanishing_representatives(&self) -> Vec<usize> {
        self.non_vanishing.iter().map(|&o| self.representatives[o]).collect()
    }
}

pub fn star_orbits(
    table: &CharacterTable,
    dual: &DualHypergroup,
    g: &GroupLikes,
    x: Option<usize>,
) -> Result<StarOrbits> {
    let r = table.rank();
    let mut seen = vec![false; r];
    let mut orbits = Vec::new();
    for j in 0..r {
        if seen[j] {
            continue;
        }
        let mut orbit = Vec::new();
        for &z in g.members() {
            let k = dual.single_product(z, j).ok_or_else(|| {
                Error::Inconsistent(format!("group-like character {z} does not permute character {j}"))
            })?;
            if !orbit.contains(&k) {
                orbit.push(k);
            }
        }
        orbit.sort_unstable();
        for &k in &orbit {
            if seen[k] {
                return Err(Error::Inconsistent(format!("character {k} lies in two orbits")));
            }
            seen[k] = true;
        }
        orbits.push(orbit);
    }
    let representatives: Vec<usize> = orbits.iter().map(|o| o[0]).collect();
    let mut non_vanishing = Vec::new();
    if let Some(x) = x {
        for (o, orbit) in orbits.iter().enumerate() {
            let verdicts: Vec<Equality> = orbit.iter().map(|&j| table.value(j, x).zero_test()).collect();
            if verdicts.iter().any(|e| e.holds().is_none()) {
                return Err(Error::Indeterminate(format!("vanishing of orbit {o} at object {x}")));
            }
            if verdicts.iter().all(|e| e.holds() == Some(false)) {
                non_vanishing.push(o);
            }
        }
    }
    Ok(StarOrbits { orbits, non_vanishing, representatives })
}

/// Constancy of `|mu(Y)|`, `n_j` and `dim(C^j)` along orbits, and freeness
/// on non-vanishing orbits of a faithful object.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitLemmas {
    pub absolute_values: IdentityCheck,
    pub codegrees: IdentityCheck,
    pub class_dims: Option<IdentityCheck>,
    pub free_on_non_vanishing: Option<bool>,
}

impl OrbitLemmas {
    pub fn holds(&self) -> Option<bool> {
        let mut all = self.absolute_values.verdict.and(self.codegrees.verdict);
        if let Some(c) = &self.class_dims {
            all = all.and(c.verdict);
        }
        match (all.holds(), self.free_on_non_vanishing) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (a, _) => a,
        }
    }
}

pub fn verify_orbit_lemmas(
    table: &CharacterTable,
    spherical: Option<&SphericalData>,
    orbits: &StarOrbits,
    g: &GroupLikes,
    faithful: bool,
) -> OrbitLemmas {
    let r = table.rank();
    let mut absolute_values = IdentityCheck::new();
    let mut codegrees = IdentityCheck::new();
    let mut class_dims = spherical.map(|_| IdentityCheck::new());
    for orbit in &orbits.orbits {
        let first = orbit[0];
        for &j in &orbit[1..] {
            for y in 0..r {
                absolute_values.record(
                    || format!("|mu_{j}(X_{y})| against |mu_{first}(X_{y})|"),
                    &table.value(j, y).norm_sq(),
                    &table.value(first, y).norm_sq(),
                );
            }
            codegrees.record(|| format!("n_{j} against n_{first}"), table.codegree(j), table.codegree(first));
            if let (Some(check), Some(sph)) = (class_dims.as_mut(), spherical) {
                check.record(|| format!("dim(C^{j}) against dim(C^{first})"), &sph.class_dims[j], &sph.class_dims[first]);
            }
        }
    }
    let free_on_non_vanishing =
        faithful.then(|| orbits.non_vanishing.iter().all(|&o| orbits.orbits[o].len() == g.order()));
    OrbitLemmas { absolute_values, codegrees, class_dims, free_on_non_vanishing }
}

/// `omega_X(mu) = mu(X)/FPdim(X)` on the group-like characters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CentralCharacter {
    pub object: usize,
    pub values: Vec<(usize, Scalar)>,
    pub roots_of_unity: Equality,
    pub faithful: bool,
}

pub fn central_character(table: &CharacterTable, g: &GroupLikes, x: usize) -> Result<CentralCharacter> {
    let d = &table.fp_dims()[x];
    let one = Scalar::one();
    let mut values = Vec::with_capacity(g.order());
    let mut roots_of_unity = Equality::Equal;
    let mut faithful = true;
    for &z in g.members() {
        let w = table.value(z, x).div_ref(d)?;
        roots_of_unity = roots_of_unity.and(w.pow_i(g.order() as i64)?.compare_eq(&one));
        let trivial = w
            .compare_eq(&one)
            .holds()
            .ok_or_else(|| Error::Indeterminate(format!("central character of object {x} at {z}")))?;
        if trivial && z != g.identity() {
            faithful = false;
        }
        values.push((z, w));
    }
    Ok(CentralCharacter { object: x, values, roots_of_unity, faithful })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::{character_table, spherical_data};
    use crate::ring::{from_rule, pointed_cyclic, FusionRing};
    use crate::scalar::parse_scalar;

    fn s(t: &str) -> Scalar {
        parse_scalar(t).unwrap()
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
    fn cyclic_two_is_its_own_dual_group() {
        let t = character_table(&pointed_cyclic(2)).unwrap();
        let d = dual_constants(&t).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    assert_eq!(d.coefficient(k, i, j), &Scalar::from(((i ^ j) == k) as i64));
                }
            }
        }
        assert_eq!(d.rn(), Some(true));
        assert_eq!(star_axioms(&d).verdict, Equality::Equal);
    }

    #[test]
    fn ising_dual() {
        let t = character_table(&ising()).unwrap();
        let d = dual_constants(&t).unwrap();
        assert_eq!(d.single_product(1, 1), Some(0));
        assert_eq!(d.rn(), Some(true));
        assert_eq!(d.reconstruction().verdict, Equality::Equal);
        let g = group_likes(&t, &d).unwrap();
        assert_eq!(g.members(), &[0, 1]);
        let o = star_orbits(&t, &d, &g, Some(2)).unwrap();
        assert_eq!(o.orbits, vec![vec![0, 1], vec![2]]);
        assert_eq!(o.non_vanishing, vec![0]);
        let sph = spherical_data(&t, None).unwrap();
        let lemmas = verify_orbit_lemmas(&t, Some(&sph), &o, &g, true);
        assert_eq!(lemmas.holds(), Some(true));
        let w = central_character(&t, &g, 2).unwrap();
        assert_eq!(w.values[1].1, s("-1"));
        assert!(w.faithful);
        let w = central_character(&t, &g, 1).unwrap();
        assert!(!w.faithful);
    }

    #[test]
    fn cyclic_groups_act_regularly() {
        for n in 1..=6 {
            let t = character_table(&pointed_cyclic(n)).unwrap();
            let d = dual_constants(&t).unwrap();
            let g = group_likes(&t, &d).unwrap();
            assert_eq!(g.order(), n);
            let o = star_orbits(&t, &d, &g, None).unwrap();
            assert_eq!(o.orbits.len(), 1);
        }
    }
}
