//! Fusion subrings and the kernel, center and perp calculus between
//! simple objects and characters.

use num_rational::Ratio;
use serde::Serialize;

use crate::analysis::Analysis;
use crate::chars::{CharacterTable, IdentityCheck};
use crate::error::{Error, Result};
use crate::report::{claims, Check, Hypothesis, TheoremReport, Verdict};
use crate::ring::FusionRing;
use crate::scalar::{Equality, PowerProduct, Scalar};

/// Least subset containing `gens` and the unit that is closed under duals
/// and fusion constituents, sorted.
pub fn closure(ring: &FusionRing, gens: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; ring.rank()];
    let mut members = Vec::new();
    let mut queue: Vec<usize> = std::iter::once(0).chain(gens.iter().copied()).collect();
    while let Some(x) = queue.pop() {
        if inside[x] {
            continue;
        }
        inside[x] = true;
        members.push(x);
        queue.push(ring.dual(x));
        for &y in &members {
            queue.extend(ring.constituents(x, y));
            queue.extend(ring.constituents(y, x));
        }
    }
    members.sort_unstable();
    members
}

/// First violation of closure as `(i, j, k)` with `k` in `i x j` outside
/// the set, or `(i, i*, i*)` for a missing dual.
pub fn closure_defect(ring: &FusionRing, set: &[usize]) -> Option<(usize, usize, usize)> {
    if !set.contains(&0) {
        return Some((0, 0, 0));
    }
    for &i in set {
        let d = ring.dual(i);
        if !set.contains(&d) {
            return Some((i, d, d));
        }
        for &j in set {
            if let Some(k) = ring.constituents(i, j).find(|k| !set.contains(k)) {
                return Some((i, j, k));
            }
        }
    }
    None
}

/// A fusion subring with its induced ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subring {
    members: Vec<usize>,
    ring: FusionRing,
    parent_rank: usize,
}

impl Subring {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.parent_rank
    }

    /// Position of a parent index inside the subring.
    pub fn local_index(&self, i: usize) -> Option<usize> {
        self.members.binary_search(&i).ok()
    }

    fn of(ring: &FusionRing, members: Vec<usize>) -> Result<Subring> {
        let induced = ring.restrict(&members)?;
        Ok(Subring { members, ring: induced, parent_rank: ring.rank() })
    }
}

pub fn generated_subring(ring: &FusionRing, gens: &[usize]) -> Result<Subring> {
    Subring::of(ring, closure(ring, gens))
}

/// `D_ad`, generated by the constituents of `Y x Y*` for `Y` in `D`.
pub fn adjoint_subring(ring: &FusionRing, d: &[usize]) -> Result<Subring> {
    let gens: Vec<usize> = d.iter().flat_map(|&y| ring.constituents(y, ring.dual(y)).collect::<Vec<_>>()).collect();
    generated_subring(ring, &gens)
}

/// `C_pt`, the invertible simples.
pub fn pointed_subring(ring: &FusionRing) -> Result<Subring> {
    let members: Vec<usize> = (0..ring.rank())
        .filter(|&x| {
            let parts: Vec<usize> = ring.constituents(x, ring.dual(x)).collect();
            parts == [0] && ring.n(x, ring.dual(x), 0) == 1
        })
        .collect();
    Subring::of(ring, members)
}

/// Every fusion subring, each as a sorted member list, in order of size.
pub fn all_subrings(ring: &FusionRing) -> Vec<Vec<usize>> {
    let mut found = vec![closure(ring, &[])];
    let mut next = 0;
    while next < found.len() {
        let base = found[next].clone();
        next += 1;
        for x in 0..ring.rank() {
            if base.contains(&x) {
                continue;
            }
            let mut gens = base.clone();
            gens.push(x);
            let c = closure(ring, &gens);
            if !found.contains(&c) {
                found.push(c);
            }
        }
    }
    found.sort_by_key(|s| (s.len(), s.clone()));
    found
}

fn decide(e: Equality, what: impl FnOnce() -> String) -> Result<bool> {
    e.holds().ok_or_else(|| Error::Indeterminate(what()))
}

/// `(ker_C(X), Z_C(X))` as character index sets.
pub fn kernel_and_center_of_object(table: &CharacterTable, x: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let d = &table.fp_dims()[x];
    let d2 = d.mul_ref(d);
    let mut ker = Vec::new();
    let mut center = Vec::new();
    for j in 0..table.rank() {
        let v = table.value(j, x);
        if decide(v.norm_sq().compare_eq(&d2), || format!("|mu_{j}(X_{x})| against FPdim"))? {
            center.push(j);
            if decide(v.compare_eq(d), || format!("mu_{j}(X_{x}) against FPdim"))? {
                ker.push(j);
            }
        }
    }
    Ok((ker, center))
}

/// `(ker(mu_j), Z(mu_j))` as subrings: the simples where `mu_j` attains
/// `FPdim`, resp. `FPdim` in absolute value.
pub fn kernel_and_center_of_character(ring: &FusionRing, table: &CharacterTable, j: usize) -> Result<(Subring, Subring)> {
    let mut ker = Vec::new();
    let mut center = Vec::new();
    for (x, d) in table.fp_dims().iter().enumerate() {
        let v = table.value(j, x);
        if decide(v.norm_sq().compare_eq(&d.mul_ref(d)), || format!("|mu_{j}(X_{x})| against FPdim"))? {
            center.push(x);
            if decide(v.compare_eq(d), || format!("mu_{j}(X_{x}) against FPdim"))? {
                ker.push(x);
            }
        }
    }
    Ok((closed_subring(ring, ker, "kernel", j)?, closed_subring(ring, center, "center", j)?))
}

fn closed_subring(ring: &FusionRing, set: Vec<usize>, what: &str, j: usize) -> Result<Subring> {
    if let Some((a, b, c)) = closure_defect(ring, &set) {
        return Err(Error::Inconsistent(format!(
            "{what} of character {j} is not closed: {} lies in {} x {}",
            ring.label(c),
            ring.label(a),
            ring.label(b)
        )));
    }
    Subring::of(ring, set)
}

/// `S^perp` for a set of characters: the simples in every kernel.
pub fn perp_of_characters(ring: &FusionRing, table: &CharacterTable, set: &[usize]) -> Result<Subring> {
    let mut members = Vec::new();
    for (x, d) in table.fp_dims().iter().enumerate() {
        let mut all = true;
        for &j in set {
            if !decide(table.value(j, x).compare_eq(d), || format!("mu_{j}(X_{x}) against FPdim"))? {
                all = false;
                break;
            }
        }
        if all {
            members.push(x);
        }
    }
    closed_subring(ring, members, "perp", set.first().copied().unwrap_or(0))
}

/// `A^perp` for a set of simples: the characters with every one of them
/// in their kernel.
pub fn perp_of_objects(table: &CharacterTable, objects: &[usize]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for j in 0..table.rank() {
        let mut all = true;
        for &x in objects {
            if !decide(table.value(j, x).compare_eq(&table.fp_dims()[x]), || format!("mu_{j}(X_{x}) against FPdim"))? {
                all = false;
                break;
            }
        }
        if all {
            out.push(j);
        }
    }
    Ok(out)
}

/// `sum FPdim(X)^2` over a set of simples.
pub fn fp_dim_of(table: &CharacterTable, objects: &[usize]) -> Scalar {
    let squares: Vec<Scalar> = objects.iter().map(|&x| table.fp_dims()[x].mul_ref(&table.fp_dims()[x])).collect();
    Scalar::sum(squares.iter())
}

/// Perp of a subring together with `FPdim(D) n(D^perp) = FPdim(C)` and
/// biduality.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerpReport {
    pub subring: Vec<usize>,
    pub perp: Vec<usize>,
    pub dimension_identity: IdentityCheck,
    pub biduality: bool,
}

pub fn perp_report(a: &Analysis, subring: &[usize]) -> Result<PerpReport> {
    let table = a.table();
    let perp = perp_of_objects(table, subring)?;
    let back = perp_of_characters(a.ring(), table, &perp)?;
    let mut dimension_identity = IdentityCheck::new();
    dimension_identity.record(
        || "FPdim(D) n(D^perp) against FPdim(C)".into(),
        &fp_dim_of(table, subring).mul_ref(&a.orders().n_of(&perp)),
        a.fp_global(),
    );
    Ok(PerpReport { subring: subring.to_vec(), perp, dimension_identity, biduality: back.members() == subring })
}

/// `FPdim(S^perp) n(S) = FPdim(C)` for a set of characters.
pub fn character_perp_identity(a: &Analysis, set: &[usize]) -> Result<IdentityCheck> {
    let perp = perp_of_characters(a.ring(), a.table(), set)?;
    let mut check = IdentityCheck::new();
    check.record(
        || format!("FPdim(S^perp) n(S) for S = {set:?}"),
        &fp_dim_of(a.table(), perp.members()).mul_ref(&a.orders().n_of(set)),
        a.fp_global(),
    );
    Ok(check)
}

/// Characters of `C` grouped by their restriction to a subring `D`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharacterClassPartition {
    pub blocks: Vec<Vec<usize>>,
    /// Row of the subring's character table each block restricts to.
    pub restrictions: Vec<usize>,
    pub n_dim: Vec<Scalar>,
    pub n: Vec<Scalar>,
    pub dim_sub: Scalar,
    /// `dim(D^t)` for the restriction `t` of each block.
    pub restriction_dims: Vec<Scalar>,
    /// `n_dim(block) = dim(D^t) dim C / dim D`.
    pub dimensional_sizes: IdentityCheck,
    /// `n(block) = dim(D^t) FPdim(C) / dim D`.
    pub formal_sizes: IdentityCheck,
    /// Sum of `n_dim` over blocks equals `dim C`.
    pub total: IdentityCheck,
    /// Blocks with `n_dim(block) = dim C / dim D`, i.e. `dim(D^t) = 1`.
    pub uniform: Vec<Option<bool>>,
    pub block_count_matches: bool,
}

pub fn character_classes(a: &Analysis, members: &[usize]) -> Result<CharacterClassPartition> {
    let sub = a.subring(members)?;
    let table = a.table();
    let st = sub.table();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut restrictions: Vec<usize> = Vec::new();
    for j in 0..a.rank() {
        let mut hit = None;
        for t in 0..st.rank() {
            let mut e = Equality::Equal;
            for (u, &x) in members.iter().enumerate() {
                e = e.and(table.value(j, x).compare_eq(st.value(t, u)));
            }
            if decide(e, || format!("restriction of character {j} against subring row {t}"))? {
                hit = Some(t);
                break;
            }
        }
        let t = hit.ok_or_else(|| Error::Inconsistent(format!("restriction of character {j} is not a character of the subring")))?;
        match restrictions.iter().position(|&r| r == t) {
            Some(b) => blocks[b].push(j),
            None => {
                restrictions.push(t);
                blocks.push(vec![j]);
            }
        }
    }
    let dim_sub = sub.dim_c().clone();
    let per_dim = a.dim_c().div_ref(&dim_sub)?;
    let per_fp = a.fp_global().div_ref(&dim_sub)?;
    let mut dimensional_sizes = IdentityCheck::new();
    let mut formal_sizes = IdentityCheck::new();
    let mut total = IdentityCheck::new();
    let mut n_dim = Vec::new();
    let mut n = Vec::new();
    let mut restriction_dims = Vec::new();
    let mut uniform = Vec::new();
    let mut sum = Scalar::zero();
    for (b, block) in blocks.iter().enumerate() {
        let dt = sub.class_dim(restrictions[b]).clone();
        let nd = a.spherical().n_dim(block);
        let nf = a.orders().n_of(block);
        dimensional_sizes.record(|| format!("n_dim of block {b}"), &nd, &dt.mul_ref(&per_dim));
        formal_sizes.record(|| format!("n of block {b}"), &nf, &dt.mul_ref(&per_fp));
        uniform.push(dt.compare_eq(&Scalar::one()).holds());
        sum = sum.add_ref(&nd);
        n_dim.push(nd);
        n.push(nf);
        restriction_dims.push(dt);
    }
    total.record(|| "sum of n_dim over blocks".to_string(), &sum, a.dim_c());
    let block_count_matches = blocks.len() == st.rank();
    Ok(CharacterClassPartition {
        blocks,
        restrictions,
        n_dim,
        n,
        dim_sub,
        restriction_dims,
        dimensional_sizes,
        formal_sizes,
        total,
        uniform,
        block_count_matches,
    })
}

fn subject(a: &Analysis, x: usize) -> String {
    format!("{}, X = {}", a.name(), a.label(x))
}

fn equality_check(label: &str, lhs: &Scalar, rhs: &Scalar) -> Check {
    Check::new(format!("{label}: {lhs} = {rhs}"), Some(lhs.clone()), Verdict::Equality { result: lhs.compare_eq(rhs) })
}

fn structural(label: impl Into<String>, holds: bool) -> Check {
    Check::new(label, None, Verdict::holds(Some(holds)))
}

/// Class sizes relative to the subring on `members`.
pub fn class_size_report(a: &Analysis, members: &[usize]) -> TheoremReport {
    let labels: Vec<&str> = members.iter().map(|&m| a.label(m)).collect();
    let mut rep = TheoremReport::new(&claims::CLASS_SIZES, format!("{}, D = {{{}}}", a.name(), labels.join(", ")));
    rep.hypothesis(Hypothesis::from_data("commutative", Some(true)));
    match character_classes(a, members) {
        Ok(p) => {
            rep.quantity("dim D", p.dim_sub.clone());
            rep.quantity("dim C / dim D", a.dim_c().div_ref(&p.dim_sub).unwrap_or_else(|_| Scalar::zero()));
            for (b, block) in p.blocks.iter().enumerate() {
                rep.note(format!(
                    "block {block:?}: dim(D^t) = {}, n_dim = {}, n = {}",
                    p.restriction_dims[b], p.n_dim[b], p.n[b]
                ));
            }
            let off: Vec<&Vec<usize>> =
                p.blocks.iter().zip(&p.uniform).filter(|(_, u)| **u != Some(true)).map(|(b, _)| b).collect();
            if off.is_empty() {
                rep.note("every block has n_dim = dim C / dim D");
            } else {
                rep.note(format!("blocks {off:?} restrict to characters with dim(D^t) != 1; n_dim differs from dim C / dim D there"));
            }
            rep.check(Check::new(
                "n_dim(block) = dim(D^t) dim C / dim D",
                None,
                Verdict::Equality { result: p.dimensional_sizes.verdict },
            ));
            rep.check(Check::new(
                "n(block) = dim(D^t) FPdim(C) / dim D",
                None,
                Verdict::Equality { result: p.formal_sizes.verdict },
            ));
            rep.check(Check::new("sum of n_dim over blocks = dim C", None, Verdict::Equality { result: p.total.verdict }));
            rep.check(structural("number of blocks equals rank of D", p.block_count_matches));
            rep.conclude_from_checks();
        }
        Err(e) => {
            rep.set_verdict(Verdict::holds(None));
            rep.note(e.to_string());
        }
    }
    rep
}

/// The size theorem for `D = <X>`.
pub fn size_theorem(a: &Analysis, x: usize) -> TheoremReport {
    let mut rep = TheoremReport::new(&claims::SIZE_THEOREM, subject(a, x));
    rep.hypothesis(Hypothesis::from_data("commutative", Some(true)));
    if let Err(e) = size_theorem_into(a, x, &mut rep) {
        rep.set_verdict(Verdict::holds(None));
        rep.note(e.to_string());
    }
    rep
}

fn size_theorem_into(a: &Analysis, x: usize, rep: &mut TheoremReport) -> Result<()> {
    let members = a.generated(&[x]);
    let d = a.subring(&members)?;
    let z = a.center(x)?;
    let partition = character_classes(a, &members)?;
    let union = partition.blocks.iter().all(|b| b.iter().all(|j| z.contains(j)) || b.iter().all(|j| !z.contains(j)));
    let n_dim_z = a.spherical().n_dim(&z);
    let lhs = a.dim_c().div_ref(&n_dim_z)?;
    let u_d = Scalar::from(d.grading_order() as i64);
    let rhs = d.dim_c().div_ref(&u_d)?;
    let fp_side = a.fp_global().div_ref(&a.orders().n_of(&z))?;
    let local_x = members.binary_search(&x).map_err(|_| Error::Inconsistent("generator outside its subring".into()))?;
    let z_d = d.center(local_x)?;
    rep.quantity("n_dim(Z_C(X))", n_dim_z)
        .quantity("dim C / n_dim(Z_C(X))", lhs.clone())
        .quantity("dim <X>", d.dim_c().clone())
        .quantity("|U(<X>)|", u_d.clone())
        .quantity("FPdim(C) / n(Z_C(X))", fp_side.clone());
    rep.check(structural("Z_C(X) is a union of character classes", union))
        .check(equality_check("dim C / n_dim(Z_C(X)) = dim<X> / |U(<X>)|", &lhs, &rhs))
        .check(equality_check("FPdim(C) / n(Z_C(X)) = dim<X> / |U(<X>)|", &fp_side, &rhs))
        .check(structural("Z_<X>(X) equals the group-like characters of <X>", z_d == d.group().members()));
    if !a.uses_fp_dimensions() {
        let fp_rhs = d.fp_global().div_ref(&u_d)?;
        rep.quantity("FPdim<X> / |U(<X>)|", fp_rhs);
        rep.note("dimension character is not Frobenius-Perron; the identity is stated for dim = FPdim on <X>");
    }
    rep.conclude_from_checks();
    Ok(())
}

/// Center against perp of the adjoint subring, requiring RN.
pub fn center_perp_report(a: &Analysis, x: usize) -> TheoremReport {
    let mut rep = TheoremReport::new(&claims::CENTER_IS_PERP, subject(a, x));
    rep.hypothesis(Hypothesis::from_data("dual coefficients real non-negative", a.rn()));
    if rep.skip_if_unmet() {
        return rep;
    }
    let run = || -> Result<(Vec<usize>, Vec<usize>)> {
        let gen = a.generated(&[x]);
        let ad = adjoint_subring(a.ring(), &gen)?;
        Ok((a.center(x)?, perp_of_objects(a.table(), ad.members())?))
    };
    match run() {
        Ok((z, perp)) => {
            rep.note(format!("Z_C(X) = {z:?}, (<X>_ad)^perp = {perp:?}"));
            rep.check(structural("Z_C(X) is contained in (<X>_ad)^perp", z.iter().all(|j| perp.contains(j))));
            rep.check(structural("Z_C(X) = (<X>_ad)^perp", z == perp));
            rep.conclude_from_checks();
        }
        Err(e) => {
            rep.set_verdict(Verdict::holds(None));
            rep.note(e.to_string());
        }
    }
    rep
}

/// Group-like characters as the intersection of all centers.
pub fn intersection_of_centers_report(a: &Analysis) -> TheoremReport {
    let mut rep = TheoremReport::new(&claims::INTERSECTION_OF_CENTERS, a.name().to_string());
    let run = || -> Result<Vec<usize>> {
        let mut common: Vec<usize> = (0..a.rank()).collect();
        for x in 0..a.rank() {
            let z = a.center(x)?;
            common.retain(|j| z.contains(j));
        }
        Ok(common)
    };
    match run() {
        Ok(common) => {
            rep.quantity("|G|", Scalar::from(a.grading_order() as i64));
            rep.check(structural(format!("intersection {common:?} against G {:?}", a.group().members()), common == a.group().members()));
            rep.conclude_from_checks();
        }
        Err(e) => {
            rep.set_verdict(Verdict::holds(None));
            rep.note(e.to_string());
        }
    }
    rep
}

/// `|U(C)|` divides `n(Z_C(X))`, requiring RN.
pub fn center_order_report(a: &Analysis, x: usize) -> TheoremReport {
    let mut rep = TheoremReport::new(&claims::CENTER_ORDER, subject(a, x));
    rep.hypothesis(Hypothesis::from_data("dual coefficients real non-negative", a.rn()));
    if rep.skip_if_unmet() {
        return rep;
    }
    let u = Scalar::from(a.grading_order() as i64);
    let result = a.certify(&[], |f, _| {
        let z = a.center_in(f, x)?;
        Ok(PowerProduct::of(a.frame_order(f, &z)?).with(u.clone(), Ratio::from_integer(-1)))
    });
    match result.and_then(|(pp, v)| Ok((pp.eval()?, v))) {
        Ok((value, v)) => {
            if let Ok(z) = a.center(x) {
                rep.quantity("n(Z_C(X))", a.orders().n_of(&z));
            }
            rep.quantity("|U(C)|", u).quantity("n(Z_C(X)) / |U(C)|", value);
            rep.set_verdict(Verdict::integrality(&v));
        }
        Err(e) => {
            rep.set_verdict(Verdict::integrality(&crate::scalar::IntegralityVerdict {
                tier: crate::scalar::IntegralityTier::Indeterminate,
                witness: None,
            }));
            rep.note(e.to_string());
        }
    }
    rep
}

/// Perp of `<X>` with the dimension identity and biduality, requiring RN.
pub fn perp_duality_report(a: &Analysis, x: usize) -> TheoremReport {
    let mut rep = TheoremReport::new(&claims::PERP_DUALITY, subject(a, x));
    rep.hypothesis(Hypothesis::from_data("dual coefficients real non-negative", a.rn()));
    if rep.skip_if_unmet() {
        return rep;
    }
    match perp_report(a, &a.generated(&[x])) {
        Ok(p) => {
            rep.note(format!("D = {:?}, D^perp = {:?}", p.subring, p.perp));
            rep.check(Check::new("FPdim(D) n(D^perp) = FPdim(C)", None, Verdict::Equality { result: p.dimension_identity.verdict }));
            rep.check(structural("(D^perp)^perp = D", p.biduality));
            rep.conclude_from_checks();
        }
        Err(e) => {
            rep.set_verdict(Verdict::holds(None));
            rep.note(e.to_string());
        }
    }
    rep
}
