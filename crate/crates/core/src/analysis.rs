//! Everything derived from a ring once a dimension character is fixed:
//! the character table, class dimensions, the dual hypergroup and the
//! group-like characters. Analyses of subrings are built on demand and
//! cached.
//!
//! Integrality of an irrational quantity is certified through a
//! Galois-stable family of its conjugates. Galois automorphisms permute the
//! characters, so evaluating the same formula with the FP and dimension
//! characters replaced by other characters (a [`Frame`]) sweeps a superset
//! of the conjugates.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::chars::{character_table, orders, spherical_data, CharacterTable, IdentityCheck, Orders, SphericalData};
use crate::dual::{dual_constants, group_likes, DualHypergroup, GroupLikes};
use crate::error::{Error, Result};
use crate::lattice;
use crate::report::Assumptions;
use crate::ring::FusionRing;
use crate::scalar::{power_is_integral, IntegralityVerdict, PowerProduct, Scalar};

/// Which characters play the roles of FPdim and dim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Frame {
    pub fp: usize,
    pub dim: usize,
}

#[derive(Debug)]
pub struct Analysis {
    name: String,
    ring: FusionRing,
    table: CharacterTable,
    spherical: SphericalData,
    orders: Orders,
    order_check: IdentityCheck,
    dual: DualHypergroup,
    group: GroupLikes,
    assumptions: Assumptions,
    subrings: Mutex<BTreeMap<Vec<usize>, Arc<Analysis>>>,
}

impl Analysis {
    /// Analysis with the dimension character `dimension` (the FP character
    /// when `None`).
    pub fn new(name: impl Into<String>, ring: FusionRing, dimension: Option<usize>, assumptions: Assumptions) -> Result<Self> {
        let table = character_table(&ring)?;
        Analysis::from_table(name, ring, table, dimension, assumptions)
    }

    pub fn from_table(
        name: impl Into<String>,
        ring: FusionRing,
        table: CharacterTable,
        dimension: Option<usize>,
        assumptions: Assumptions,
    ) -> Result<Self> {
        if table.rank() != ring.rank() {
            return Err(Error::Shape("character table and ring differ in rank".into()));
        }
        let spherical = spherical_data(&table, dimension)?;
        let (orders, order_check) = orders(&table, &spherical)?;
        let dual = dual_constants(&table)?;
        let group = group_likes(&table, &dual)?;
        Ok(Analysis {
            name: name.into(),
            ring,
            table,
            spherical,
            orders,
            order_check,
            dual,
            group,
            assumptions,
            subrings: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn spherical(&self) -> &SphericalData {
        &self.spherical
    }

    pub fn orders(&self) -> &Orders {
        &self.orders
    }

    pub fn order_check(&self) -> &IdentityCheck {
        &self.order_check
    }

    pub fn dual(&self) -> &DualHypergroup {
        &self.dual
    }

    pub fn group(&self) -> &GroupLikes {
        &self.group
    }

    pub fn assumptions(&self) -> &Assumptions {
        &self.assumptions
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn label(&self, i: usize) -> &str {
        self.ring.label(i)
    }

    /// `|U(C)|`, the order of the group of group-like characters.
    pub fn grading_order(&self) -> usize {
        self.group.order()
    }

    pub fn rn(&self) -> Option<bool> {
        self.dual.rn()
    }

    pub fn uses_fp_dimensions(&self) -> bool {
        self.spherical.index == self.table.fp_index()
    }

    /// Human-readable name of the active dimension character.
    pub fn dimension_character(&self) -> String {
        if self.uses_fp_dimensions() {
            format!("mu_{} (Frobenius-Perron)", self.spherical.index)
        } else {
            format!("mu_{}", self.spherical.index)
        }
    }

    pub fn fp_dim(&self, x: usize) -> &Scalar {
        &self.table.fp_dims()[x]
    }

    pub fn fp_global(&self) -> &Scalar {
        self.table.fp_dim_global()
    }

    pub fn dim(&self, x: usize) -> &Scalar {
        &self.spherical.dims[x]
    }

    pub fn dim_c(&self) -> &Scalar {
        &self.spherical.dim_c
    }

    pub fn class_dim(&self, j: usize) -> &Scalar {
        &self.spherical.class_dims[j]
    }

    /// Members of `<gens>`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        lattice::closure(&self.ring, gens)
    }

    /// Whether `<X>` is the whole ring.
    pub fn is_faithful(&self, x: usize) -> bool {
        self.generated(&[x]).len() == self.rank()
    }

    /// Analysis of the subring on `members`, with the restricted dimension
    /// character.
    pub fn subring(&self, members: &[usize]) -> Result<Arc<Analysis>> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if let Some(a) = self.subrings.lock().expect("subring cache poisoned").get(&members) {
            return Ok(Arc::clone(a));
        }
        let ring = self.ring.restrict(&members)?;
        let table = character_table(&ring)?;
        let restricted: Vec<Scalar> = members.iter().map(|&m| self.spherical.dims[m].clone()).collect();
        let dimension = (0..table.rank())
            .find(|&t| table.row(t).iter().zip(&restricted).all(|(a, b)| a.compare_eq(b).holds() == Some(true)))
            .ok_or_else(|| Error::Inconsistent("restricted dimension function is not a character of the subring".into()))?;
        let labels: Vec<&str> = members.iter().map(|&m| self.label(m)).collect();
        let name = format!("{}[{}]", self.name, labels.join(","));
        let sub = Arc::new(Analysis::from_table(name, ring, table, Some(dimension), self.assumptions.for_subcategory())?);
        self.subrings.lock().expect("subring cache poisoned").insert(members, Arc::clone(&sub));
        Ok(sub)
    }

    /// `ker_C(X)`: characters with `mu(X) = FPdim(X)`.
    pub fn kernel(&self, x: usize) -> Result<Vec<usize>> {
        lattice::kernel_and_center_of_object(&self.table, x).map(|(k, _)| k)
    }

    /// `Z_C(X)`: characters with `|mu(X)| = FPdim(X)`.
    pub fn center(&self, x: usize) -> Result<Vec<usize>> {
        self.center_in(&self.identity_frame(), x)
    }

    // ---- frames ----

    pub fn identity_frame(&self) -> Frame {
        Frame { fp: self.table.fp_index(), dim: self.spherical.index }
    }

    /// A Galois-stable set of frames containing the identity frame.
    pub fn frames(&self) -> Vec<Frame> {
        let r = self.rank();
        if self.uses_fp_dimensions() {
            (0..r).map(|b| Frame { fp: b, dim: b }).collect()
        } else {
            (0..r).flat_map(|c| (0..r).filter(move |&a| a != c).map(move |a| Frame { fp: c, dim: a })).collect()
        }
    }

    pub fn frame_fp_global(&self, f: &Frame) -> Scalar {
        self.table.codegree(f.fp).clone()
    }

    pub fn frame_dim_c(&self, f: &Frame) -> Scalar {
        self.table.codegree(f.dim).clone()
    }

    pub fn frame_fp_dim(&self, f: &Frame, x: usize) -> Scalar {
        self.table.value(f.fp, x).clone()
    }

    pub fn frame_dim(&self, f: &Frame, x: usize) -> Scalar {
        self.table.value(f.dim, x).clone()
    }

    pub fn frame_class_dim(&self, f: &Frame, j: usize) -> Result<Scalar> {
        self.table.codegree(f.dim).div_ref(self.table.codegree(j))
    }

    /// Center of `X` relative to the frame's FP character, written with
    /// `mu(X) mu(X*)` so that it transforms correctly.
    pub fn center_in(&self, f: &Frame, x: usize) -> Result<Vec<usize>> {
        let xd = self.ring.dual(x);
        let target = self.table.value(f.fp, x).mul_ref(self.table.value(f.fp, xd));
        let mut out = Vec::new();
        for k in 0..self.rank() {
            let v = self.table.value(k, x).mul_ref(self.table.value(k, xd));
            match v.compare_eq(&target).holds() {
                Some(true) => out.push(k),
                Some(false) => {}
                None => return Err(Error::Indeterminate(format!("membership of character {k} in the center of {}", self.label(x)))),
            }
        }
        Ok(out)
    }

    /// `n(S)` relative to the frame.
    pub fn frame_order(&self, f: &Frame, set: &[usize]) -> Result<Scalar> {
        let fp = self.table.codegree(f.fp);
        let terms = set.iter().map(|&k| fp.div_ref(self.table.codegree(k))).collect::<Result<Vec<_>>>()?;
        Ok(Scalar::sum(terms.iter()))
    }

    /// `n_dim(S)` relative to the frame.
    pub fn frame_dim_order(&self, f: &Frame, set: &[usize]) -> Result<Scalar> {
        let terms = set.iter().map(|&k| self.frame_class_dim(f, k)).collect::<Result<Vec<_>>>()?;
        Ok(Scalar::sum(terms.iter()))
    }

    /// Value and integrality verdict of a quantity given as a function of
    /// the frame and of free character indices, evaluated at the identity
    /// frame and `at`. Conjugates are only gathered when that value is not
    /// exact after clearing exponent denominators; they range over every
    /// frame and every choice of the free indices.
    pub fn certify(
        &self,
        at: &[usize],
        quantity: impl Fn(&Frame, &[usize]) -> Result<PowerProduct>,
    ) -> Result<(PowerProduct, IntegralityVerdict)> {
        let value = quantity(&self.identity_frame(), at)?;
        let q = value.denominator();
        if value.power(q)?.is_exact() {
            return Ok((value.clone(), power_is_integral(&value, None)?));
        }
        let superset = self.conjugates(at.len(), &quantity);
        let verdict = power_is_integral(&value, superset.as_deref())?;
        Ok((value, verdict))
    }

    fn conjugates(
        &self,
        free: usize,
        quantity: &impl Fn(&Frame, &[usize]) -> Result<PowerProduct>,
    ) -> Option<Vec<PowerProduct>> {
        let r = self.rank();
        let tuples: Vec<Vec<usize>> = (0..free).fold(vec![Vec::new()], |acc, _| {
            acc.into_iter().flat_map(|t| (0..r).map(move |k| [t.clone(), vec![k]].concat())).collect()
        });
        let mut out = Vec::new();
        for f in self.frames() {
            for t in &tuples {
                match quantity(&f, t).and_then(|pp| pp.power(pp.denominator()).map(|_| pp)) {
                    Ok(pp) => out.push(pp),
                    Err(Error::DivisionByZero) => {}
                    Err(_) => return None,
                }
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::pointed_cyclic;
    use crate::scalar::IntegralityTier;

    #[test]
    fn cyclic_five_needs_conjugates() {
        let a = Analysis::new("z5", pointed_cyclic(5), None, Assumptions::default()).unwrap();
        assert!(!a.table().is_exact());
        assert_eq!(a.grading_order(), 5);
        let j = (0..5).find(|&j| !a.table().value(j, 1).is_exact()).unwrap();
        // mu_j(g)/FPdim(g) is a primitive fifth root of unity
        let (_, v) = a
            .certify(&[j], |f, t| {
                Ok(PowerProduct::of(a.table().value(t[0], 1).clone()).over(&PowerProduct::of(a.frame_fp_dim(f, 1))))
            })
            .unwrap();
        assert_eq!(v.tier, IntegralityTier::IntegralOrbit);
        // half of it is not integral, and numerics must not claim otherwise
        let (_, v) = a
            .certify(&[j], |_, t| {
                Ok(PowerProduct::of(a.table().value(t[0], 1).clone()).over(&PowerProduct::of(Scalar::from(2))))
            })
            .unwrap();
        assert_eq!(v.is_integral(), None);
    }
}
