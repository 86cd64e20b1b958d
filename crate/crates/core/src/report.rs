//! Theorem reports: what was checked, under which hypotheses, with which
//! quantities, and how certain the conclusion is.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Equality, IntegralityTier, IntegralityVerdict, Scalar};

/// Properties of the underlying category that the ring data cannot certify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    Spherical,
    PseudoUnitary,
    Braided,
    Ribbon,
    Unitary,
    Modular,
}

impl Flag {
    pub const ALL: [Flag; 6] =
        [Flag::Spherical, Flag::PseudoUnitary, Flag::Braided, Flag::Ribbon, Flag::Unitary, Flag::Modular];

    pub fn as_str(self) -> &'static str {
        match self {
            Flag::Spherical => "spherical",
            Flag::PseudoUnitary => "pseudo_unitary",
            Flag::Braided => "braided",
            Flag::Ribbon => "ribbon",
            Flag::Unitary => "unitary",
            Flag::Modular => "modular",
        }
    }

    /// Flags entailed by this one.
    fn implies(self) -> &'static [Flag] {
        match self {
            Flag::Ribbon => &[Flag::Braided, Flag::Spherical],
            Flag::Modular => &[Flag::Ribbon, Flag::Braided, Flag::Spherical],
            Flag::Unitary => &[Flag::PseudoUnitary, Flag::Spherical],
            Flag::PseudoUnitary => &[Flag::Spherical],
            _ => &[],
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Flag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        Flag::ALL
            .into_iter()
            .find(|f| f.as_str() == norm)
            .ok_or_else(|| Error::Input(format!("unknown hypothesis flag '{s}'")))
    }
}

/// User-asserted flags, closed under implication.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Assumptions {
    asserted: BTreeSet<Flag>,
    implied: BTreeSet<Flag>,
}

impl Assumptions {
    pub fn new(flags: impl IntoIterator<Item = Flag>) -> Self {
        let asserted: BTreeSet<Flag> = flags.into_iter().collect();
        let mut implied = asserted.clone();
        let mut frontier: Vec<Flag> = asserted.iter().copied().collect();
        while let Some(f) = frontier.pop() {
            for &g in f.implies() {
                if implied.insert(g) {
                    frontier.push(g);
                }
            }
        }
        Assumptions { asserted, implied }
    }

    pub fn parse_list(text: &str) -> Result<Self> {
        let flags = text.split(',').filter(|s| !s.trim().is_empty()).map(Flag::from_str).collect::<Result<Vec<_>>>()?;
        Ok(Assumptions::new(flags))
    }

    pub fn has(&self, f: Flag) -> bool {
        self.implied.contains(&f)
    }

    pub fn asserted(&self) -> impl Iterator<Item = Flag> + '_ {
        self.asserted.iter().copied()
    }

    pub fn union(&self, other: &Assumptions) -> Assumptions {
        Assumptions::new(self.asserted.iter().chain(other.asserted.iter()).copied())
    }

    /// The flags inherited by a fusion subcategory.
    pub fn for_subcategory(&self) -> Assumptions {
        Assumptions::new(self.implied.iter().copied().filter(|&f| f != Flag::Modular))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// Established from the ring data.
    Verified,
    /// Contradicted by the ring data.
    Refuted,
    /// The data could not decide.
    Undecided,
    /// Taken from the user's flags.
    Asserted,
    /// Required but neither asserted nor derivable.
    Missing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub basis: Basis,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Hypothesis {
    pub fn new(name: impl Into<String>, basis: Basis) -> Self {
        Hypothesis { name: name.into(), basis, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn from_data(name: impl Into<String>, holds: Option<bool>) -> Self {
        let basis = match holds {
            Some(true) => Basis::Verified,
            Some(false) => Basis::Refuted,
            None => Basis::Undecided,
        };
        Hypothesis::new(name, basis)
    }

    pub fn from_flag(flag: Flag, assumptions: &Assumptions) -> Self {
        let basis = if assumptions.has(flag) { Basis::Asserted } else { Basis::Missing };
        Hypothesis::new(flag.as_str(), basis)
    }

    pub fn satisfied(&self) -> bool {
        matches!(self.basis, Basis::Verified | Basis::Asserted)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quantity {
    pub name: String,
    pub value: Scalar,
    pub exact: bool,
}

impl Quantity {
    pub fn new(name: impl Into<String>, value: Scalar) -> Self {
        let exact = value.is_exact();
        Quantity { name: name.into(), value, exact }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Integrality {
        tier: IntegralityTier,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<String>,
    },
    Equality {
        result: Equality,
    },
    Skipped {
        reason: String,
    },
}

impl Verdict {
    pub fn integrality(v: &IntegralityVerdict) -> Self {
        Verdict::Integrality { tier: v.tier, witness: v.witness_string() }
    }

    pub fn holds(h: Option<bool>) -> Self {
        let result = match h {
            Some(true) => Equality::Equal,
            Some(false) => Equality::Distinct,
            None => Equality::Indeterminate,
        };
        Verdict::Equality { result }
    }

    pub fn outcome(&self) -> Outcome {
        let decided = match self {
            Verdict::Integrality { tier, .. } => tier.is_integral(),
            Verdict::Equality { result } => result.holds(),
            Verdict::Skipped { .. } => return Outcome::Skipped,
        };
        match decided {
            Some(true) => Outcome::Pass,
            Some(false) => Outcome::Fail,
            None => Outcome::Indeterminate,
        }
    }

    pub fn tier(&self) -> Option<IntegralityTier> {
        match self {
            Verdict::Integrality { tier, .. } => Some(*tier),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Integrality { tier, .. } => tier.as_str(),
            Verdict::Equality { result } => match result {
                Equality::Equal => "EQUAL",
                Equality::WithinRadius => "WITHIN_RADIUS",
                Equality::Distinct => "DISTINCT",
                Equality::Indeterminate => "INDETERMINATE",
            },
            Verdict::Skipped { .. } => "SKIPPED",
        }
    }
}

fn tier_rank(t: IntegralityTier) -> u8 {
    match t {
        IntegralityTier::IntegralExact => 0,
        IntegralityTier::IntegralOrbit => 1,
        IntegralityTier::IntegralHeuristic => 2,
        IntegralityTier::Indeterminate => 3,
        IntegralityTier::NotIntegral => 4,
    }
}

/// The less certain of two tiers, refutations dominating.
pub fn weakest_tier(a: IntegralityTier, b: IntegralityTier) -> IntegralityTier {
    if tier_rank(a) >= tier_rank(b) {
        a
    } else {
        b
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Pass,
    /// A property query answered either way.
    Info,
    Skipped,
    Indeterminate,
    Fail,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Info => "INFO",
            Outcome::Skipped => "SKIPPED",
            Outcome::Indeterminate => "INDETERMINATE",
            Outcome::Fail => "FAIL",
        }
    }
}

/// One line item inside a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Scalar>,
    pub verdict: Verdict,
}

impl Check {
    pub fn new(label: impl Into<String>, value: Option<Scalar>, verdict: Verdict) -> Self {
        Check { label: label.into(), value, verdict }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub claim: String,
    pub title: String,
    pub subject: String,
    pub hypotheses: Vec<Hypothesis>,
    pub quantities: Vec<Quantity>,
    pub verdict: Verdict,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Whether this answers a property query rather than checking a claim.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub property: bool,
}

impl TheoremReport {
    pub fn new(claim: &Claim, subject: impl Into<String>) -> Self {
        let verdict = Verdict::Skipped { reason: "not evaluated".into() };
        TheoremReport {
            claim: claim.id.to_string(),
            title: claim.title.to_string(),
            subject: subject.into(),
            hypotheses: Vec::new(),
            quantities: Vec::new(),
            outcome: verdict.outcome(),
            verdict,
            checks: Vec::new(),
            notes: Vec::new(),
            property: false,
        }
    }

    /// A report whose decided verdicts, either way, are informational.
    pub fn query(claim: &Claim, subject: impl Into<String>) -> Self {
        let mut rep = TheoremReport::new(claim, subject);
        rep.property = true;
        rep
    }

    pub fn hypothesis(&mut self, h: Hypothesis) -> &mut Self {
        self.hypotheses.push(h);
        self
    }

    pub fn quantity(&mut self, name: impl Into<String>, value: Scalar) -> &mut Self {
        self.quantities.push(Quantity::new(name, value));
        self
    }

    pub fn check(&mut self, c: Check) -> &mut Self {
        self.checks.push(c);
        self
    }

    pub fn note(&mut self, n: impl Into<String>) -> &mut Self {
        self.notes.push(n.into());
        self
    }

    /// The first unmet hypothesis, if any.
    pub fn unmet(&self) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| !h.satisfied())
    }

    pub fn set_verdict(&mut self, verdict: Verdict) -> &mut Self {
        self.outcome = match verdict.outcome() {
            Outcome::Pass | Outcome::Fail if self.property => Outcome::Info,
            o => o,
        };
        self.verdict = verdict;
        self
    }

    pub fn skip(&mut self, reason: impl Into<String>) -> &mut Self {
        self.set_verdict(Verdict::Skipped { reason: reason.into() })
    }

    /// Skips with a reason naming the unmet hypothesis; returns whether it did.
    pub fn skip_if_unmet(&mut self) -> bool {
        match self.unmet() {
            Some(h) => {
                let reason = match h.basis {
                    Basis::Missing => format!("hypothesis '{}' not asserted", h.name),
                    Basis::Refuted => format!("hypothesis '{}' fails on this ring", h.name),
                    _ => format!("hypothesis '{}' could not be decided", h.name),
                };
                self.skip(reason);
                true
            }
            None => false,
        }
    }

    /// Verdict aggregated from the checks: the weakest integrality tier when
    /// all checks are integrality checks, otherwise the conjunction.
    pub fn conclude_from_checks(&mut self) -> &mut Self {
        let verdict = aggregate(&self.checks);
        self.set_verdict(verdict)
    }
}

pub fn aggregate(checks: &[Check]) -> Verdict {
    if let [only] = checks {
        return only.verdict.clone();
    }
    let tiers: Option<Vec<IntegralityTier>> = checks.iter().map(|c| c.verdict.tier()).collect();
    match tiers {
        Some(t) if !t.is_empty() => {
            let tier = t.into_iter().fold(IntegralityTier::IntegralExact, weakest_tier);
            Verdict::Integrality { tier, witness: None }
        }
        _ => {
            let mut result = Equality::Equal;
            for c in checks {
                let e = match &c.verdict {
                    Verdict::Equality { result } => *result,
                    Verdict::Skipped { .. } => continue,
                    other => match other.outcome() {
                        Outcome::Pass => Equality::Equal,
                        Outcome::Fail => Equality::Distinct,
                        _ => Equality::Indeterminate,
                    },
                };
                result = result.and(e);
            }
            Verdict::Equality { result }
        }
    }
}

/// A checkable statement: its identifier and a short description.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Claim {
    pub id: &'static str,
    pub title: &'static str,
}

impl Claim {
    /// Matches `query` against the identifier: the full id, its number
    /// alone, or a case-insensitive prefix of the id.
    pub fn matches(&self, query: &str) -> bool {
        let q = query.trim().to_ascii_lowercase();
        let id = self.id.to_ascii_lowercase();
        let number = id.split_whitespace().last().unwrap_or("");
        q == id || q == number || (!q.is_empty() && id.starts_with(&q))
    }
}

pub mod claims {
    use super::Claim;

    pub const FPDIM_DIVIDES: Claim =
        Claim { id: "Thm 1.1", title: "FPdim(X) divides FPdim(C)/|U(C)| for pseudo-unitary ribbon categories" };
    pub const MODULAR_SQUARE: Claim =
        Claim { id: "Thm 1.2", title: "dim(X)^2 divides dim(C)/|U(C)| when X generates a modular category" };
    pub const ISAACS_HALF: Claim =
        Claim { id: "Thm 1.3", title: "(dim C)^(2s) FPdim(C) / (dim(X)^2 |U(C)|) is integral, s >= 1/2" };
    pub const ISAACS_ANY: Claim =
        Claim { id: "Thm 1.4", title: "(dim C)^s FPdim(C) / (dim(X) |U(C)|) is integral, s >= 0" };
    pub const ITO_MICHLER_BRAIDED: Claim =
        Claim { id: "Thm 1.6", title: "p^a | |U(C)| forces p not dividing FPdim(X)^2 (braided, weakly integral)" };
    pub const ITO_MICHLER: Claim =
        Claim { id: "Cor 1.7", title: "p divides no FPdim(X) iff p^a divides |U(C)| (modular, weakly integral)" };
    pub const INTERSECTION_OF_CENTERS: Claim =
        Claim { id: "Lem 2.2", title: "the group-like characters are the intersection of all centers" };
    pub const PERP_DUALITY: Claim =
        Claim { id: "Perp", title: "FPdim(D) n(D^perp) = FPdim(C) and (D^perp)^perp = D" };
    pub const CENTER_IS_PERP: Claim =
        Claim { id: "Prop 2.7", title: "the center of a simple X is the perp of the adjoint of <X>" };
    pub const CENTER_ORDER: Claim = Claim { id: "Thm 2.8", title: "|U(C)| divides n(Z_C(X))" };
    pub const CLASS_SIZES: Claim =
        Claim { id: "Prop 3.1", title: "each character class over t has n_dim = dim(D^t) dim C / dim D" };
    pub const SIZE_THEOREM: Claim =
        Claim { id: "Thm 3.3", title: "dim C / n_dim(Z_C(X)) = dim<X> / |U(<X>)|" };
    pub const ORBIT_LEMMAS: Claim =
        Claim { id: "Lem 4.1", title: "orbit invariants and freeness of the group-like action" };
    pub const S_ISAACS: Claim = Claim { id: "Def 5.1", title: "every lambda_s(mu_j, X) is an algebraic integer" };
    pub const FROBENIUS_TYPE: Claim = Claim { id: "Frobenius", title: "every dim(X) divides (dim C)^s" };
    pub const GENERATED_HALF: Claim =
        Claim { id: "Lem 5.3", title: "(dim C)^(2s+1) / (|U(C)| dim(X)^2) is integral when C = <X>, s >= 1/2" };
    pub const CENTER_HALF: Claim =
        Claim { id: "Thm 5.5", title: "(dim C)^(2s+1) / (dim(X)^2 n_dim(Z_C(X))) is integral, s >= 1/2" };
    pub const ORBIT_SUMS: Claim =
        Claim { id: "Lem 6.1", title: "orbit decompositions of dim C/|G| and of (dim C)^(2s+1)/dim(X)^2" };
    pub const GENERATED_ANY: Claim =
        Claim { id: "Lem 6.2", title: "(dim C)^(s+1) / (|U(C)| dim X) is integral when C = <X>" };
    pub const CENTER_ANY: Claim =
        Claim { id: "Thm 6.3", title: "(dim C)^(s+1) / (n_dim(Z_C(X)) dim X) is integral" };
    pub const CENTER_ISAACS: Claim = Claim { id: "Thm 6.4", title: "dim(X) divides FPdim(C)/n(Z_C(X))" };
    pub const GRADING_ISAACS: Claim = Claim { id: "Thm 6.5", title: "dim(X) divides FPdim(C)/|U(C)|" };
    pub const SQUARE_IDENTITY: Claim = Claim { id: "Rem 6.6", title: "D_s^2 = C_s FPdim(C)/|U(C)|" };
    pub const CONJECTURE: Claim =
        Claim { id: "Conj 7.2", title: "(dim C)^2 FPdim(C) / (dim(X)^2 |U(C)|) is integral" };

    /// Every claim, in report order.
    pub const ALL: [Claim; 24] = [
        FPDIM_DIVIDES,
        MODULAR_SQUARE,
        ISAACS_HALF,
        ISAACS_ANY,
        ITO_MICHLER_BRAIDED,
        ITO_MICHLER,
        INTERSECTION_OF_CENTERS,
        PERP_DUALITY,
        CENTER_IS_PERP,
        CENTER_ORDER,
        CLASS_SIZES,
        SIZE_THEOREM,
        ORBIT_LEMMAS,
        S_ISAACS,
        FROBENIUS_TYPE,
        GENERATED_HALF,
        CENTER_HALF,
        ORBIT_SUMS,
        GENERATED_ANY,
        CENTER_ANY,
        CENTER_ISAACS,
        GRADING_ISAACS,
        SQUARE_IDENTITY,
        CONJECTURE,
    ];
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_close_under_implication() {
        let a = Assumptions::parse_list("modular").unwrap();
        assert!(a.has(Flag::Braided) && a.has(Flag::Spherical) && a.has(Flag::Ribbon));
        assert!(!a.has(Flag::Unitary));
        assert!(!a.for_subcategory().has(Flag::Modular));
        assert!(Assumptions::parse_list("pseudo-unitary").unwrap().has(Flag::Spherical));
        assert!(Assumptions::parse_list("bogus").is_err());
    }

    #[test]
    fn claim_lookup() {
        assert!(claims::GRADING_ISAACS.matches("6.5"));
        assert!(claims::GRADING_ISAACS.matches("thm 6.5"));
        assert!(!claims::GRADING_ISAACS.matches("6.4"));
        assert!(claims::FROBENIUS_TYPE.matches("frob"));
    }

    #[test]
    fn aggregation_keeps_weakest() {
        let c = |t| Check::new("x", None, Verdict::Integrality { tier: t, witness: None });
        let v = aggregate(&[c(IntegralityTier::IntegralExact), c(IntegralityTier::IntegralOrbit)]);
        assert_eq!(v.tier(), Some(IntegralityTier::IntegralOrbit));
        let v = aggregate(&[c(IntegralityTier::Indeterminate), c(IntegralityTier::NotIntegral)]);
        assert_eq!(v.outcome(), Outcome::Fail);
    }
}
