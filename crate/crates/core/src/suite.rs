//! Runs a selection of claims over a ring and orders the reports.

use num_rational::Ratio;

use crate::analysis::Analysis;
use crate::document::RingDocument;
use crate::dual::{central_character, star_orbits, verify_orbit_lemmas};
use crate::error::{Error, Result};
use crate::isaacs::{check_exponent, frobenius_type, is_s_isaacs, ito_michler_all, orbit_sum_identities, Divisibility};
use crate::lattice;
use crate::modular::{modular_analysis, theorem_1_2, ModularData};
use crate::report::{claims, Assumptions, Check, Claim, Hypothesis, TheoremReport, Verdict};

/// A loaded ring with its analysis and, when present, the analysis induced
/// by its modular data.
#[derive(Debug)]
pub struct Subject {
    pub analysis: Analysis,
    pub modular: Option<(ModularData, Analysis)>,
}

impl Subject {
    /// Flags asserted in the document are combined with `extra`.
    pub fn from_document(doc: &RingDocument, extra: &Assumptions, dimension: Option<usize>) -> Result<Subject> {
        let ring = doc.ring()?;
        let assumptions = doc.assumptions()?.union(extra);
        let modular = match doc.modular_data()? {
            Some(data) => {
                let a = modular_analysis(&doc.name, ring.clone(), &data, assumptions.clone())?;
                Some((data, a))
            }
            None => None,
        };
        let analysis = Analysis::new(doc.name.clone(), ring, dimension, assumptions)?;
        Ok(Subject { analysis, modular })
    }
}

/// Which claims to run and where.
#[derive(Clone, Debug)]
pub struct Request {
    pub claims: Vec<&'static Claim>,
    /// Simple objects for per-object claims; all of them when `None`.
    pub objects: Option<Vec<usize>>,
    pub s: Ratio<i64>,
    /// Subring for the character-class and s-Isaacs claims.
    pub subring: Option<Vec<usize>>,
}

/// Claims matching `query`; every claim for `None` or `"all"`.
pub fn select_claims(query: Option<&str>) -> Result<Vec<&'static Claim>> {
    match query {
        None | Some("all") => Ok(claims::ALL.iter().collect()),
        Some(q) => {
            let found: Vec<&'static Claim> = claims::ALL.iter().filter(|c| c.matches(q)).collect();
            if found.is_empty() {
                let ids: Vec<&str> = claims::ALL.iter().map(|c| c.id).collect();
                Err(Error::Input(format!("no claim matches '{q}'; known claims: {}", ids.join(", "))))
            } else {
                Ok(found)
            }
        }
    }
}

fn orbit_lemma_report(a: &Analysis, x: usize) -> TheoremReport {
    let mut rep = TheoremReport::new(&claims::ORBIT_LEMMAS, format!("{}, X = {}", a.name(), a.label(x)));
    let t = a.table();
    let orbits = match star_orbits(t, a.dual(), a.group(), Some(x)) {
        Ok(o) => o,
        Err(e) => {
            rep.note(e.to_string());
            rep.set_verdict(Verdict::holds(None));
            return rep;
        }
    };
    let faithful = a.is_faithful(x);
    let lemmas = verify_orbit_lemmas(t, Some(a.spherical()), &orbits, a.group(), faithful);
    rep.note(format!("orbits {:?}, non-vanishing {:?}", orbits.orbits, orbits.non_vanishing));
    rep.check(Check::new("|mu(Y)| constant on orbits", None, Verdict::Equality { result: lemmas.absolute_values.verdict }))
        .check(Check::new("codegrees constant on orbits", None, Verdict::Equality { result: lemmas.codegrees.verdict }));
    if let Some(c) = &lemmas.class_dims {
        rep.check(Check::new("class dimensions constant on orbits", None, Verdict::Equality { result: c.verdict }));
    }
    if let Some(free) = lemmas.free_on_non_vanishing {
        rep.check(Check::new("group-likes act freely on non-vanishing orbits", None, Verdict::holds(Some(free))));
    } else {
        rep.note("X does not generate; freeness not asserted");
    }
    match central_character(t, a.group(), x) {
        Ok(c) => {
            rep.check(Check::new(
                "mu(X)/FPdim(X) is a root of unity on group-likes",
                None,
                Verdict::Equality { result: c.roots_of_unity },
            ));
        }
        Err(e) => {
            rep.check(Check::new(format!("central character: {e}"), None, Verdict::holds(None)));
        }
    }
    rep.conclude_from_checks();
    rep
}

fn no_modular_data(a: &Analysis, x: usize) -> TheoremReport {
    let mut rep = TheoremReport::new(&claims::MODULAR_SQUARE, format!("{}, X = {}", a.name(), a.label(x)));
    rep.hypothesis(Hypothesis::new("S-matrix supplied", crate::report::Basis::Missing));
    rep.skip("no S-matrix in the input");
    rep
}

fn per_object(subject: &Subject, claim: &Claim, x: usize, div: &Divisibility<'_>, s: Ratio<i64>) -> Option<TheoremReport> {
    let a = &subject.analysis;
    let rep = match claim.id {
        id if id == claims::FPDIM_DIVIDES.id => div.fpdim_divides(),
        id if id == claims::MODULAR_SQUARE.id => match &subject.modular {
            Some((_, m)) => theorem_1_2(m, x),
            None => no_modular_data(a, x),
        },
        id if id == claims::ISAACS_HALF.id => div.isaacs_half(),
        id if id == claims::ISAACS_ANY.id => div.isaacs_any(),
        id if id == claims::PERP_DUALITY.id => lattice::perp_duality_report(a, x),
        id if id == claims::CENTER_IS_PERP.id => lattice::center_perp_report(a, x),
        id if id == claims::CENTER_ORDER.id => lattice::center_order_report(a, x),
        id if id == claims::SIZE_THEOREM.id => lattice::size_theorem(a, x),
        id if id == claims::ORBIT_LEMMAS.id => orbit_lemma_report(a, x),
        id if id == claims::GENERATED_HALF.id => div.generated_half(),
        id if id == claims::CENTER_HALF.id => div.center_half(),
        id if id == claims::ORBIT_SUMS.id => orbit_sum_identities(a, x, s),
        id if id == claims::GENERATED_ANY.id => div.generated_any(),
        id if id == claims::CENTER_ANY.id => div.center_any(),
        id if id == claims::CENTER_ISAACS.id => div.center_isaacs(),
        id if id == claims::GRADING_ISAACS.id => div.grading_isaacs(),
        id if id == claims::SQUARE_IDENTITY.id => div.square_identity(),
        id if id == claims::CONJECTURE.id => div.conjecture(),
        _ => return None,
    };
    Some(rep)
}

fn scoped<R>(a: &Analysis, subring: Option<&[usize]>, f: impl FnOnce(&Analysis) -> R) -> Result<R> {
    match subring {
        Some(m) if m.len() < a.rank() => {
            let sub = a.subring(m)?;
            Ok(f(&sub))
        }
        _ => Ok(f(a)),
    }
}

fn ring_level(subject: &Subject, claim: &Claim, req: &Request) -> Option<Vec<TheoremReport>> {
    let a = &subject.analysis;
    let sub = req.subring.as_deref();
    let failed = |claim: &Claim, e: Error| {
        let mut rep = TheoremReport::new(claim, a.name().to_string());
        rep.note(e.to_string());
        rep.set_verdict(Verdict::holds(None));
        vec![rep]
    };
    let reports = match claim.id {
        id if id == claims::ITO_MICHLER_BRAIDED.id || id == claims::ITO_MICHLER.id => {
            ito_michler_all(a).into_iter().filter(|r| r.claim == id).collect()
        }
        id if id == claims::INTERSECTION_OF_CENTERS.id => vec![lattice::intersection_of_centers_report(a)],
        id if id == claims::S_ISAACS.id => {
            scoped(a, sub, |b| vec![is_s_isaacs(b, req.s)]).unwrap_or_else(|e| failed(claim, e))
        }
        id if id == claims::FROBENIUS_TYPE.id => vec![frobenius_type(a, req.s)],
        id if id == claims::CLASS_SIZES.id => match sub {
            Some(m) => vec![lattice::class_size_report(a, m)],
            None => return None,
        },
        _ => return None,
    };
    Some(reports)
}

/// Reports ordered by claim, then by object.
pub fn run(subject: &Subject, req: &Request) -> Result<Vec<TheoremReport>> {
    check_exponent(req.s)?;
    let a = &subject.analysis;
    if let Some(m) = &req.subring {
        if lattice::closure(a.ring(), m) != *m {
            return Err(Error::Input(format!("{m:?} is not a fusion subring")));
        }
    }
    let objects: Vec<usize> = req.objects.clone().unwrap_or_else(|| (0..a.rank()).collect());
    if let Some(&bad) = objects.iter().find(|&&x| x >= a.rank()) {
        return Err(Error::IndexOutOfRange { index: bad, rank: a.rank() });
    }
    let mut claims_sorted = req.claims.clone();
    claims_sorted.sort_by_key(|c| claims::ALL.iter().position(|k| k.id == c.id));
    claims_sorted.dedup_by_key(|c| c.id);

    let mut slots: Vec<Vec<TheoremReport>> = vec![Vec::new(); claims_sorted.len()];
    for (ci, claim) in claims_sorted.iter().enumerate() {
        if let Some(reps) = ring_level(subject, claim, req) {
            slots[ci] = reps;
        }
    }
    for &x in &objects {
        let div = Divisibility::new(a, x, req.s)?;
        for (ci, claim) in claims_sorted.iter().enumerate() {
            if claim.id == claims::CLASS_SIZES.id && req.subring.is_none() {
                slots[ci].push(lattice::class_size_report(a, &a.generated(&[x])));
            } else if let Some(rep) = per_object(subject, claim, x, &div, req.s) {
                slots[ci].push(rep);
            }
        }
    }
    Ok(slots.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::bundled;
    use crate::report::Outcome;

    fn subject(name: &str, flags: &str) -> Subject {
        Subject::from_document(&bundled(name).unwrap(), &Assumptions::parse_list(flags).unwrap(), None).unwrap()
    }

    #[test]
    fn selection() {
        assert_eq!(select_claims(Some("1.2")).unwrap()[0].id, "Thm 1.2");
        assert_eq!(select_claims(None).unwrap().len(), claims::ALL.len());
        assert!(select_claims(Some("9.9")).is_err());
    }

    #[test]
    fn fibonacci_modular_claim() {
        let s = subject("fibonacci", "modular");
        let req = Request { claims: select_claims(Some("1.2")).unwrap(), objects: Some(vec![1]), s: Ratio::new(1, 2), subring: None };
        let reps = run(&s, &req).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].outcome, Outcome::Pass);
    }

    #[test]
    fn all_claims_on_ising_are_ordered_and_pass() {
        let s = subject("ising", "");
        let req = Request { claims: select_claims(None).unwrap(), objects: None, s: Ratio::new(1, 2), subring: None };
        let reps = run(&s, &req).unwrap();
        let order: Vec<usize> =
            reps.iter().map(|r| claims::ALL.iter().position(|c| c.id == r.claim).unwrap()).collect();
        assert!(order.windows(2).all(|w| w[0] <= w[1]));
        for r in &reps {
            assert!(matches!(r.outcome, Outcome::Pass | Outcome::Info | Outcome::Skipped), "{r:?}");
        }
        assert!(reps.iter().filter(|r| r.outcome == Outcome::Pass).count() > 40);
    }
}
