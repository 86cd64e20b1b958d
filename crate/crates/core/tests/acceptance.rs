//! Acceptance suite: thirteen criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so every line is printed. The process
//! exits non-zero when any criterion fails.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;

use fusionlab::chars::verify_orthogonality;
use fusionlab::document::{bundled, corpus};
use fusionlab::isaacs::{is_s_isaacs, ito_michler, orbit_sum_identities, Divisibility};
use fusionlab::lattice::{center_order_report, character_classes, size_theorem};
use fusionlab::modular::{theorem_1_2, verlinde_cross_check};
use fusionlab::ring::Violation;
use fusionlab::scalar::{is_algebraic_integer, parse_scalar, with_precision};
use fusionlab::{
    Analysis, Assumptions, Equality, Flag, IntegralityTier, Outcome, Ratio, RingDocument, Scalar, Subject,
    Verdict,
};

/// Working precision for every criterion.
const PRECISION: u32 = 256;
/// Interval identities must hold to within `2^-TOLERANCE_BITS`.
const TOLERANCE_BITS: i32 = 128;
/// Rank up to which center-order verdicts must not be heuristic.
const NON_HEURISTIC_RANK: usize = 4;
/// Grid for the integrality oracle: (p + q sqrt d) / r.
const GRID_P: std::ops::RangeInclusive<i64> = -5..=4;
const GRID_Q: std::ops::RangeInclusive<i64> = -4..=5;
const GRID_R: std::ops::RangeInclusive<i64> = 1..=10;
const GRID_D: [i64; 10] = [2, 3, 5, 6, 7, 10, 11, 13, -1, -3];

type Outcome_ = Result<String, String>;

fn sc(text: &str) -> Scalar {
    parse_scalar(text).unwrap_or_else(|e| panic!("bad scalar {text}: {e}"))
}

fn tolerance() -> f64 {
    2f64.powi(-TOLERANCE_BITS)
}

fn subject(doc: &RingDocument, extra: &str) -> Subject {
    Subject::from_document(doc, &Assumptions::parse_list(extra).unwrap(), None)
        .unwrap_or_else(|e| panic!("{}: {e}", doc.name))
}

fn analysis(name: &str, extra: &str) -> Analysis {
    subject(&bundled(name).unwrap(), extra).analysis
}

fn index(a: &Analysis, label: &str) -> usize {
    a.ring().index_of(label).unwrap_or_else(|| panic!("{} has no simple {label}", a.name()))
}

/// Exact equality, or for intervals a deviation within the pinned tolerance.
fn close(lhs: &Scalar, rhs: &Scalar) -> bool {
    match lhs.compare_eq(rhs) {
        Equality::Equal => true,
        Equality::WithinRadius => lhs.sub_ref(rhs).magnitude_upper() <= tolerance(),
        _ => false,
    }
}

fn exactly(lhs: &Scalar, rhs: &Scalar) -> bool {
    lhs.compare_eq(rhs) == Equality::Equal
}

fn quantity<'a>(r: &'a fusionlab::TheoremReport, name: &str) -> Option<&'a Scalar> {
    r.quantities.iter().find(|q| q.name == name).map(|q| &q.value)
}

fn ensure(ok: bool, failures: &mut Vec<String>, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn verdict(failures: Vec<String>, summary: String) -> Outcome_ {
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(failures.join("; "))
    }
}

/// Both orthogonality relations and the inverse codegree sum, recomputed
/// here from the table values and also taken from the library check.
fn criterion_1() -> Outcome_ {
    let mut failures = Vec::new();
    let mut checked = 0;
    for doc in corpus() {
        let a = subject(&doc, "").analysis;
        let t = a.table();
        let r = t.rank();
        let dual = |i: usize| a.ring().dual(i);
        for j in 0..r {
            for k in 0..r {
                let terms: Vec<Scalar> = (0..r).map(|i| t.value(j, i).mul_ref(t.value(k, dual(i)))).collect();
                let want = if j == k { t.codegree(j).clone() } else { Scalar::zero() };
                ensure(close(&Scalar::sum(terms.iter()), &want), &mut failures, || {
                    format!("{}: first relation at rows {j},{k}", doc.name)
                });
                checked += 1;
            }
        }
        for x in 0..r {
            for y in 0..r {
                let terms: Vec<Scalar> = (0..r)
                    .map(|j| t.value(j, x).mul_ref(t.value(j, dual(y))).div_ref(t.codegree(j)).unwrap())
                    .collect();
                let want = Scalar::from((x == y) as i64);
                ensure(close(&Scalar::sum(terms.iter()), &want), &mut failures, || {
                    format!("{}: second relation at objects {x},{y}", doc.name)
                });
                checked += 1;
            }
        }
        let inv: Vec<Scalar> = t.codegrees().iter().map(|n| n.inv().unwrap()).collect();
        ensure(close(&Scalar::sum(inv.iter()), &Scalar::one()), &mut failures, || {
            format!("{}: sum of 1/n_j", doc.name)
        });
        let lib = verify_orthogonality(t, a.spherical()).unwrap();
        let lib_ok = lib.verdict().holds() == Some(true) && lib.max_deviation() <= tolerance();
        ensure(lib_ok, &mut failures, || format!("{}: library orthogonality {:?}", doc.name, lib.verdict()));
        ensure(t.is_exact() || lib.max_deviation() <= tolerance(), &mut failures, || {
            format!("{}: interval deviation {}", doc.name, lib.max_deviation())
        });
    }
    verdict(failures, format!("{checked} identities on {} rings", corpus().len()))
}

/// Rep(G) codegrees and class dimensions against stored group fixtures.
fn criterion_2() -> Outcome_ {
    let mut failures = Vec::new();
    for name in ["rep_s3", "rep_d4", "rep_q8", "rep_a4"] {
        let doc = bundled(name).unwrap();
        let g = doc.expected.as_ref().and_then(|e| e.group.clone()).expect("group fixture");
        let a = subject(&doc, "").analysis;
        let t = a.table();
        let orig = a.ring().original_index().to_vec();
        let mut used = vec![false; g.classes.len()];
        for j in 0..t.rank() {
            let hit = g.classes.iter().position(|c| {
                (0..t.rank()).all(|i| exactly(t.value(j, i), &sc(&c.values[orig[i]])))
            });
            let Some(c) = hit else {
                failures.push(format!("{name}: character {j} matches no class"));
                continue;
            };
            ensure(!used[c], &mut failures, || format!("{name}: class {} matched twice", g.classes[c].name));
            used[c] = true;
            let size = g.classes[c].size as i64;
            let codegree = Scalar::from_ratio(g.order as i64, size).unwrap();
            ensure(exactly(t.codegree(j), &codegree), &mut failures, || {
                format!("{name}: n_{j} = {} but |G|/|class| = {codegree}", t.codegree(j))
            });
            ensure(exactly(a.class_dim(j), &Scalar::from(size)), &mut failures, || {
                format!("{name}: dim(C^{j}) = {} but class size {size}", a.class_dim(j))
            });
        }
    }
    verdict(failures, "S3, D4, Q8, A4 match their class fixtures".into())
}

/// Orders of the group of group-like characters.
fn criterion_3() -> Outcome_ {
    let mut expected: Vec<(String, usize)> = vec![
        ("ising".into(), 2),
        ("toric_code".into(), 4),
        ("rep_s3".into(), 1),
        ("fibonacci".into(), 1),
    ];
    expected.extend((1..=6).map(|n| (format!("pointed_z{n}"), n)));
    let mut failures = Vec::new();
    for (name, want) in &expected {
        let got = analysis(name, "").group().order();
        ensure(got == *want, &mut failures, || format!("{name}: |G| = {got}, expected {want}"));
    }
    verdict(failures, format!("{} rings", expected.len()))
}

/// Character classes relative to a pointed subring.
fn criterion_4() -> Outcome_ {
    let mut failures = Vec::new();
    for (name, gens, want) in [("rep_s3", ["1", "sgn"], 3), ("ising", ["1", "eps"], 2)] {
        let a = analysis(name, "");
        let members: Vec<usize> = gens.iter().map(|g| index(&a, g)).collect();
        let p = character_classes(&a, &members).unwrap();
        for (b, n_dim) in p.n_dim.iter().enumerate() {
            ensure(exactly(n_dim, &Scalar::from(want)), &mut failures, || {
                format!("{name}: block {b} has n_dim {n_dim}, expected {want}")
            });
        }
        let ratio = a.dim_c().div_ref(&p.dim_sub).unwrap();
        ensure(exactly(&ratio, &Scalar::from(want)), &mut failures, || format!("{name}: dim C / dim D = {ratio}"));
        ensure(p.block_count_matches, &mut failures, || format!("{name}: block count"));
    }
    verdict(failures, "Rep(S3)/<sgn> -> 3, Ising/<eps> -> 2".into())
}

/// Size of the center of a generating simple.
fn criterion_5() -> Outcome_ {
    let mut failures = Vec::new();
    let a = analysis("ising", "");
    let r = size_theorem(&a, index(&a, "sigma"));
    ensure(r.outcome == Outcome::Pass, &mut failures, || format!("ising sigma: {:?}", r.verdict));
    for (q, want) in [("dim C / n_dim(Z_C(X))", 2), ("n_dim(Z_C(X))", 2), ("dim <X>", 4), ("|U(<X>)|", 2)] {
        let got = quantity(&r, q);
        ensure(got.is_some_and(|v| exactly(v, &Scalar::from(want))), &mut failures, || {
            format!("ising sigma: {q} = {got:?}, expected {want}")
        });
    }
    let mut faithful = 0;
    for doc in corpus() {
        let a = subject(&doc, "").analysis;
        for x in (0..a.rank()).filter(|&x| a.is_faithful(x)) {
            let r = size_theorem(&a, x);
            ensure(r.outcome == Outcome::Pass, &mut failures, || format!("{}: {:?}", r.subject, r.verdict));
            faithful += 1;
        }
    }
    verdict(failures, format!("Ising sigma gives 2; {faithful} faithful simples agree"))
}

/// `|U(C)|` divides `n(Z_C(X))` on RN rings.
fn criterion_6() -> Outcome_ {
    let mut failures = Vec::new();
    let mut count = 0;
    for doc in corpus() {
        let a = subject(&doc, "").analysis;
        if a.rn() != Some(true) {
            continue;
        }
        for x in 0..a.rank() {
            let r = center_order_report(&a, x);
            let tier = r.verdict.tier();
            let ok = match tier {
                Some(IntegralityTier::IntegralExact | IntegralityTier::IntegralOrbit) => true,
                Some(IntegralityTier::IntegralHeuristic) => a.rank() > NON_HEURISTIC_RANK,
                _ => false,
            };
            ensure(ok, &mut failures, || format!("{}: tier {tier:?}", r.subject));
            count += 1;
        }
    }
    verdict(failures, format!("{count} simples on RN rings"))
}

/// `s`-Isaacs at `s = 0` on braided rings and at `s = 1` everywhere.
fn criterion_7() -> Outcome_ {
    let mut failures = Vec::new();
    let mut braided = 0;
    for doc in corpus() {
        let a = subject(&doc, "").analysis;
        if a.assumptions().has(Flag::Braided) {
            let r = is_s_isaacs(&a, Ratio::new(0, 1));
            ensure(r.outcome == Outcome::Pass, &mut failures, || format!("{} at s = 0: {:?}", doc.name, r.verdict));
            braided += 1;
        }
        let r = is_s_isaacs(&a, Ratio::new(1, 1));
        ensure(r.outcome == Outcome::Pass, &mut failures, || format!("{} at s = 1: {:?}", doc.name, r.verdict));
    }
    verdict(failures, format!("s = 0 on {braided} braided rings, s = 1 on {}", corpus().len()))
}

/// `dim X` divides `FPdim(C)/|U(C)|`, with the Rep(G) closed form.
fn criterion_8() -> Outcome_ {
    const QUOTIENT: &str = "FPdim(C) / (|U(C)| dim X)";
    let half = Ratio::new(1, 2);
    let mut failures = Vec::new();

    let a = analysis("ising", "");
    let r = Divisibility::new(&a, index(&a, "sigma"), half).unwrap().grading_isaacs();
    ensure(r.verdict.tier() == Some(IntegralityTier::IntegralExact), &mut failures, || format!("ising: {:?}", r.verdict));
    ensure(quantity(&r, QUOTIENT).is_some_and(|v| exactly(v, &sc("sqrt(2)"))), &mut failures, || {
        format!("ising: quotient {:?}", quantity(&r, QUOTIENT))
    });

    let a = analysis("rep_s3", "");
    let r = Divisibility::new(&a, index(&a, "V"), half).unwrap().grading_isaacs();
    ensure(quantity(&r, QUOTIENT).is_some_and(|v| exactly(v, &Scalar::from(3))), &mut failures, || {
        format!("rep_s3: quotient {:?}", quantity(&r, QUOTIENT))
    });

    let mut count = 0;
    for doc in corpus() {
        let a = subject(&doc, "").analysis;
        let group = doc.expected.as_ref().and_then(|e| e.group.clone());
        for x in 0..a.rank() {
            let div = Divisibility::new(&a, x, half).unwrap();
            for r in [div.grading_isaacs(), div.fpdim_divides()] {
                ensure(r.verdict.tier().and_then(IntegralityTier::is_integral) == Some(true), &mut failures, || {
                    format!("{} {}: {:?}", r.claim, r.subject, r.verdict)
                });
                count += 1;
            }
            if let Some(g) = &group {
                let r = div.grading_isaacs();
                let chi1 = a.fp_dim(x).as_integer().unwrap();
                let want = Scalar::from_rational(BigRational::new(
                    BigInt::from(g.order),
                    BigInt::from(g.center_order) * chi1,
                ));
                ensure(quantity(&r, QUOTIENT).is_some_and(|v| exactly(v, &want)), &mut failures, || {
                    format!("{}: quotient {:?}, |G|/(|Z(G)| chi(1)) = {want}", r.subject, quantity(&r, QUOTIENT))
                });
            }
        }
    }
    verdict(failures, format!("Ising sqrt(2), Rep(S3) 3; {count} reports integral"))
}

/// Modular divisibility `d_X^2 | dim C / |U(C)|`.
fn criterion_9() -> Outcome_ {
    const QUOTIENT: &str = "dim C / (|U(C)| d_X^2)";
    let mut failures = Vec::new();
    let cases = [("fibonacci", "tau", "(5 - sqrt(5))/2", true), ("ising", "sigma", "1", true), ("toric_code", "e", "1", false)];
    for (name, label, want, generates) in cases {
        let s = subject(&bundled(name).unwrap(), "");
        let (_, m) = s.modular.as_ref().expect("modular data");
        let r = theorem_1_2(m, index(m, label));
        let got = quantity(&r, QUOTIENT);
        ensure(got.is_some_and(|v| v.is_exact() && exactly(v, &sc(want))), &mut failures, || {
            format!("{name}: quotient {got:?}, expected {want}")
        });
        let expected_outcome = if generates { Outcome::Pass } else { Outcome::Skipped };
        ensure(r.outcome == expected_outcome, &mut failures, || format!("{name}: outcome {:?}", r.outcome));
        if name == "fibonacci" {
            let witness = match &r.verdict {
                Verdict::Integrality { tier: IntegralityTier::IntegralExact, witness } => witness.clone(),
                _ => None,
            };
            ensure(witness.as_deref() == Some("x^2 - 5*x + 5"), &mut failures, || format!("fibonacci witness {witness:?}"));
        }
    }
    verdict(failures, "Fibonacci (5-sqrt5)/2 with x^2 - 5*x + 5, Ising 1, toric code 1".into())
}

/// Ito-Michler at p = 2 and on pointed Z/p.
fn criterion_10() -> Outcome_ {
    let mut failures = Vec::new();
    let mut cases: Vec<(String, u64)> = vec![("toric_code".into(), 2), ("ising".into(), 2)];
    cases.extend([2u64, 3, 5].iter().map(|&p| (format!("pointed_z{p}"), p)));
    for (name, p) in &cases {
        let a = analysis(name, "modular");
        match ito_michler(&a, *p) {
            Ok(pair) => {
                for r in pair {
                    ensure(r.outcome == Outcome::Pass, &mut failures, || {
                        format!("{} {}: {:?}", r.claim, r.subject, r.verdict)
                    });
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    verdict(failures, "toric code, Ising, Z/2, Z/3, Z/5 at their primes".into())
}

/// Orbit decompositions and the square identity.
fn criterion_11() -> Outcome_ {
    let exponents = [Ratio::new(0, 1), Ratio::new(1, 2), Ratio::new(1, 1)];
    let mut failures = Vec::new();
    for (name, label) in [("ising", "sigma"), ("rep_s3", "V"), ("fibonacci", "tau")] {
        let a = analysis(name, "");
        for s in exponents {
            let r = orbit_sum_identities(&a, index(&a, label), s);
            let exact = r.checks.iter().all(|c| c.verdict == Verdict::Equality { result: Equality::Equal });
            ensure(r.outcome == Outcome::Pass && exact && !r.checks.is_empty(), &mut failures, || {
                format!("{}: {:?}", r.subject, r.verdict)
            });
        }
    }
    let mut count = 0;
    for doc in corpus() {
        let a = subject(&doc, "").analysis;
        for s in exponents {
            for x in 0..a.rank() {
                let r = Divisibility::new(&a, x, s).unwrap().square_identity();
                let exact = r.verdict == Verdict::Equality { result: Equality::Equal };
                ensure(exact, &mut failures, || format!("{}: {:?}", r.subject, r.verdict));
                count += 1;
            }
        }
    }
    verdict(failures, format!("orbit sums on 3 pairs, square identity on {count} cases"))
}

/// Integrality of `(p + q sqrt d) / r` by trace and norm in plain integers.
fn oracle(p: i64, q: i64, r: i64, d: i64) -> bool {
    if q == 0 {
        return p % r == 0;
    }
    let trace_ok = (2 * p) % r == 0;
    let norm_ok = (p * p - d * q * q) % (r * r) == 0;
    trace_ok && norm_ok
}

fn criterion_12() -> Outcome_ {
    let mut failures = Vec::new();
    let mut points = 0;
    for d in GRID_D {
        for p in GRID_P {
            for q in GRID_Q {
                for r in GRID_R {
                    let text = format!("({p} + ({q})*sqrt({d}))/{r}");
                    let v = is_algebraic_integer(&sc(&text), None);
                    let got = v.tier.is_integral();
                    let want = oracle(p, q, r, d);
                    ensure(got == Some(want), &mut failures, || format!("{text}: {:?}, oracle {want}", v.tier));
                    points += 1;
                }
            }
        }
    }
    for (text, tier) in [
        ("1/2", IntegralityTier::NotIntegral),
        ("(1 + sqrt(5))/2", IntegralityTier::IntegralExact),
        ("(5 - sqrt(5))/2", IntegralityTier::IntegralExact),
    ] {
        let got = is_algebraic_integer(&sc(text), None).tier;
        ensure(got == tier, &mut failures, || format!("{text}: {got:?}"));
    }
    failures.truncate(5);
    verdict(failures, format!("{points} grid points agree; 1/2, phi, (5-sqrt5)/2 as expected"))
}

/// Corrupted inputs must be caught.
fn criterion_13() -> Outcome_ {
    let mut failures = Vec::new();
    let mut doc = bundled("ising").unwrap();
    let (eps, sigma) = (1, 2);
    doc.fusion[sigma][sigma][eps] = 2;
    let ring = doc.unchecked_ring().unwrap();
    let violations = ring.validate();
    let assoc = violations.iter().any(|v| matches!(v, Violation::Associativity { .. }));
    ensure(assoc, &mut failures, || format!("no associativity violation in {violations:?}"));
    ensure(doc.ring().is_err(), &mut failures, || "corrupted ring accepted".into());

    let data = doc.modular_data().unwrap().expect("ising S-matrix");
    let v = verlinde_cross_check(&data, &ring).unwrap();
    let pinpointed: Vec<(usize, usize, usize)> = v.mismatches.iter().map(|m| (m.i, m.j, m.k)).collect();
    ensure(pinpointed == vec![(sigma, sigma, eps)], &mut failures, || format!("Verlinde mismatches {pinpointed:?}"));

    // FPdim(C) / (|U| dim sigma) with |U| = 2 and with |U| corrupted to 4
    let fp = Scalar::from(4);
    let dim = sc("sqrt(2)");
    let quotient = |u: i64| fp.div_ref(&Scalar::from(u)).unwrap().div_ref(&dim).unwrap();
    let honest = is_algebraic_integer(&quotient(2), None).tier;
    let corrupted = is_algebraic_integer(&quotient(4), None).tier;
    ensure(honest == IntegralityTier::IntegralExact, &mut failures, || format!("|U| = 2 gives {honest:?}"));
    ensure(corrupted == IntegralityTier::NotIntegral, &mut failures, || format!("|U| = 4 gives {corrupted:?}"));
    let square = quotient(4).mul_ref(&quotient(4));
    ensure(exactly(&square, &Scalar::from_ratio(1, 2).unwrap()), &mut failures, || format!("square {square}"));

    let mut fixture = fusionlab::TheoremReport::new(&fusionlab::report::claims::GRADING_ISAACS, "ising, X = sigma");
    fixture.quantity("FPdim(C) / (|U(C)| dim X)", quotient(4));
    fixture.set_verdict(Verdict::integrality(&is_algebraic_integer(&quotient(4), None)));
    ensure(fixture.outcome == Outcome::Fail, &mut failures, || format!("fixture outcome {:?}", fixture.outcome));
    verdict(failures, "associativity tripped, Verlinde names (sigma, sigma, eps), |U| = 4 gives NOT_INTEGRAL".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome_); 13] = [
        ("character-theory core", criterion_1),
        ("Rep(G) oracle", criterion_2),
        ("group-like characters", criterion_3),
        ("character class sizes", criterion_4),
        ("center size theorem", criterion_5),
        ("grading order divides center order", criterion_6),
        ("s-Isaacs", criterion_7),
        ("grading divisibility", criterion_8),
        ("modular divisibility", criterion_9),
        ("Ito-Michler", criterion_10),
        ("identity suite", criterion_11),
        ("integrality engine", criterion_12),
        ("negative controls", criterion_13),
    ];
    let mut out = String::new();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = with_precision(PRECISION, || std::panic::catch_unwind(run))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
        match result {
            Ok(detail) => writeln!(out, "PASS {:>2} {name}: {detail}", i + 1).unwrap(),
            Err(detail) => {
                failed += 1;
                writeln!(out, "FAIL {:>2} {name}: {detail}", i + 1).unwrap();
            }
        }
    }
    println!("acceptance at {PRECISION} bits, tolerance 2^-{TOLERANCE_BITS}");
    print!("{out}");
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
