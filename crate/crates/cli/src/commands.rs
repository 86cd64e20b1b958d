//! The subcommands. Each builds a report document; nothing here prints.

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use fusionlab::chars::{verify_orthogonality, weakly_integral_check};
use fusionlab::document::{bundled, CORPUS};
use fusionlab::dual::{star_axioms, star_orbits};
use fusionlab::isaacs::parse_exponent;
use fusionlab::lattice::{
    adjoint_subring, all_subrings, character_classes, fp_dim_of, perp_report, pointed_subring,
};
use fusionlab::modular::{characters_from_s, class_dims_modular, verlinde_cross_check};
use fusionlab::report::claims;
use fusionlab::scalar::with_precision;
use fusionlab::suite::{run, select_claims};
use fusionlab::{
    Analysis, Assumptions, Equality, Error, Exponent, FusionRing, IdentityCheck, Outcome, Request, RingDocument,
    Scalar, Subject,
};

use crate::document::{CorpusDocument, InputInfo, ReportDocument};
use crate::Input;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Indeterminate(_) | Error::IndeterminateDivision | Error::Separation(_) => 2,
            Error::Inconsistent(_) => 1,
            _ => 3,
        };
        CliError { code, message: e.to_string() }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn equality_outcome(e: Equality) -> Outcome {
    match e.holds() {
        Some(true) => Outcome::Pass,
        Some(false) => Outcome::Fail,
        None => Outcome::Indeterminate,
    }
}

fn holds_outcome(h: bool) -> Outcome {
    if h {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn identity_line(name: &str, c: &IdentityCheck) -> String {
    let mut s = format!("{name}: {}", c.verdict.label());
    if c.max_deviation > 0.0 {
        s.push_str(&format!(" (max deviation {:.3e})", c.max_deviation));
    }
    for f in c.failures.iter().take(5) {
        s.push_str(&format!("\n  {f}"));
    }
    s
}

trait Label {
    fn label(&self) -> &'static str;
}

impl Label for Equality {
    fn label(&self) -> &'static str {
        match self {
            Equality::Equal => "EQUAL",
            Equality::WithinRadius => "WITHIN_RADIUS",
            Equality::Distinct => "DISTINCT",
            Equality::Indeterminate => "INDETERMINATE",
        }
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

struct Loaded {
    info: InputInfo,
    doc: RingDocument,
}

fn load(input: &str) -> Result<Loaded> {
    let path = Path::new(input);
    if path.is_file() {
        let bytes = std::fs::read(path).map_err(|e| CliError::usage(format!("cannot read {input}: {e}")))?;
        let text = std::str::from_utf8(&bytes).map_err(|_| CliError::usage(format!("{input} is not UTF-8")))?;
        let doc = RingDocument::from_json(text)?;
        let info = InputInfo { name: doc.name.clone(), source: input.to_string(), sha256: sha256_hex(&bytes) };
        return Ok(Loaded { info, doc });
    }
    let stem = input.strip_suffix(".json").unwrap_or(input);
    match CORPUS.iter().find(|(n, _)| *n == stem) {
        Some((name, text)) => {
            let doc = bundled(name).expect("bundled documents are well formed");
            let info = InputInfo { name: doc.name.clone(), source: "bundled".into(), sha256: sha256_hex(text.as_bytes()) };
            Ok(Loaded { info, doc })
        }
        None => {
            let names: Vec<&str> = CORPUS.iter().map(|(n, _)| *n).collect();
            Err(CliError::usage(format!("no file or bundled ring named '{input}'; bundled: {}", names.join(", "))))
        }
    }
}

/// Simples named by labels or indices, comma separated.
fn resolve(ring: &FusionRing, list: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i = match ring.index_of(part) {
            Some(i) => i,
            None => match part.parse::<usize>() {
                Ok(i) if i < ring.rank() => i,
                _ => return Err(CliError::usage(format!("no simple object '{part}'"))),
            },
        };
        if !out.contains(&i) {
            out.push(i);
        }
    }
    if out.is_empty() {
        return Err(CliError::usage("empty list of simple objects"));
    }
    Ok(out)
}

fn labels(a: &Analysis, set: &[usize]) -> Vec<String> {
    set.iter().map(|&i| a.label(i).to_string()).collect()
}

fn characters(set: &[usize]) -> Vec<String> {
    set.iter().map(|j| format!("mu_{j}")).collect()
}

fn render(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::render).collect()
}

pub struct Context {
    precision: u32,
    extra: Assumptions,
}

impl Context {
    pub fn new(precision: u32, assume: &[String]) -> Result<Self> {
        let extra = Assumptions::parse_list(&assume.join(","))?;
        Ok(Context { precision, extra })
    }

    fn within<T>(&self, f: impl FnOnce() -> Result<T>) -> Result<T> {
        with_precision(self.precision, f)
    }

    fn subject(&self, loaded: &Loaded, dimension: Option<usize>) -> Result<Subject> {
        Ok(Subject::from_document(&loaded.doc, &self.extra, dimension)?)
    }

    fn document(&self, command: &str, loaded: &Loaded, subject: Option<&Subject>) -> ReportDocument {
        let mut doc = ReportDocument::new(command, loaded.info.clone(), self.precision);
        let flags = match subject {
            Some(s) => s.analysis.assumptions().clone(),
            None => loaded.doc.assumptions().unwrap_or_default().union(&self.extra),
        };
        doc.assumptions = flags.asserted().map(|f| f.to_string()).collect();
        if let Some(s) = subject {
            doc.dimension_character = Some(s.analysis.dimension_character());
        }
        doc
    }

    pub fn validate(&self, input: &str) -> Result<ReportDocument> {
        self.within(|| {
            let loaded = load(input)?;
            let mut doc = self.document("validate", &loaded, None);
            let ring = loaded.doc.unchecked_ring()?;
            let mut problems: Vec<String> = ring.validate().iter().map(|v| v.describe(&ring)).collect();
            doc.put("violations", ring.validate());
            if problems.is_empty() && !ring.is_commutative() {
                problems.push("fusion ring is not commutative".into());
            }
            if let Err(e) = loaded.doc.assumptions() {
                problems.push(e.to_string());
            }
            if problems.is_empty() {
                match ring.fp_dims() {
                    Ok(fp) => {
                        doc.put("fp_dims", render(&fp.dims));
                        doc.put("fp_dim", fp.global.render());
                        doc.line(format!("FPdims: {}", render(&fp.dims).join(", ")));
                        doc.line(format!("FPdim(C) = {}", fp.global));
                        if let Some(expected) = loaded.doc.expected_fp_dims()? {
                            for (i, (got, want)) in fp.dims.iter().zip(&expected).enumerate() {
                                if got.compare_eq(want).holds() != Some(true) {
                                    problems.push(format!("FPdim({}) = {got}, expected {want}", ring.label(i)));
                                }
                            }
                        }
                        if let Some(want) = loaded.doc.expected_fp_dim()? {
                            if fp.global.compare_eq(&want).holds() != Some(true) {
                                problems.push(format!("FPdim(C) = {}, expected {want}", fp.global));
                            }
                        }
                    }
                    Err(e) => problems.push(e.to_string()),
                }
            }
            if loaded.doc.s_matrix.is_some() {
                match loaded.doc.modular_data() {
                    Ok(Some(data)) => {
                        let v = verlinde_cross_check(&data, &ring)?;
                        doc.line(format!("Verlinde reconstruction: {}", v.verdict.label()));
                        for m in &v.mismatches {
                            problems.push(format!(
                                "Verlinde formula gives N[{}][{}][{}] = {}, ring has {}",
                                ring.label(m.i),
                                ring.label(m.j),
                                ring.label(m.k),
                                m.reconstructed,
                                m.expected
                            ));
                        }
                        doc.put("verlinde", &v);
                    }
                    Ok(_) => {}
                    Err(e) => problems.push(e.to_string()),
                }
            }
            doc.line(format!("rank {}, labels {}", ring.rank(), ring.labels().join(", ")));
            if ring.was_relabeled() {
                doc.line(format!("unit moved to index 0; original indices {:?}", ring.original_index()));
            }
            if problems.is_empty() {
                doc.line("valid");
            } else {
                for p in &problems {
                    doc.line(format!("violation: {p}"));
                }
            }
            doc.put("problems", &problems);
            let outcome = if problems.is_empty() { Outcome::Pass } else { Outcome::Fail };
            doc.finish(&[outcome]);
            Ok(doc)
        })
    }

    pub fn chartable(&self, input: &Input) -> Result<ReportDocument> {
        self.within(|| {
            let loaded = load(&input.input)?;
            let subject = self.subject(&loaded, input.dimension)?;
            let a = &subject.analysis;
            let t = a.table();
            let mut doc = self.document("chartable", &loaded, Some(&subject));
            let rows: Vec<Vec<String>> = t.rows().iter().map(|r| render(r)).collect();
            let dims: Vec<Scalar> = (0..a.rank()).map(|x| a.dim(x).clone()).collect();
            let class_dims: Vec<Scalar> = (0..a.rank()).map(|j| a.class_dim(j).clone()).collect();
            let ortho = verify_orthogonality(t, a.spherical())?;
            let weak = weakly_integral_check(t)?;
            doc.put("labels", a.ring().labels());
            doc.put("fp_dims", render(t.fp_dims()));
            doc.put("fp_dim", t.fp_dim_global().render());
            doc.put("dims", render(&dims));
            doc.put("dim", a.dim_c().render());
            doc.put("characters", &rows);
            doc.put("codegrees", render(t.codegrees()));
            doc.put("class_dims", render(&class_dims));
            doc.put("involution", (0..t.rank()).map(|j| t.involution(j)).collect::<Vec<_>>());
            doc.put("exact", t.is_exact());
            doc.put("orthogonality", &ortho);
            doc.put("weakly_integral", weak.weakly_integral);

            doc.line(format!("simples: {}", a.ring().labels().join(", ")));
            doc.line(format!("FPdim: {}; FPdim(C) = {}", render(t.fp_dims()).join(", "), t.fp_dim_global()));
            doc.line(format!("dim: {}; dim C = {}", render(&dims).join(", "), a.dim_c()));
            for (j, row) in rows.iter().enumerate() {
                doc.line(format!(
                    "mu_{j}: ({})  n = {}  dim(C^{j}) = {}  conjugate mu_{}",
                    row.join(", "),
                    t.codegree(j),
                    a.class_dim(j),
                    t.involution(j)
                ));
            }
            doc.line(identity_line("first orthogonality", &ortho.first));
            doc.line(identity_line("second orthogonality", &ortho.second));
            doc.line(identity_line("sum of 1/n_j = 1", &ortho.inverse_codegrees));
            doc.line(format!("weakly integral: {}", weak.weakly_integral));
            doc.finish(&[equality_outcome(ortho.verdict()), equality_outcome(a.order_check().verdict)]);
            Ok(doc)
        })
    }

    pub fn dual(&self, input: &Input) -> Result<ReportDocument> {
        #[derive(Serialize)]
        struct Coefficient {
            k: usize,
            i: usize,
            j: usize,
            value: Scalar,
        }
        self.within(|| {
            let loaded = load(&input.input)?;
            let subject = self.subject(&loaded, input.dimension)?;
            let a = &subject.analysis;
            let d = a.dual();
            let g = a.group();
            let mut doc = self.document("dual", &loaded, Some(&subject));
            let r = a.rank();
            let mut coefficients = Vec::new();
            for i in 0..r {
                for j in i..r {
                    for k in 0..r {
                        let v = d.coefficient(k, i, j);
                        if v.is_nonzero() {
                            coefficients.push(Coefficient { k, i, j, value: v.clone() });
                        }
                    }
                }
            }
            let axioms = star_axioms(d);
            let orbits = star_orbits(a.table(), d, g, None)?;
            let products: Vec<Vec<usize>> =
                g.members().iter().map(|&x| g.members().iter().map(|&y| g.product(x, y)).collect()).collect();
            doc.put("coefficients", &coefficients);
            doc.put("rn", d.rn());
            doc.put("rn_violations", d.rn_violations());
            doc.put("group_likes", g.members());
            doc.put("group_products", &products);
            doc.put("star_axioms", &axioms);
            doc.put("reconstruction", d.reconstruction());
            doc.put("orders", d.order_check());
            doc.put("orbits", &orbits.orbits);

            doc.line("nonzero p_k(i, j) for i <= j:");
            for c in &coefficients {
                doc.line(format!("  p_{}(mu_{}, mu_{}) = {}", c.k, c.i, c.j, c.value));
            }
            doc.line(format!(
                "RN: {}",
                match d.rn() {
                    Some(true) => "yes".to_string(),
                    Some(false) => format!("no, negative or non-real at {:?}", d.rn_violations()),
                    None => "undecided".to_string(),
                }
            ));
            doc.line(format!("group-like characters: {} (|U(C)| = {})", characters(g.members()).join(", "), g.order()));
            for (x, row) in g.members().iter().zip(&products) {
                doc.line(format!("  mu_{x} * [{}]", characters(row).join(", ")));
            }
            doc.line(format!(
                "orbits of the group-likes: {}",
                orbits.orbits.iter().map(|o| format!("{{{}}}", characters(o).join(", "))).collect::<Vec<_>>().join(" ")
            ));
            doc.line(identity_line("hypergroup axioms", &axioms));
            doc.line(identity_line("product reconstruction", d.reconstruction()));
            doc.line(identity_line("orders from codegrees and from p_0", d.order_check()));
            doc.finish(&[
                equality_outcome(axioms.verdict),
                equality_outcome(d.reconstruction().verdict),
                equality_outcome(d.order_check().verdict),
            ]);
            Ok(doc)
        })
    }

    pub fn subcat(&self, input: &Input) -> Result<ReportDocument> {
        #[derive(Serialize)]
        struct SubringEntry {
            members: Vec<String>,
            fp_dim: Scalar,
            perp: Vec<usize>,
            perp_identity: Equality,
            biduality: bool,
        }
        #[derive(Serialize)]
        struct ObjectEntry {
            object: String,
            generated: Vec<String>,
            faithful: bool,
            kernel: Vec<usize>,
            center: Vec<usize>,
        }
        self.within(|| {
            let loaded = load(&input.input)?;
            let subject = self.subject(&loaded, input.dimension)?;
            let a = &subject.analysis;
            let mut doc = self.document("subcat", &loaded, Some(&subject));
            let mut outcomes = Vec::new();
            let mut subrings = Vec::new();
            doc.line("fusion subrings:");
            for s in all_subrings(a.ring()) {
                let p = perp_report(a, &s)?;
                outcomes.push(equality_outcome(p.dimension_identity.verdict));
                outcomes.push(holds_outcome(p.biduality));
                let entry = SubringEntry {
                    members: labels(a, &s),
                    fp_dim: fp_dim_of(a.table(), &s),
                    perp: p.perp.clone(),
                    perp_identity: p.dimension_identity.verdict,
                    biduality: p.biduality,
                };
                doc.line(format!(
                    "  {{{}}}  FPdim {}  perp {{{}}}  FPdim(D) n(D^perp) = FPdim(C): {}  biduality: {}",
                    entry.members.join(", "),
                    entry.fp_dim,
                    characters(&entry.perp).join(", "),
                    entry.perp_identity.label(),
                    entry.biduality
                ));
                subrings.push(entry);
            }
            let all: Vec<usize> = (0..a.rank()).collect();
            let adjoint = adjoint_subring(a.ring(), &all)?;
            let pointed = pointed_subring(a.ring())?;
            doc.line(format!("adjoint subring: {{{}}}", labels(a, adjoint.members()).join(", ")));
            doc.line(format!("pointed subring: {{{}}}", labels(a, pointed.members()).join(", ")));
            let mut objects = Vec::new();
            doc.line("per simple:");
            for x in 0..a.rank() {
                let generated = a.generated(&[x]);
                let e = ObjectEntry {
                    object: a.label(x).to_string(),
                    generated: labels(a, &generated),
                    faithful: generated.len() == a.rank(),
                    kernel: a.kernel(x)?,
                    center: a.center(x)?,
                };
                doc.line(format!(
                    "  {}: <X> = {{{}}}{}  ker = {{{}}}  Z = {{{}}}",
                    e.object,
                    e.generated.join(", "),
                    if e.faithful { " (faithful)" } else { "" },
                    characters(&e.kernel).join(", "),
                    characters(&e.center).join(", ")
                ));
                objects.push(e);
            }
            doc.put("subrings", &subrings);
            doc.put("adjoint", labels(a, adjoint.members()));
            doc.put("pointed", labels(a, pointed.members()));
            doc.put("objects", &objects);
            doc.finish(&outcomes);
            Ok(doc)
        })
    }

    pub fn classes(&self, input: &Input, subring: Option<&str>, generator: Option<&str>) -> Result<ReportDocument> {
        self.within(|| {
            let loaded = load(&input.input)?;
            let subject = self.subject(&loaded, input.dimension)?;
            let a = &subject.analysis;
            let mut doc = self.document("classes", &loaded, Some(&subject));
            let members = subring.map(|s| resolve(a.ring(), s)).transpose()?.map(|mut m| {
                m.sort_unstable();
                m
            });
            let objects = generator.map(|g| resolve(a.ring(), g)).transpose()?;
            let req = Request { claims: vec![&claims::CLASS_SIZES], objects, s: Exponent::new(1, 2), subring: members.clone() };
            doc.reports = run(&subject, &req)?;
            if let Some(m) = &members {
                let p = character_classes(a, m)?;
                doc.line(format!("D = {{{}}}, dim D = {}", labels(a, m).join(", "), p.dim_sub));
                for (b, block) in p.blocks.iter().enumerate() {
                    doc.line(format!(
                        "  {{{}}} over D-character {}: dim(D^t) = {}, n_dim = {}, n = {}",
                        characters(block).join(", "),
                        p.restrictions[b],
                        p.restriction_dims[b],
                        p.n_dim[b],
                        p.n[b]
                    ));
                }
                doc.put("partition", &p);
            }
            doc.finish(&[]);
            Ok(doc)
        })
    }

    pub fn isaacs(&self, input: &Input, s: &str, subring: Option<&str>) -> Result<ReportDocument> {
        let s = parse_exponent(s)?;
        self.within(|| {
            let loaded = load(&input.input)?;
            let subject = self.subject(&loaded, input.dimension)?;
            let a = &subject.analysis;
            let mut doc = self.document("isaacs", &loaded, Some(&subject));
            doc.s = Some(s.to_string());
            let members = subring.map(|m| resolve(a.ring(), m)).transpose()?.map(|mut m| {
                m.sort_unstable();
                m
            });
            let req = Request { claims: vec![&claims::S_ISAACS, &claims::FROBENIUS_TYPE], objects: None, s, subring: members };
            doc.reports = run(&subject, &req)?;
            doc.finish(&[]);
            Ok(doc)
        })
    }

    fn check_loaded(
        &self,
        loaded: &Loaded,
        dimension: Option<usize>,
        theorem: &str,
        s: Exponent,
        generator: Option<&str>,
        subring: Option<&str>,
    ) -> Result<ReportDocument> {
        let subject = self.subject(loaded, dimension)?;
        let a = &subject.analysis;
        let mut doc = self.document("check", loaded, Some(&subject));
        doc.s = Some(s.to_string());
        let members = subring.map(|m| resolve(a.ring(), m)).transpose()?.map(|mut m| {
            m.sort_unstable();
            m
        });
        let objects = generator.map(|g| resolve(a.ring(), g)).transpose()?;
        let req = Request { claims: select_claims(Some(theorem))?, objects, s, subring: members };
        doc.reports = run(&subject, &req)?;
        doc.finish(&[]);
        Ok(doc)
    }

    pub fn check(
        &self,
        input: &Input,
        theorem: &str,
        s: &str,
        generator: Option<&str>,
        subring: Option<&str>,
    ) -> Result<ReportDocument> {
        let s = parse_exponent(s)?;
        select_claims(Some(theorem))?;
        self.within(|| {
            let loaded = load(&input.input)?;
            self.check_loaded(&loaded, input.dimension, theorem, s, generator, subring)
        })
    }

    pub fn modular(&self, input: &Input, generator: Option<&str>) -> Result<ReportDocument> {
        self.within(|| {
            let loaded = load(&input.input)?;
            let subject = self.subject(&loaded, input.dimension)?;
            let a = &subject.analysis;
            let Some((data, _)) = &subject.modular else {
                return Err(CliError::usage(format!("{} has no S-matrix", loaded.info.name)));
            };
            let mut doc = self.document("modular", &loaded, Some(&subject));
            let chars = characters_from_s(data, Some(a.ring()))?;
            let class_dims = class_dims_modular(data, &chars.table)?;
            let verlinde = verlinde_cross_check(data, a.ring())?;
            let rows: Vec<Vec<String>> = chars.table.rows().iter().map(|r| render(r)).collect();
            doc.put("dims", render(data.dims()));
            doc.put("dim", data.dim_c().render());
            doc.put("characters", &rows);
            doc.put("to_ring_table", &chars.to_ring_table);
            doc.put("class_dims", render(&class_dims));
            doc.put("verlinde", &verlinde);
            doc.line(format!("dims from S: {}; dim C = {}", render(data.dims()).join(", "), data.dim_c()));
            for (i, row) in rows.iter().enumerate() {
                let matched = chars.to_ring_table.as_ref().map(|m| format!(" = mu_{} of the ring", m[i])).unwrap_or_default();
                doc.line(format!("character of {}: ({}){matched}, dim(C^i) = {}", a.label(i), row.join(", "), class_dims[i]));
            }
            doc.line(format!("Verlinde reconstruction: {}", verlinde.verdict.label()));
            for m in &verlinde.mismatches {
                doc.line(format!(
                    "  mismatch at ({}, {}, {}): formula gives {}, ring has {}",
                    a.label(m.i),
                    a.label(m.j),
                    a.label(m.k),
                    m.reconstructed,
                    m.expected
                ));
            }
            let objects = generator.map(|g| resolve(a.ring(), g)).transpose()?;
            let req = Request { claims: vec![&claims::MODULAR_SQUARE], objects, s: Exponent::new(1, 2), subring: None };
            doc.reports = run(&subject, &req)?;
            doc.finish(&[equality_outcome(verlinde.verdict)]);
            Ok(doc)
        })
    }

    pub fn corpus(&self, theorem: &str, s: &str) -> Result<CorpusDocument> {
        let exponent = parse_exponent(s)?;
        select_claims(Some(theorem))?;
        let entries: Vec<ReportDocument> = CORPUS
            .par_iter()
            .map(|(name, _)| {
                self.within(|| {
                    let loaded = load(name)?;
                    match self.check_loaded(&loaded, None, theorem, exponent, None, None) {
                        Ok(doc) => Ok(doc),
                        Err(e) => {
                            let mut doc = self.document("check", &loaded, None);
                            doc.line(format!("error: {}", e.message));
                            doc.put("error", &e.message);
                            doc.exit_code = e.code;
                            Ok(doc)
                        }
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut entries = entries;
        entries.sort_by(|x, y| x.input.name.cmp(&y.input.name));
        Ok(CorpusDocument::new(self.precision, exponent.to_string(), theorem.to_string(), entries))
    }
}
