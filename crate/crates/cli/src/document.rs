//! Report documents and their text and JSON renderings.

use serde::Serialize;
use serde_json::{Map, Value};

use fusionlab::report::{Basis, Verdict};
use fusionlab::{Outcome, TheoremReport};

use crate::Format;

pub const TOOL: &str = "fusionlab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct InputInfo {
    pub name: String,
    /// `bundled` or the path as given.
    pub source: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub reports: usize,
    pub pass: usize,
    pub info: usize,
    pub fail: usize,
    pub indeterminate: usize,
    pub skipped: usize,
    /// Failed or undecided consistency checks outside the reports.
    pub data_failures: usize,
}

/// Exit status for a set of outcomes: refutations first, then
/// indeterminacy.
pub fn exit_code(outcomes: impl IntoIterator<Item = Outcome>) -> i32 {
    let mut code = 0;
    for o in outcomes {
        match o {
            Outcome::Fail => return 1,
            Outcome::Indeterminate => code = 2,
            _ => {}
        }
    }
    code
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input: InputInfo,
    pub precision: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    pub assumptions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension_character: Option<String>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub data: Map<String, Value>,
    pub reports: Vec<TheoremReport>,
    pub summary: Summary,
    pub exit_code: i32,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl ReportDocument {
    pub fn new(command: &str, input: InputInfo, precision: u32) -> Self {
        ReportDocument {
            tool: TOOL,
            version: VERSION,
            command: command.to_string(),
            input,
            precision,
            s: None,
            assumptions: Vec::new(),
            dimension_character: None,
            data: Map::new(),
            reports: Vec::new(),
            summary: Summary::default(),
            exit_code: 0,
            text: Vec::new(),
        }
    }

    pub fn put(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(key.to_string(), serde_json::to_value(value).expect("report data serializes"));
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.text.push(line.into());
    }

    /// Fills the summary and exit code; `data` holds outcomes of checks
    /// that are not theorem reports.
    pub fn finish(&mut self, data: &[Outcome]) {
        let count = |o: Outcome| self.reports.iter().filter(|r| r.outcome == o).count();
        self.summary = Summary {
            reports: self.reports.len(),
            pass: count(Outcome::Pass),
            info: count(Outcome::Info),
            fail: count(Outcome::Fail),
            indeterminate: count(Outcome::Indeterminate),
            skipped: count(Outcome::Skipped),
            data_failures: data.iter().filter(|o| matches!(o, Outcome::Fail | Outcome::Indeterminate)).count(),
        };
        self.exit_code = exit_code(self.reports.iter().map(|r| r.outcome).chain(data.iter().copied()));
    }

    pub fn render(&self, format: Format) -> (String, i32) {
        let text = match format {
            Format::Json => json(self),
            Format::Text => {
                let mut out = String::new();
                self.write_text(&mut out);
                out
            }
        };
        (text, self.exit_code)
    }

    fn write_text(&self, out: &mut String) {
        let mut push = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        push(format!("{} {} {}", self.tool, self.version, self.command));
        push(format!("input: {} ({}) sha256 {}", self.input.name, self.input.source, self.input.sha256));
        let mut setting = format!("precision: {} bits", self.precision);
        if let Some(s) = &self.s {
            setting.push_str(&format!(", s = {s}"));
        }
        if let Some(d) = &self.dimension_character {
            setting.push_str(&format!(", dimension character {d}"));
        }
        push(setting);
        if !self.assumptions.is_empty() {
            push(format!("assumptions: {}", self.assumptions.join(", ")));
        }
        if !self.text.is_empty() {
            push(String::new());
            for l in &self.text {
                push(l.clone());
            }
        }
        for r in &self.reports {
            push(String::new());
            for l in report_lines(r) {
                push(l);
            }
        }
        push(String::new());
        let s = &self.summary;
        let mut line = format!(
            "summary: {} reports, {} pass, {} fail, {} indeterminate, {} skipped, {} info",
            s.reports, s.pass, s.fail, s.indeterminate, s.skipped, s.info
        );
        if s.data_failures > 0 {
            line.push_str(&format!(", {} failed data checks", s.data_failures));
        }
        line.push_str(&format!("; exit {}", self.exit_code));
        push(line);
    }
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn basis(b: Basis) -> &'static str {
    match b {
        Basis::Verified => "verified",
        Basis::Refuted => "refuted",
        Basis::Undecided => "undecided",
        Basis::Asserted => "asserted",
        Basis::Missing => "missing",
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Integrality { tier, witness: Some(w) } => format!("{} (witness {w})", tier.as_str()),
        Verdict::Skipped { reason } => format!("SKIPPED ({reason})"),
        other => other.label().to_string(),
    }
}

pub fn report_lines(r: &TheoremReport) -> Vec<String> {
    let mut lines = vec![format!("[{}] {}: {}", r.outcome.as_str(), r.claim, r.subject), format!("  {}", r.title)];
    if !r.hypotheses.is_empty() {
        let hs: Vec<String> = r
            .hypotheses
            .iter()
            .map(|h| match &h.detail {
                Some(d) => format!("{} ({}; {d})", h.name, basis(h.basis)),
                None => format!("{} ({})", h.name, basis(h.basis)),
            })
            .collect();
        lines.push(format!("  hypotheses: {}", hs.join(", ")));
    }
    for q in &r.quantities {
        lines.push(format!("  {} = {}", q.name, q.value));
    }
    for c in &r.checks {
        lines.push(format!("  - {}: {}", c.label, verdict_text(&c.verdict)));
    }
    for n in &r.notes {
        lines.push(format!("  note: {n}"));
    }
    lines.push(format!("  verdict: {}", verdict_text(&r.verdict)));
    lines
}

/// Reports for every bundled ring.
#[derive(Clone, Debug, Serialize)]
pub struct CorpusDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub precision: u32,
    pub s: String,
    pub theorem: String,
    pub entries: Vec<ReportDocument>,
    pub summary: Summary,
    pub exit_code: i32,
}

impl CorpusDocument {
    pub fn new(precision: u32, s: String, theorem: String, entries: Vec<ReportDocument>) -> Self {
        let mut summary = Summary::default();
        for e in &entries {
            summary.reports += e.summary.reports;
            summary.pass += e.summary.pass;
            summary.info += e.summary.info;
            summary.fail += e.summary.fail;
            summary.indeterminate += e.summary.indeterminate;
            summary.skipped += e.summary.skipped;
            summary.data_failures += e.summary.data_failures;
        }
        let exit = entries.iter().map(|e| e.exit_code).fold(0, |acc, c| match (acc, c) {
            (1, _) | (_, 1) => 1,
            (3, _) | (_, 3) => 3,
            (2, _) | (_, 2) => 2,
            _ => 0,
        });
        CorpusDocument { tool: TOOL, version: VERSION, command: "corpus", precision, s, theorem, entries, summary, exit_code: exit }
    }

    pub fn render(&self, format: Format) -> (String, i32) {
        let text = match format {
            Format::Json => json(self),
            Format::Text => {
                let mut out = format!(
                    "{} {} corpus\nprecision: {} bits, s = {}, theorem {}\n",
                    self.tool, self.version, self.precision, self.s, self.theorem
                );
                for e in &self.entries {
                    out.push_str(&format!(
                        "\n== {} ({} reports, {} pass, {} fail, {} indeterminate, {} skipped, {} info; exit {})\n",
                        e.input.name,
                        e.summary.reports,
                        e.summary.pass,
                        e.summary.fail,
                        e.summary.indeterminate,
                        e.summary.skipped,
                        e.summary.info,
                        e.exit_code
                    ));
                    for l in &e.text {
                        out.push_str(l);
                        out.push('\n');
                    }
                    for r in &e.reports {
                        out.push_str(&format!("[{}] {}: {}", r.outcome.as_str(), r.claim, r.subject));
                        if let Verdict::Skipped { reason } = &r.verdict {
                            out.push_str(&format!(" ({reason})"));
                        } else {
                            out.push_str(&format!(" {}", r.verdict.label()));
                        }
                        out.push('\n');
                    }
                }
                let s = &self.summary;
                out.push_str(&format!(
                    "\nsummary: {} rings, {} reports, {} pass, {} fail, {} indeterminate, {} skipped, {} info; exit {}\n",
                    self.entries.len(),
                    s.reports,
                    s.pass,
                    s.fail,
                    s.indeterminate,
                    s.skipped,
                    s.info,
                    self.exit_code
                ));
                out
            }
        };
        (text, self.exit_code)
    }
}
