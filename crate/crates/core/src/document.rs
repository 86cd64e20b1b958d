//! The JSON ring document and the bundled corpus.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::modular::ModularData;
use crate::report::Assumptions;
use crate::ring::FusionRing;
use crate::scalar::{parse_scalar, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDocument {
    pub name: String,
    pub labels: Vec<String>,
    pub dual: Vec<usize>,
    /// `fusion[i][j][k] = N_ij^k`.
    pub fusion: Vec<Vec<Vec<u64>>>,
    /// Unnormalized S-matrix entries as scalar expressions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_matrix: Option<Vec<Vec<String>>>,
    /// Diagonal of T; stored, not used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_matrix: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assume: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

/// Reference values for golden tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fp_dims: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fp_dim: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universal_grading_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupFixture>,
}

/// Character table of the finite group `G` for a `Rep(G)` entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFixture {
    pub order: u64,
    pub center_order: u64,
    pub classes: Vec<ClassFixture>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassFixture {
    pub name: String,
    pub size: u64,
    /// `chi_i(g)` for each irreducible `chi_i`, in label order.
    pub values: Vec<String>,
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema { pointer: pointer.into(), message: message.into() }
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(n) if n.is_i64() && n.as_i64().is_some_and(|x| x < 0) => "a negative number",
        Value::Number(n) if n.is_u64() => "an integer",
        Value::Number(_) => "a non-integral number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn array<'v>(v: &'v Value, at: &str) -> Result<&'v Vec<Value>> {
    v.as_array().ok_or_else(|| schema(at, format!("expected an array, found {}", kind(v))))
}

fn natural(v: &Value, at: &str, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| schema(at, format!("expected {what}, found {}", kind(v))))
}

fn string(v: &Value, at: &str) -> Result<()> {
    v.as_str().map(|_| ()).ok_or_else(|| schema(at, format!("expected a string, found {}", kind(v))))
}

fn strings(v: &Value, at: &str, len: Option<usize>) -> Result<()> {
    let a = array(v, at)?;
    if let Some(n) = len {
        if a.len() != n {
            return Err(schema(at, format!("expected {n} entries, found {}", a.len())));
        }
    }
    a.iter().enumerate().try_for_each(|(i, e)| string(e, &format!("{at}/{i}")))
}

/// Shape checks that name the offending location before deserializing.
fn check_shape(v: &Value) -> Result<()> {
    let obj = v.as_object().ok_or_else(|| schema("", format!("expected an object, found {}", kind(v))))?;
    for key in obj.keys() {
        if !["name", "labels", "dual", "fusion", "s_matrix", "t_matrix", "assume", "expected"].contains(&key.as_str()) {
            return Err(schema(format!("/{key}"), "unknown field"));
        }
    }
    let field = |k: &str| obj.get(k).ok_or_else(|| schema(format!("/{k}"), "required field is missing"));
    string(field("name")?, "/name")?;
    let labels = array(field("labels")?, "/labels")?;
    let r = labels.len();
    if r == 0 {
        return Err(schema("/labels", "at least one label is required"));
    }
    strings(field("labels")?, "/labels", None)?;
    let dual = array(field("dual")?, "/dual")?;
    if dual.len() != r {
        return Err(schema("/dual", format!("expected {r} entries, found {}", dual.len())));
    }
    for (i, d) in dual.iter().enumerate() {
        let at = format!("/dual/{i}");
        if natural(d, &at, "a simple index")? >= r as u64 {
            return Err(schema(at, format!("index out of range for rank {r}")));
        }
    }
    let fusion = array(field("fusion")?, "/fusion")?;
    if fusion.len() != r {
        return Err(schema("/fusion", format!("expected {r} entries, found {}", fusion.len())));
    }
    for (i, plane) in fusion.iter().enumerate() {
        let at = format!("/fusion/{i}");
        let plane = array(plane, &at)?;
        if plane.len() != r {
            return Err(schema(at, format!("expected {r} entries, found {}", plane.len())));
        }
        for (j, row) in plane.iter().enumerate() {
            let at = format!("/fusion/{i}/{j}");
            let row = array(row, &at)?;
            if row.len() != r {
                return Err(schema(at, format!("expected {r} entries, found {}", row.len())));
            }
            for (k, m) in row.iter().enumerate() {
                natural(m, &format!("/fusion/{i}/{j}/{k}"), "a nonnegative integer multiplicity")?;
            }
        }
    }
    if let Some(s) = obj.get("s_matrix") {
        let rows = array(s, "/s_matrix")?;
        if rows.len() != r {
            return Err(schema("/s_matrix", format!("expected {r} rows, found {}", rows.len())));
        }
        for (i, row) in rows.iter().enumerate() {
            strings(row, &format!("/s_matrix/{i}"), Some(r))?;
        }
    }
    if let Some(t) = obj.get("t_matrix") {
        strings(t, "/t_matrix", Some(r))?;
    }
    if let Some(a) = obj.get("assume") {
        strings(a, "/assume", None)?;
    }
    if let Some(e) = obj.get("expected") {
        if !e.is_object() {
            return Err(schema("/expected", format!("expected an object, found {}", kind(e))));
        }
    }
    Ok(())
}

fn scalar_at(text: &str, at: String) -> Result<Scalar> {
    parse_scalar(text).map_err(|e| schema(at, e.to_string()))
}

impl RingDocument {
    pub fn from_json(text: &str) -> Result<RingDocument> {
        let value: Value = serde_json::from_str(text).map_err(|e| schema("", format!("not valid JSON: {e}")))?;
        check_shape(&value)?;
        serde_json::from_value(value).map_err(|e| schema("", e.to_string()))
    }

    /// Pretty JSON with a fixed field order.
    pub fn to_canonical_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("ring documents serialize");
        out.push('\n');
        out
    }

    /// The fusion ring, rejected with axiom witnesses if it fails validation.
    pub fn ring(&self) -> Result<FusionRing> {
        let ring = self.unchecked_ring()?;
        let violations = ring.validate();
        if let Some(v) = violations.first() {
            let more = if violations.len() > 1 { format!(" (and {} more)", violations.len() - 1) } else { String::new() };
            return Err(Error::Invalid(format!("{}{more}", v.describe(&ring))));
        }
        if !ring.is_commutative() {
            return Err(Error::NonCommutative);
        }
        Ok(ring)
    }

    /// The fusion ring without axiom validation.
    pub fn unchecked_ring(&self) -> Result<FusionRing> {
        FusionRing::new(self.labels.clone(), self.dual.clone(), self.fusion.clone())
    }

    pub fn modular_data(&self) -> Result<Option<ModularData>> {
        let Some(rows) = &self.s_matrix else { return Ok(None) };
        let s = rows
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, e)| scalar_at(e, format!("/s_matrix/{i}/{j}"))).collect())
            .collect::<Result<Vec<Vec<Scalar>>>>()?;
        let t = match &self.t_matrix {
            Some(t) => Some(t.iter().enumerate().map(|(i, e)| scalar_at(e, format!("/t_matrix/{i}"))).collect::<Result<_>>()?),
            None => None,
        };
        ModularData::new(s, t).map(Some)
    }

    pub fn assumptions(&self) -> Result<Assumptions> {
        let mut flags = Vec::new();
        for (i, f) in self.assume.iter().enumerate() {
            flags.push(f.parse().map_err(|_| schema(format!("/assume/{i}"), format!("unknown flag '{f}'")))?);
        }
        Ok(Assumptions::new(flags))
    }

    pub fn expected_fp_dims(&self) -> Result<Option<Vec<Scalar>>> {
        let Some(dims) = self.expected.as_ref().and_then(|e| e.fp_dims.as_ref()) else { return Ok(None) };
        dims.iter().enumerate().map(|(i, d)| scalar_at(d, format!("/expected/fp_dims/{i}"))).collect::<Result<_>>().map(Some)
    }

    pub fn expected_fp_dim(&self) -> Result<Option<Scalar>> {
        match self.expected.as_ref().and_then(|e| e.fp_dim.as_ref()) {
            Some(d) => scalar_at(d, "/expected/fp_dim".into()).map(Some),
            None => Ok(None),
        }
    }
}

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        /// Bundled documents as `(name, json)`, in name order.
        pub const CORPUS: &[(&str, &str)] = &[$(($name, include_str!(concat!("../corpus/", $name, ".json")))),*];
    };
}

bundled!(
    "fibonacci",
    "ising",
    "ising_x_z2",
    "pointed_z1",
    "pointed_z2",
    "pointed_z3",
    "pointed_z4",
    "pointed_z5",
    "pointed_z6",
    "rep_a4",
    "rep_d4",
    "rep_q8",
    "rep_s3",
    "toric_code",
);

/// A bundled document by name, with or without the `.json` suffix.
pub fn bundled(name: &str) -> Option<RingDocument> {
    let stem = name.strip_suffix(".json").unwrap_or(name);
    CORPUS
        .iter()
        .find(|(n, _)| *n == stem)
        .map(|(_, text)| RingDocument::from_json(text).expect("bundled documents are well formed"))
}

pub fn corpus() -> Vec<RingDocument> {
    CORPUS.iter().map(|(_, text)| RingDocument::from_json(text).expect("bundled documents are well formed")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_loads_and_round_trips() {
        for doc in corpus() {
            let ring = doc.ring().unwrap();
            assert_eq!(ring.rank(), doc.labels.len());
            doc.assumptions().unwrap();
            let canon = doc.to_canonical_json();
            let again = RingDocument::from_json(&canon).unwrap();
            assert_eq!(again, doc);
            assert_eq!(again.to_canonical_json(), canon);
        }
        assert!(bundled("fibonacci.json").unwrap().modular_data().unwrap().is_some());
        assert!(bundled("rep_s3").unwrap().modular_data().unwrap().is_none());
        assert!(bundled("nope").is_none());
    }

    #[test]
    fn schema_errors_point_at_the_offender() {
        let doc = r#"{"name":"z2","labels":["1","g"],"dual":[0,1],"fusion":[[[1,0],[0,1]],[[0,1],[1,-1]]]}"#;
        match RingDocument::from_json(doc) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/fusion/1/1/1"),
            other => panic!("{other:?}"),
        }
        let doc = r#"{"name":"z2","labels":["1","g"],"dual":[0,2],"fusion":[]}"#;
        assert!(matches!(RingDocument::from_json(doc), Err(Error::Schema { pointer, .. }) if pointer == "/dual/1"));
        let doc = r#"{"name":"z2","labels":["1","g"],"dual":[0,1],"fusion":[[[1,0],[0,1]],[[0,1],[1,0]]],"colour":1}"#;
        assert!(matches!(RingDocument::from_json(doc), Err(Error::Schema { pointer, .. }) if pointer == "/colour"));
        let doc = r#"{"name":"z2","labels":["1","g"],"dual":[0,1],"fusion":[[[1,0],[0,1]],[[0,1],[1,0]]],
                      "s_matrix":[["1","1"],["1","-(1"]]}"#;
        let d = RingDocument::from_json(doc).unwrap();
        assert!(matches!(d.modular_data(), Err(Error::Schema { pointer, .. }) if pointer == "/s_matrix/1/1"));
    }

    #[test]
    fn corrupted_ring_is_rejected() {
        let mut doc = bundled("ising").unwrap();
        doc.fusion[2][2][1] = 2;
        assert!(matches!(doc.ring(), Err(Error::Invalid(_))));
    }
}
