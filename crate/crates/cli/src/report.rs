//! The report model and its two renderings.
//!
//! Reports carry no wall-clock data, so equal requests with equal seeds
//! serialize to identical bytes.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Completed,
    Rejected,
    InputError,
    OracleDisagreement,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Completed => 0,
            Status::Rejected => 2,
            Status::InputError => 3,
            Status::OracleDisagreement => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Real,
    Computed,
    Verified,
    ExactFlat,
    NumericallyFlat,
    NotFlat,
    Contained,
    NotContained,
    Pencil,
    NoPencil,
    Invariant,
    NotInvariant,
    WebTangent,
    NotWebTangent,
    Symmetric,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Tier {
    Exact,
    Numeric,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    pub stage: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tier: Option<Tier>,
    pub evidence: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub stage: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedText {
    pub name: String,
    pub text: String,
}

/// The request as it was run: roster, pairing block and every input in
/// canonical text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Echo {
    pub variables: Vec<String>,
    pub conjugate_pairs: Vec<[String; 2]>,
    pub real_pairs: Vec<[String; 2]>,
    pub polynomials: Vec<NamedText>,
    pub points: Vec<NamedText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub generator: String,
    pub samples: usize,
    pub tol: String,
    pub truncation: Option<usize>,
    /// Coordinate changes used by intersection computations, in order.
    pub shears: Vec<Vec<Vec<String>>>,
    /// Truncation orders used by branch expansions, in order.
    pub truncations: Vec<usize>,
    /// Random real lines drawn while sampling hypersurfaces.
    pub sample_lines: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub command: String,
    pub status: Status,
    pub echo: Echo,
    pub stages: Vec<Stage>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    pub provenance: Provenance,
}

impl Report {
    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.stage == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Serializes one report. JSON output is pretty-printed with a trailing
/// newline; text output is a stable line-oriented rendering.
pub fn emit_report(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => render_text(report).into_bytes(),
    }
}

/// Serializes a batch: a JSON array, or text blocks separated by blank lines.
pub fn emit_batch(reports: &[Report], format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => reports.iter().map(render_text).collect::<Vec<_>>().join("\n").into_bytes(),
    }
}

fn upper<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

fn render_value(out: &mut String, indent: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, x) in map {
                render_value(out, indent + 1, k, x);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (i, x) in items.iter().enumerate() {
                render_value(out, indent + 1, &format!("[{i}]"), x);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            out.push_str(&format!("{pad}{key}: [{}]\n", parts.join(", ")));
        }
        _ => out.push_str(&format!("{pad}{key}: {}\n", scalar_text(v))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let title = r.name.as_deref().map(|n| format!(" ({n})")).unwrap_or_default();
    out.push_str(&format!("{}{}: {}\n", r.command, title, upper(&r.status)));
    for s in &r.stages {
        let tier = s.tier.map(|t| format!(" [{}]", upper(&t))).unwrap_or_default();
        out.push_str(&format!("- {}: {}{}\n", s.stage, upper(&s.verdict), tier));
        if let Value::Object(map) = &s.evidence {
            for (k, v) in map {
                render_value(&mut out, 2, k, v);
            }
        }
    }
    if let Some(f) = &r.failure {
        out.push_str(&format!("failure at {}: {}\n", f.stage, f.message));
    }
    let p = &r.provenance;
    out.push_str(&format!(
        "provenance: seed {} ({}), samples {}, tol {}, truncation {}, sample lines {}\n",
        p.seed,
        p.generator,
        p.samples,
        p.tol,
        p.truncation.map_or("default".to_string(), |t| t.to_string()),
        p.sample_lines
    ));
    for (i, s) in p.shears.iter().enumerate() {
        let rows: Vec<String> = s.iter().map(|row| format!("[{}]", row.join(", "))).collect();
        out.push_str(&format!("  shear {i}: {}\n", rows.join(" ")));
    }
    if !p.truncations.is_empty() {
        let t: Vec<String> = p.truncations.iter().map(usize::to_string).collect();
        out.push_str(&format!("  truncations: {}\n", t.join(", ")));
    }
    out
}
