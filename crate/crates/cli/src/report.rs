//! JSON report assembly with fixed key order and float formatting, CSV
//! eigenvalue tables and atomic file output.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Number, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    /// `"pass"` or `"fail"`
    pub status: &'static str,
    pub value: f64,
    pub tolerance: f64,
    /// Present for equality checks: pass iff `|value − expected| ≤ tolerance`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    pub invariant: String,
}

impl Check {
    /// Passes iff `value < tolerance` (NaN fails).
    pub fn below(value: f64, tolerance: f64, invariant: impl Into<String>) -> Self {
        Self {
            status: if value < tolerance { "pass" } else { "fail" },
            value,
            tolerance,
            expected: None,
            invariant: invariant.into(),
        }
    }

    pub fn equals(value: f64, expected: f64, invariant: impl Into<String>) -> Self {
        Self {
            status: if value == expected { "pass" } else { "fail" },
            value,
            tolerance: 0.0,
            expected: Some(expected),
            invariant: invariant.into(),
        }
    }

    pub fn holds(ok: bool, invariant: impl Into<String>) -> Self {
        Self::equals(if ok { 1.0 } else { 0.0 }, 1.0, invariant)
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

pub type Checks = BTreeMap<String, Check>;

#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub results: Map<String, Value>,
    pub checks: Checks,
    pub csv_rows: Option<Vec<CsvRow>>,
}

impl Outcome {
    pub fn result(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.results.insert(key.to_string(), v);
    }

    pub fn check(&mut self, key: impl Into<String>, check: Check) {
        self.checks.insert(key.into(), check);
    }

    /// Fold another outcome in under a key prefix.
    pub fn absorb(&mut self, prefix: &str, other: Outcome) {
        self.results
            .insert(prefix.to_string(), Value::Object(other.results));
        for (k, c) in other.checks {
            self.checks.insert(format!("{prefix}.{k}"), c);
        }
        if other.csv_rows.is_some() {
            self.csv_rows = other.csv_rows;
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.values().all(Check::passed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub index: usize,
    pub eigenvalue: f64,
    pub degeneracy: usize,
    pub sector: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: String,
    pub params: Value,
    pub results: Map<String, Value>,
    pub checks: Checks,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
    pub seed: u64,
}

/// Seventeen significant digits; non-finite values become `null`.
pub fn format_float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    Value::Number(
        text.parse::<Number>()
            .expect("scientific notation is a JSON number"),
    )
}

fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            n.as_f64().map(format_float).unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(normalize).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, normalize(v))).collect())
        }
        other => other,
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let value = normalize(serde_json::to_value(self).expect("report serializes"));
        let mut text = serde_json::to_string_pretty(&value).expect("value serializes");
        text.push('\n');
        text
    }
}

pub fn csv_text(rows: &[CsvRow]) -> String {
    let mut out = String::from("index,eigenvalue,degeneracy,sector\n");
    for r in rows {
        let sector = r.sector.map(|s| format!("{s:.16e}")).unwrap_or_default();
        out.push_str(&format!(
            "{},{:.16e},{},{}\n",
            r.index, r.eigenvalue, r.degeneracy, sector
        ));
    }
    out
}

/// Write via a temporary file in the target directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
