//! Report files, embedded checks and the error-to-exit-status mapping.

use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("numerical non-convergence: {message}")]
    NonConvergence { message: String, diagnostics: Value },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl From<kgwave::Error> for CliError {
    fn from(e: kgwave::Error) -> Self {
        match e {
            kgwave::Error::GrowingEnvelope { .. } | kgwave::Error::NoArrival { .. } => Self::NonConvergence {
                message: e.to_string(),
                diagnostics: json!({ "error": e.to_string() }),
            },
            _ => Self::Precondition(e.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Precondition(_) | Self::Io(_) => 2,
            Self::NonConvergence { .. } => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Embedded assertion; any failure makes the run exit with status 1.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

/// Everything a command produced; nothing touches the disk until the
/// command has finished.
#[derive(Debug, Default)]
pub struct Run {
    pub files: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl Run {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn write(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        for (name, contents) in &self.files {
            std::fs::write(dir.join(name), contents)?;
        }
        Ok(())
    }
}

/// Round-trip formatting: 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

pub struct Table {
    /// Optional leading text column; when non-empty `columns` names it first.
    pub labels: Vec<String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

pub fn csv(config: &Value, comments: &[String], table: &Table) -> String {
    let mut out = format!("# config: {config}\n");
    for c in comments {
        out.push_str(&format!("# {c}\n"));
    }
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for (i, row) in table.rows.iter().enumerate() {
        let mut cells: Vec<String> = table.labels.get(i).cloned().into_iter().collect();
        cells.extend(row.iter().map(|v| fmt_f64(*v)));
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Pretty JSON with sorted keys and `schemaVersion` at the top level.
pub fn json_report(command: &str, config: &Value, body: Value, checks: &[Check]) -> String {
    let mut doc = match body {
        Value::Object(map) => map,
        other => {
            let mut map = serde_json::Map::new();
            map.insert("result".into(), other);
            map
        }
    };
    doc.insert("schemaVersion".into(), json!(SCHEMA_VERSION));
    doc.insert("command".into(), json!(command));
    doc.insert("config".into(), config.clone());
    doc.insert("checks".into(), json!(checks));
    doc.insert("passed".into(), json!(checks.iter().all(|c| c.passed)));
    let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize to JSON")
}
