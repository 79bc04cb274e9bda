//! Canonical serialization of run results.
//!
//! JSON documents are written through [`serde_json::Value`], so keys come out
//! sorted and numbers in shortest round-trip form. CSV files start with one
//! `# header: {...}` comment line followed by a table whose floating-point cells
//! carry 17 significant digits. Reading either format back and writing it again
//! reproduces the input byte for byte.

use super::CliError;
use crate::params::{Parameters, C64};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::io::Write;

/// Metadata echoed at the top of every artifact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    /// Binary name.
    pub tool: String,
    /// Crate version.
    pub version: String,
    /// Sub-command that produced the artifact.
    pub command: String,
    /// Equation parameters, when the command uses them.
    pub params: Option<Parameters>,
    /// Regime label, when the command uses one.
    pub regime: Option<String>,
    /// Truncation order, when the command uses one.
    #[serde(rename = "N")]
    pub n: Option<usize>,
    /// Seed of sampled inputs, when the command samples.
    pub seed: Option<u64>,
}

impl Header {
    /// Header for `command` with every optional field empty.
    pub fn new(command: &str) -> Self {
        Self {
            tool: "dp3".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            params: None,
            regime: None,
            n: None,
            seed: None,
        }
    }
}

/// One CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Floating-point value, written with 17 significant digits.
    Float(f64),
    /// Integer value.
    Int(i64),
    /// Boolean value.
    Bool(bool),
    /// Free text.
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Float(x) => format_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// `x` with 17 significant digits in scientific notation, `.` as decimal mark.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// Rectangular view of a result for CSV output.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    /// Column names.
    pub columns: Vec<String>,
    /// Rows, each as long as `columns`.
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    /// Empty table with the given columns.
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row.
    ///
    /// # Panics
    /// Panics when the row length differs from the number of columns.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }
}

/// Real and imaginary parts as two cells.
pub fn complex_cells(z: C64) -> [Cell; 2] {
    [Cell::Float(z.re), Cell::Float(z.im)]
}

/// `name_re`, `name_im`.
pub fn complex_columns(name: &str) -> [String; 2] {
    [format!("{name}_re"), format!("{name}_im")]
}

/// The result of one run.
#[derive(Debug, Clone)]
pub struct Artifact {
    /// Metadata block.
    pub header: Header,
    /// Structured result.
    pub body: Value,
    /// Tabular result for CSV.
    pub table: Table,
}

impl Artifact {
    /// Canonical JSON text: `{"header": …, "body": …}` with sorted keys.
    pub fn to_json(&self) -> Result<String, CliError> {
        let doc = serde_json::json!({
            "header": serde_json::to_value(&self.header).map_err(json_error)?,
            "body": self.body,
        });
        canonical_json(&doc)
    }

    /// Header comment line followed by the CSV table.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let header = serde_json::to_value(&self.header).map_err(json_error)?;
        let mut out = format!("# header: {}\n", serde_json::to_string(&header).map_err(json_error)?);
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.table.columns).map_err(csv_error)?;
        for row in &self.table.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(csv_error)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        out.push_str(&String::from_utf8_lossy(&bytes));
        Ok(out)
    }
}

fn json_error(e: serde_json::Error) -> CliError {
    CliError::Io(format!("serialization failed: {e}"))
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(format!("csv output failed: {e}"))
}

/// Pretty-printed JSON of a value, newline-terminated.
pub fn canonical_json(v: &Value) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(json_error)?;
    s.push('\n');
    Ok(s)
}

/// Re-emits an artifact read back from disk in canonical form.
pub fn reemit(text: &str) -> Result<String, CliError> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("not a JSON artifact: {e}")))?;
        return canonical_json(&v);
    }
    reemit_csv(text)
}

fn reemit_csv(text: &str) -> Result<String, CliError> {
    let mut out = String::new();
    let mut body = String::new();
    for line in text.split_inclusive('\n') {
        if body.is_empty() && line.starts_with('#') {
            let json = line
                .trim_end_matches('\n')
                .strip_prefix("# header: ")
                .ok_or_else(|| CliError::Usage("malformed CSV header line".into()))?;
            let v: Value = serde_json::from_str(json)
                .map_err(|e| CliError::Usage(format!("malformed CSV header: {e}")))?;
            out.push_str(&format!("# header: {}\n", serde_json::to_string(&v).map_err(json_error)?));
        } else {
            body.push_str(line);
        }
    }
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(body.as_bytes());
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Usage(format!("malformed CSV: {e}")))?;
        if i == 0 {
            w.write_record(&rec).map_err(csv_error)?;
            continue;
        }
        let fields: Vec<String> = rec.iter().map(recanonicalize_field).collect();
        w.write_record(&fields).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    out.push_str(&String::from_utf8_lossy(&bytes));
    Ok(out)
}

fn recanonicalize_field(f: &str) -> String {
    let is_float = f.contains(['e', 'E', '.']) || matches!(f, "NaN" | "inf" | "-inf");
    match f.parse::<f64>() {
        Ok(x) if is_float => format_float(x),
        _ => f.to_string(),
    }
}

/// Writes `text` to `path`, or to standard output.
pub fn write_text(path: Option<&std::path::Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}
