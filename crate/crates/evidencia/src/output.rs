//! Tabular results written as CSV (with a sidecar manifest) or JSON (with the
//! manifest embedded).

use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};
use crate::manifest::RunManifest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
}

impl Cell {
    /// CSV text; floats carry 17 significant digits so they read back exactly.
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) if v.is_finite() => format!("{v:.16e}"),
            Cell::Float(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    /// Non-finite floats have no JSON number form and become `null`.
    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => json!(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> CliResult<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let fail = |e: csv::Error| CliError::input(format!("csv encoding failed: {e}"));
        w.write_record(&self.columns).map_err(fail)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(fail)?;
        }
        w.into_inner()
            .map_err(|e| CliError::input(format!("csv encoding failed: {e}")))
    }

    /// Rows as objects keyed by column name.
    pub fn to_json_rows(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .cloned()
                        .zip(row.iter().map(Cell::json))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// Where and how a subcommand writes its result.
#[derive(Debug, Clone)]
pub struct Sink {
    pub path: Option<PathBuf>,
    pub format: Format,
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

impl Sink {
    /// Writes `table`; `extra` entries are added to the JSON document only.
    pub fn emit(
        &self,
        table: &Table,
        manifest: &RunManifest,
        extra: Map<String, Value>,
    ) -> CliResult<()> {
        let bytes = match self.format {
            Format::Csv => table.to_csv()?,
            Format::Json => {
                let mut doc = Map::new();
                doc.insert("manifest".into(), json!(manifest));
                doc.extend(extra);
                doc.insert("rows".into(), table.to_json_rows());
                let mut text = serde_json::to_vec_pretty(&Value::Object(doc))
                    .map_err(|e| CliError::input(format!("json encoding failed: {e}")))?;
                text.push(b'\n');
                text
            }
        };
        match &self.path {
            Some(path) => {
                write_file(path, &bytes)?;
                if self.format == Format::Csv {
                    let mut m = serde_json::to_vec_pretty(manifest)
                        .map_err(|e| CliError::input(format!("json encoding failed: {e}")))?;
                    m.push(b'\n');
                    write_file(&manifest_path(path), &m)?;
                }
                Ok(())
            }
            None => std::io::stdout()
                .lock()
                .write_all(&bytes)
                .map_err(|e| CliError::io("<stdout>", e)),
        }
    }
}
