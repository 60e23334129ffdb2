//! Tables and their JSON / CSV renderings.

use serde::Serialize;
use serde_json::{Map, Value};

use super::config::{Format, RunConfig};
use crate::error::{Error, Result};
use crate::scalar::RadicalScalar;

pub const TOOL: &str = "vlimit";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Empty, Into::into)
    }
}

impl Cell {
    fn json(&self) -> Value {
        match self {
            Cell::Int(x) => Value::from(*x),
            Cell::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Empty => Value::Null,
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Int(x) => x.to_string(),
            Cell::Float(x) => format!("{x}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

/// Two cells for an exact value: its text form and its float.
pub fn exact(x: &RadicalScalar) -> [Cell; 2] {
    [Cell::Text(x.to_string()), Cell::Float(x.to_f64())]
}

pub fn exact_opt(x: Option<&RadicalScalar>) -> [Cell; 2] {
    x.map_or([Cell::Empty, Cell::Empty], exact)
}

#[derive(Clone, Debug)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Command-level results that are not rows (verdicts, counts).
    pub summary: Value,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new(), summary: Value::Object(Map::new()) }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn summarize(&mut self, key: &str, value: impl Serialize) -> Result<()> {
        let v = serde_json::to_value(value).map_err(|e| Error::Config(e.to_string()))?;
        if let Value::Object(m) = &mut self.summary {
            m.insert(key.to_string(), v);
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct Document<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config_hash: String,
    config: &'a RunConfig,
    columns: &'a [&'static str],
    rows: Vec<Map<String, Value>>,
    summary: &'a Value,
}

pub fn render(command: &str, config: &RunConfig, table: &Table, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let rows = table
                .rows
                .iter()
                .map(|r| table.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.json())).collect())
                .collect();
            let doc = Document {
                tool: TOOL,
                version: VERSION,
                command,
                config_hash: config.hash(),
                config,
                columns: &table.columns,
                rows,
                summary: &table.summary,
            };
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Config(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut out = format!("# {TOOL} {VERSION} command={command} config_hash={}\n", config.hash());
            // per-sample provenance only goes into JSON
            if let Some(m) = table.summary.as_object() {
                let brief: Map<String, Value> =
                    m.iter().filter(|(k, _)| k.as_str() != "reports").map(|(k, v)| (k.clone(), v.clone())).collect();
                if !brief.is_empty() {
                    out.push_str(&format!("# summary={}\n", Value::Object(brief)));
                }
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(&table.columns).map_err(io)?;
            for r in &table.rows {
                w.write_record(r.iter().map(Cell::text)).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            out.push_str(&String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))?);
            Ok(out)
        }
    }
}

/// `{"error": {"kind": ..., "message": ...}}`.
pub fn error_object(e: &Error) -> String {
    serde_json::json!({ "error": { "kind": e.kind(), "message": e.to_string() } }).to_string()
}
