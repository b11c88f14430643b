//! Tables rendered as CSV or JSON with a provenance header.
//!
//! Floats carry 12 significant digits in scientific notation, so output is
//! byte-stable for a fixed configuration.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}' (csv|json)")),
        }
    }
}

pub fn num(v: f64) -> String {
    // −0 prints as 0
    let v = v + 0.0;
    if v.is_finite() {
        format!("{v:.11e}")
    } else {
        format!("{v}").to_lowercase()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => num(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => {
                let rounded: f64 = num(*v).parse().expect("formatted float parses");
                json!(rounded)
            }
            Cell::Num(_) => Value::Null,
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, Default)]
pub struct Header {
    pub command: String,
    pub parameters: Vec<(String, String)>,
    pub tolerances: Vec<(String, String)>,
}

impl Header {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            ..Self::default()
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    pub fn tolerance(mut self, key: &str, value: f64) -> Self {
        self.tolerances
            .push((key.to_string(), format!("{value:e}")));
        self
    }

    pub fn line(&self) -> String {
        let join = |kv: &[(String, String)]| {
            kv.iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!(
            "# xychain {VERSION} command={} | {} | tolerances {}",
            self.command,
            join(&self.parameters),
            join(&self.tolerances)
        )
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }
}

pub fn render(header: &Header, table: &Table, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = header.line();
            out.push('\n');
            out.push_str(&table.columns.join(","));
            out.push('\n');
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let pairs = |kv: &[(String, String)]| {
                Value::Object(
                    kv.iter()
                        .map(|(k, v)| (k.clone(), json!(v)))
                        .collect::<Map<_, _>>(),
                )
            };
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
                .collect();
            let doc = json!({
                "version": VERSION,
                "command": header.command,
                "parameters": pairs(&header.parameters),
                "tolerances": pairs(&header.tolerances),
                "columns": table.columns,
                "rows": rows,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
    }
}

/// Writes to `path`, or stdout when absent.
pub fn emit(rendered: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, rendered).map_err(|source| CliError::Output {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(num(0.5), "5.00000000000e-1");
        assert_eq!(num(-1.0 / 3.0), "-3.33333333333e-1");
        assert_eq!(num(0.0), "0.00000000000e0");
        assert_eq!(num(-0.0), "0.00000000000e0");
        assert_eq!(num(f64::NAN), "nan");
    }

    #[test]
    fn csv_layout() {
        let header = Header::new("demo")
            .param("m", 2)
            .tolerance("witness", 1e-12);
        let mut t = Table::new(&["h", "C", "note"]);
        t.push(vec![0.25.into(), 0.125.into(), "ok".into()]);
        let s = render(&header, &t, Format::Csv);
        assert_eq!(
            s,
            format!(
                "# xychain {VERSION} command=demo | m=2 | tolerances witness=1e-12\n\
                 h,C,note\n2.50000000000e-1,1.25000000000e-1,ok\n"
            )
        );
    }

    #[test]
    fn json_layout() {
        let mut t = Table::new(&["h", "n"]);
        t.push(vec![(1.0 / 3.0).into(), 4usize.into()]);
        let s = render(&Header::new("demo"), &t, Format::Json);
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["columns"], json!(["h", "n"]));
        assert_eq!(v["rows"][0][0], json!(0.333333333333));
        assert_eq!(v["rows"][0][1], json!(4));
        assert_eq!(v["version"], json!(VERSION));
    }
}
