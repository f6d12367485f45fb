//! Deterministic table emission: CSV (UTF-8, LF, fixed column order,
//! 12 significant digits) and a JSON envelope, written atomically when a
//! path is given.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{json, Map, Number, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidParameter(format!(
                "unknown format '{other}' (expected csv|json)"
            ))),
        }
    }
}

/// One table entry. `Null` marks values that are undefined at the given
/// parameters (printed as `undefined` in CSV, `null` in JSON).
#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Null,
}

impl Cell {
    pub fn opt_float(v: Option<f64>) -> Cell {
        v.map(Cell::Float).unwrap_or(Cell::Null)
    }
}

/// 12 significant digits: enough to reproduce every reported value without
/// round-trip loss at this precision.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into(); // covers -0.0 for byte-stable output
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else { format!("{x}") };
    }
    format!("{x:.11e}")
}

fn csv_cell(cell: &Cell) -> String {
    match cell {
        Cell::Int(i) => i.to_string(),
        Cell::Float(f) => fmt_float(*f),
        Cell::Text(s) => s.clone(),
        Cell::Null => "undefined".into(),
    }
}

fn json_cell(cell: &Cell) -> Value {
    match cell {
        Cell::Int(i) => json!(i),
        Cell::Float(f) => Number::from_f64(*f).map(Value::Number).unwrap_or(Value::Null),
        Cell::Text(s) => json!(s),
        Cell::Null => Value::Null,
    }
}

/// Output of one CLI command: an ordered meta block plus a rectangular
/// table. The same structure serializes to both formats and is validated
/// by `schemas/output.schema.json`.
#[derive(Debug, Clone)]
pub struct Table {
    pub command: &'static str,
    pub meta: Vec<(&'static str, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Table { command, meta: Vec::new(), columns, rows: Vec::new() }
    }

    pub fn meta_float(&mut self, key: &'static str, value: f64) {
        self.meta.push((key, Cell::Float(value)));
    }

    pub fn meta_cell(&mut self, key: &'static str, value: Cell) {
        self.meta.push((key, value));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn write_csv(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "# command = {}", self.command)?;
        for (key, value) in &self.meta {
            writeln!(w, "# {key} = {}", csv_cell(value))?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(csv_cell).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    fn write_json(&self, w: &mut impl Write) -> io::Result<()> {
        let mut meta = Map::new();
        for (key, value) in &self.meta {
            meta.insert((*key).into(), json_cell(value));
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(json_cell).collect()))
            .collect();
        let envelope = json!({
            "command": self.command,
            "meta": meta,
            "columns": self.columns,
            "rows": rows,
        });
        writeln!(w, "{}", serde_json::to_string_pretty(&envelope)?)
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        match format {
            Format::Csv => self.write_csv(&mut buf),
            Format::Json => self.write_json(&mut buf),
        }
        .map_err(|e| Error::InvalidParameter(format!("render failed: {e}")))?;
        Ok(buf)
    }

    /// Write to stdout, or to `path` via a temp file renamed on success so
    /// a failed run never leaves a partial file behind.
    pub fn emit(&self, format: Format, path: Option<&Path>) -> Result<()> {
        let buf = self.render(format)?;
        match path {
            None => io::stdout()
                .write_all(&buf)
                .map_err(|e| Error::InvalidParameter(format!("stdout: {e}"))),
            Some(path) => atomic_write(path, &buf),
        }
    }
}

fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    let io_err =
        |e: io::Error| Error::InvalidParameter(format!("writing {}: {e}", path.display()));
    fs::write(&tmp, bytes).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io_err(e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(fmt_float(0.0), "0");
        assert_eq!(fmt_float(-0.0), "0");
        assert_eq!(fmt_float(0.375), "3.75000000000e-1");
        assert_eq!(fmt_float(f64::NAN), "nan");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new("demo", vec!["n", "value", "label"]);
        t.meta_float("lambda", 0.5);
        t.push(vec![Cell::Int(0), Cell::Float(1.0), Cell::Text("x".into())]);
        t.push(vec![Cell::Int(1), Cell::Null, Cell::Text("y".into())]);
        let csv = String::from_utf8(t.render(Format::Csv).unwrap()).unwrap();
        assert_eq!(
            csv,
            "# command = demo\n# lambda = 5.00000000000e-1\nn,value,label\n0,1.00000000000e0,x\n1,undefined,y\n"
        );
    }

    #[test]
    fn json_envelope_shape() {
        let mut t = Table::new("demo", vec!["v"]);
        t.push(vec![Cell::Float(f64::NAN)]);
        let buf = t.render(Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["command"], "demo");
        assert!(v["rows"][0][0].is_null());
        assert!(v["columns"].is_array());
    }

    #[test]
    fn atomic_write_creates_file_and_no_temp() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        let t = Table::new("demo", vec!["v"]);
        t.emit(Format::Csv, Some(&path)).unwrap();
        assert!(path.exists());
        assert!(!dir.path().join("out.csv.tmp").exists());
    }
}
