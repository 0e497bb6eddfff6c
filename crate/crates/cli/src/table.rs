//! Tabular output with full-precision numbers.

use crate::config::Format;
use crate::CliError;
use std::io::Write;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Missing,
}

impl Cell {
    pub fn text(s: &str) -> Cell {
        Cell::Text(s.to_string())
    }

    fn csv_field(&self) -> String {
        match self {
            Cell::Num(x) if x.is_finite() => fmt_f64(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            _ => String::new(),
        }
    }

    fn json_value(&self) -> String {
        match self {
            Cell::Num(x) if x.is_finite() => fmt_f64(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => serde_json::to_string(s).expect("string serialization"),
            _ => "null".to_string(),
        }
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Table {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.columns).map_err(io_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_field)).map_err(io_err)?;
        }
        w.into_inner().map_err(|e| CliError::Eval(format!("csv output: {e}")))
    }

    /// `{"meta": ..., "rows": [...], "summary": ...}` with column order preserved.
    pub fn to_json(&self, meta: &serde_json::Value, summary: Option<&[(&str, Cell)]>) -> Vec<u8> {
        let mut s = String::from("{\n  \"meta\": ");
        s.push_str(&serde_json::to_string(meta).expect("meta serialization"));
        s.push_str(",\n  \"rows\": [");
        for (i, row) in self.rows.iter().enumerate() {
            s.push_str(if i == 0 { "\n    " } else { ",\n    " });
            s.push_str(&object(self.columns.iter().copied().zip(row.iter())));
        }
        s.push_str("\n  ]");
        if let Some(summary) = summary {
            s.push_str(",\n  \"summary\": ");
            s.push_str(&object(summary.iter().map(|(k, v)| (*k, v))));
        }
        s.push_str("\n}\n");
        s.into_bytes()
    }
}

fn object<'a>(fields: impl Iterator<Item = (&'a str, &'a Cell)>) -> String {
    let body: Vec<String> = fields
        .map(|(k, v)| format!("{}: {}", serde_json::to_string(k).expect("key"), v.json_value()))
        .collect();
    format!("{{{}}}", body.join(", "))
}

fn io_err(e: csv::Error) -> CliError {
    CliError::Eval(format!("csv output: {e}"))
}

/// Writes to `path`, or stdout when absent or "-".
pub fn emit(
    table: &Table,
    format: Format,
    path: Option<&str>,
    meta: &serde_json::Value,
    summary: Option<&[(&str, Cell)]>,
) -> Result<(), CliError> {
    let bytes = match format {
        Format::Csv => table.to_csv()?,
        Format::Json => table.to_json(meta, summary),
    };
    match path {
        None | Some("-") => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| CliError::Eval(format!("writing stdout: {e}"))),
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Eval(format!("writing {p}: {e}"))),
    }
}
