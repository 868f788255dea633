//! Tables and their CSV/JSON encodings.
//!
//! Floats are written in Rust's shortest round-trip form, so parsing a cell
//! back gives the identical f64. Missing values are an empty CSV cell or
//! JSON `null`.

use std::io::Write;

use serde_json::{json, Value};

use crate::args::Format;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Num)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:?}"),
            Cell::Int(v) => v.to_string(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => json!(v),
            Cell::Num(_) | Cell::Missing => Value::Null,
            Cell::Int(v) => json!(v),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text))?;
        }
        w.flush()?;
        Ok(())
    }

    fn write_json(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let doc = json!({ "columns": self.columns, "rows": rows });
        serde_json::to_writer(&mut *out, &doc)?;
        out.write_all(b"\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_text_is_round_trip() {
        let mut t = Table::new(&["a", "b", "c"]);
        t.push(vec![Cell::Num(0.1 + 0.2), Cell::Missing, Cell::Int(-3)]);
        t.push(vec![Cell::Num(1e-300), Cell::Num(-2.5e17), Cell::Int(0)]);
        let mut buf = Vec::new();
        t.write(Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next(), Some("a,b,c"));
        assert!(!text.contains('\r'));
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
        assert_eq!(rows[0][0].parse::<f64>().unwrap(), 0.1 + 0.2);
        assert_eq!(&rows[0][1], "");
        assert_eq!(rows[1][0].parse::<f64>().unwrap(), 1e-300);
        assert_eq!(rows[1][1].parse::<f64>().unwrap(), -2.5e17);
    }

    #[test]
    fn json_uses_null_for_missing() {
        let mut t = Table::new(&["x"]);
        t.push(vec![Cell::Missing]);
        t.push(vec![Cell::Num(0.5)]);
        let mut buf = Vec::new();
        t.write(Format::Json, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["rows"][0][0], Value::Null);
        assert_eq!(v["rows"][1][0], json!(0.5));
    }
}
