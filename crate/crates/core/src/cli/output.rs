//! Tabular output as JSON lines or CSV.
//!
//! Numbers go through `serde_json`, which prints the shortest decimal that
//! round-trips to the same `f64`; non-finite values become `null` (JSON) or
//! an empty cell (CSV).

use std::io::Write;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

/// Rows sharing a fixed set of columns.
#[derive(Debug, Clone)]
pub struct Table {
    columns: &'static [&'static str],
    rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    /// Appends a row; `cells` must match the column count.
    pub fn push(&mut self, cells: Vec<Value>) {
        assert_eq!(cells.len(), self.columns.len(), "row width");
        self.rows.push(cells);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
        match format {
            Format::Jsonl => {
                for row in &self.rows {
                    out.write_all(b"{")?;
                    for (i, (key, value)) in self.columns.iter().zip(row).enumerate() {
                        if i > 0 {
                            out.write_all(b",")?;
                        }
                        serde_json::to_writer(&mut *out, key)?;
                        out.write_all(b":")?;
                        serde_json::to_writer(&mut *out, value)?;
                    }
                    out.write_all(b"}\n")?;
                }
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(cell))?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}

fn cell(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// JSON number for finite `x`, `null` otherwise.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

pub fn text(s: impl Into<String>) -> Value {
    Value::String(s.into())
}
