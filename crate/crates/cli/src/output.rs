//! Table output in CSV or JSON with fixed 9-significant-digit floats.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::Failure;

/// `x` with 9 significant digits, dot decimal, trailing zeros removed.
pub fn fmt9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    // The exponent after rounding to 9 digits fixes the decimal position.
    let sci = format!("{x:.8e}");
    let (mant, e) = sci.split_once('e').expect("scientific format");
    let exp: i32 = e.parse().expect("integer exponent");
    if !(-5..=8).contains(&exp) {
        return format!("{}e{exp}", trim(mant));
    }
    trim(&format!("{:.*}", (8 - exp).max(0) as usize, x))
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A rectangular table of named columns.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => fmt9(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn from_columns(names: &[&str], data: &[&[f64]]) -> Self {
        let mut t = Table::new(names);
        let n = data.first().map_or(0, |c| c.len());
        for i in 0..n {
            t.push(data.iter().map(|c| Cell::Num(c[i])).collect());
        }
        t
    }

    fn write_csv<W: Write>(&self, w: W) -> Result<(), Failure> {
        let mut wr = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Failure::invalid(format!("write failed: {e}"));
        wr.write_record(&self.columns).map_err(io)?;
        for r in &self.rows {
            wr.write_record(r.iter().map(Cell::render)).map_err(io)?;
        }
        wr.flush().map_err(|e| Failure::invalid(format!("write failed: {e}")))
    }

    fn write_json<W: Write>(&self, mut w: W) -> Result<(), Failure> {
        let io = |e: std::io::Error| Failure::invalid(format!("write failed: {e}"));
        // Floats go through fmt9 so CSV and JSON carry the same digits.
        let rows: Vec<Vec<serde_json::Value>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| match c {
                        Cell::Num(x) => fmt9(*x).parse::<serde_json::Number>().map(serde_json::Value::Number).unwrap_or(serde_json::Value::Null),
                        Cell::Int(n) => serde_json::Value::from(*n),
                        Cell::Text(s) => serde_json::Value::from(s.clone()),
                    })
                    .collect()
            })
            .collect();
        let doc = serde_json::json!({ "columns": self.columns, "rows": rows });
        serde_json::to_writer_pretty(&mut w, &doc).map_err(|e| Failure::invalid(format!("write failed: {e}")))?;
        writeln!(w).map_err(io)
    }

    /// Writes to `out`, or standard output when `None`.
    pub fn emit(&self, out: Option<&Path>, format: Format) -> Result<(), Failure> {
        match out {
            Some(p) => {
                let f = std::fs::File::create(p).map_err(|e| Failure::invalid(format!("cannot write {}: {e}", p.display())))?;
                let w = std::io::BufWriter::new(f);
                match format {
                    Format::Csv => self.write_csv(w),
                    Format::Json => self.write_json(w),
                }
            }
            None => {
                let w = std::io::stdout().lock();
                match format {
                    Format::Csv => self.write_csv(w),
                    Format::Json => self.write_json(w),
                }
            }
        }
    }
}
