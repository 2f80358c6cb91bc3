//! Deterministic report emission.
//!
//! Reports must be byte-identical across runs with the same config and
//! seed, independent of thread count, so every cell is formatted from exact
//! values or from floats computed in a fixed order. Timing never enters the
//! canonical bytes; it goes to stderr.

use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    UInt(u64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::UInt(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(s) => {
                if s.contains(',') || s.contains('"') || s.contains('\n') {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.clone()
                }
            }
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::UInt(v) => v.to_string(),
            Cell::Float(v) => {
                if v.is_finite() {
                    format_float(*v)
                } else {
                    format!("\"{v}\"")
                }
            }
            Cell::Text(s) => format!("\"{}\"", escape_json(s)),
        }
    }
}

fn format_float(v: f64) -> String {
    // shortest round-trip representation; stable across runs and platforms
    let mut s = format!("{v}");
    if !s.contains('.') && !s.contains('e') && !s.contains("inf") && !s.contains("NaN") {
        s.push_str(".0");
    }
    s
}

fn escape_json(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

/// A rectangular report: fixed headers, rows of cells.
#[derive(Debug, Clone)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: Vec<&'static str>) -> Table {
        Table {
            headers,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.headers.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// JSON mirror: an array of objects with the CSV columns as keys, in
    /// column order.
    pub fn to_json(&self) -> String {
        let mut out = String::from("[\n");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str("  {");
            for (j, (h, cell)) in self.headers.iter().zip(row).enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "\"{}\": {}", escape_json(h), cell.json());
            }
            out.push('}');
            if i + 1 < self.rows.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("]\n");
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quoting_and_json_mirror() {
        let mut t = Table::new(vec!["a", "b", "c"]);
        t.push(vec![
            Cell::Int(-3),
            Cell::Text("[1,3/2]x[-3/2,-1]".into()),
            Cell::Float(0.5),
        ]);
        let csv = t.to_csv();
        assert_eq!(csv, "a,b,c\n-3,\"[1,3/2]x[-3/2,-1]\",0.5\n");
        let json = t.to_json();
        assert!(json.contains("\"b\": \"[1,3/2]x[-3/2,-1]\""));
        assert!(json.contains("\"c\": 0.5"));
    }

    #[test]
    fn float_formatting_stable() {
        assert_eq!(format_float(3.0), "3.0");
        assert_eq!(format_float(0.1), "0.1");
        assert_eq!(format_float(2.999999999999999), "2.999999999999999");
    }
}
