//! Tables and their JSON, Markdown and CSV renderings.
//!
//! JSON is the contract: compact, keys sorted, rationals as `"p/q"` strings,
//! so that re-parsing and re-emitting reproduces the same bytes. Markdown and CSV are
//! human views.

use std::fmt::Write as _;

use clap::ValueEnum;
use orbimirror::rational::format_rational;
use orbimirror::{Rational, Weights};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
    Csv,
}

/// One table cell, rendered per format.
#[derive(Debug, Clone)]
pub enum Cell {
    /// Left out of JSON objects, blank elsewhere; used for sparse markers.
    Absent,
    Null,
    Bool(bool),
    Int(u64),
    Rational(Rational),
    Text(String),
    /// `eta^power_gamma`.
    Eta {
        power: usize,
        gamma: Rational,
    },
    /// `omega~_k`.
    Omega(usize),
    /// `coeff * eta^power_gamma`, or zero when `None`.
    Product(Option<(Rational, Box<Cell>)>),
    List(Vec<Cell>),
}

impl Cell {
    pub fn rational(q: &Rational) -> Self {
        Cell::Rational(q.clone())
    }

    pub fn ints<I: IntoIterator<Item = T>, T: Into<u64>>(items: I) -> Self {
        Cell::List(items.into_iter().map(|v| Cell::Int(v.into())).collect())
    }

    fn json(&self) -> Value {
        match self {
            Cell::Absent | Cell::Null => Value::Null,
            Cell::Bool(b) => json!(b),
            Cell::Int(v) => json!(v),
            Cell::Rational(q) => json!(format_rational(q)),
            Cell::Text(s) => json!(s),
            Cell::Eta { power, gamma } => json!(format!("eta[{power},{}]", format_rational(gamma))),
            Cell::Omega(k) => json!(format!("omega~[{k}]")),
            Cell::Product(None) => json!("0"),
            Cell::Product(Some((c, class))) => {
                let label = class.plain();
                json!(if c == &Rational::from_integer(1.into()) {
                    label
                } else {
                    format!("{}*{label}", format_rational(c))
                })
            }
            Cell::List(items) => Value::Array(items.iter().map(Cell::json).collect()),
        }
    }

    /// Machine text, used for CSV.
    fn plain(&self) -> String {
        match self {
            Cell::Absent | Cell::Null => String::new(),
            Cell::List(items) => items.iter().map(Cell::plain).collect::<Vec<_>>().join(" "),
            other => match other.json() {
                Value::String(s) => s,
                v => v.to_string(),
            },
        }
    }

    /// Pretty text with glyphs, used for Markdown.
    fn pretty(&self) -> String {
        match self {
            Cell::Absent | Cell::Null => String::new(),
            Cell::Eta { power, gamma } => {
                format!("η{}_{{{}}}", superscript(*power), format_rational(gamma))
            }
            Cell::Omega(k) => format!("ω̃_{{{k}}}"),
            Cell::Product(None) => "0".into(),
            Cell::Product(Some((c, class))) => {
                if c == &Rational::from_integer(1.into()) {
                    class.pretty()
                } else {
                    format!("{}·{}", format_rational(c), class.pretty())
                }
            }
            Cell::List(items) => items.iter().map(Cell::pretty).collect::<Vec<_>>().join(" "),
            other => other.plain(),
        }
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).expect("decimal digit") as usize])
        .collect()
}

/// Square layout used for the Markdown view of matrix-shaped tables.
#[derive(Debug, Clone)]
pub struct Grid {
    pub labels: Vec<Cell>,
    /// Row-major; `None` leaves the cell blank (e.g. below the diagonal).
    pub cells: Vec<Vec<Option<Cell>>>,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub kind: String,
    pub weights: Vec<u64>,
    pub mu: usize,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub grid: Option<Grid>,
    /// Lines printed under the Markdown view.
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(kind: &str, weights: &Weights, columns: Vec<&'static str>) -> Self {
        Self {
            kind: kind.to_string(),
            weights: weights.values().to_vec(),
            mu: weights.mu(),
            columns,
            rows: Vec::new(),
            grid: None,
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Md => self.markdown(),
            Format::Csv => self.csv(),
        }
    }

    pub fn to_value(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .filter(|(_, cell)| !matches!(cell, Cell::Absent))
                    .map(|(c, cell)| (c.to_string(), cell.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({
            "kind": self.kind,
            "mu": self.mu,
            "rows": Value::Array(rows),
            "weights": self.weights,
        })
    }

    fn json(&self) -> String {
        canonical_json(&self.to_value())
    }

    fn markdown(&self) -> String {
        let mut out = String::new();
        let weights: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "## {} for P({}), mu = {}\n", self.kind, weights.join(","), self.mu);
        match &self.grid {
            Some(grid) => {
                let header: Vec<String> = grid.labels.iter().map(Cell::pretty).collect();
                let _ = writeln!(out, "| | {} |", header.join(" | "));
                let _ = writeln!(out, "|---|{}", "---|".repeat(header.len()));
                for (label, row) in grid.labels.iter().zip(&grid.cells) {
                    let cells: Vec<String> = row
                        .iter()
                        .map(|c| c.as_ref().map(Cell::pretty).unwrap_or_default())
                        .collect();
                    let _ = writeln!(out, "| {} | {} |", label.pretty(), cells.join(" | "));
                }
            }
            None => {
                let _ = writeln!(out, "| {} |", self.columns.join(" | "));
                let _ = writeln!(out, "|{}", "---|".repeat(self.columns.len()));
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::pretty).collect();
                    let _ = writeln!(out, "| {} |", cells.join(" | "));
                }
            }
        }
        for note in &self.notes {
            let _ = writeln!(out, "\n{note}");
        }
        out
    }

    fn csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            writer
                .write_record(row.iter().map(Cell::plain))
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }
}

/// Compact JSON with sorted keys and a trailing newline.
pub fn canonical_json(value: &Value) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}
