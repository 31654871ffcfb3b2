use std::io::{self, Write};

use cdss::Rational;
use serde_json::{Map, Number, Value};

use crate::cli::Format;

const DECIMAL_DIGITS: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Exact rational, with a companion `<name>_decimal` column.
    Exact,
    Integer,
    /// Boolean printed as `0`/`1` in CSV.
    Flag,
    Label,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Exact(Rational),
    Integer(i128),
    Flag(bool),
    Label(String),
    Infinite,
    Missing,
}

impl From<Rational> for Cell {
    fn from(v: Rational) -> Self {
        Cell::Exact(v)
    }
}

impl From<Option<Rational>> for Cell {
    fn from(v: Option<Rational>) -> Self {
        v.map_or(Cell::Missing, Cell::Exact)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Integer(v.into())
    }
}

impl From<i128> for Cell {
    fn from(v: i128) -> Self {
        Cell::Integer(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Flag(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Label(v.to_string())
    }
}

/// Rows with a fixed column layout, written as CSV or a JSON array.
#[derive(Debug, Clone)]
pub struct Table {
    columns: Vec<(String, Kind)>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[(&str, Kind)]) -> Self {
        Table {
            columns: columns.iter().map(|(n, k)| (n.to_string(), *k)).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    fn header(&self) -> Vec<String> {
        let mut out: Vec<String> = self.columns.iter().map(|c| c.0.clone()).collect();
        for (name, kind) in &self.columns {
            if *kind == Kind::Exact {
                out.push(format!("{name}_decimal"));
            }
        }
        out
    }

    fn csv_row(&self, row: &[Cell]) -> Vec<String> {
        let mut out: Vec<String> = row.iter().map(exact_text).collect();
        for (cell, (_, kind)) in row.iter().zip(&self.columns) {
            if *kind == Kind::Exact {
                out.push(match cell {
                    Cell::Exact(v) => v.to_decimal_string(DECIMAL_DIGITS),
                    Cell::Infinite => "inf".into(),
                    _ => String::new(),
                });
            }
        }
        out
    }

    fn json_row(&self, row: &[Cell]) -> Value {
        let mut obj = Map::new();
        for (cell, (name, kind)) in row.iter().zip(&self.columns) {
            let exact = match cell {
                Cell::Exact(v) => Value::String(v.to_string()),
                Cell::Integer(v) => Value::Number(Number::from(*v as i64)),
                Cell::Flag(b) => Value::Bool(*b),
                Cell::Label(s) => Value::String(s.clone()),
                Cell::Infinite => Value::String("inf".into()),
                Cell::Missing => Value::Null,
            };
            obj.insert(name.clone(), exact);
            if *kind == Kind::Exact {
                let dec = match cell {
                    Cell::Exact(v) => Number::from_f64(v.to_f64()).map_or(Value::Null, Value::Number),
                    _ => Value::Null,
                };
                obj.insert(format!("{name}_decimal"), dec);
            }
        }
        Value::Object(obj)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.rows.iter().map(|r| self.json_row(r)).collect())
    }

    pub fn write(&self, out: &mut dyn Write, format: Format) -> io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "{}", self.header().join(","))?;
                for row in &self.rows {
                    writeln!(out, "{}", self.csv_row(row).join(","))?;
                }
            }
            Format::Json => {
                let text = serde_json::to_string_pretty(&self.to_json()).map_err(io::Error::other)?;
                writeln!(out, "{text}")?;
            }
        }
        Ok(())
    }
}

fn exact_text(cell: &Cell) -> String {
    match cell {
        Cell::Exact(v) => v.to_string(),
        Cell::Integer(v) => v.to_string(),
        Cell::Flag(b) => u8::from(*b).to_string(),
        Cell::Label(s) => s.clone(),
        Cell::Infinite => "inf".into(),
        Cell::Missing => String::new(),
    }
}
