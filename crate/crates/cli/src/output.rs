//! Tables of named fields, rendered as CSV or JSON.
//!
//! Reals are rounded to 12 significant digits and printed in shortest
//! round-trip form, so the same input always produces the same bytes.
//! Infinity is written as `inf` in both formats; in JSON it is a string.

use std::f64::consts::LN_2;

use clap::ValueEnum;
use relent_core::ExtReal;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    Nats,
    Bits,
}

impl Units {
    /// Converts an entropic quantity from nats.
    pub fn entropy(self, nats: f64) -> f64 {
        match self {
            Units::Nats => nats,
            Units::Bits => nats / LN_2,
        }
    }

    pub fn ext(self, v: ExtReal) -> ExtReal {
        match v {
            ExtReal::Finite(x) => ExtReal::Finite(self.entropy(x)),
            ExtReal::Infinite => ExtReal::Infinite,
        }
    }

    /// Converts a variance of log-probabilities from nats².
    pub fn variance(self, nats2: f64) -> f64 {
        match self {
            Units::Nats => nats2,
            Units::Bits => nats2 / (LN_2 * LN_2),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Int(i64),
    Real(f64),
    Text(String),
    Bool(bool),
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as i64)
    }
}

impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Int(v as i64)
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Real(v)
    }
}

impl From<ExtReal> for Field {
    fn from(v: ExtReal) -> Self {
        Field::Real(v.to_f64())
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_string())
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}

fn round12(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn real_json(x: f64) -> Value {
    if x.is_nan() {
        Value::String("nan".into())
    } else if x.is_infinite() {
        Value::String(if x > 0.0 { "inf" } else { "-inf" }.into())
    } else {
        Value::from(round12(x))
    }
}

impl Field {
    fn to_json(&self) -> Value {
        match self {
            Field::Int(i) => Value::from(*i),
            Field::Real(x) => real_json(*x),
            Field::Text(s) => Value::String(s.clone()),
            Field::Bool(b) => Value::Bool(*b),
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Field::Real(x) if x.is_finite() => real_json(*x).to_string(),
            Field::Text(s) => s.clone(),
            other => match other.to_json() {
                Value::String(s) => s,
                v => v.to_string(),
            },
        }
    }
}

/// Rows sharing one set of column names.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Field>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn single(record: Vec<(&'static str, Field)>) -> Self {
        let (columns, row) = record.into_iter().unzip();
        Table {
            columns,
            rows: vec![row],
        }
    }

    pub fn push(&mut self, row: Vec<Field>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// An object for a single row, an array otherwise.
    pub fn to_json(&self) -> Value {
        match self.to_json_array() {
            Value::Array(mut v) if v.len() == 1 => v.remove(0),
            v => v,
        }
    }

    pub fn to_json_array(&self) -> Value {
        let records = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (c, f) in self.columns.iter().zip(row) {
                    m.insert((*c).to_string(), f.to_json());
                }
                Value::Object(m)
            })
            .collect();
        Value::Array(records)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Field::to_csv)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
        }
    }
}
