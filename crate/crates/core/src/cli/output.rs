//! Table, CSV and JSON rendering.

use std::fmt::Write as _;

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Rounds `v` to `digits` significant decimal digits.
pub fn round_sig(v: f64, digits: usize) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{:.*e}", digits - 1, v).parse().unwrap_or(v)
}

pub fn num(v: f64, digits: usize) -> Value {
    serde_json::Number::from_f64(round_sig(v, digits)).map(Value::Number).unwrap_or(Value::Null)
}

pub fn text(v: f64, digits: usize) -> String {
    let r = round_sig(v, digits);
    let a = r.abs();
    if r.is_finite() && a != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{r:e}")
    } else if r.is_finite() {
        format!("{r}")
    } else if r.is_nan() {
        "nan".into()
    } else if r > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

pub fn json_document(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Named scalar results of a `compute` call.
pub struct NamedValues<'a> {
    pub quantity: &'a str,
    pub values: Vec<(&'static str, f64)>,
}

impl NamedValues<'_> {
    pub fn render(&self, format: Format, digits: usize) -> String {
        match format {
            Format::Table => {
                let width = self.values.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                let mut s = String::new();
                for (k, v) in &self.values {
                    let _ = writeln!(s, "{k:<width$}  {}", text(*v, digits));
                }
                s
            }
            Format::Csv => {
                let mut s = String::from("name,value\n");
                for (k, v) in &self.values {
                    let _ = writeln!(s, "{k},{}", text(*v, digits));
                }
                s
            }
            Format::Json => {
                let mut values = Map::new();
                for (k, v) in &self.values {
                    values.insert((*k).into(), num(*v, digits));
                }
                let mut doc = Map::new();
                doc.insert("quantity".into(), Value::String(self.quantity.into()));
                doc.insert("values".into(), Value::Object(values));
                json_document(&Value::Object(doc))
            }
        }
    }
}

/// A finished sweep, ready to print.
pub struct SweepOutput<'a> {
    pub mode: &'a str,
    pub family: Vec<(&'static str, f64)>,
    pub samples: &'a [(f64, f64)],
    pub extrapolated_limit: f64,
    pub rhs: f64,
    pub discrepancy: f64,
    pub estimated_order: f64,
}

impl SweepOutput<'_> {
    fn summary(&self) -> [(&'static str, f64); 4] {
        [
            ("extrapolated_limit", self.extrapolated_limit),
            ("rhs", self.rhs),
            ("discrepancy", self.discrepancy),
            ("estimated_order", self.estimated_order),
        ]
    }

    pub fn render(&self, format: Format, digits: usize) -> String {
        match format {
            Format::Table => self.table(digits),
            Format::Csv => {
                let mut s = String::from("param,value\n");
                for (p, v) in self.samples {
                    let _ = writeln!(s, "{},{}", text(*p, digits), text(*v, digits));
                }
                for (k, v) in self.summary() {
                    let _ = writeln!(s, "# {k},{}", text(v, digits));
                }
                s
            }
            Format::Json => {
                let mut family = Map::new();
                for (k, v) in &self.family {
                    family.insert((*k).into(), num(*v, digits));
                }
                let samples = self
                    .samples
                    .iter()
                    .map(|(p, v)| {
                        let mut m = Map::new();
                        m.insert("param".into(), num(*p, digits));
                        m.insert("value".into(), num(*v, digits));
                        Value::Object(m)
                    })
                    .collect();
                let mut doc = Map::new();
                doc.insert("mode".into(), Value::String(self.mode.into()));
                doc.insert("family".into(), Value::Object(family));
                doc.insert("samples".into(), Value::Array(samples));
                for (k, v) in self.summary() {
                    doc.insert(k.into(), num(v, digits));
                }
                json_document(&Value::Object(doc))
            }
        }
    }

    fn table(&self, digits: usize) -> String {
        let rows: Vec<[String; 3]> = self
            .samples
            .iter()
            .enumerate()
            .map(|(i, (p, v))| {
                let diff = if i == 0 { "-".to_string() } else { text(v - self.samples[i - 1].1, digits) };
                [text(*p, digits), text(*v, digits), diff]
            })
            .collect();
        let head = ["param", "value", "difference"];
        let mut w = head.map(str::len);
        for r in &rows {
            for (k, cell) in r.iter().enumerate() {
                w[k] = w[k].max(cell.len());
            }
        }
        let mut s = String::new();
        let _ = writeln!(s, "{:>a$}  {:>b$}  {:>c$}", head[0], head[1], head[2], a = w[0], b = w[1], c = w[2]);
        for r in &rows {
            let _ = writeln!(s, "{:>a$}  {:>b$}  {:>c$}", r[0], r[1], r[2], a = w[0], b = w[1], c = w[2]);
        }
        s.push('\n');
        for (k, v) in self.summary() {
            let _ = writeln!(s, "{k:<18}  {}", text(v, digits));
        }
        s
    }
}
