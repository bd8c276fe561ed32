//! Output documents: a deterministic JSON writer and a flat CSV table.
//!
//! JSON objects are key-sorted, floats are printed with 17 significant
//! digits and complex numbers become `{"im": .., "re": ..}`, so identical
//! inputs give byte-identical output. Non-finite floats are written as null.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::numeric::C64;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Complex(C64),
    List(Vec<Value>),
    Object(BTreeMap<String, Value>),
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v as i64)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<C64> for Value {
    fn from(v: C64) -> Self {
        Value::Complex(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Str(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Str(v)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Null, Into::into)
    }
}

impl<T: Into<Value>> From<Vec<T>> for Value {
    fn from(v: Vec<T>) -> Self {
        Value::List(v.into_iter().map(Into::into).collect())
    }
}

/// Builder for `Value::Object`.
#[derive(Debug, Clone, Default)]
pub struct Object(BTreeMap<String, Value>);

impl Object {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.insert(key.to_string(), value.into());
        self
    }

    pub fn insert(&mut self, key: &str, value: impl Into<Value>) {
        self.0.insert(key.to_string(), value.into());
    }
}

impl From<Object> for Value {
    fn from(o: Object) -> Self {
        Value::Object(o.0)
    }
}

/// False when any float inside is NaN or infinite. Nulls are allowed.
pub fn is_finite(value: &Value) -> bool {
    match value {
        Value::Float(x) => x.is_finite(),
        Value::Complex(z) => z.re.is_finite() && z.im.is_finite(),
        Value::List(items) => items.iter().all(is_finite),
        Value::Object(map) => map.values().all(is_finite),
        _ => true,
    }
}

pub fn format_float(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.16e}"))
}

fn write_string(out: &mut String, s: &str) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

fn write_value(out: &mut String, value: &Value, indent: usize) {
    let pad = |out: &mut String, level: usize| {
        out.push('\n');
        out.push_str(&"  ".repeat(level));
    };
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Int(i) => {
            let _ = write!(out, "{i}");
        }
        Value::Float(x) => out.push_str(format_float(*x).as_deref().unwrap_or("null")),
        Value::Str(s) => write_string(out, s),
        Value::Complex(z) => {
            let object = Object::new().with("im", z.im).with("re", z.re);
            write_value(out, &object.into(), indent);
        }
        Value::List(items) if items.is_empty() => out.push_str("[]"),
        Value::List(items) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                pad(out, indent + 1);
                write_value(out, item, indent + 1);
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push('{');
            for (k, (key, item)) in map.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                pad(out, indent + 1);
                write_string(out, key);
                out.push_str(": ");
                write_value(out, item, indent + 1);
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out.push('\n');
    out
}

/// Rows of named cells, the CSV view of a command's results.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Each row as an object keyed by column name.
    pub fn to_records(&self) -> Value {
        Value::List(
            self.rows
                .iter()
                .map(|row| Value::Object(self.columns.iter().cloned().zip(row.iter().cloned()).collect()))
                .collect(),
        )
    }
}

fn csv_cells(value: &Value) -> Vec<String> {
    match value {
        Value::Complex(z) => vec![csv_scalar(&Value::Float(z.re)), csv_scalar(&Value::Float(z.im))],
        other => vec![csv_scalar(other)],
    }
}

fn csv_scalar(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Int(i) => i.to_string(),
        Value::Float(x) => format_float(*x).unwrap_or_default(),
        Value::Str(s) => s.clone(),
        Value::List(items) => items.iter().map(csv_scalar).collect::<Vec<_>>().join(" "),
        Value::Complex(_) | Value::Object(_) => {
            let json = to_json(value);
            json.split_whitespace().collect::<Vec<_>>().join(" ")
        }
    }
}

/// CSV with a mandatory header. Columns holding complex values in any row
/// are split into `<name>_re` and `<name>_im`; `leading` cells are repeated
/// on every row.
pub fn to_csv(table: &Table, leading: &[(&str, Value)]) -> std::result::Result<String, csv::Error> {
    let complex: Vec<bool> = (0..table.columns.len())
        .map(|c| table.rows.iter().any(|row| matches!(row[c], Value::Complex(_))))
        .collect();
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = leading.iter().map(|(k, _)| k.to_string()).collect();
    for (name, &is_complex) in table.columns.iter().zip(&complex) {
        if is_complex {
            header.push(format!("{name}_re"));
            header.push(format!("{name}_im"));
        } else {
            header.push(name.clone());
        }
    }
    writer.write_record(&header)?;
    for row in &table.rows {
        let mut record: Vec<String> = leading.iter().map(|(_, v)| csv_scalar(v)).collect();
        for (cell, &is_complex) in row.iter().zip(&complex) {
            match (cell, is_complex) {
                (Value::Complex(_), _) => record.extend(csv_cells(cell)),
                (Value::Null, true) => record.extend([String::new(), String::new()]),
                (Value::Float(x), true) => record.extend(csv_cells(&Value::Complex(C64::new(*x, 0.0)))),
                (other, _) => record.push(csv_scalar(other)),
            }
        }
        writer.write_record(&record)?;
    }
    let bytes = writer.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
