//! Deterministic text output: 17-significant-digit numbers, CSV tables and
//! JSON records.

use std::fmt;
use std::io::{self, Write};

use serde::Serialize;
use serde_json::{Number, Value};

/// `x` with 17 significant digits. Plain decimal notation for exponents in
/// `[-5, 16]`, scientific otherwise; non-finite values print as `NaN`,
/// `inf`, `-inf`.
pub fn fmt_sig17(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0.0000000000000000".to_string();
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    if (-5..=16).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, x)
    } else {
        sci
    }
}

/// Rewrites every non-integer number in `value` with [`fmt_sig17`];
/// non-finite numbers become `null`.
pub fn normalize_numbers(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if n.is_u64() || n.is_i64() {
                return;
            }
            let x = n.as_f64().unwrap_or(f64::NAN);
            *value = sig17_value(x);
        }
        Value::Array(items) => items.iter_mut().for_each(normalize_numbers),
        Value::Object(map) => map.values_mut().for_each(normalize_numbers),
        _ => {}
    }
}

/// JSON number with 17 significant digits, or `null` when not finite.
pub fn sig17_value(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    fmt_sig17(x).parse::<Number>().map(Value::Number).unwrap_or(Value::Null)
}

/// Serializes `record` with every float at 17 significant digits, pretty
/// printed, with a trailing newline.
pub fn to_json_string<T: Serialize>(record: &T) -> serde_json::Result<String> {
    let mut value = serde_json::to_value(record)?;
    normalize_numbers(&mut value);
    let mut text = serde_json::to_string_pretty(&value)?;
    text.push('\n');
    Ok(text)
}

/// Minimal CSV writer: `,` delimiter, header always present, floats at 17
/// significant digits.
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

pub enum Cell<'a> {
    Num(f64),
    Int(i64),
    Text(&'a str),
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: &[Cell<'_>]) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(
            row.iter()
                .map(|c| match c {
                    Cell::Num(x) => fmt_sig17(*x),
                    Cell::Int(i) => i.to_string(),
                    Cell::Text(s) => (*s).to_string(),
                })
                .collect(),
        );
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        write!(out, "{self}")
    }
}

impl fmt::Display for CsvTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header.join(","))?;
        for row in &self.rows {
            writeln!(f, "{}", row.join(","))?;
        }
        Ok(())
    }
}
