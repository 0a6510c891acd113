//! Tabular output shared by every subcommand.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

pub const UNITS_LINE: &str = "# hbar=m=omega=1";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
    Bool(bool),
    List(Vec<f64>),
    Ints(Vec<usize>),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_g(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::List(v) => v.iter().map(|x| format_g(*x)).collect::<Vec<_>>().join(";"),
            Cell::Ints(v) => v.iter().map(usize::to_string).collect::<Vec<_>>().join(";"),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => number(*x),
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::List(v) => Value::Array(v.iter().map(|x| number(*x)).collect()),
            Cell::Ints(v) => json!(v),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or_else(|| Value::String(format_g(x)))
}

/// Result of one run: scalar summary fields plus an optional table. Without
/// columns the summary itself is the single CSV record.
#[derive(Debug, Clone)]
pub struct Table {
    command: &'static str,
    summary: Vec<(&'static str, Cell)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Table { command, summary: Vec::new(), columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn summary(&mut self, key: &'static str, value: impl Into<Cell>) -> &mut Self {
        self.summary.push((key, value.into()));
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    /// Summary fields become `# key=value` lines above the header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{UNITS_LINE}").unwrap();
        writeln!(out, "# command={}", self.command).unwrap();
        if self.columns.is_empty() {
            let keys: Vec<&str> = self.summary.iter().map(|(k, _)| *k).collect();
            let values: Vec<String> = self.summary.iter().map(|(_, v)| v.csv()).collect();
            writeln!(out, "{}\n{}", keys.join(","), values.join(",")).unwrap();
            return out;
        }
        for (k, v) in &self.summary {
            writeln!(out, "# {k}={}", v.csv()).unwrap();
        }
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(self.command));
        obj.insert("units".into(), json!({ "hbar": 1, "m": 1, "omega": 1 }));
        for (k, v) in &self.summary {
            obj.insert((*k).into(), v.json());
        }
        if !self.columns.is_empty() {
            let rows = self
                .rows
                .iter()
                .map(|row| {
                    let fields = self.columns.iter().zip(row).map(|(c, v)| ((*c).to_owned(), v.json()));
                    Value::Object(fields.collect())
                })
                .collect();
            obj.insert("rows".into(), Value::Array(rows));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("table serializes");
        s.push('\n');
        s
    }
}

/// `%.12g`: twelve significant digits, trailing zeros dropped, exponent form
/// outside `1e-4 ≤ |x| < 1e12`.
pub fn format_g(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..DIGITS).contains(&exp) {
        let fixed = format!("{:.*}", (DIGITS - 1 - exp) as usize, x);
        trim_zeros(&fixed).to_owned()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_format() {
        assert_eq!(format_g(0.0), "0");
        assert_eq!(format_g(-0.0), "0");
        assert_eq!(format_g(1.0), "1");
        assert_eq!(format_g(-0.24), "-0.24");
        assert_eq!(format_g(36.0), "36");
        assert_eq!(format_g(1.8810978455418157), "1.88109784554");
        assert_eq!(format_g(-0.01940986177825704), "-0.0194098617783");
        assert_eq!(format_g(1e-5), "1e-05");
        assert_eq!(format_g(-3.25e-9), "-3.25e-09");
        assert_eq!(format_g(1e-4), "0.0001");
        assert_eq!(format_g(123456789012.0), "123456789012");
        assert_eq!(format_g(1234567890123.0), "1.23456789012e+12");
        assert_eq!(format_g(9.9999999999999e-5), "0.0001");
        assert_eq!(format_g(f64::NAN), "nan");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new("demo", &["lambda", "value"]);
        t.summary("verdict", "satisfied");
        t.row(vec![0.5.into(), (-0.24).into()]);
        assert_eq!(t.to_csv(), "# hbar=m=omega=1\n# command=demo\n# verdict=satisfied\nlambda,value\n0.5,-0.24\n");
    }

    #[test]
    fn single_record_csv() {
        let mut t = Table::new("demo", &[]);
        t.summary("a", 1.5).summary("b", "x");
        assert_eq!(t.to_csv(), "# hbar=m=omega=1\n# command=demo\na,b\n1.5,x\n");
    }

    #[test]
    fn json_layout() {
        let mut t = Table::new("demo", &["lambda"]);
        t.summary("flag", true);
        t.row(vec![Cell::Num(0.25)]);
        let v: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["units"]["hbar"], 1);
        assert_eq!(v["flag"], true);
        assert_eq!(v["rows"][0]["lambda"], 0.25);
    }
}
