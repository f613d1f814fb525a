//! Report values and their three renderings.
//!
//! Exact arithmetic results ([`Value::Big`]) are JSON strings so that no
//! consumer ever rounds them; sizes, indices and dimensions are JSON numbers.

use acyclo_core::BigInt;
use serde_json::{Map, Value as Json};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Big(BigInt),
    Num(u64),
    Text(String),
    Bool(bool),
    List(Vec<Value>),
    Record(Vec<(String, Value)>),
}

impl Value {
    pub fn record<K: Into<String>>(fields: impl IntoIterator<Item = (K, Value)>) -> Value {
        Value::Record(fields.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn nums(xs: impl IntoIterator<Item = usize>) -> Value {
        Value::List(xs.into_iter().map(Value::from).collect())
    }

    pub fn bigs<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> Value {
        Value::List(xs.into_iter().cloned().map(Value::Big).collect())
    }

    fn is_scalar(&self) -> bool {
        !matches!(self, Value::List(_) | Value::Record(_))
    }

    fn scalar_text(&self) -> String {
        match self {
            Value::Big(x) => x.to_string(),
            Value::Num(x) => x.to_string(),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::List(xs) => xs
                .iter()
                .map(Value::scalar_text)
                .collect::<Vec<_>>()
                .join(" "),
            Value::Record(_) => unreachable!("records are never leaves"),
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            Value::Big(x) => Json::String(x.to_string()),
            Value::Num(x) => Json::from(*x),
            Value::Text(s) => Json::String(s.clone()),
            Value::Bool(b) => Json::Bool(*b),
            Value::List(xs) => Json::Array(xs.iter().map(Value::to_json).collect()),
            Value::Record(fields) => {
                let mut m = Map::new();
                for (k, v) in fields {
                    m.insert(k.clone(), v.to_json());
                }
                Json::Object(m)
            }
        }
    }

    /// `(dotted.path[i], text)` rows. Lists of scalars are one leaf,
    /// space-separated.
    pub fn flatten(&self, prefix: &str, out: &mut Vec<(String, String)>) {
        match self {
            Value::Record(fields) => {
                for (k, v) in fields {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    v.flatten(&key, out);
                }
            }
            Value::List(xs) if !xs.iter().all(Value::is_scalar) => {
                for (i, v) in xs.iter().enumerate() {
                    v.flatten(&format!("{prefix}[{i}]"), out);
                }
            }
            leaf => out.push((prefix.to_string(), leaf.scalar_text())),
        }
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Num(x as u64)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Num(x)
    }
}

impl From<BigInt> for Value {
    fn from(x: BigInt) -> Self {
        Value::Big(x)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&v.to_json()).expect("json values serialize");
    s.push('\n');
    s
}

pub fn render_csv(v: &Value) -> String {
    let mut rows = Vec::new();
    v.flatten("", &mut rows);
    let mut s = String::from("quantity,value\n");
    for (k, v) in rows {
        s.push_str(&csv_field(&k));
        s.push(',');
        s.push_str(&csv_field(&v));
        s.push('\n');
    }
    s
}

pub fn render_human(v: &Value) -> String {
    let mut rows = Vec::new();
    v.flatten("", &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Value {
        Value::record([
            ("volume", Value::Big(BigInt::from(46632))),
            ("dimension", Value::from(10usize)),
            (
                "edges",
                Value::List(vec![Value::nums([1, 2]), Value::nums([2, 3])]),
            ),
            (
                "faces",
                Value::List(vec![Value::record([
                    ("pattern", Value::from("+-")),
                    ("ok", Value::from(true)),
                ])]),
            ),
        ])
    }

    #[test]
    fn json_keeps_order_and_stringifies_big_values() {
        let s = render_json(&sample());
        assert!(s.find("volume").unwrap() < s.find("dimension").unwrap());
        assert!(s.contains("\"volume\": \"46632\""));
        assert!(s.contains("\"dimension\": 10"));
    }

    #[test]
    fn csv_rows() {
        let s = render_csv(&sample());
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "quantity,value");
        assert_eq!(lines[1], "volume,46632");
        assert_eq!(lines[3], "edges[0],1 2");
        assert_eq!(lines[5], "faces[0].pattern,+-");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
    }

    #[test]
    fn human_is_aligned() {
        let s = render_human(&sample());
        assert!(s.starts_with("volume            46632\n"));
    }
}
