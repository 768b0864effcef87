use std::fmt;

use cohomology_core::abgroups::CohomologyGroup;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

/// How a command ended, mapped onto the exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Computed,
    Violated,
    Invalid,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Computed => 0,
            Status::Violated => 1,
            Status::Invalid => 2,
        }
    }

    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Computed
        } else {
            Status::Violated
        }
    }

    pub fn worst(self, other: Status) -> Status {
        if self.code() >= other.code() {
            self
        } else {
            other
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub value: Value,
    pub status: Status,
}

impl Report {
    pub fn computed(value: Value) -> Self {
        Report {
            value,
            status: Status::Computed,
        }
    }

    /// A report whose verdict is `pass`; the verdict is also written into the value.
    pub fn verdict(mut value: Value, pass: bool) -> Self {
        if let Value::Object(m) = &mut value {
            m.insert("pass".into(), Value::Bool(pass));
        }
        Report {
            value,
            status: Status::from_pass(pass),
        }
    }
}

/// Raised for malformed input; maps to exit status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub fn invalid(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

/// Exit status for an error: malformed input is 2, anything else a failed computation.
pub fn classify(e: &anyhow::Error) -> Status {
    if e.downcast_ref::<InputError>().is_some() {
        return Status::Invalid;
    }
    match e.downcast_ref::<cohomology_core::Error>() {
        Some(
            cohomology_core::Error::InvalidInput(_)
            | cohomology_core::Error::InvalidGroup(_)
            | cohomology_core::Error::InvalidModule(_)
            | cohomology_core::Error::DimensionMismatch(_)
            | cohomology_core::Error::NonAssociative(..)
            | cohomology_core::Error::NotEquivariant(_)
            | cohomology_core::Error::NotACocycle(_),
        ) => Status::Invalid,
        _ => Status::Violated,
    }
}

/// Integers as JSON numbers when they fit, as decimal strings otherwise.
pub fn big(x: &BigInt) -> Value {
    x.to_i64()
        .map(Value::from)
        .unwrap_or_else(|| Value::String(x.to_string()))
}

pub fn bigs(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

pub fn structure(free: usize, torsion: &[BigInt]) -> Value {
    json!({ "free_rank": free, "torsion": bigs(torsion) })
}

pub fn group_value(h: &CohomologyGroup) -> Value {
    structure(h.free_rank(), h.torsion())
}

/// Renders a report as aligned text: scalars as `key: value`, arrays of
/// records as tables, nested records indented.
pub fn render_table(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(is_scalar) => {
            format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", "))
        }
        Value::Object(m) if is_structure(m) => {
            let free = m["free_rank"].as_u64().unwrap_or(0);
            let tors = m["torsion"].as_array().cloned().unwrap_or_default();
            let mut parts: Vec<String> = Vec::new();
            if free > 0 {
                parts.push(if free == 1 {
                    "Z".into()
                } else {
                    format!("Z^{free}")
                });
            }
            parts.extend(tors.iter().map(|t| format!("Z/{}", scalar(t))));
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            }
        }
        other => other.to_string(),
    }
}

fn is_structure(m: &Map<String, Value>) -> bool {
    m.len() == 2 && m.contains_key("free_rank") && m.contains_key("torsion")
}

fn is_scalar(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(is_scalar),
        Value::Object(m) => is_structure(m),
        _ => true,
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_scalar(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write_value(out, x, indent + 1);
                }
            }
        }
        Value::Array(a)
            if !a.is_empty()
                && a.iter()
                    .all(|x| matches!(x, Value::Object(m) if m.values().all(is_scalar))) =>
        {
            write_rows(out, a, &pad);
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                if is_scalar(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{pad}[{i}]\n"));
                    write_value(out, x, indent + 1);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

const LEADING: &[&str] = &[
    "node",
    "seed",
    "module",
    "sequence",
    "n",
    "degree",
    "p",
    "q",
    "cocycle",
    "generator",
    "left",
    "right",
];

fn write_rows(out: &mut String, rows: &[Value], pad: &str) {
    let mut keys: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().expect("rows are records").keys() {
            if !keys.contains(k) {
                keys.push(k.clone());
            }
        }
    }
    // identifying columns first, the rest alphabetically
    keys.sort_by_key(|k| LEADING.iter().position(|l| l == k).unwrap_or(LEADING.len()));
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            keys.iter()
                .map(|k| r.get(k).map(scalar).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| {
            cells
                .iter()
                .map(|c| c[i].chars().count())
                .chain([k.chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |items: &[String]| {
        let s: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        format!("{pad}{}\n", s.join("  ").trim_end())
    };
    out.push_str(&line(&keys));
    for c in &cells {
        out.push_str(&line(c));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_overflow_to_strings() {
        assert_eq!(big(&BigInt::from(5)), json!(5));
        let huge: BigInt = BigInt::from(i64::MAX) * 4;
        assert_eq!(big(&huge), json!(huge.to_string()));
    }

    #[test]
    fn table_rendering_is_aligned() {
        let v = json!({
            "group": "Z2",
            "degrees": [
                { "degree": 0, "h": { "free_rank": 1, "torsion": [] } },
                { "degree": 10, "h": { "free_rank": 0, "torsion": [2, 2] } },
            ]
        });
        let t = render_table(&v);
        assert_eq!(
            t,
            "degrees:\n  degree  h\n  0       Z\n  10      Z/2 + Z/2\ngroup: Z2\n"
        );
    }

    #[test]
    fn worst_status_wins() {
        assert_eq!(Status::Computed.worst(Status::Violated), Status::Violated);
        assert_eq!(Status::Invalid.worst(Status::Violated), Status::Invalid);
    }
}
