//! JSON realization files.
//!
//! ```json
//! { "n": 2, "l": 0, "m": 1, "p": 1,
//!   "A": [["-1", "1/2"], ["0", "-3"]], "B": [["1"], ["0"]], "C": [["1", "0"]],
//!   "labels": { "u": ["force"] } }
//! ```
//!
//! Entries are rational strings (integers are also accepted). Omitted
//! matrices are zero; zero-sized matrices are omitted on output.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Block, GeneralizedRealization, Labels};
use crate::error::{Error, Result};
use crate::polyrat::{fmt_q, parse_rational, QMatrix, Q};

#[derive(Deserialize)]
struct RawFile {
    n: usize,
    l: usize,
    m: usize,
    p: usize,
    #[serde(flatten)]
    matrices: BTreeMap<String, Value>,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawLabels {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    u: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    y: Option<Vec<String>>,
}

fn entry(v: &Value, name: &str) -> Result<Q> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(num) if num.is_i64() => Ok(Q::from_integer(num.as_i64().unwrap_or_default().into())),
        other => Err(Error::Invalid(format!("{name}: entry {other} is not an exact rational"))),
    }
}

fn matrix(v: &Value, name: &str, shape: (usize, usize)) -> Result<QMatrix> {
    let rows = v.as_array().ok_or_else(|| Error::Invalid(format!("{name} must be a list of rows")))?;
    if rows.is_empty() && shape.0 * shape.1 == 0 {
        return Ok(QMatrix::zeros(shape.0, shape.1));
    }
    if rows.len() != shape.0 {
        return Err(Error::DimensionMismatch(format!("{name} needs {} rows, got {}", shape.0, rows.len())));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| Error::Invalid(format!("{name} row {i} must be a list")))?;
        if row.len() != shape.1 {
            return Err(Error::DimensionMismatch(format!(
                "{name} row {i} needs {} entries, got {}",
                shape.1,
                row.len()
            )));
        }
        out.push(row.iter().map(|e| entry(e, name)).collect::<Result<Vec<_>>>()?);
    }
    if shape.1 == 0 {
        return Ok(QMatrix::zeros(shape.0, 0));
    }
    QMatrix::from_rows(out)
}

pub fn parse_realization(text: &str) -> Result<GeneralizedRealization> {
    let raw: RawFile = serde_json::from_str(text)?;
    let mut g = GeneralizedRealization::zeros(raw.n, raw.l, raw.m, raw.p);
    let mut labels = None;
    for (key, value) in &raw.matrices {
        if key == "labels" {
            labels = Some(RawLabels::deserialize(value)?);
            continue;
        }
        let block = Block::ALL
            .into_iter()
            .find(|b| b.name() == key)
            .ok_or_else(|| Error::Invalid(format!("unknown key {key:?}")))?;
        g.set(block, matrix(value, key, g.shape_of(block))?)?;
    }
    if let Some(raw_labels) = labels {
        let d = g.labels().clone();
        g.set_labels(Labels {
            u: raw_labels.u.unwrap_or(d.u),
            x: raw_labels.x.unwrap_or(d.x),
            w: raw_labels.w.unwrap_or(d.w),
            y: raw_labels.y.unwrap_or(d.y),
        })?;
    }
    g.aux_resolvent()?;
    Ok(g)
}

pub fn read_realization(path: impl AsRef<Path>) -> Result<GeneralizedRealization> {
    parse_realization(&std::fs::read_to_string(path)?)
}

fn matrix_value(m: &QMatrix) -> Value {
    Value::Array(
        (0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|q| Value::String(fmt_q(q))).collect())).collect(),
    )
}

/// Pretty-printed JSON for a realization. Key order is fixed, so output is
/// byte-stable.
pub fn realization_to_json(g: &GeneralizedRealization) -> String {
    let mut obj = serde_json::Map::new();
    obj.insert("n".into(), g.n().into());
    obj.insert("l".into(), g.l().into());
    obj.insert("m".into(), g.m().into());
    obj.insert("p".into(), g.p().into());
    for b in Block::ALL {
        let m = g.get(b);
        if m.rows() * m.cols() > 0 {
            obj.insert(b.name().into(), matrix_value(m));
        }
    }
    let defaults = Labels::default_for(g.n(), g.l(), g.m(), g.p());
    let l = g.labels();
    let keep = |got: &Vec<String>, want: &Vec<String>| (got != want).then(|| got.clone());
    let raw = RawLabels {
        u: keep(&l.u, &defaults.u),
        x: keep(&l.x, &defaults.x),
        w: keep(&l.w, &defaults.w),
        y: keep(&l.y, &defaults.y),
    };
    if raw.u.is_some() || raw.x.is_some() || raw.w.is_some() || raw.y.is_some() {
        obj.insert("labels".into(), serde_json::to_value(raw).expect("labels serialize"));
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("json serialize");
    text.push('\n');
    text
}

pub fn write_realization(g: &GeneralizedRealization, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, realization_to_json(g))?;
    Ok(())
}
