//! JSON dump of a DSF, in the same style as realization files.
//!
//! ```json
//! { "p1": 2, "p": 2, "m": 1,
//!   "Q": [["0", "1/(s+1)"], ["2/(s+3)", "0"]], "P": [["1/(s+1)"], ["0"]],
//!   "output_order": [1, 2] }
//! ```
//!
//! `C2`, `D1` and `D2` are optional and default to zero. `output_order`
//! lists the original (1-based) output behind each row and defaults to the
//! identity.

use serde::{Deserialize, Serialize};

use super::DynamicalStructureFunction;
use crate::error::{Error, Result};
use crate::polyrat::{fmt_q, parse_rational, parse_rational_function, QMatrix, RationalMatrix};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDsf {
    p1: usize,
    p: usize,
    m: usize,
    #[serde(rename = "Q")]
    q: Vec<Vec<String>>,
    #[serde(rename = "P")]
    p_mat: Vec<Vec<String>>,
    #[serde(rename = "C2", default, skip_serializing_if = "Vec::is_empty")]
    c2: Vec<Vec<String>>,
    #[serde(rename = "D1", default, skip_serializing_if = "Vec::is_empty")]
    d1: Vec<Vec<String>>,
    #[serde(rename = "D2", default, skip_serializing_if = "Vec::is_empty")]
    d2: Vec<Vec<String>>,
    #[serde(default)]
    output_order: Vec<usize>,
}

fn rational_rows(rows: &[Vec<String>], shape: (usize, usize), name: &str) -> Result<RationalMatrix> {
    if rows.is_empty() {
        return Ok(RationalMatrix::zeros(shape.0, shape.1));
    }
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(Error::DimensionMismatch(format!("{name} must be {}x{}", shape.0, shape.1)));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|e| parse_rational_function(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if shape.1 == 0 {
        return Ok(RationalMatrix::zeros(shape.0, 0));
    }
    RationalMatrix::from_rows(parsed)
}

fn constant_rows(rows: &[Vec<String>], shape: (usize, usize), name: &str) -> Result<QMatrix> {
    if rows.is_empty() {
        return Ok(QMatrix::zeros(shape.0, shape.1));
    }
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(Error::DimensionMismatch(format!("{name} must be {}x{}", shape.0, shape.1)));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|e| parse_rational(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if shape.1 == 0 {
        return Ok(QMatrix::zeros(shape.0, 0));
    }
    QMatrix::from_rows(parsed)
}

pub fn parse_dsf(text: &str) -> Result<DynamicalStructureFunction> {
    let raw: RawDsf = serde_json::from_str(text)?;
    if raw.p1 > raw.p {
        return Err(Error::Invalid(format!("p1 = {} exceeds p = {}", raw.p1, raw.p)));
    }
    let p2 = raw.p - raw.p1;
    let mut d = DynamicalStructureFunction::from_parts(
        rational_rows(&raw.q, (raw.p1, raw.p1), "Q")?,
        rational_rows(&raw.p_mat, (raw.p1, raw.m), "P")?,
        constant_rows(&raw.c2, (p2, raw.p1), "C2")?,
        constant_rows(&raw.d1, (raw.p1, raw.m), "D1")?,
        constant_rows(&raw.d2, (p2, raw.m), "D2")?,
    )?;
    if !raw.output_order.is_empty() {
        let mut sorted = raw.output_order.clone();
        sorted.sort_unstable();
        if sorted != (1..=raw.p).collect::<Vec<_>>() {
            return Err(Error::Invalid("output_order must be a permutation of 1..=p".into()));
        }
        d.output_perm = raw.output_order.iter().map(|k| k - 1).collect();
    }
    if (0..raw.p1).any(|i| !d.q[(i, i)].is_zero()) {
        return Err(Error::Invalid("Q must have a zero diagonal".into()));
    }
    Ok(d)
}

fn q_rows(m: &QMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(fmt_q).collect()).collect()
}

fn nonzero_rows(m: &QMatrix) -> Vec<Vec<String>> {
    if m.is_zero() {
        Vec::new()
    } else {
        q_rows(m)
    }
}

pub fn dsf_to_json(d: &DynamicalStructureFunction) -> String {
    let raw = RawDsf {
        p1: d.p1(),
        p: d.outputs(),
        m: d.inputs(),
        q: d.q.to_string_rows(),
        p_mat: d.p.to_string_rows(),
        c2: nonzero_rows(&d.c2),
        d1: nonzero_rows(&d.d1),
        d2: nonzero_rows(&d.d2),
        output_order: d.output_perm.iter().map(|k| k + 1).collect(),
    };
    let mut text = serde_json::to_string_pretty(&raw).expect("json serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"p1":2,"p":3,"m":1,
            "Q":[["0","1/(s+1)"],["2/(s+3)","0"]],
            "P":[["1/(s+1)"],["0"]],
            "C2":[["1","-1/2"]],
            "output_order":[3,1,2]}"#;
        let d = parse_dsf(text).unwrap();
        assert_eq!(d.output_perm, vec![2, 0, 1]);
        let dumped = dsf_to_json(&d);
        assert_eq!(parse_dsf(&dumped).unwrap(), d);
    }

    #[test]
    fn rejects_nonzero_diagonal() {
        let text = r#"{"p1":1,"p":1,"m":1,"Q":[["1/s"]],"P":[["1"]]}"#;
        assert!(matches!(parse_dsf(text), Err(Error::Invalid(_))));
    }
}
