//! Textual and JSON forms of ring elements, matrices and reports.
//!
//! Every number leaves the crate as a decimal string so that magnitudes never
//! pass through a float.

use serde_json::{json, Map, Value};

use crate::error::ParseError;
use crate::matrix::Matrix;
use crate::poly::{format_rational, parse_rational, RatPoly, RationalPolynomials};
use crate::quadratic::{parse_quad, QuadElem, QuadraticIntegers};
use crate::ring::{Integers, Ring};
use crate::smith::SnfResult;
use crate::spectrum::{PsdReport, RealRing, SpectrumPoint};

pub trait ElemCodec: Ring {
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, ParseError>;

    fn elem_to_json(&self, a: &Self::Elem) -> Value {
        Value::String(self.format_elem(a))
    }

    /// Accepts a string in the textual form, or a JSON integer.
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem, ParseError> {
        match v {
            Value::String(s) => self.parse_elem(s),
            Value::Number(n) if n.is_i64() || n.is_u64() => self.parse_elem(&n.to_string()),
            other => Err(ParseError::new(
                "",
                format!("expected a ring element, got {other}"),
            )),
        }
    }
}

impl ElemCodec for Integers {
    fn format_elem(&self, a: &num_bigint::BigInt) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<num_bigint::BigInt, ParseError> {
        s.trim()
            .parse()
            .map_err(|_| ParseError::new("", format!("invalid integer {s:?}")))
    }
}

impl ElemCodec for RationalPolynomials {
    fn format_elem(&self, a: &RatPoly) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<RatPoly, ParseError> {
        s.parse()
    }

    /// Also accepts the coefficient-array form, constant term first.
    fn elem_from_json(&self, v: &Value) -> Result<RatPoly, ParseError> {
        match v {
            Value::Array(items) => {
                let coeffs = items
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let text = match c {
                            Value::String(s) => s.clone(),
                            Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                            other => {
                                return Err(ParseError::new(
                                    format!("[{i}]"),
                                    format!("expected a rational string, got {other}"),
                                ))
                            }
                        };
                        parse_rational(&text).map_err(|e| e.within(&format!("[{i}]")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(RatPoly::new(coeffs))
            }
            Value::String(s) => self.parse_elem(s),
            Value::Number(n) if n.is_i64() || n.is_u64() => self.parse_elem(&n.to_string()),
            other => Err(ParseError::new(
                "",
                format!("expected a polynomial, got {other}"),
            )),
        }
    }
}

/// Coefficient-array JSON form of a polynomial.
pub fn poly_to_coeff_json(p: &RatPoly) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| Value::String(format_rational(c)))
            .collect(),
    )
}

impl ElemCodec for QuadraticIntegers {
    fn format_elem(&self, a: &QuadElem) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<QuadElem, ParseError> {
        parse_quad(s)
    }

    /// Also accepts `{"x": "...", "y": "..."}`.
    fn elem_from_json(&self, v: &Value) -> Result<QuadElem, ParseError> {
        match v {
            Value::Object(map) => {
                let coord = |k: &str| -> Result<num_bigint::BigInt, ParseError> {
                    match map.get(k) {
                        Some(Value::String(s)) => s
                            .trim()
                            .parse()
                            .map_err(|_| ParseError::new(k, format!("invalid integer {s:?}"))),
                        Some(Value::Number(n)) if n.is_i64() || n.is_u64() => {
                            Ok(n.to_string().parse().expect("integer literal"))
                        }
                        Some(other) => Err(ParseError::new(
                            k,
                            format!("expected an integer, got {other}"),
                        )),
                        None => Err(ParseError::new(k, "missing coordinate")),
                    }
                };
                Ok(QuadElem::new(coord("x")?, coord("y")?))
            }
            Value::String(s) => self.parse_elem(s),
            Value::Number(n) if n.is_i64() || n.is_u64() => self.parse_elem(&n.to_string()),
            other => Err(ParseError::new(
                "",
                format!("expected a quadratic integer, got {other}"),
            )),
        }
    }
}

/// Coordinate JSON form of a quadratic integer.
pub fn quad_to_coord_json(a: &QuadElem) -> Value {
    json!({"x": a.x.to_string(), "y": a.y.to_string()})
}

/// Anything the CLI and the verifier can drive end to end.
pub trait SupportedRing: RealRing + ElemCodec + crate::rng::RandomElement {}

impl<T: RealRing + ElemCodec + crate::rng::RandomElement> SupportedRing for T {}

pub fn matrix_to_json<R: RealRing + ElemCodec>(ring: &R, m: &Matrix<R::Elem>) -> Value {
    json!({
        "ring": ring.spec().to_string(),
        "rows": m.rows().to_string(),
        "cols": m.cols().to_string(),
        "entries": entries_to_json(ring, m),
    })
}

fn entries_to_json<R: ElemCodec>(ring: &R, m: &Matrix<R::Elem>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|e| ring.elem_to_json(e)).collect()))
            .collect(),
    )
}

/// Reads either the full matrix object or a bare array of rows.
pub fn matrix_from_json<R: RealRing + ElemCodec>(
    ring: &R,
    v: &Value,
) -> Result<Matrix<R::Elem>, ParseError> {
    let (entries, shape) = match v {
        Value::Array(_) => (v, None),
        Value::Object(map) => {
            if let Some(r) = map.get("ring") {
                let name = r
                    .as_str()
                    .ok_or_else(|| ParseError::new("ring", "expected a string"))?;
                let spec: crate::ring::RingSpec = name
                    .parse()
                    .map_err(|e: crate::error::RingError| ParseError::new("ring", e.to_string()))?;
                if spec != ring.spec() {
                    return Err(ParseError::new(
                        "ring",
                        format!(
                            "matrix is over {spec} but the selected ring is {}",
                            ring.spec()
                        ),
                    ));
                }
            }
            let dim = |k: &str| -> Result<Option<usize>, ParseError> {
                match map.get(k) {
                    None => Ok(None),
                    Some(Value::Number(n)) => n
                        .as_u64()
                        .map(|n| Some(n as usize))
                        .ok_or_else(|| ParseError::new(k, "expected a nonnegative integer")),
                    Some(Value::String(s)) => s
                        .parse()
                        .map(Some)
                        .map_err(|_| ParseError::new(k, "expected a nonnegative integer")),
                    Some(_) => Err(ParseError::new(k, "expected a nonnegative integer")),
                }
            };
            let entries = map
                .get("entries")
                .ok_or_else(|| ParseError::new("entries", "missing field"))?;
            (entries, Some((dim("rows")?, dim("cols")?)))
        }
        other => {
            return Err(ParseError::new(
                "",
                format!("expected a matrix, got {other}"),
            ))
        }
    };
    let rows = entries
        .as_array()
        .ok_or_else(|| ParseError::new("entries", "expected an array of rows"))?;
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.as_array()
                .ok_or_else(|| ParseError::new(format!("entries[{i}]"), "expected an array"))?
                .iter()
                .enumerate()
                .map(|(j, e)| {
                    ring.elem_from_json(e)
                        .map_err(|err| err.within(&format!("entries[{i}][{j}]")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if parsed.is_empty() {
        return Err(ParseError::new(
            "entries",
            "matrix must have at least one row",
        ));
    }
    let m = Matrix::from_rows(parsed).map_err(|e| ParseError::new("entries", e.to_string()))?;
    if m.cols() == 0 {
        return Err(ParseError::new(
            "entries",
            "matrix must have at least one column",
        ));
    }
    if let Some((r, c)) = shape {
        if r.is_some_and(|r| r != m.rows()) {
            return Err(ParseError::new(
                "rows",
                format!("declared {} but found {}", r.unwrap(), m.rows()),
            ));
        }
        if c.is_some_and(|c| c != m.cols()) {
            return Err(ParseError::new(
                "cols",
                format!("declared {} but found {}", c.unwrap(), m.cols()),
            ));
        }
    }
    Ok(m)
}

pub fn snf_to_json<R: RealRing + ElemCodec>(ring: &R, s: &SnfResult<R::Elem>) -> Value {
    json!({
        "ring": ring.spec().to_string(),
        "diagonals": s.diagonals.iter().map(|e| ring.elem_to_json(e)).collect::<Vec<_>>(),
        "rank": s.rank().to_string(),
        "P": matrix_to_json(ring, &s.p),
        "D": matrix_to_json(ring, &s.d),
        "Q": matrix_to_json(ring, &s.q),
    })
}

pub fn psd_report_to_json(report: &PsdReport) -> Value {
    let witness = report.witness.as_ref().map(|w| {
        let mut map = Map::new();
        map.insert(
            "minor_rows".into(),
            Value::Array(
                w.minor_rows
                    .iter()
                    .map(|i| Value::String(i.to_string()))
                    .collect(),
            ),
        );
        let (embedding, point) = match &w.at {
            SpectrumPoint::Integers => (Value::Null, Value::Null),
            SpectrumPoint::Point(t) => (Value::Null, Value::String(format_rational(t))),
            SpectrumPoint::Embedding(e) => (Value::String(e.to_string()), Value::Null),
        };
        map.insert("embedding".into(), embedding);
        map.insert("point".into(), point);
        Value::Object(map)
    });
    json!({
        "is_psd": report.is_psd,
        "witness": witness,
    })
}
