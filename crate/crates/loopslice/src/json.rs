//! JSON interchange for Laurent series, matrices, lattice pairs and slice
//! points. Rationals travel as strings `"p/q"` (or `"p"` when integral).

use loopslice_core::exactnum::parse_rational;
use loopslice_core::lattice::{Context, FMatrix, LatticePair};
use loopslice_core::slodowy::SlicePoint;
use loopslice_core::{Poly, QMatrix, Rational, TruncatedLaurent};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("not a rational number: {0}")]
    Rational(String),
    #[error("{0}")]
    Shape(String),
}

pub type FormatResult<T> = Result<T, FormatError>;

/// `Σ coeffs[i] t^{val+i} + O(t^prec)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LaurentJson {
    pub val: i64,
    pub coeffs: Vec<String>,
    /// Falls back to the run precision when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prec: Option<i64>,
}

impl LaurentJson {
    pub fn from_laurent(x: &TruncatedLaurent) -> Self {
        LaurentJson {
            val: x.raw_val(),
            coeffs: x.coeffs().iter().map(rational_str).collect(),
            prec: Some(x.precision()),
        }
    }

    pub fn to_laurent(&self, default_prec: i64) -> FormatResult<TruncatedLaurent> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| rational(c))
            .collect::<FormatResult<Vec<_>>>()?;
        Ok(TruncatedLaurent::new(
            self.val,
            coeffs,
            self.prec.unwrap_or(default_prec),
        ))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    /// Row-major nested rows.
    pub entries: Vec<Vec<LaurentJson>>,
}

impl MatrixJson {
    pub fn from_matrix(a: &FMatrix) -> Self {
        MatrixJson {
            rows: a.rows(),
            cols: a.cols(),
            entries: (0..a.rows())
                .map(|i| {
                    (0..a.cols())
                        .map(|j| LaurentJson::from_laurent(&a[(i, j)]))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_matrix(&self, default_prec: i64) -> FormatResult<FMatrix> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(FormatError::Shape(format!(
                "entries do not form a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| e.to_laurent(default_prec))
                    .collect::<FormatResult<Vec<_>>>()
            })
            .collect::<FormatResult<Vec<_>>>()?;
        FMatrix::from_rows(rows).map_err(|e| FormatError::Shape(e.to_string()))
    }
}

/// `{"v": …, "vstar": …}`; `vstar` is omitted for symplectic-orthogonal pairs.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PairJson {
    pub v: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vstar: Option<MatrixJson>,
}

impl PairJson {
    pub fn from_pair(p: &LatticePair) -> Self {
        let vstar = match p.context {
            Context::Gl { .. } => Some(MatrixJson::from_matrix(&p.vstar)),
            Context::Osp { .. } => None,
        };
        PairJson {
            v: MatrixJson::from_matrix(&p.v),
            vstar,
        }
    }
}

pub fn read_input(path: &str) -> FormatResult<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|source| {
            FormatError::Io {
                path: path.into(),
                source,
            }
        })?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|source| FormatError::Io {
            path: path.into(),
            source,
        })
    }
}

pub fn parse_pair(text: &str) -> FormatResult<PairJson> {
    Ok(serde_json::from_str(text)?)
}

pub fn rational_str(r: &Rational) -> String {
    r.to_string()
}

pub fn rational(s: &str) -> FormatResult<Rational> {
    parse_rational(s.trim()).ok_or_else(|| FormatError::Rational(s.into()))
}

fn rational_value(v: &Value) -> FormatResult<Rational> {
    match v {
        Value::String(s) => rational(s),
        Value::Number(n) if n.is_i64() => {
            Ok(Rational::from_integer(n.as_i64().unwrap_or(0).into()))
        }
        other => Err(FormatError::Rational(other.to_string())),
    }
}

/// A JSON array of rationals: numbers or `"p/q"` strings.
pub fn rational_list(text: &str) -> FormatResult<Vec<Rational>> {
    match serde_json::from_str::<Value>(text)? {
        Value::Array(items) => items.iter().map(rational_value).collect(),
        other => Err(FormatError::Shape(format!(
            "expected an array, got {other}"
        ))),
    }
}

pub fn rational_matrix(text: &str) -> FormatResult<QMatrix> {
    let rows = match serde_json::from_str::<Value>(text)? {
        Value::Array(rows) => rows,
        other => {
            return Err(FormatError::Shape(format!(
                "expected an array of rows, got {other}"
            )))
        }
    };
    let parsed = rows
        .iter()
        .map(|r| match r {
            Value::Array(items) => items
                .iter()
                .map(rational_value)
                .collect::<FormatResult<Vec<_>>>(),
            other => Err(FormatError::Shape(format!("expected a row, got {other}"))),
        })
        .collect::<FormatResult<Vec<_>>>()?;
    let cols = parsed.first().map_or(0, Vec::len);
    if parsed.iter().any(|r| r.len() != cols) {
        return Err(FormatError::Shape("ragged matrix".into()));
    }
    Ok(QMatrix::from_rows(parsed))
}

/// Ascending coefficient list.
pub fn poly(text: &str) -> FormatResult<Poly> {
    Ok(Poly::new(rational_list(text)?))
}

pub fn poly_json(p: &Poly) -> Value {
    json!({
        "coeffs": p.coeffs().iter().map(rational_str).collect::<Vec<_>>(),
        "display": p.to_string(),
    })
}

pub fn qmatrix_json(a: &QMatrix) -> Value {
    Value::Array(
        (0..a.rows())
            .map(|i| {
                Value::Array(
                    a.row(i)
                        .iter()
                        .map(|c| Value::String(rational_str(c)))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn point_json(p: &SlicePoint) -> Value {
    let strs = |v: &[Rational]| v.iter().map(rational_str).collect::<Vec<_>>();
    json!({
        "n": p.n,
        "m": p.m,
        "x": qmatrix_json(&p.x),
        "v": strs(&p.v),
        "vstar": strs(&p.vstar),
        "a": strs(&p.a),
    })
}
