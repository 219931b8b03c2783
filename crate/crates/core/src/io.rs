//! Matrix documents: JSON, CSV and PBM (P1).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::TriangularMatrix;
use crate::rational::ExactRational;

/// `{"kind", "q", "phi", "size", "rows"}`; row `n` holds `n + 1` entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub kind: String,
    pub q: Option<i64>,
    pub phi: Option<ExactRational>,
    pub size: usize,
    pub rows: Vec<Vec<ExactRational>>,
}

impl MatrixDocument {
    pub fn new(kind: impl Into<String>, q: Option<i64>, phi: Option<ExactRational>, matrix: &TriangularMatrix) -> Self {
        Self {
            kind: kind.into(),
            q,
            phi,
            size: matrix.size(),
            rows: matrix.rows().to_vec(),
        }
    }

    pub fn to_matrix(&self) -> Result<TriangularMatrix> {
        if self.rows.len() != self.size {
            return Err(Error::Parse(format!(
                "size {} but {} rows",
                self.size,
                self.rows.len()
            )));
        }
        TriangularMatrix::from_rows(self.rows.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Lower triangle, one comma-separated row per line.
pub fn to_csv(matrix: &TriangularMatrix) -> String {
    let mut out = String::new();
    for row in matrix.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn from_csv(text: &str) -> Result<TriangularMatrix> {
    let rows = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(|cell| cell.trim().parse()).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    TriangularMatrix::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))
}

/// Plain PBM: `1` for a nonzero entry, `0` elsewhere including above the
/// diagonal.
pub fn to_pbm(matrix: &TriangularMatrix) -> String {
    let n = matrix.size();
    let mut out = String::with_capacity(16 + n * (n + 1));
    writeln!(out, "P1\n{n} {n}").expect("write to string");
    for r in 0..n {
        for c in 0..n {
            out.push(if c <= r && !matrix.get(r, c).is_zero() { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}
