//! Tuple file schema and gallery addressing.
//!
//! A tuple file is one JSON document:
//!
//! ```json
//! {
//!   "field": "real",
//!   "dim": 2,
//!   "d": 2,
//!   "matrices": [ [[[0.7,0.0],[1.0,0.0]], [[0.0,0.0],[0.7,0.0]]], ... ],
//!   "label": "optional name"
//! }
//! ```
//!
//! `matrices` holds `d` row-major `dim x dim` arrays; every entry is an
//! `[re, im]` pair, also for real tuples, so the layout never depends on
//! the field. A `"real"` field requires every imaginary part to be 0.
//!
//! Anywhere a file path is accepted, `gallery:NAME` (optionally
//! `gallery:NAME?key=value&key=value`) addresses a built-in example
//! instead.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use mpiso::linalg::matrix::{Matrix, C64};
use mpiso::{load_example, Error, OperatorTuple, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TupleFile {
    pub field: String,
    pub dim: usize,
    pub d: usize,
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl TupleFile {
    /// Validate the schema and build the commuting tuple. Errors name
    /// the offending operator (1-based) or pair.
    pub fn into_tuple(self) -> Result<(OperatorTuple, Option<String>)> {
        match self.field.as_str() {
            "real" | "complex" => {}
            other => {
                return Err(Error::invalid(format!(
                    "field must be \"real\" or \"complex\", got {other:?}"
                )))
            }
        }
        if self.matrices.len() != self.d {
            return Err(Error::invalid(format!(
                "header says d = {}, file holds {} matrices",
                self.d,
                self.matrices.len()
            )));
        }
        let n = self.dim;
        let mut ops = Vec::with_capacity(self.d);
        for (j, rows) in self.matrices.iter().enumerate() {
            if rows.len() != n {
                return Err(Error::invalid(format!(
                    "operator {} has {} rows, expected {n}",
                    j + 1,
                    rows.len()
                )));
            }
            for (r, row) in rows.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::invalid(format!(
                        "operator {} row {} has {} entries, expected {n}",
                        j + 1,
                        r + 1,
                        row.len()
                    )));
                }
                for (c, e) in row.iter().enumerate() {
                    if !e[0].is_finite() || !e[1].is_finite() {
                        return Err(Error::invalid(format!(
                            "operator {} entry ({},{}) is not finite",
                            j + 1,
                            r + 1,
                            c + 1
                        )));
                    }
                    if self.field == "real" && e[1] != 0.0 {
                        return Err(Error::invalid(format!(
                            "field is \"real\" but operator {} entry ({},{}) has \
                             imaginary part {}",
                            j + 1,
                            r + 1,
                            c + 1,
                            e[1]
                        )));
                    }
                }
            }
            ops.push(Matrix::from_fn(n, n, |r, c| {
                C64::new(rows[r][c][0], rows[r][c][1])
            }));
        }
        let tuple = OperatorTuple::new(ops)?;
        Ok((tuple, self.label))
    }

    pub fn from_tuple(tuple: &OperatorTuple, label: Option<String>) -> Self {
        let n = tuple.dim();
        let matrices = tuple
            .ops()
            .iter()
            .map(|op| {
                (0..n)
                    .map(|r| (0..n).map(|c| [op[(r, c)].re, op[(r, c)].im]).collect())
                    .collect()
            })
            .collect();
        TupleFile {
            field: if tuple.is_real() { "real" } else { "complex" }.into(),
            dim: n,
            d: tuple.len(),
            matrices,
            label,
        }
    }
}

pub fn parse_tuple_file(path: &Path) -> Result<(OperatorTuple, Option<String>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    let file: TupleFile = serde_json::from_str(&text)
        .map_err(|e| Error::invalid(format!("{} is not a valid tuple file: {e}", path.display())))?;
    file.into_tuple()
}

pub fn write_tuple_file(path: &Path, tuple: &OperatorTuple, label: Option<String>) -> Result<()> {
    let doc = TupleFile::from_tuple(tuple, label);
    let mut text = serde_json::to_string_pretty(&doc)
        .map_err(|e| Error::invalid(format!("serialization failed: {e}")))?;
    text.push('\n');
    std::fs::write(path, text)
        .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))
}

/// Resolve a SOURCE argument: `gallery:NAME[?k=v&...]` or a file path.
/// Returns the tuple plus a display label for reports.
pub fn resolve_source(source: &str) -> Result<(OperatorTuple, String)> {
    if let Some(rest) = source.strip_prefix("gallery:") {
        let (name, query) = match rest.split_once('?') {
            Some((n, q)) => (n, Some(q)),
            None => (rest, None),
        };
        let mut params = BTreeMap::new();
        if let Some(query) = query {
            for piece in query.split('&').filter(|s| !s.is_empty()) {
                let (k, v) = piece.split_once('=').ok_or_else(|| {
                    Error::invalid(format!(
                        "gallery parameter {piece:?} is not of the form key=value"
                    ))
                })?;
                params.insert(k.to_string(), v.to_string());
            }
        }
        let (tuple, spec) = load_example(name, &params)?;
        Ok((tuple, spec.name))
    } else {
        let path = Path::new(source);
        let (tuple, label) = parse_tuple_file(path)?;
        Ok((tuple, label.unwrap_or_else(|| source.to_string())))
    }
}
