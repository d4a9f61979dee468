//! The JSON file format for fixed point data.
//!
//! ```json
//! {
//!   "n": 2,
//!   "points": [
//!     { "phi": "0", "weights": [1, 2] },
//!     { "phi": "1", "weights": [-1, 1] },
//!     { "phi": "2", "weights": [-2, -1] }
//!   ]
//! }
//! ```
//!
//! Moment values are strings holding an integer or `p/q`; a bare JSON number
//! is accepted on input only when it is integral.

use serde::{Deserialize, Serialize};

use crate::data::{FixedPointData, StructureError};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointEntry {
    pub phi: Rat,
    pub weights: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub n: usize,
    pub points: Vec<PointEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocumentError {
    #[error("{path}: {message}")]
    Json { path: String, message: String },
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl DocumentError {
    /// The JSON path of a parse error, such as `points[1].phi`.
    pub fn path(&self) -> Option<&str> {
        match self {
            DocumentError::Json { path, .. } => Some(path),
            DocumentError::Structure(_) => None,
        }
    }
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: InputDocument = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            DocumentError::Json {
                path: if path == "." { "<root>".into() } else { path },
                message: e.into_inner().to_string(),
            }
        })?;
        Ok(doc)
    }

    /// Points are kept in file order; `P_i` is the `i`-th entry.
    pub fn to_data(&self) -> Result<FixedPointData, StructureError> {
        FixedPointData::new(
            self.n,
            self.points
                .iter()
                .map(|p| (p.phi.clone(), p.weights.clone()))
                .collect(),
        )
    }

    pub fn from_data(data: &FixedPointData, meta: Option<Meta>) -> Self {
        InputDocument {
            n: data.n(),
            points: data
                .points()
                .iter()
                .map(|p| PointEntry {
                    phi: p.moment_value().clone(),
                    weights: p.weights().to_vec(),
                })
                .collect(),
            meta,
        }
    }

    /// Sorts points by moment value and each weight list ascending.
    pub fn canonicalize(&mut self) {
        for p in &mut self.points {
            p.weights.sort_unstable();
        }
        self.points.sort_by(|a, b| a.phi.cmp(&b.phi));
    }

    /// Pretty-printed canonical JSON with a trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let mut doc = self.clone();
        doc.canonicalize();
        let mut out = serde_json::to_string_pretty(&doc).expect("document serializes");
        out.push('\n');
        out
    }
}

/// Reads and converts in one go.
pub fn parse_data(text: &str) -> Result<(InputDocument, FixedPointData), DocumentError> {
    let doc = InputDocument::parse(text)?;
    let data = doc.to_data()?;
    Ok((doc, data))
}
