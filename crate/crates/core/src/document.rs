//! JSON document describing a complex by its maximal faces:
//!
//! ```json
//! {"m": 4, "maximal_faces": [[1, 2], [2, 3], [4]]}
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::graph::MAX_VERTICES;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub m: usize,
    pub maximal_faces: Vec<Vec<usize>>,
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
        })
    }

    /// Checks vertex ranges against `max_vertices` (at most 24) and builds
    /// the complex.
    pub fn to_complex_bounded(&self, max_vertices: usize) -> Result<SimplicialComplex, DocumentError> {
        let max = max_vertices.min(MAX_VERTICES);
        if !(1..=max).contains(&self.m) {
            return Err(DocumentError::Invalid {
                path: "m".into(),
                message: format!("vertex count {} outside 1..={max}", self.m),
            });
        }
        for (f, face) in self.maximal_faces.iter().enumerate() {
            for (p, &v) in face.iter().enumerate() {
                if !(1..=self.m).contains(&v) {
                    return Err(DocumentError::Invalid {
                        path: format!("maximal_faces[{f}][{p}]"),
                        message: format!("vertex {v} outside 1..={}", self.m),
                    });
                }
            }
        }
        SimplicialComplex::from_maximal_faces(self.m, &self.maximal_faces)
            .map_err(|e| DocumentError::Invalid { path: "maximal_faces".into(), message: e.to_string() })
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex, DocumentError> {
        self.to_complex_bounded(MAX_VERTICES)
    }

    /// Maximal faces of `k`; only meaningful when `k` has all of `1..=m`
    /// as vertices.
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexDocument {
            m: k.ambient_dim(),
            maximal_faces: k.maximal_faces().iter().map(|f| f.to_vec()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }
}
