//! File formats: the line-oriented facet-list text format and the
//! structured JSON document.
//!
//! Facet-list text: each nonempty, non-comment line is one facet given as
//! whitespace-separated integer labels; `#` starts a comment to end of
//! line; blank lines are ignored; the dimension is inferred and mixed
//! cardinalities are a load error.
//!
//! Structured documents carry `dim`, `facets`, and an optional `names`
//! table mapping labels to display strings. `load(save(c)) = c` exactly.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Complex, ComplexError};
use crate::simplex::{Simplex, VertexId};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("structured document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("structured document: dim {stated} does not match facets of dimension {actual}")]
    DimMismatch { stated: usize, actual: usize },
}

/// A complex plus its optional display-name table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub complex: Complex,
    pub names: BTreeMap<VertexId, String>,
}

impl Document {
    pub fn bare(complex: Complex) -> Self {
        Document {
            complex,
            names: BTreeMap::new(),
        }
    }
}

/// Parses the facet-list text format.
pub fn parse_facets(text: &str) -> Result<Complex, LoadError> {
    let mut facets: Vec<Vec<u32>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let labels: Result<Vec<u32>, _> = line.split_whitespace().map(str::parse).collect();
        let labels = labels.map_err(|_| LoadError::Parse {
            line: i + 1,
            msg: "vertex label is not a non-negative integer".to_string(),
        })?;
        facets.push(labels);
    }
    Ok(Complex::from_facets(facets)?)
}

/// Renders the facet-list text format: one facet per line, lexicographic
/// order, stable across runs and platforms.
pub fn format_facets(c: &Complex) -> String {
    let mut out = String::new();
    for f in c.facets() {
        let labels: Vec<String> = f.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
struct DocumentRepr {
    dim: usize,
    facets: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    names: Option<BTreeMap<u32, String>>,
}

/// Serializes a structured document as JSON.
pub fn to_json(doc: &Document) -> String {
    let repr = DocumentRepr {
        dim: doc.complex.dim(),
        facets: doc
            .complex
            .facets()
            .iter()
            .map(|f| f.vertices().iter().map(|v| v.0).collect())
            .collect(),
        names: if doc.names.is_empty() {
            None
        } else {
            Some(doc.names.iter().map(|(v, n)| (v.0, n.clone())).collect())
        },
    };
    let mut text = serde_json::to_string_pretty(&repr).expect("document serializes");
    text.push('\n');
    text
}

/// Parses a structured JSON document.
pub fn from_json(text: &str) -> Result<Document, LoadError> {
    let repr: DocumentRepr = serde_json::from_str(text)?;
    let complex = Complex::from_facets(repr.facets)?;
    if complex.dim() != repr.dim {
        return Err(LoadError::DimMismatch {
            stated: repr.dim,
            actual: complex.dim(),
        });
    }
    Ok(Document {
        complex,
        names: repr
            .names
            .unwrap_or_default()
            .into_iter()
            .map(|(v, n)| (VertexId(v), n))
            .collect(),
    })
}

/// Loads a document from a path: `.json` selects the structured format,
/// anything else the facet-list text format.
pub fn load(path: &Path) -> Result<Document, LoadError> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        from_json(&text)
    } else {
        Ok(Document::bare(parse_facets(&text)?))
    }
}

/// Saves a document to a path, selecting the format by extension as in
/// [`load`].
pub fn save(path: &Path, doc: &Document) -> Result<(), LoadError> {
    let text = if path.extension().is_some_and(|e| e == "json") {
        to_json(doc)
    } else {
        format_facets(&doc.complex)
    };
    std::fs::write(path, text)?;
    Ok(())
}

/// Convenience: renders one simplex as space-separated labels.
pub fn simplex_labels(s: &Simplex) -> String {
    s.vertices()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
