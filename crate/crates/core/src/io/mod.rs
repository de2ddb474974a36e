//! Graph file ingestion and result serialization.

mod edge_list;
mod matrix_market;
mod record;

use std::borrow::Cow;
use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Graph, VertexId};

pub use edge_list::{parse_edge_list, write_edge_list};
pub use matrix_market::parse_matrix_market;
pub use record::{
    read_run_record, read_run_records, write_run_record, write_run_records, OutputFormat, RunRecord, CSV_COLUMNS,
};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: negative weight {weight}")]
    NegativeWeight { line: usize, weight: f64 },
    #[error("line {line}: declared vertex count {count} exceeds limit {MAX_DECLARED_VERTICES}")]
    TooManyVertices { line: usize, count: usize },
    #[error("file contains no edges and declares no vertices")]
    NoVertices,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl ParseError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            message: message.into(),
        }
    }

    /// 1-based line the error refers to, if any.
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::NegativeWeight { line, .. }
            | ParseError::TooManyVertices { line, .. } => Some(*line),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParseOptions {
    /// When false every entry also yields the reverse arc.
    pub directed: bool,
    /// Capacity for entries without a weight.
    pub default_capacity: f64,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self {
            directed: true,
            default_capacity: 1.0,
        }
    }
}

impl ParseOptions {
    pub fn undirected() -> Self {
        Self {
            directed: false,
            ..Self::default()
        }
    }
}

/// Largest vertex count a file may declare up front.
pub const MAX_DECLARED_VERTICES: usize = 1 << 26;

/// Bijection between file labels and dense vertex ids.
///
/// Ids below `dense` are labelled by the decimal form of `id + base`
/// without storing strings; this is how MatrixMarket indices and declared
/// vertex counts are represented. Further labels are interned in order of
/// first sight.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelMap {
    dense: usize,
    base: usize,
    extra: Vec<String>,
    ids: HashMap<String, VertexId>,
}

impl LabelMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Labels `"0"`, `"1"`, ..., `"n-1"` for ids `0..n`.
    pub fn identity(n: usize) -> Self {
        Self::dense(n, 0)
    }

    /// Labels `base`, `base + 1`, ... for ids `0..n`.
    pub fn dense(n: usize, base: usize) -> Self {
        Self {
            dense: n,
            base,
            ..Self::default()
        }
    }

    fn dense_id(&self, label: &str) -> Option<VertexId> {
        canonical_index(label)
            .and_then(|v| v.checked_sub(self.base))
            .filter(|&v| v < self.dense)
    }

    /// Id of `label`, assigning the next free id on first sight.
    pub fn intern(&mut self, label: &str) -> VertexId {
        if let Some(id) = self.id(label) {
            return id;
        }
        let id = self.len();
        self.extra.push(label.to_owned());
        self.ids.insert(label.to_owned(), id);
        id
    }

    pub fn id(&self, label: &str) -> Option<VertexId> {
        if let Some(v) = self.dense_id(label) {
            return Some(v);
        }
        self.ids.get(label).copied()
    }

    pub fn label(&self, id: VertexId) -> Option<Cow<'_, str>> {
        if id < self.dense {
            Some(Cow::Owned((id + self.base).to_string()))
        } else {
            self.extra.get(id - self.dense).map(|s| Cow::Borrowed(s.as_str()))
        }
    }

    pub fn len(&self) -> usize {
        self.dense + self.extra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when both directions of the mapping agree.
    pub fn is_bijective(&self) -> bool {
        self.extra.len() == self.ids.len()
            && self
                .extra
                .iter()
                .enumerate()
                .all(|(i, l)| self.ids.get(l) == Some(&(self.dense + i)) && self.dense_id(l).is_none())
    }
}

/// The value of a label written as a plain decimal without sign or leading
/// zeros.
fn canonical_index(label: &str) -> Option<usize> {
    if label.is_empty() || (label.len() > 1 && label.starts_with('0')) || !label.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    label.parse().ok()
}

/// A parsed graph together with its labels.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub labels: LabelMap,
    /// Entries dropped because both endpoints were the same vertex.
    pub skipped_self_loops: usize,
}

pub(crate) fn parse_weight(token: &str, line: usize) -> Result<f64, ParseError> {
    let w: f64 = token
        .parse()
        .map_err(|_| ParseError::syntax(line, format!("non-numeric weight '{token}'")))?;
    if !w.is_finite() {
        return Err(ParseError::syntax(line, format!("non-finite weight '{token}'")));
    }
    if w < 0.0 {
        return Err(ParseError::NegativeWeight { line, weight: w });
    }
    Ok(w)
}
