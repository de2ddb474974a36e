//! Directed capacitated graphs with a compressed out-adjacency index.
//!
//! Vertices are dense ids `0..n`. Edges keep their insertion order, and the
//! out-adjacency of every vertex lists its edge indices in ascending order,
//! so iteration order is a pure function of the edge list.

use std::fmt;

use thiserror::Error;

/// Vertex identifier. Always dense in `0..n` for the graph it belongs to.
pub type VertexId = usize;

/// A single directed edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    pub capacity: f64,
}

impl Edge {
    pub fn new(src: VertexId, dst: VertexId, capacity: f64) -> Self {
        Self { src, dst, capacity }
    }
}

impl From<(VertexId, VertexId, f64)> for Edge {
    fn from((src, dst, capacity): (VertexId, VertexId, f64)) -> Self {
        Self { src, dst, capacity }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("endpoint out of range at edge {edge}: ({src}, {dst}) with n = {n}")]
    EndpointOutOfRange {
        edge: usize,
        src: VertexId,
        dst: VertexId,
        n: usize,
    },
    #[error("negative capacity at edge {edge}: {capacity}")]
    NegativeCapacity { edge: usize, capacity: f64 },
    #[error("non-finite capacity at edge {edge}")]
    NonFiniteCapacity { edge: usize },
    #[error("self-loop at edge {edge} on vertex {vertex}")]
    SelfLoop { edge: usize, vertex: VertexId },
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
}

/// One broken [`Graph`] invariant, as reported by [`Graph::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    EndpointOutOfRange { edge: usize },
    NegativeCapacity { edge: usize },
    NonFiniteCapacity { edge: usize },
    SelfLoop { edge: usize },
    AdjacencyMismatch,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EndpointOutOfRange { edge } => write!(f, "endpoint out of range at edge {edge}"),
            Violation::NegativeCapacity { edge } => write!(f, "negative capacity at edge {edge}"),
            Violation::NonFiniteCapacity { edge } => write!(f, "non-finite capacity at edge {edge}"),
            Violation::SelfLoop { edge } => write!(f, "self-loop at edge {edge}"),
            Violation::AdjacencyMismatch => f.write_str("adjacency mismatch"),
        }
    }
}

/// Immutable directed graph with nonnegative real capacities.
///
/// Parallel edges are allowed; self-loops are not.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    // CSR out-adjacency: edge indices of vertex v are out_edges[offsets[v]..offsets[v + 1]].
    offsets: Vec<usize>,
    out_edges: Vec<usize>,
}

impl Graph {
    /// Builds a graph, rejecting any edge that breaks an invariant.
    pub fn new<I, E>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let edges: Vec<Edge> = edges.into_iter().map(Into::into).collect();
        for (i, e) in edges.iter().enumerate() {
            if e.src >= n || e.dst >= n {
                return Err(GraphError::EndpointOutOfRange {
                    edge: i,
                    src: e.src,
                    dst: e.dst,
                    n,
                });
            }
            if !e.capacity.is_finite() {
                return Err(GraphError::NonFiniteCapacity { edge: i });
            }
            if e.capacity < 0.0 {
                return Err(GraphError::NegativeCapacity {
                    edge: i,
                    capacity: e.capacity,
                });
            }
            if e.src == e.dst {
                return Err(GraphError::SelfLoop { edge: i, vertex: e.src });
            }
        }
        Ok(Self::from_checked_edges(n, edges))
    }

    /// Assembles a graph from raw parts without any checking.
    ///
    /// Intended for tests and tooling that need to inspect malformed graphs
    /// through [`Graph::validate`]; algorithms assume a valid graph.
    pub fn from_raw_parts(n: usize, edges: Vec<Edge>, offsets: Vec<usize>, out_edges: Vec<usize>) -> Self {
        Self {
            n,
            edges,
            offsets,
            out_edges,
        }
    }

    /// Builds the adjacency index for edges already known to be valid.
    pub(crate) fn from_checked_edges(n: usize, edges: Vec<Edge>) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for e in &edges {
            offsets[e.src + 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        let mut cursor = offsets.clone();
        let mut out_edges = vec![0usize; edges.len()];
        for (i, e) in edges.iter().enumerate() {
            out_edges[cursor[e.src]] = i;
            cursor[e.src] += 1;
        }
        Self {
            n,
            edges,
            offsets,
            out_edges,
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    /// Indices of the edges leaving `v`, ascending.
    #[inline]
    pub fn out_edge_indices(&self, v: VertexId) -> &[usize] {
        &self.out_edges[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.dst == v).count()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Lists every broken invariant. Empty means the graph is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.src >= self.n || e.dst >= self.n {
                out.push(Violation::EndpointOutOfRange { edge: i });
            }
            if !e.capacity.is_finite() {
                out.push(Violation::NonFiniteCapacity { edge: i });
            } else if e.capacity < 0.0 {
                out.push(Violation::NegativeCapacity { edge: i });
            }
            if e.src == e.dst {
                out.push(Violation::SelfLoop { edge: i });
            }
        }
        if !self.adjacency_consistent() {
            out.push(Violation::AdjacencyMismatch);
        }
        out
    }

    fn adjacency_consistent(&self) -> bool {
        if self.offsets.len() != self.n + 1
            || self.offsets[0] != 0
            || self.offsets[self.n] != self.out_edges.len()
            || self.out_edges.len() != self.edges.len()
            || self.offsets.windows(2).any(|w| w[0] > w[1])
        {
            return false;
        }
        let mut seen = vec![false; self.edges.len()];
        for v in 0..self.n {
            for &e in self.out_edge_indices(v) {
                if e >= self.edges.len() || seen[e] || self.edges[e].src != v {
                    return false;
                }
                seen[e] = true;
            }
        }
        true
    }

    /// Extracts the subgraph induced by `keep`.
    ///
    /// Kept vertices are relabeled densely in ascending order of their old
    /// ids. Surviving edges keep their relative order from `self`, so with
    /// `keep` covering every vertex the result equals `self`.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<(Graph, VertexMap), GraphError> {
        if let Some(&bad) = keep.members().last().filter(|&&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange { vertex: bad, n: self.n });
        }
        let map = VertexMap {
            old_ids: keep.members().to_vec(),
        };
        if keep.is_empty() {
            // A zero-vertex graph cannot be represented; callers never ask for one
            // through the sampler, which always keeps source and sink.
            return Err(GraphError::Empty);
        }

        let mut kept: Vec<usize> = Vec::new();
        for &u in keep.members() {
            for &e in self.out_edge_indices(u) {
                if keep.contains(self.edges[e].dst) {
                    kept.push(e);
                }
            }
        }
        kept.sort_unstable();

        let edges = kept
            .into_iter()
            .map(|e| {
                let edge = &self.edges[e];
                Edge {
                    src: map.to_new(edge.src).expect("source is kept"),
                    dst: map.to_new(edge.dst).expect("destination is kept"),
                    capacity: edge.capacity,
                }
            })
            .collect();
        Ok((Graph::from_checked_edges(keep.len(), edges), map))
    }
}

/// A set of vertex ids, stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexSet {
    members: Vec<VertexId>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every vertex of a graph with `n` vertices.
    pub fn all(n: usize) -> Self {
        Self {
            members: (0..n).collect(),
        }
    }

    pub fn members(&self) -> &[VertexId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Inserts `v`, returning `false` if it was already present.
    pub fn insert(&mut self, v: VertexId) -> bool {
        match self.members.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.members.insert(pos, v);
                true
            }
        }
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut members: Vec<VertexId> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self { members }
    }
}

/// Relabeling produced by [`Graph::induced_subgraph`]: new id `i` is the
/// `i`-th smallest kept old id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    old_ids: Vec<VertexId>,
}

impl VertexMap {
    pub fn to_new(&self, old: VertexId) -> Option<VertexId> {
        self.old_ids.binary_search(&old).ok()
    }

    pub fn to_old(&self, new: VertexId) -> Option<VertexId> {
        self.old_ids.get(new).copied()
    }

    pub fn len(&self) -> usize {
        self.old_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.old_ids.is_empty()
    }
}
