//! Exact maximum flow via Edmonds-Karp, plus a flow checker and an
//! exhaustive min-cut oracle for small graphs.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId, VertexSet};

/// Residual arcs with capacity at or below this are treated as saturated.
pub const DEFAULT_AUGMENT_TOL: f64 = 1e-12;

/// Vertex limit for [`brute_force_min_cut`].
pub const DEFAULT_ORACLE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlowError {
    #[error("source equals sink")]
    SourceEqualsSink,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph too large for oracle: {n} vertices exceeds limit {limit}")]
    TooLargeForOracle { n: usize, limit: usize },
}

/// A maximum flow together with the per-edge assignment that realises it.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowResult {
    pub value: f64,
    pub edge_flows: Vec<f64>,
    pub source: VertexId,
    pub sink: VertexId,
    pub augmentations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CutResult {
    pub capacity: f64,
    pub source_side: VertexSet,
}

fn check_terminals(g: &Graph, s: VertexId, t: VertexId) -> Result<(), FlowError> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(FlowError::SourceEqualsSink);
    }
    Ok(())
}

/// Maximum `s`-`t` flow by shortest augmenting paths, with the default
/// augmentation tolerance.
pub fn edmonds_karp(g: &Graph, s: VertexId, t: VertexId) -> Result<FlowResult, FlowError> {
    edmonds_karp_with_tol(g, s, t, DEFAULT_AUGMENT_TOL)
}

/// Maximum `s`-`t` flow; only paths whose bottleneck exceeds `tol` are
/// augmented.
///
/// Every edge `e` owns a forward residual arc `2e` and a reverse arc
/// `2e + 1`. Arcs are listed per vertex in edge-index order and BFS visits
/// them in that order, which makes the result bit-reproducible.
pub fn edmonds_karp_with_tol(g: &Graph, s: VertexId, t: VertexId, tol: f64) -> Result<FlowResult, FlowError> {
    check_terminals(g, s, t)?;

    let n = g.vertex_count();
    let edges = g.edges();
    let m = edges.len();

    let mut offsets = vec![0usize; n + 1];
    for e in edges {
        offsets[e.src + 1] += 1;
        offsets[e.dst + 1] += 1;
    }
    for v in 0..n {
        offsets[v + 1] += offsets[v];
    }
    let mut cursor = offsets.clone();
    let mut arcs = vec![0u32; 2 * m];
    for (i, e) in edges.iter().enumerate() {
        arcs[cursor[e.src]] = (2 * i) as u32;
        cursor[e.src] += 1;
        arcs[cursor[e.dst]] = (2 * i + 1) as u32;
        cursor[e.dst] += 1;
    }

    let mut flow = vec![0.0f64; m];
    let mut parent = vec![u32::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    let mut augmentations = 0usize;

    let head = |a: u32| -> VertexId {
        let e = &edges[(a >> 1) as usize];
        if a & 1 == 0 {
            e.dst
        } else {
            e.src
        }
    };
    let tail = |a: u32| -> VertexId {
        let e = &edges[(a >> 1) as usize];
        if a & 1 == 0 {
            e.src
        } else {
            e.dst
        }
    };
    let residual = |flow: &[f64], a: u32| -> f64 {
        let e = (a >> 1) as usize;
        if a & 1 == 0 {
            edges[e].capacity - flow[e]
        } else {
            flow[e]
        }
    };

    loop {
        parent.iter_mut().for_each(|p| *p = u32::MAX);
        queue.clear();
        queue.push_back(s);
        let mut reached = false;
        'bfs: while let Some(u) = queue.pop_front() {
            for &a in &arcs[offsets[u]..offsets[u + 1]] {
                let v = head(a);
                if v == s || parent[v] != u32::MAX || residual(&flow, a) <= tol {
                    continue;
                }
                parent[v] = a;
                if v == t {
                    reached = true;
                    break 'bfs;
                }
                queue.push_back(v);
            }
        }
        if !reached {
            break;
        }

        let mut bottleneck = f64::INFINITY;
        let mut v = t;
        while v != s {
            let a = parent[v];
            bottleneck = bottleneck.min(residual(&flow, a));
            v = tail(a);
        }
        let mut v = t;
        while v != s {
            let a = parent[v];
            let e = (a >> 1) as usize;
            if a & 1 == 0 {
                flow[e] = (flow[e] + bottleneck).min(edges[e].capacity);
            } else {
                flow[e] = (flow[e] - bottleneck).max(0.0);
            }
            v = tail(a);
        }
        augmentations += 1;
    }

    let value = net_outflow(g, &flow, s).max(0.0);
    Ok(FlowResult {
        value,
        edge_flows: flow,
        source: s,
        sink: t,
        augmentations,
    })
}

fn net_outflow(g: &Graph, flow: &[f64], v: VertexId) -> f64 {
    let mut out = 0.0;
    let mut inn = 0.0;
    for (e, f) in g.edges().iter().zip(flow) {
        if e.src == v {
            out += f;
        }
        if e.dst == v {
            inn += f;
        }
    }
    out - inn
}

/// Minimum `s`-`t` cut by enumerating every bipartition of the other
/// vertices. Exponential; limited to [`DEFAULT_ORACLE_LIMIT`] vertices.
pub fn brute_force_min_cut(g: &Graph, s: VertexId, t: VertexId) -> Result<CutResult, FlowError> {
    brute_force_min_cut_with_limit(g, s, t, DEFAULT_ORACLE_LIMIT)
}

pub fn brute_force_min_cut_with_limit(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    limit: usize,
) -> Result<CutResult, FlowError> {
    check_terminals(g, s, t)?;
    let n = g.vertex_count();
    if n > limit || n > 62 {
        return Err(FlowError::TooLargeForOracle { n, limit });
    }
    let others: Vec<VertexId> = (0..n).filter(|&v| v != s && v != t).collect();

    let mut best: Option<(f64, u64)> = None;
    for mask in 0u64..(1u64 << others.len()) {
        let mut side = 1u64 << s;
        for (bit, &v) in others.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                side |= 1u64 << v;
            }
        }
        let cut: f64 = g
            .edges()
            .iter()
            .filter(|e| side >> e.src & 1 == 1 && side >> e.dst & 1 == 0)
            .map(|e| e.capacity)
            .sum();
        if best.is_none_or(|(c, _)| cut < c) {
            best = Some((cut, side));
        }
    }
    let (capacity, side) = best.expect("at least one partition");
    Ok(CutResult {
        capacity,
        source_side: (0..n).filter(|&v| side >> v & 1 == 1).collect(),
    })
}

/// A broken flow constraint, as reported by [`check_flow`].
#[derive(Debug, Clone, PartialEq)]
pub enum FlowViolation {
    EdgeCountMismatch {
        expected: usize,
        found: usize,
    },
    NegativeFlow {
        edge: usize,
    },
    CapacityViolated {
        edge: usize,
    },
    ConservationViolated {
        vertex: VertexId,
    },
    ValueMismatch {
        reported: f64,
        source_net: f64,
        sink_net: f64,
    },
}

impl fmt::Display for FlowViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowViolation::EdgeCountMismatch { expected, found } => {
                write!(f, "edge count mismatch: graph has {expected}, flow has {found}")
            }
            FlowViolation::NegativeFlow { edge } => write!(f, "negative flow at edge {edge}"),
            FlowViolation::CapacityViolated { edge } => write!(f, "capacity violated at edge {edge}"),
            FlowViolation::ConservationViolated { vertex } => write!(f, "conservation violated at vertex {vertex}"),
            FlowViolation::ValueMismatch {
                reported,
                source_net,
                sink_net,
            } => write!(
                f,
                "value mismatch: reported {reported}, source net outflow {source_net}, sink net inflow {sink_net}"
            ),
        }
    }
}

/// Checks capacity bounds, conservation and the reported value of `r`
/// against `g`, each within `tol`.
pub fn check_flow(g: &Graph, r: &FlowResult, tol: f64) -> Vec<FlowViolation> {
    let mut out = Vec::new();
    if r.edge_flows.len() != g.edge_count() {
        out.push(FlowViolation::EdgeCountMismatch {
            expected: g.edge_count(),
            found: r.edge_flows.len(),
        });
        return out;
    }
    let n = g.vertex_count();
    let mut balance = vec![0.0f64; n];
    for (i, (e, &f)) in g.edges().iter().zip(&r.edge_flows).enumerate() {
        if f < -tol || !f.is_finite() {
            out.push(FlowViolation::NegativeFlow { edge: i });
        }
        if f > e.capacity + tol {
            out.push(FlowViolation::CapacityViolated { edge: i });
        }
        balance[e.src] -= f;
        balance[e.dst] += f;
    }
    for (v, b) in balance.iter().enumerate() {
        if v != r.source && v != r.sink && b.abs() > tol {
            out.push(FlowViolation::ConservationViolated { vertex: v });
        }
    }
    let source_net = if r.source < n { -balance[r.source] } else { f64::NAN };
    let sink_net = if r.sink < n { balance[r.sink] } else { f64::NAN };
    if !((r.value - source_net).abs() <= tol && (r.value - sink_net).abs() <= tol) {
        out.push(FlowViolation::ValueMismatch {
            reported: r.value,
            source_net,
            sink_net,
        });
    }
    out
}
