//! Erdős–Rényi graphs and random source/sink selection.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, VertexId};
use crate::rng::{self, Purpose};

/// Below this edge probability generation skips geometrically instead of
/// flipping a coin for every ordered pair.
pub const SPARSE_THRESHOLD: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("need at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("edge probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),
    #[error("invalid capacity specification: {0}")]
    InvalidCapacity(String),
}

/// How edge capacities are assigned.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapacitySpec {
    #[default]
    Unit,
    Constant(f64),
    Uniform {
        lo: f64,
        hi: f64,
    },
}

impl CapacitySpec {
    pub fn validate(&self) -> Result<(), GenError> {
        match *self {
            CapacitySpec::Unit => Ok(()),
            CapacitySpec::Constant(c) if c.is_finite() && c >= 0.0 => Ok(()),
            CapacitySpec::Uniform { lo, hi } if lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi => Ok(()),
            other => Err(GenError::InvalidCapacity(other.to_string())),
        }
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            CapacitySpec::Unit => 1.0,
            CapacitySpec::Constant(c) => c,
            CapacitySpec::Uniform { lo, hi } if lo == hi => lo,
            CapacitySpec::Uniform { lo, hi } => rng.random_range(lo..=hi),
        }
    }
}

/// Renders as `unit`, `const:C` or `unif:LO,HI`, the form accepted by
/// [`CapacitySpec::from_str`].
impl fmt::Display for CapacitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CapacitySpec::Unit => f.write_str("unit"),
            CapacitySpec::Constant(c) => write!(f, "const:{c}"),
            CapacitySpec::Uniform { lo, hi } => write!(f, "unif:{lo},{hi}"),
        }
    }
}

impl FromStr for CapacitySpec {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GenError::InvalidCapacity(s.to_string());
        let spec = if s == "unit" {
            CapacitySpec::Unit
        } else if let Some(c) = s.strip_prefix("const:") {
            CapacitySpec::Constant(c.trim().parse().map_err(|_| bad())?)
        } else if let Some(range) = s.strip_prefix("unif:") {
            let (lo, hi) = range.split_once(',').ok_or_else(bad)?;
            CapacitySpec::Uniform {
                lo: lo.trim().parse().map_err(|_| bad())?,
                hi: hi.trim().parse().map_err(|_| bad())?,
            }
        } else {
            return Err(bad());
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErConfig {
    pub n: usize,
    pub pi: f64,
    pub capacity: CapacitySpec,
    pub seed: u64,
}

impl ErConfig {
    /// Unit-capacity configuration.
    pub fn new(n: usize, pi: f64, seed: u64) -> Self {
        Self {
            n,
            pi,
            capacity: CapacitySpec::Unit,
            seed,
        }
    }

    pub fn with_capacity(mut self, capacity: CapacitySpec) -> Self {
        self.capacity = capacity;
        self
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.n < 2 {
            return Err(GenError::TooFewVertices(self.n));
        }
        if !(0.0..=1.0).contains(&self.pi) {
            return Err(GenError::InvalidProbability(self.pi));
        }
        self.capacity.validate()
    }
}

/// Directed G(n, π): every ordered pair `(u, v)` with `u != v` carries an
/// edge independently with probability π. Edges come out sorted by
/// `(u, v)`.
pub fn erdos_renyi(config: &ErConfig) -> Result<Graph, GenError> {
    config.validate()?;
    let n = config.n;
    let pi = config.pi;
    let mut rng = rng::stream(config.seed, Purpose::GraphGeneration, 0);
    let mut edges = Vec::with_capacity(((n * (n - 1)) as f64 * pi * 1.05) as usize + 16);

    if pi >= SPARSE_THRESHOLD {
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.random_bool(pi) {
                    edges.push(Edge::new(u, v, config.capacity.draw(&mut rng)));
                }
            }
        }
    } else if pi > 0.0 {
        // Slot k enumerates ordered pairs row-major with the diagonal removed.
        let slots = (n as u64) * (n as u64 - 1);
        let skip = Geometric::new(pi).expect("probability validated");
        let mut k: u64 = 0;
        loop {
            k = match k.checked_add(skip.sample(&mut rng)) {
                Some(k) if k < slots => k,
                _ => break,
            };
            let (u, v) = slot_to_pair(k, n);
            edges.push(Edge::new(u, v, config.capacity.draw(&mut rng)));
            k += 1;
        }
    }
    Ok(Graph::from_checked_edges(n, edges))
}

/// Ordered pair for slot `k` of the row-major enumeration of
/// off-diagonal pairs.
fn slot_to_pair(k: u64, n: usize) -> (VertexId, VertexId) {
    let u = (k / (n as u64 - 1)) as usize;
    let r = (k % (n as u64 - 1)) as usize;
    (u, if r >= u { r + 1 } else { r })
}

/// Uniformly random ordered pair of distinct vertices.
pub fn pick_source_sink<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<(VertexId, VertexId), GenError> {
    if n < 2 {
        return Err(GenError::TooFewVertices(n));
    }
    let s = rng.random_range(0..n);
    let mut t = rng.random_range(0..n - 1);
    if t >= s {
        t += 1;
    }
    Ok((s, t))
}
