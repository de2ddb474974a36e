//! Maximum flow on large directed graphs, exact and by bootstrap
//! vertex subsampling.
//!
//! [`maxflow::edmonds_karp`] solves a graph exactly. For graphs too large
//! for that, [`sampler::bootstrap_flow`] repeatedly solves the subgraph
//! induced by a random `p`-fraction of the vertices (always keeping source
//! and sink), scales each result by `1/p`, and [`sampler::summarize`] turns
//! the scaled values into a point estimate with a normal confidence
//! interval.
//!
//! ```
//! use flowsample::generators::{erdos_renyi, ErConfig};
//! use flowsample::maxflow::edmonds_karp;
//! use flowsample::sampler::{bootstrap_flow, SampleConfig};
//!
//! let g = erdos_renyi(&ErConfig::new(60, 0.3, 7)).unwrap();
//! let exact = edmonds_karp(&g, 0, 1).unwrap().value;
//! let est = bootstrap_flow(&g, 0, 1, &SampleConfig::new(0.5, 50, 7)).unwrap();
//! let summary = est.summary();
//! assert!(summary.ci_low <= summary.mean && summary.mean <= summary.ci_high);
//! assert!(est.phi.iter().all(|&x| x <= exact / 0.5));
//! ```

pub mod generators;
pub mod graph;
pub mod io;
pub mod maxflow;
pub mod rng;
pub mod sampler;
pub mod stats;

pub use graph::{Edge, Graph, GraphError, VertexId, VertexMap, VertexSet};
pub use maxflow::{FlowError, FlowResult};
pub use sampler::{CiMode, EstimateSummary, SampleConfig, SampleError, SubsampleEstimate};
