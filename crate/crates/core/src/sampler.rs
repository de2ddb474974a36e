//! Bootstrap vertex-subsampling estimator of the maximum flow.
//!
//! Each bootstrap iteration keeps a uniformly random `⌈p·|V|⌉`-vertex subset
//! that always contains the source and sink, solves max flow exactly on the
//! induced subgraph, and scales the result by `1/p`. The `B` scaled values
//! are summarised by their mean and a normal-approximation interval.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId, VertexSet};
use crate::maxflow::{edmonds_karp, FlowError};
use crate::rng::{self, Purpose};
use crate::stats::two_sided_z;

pub const DEFAULT_CI_LEVEL: f64 = 0.95;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SampleError {
    #[error("subsample proportion must lie in (0, 1], got {0}")]
    InvalidProportion(f64),
    #[error("bootstrap sample count must be at least 1")]
    NoSamples,
    #[error("confidence level must lie in (0, 1), got {0}")]
    InvalidCiLevel(f64),
    #[error("subsample too small to contain source and sink (graph has {0} vertices)")]
    SubsampleTooSmall(usize),
    #[error("cannot summarise an empty sample")]
    EmptySample,
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which spread the confidence interval describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum CiMode {
    /// `mean ± z·sd`: the spread of the individual bootstrap values.
    #[default]
    #[serde(rename = "spread")]
    SampleSpread,
    /// `mean ± z·sd/√B`: the uncertainty of the mean.
    #[serde(rename = "stderr")]
    StandardError,
}

impl fmt::Display for CiMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CiMode::SampleSpread => "spread",
            CiMode::StandardError => "stderr",
        })
    }
}

impl FromStr for CiMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "spread" | "sample-spread" => Ok(CiMode::SampleSpread),
            "stderr" | "standard-error" => Ok(CiMode::StandardError),
            other => Err(format!("unknown ci mode '{other}' (expected spread or stderr)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    /// Fraction of vertices kept per iteration, in (0, 1].
    pub p: f64,
    /// Number of bootstrap iterations `B`.
    pub samples: usize,
    pub seed: u64,
    pub ci_level: f64,
    pub ci_mode: CiMode,
}

impl SampleConfig {
    pub fn new(p: f64, samples: usize, seed: u64) -> Self {
        Self {
            p,
            samples,
            seed,
            ci_level: DEFAULT_CI_LEVEL,
            ci_mode: CiMode::default(),
        }
    }

    pub fn with_ci(mut self, level: f64, mode: CiMode) -> Self {
        self.ci_level = level;
        self.ci_mode = mode;
        self
    }

    pub fn validate(&self) -> Result<(), SampleError> {
        check_proportion(self.p)?;
        if self.samples == 0 {
            return Err(SampleError::NoSamples);
        }
        check_level(self.ci_level)
    }
}

fn check_proportion(p: f64) -> Result<(), SampleError> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(SampleError::InvalidProportion(p))
    }
}

fn check_level(level: f64) -> Result<(), SampleError> {
    if level > 0.0 && level < 1.0 {
        Ok(())
    } else {
        Err(SampleError::InvalidCiLevel(level))
    }
}

/// The `B` scaled bootstrap flows of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsampleEstimate {
    pub phi: Vec<f64>,
    pub config: SampleConfig,
    /// Vertices per subsample, source and sink included.
    pub sigma: usize,
    /// Iterations whose subgraph carried no flow.
    pub disconnected_count: usize,
}

impl SubsampleEstimate {
    pub fn summary(&self) -> EstimateSummary {
        summarize(&self.phi, self.config.ci_level, self.config.ci_mode).expect("config validated and phi non-empty")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateSummary {
    pub mean: f64,
    pub sd: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub ci_level: f64,
    pub ci_mode: CiMode,
}

impl EstimateSummary {
    /// Degenerate summary of a single exactly known value.
    pub fn point(value: f64, ci_level: f64, ci_mode: CiMode) -> Self {
        Self {
            mean: value,
            sd: 0.0,
            ci_low: value,
            ci_high: value,
            ci_level,
            ci_mode,
        }
    }
}

/// `⌈p·n⌉` clamped to `[2, n]`.
///
/// Products within 1e-9 (relative) of an integer count as that integer, so
/// `0.7 · 100` is 70 rather than 71.
pub fn subsample_size(n: usize, p: f64) -> usize {
    let x = p * n as f64;
    let nearest = x.round();
    let size = if (x - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest
    } else {
        x.ceil()
    };
    (size as usize).clamp(2, n.max(2))
}

/// Draws `⌈p·n⌉ - 2` vertices uniformly without replacement from everything
/// but `s` and `t`, then adds `s` and `t`.
pub fn subsample_vertices<R: Rng + ?Sized>(
    n: usize,
    s: VertexId,
    t: VertexId,
    p: f64,
    rng: &mut R,
) -> Result<VertexSet, SampleError> {
    if n < 2 {
        return Err(SampleError::SubsampleTooSmall(n));
    }
    for v in [s, t] {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n }.into());
        }
    }
    if s == t {
        return Err(FlowError::SourceEqualsSink.into());
    }
    check_proportion(p)?;

    let sigma = subsample_size(n, p);
    let (lo, hi) = if s < t { (s, t) } else { (t, s) };
    // Index j of the n-2 remaining vertices, in ascending order, is j shifted
    // past lo and hi.
    let mut members: Vec<VertexId> = rand::seq::index::sample(rng, n - 2, sigma - 2)
        .into_iter()
        .map(|j| {
            let mut v = j;
            if v >= lo {
                v += 1;
            }
            if v >= hi {
                v += 1;
            }
            v
        })
        .collect();
    members.push(s);
    members.push(t);
    Ok(members.into_iter().collect())
}

/// One bootstrap iteration: the subgraph max flow scaled by `1/p`.
fn scaled_subsample_flow(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    config: &SampleConfig,
    index: u64,
) -> Result<f64, SampleError> {
    let mut rng = rng::stream(config.seed, Purpose::Bootstrap, index);
    let keep = subsample_vertices(g.vertex_count(), s, t, config.p, &mut rng)?;
    let (sub, map) = g.induced_subgraph(&keep)?;
    let s_new = map.to_new(s).expect("source always kept");
    let t_new = map.to_new(t).expect("sink always kept");
    let flow = edmonds_karp(&sub, s_new, t_new)?;
    Ok(flow.value / config.p)
}

/// Runs `config.samples` bootstrap iterations.
///
/// Iterations run on the current rayon pool. Iteration `i` draws from its
/// own stream derived from `(seed, i)`, so the output is identical for any
/// thread count.
pub fn bootstrap_flow(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    config: &SampleConfig,
) -> Result<SubsampleEstimate, SampleError> {
    config.validate()?;
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(FlowError::SourceEqualsSink.into());
    }

    let n = g.vertex_count();
    let sigma = subsample_size(n, config.p);
    let phi = if sigma == n {
        // Every subsample is the whole graph.
        let value = edmonds_karp(g, s, t)?.value / config.p;
        vec![value; config.samples]
    } else {
        (0..config.samples as u64)
            .into_par_iter()
            .map(|i| scaled_subsample_flow(g, s, t, config, i))
            .collect::<Result<Vec<f64>, _>>()?
    };
    let disconnected_count = phi.iter().filter(|&&x| x == 0.0).count();
    Ok(SubsampleEstimate {
        phi,
        config: *config,
        sigma,
        disconnected_count,
    })
}

/// Mean, sample standard deviation (divisor `B - 1`) and a normal
/// interval at `ci_level`.
///
/// Deviations are accumulated relative to the first value, so a constant
/// sample yields exactly that constant as its mean and a zero-width
/// interval.
pub fn summarize(phi: &[f64], ci_level: f64, ci_mode: CiMode) -> Result<EstimateSummary, SampleError> {
    check_level(ci_level)?;
    let (&first, _) = phi.split_first().ok_or(SampleError::EmptySample)?;
    let b = phi.len() as f64;

    let shift: f64 = phi.iter().map(|x| x - first).sum::<f64>() / b;
    let mean = first + shift;
    let sd = if phi.len() > 1 {
        let ss: f64 = phi.iter().map(|x| (x - mean) * (x - mean)).sum();
        (ss / (b - 1.0)).sqrt()
    } else {
        0.0
    };

    let spread = match ci_mode {
        CiMode::SampleSpread => sd,
        CiMode::StandardError => sd / b.sqrt(),
    };
    let half_width = two_sided_z(ci_level) * spread;
    Ok(EstimateSummary {
        mean,
        sd,
        ci_low: mean - half_width,
        ci_high: mean + half_width,
        ci_level,
        ci_mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn subsample_sizes() {
        assert_eq!(subsample_size(10_000, 0.1), 1000);
        assert_eq!(subsample_size(100, 0.7), 70);
        assert_eq!(subsample_size(100, 0.5), 50);
        assert_eq!(subsample_size(10, 0.25), 3);
        assert_eq!(subsample_size(10, 0.01), 2);
        assert_eq!(subsample_size(10, 1.0), 10);
        for k in 1..=10 {
            assert_eq!(subsample_size(1000, k as f64 / 10.0), 100 * k);
        }
    }

    #[test]
    fn full_sample_keeps_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let set = subsample_vertices(10, 3, 7, 1.0, &mut rng).unwrap();
        assert_eq!(set, VertexSet::all(10));
    }

    #[test]
    fn paper_sized_subsample() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let set = subsample_vertices(10_000, 17, 9_001, 0.1, &mut rng).unwrap();
        assert_eq!(set.len(), 1000);
        assert!(set.contains(17) && set.contains(9_001));
    }

    #[test]
    fn inclusion_probability_is_hypergeometric() {
        // Inclusion probability of a non-terminal vertex is (sigma-2)/(n-2):
        // n=4, p=0.75 gives sigma=3 and 1/2; p=0.5 gives sigma=2 and 0.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let draws = 100_000;
        let mut hits = [0u32; 4];
        for _ in 0..draws {
            for &v in subsample_vertices(4, 0, 3, 0.75, &mut rng).unwrap().members() {
                hits[v] += 1;
            }
        }
        assert_eq!(hits[0], draws);
        assert_eq!(hits[3], draws);
        for v in [1, 2] {
            let freq = hits[v] as f64 / draws as f64;
            assert!((freq - 0.5).abs() < 0.01, "vertex {v}: {freq}");
        }
        for _ in 0..1000 {
            assert_eq!(subsample_vertices(4, 0, 3, 0.5, &mut rng).unwrap().members(), &[0, 3]);
        }
    }

    #[test]
    fn subsample_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert_eq!(
            subsample_vertices(1, 0, 0, 0.5, &mut rng).unwrap_err(),
            SampleError::SubsampleTooSmall(1)
        );
        assert!(matches!(
            subsample_vertices(5, 2, 2, 0.5, &mut rng),
            Err(SampleError::Flow(FlowError::SourceEqualsSink))
        ));
        assert!(matches!(
            subsample_vertices(5, 0, 5, 0.5, &mut rng),
            Err(SampleError::Graph(GraphError::VertexOutOfRange { .. }))
        ));
        assert_eq!(
            subsample_vertices(5, 0, 1, 0.0, &mut rng).unwrap_err(),
            SampleError::InvalidProportion(0.0)
        );
    }

    #[test]
    fn forced_pair_only_subsample() {
        // n=4, p=0.5 -> sigma = 2, so the only possible subsample is {s, t}.
        let g = Graph::new(4, [Edge::new(0, 1, 4.0)]).unwrap();
        let est = bootstrap_flow(&g, 0, 1, &SampleConfig::new(0.5, 25, 9)).unwrap();
        assert_eq!(est.sigma, 2);
        assert_eq!(est.phi, vec![8.0; 25]);
        assert_eq!(est.disconnected_count, 0);
    }

    #[test]
    fn full_proportion_reproduces_exact_flow() {
        let g = Graph::new(4, [(0, 1, 10.0), (0, 2, 10.0), (1, 2, 1.0), (1, 3, 10.0), (2, 3, 10.0)]).unwrap();
        let est = bootstrap_flow(&g, 0, 3, &SampleConfig::new(1.0, 7, 0)).unwrap();
        assert_eq!(est.phi, vec![20.0; 7]);
        let s = est.summary();
        assert_eq!((s.mean, s.sd, s.ci_low, s.ci_high), (20.0, 0.0, 20.0, 20.0));
    }

    #[test]
    fn whole_graph_subsample_below_full_proportion() {
        // n=4, p=0.9 -> sigma = 4 although p < 1.
        let g = Graph::new(4, [(0, 1, 9.0), (1, 3, 9.0), (0, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let est = bootstrap_flow(&g, 0, 3, &SampleConfig::new(0.9, 4, 5)).unwrap();
        assert_eq!(est.sigma, 4);
        assert_eq!(est.phi, vec![10.0 / 0.9; 4]);
    }

    #[test]
    fn disconnected_iterations_record_zero() {
        let g = Graph::new(2, Vec::<Edge>::new()).unwrap();
        let est = bootstrap_flow(&g, 0, 1, &SampleConfig::new(1.0, 3, 0)).unwrap();
        assert_eq!(est.phi, vec![0.0; 3]);
        assert_eq!(est.disconnected_count, 3);
    }

    #[test]
    fn bootstrap_rejects_bad_input() {
        let g = Graph::new(3, [(0, 1, 1.0)]).unwrap();
        assert_eq!(
            bootstrap_flow(&g, 0, 1, &SampleConfig::new(0.5, 0, 0)).unwrap_err(),
            SampleError::NoSamples
        );
        assert_eq!(
            bootstrap_flow(&g, 0, 1, &SampleConfig::new(1.5, 3, 0)).unwrap_err(),
            SampleError::InvalidProportion(1.5)
        );
        assert!(bootstrap_flow(&g, 1, 1, &SampleConfig::new(0.5, 3, 0)).is_err());
        assert!(bootstrap_flow(&g, 0, 3, &SampleConfig::new(0.5, 3, 0)).is_err());
        let cfg = SampleConfig::new(0.5, 3, 0).with_ci(1.0, CiMode::SampleSpread);
        assert_eq!(
            bootstrap_flow(&g, 0, 1, &cfg).unwrap_err(),
            SampleError::InvalidCiLevel(1.0)
        );
    }

    #[test]
    fn summary_of_constant_sample() {
        for mode in [CiMode::SampleSpread, CiMode::StandardError] {
            let s = summarize(&[5.0, 5.0, 5.0], 0.95, mode).unwrap();
            assert_eq!((s.mean, s.sd, s.ci_low, s.ci_high), (5.0, 0.0, 5.0, 5.0));
        }
        let s = summarize(&[0.1; 3], 0.95, CiMode::SampleSpread).unwrap();
        assert_eq!(s.mean, 0.1);
    }

    #[test]
    fn summary_of_two_values() {
        let s = summarize(&[1.0, 3.0], 0.95, CiMode::SampleSpread).unwrap();
        // Closed form: mean 2, sd sqrt(2), half-width 1.959964 * sqrt(2).
        let half = 1.959_963_984_540_054 * 2f64.sqrt();
        assert_eq!(s.mean, 2.0);
        assert!((s.sd - 2f64.sqrt()).abs() < 1e-15);
        assert!((s.ci_low - (2.0 - half)).abs() < 1e-12);
        assert!((s.ci_high - (2.0 + half)).abs() < 1e-12);
        assert!((s.ci_low + 0.772).abs() < 1e-3 && (s.ci_high - 4.772).abs() < 1e-3);

        let se = summarize(&[1.0, 3.0], 0.95, CiMode::StandardError).unwrap();
        assert!((se.ci_high - se.mean - half / 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn single_value_summary() {
        let s = summarize(&[4.5], 0.9, CiMode::StandardError).unwrap();
        assert_eq!((s.mean, s.sd, s.ci_low, s.ci_high), (4.5, 0.0, 4.5, 4.5));
        assert_eq!(
            summarize(&[], 0.95, CiMode::SampleSpread).unwrap_err(),
            SampleError::EmptySample
        );
        assert_eq!(
            summarize(&[1.0], 0.0, CiMode::SampleSpread).unwrap_err(),
            SampleError::InvalidCiLevel(0.0)
        );
    }

    #[test]
    fn published_interval_implies_spread_mode() {
        // 75.1 with [30.6, 119.6]: half-width 44.5.
        let implied_sd: f64 = (119.6 - 30.6) / 2.0 / 1.959_964;
        assert!((implied_sd - 22.704).abs() < 1e-3);
        let phi = [75.1 - implied_sd, 75.1 + implied_sd];
        let s = summarize(&phi, 0.95, CiMode::SampleSpread).unwrap();
        // Two points at mean ± d have sd d·√2.
        assert!((s.sd - implied_sd * 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn ci_mode_strings() {
        assert_eq!("spread".parse::<CiMode>().unwrap(), CiMode::SampleSpread);
        assert_eq!("stderr".parse::<CiMode>().unwrap(), CiMode::StandardError);
        assert!("bca".parse::<CiMode>().is_err());
        assert_eq!(CiMode::StandardError.to_string(), "stderr");
    }
}
