use std::time::Instant;

use anyhow::{bail, Result};
use flowsample::generators::{erdos_renyi, pick_source_sink, ErConfig};
use flowsample::io::RunRecord;
use flowsample::maxflow::edmonds_karp;
use flowsample::rng::{self, Purpose};
use flowsample::sampler::bootstrap_flow;
use flowsample::{EstimateSummary, Graph, SampleConfig};
use serde::Serialize;

use crate::args::{
    BenchArgs, BenchMode, CiArgs, EstimateArgs, ExactArgs, GenerateArgs, InputArgs, SweepBArgs, SweepPArgs,
};
use crate::input::{GraphSource, Instance};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn terminals(args: &InputArgs) -> (Option<&str>, Option<&str>) {
    (args.source.as_deref(), args.sink.as_deref())
}

fn record(inst: &Instance<'_>, cfg: &SampleConfig, summary: &EstimateSummary, disconnected: usize) -> RunRecord {
    RunRecord {
        input: inst.descriptor.clone(),
        n: inst.graph.vertex_count(),
        m: inst.graph.edge_count(),
        source: inst.label(inst.source),
        sink: inst.label(inst.sink),
        p: cfg.p,
        samples: cfg.samples,
        seed: cfg.seed,
        ci_level: summary.ci_level,
        ci_mode: summary.ci_mode,
        mean: summary.mean,
        sd: summary.sd,
        ci_low: summary.ci_low,
        ci_high: summary.ci_high,
        disconnected_count: disconnected,
        exact_flow: None,
        duration_seconds: 0.0,
        version: VERSION.to_owned(),
        phi: None,
    }
}

fn exact_record(inst: &Instance<'_>, seed: u64, ci: &CiArgs) -> Result<RunRecord> {
    let start = Instant::now();
    let f = edmonds_karp(&inst.graph, inst.source, inst.sink)?.value;
    let seconds = start.elapsed().as_secs_f64();
    let cfg = SampleConfig::new(1.0, 1, seed).with_ci(ci.ci_level, ci.ci_mode);
    let mut rec = record(
        inst,
        &cfg,
        &EstimateSummary::point(f, ci.ci_level, ci.ci_mode),
        usize::from(f == 0.0),
    );
    rec.exact_flow = Some(f);
    rec.duration_seconds = seconds;
    Ok(rec)
}

fn estimate_record(inst: &Instance<'_>, cfg: &SampleConfig, exact: Option<f64>, keep_phi: bool) -> Result<RunRecord> {
    let start = Instant::now();
    let est = bootstrap_flow(&inst.graph, inst.source, inst.sink, cfg)?;
    let summary = est.summary();
    let seconds = start.elapsed().as_secs_f64();
    let mut rec = record(inst, cfg, &summary, est.disconnected_count);
    rec.exact_flow = exact;
    rec.duration_seconds = seconds;
    if keep_phi {
        rec.phi = Some(est.phi);
    }
    Ok(rec)
}

fn check_ci(ci: &CiArgs) -> Result<()> {
    SampleConfig::new(1.0, 1, 0)
        .with_ci(ci.ci_level, ci.ci_mode)
        .validate()?;
    Ok(())
}

pub fn exact(args: &ExactArgs) -> Result<RunRecord> {
    check_ci(&args.ci)?;
    let source = GraphSource::open(&args.input)?;
    let (s, t) = terminals(&args.input);
    exact_record(&source.instance(args.seed, s, t)?, args.seed, &args.ci)
}

pub fn estimate(args: &EstimateArgs) -> Result<RunRecord> {
    let cfg = SampleConfig::new(args.p, args.samples, args.seed).with_ci(args.ci.ci_level, args.ci.ci_mode);
    cfg.validate()?;
    let source = GraphSource::open(&args.input)?;
    let (s, t) = terminals(&args.input);
    let inst = source.instance(args.seed, s, t)?;
    let exact = if args.with_exact {
        Some(edmonds_karp(&inst.graph, inst.source, inst.sink)?.value)
    } else {
        None
    };
    estimate_record(&inst, &cfg, exact, args.keep_phi)
}

/// Runs every (seed, point) pair seed-major, solving each seed's graph
/// exactly once.
fn sweep(input: &InputArgs, seeds: &[u64], configs: impl Fn(u64) -> Vec<SampleConfig>) -> Result<Vec<RunRecord>> {
    if seeds.is_empty() {
        bail!("--seeds is empty");
    }
    for cfg in seeds.iter().flat_map(|&seed| configs(seed)) {
        cfg.validate()?;
    }
    let source = GraphSource::open(input)?;
    let (s, t) = terminals(input);
    let mut out = Vec::new();
    for &seed in seeds {
        let inst = source.instance(seed, s, t)?;
        let exact = edmonds_karp(&inst.graph, inst.source, inst.sink)?.value;
        for cfg in configs(seed) {
            out.push(estimate_record(&inst, &cfg, Some(exact), false)?);
        }
    }
    Ok(out)
}

pub fn sweep_b(args: &SweepBArgs) -> Result<Vec<RunRecord>> {
    if args.b_list.is_empty() {
        bail!("--b-list is empty");
    }
    let ci = &args.ci;
    sweep(&args.input, &args.seeds, |seed| {
        args.b_list
            .iter()
            .map(|&b| SampleConfig::new(args.p, b, seed).with_ci(ci.ci_level, ci.ci_mode))
            .collect()
    })
}

pub fn sweep_p(args: &SweepPArgs) -> Result<Vec<RunRecord>> {
    if args.p_list.is_empty() {
        bail!("--p-list is empty");
    }
    let ci = &args.ci;
    sweep(&args.input, &args.seeds, |seed| {
        args.p_list
            .iter()
            .map(|&p| SampleConfig::new(p, args.samples, seed).with_ci(ci.ci_level, ci.ci_mode))
            .collect()
    })
}

/// One row of a runtime benchmark.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    #[serde(rename = "B")]
    pub samples: usize,
    pub sigma: usize,
    pub edges: usize,
    pub seconds: f64,
    pub mean: Option<f64>,
    pub error: Option<String>,
}

/// Subsampling proportion and sample count used for `n` vertices.
pub fn bench_scaling(mode: BenchMode, n: usize, samples: Option<usize>, p: Option<f64>) -> (f64, usize) {
    match mode {
        BenchMode::Scaling => {
            let sigma = (n as f64).sqrt().ceil();
            (sigma / n as f64, n)
        }
        BenchMode::Fixed => (p.unwrap_or(1.0), samples.unwrap_or(1)),
    }
}

pub fn bench(args: &BenchArgs) -> Result<Vec<BenchRecord>> {
    if args.n_list.is_empty() {
        bail!("--n-list is empty");
    }
    ErConfig::new(2, args.er_pi, args.seed)
        .with_capacity(args.er_cap)
        .validate()?;
    if args.mode == BenchMode::Fixed {
        let (p, b) = bench_scaling(args.mode, 2, args.samples, args.p);
        SampleConfig::new(p, b, args.seed).validate()?;
    }
    Ok(args.n_list.iter().map(|&n| bench_one(args, n)).collect())
}

fn bench_one(args: &BenchArgs, n: usize) -> BenchRecord {
    let (p, samples) = bench_scaling(args.mode, n, args.samples, args.p);
    let cfg = SampleConfig::new(p, samples, args.seed);
    let mut row = BenchRecord {
        n,
        samples,
        sigma: flowsample::sampler::subsample_size(n, p.clamp(f64::MIN_POSITIVE, 1.0)),
        edges: 0,
        seconds: 0.0,
        mean: None,
        error: None,
    };
    let run = || -> Result<(Graph, f64, f64)> {
        let g = erdos_renyi(&ErConfig::new(n, args.er_pi, args.seed).with_capacity(args.er_cap))?;
        let (s, t) = pick_source_sink(n, &mut rng::stream(args.seed, Purpose::SourceSink, 0))?;
        let start = Instant::now();
        let est = bootstrap_flow(&g, s, t, &cfg)?;
        let seconds = start.elapsed().as_secs_f64();
        Ok((g, seconds, est.summary().mean))
    };
    match run() {
        Ok((g, seconds, mean)) => {
            row.edges = g.edge_count();
            row.seconds = seconds;
            row.mean = Some(mean);
        }
        Err(e) => row.error = Some(format!("{e:#}")),
    }
    row
}

pub fn generate(args: &GenerateArgs) -> Result<Graph> {
    Ok(erdos_renyi(
        &ErConfig::new(args.er_n, args.er_pi, args.seed).with_capacity(args.er_cap),
    )?)
}
