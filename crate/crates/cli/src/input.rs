use std::borrow::Cow;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use flowsample::generators::{erdos_renyi, pick_source_sink, CapacitySpec, ErConfig};
use flowsample::io::{parse_edge_list, parse_matrix_market, LabelMap, ParseOptions, ParsedGraph};
use flowsample::rng::{self, Purpose};
use flowsample::{Graph, VertexId};

use crate::args::{FileFormat, InputArgs};

/// Where graphs come from: one file shared by every seed, or a generator
/// reseeded per run.
#[derive(Debug)]
pub enum GraphSource {
    File { path: PathBuf, parsed: ParsedGraph },
    Er { n: usize, pi: f64, capacity: CapacitySpec },
}

/// A resolved graph with its terminals.
#[derive(Debug)]
pub struct Instance<'a> {
    pub descriptor: String,
    pub graph: Cow<'a, Graph>,
    pub labels: Cow<'a, LabelMap>,
    pub source: VertexId,
    pub sink: VertexId,
}

impl Instance<'_> {
    pub fn label(&self, v: VertexId) -> String {
        self.labels.label(v).map_or_else(|| v.to_string(), Cow::into_owned)
    }
}

pub fn infer_format(path: &Path) -> FileFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("mtx") => FileFormat::Mtx,
        _ => FileFormat::EdgeList,
    }
}

pub fn er_descriptor(n: usize, pi: f64, capacity: &CapacitySpec, seed: u64) -> String {
    format!("er:n={n},pi={pi},cap={capacity},seed={seed}")
}

impl GraphSource {
    /// Checks generator parameters without building anything.
    pub fn check(args: &InputArgs) -> Result<()> {
        if let (Some(n), Some(pi)) = (args.er_n, args.er_pi) {
            let capacity = args.er_cap.unwrap_or_default();
            ErConfig::new(n, pi, 0).with_capacity(capacity).validate()?;
        }
        if let (Some(s), Some(t)) = (&args.source, &args.sink) {
            if s == t {
                bail!("source and sink are both '{s}'");
            }
        }
        Ok(())
    }

    pub fn open(args: &InputArgs) -> Result<Self> {
        Self::check(args)?;
        match (&args.input, args.er_n, args.er_pi) {
            (Some(path), _, _) => {
                let options = if args.undirected {
                    ParseOptions::undirected()
                } else {
                    ParseOptions::default()
                };
                let format = args.format.unwrap_or_else(|| infer_format(path));
                let parsed = read_graph(path, format, &options)?;
                if parsed.skipped_self_loops > 0 {
                    eprintln!(
                        "warning: skipped {} self-loops in {}",
                        parsed.skipped_self_loops,
                        path.display()
                    );
                }
                Ok(Self::File {
                    path: path.clone(),
                    parsed,
                })
            }
            (None, Some(n), Some(pi)) => Ok(Self::Er {
                n,
                pi,
                capacity: args.er_cap.unwrap_or_default(),
            }),
            _ => bail!("need --input or both --er-n and --er-pi"),
        }
    }

    /// The graph and terminals for one seed. Generated graphs and randomly
    /// picked terminals depend on the seed; file graphs do not.
    pub fn instance(&self, seed: u64, source: Option<&str>, sink: Option<&str>) -> Result<Instance<'_>> {
        let (descriptor, graph, labels) = match self {
            Self::File { path, parsed } => (
                path.display().to_string(),
                Cow::Borrowed(&parsed.graph),
                Cow::Borrowed(&parsed.labels),
            ),
            Self::Er { n, pi, capacity } => {
                let cfg = ErConfig::new(*n, *pi, seed).with_capacity(*capacity);
                (
                    er_descriptor(*n, *pi, capacity, seed),
                    Cow::Owned(erdos_renyi(&cfg)?),
                    Cow::Owned(LabelMap::identity(*n)),
                )
            }
        };
        let (source, sink) = match (source, sink) {
            (Some(s), Some(t)) => (resolve(&labels, s)?, resolve(&labels, t)?),
            _ => pick_source_sink(graph.vertex_count(), &mut rng::stream(seed, Purpose::SourceSink, 0))?,
        };
        Ok(Instance {
            descriptor,
            graph,
            labels,
            source,
            sink,
        })
    }
}

fn resolve(labels: &LabelMap, label: &str) -> Result<VertexId> {
    labels
        .id(label)
        .with_context(|| format!("unknown vertex label '{label}'"))
}

pub fn read_graph(path: &Path, format: FileFormat, options: &ParseOptions) -> Result<ParsedGraph> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let reader = BufReader::new(file);
    let parsed = match format {
        FileFormat::EdgeList => parse_edge_list(reader, options),
        FileFormat::Mtx => parse_matrix_market(reader, options),
    };
    parsed.with_context(|| format!("cannot parse {}", path.display()))
}
