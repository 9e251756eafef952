use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;

use graphdict::io;
use graphdict::synthetic::{self, GraphModel, SyntheticGraphConfig};

use crate::util::resolve_kernels;

#[derive(Args)]
pub struct GenGraphArgs {
    /// Random-graph family: er or rbf.
    #[arg(long)]
    pub model: String,
    /// Vertex count.
    #[arg(long)]
    pub n: usize,
    /// ER edge probability (ignored when --target-edges is given).
    #[arg(long, default_value_t = 0.3)]
    pub p: f64,
    /// RBF Gaussian kernel width.
    #[arg(long, default_value_t = 0.5)]
    pub sigma: f64,
    /// RBF distance cutoff (ignored when --target-edges is given).
    #[arg(long, default_value_t = 0.75)]
    pub kappa: f64,
    /// Calibrate the model to approximately this many edges.
    #[arg(long)]
    pub target_edges: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output graph file (dense matrix, one row per line).
    #[arg(long)]
    pub out: PathBuf,
}

pub fn gen_graph(args: GenGraphArgs) -> Result<()> {
    let model = match args.model.as_str() {
        "er" => GraphModel::Er { p: args.p },
        "rbf" => GraphModel::Rbf {
            sigma: args.sigma,
            kappa: args.kappa,
        },
        other => bail!("unknown model {other:?}: expected 'er' or 'rbf'"),
    };
    let mut cfg = SyntheticGraphConfig {
        n: args.n,
        model,
        target_edges: args.target_edges,
        seed: args.seed,
    };
    if args.target_edges.is_some() {
        cfg = synthetic::calibrate_density(&cfg)?;
    }
    let graph = synthetic::generate_graph(&cfg)?;

    let model_desc = match cfg.model {
        GraphModel::Er { p } => format!("model er p {p}"),
        GraphModel::Rbf { sigma, kappa } => format!("model rbf sigma {sigma} kappa {kappa}"),
    };
    let comments = vec![
        format!("graph n {} edges {}", graph.n(), graph.edge_count()),
        model_desc,
        format!("seed {}", cfg.seed),
    ];
    io::write_graph(&args.out, &graph, &comments)
        .with_context(|| format!("writing {:?}", args.out))?;
    println!(
        "wrote {:?}: n={} edges={}",
        args.out,
        graph.n(),
        graph.edge_count()
    );
    Ok(())
}

#[derive(Args)]
pub struct GenSignalsArgs {
    /// Ground-truth graph file.
    #[arg(long)]
    pub graph: PathBuf,
    /// Kernel set: general, lowpass, or a coefficient file path.
    #[arg(long, default_value = "general")]
    pub kernels: String,
    /// Explicit kernel coefficient file; overrides --kernels.
    #[arg(long)]
    pub kernels_file: Option<PathBuf>,
    /// Polynomial degree for the builtin kernel sets.
    #[arg(long, default_value_t = 15)]
    pub degree: usize,
    /// Number of signals.
    #[arg(long)]
    pub m: usize,
    /// Atoms per signal.
    #[arg(long, default_value_t = 4)]
    pub t0: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out_signals: PathBuf,
    /// True sparse codes (triplet file).
    #[arg(long)]
    pub out_codes: PathBuf,
}

pub fn gen_signals(args: GenSignalsArgs) -> Result<()> {
    let graph = io::read_graph(&args.graph)
        .with_context(|| format!("loading graph {:?}", args.graph))?;
    let spec = resolve_kernels(&args.kernels, args.kernels_file.as_ref(), args.degree)?;
    let instance = synthetic::gen_signals(&graph, &spec, args.m, args.t0, args.seed)?;

    let provenance = vec![
        format!("graph {:?} n {}", args.graph, graph.n()),
        format!(
            "kernels {} degree {} s {}",
            args.kernels,
            spec.degree(),
            spec.s_count()
        ),
        format!("m {} t0 {} seed {}", args.m, args.t0, args.seed),
    ];
    io::write_signals(&args.out_signals, &instance.signals, &provenance)
        .with_context(|| format!("writing {:?}", args.out_signals))?;
    io::write_codes(&args.out_codes, &instance.true_codes, &provenance)
        .with_context(|| format!("writing {:?}", args.out_codes))?;
    println!(
        "wrote {:?} ({}x{}) and {:?}",
        args.out_signals,
        instance.signals.n(),
        instance.signals.m(),
        args.out_codes
    );
    Ok(())
}
