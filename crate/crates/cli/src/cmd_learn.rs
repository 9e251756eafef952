use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;

use graphdict::io;
use graphdict::learner::{learn_graph, LearnConfig, LearnResult, ThresholdPolicy};
use graphdict::metrics::edge_metrics;
use graphdict::omp::SignalSet;

use crate::util::resolve_kernels;

#[derive(Args)]
pub struct LearnArgs {
    /// Training signals file (N x M matrix).
    #[arg(long)]
    pub signals: PathBuf,
    /// Kernel set: general, lowpass, or a coefficient file path.
    #[arg(long, default_value = "general")]
    pub kernels: String,
    /// Explicit kernel coefficient file; overrides --kernels.
    #[arg(long)]
    pub kernels_file: Option<PathBuf>,
    #[arg(long, default_value_t = 15)]
    pub degree: usize,
    /// Flat key = value config file; flags given explicitly override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub beta_w: Option<f64>,
    /// Gradient step size.
    #[arg(long)]
    pub step: Option<f64>,
    /// Outer alternation rounds.
    #[arg(long)]
    pub outer: Option<usize>,
    /// Inner gradient steps per round.
    #[arg(long)]
    pub inner: Option<usize>,
    #[arg(long)]
    pub t0: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// count (keep the largest entries) or value (absolute cutoff).
    #[arg(long)]
    pub threshold_mode: Option<String>,
    /// Edge count for mode count, cutoff for mode value.
    #[arg(long)]
    pub threshold_arg: Option<f64>,
    #[arg(long)]
    pub backtracking: bool,
    /// Ground-truth graph; enables F-measure-based grid selection and
    /// count thresholding without an explicit --threshold-arg.
    #[arg(long)]
    pub truth: Option<PathBuf>,
    /// Grid search, e.g. --grid beta_w=0.01,0.05 step=0.05,0.1
    #[arg(long, num_args = 1..)]
    pub grid: Vec<String>,
    #[arg(long)]
    pub out_graph: PathBuf,
    #[arg(long)]
    pub out_codes: Option<PathBuf>,
    /// Objective trace, two columns: iteration, value.
    #[arg(long)]
    pub out_trace: Option<PathBuf>,
    /// Pre-threshold weights, for re-thresholding without re-learning.
    #[arg(long)]
    pub out_raw: Option<PathBuf>,
}

/// Threshold selection before it is resolved against the truth file.
#[derive(Default)]
struct ThresholdChoice {
    mode: Option<String>,
    arg: Option<f64>,
}

fn apply_config_file(
    cfg: &mut LearnConfig,
    threshold: &mut ThresholdChoice,
    path: &PathBuf,
) -> Result<()> {
    for (key, value) in io::read_key_values(path)? {
        let parse_f64 =
            |v: &str| -> Result<f64> { v.parse().map_err(|_| anyhow!("bad value for {key}: {v}")) };
        let parse_usize = |v: &str| -> Result<usize> {
            v.parse().map_err(|_| anyhow!("bad value for {key}: {v}"))
        };
        match key.as_str() {
            "beta_w" => cfg.beta_w = parse_f64(&value)?,
            "step" | "step_size" => cfg.step_size = parse_f64(&value)?,
            "outer" | "n_outer" => cfg.n_outer = parse_usize(&value)?,
            "inner" | "n_inner" => cfg.n_inner = parse_usize(&value)?,
            "t0" => cfg.t0 = parse_usize(&value)?,
            "seed" => {
                cfg.seed = value
                    .parse()
                    .map_err(|_| anyhow!("bad value for seed: {value}"))?
            }
            "backtracking" => {
                cfg.backtracking = value
                    .parse()
                    .map_err(|_| anyhow!("bad value for backtracking: {value}"))?
            }
            "threshold_mode" => threshold.mode = Some(value),
            "threshold_arg" => threshold.arg = Some(parse_f64(&value)?),
            other => bail!("unknown config key {other:?} in {path:?}"),
        }
    }
    Ok(())
}

fn parse_grid(tokens: &[String]) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut betas = Vec::new();
    let mut steps = Vec::new();
    for token in tokens {
        let (key, values) = token
            .split_once('=')
            .ok_or_else(|| anyhow!("grid token {token:?} is not key=v1,v2,..."))?;
        let parsed: Vec<f64> = values
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| anyhow!("bad grid value {v:?} in {token:?}"))
            })
            .collect::<Result<_>>()?;
        match key.trim() {
            "beta_w" => betas = parsed,
            "step" => steps = parsed,
            other => bail!("unknown grid key {other:?} (expected beta_w or step)"),
        }
    }
    Ok((betas, steps))
}

pub fn learn(args: LearnArgs) -> Result<()> {
    let signals: SignalSet = io::read_signals(&args.signals)
        .with_context(|| format!("loading signals {:?}", args.signals))?;
    let spec = resolve_kernels(&args.kernels, args.kernels_file.as_ref(), args.degree)?;
    let truth = args
        .truth
        .as_ref()
        .map(|p| io::read_graph(p).with_context(|| format!("loading truth {:?}", p)))
        .transpose()?;

    let mut cfg = LearnConfig::default();
    let mut threshold = ThresholdChoice::default();
    if let Some(path) = &args.config {
        apply_config_file(&mut cfg, &mut threshold, path)?;
    }
    if let Some(v) = args.beta_w {
        cfg.beta_w = v;
    }
    if let Some(v) = args.step {
        cfg.step_size = v;
    }
    if let Some(v) = args.outer {
        cfg.n_outer = v;
    }
    if let Some(v) = args.inner {
        cfg.n_inner = v;
    }
    if let Some(v) = args.t0 {
        cfg.t0 = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if args.backtracking {
        cfg.backtracking = true;
    }

    if args.threshold_mode.is_some() {
        threshold.mode = args.threshold_mode.clone();
    }
    if args.threshold_arg.is_some() {
        threshold.arg = args.threshold_arg;
    }
    let mode = threshold.mode.as_deref().unwrap_or("count");
    cfg.threshold = match mode {
        "count" => {
            let count = match (threshold.arg, &truth) {
                (Some(c), _) => c as usize,
                (None, Some(t)) => t.edge_count(),
                (None, None) => bail!(
                    "--threshold-mode count needs --threshold-arg or --truth to fix the edge count"
                ),
            };
            ThresholdPolicy::TargetEdgeCount(count)
        }
        "value" => {
            let cut = threshold.arg.unwrap_or(1e-4);
            ThresholdPolicy::AbsoluteValue(cut)
        }
        other => bail!("unknown threshold mode {other:?} (expected count or value)"),
    };

    let result = if args.grid.is_empty() {
        learn_graph(&signals, &spec, &cfg)?
    } else {
        let (betas, steps) = parse_grid(&args.grid)?;
        let betas = if betas.is_empty() {
            vec![cfg.beta_w]
        } else {
            betas
        };
        let steps = if steps.is_empty() {
            vec![cfg.step_size]
        } else {
            steps
        };
        run_grid(&signals, &spec, &cfg, truth.as_ref(), &betas, &steps)?
    };

    if let Some(t) = &truth {
        let m = edge_metrics(&result.learned_graph, t)?;
        println!(
            "edge precision {:.4} recall {:.4} f {:.4}",
            m.precision, m.recall, m.f_measure
        );
    }

    let comments = vec![
        format!(
            "learned graph n {} edges {}",
            result.learned_graph.n(),
            result.learned_graph.edge_count()
        ),
        format!(
            "beta_w {} step {} outer {} inner {} t0 {} seed {}",
            cfg.beta_w, cfg.step_size, cfg.n_outer, cfg.n_inner, cfg.t0, cfg.seed
        ),
    ];
    io::write_graph(&args.out_graph, &result.learned_graph, &comments)
        .with_context(|| format!("writing {:?}", args.out_graph))?;
    if let Some(path) = &args.out_codes {
        io::write_codes(path, &result.codes, &comments)
            .with_context(|| format!("writing {path:?}"))?;
    }
    if let Some(path) = &args.out_trace {
        io::write_trace(path, &result.objective_trace, &["objective per outer iteration".into()])
            .with_context(|| format!("writing {path:?}"))?;
    }
    println!(
        "wrote {:?}: edges={} final objective={}",
        args.out_graph,
        result.learned_graph.edge_count(),
        io::format_float(*result.objective_trace.last().unwrap())
    );
    Ok(())
}

/// Cross-product grid search. With ground truth the run with the best edge
/// F-measure wins; otherwise the lowest final objective. Ties keep the
/// earliest run in (beta_w, step) iteration order, so selection is
/// deterministic.
fn run_grid(
    signals: &SignalSet,
    spec: &graphdict::KernelSpec,
    base: &LearnConfig,
    truth: Option<&graphdict::Graph>,
    betas: &[f64],
    steps: &[f64],
) -> Result<LearnResult> {
    let mut best: Option<(f64, LearnResult)> = None;
    println!("grid search over {} runs:", betas.len() * steps.len());
    for &beta_w in betas {
        for &step_size in steps {
            let cfg = LearnConfig {
                beta_w,
                step_size,
                ..base.clone()
            };
            match learn_graph(signals, spec, &cfg) {
                Ok(result) => {
                    let objective = *result.objective_trace.last().unwrap();
                    // higher score wins
                    let score = match truth {
                        Some(t) => edge_metrics(&result.learned_graph, t)?.f_measure,
                        None => -objective,
                    };
                    match truth {
                        Some(_) => println!(
                            "  beta_w={beta_w} step={step_size} objective={} edge_f={score:.4}",
                            io::format_float(objective)
                        ),
                        None => println!(
                            "  beta_w={beta_w} step={step_size} objective={}",
                            io::format_float(objective)
                        ),
                    }
                    if best.as_ref().is_none_or(|(s, _)| score > *s) {
                        best = Some((score, result));
                    }
                }
                Err(e) => println!("  beta_w={beta_w} step={step_size} failed: {e}"),
            }
        }
    }
    let (_, result) = best.ok_or_else(|| anyhow!("every grid run failed"))?;
    Ok(result)
}
