use std::collections::{BTreeMap, HashSet};
use std::fs::OpenOptions;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;

use graphdict::io;
use graphdict::learner::{learn_graph, LearnConfig, ThresholdPolicy};
use graphdict::metrics::{code_metrics, edge_metrics};
use graphdict::synthetic::{
    calibrate_density, gen_signals, generate_graph, GraphModel, SyntheticGraphConfig,
};

use crate::util::{derive_seed, resolve_kernels};

#[derive(Args)]
pub struct SweepArgs {
    /// Flat key = value manifest describing the grid; see the README.
    #[arg(long)]
    pub manifest: PathBuf,
}

struct Manifest {
    n: usize,
    model: GraphModel,
    target_edges: Option<usize>,
    kernels: String,
    degree: usize,
    t0_grid: Vec<usize>,
    m_grid: Vec<usize>,
    replications: u64,
    seed: u64,
    learn: LearnConfig,
    out: PathBuf,
}

fn parse_manifest(path: &PathBuf) -> Result<Manifest> {
    let kv: BTreeMap<String, String> = io::read_key_values(path)?.into_iter().collect();
    let get = |key: &str| -> Result<&String> {
        kv.get(key)
            .ok_or_else(|| anyhow!("manifest {path:?} is missing key {key:?}"))
    };
    let parse_list = |key: &str| -> Result<Vec<usize>> {
        get(key)?
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| anyhow!("bad {key} entry {v:?}"))
            })
            .collect()
    };
    let opt_f64 = |key: &str, default: f64| -> Result<f64> {
        match kv.get(key) {
            Some(v) => v.parse().map_err(|_| anyhow!("bad {key}: {v}")),
            None => Ok(default),
        }
    };
    let opt_usize = |key: &str, default: usize| -> Result<usize> {
        match kv.get(key) {
            Some(v) => v.parse().map_err(|_| anyhow!("bad {key}: {v}")),
            None => Ok(default),
        }
    };

    let n: usize = get("n")?.parse().map_err(|_| anyhow!("bad n"))?;
    let model = match get("model")?.as_str() {
        "er" => GraphModel::Er {
            p: opt_f64("p", 0.3)?,
        },
        "rbf" => GraphModel::Rbf {
            sigma: opt_f64("sigma", 0.5)?,
            kappa: opt_f64("kappa", 0.75)?,
        },
        other => bail!("unknown model {other:?} in manifest"),
    };
    let target_edges = kv
        .get("target_edges")
        .map(|v| v.parse::<usize>().map_err(|_| anyhow!("bad target_edges: {v}")))
        .transpose()?;

    let defaults = LearnConfig::default();
    let seed = opt_usize("seed", 0)? as u64;
    let learn = LearnConfig {
        beta_w: opt_f64("beta_w", defaults.beta_w)?,
        step_size: opt_f64("step", defaults.step_size)?,
        n_outer: opt_usize("outer", defaults.n_outer)?,
        n_inner: opt_usize("inner", defaults.n_inner)?,
        backtracking: kv
            .get("backtracking")
            .map(|v| v.parse::<bool>().map_err(|_| anyhow!("bad backtracking: {v}")))
            .transpose()?
            .unwrap_or(false),
        // t0, seed and threshold are per-run values
        ..defaults
    };

    let replications = opt_usize("replications", 1)? as u64;
    if replications < 1 {
        bail!("replications must be at least 1");
    }

    Ok(Manifest {
        n,
        model,
        target_edges,
        kernels: kv.get("kernels").cloned().unwrap_or_else(|| "general".into()),
        degree: opt_usize("degree", 15)?,
        t0_grid: parse_list("t0_grid")?,
        m_grid: parse_list("m_grid")?,
        replications,
        seed,
        learn,
        out: PathBuf::from(get("out")?),
    })
}

/// One replication: plant an instance, learn it back with count-matched
/// thresholding, return (edge F, code F).
fn run_replication(
    manifest: &Manifest,
    graph_cfg: &SyntheticGraphConfig,
    spec: &graphdict::KernelSpec,
    t0: usize,
    m: usize,
    rep: u64,
) -> Result<(f64, f64)> {
    let coords = &[t0 as u64, m as u64, rep];
    let cfg = SyntheticGraphConfig {
        seed: derive_seed(manifest.seed, &[coords[0], coords[1], coords[2], 0]),
        ..graph_cfg.clone()
    };
    let truth = generate_graph(&cfg)?;
    let instance = gen_signals(
        &truth,
        spec,
        m,
        t0,
        derive_seed(manifest.seed, &[coords[0], coords[1], coords[2], 1]),
    )?;
    let learn_cfg = LearnConfig {
        t0,
        seed: derive_seed(manifest.seed, &[coords[0], coords[1], coords[2], 2]),
        threshold: ThresholdPolicy::TargetEdgeCount(truth.edge_count()),
        ..manifest.learn.clone()
    };
    let result = learn_graph(&instance.signals, spec, &learn_cfg)?;
    let edge = edge_metrics(&result.learned_graph, &truth)?;
    let code = code_metrics(&result.codes, &instance.true_codes)?;
    Ok((edge.f_measure, code.f_measure))
}

/// Completed (t0, m, rep) rows already present in the output file.
fn completed_rows(path: &PathBuf) -> HashSet<(usize, usize, u64)> {
    let mut done = HashSet::new();
    if let Ok(text) = std::fs::read_to_string(path) {
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() >= 3 {
                if let (Ok(t0), Ok(m), Ok(rep)) =
                    (toks[0].parse(), toks[1].parse(), toks[2].parse())
                {
                    done.insert((t0, m, rep));
                }
            }
        }
    }
    done
}

pub fn sweep(args: SweepArgs) -> Result<()> {
    let manifest = parse_manifest(&args.manifest)?;
    let spec = resolve_kernels(&manifest.kernels, None, manifest.degree)?;

    let mut graph_cfg = SyntheticGraphConfig {
        n: manifest.n,
        model: manifest.model.clone(),
        target_edges: manifest.target_edges,
        seed: manifest.seed,
    };
    if manifest.target_edges.is_some() {
        graph_cfg = calibrate_density(&graph_cfg)?;
    }

    let done = completed_rows(&manifest.out);
    let fresh = done.is_empty();
    let mut out = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&manifest.out)
        .with_context(|| format!("opening {:?}", manifest.out))?;
    if fresh {
        writeln!(out, "# t0 m rep edge_f code_f")?;
    }

    let mut written = 0usize;
    for &t0 in &manifest.t0_grid {
        for &m in &manifest.m_grid {
            let pending: Vec<u64> = (0..manifest.replications)
                .filter(|rep| !done.contains(&(t0, m, *rep)))
                .collect();
            if pending.is_empty() {
                continue;
            }

            let run = |rep: &u64| -> Result<(u64, f64, f64)> {
                let (edge_f, code_f) =
                    run_replication(&manifest, &graph_cfg, &spec, t0, m, *rep)?;
                Ok((*rep, edge_f, code_f))
            };
            // replications run concurrently with per-replication seeds; rows
            // are still written in replication order
            #[cfg(feature = "parallel")]
            let results: Vec<Result<(u64, f64, f64)>> = {
                use rayon::prelude::*;
                pending.par_iter().map(run).collect()
            };
            #[cfg(not(feature = "parallel"))]
            let results: Vec<Result<(u64, f64, f64)>> = pending.iter().map(run).collect();

            for result in results {
                let (rep, edge_f, code_f) = result?;
                writeln!(
                    out,
                    "{t0} {m} {rep} {} {}",
                    io::format_float(edge_f),
                    io::format_float(code_f)
                )?;
                out.flush()?;
                written += 1;
            }
        }
    }
    println!(
        "sweep complete: {written} new rows in {:?} ({} already present)",
        manifest.out,
        done.len()
    );
    Ok(())
}
