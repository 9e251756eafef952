use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;

use graphdict::io;
use graphdict::metrics::{aggregate, code_metrics, edge_metrics, CodeMetrics, EdgeMetrics};

#[derive(Args)]
pub struct EvaluateArgs {
    /// Learned graph file; repeat the flag to aggregate over instances.
    #[arg(long, action = clap::ArgAction::Append, required = true)]
    pub learned: Vec<PathBuf>,
    /// Ground-truth graph file, paired with --learned by position.
    #[arg(long, action = clap::ArgAction::Append, required = true)]
    pub truth: Vec<PathBuf>,
    /// Learned code triplet files, paired by position (optional).
    #[arg(long, action = clap::ArgAction::Append)]
    pub learned_codes: Vec<PathBuf>,
    /// True code triplet files, paired by position (optional).
    #[arg(long, action = clap::ArgAction::Append)]
    pub true_codes: Vec<PathBuf>,
    /// Machine-readable output rows: instance_id metric value.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn evaluate(args: EvaluateArgs) -> Result<()> {
    if args.learned.len() != args.truth.len() {
        bail!(
            "{} learned graphs but {} truth graphs",
            args.learned.len(),
            args.truth.len()
        );
    }
    if args.learned_codes.len() != args.true_codes.len() {
        bail!(
            "{} learned code files but {} true code files",
            args.learned_codes.len(),
            args.true_codes.len()
        );
    }

    let mut edge_all: Vec<EdgeMetrics> = Vec::new();
    for (learned_path, truth_path) in args.learned.iter().zip(&args.truth) {
        let learned = io::read_graph(learned_path)
            .with_context(|| format!("loading {learned_path:?}"))?;
        let truth =
            io::read_graph(truth_path).with_context(|| format!("loading {truth_path:?}"))?;
        edge_all.push(edge_metrics(&learned, &truth)?);
    }

    let mut code_all: Vec<CodeMetrics> = Vec::new();
    for (learned_path, truth_path) in args.learned_codes.iter().zip(&args.true_codes) {
        let learned =
            io::read_codes(learned_path).with_context(|| format!("loading {learned_path:?}"))?;
        let truth =
            io::read_codes(truth_path).with_context(|| format!("loading {truth_path:?}"))?;
        code_all.push(code_metrics(&learned, &truth)?);
    }

    // aligned table on stdout
    println!("{:<10} {:>10} {:>10} {:>10}", "instance", "precision", "recall", "f");
    for (i, m) in edge_all.iter().enumerate() {
        println!(
            "edge/{i:<5} {:>10.4} {:>10.4} {:>10.4}",
            m.precision, m.recall, m.f_measure
        );
    }
    for (i, m) in code_all.iter().enumerate() {
        println!(
            "code/{i:<5} {:>10.4} {:>10.4} {:>10.4}",
            m.precision, m.recall, m.f_measure
        );
    }

    // machine-readable rows
    let mut rows: Vec<String> = vec!["# instance_id metric value".into()];
    for (i, m) in edge_all.iter().enumerate() {
        rows.push(format!("{i} edge_precision {}", io::format_float(m.precision)));
        rows.push(format!("{i} edge_recall {}", io::format_float(m.recall)));
        rows.push(format!("{i} edge_f {}", io::format_float(m.f_measure)));
    }
    for (i, m) in code_all.iter().enumerate() {
        rows.push(format!("{i} code_precision {}", io::format_float(m.precision)));
        rows.push(format!("{i} code_recall {}", io::format_float(m.recall)));
        rows.push(format!("{i} code_f {}", io::format_float(m.f_measure)));
    }

    if edge_all.len() > 1 {
        let s = aggregate(&edge_all)?;
        println!(
            "edge/mean  {:>10.4} {:>10.4} {:>10.4}  (std {:.4} {:.4} {:.4}, {} instances)",
            s.precision.mean,
            s.recall.mean,
            s.f_measure.mean,
            s.precision.std,
            s.recall.std,
            s.f_measure.std,
            s.count
        );
        rows.push(format!("mean edge_precision {}", io::format_float(s.precision.mean)));
        rows.push(format!("mean edge_recall {}", io::format_float(s.recall.mean)));
        rows.push(format!("mean edge_f {}", io::format_float(s.f_measure.mean)));
        rows.push(format!("std edge_precision {}", io::format_float(s.precision.std)));
        rows.push(format!("std edge_recall {}", io::format_float(s.recall.std)));
        rows.push(format!("std edge_f {}", io::format_float(s.f_measure.std)));
    }
    if code_all.len() > 1 {
        let s = aggregate(&code_all)?;
        println!(
            "code/mean  {:>10.4} {:>10.4} {:>10.4}  (std {:.4} {:.4} {:.4}, {} instances)",
            s.precision.mean,
            s.recall.mean,
            s.f_measure.mean,
            s.precision.std,
            s.recall.std,
            s.f_measure.std,
            s.count
        );
        rows.push(format!("mean code_precision {}", io::format_float(s.precision.mean)));
        rows.push(format!("mean code_recall {}", io::format_float(s.recall.mean)));
        rows.push(format!("mean code_f {}", io::format_float(s.f_measure.mean)));
        rows.push(format!("std code_precision {}", io::format_float(s.precision.std)));
        rows.push(format!("std code_recall {}", io::format_float(s.recall.std)));
        rows.push(format!("std code_f {}", io::format_float(s.f_measure.std)));
    }

    io::write_lines(&args.out, rows).with_context(|| format!("writing {:?}", args.out))?;
    Ok(())
}
