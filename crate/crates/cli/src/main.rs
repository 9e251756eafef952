//! Experiment driver: generate ground-truth graphs and signals, learn a graph
//! back from the signals, score the recovery, and run sparsity/signal-count
//! sweeps. Every subcommand is deterministic given its flags and seeds.

mod cmd_atoms;
mod cmd_eval;
mod cmd_gen;
mod cmd_kernels;
mod cmd_learn;
mod cmd_sweep;
mod util;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "graphdict",
    version,
    about = "Infer weighted graphs from signals that are sparse on a polynomial Laplacian dictionary"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)] // one-shot dispatch enum
enum Command {
    /// Generate a ground-truth random graph and write it as a matrix file.
    GenGraph(cmd_gen::GenGraphArgs),
    /// Generate planted training signals and their true sparse codes.
    GenSignals(cmd_gen::GenSignalsArgs),
    /// Learn a graph from a signals file.
    Learn(cmd_learn::LearnArgs),
    /// Score learned graphs (and optionally codes) against ground truth.
    Evaluate(cmd_eval::EvaluateArgs),
    /// Run a sparsity x signal-count grid of replicated experiments.
    Sweep(cmd_sweep::SweepArgs),
    /// Sample kernel polynomials on a spectrum grid for plotting.
    KernelDump(cmd_kernels::KernelDumpArgs),
    /// Write the dictionary atom matrix for a graph + kernel pair.
    AtomDump(cmd_atoms::AtomDumpArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::GenGraph(args) => cmd_gen::gen_graph(args),
        Command::GenSignals(args) => cmd_gen::gen_signals(args),
        Command::Learn(args) => cmd_learn::learn(args),
        Command::Evaluate(args) => cmd_eval::evaluate(args),
        Command::Sweep(args) => cmd_sweep::sweep(args),
        Command::KernelDump(args) => cmd_kernels::kernel_dump(args),
        Command::AtomDump(args) => cmd_atoms::atom_dump(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
