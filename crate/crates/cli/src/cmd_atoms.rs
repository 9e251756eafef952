use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;

use graphdict::dictionary::build_dictionary;
use graphdict::io;

use crate::util::resolve_kernels;

#[derive(Args)]
pub struct AtomDumpArgs {
    /// Graph file the dictionary is built on.
    #[arg(long)]
    pub graph: PathBuf,
    /// Kernel set: general, lowpass, or a coefficient file path.
    #[arg(long, default_value = "general")]
    pub kernels: String,
    /// Explicit kernel coefficient file; overrides --kernels.
    #[arg(long)]
    pub kernels_file: Option<PathBuf>,
    #[arg(long, default_value_t = 15)]
    pub degree: usize,
    /// Dump unit-norm atoms instead of the raw polynomial columns.
    #[arg(long)]
    pub normalized: bool,
    /// Output matrix file: N rows, N*S columns (atom a = s*N + v).
    #[arg(long)]
    pub out: PathBuf,
}

pub fn atom_dump(args: AtomDumpArgs) -> Result<()> {
    let graph =
        io::read_graph(&args.graph).with_context(|| format!("loading graph {:?}", args.graph))?;
    let spec = resolve_kernels(&args.kernels, args.kernels_file.as_ref(), args.degree)?;
    let dict = build_dictionary(&graph, &spec)?;
    let dict = if args.normalized {
        dict.normalized()?
    } else {
        dict
    };
    let comments = vec![
        format!(
            "atoms n {} s {} degree {} normalized {}",
            dict.n(),
            dict.s_count(),
            spec.degree(),
            args.normalized
        ),
        "column a = s*n + v is the atom of subdictionary s centered at vertex v".into(),
    ];
    io::write_matrix(&args.out, dict.atoms(), &comments)
        .with_context(|| format!("writing {:?}", args.out))?;
    println!(
        "wrote {:?}: {} x {} atom matrix",
        args.out,
        dict.n(),
        dict.atom_count()
    );
    Ok(())
}
