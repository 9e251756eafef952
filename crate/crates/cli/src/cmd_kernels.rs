use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;

use graphdict::io;
use graphdict::kernels::eval_kernel;

use crate::util::resolve_kernels;

#[derive(Args)]
pub struct KernelDumpArgs {
    /// Kernel set: general, lowpass, or a coefficient file path.
    #[arg(long, default_value = "general")]
    pub kernels: String,
    /// Explicit kernel coefficient file; overrides --kernels.
    #[arg(long)]
    pub kernels_file: Option<PathBuf>,
    #[arg(long, default_value_t = 15)]
    pub degree: usize,
    /// Grid points on [0, lambda-max].
    #[arg(long, default_value_t = 101)]
    pub samples: usize,
    #[arg(long, default_value_t = 2.0)]
    pub lambda_max: f64,
    /// Output prefix; kernel s goes to <out>_kernel<s>.txt as two columns
    /// (lambda, value).
    #[arg(long)]
    pub out: PathBuf,
}

pub fn kernel_dump(args: KernelDumpArgs) -> Result<()> {
    let spec = resolve_kernels(&args.kernels, args.kernels_file.as_ref(), args.degree)?;
    anyhow::ensure!(args.samples >= 2, "--samples must be at least 2");

    for s in 0..spec.s_count() {
        let mut lines = vec![format!("# kernel {s} sampled on [0, {}]", args.lambda_max)];
        for i in 0..args.samples {
            let lambda = args.lambda_max * i as f64 / (args.samples - 1) as f64;
            let value = eval_kernel(spec.row(s), lambda);
            lines.push(format!(
                "{} {}",
                io::format_float(lambda),
                io::format_float(value)
            ));
        }
        let path = PathBuf::from(format!("{}_kernel{s}.txt", args.out.display()));
        io::write_lines(&path, lines).with_context(|| format!("writing {path:?}"))?;
        println!("wrote {path:?} ({} samples)", args.samples);
    }
    Ok(())
}
