use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use graphdict::io;
use graphdict::kernels::{general_kernels, lowpass_kernels, KernelSpec};

/// Resolve a kernel selection: the builtin names, a path given through
/// `--kernels-file`, or a path given directly as the `--kernels` value.
pub fn resolve_kernels(
    kernels: &str,
    kernels_file: Option<&PathBuf>,
    degree: usize,
) -> Result<KernelSpec> {
    if let Some(path) = kernels_file {
        return io::read_kernels(path).with_context(|| format!("loading kernels from {path:?}"));
    }
    match kernels {
        "general" => Ok(general_kernels(degree)?),
        "lowpass" => Ok(lowpass_kernels(degree)?),
        other => {
            let path = Path::new(other);
            if path.exists() {
                Ok(io::read_kernels(path)?)
            } else {
                bail!(
                    "unknown kernel set {other:?}: expected 'general', 'lowpass' or a coefficient file path"
                )
            }
        }
    }
}

/// Stable seed derivation for replicated runs: a splitmix64 chain over the
/// base seed and the run coordinates, so every replication gets its own
/// documented, reproducible stream.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mut state = base;
    for &p in parts {
        state = splitmix64(state ^ splitmix64(p));
    }
    state
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}
