//! Inference of an undirected weighted graph from signal observations.
//!
//! Signals are modeled as sparse combinations of atoms from a structured
//! dictionary: a concatenation of matrix polynomials of the normalized graph
//! Laplacian, one block per generating kernel. Given the kernel coefficients
//! and a set of signals, [`learner::learn_graph`] alternates between
//! orthogonal matching pursuit on the current dictionary and projected
//! gradient descent on the weight matrix, minimizing
//! `||Y - D X||_F^2 + beta_w ||W||_1` subject to symmetry, nonnegativity and
//! a zero diagonal.
//!
//! The companion modules cover the rest of the experiment pipeline:
//! [`synthetic`] plants ground-truth graphs and signals, [`metrics`] scores
//! recovered edges and code supports, and [`io`] reads and writes the text
//! formats used by the command-line driver.
//!
//! Per-signal sparse coding is data-parallel; the `parallel` feature (on by
//! default) encodes signal columns with rayon, and a sequential fallback is
//! always available.

pub mod dictionary;
pub mod error;
pub mod graph;
pub mod io;
pub mod kernels;
pub mod learner;
pub mod linalg;
pub mod metrics;
pub mod omp;
pub mod synthetic;

pub use dictionary::{build_dictionary, renormalize_codes, Dictionary};
pub use error::{Error, Result};
pub use graph::{matrix_powers, Graph, NormalizedLaplacian};
pub use kernels::{eval_kernel, general_kernels, lowpass_kernels, KernelSpec};
pub use learner::{learn_graph, LearnConfig, LearnResult, ThresholdPolicy};
pub use omp::{omp_encode_all, omp_encode_all_seq, omp_encode_one, SignalSet, SparseCodeMatrix};
pub use synthetic::{gen_er, gen_rbf, gen_signals, PlantedInstance, SyntheticGraphConfig};
