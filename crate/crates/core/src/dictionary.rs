//! Structured dictionary assembly from a graph and a kernel spec.
//!
//! The dictionary concatenates S blocks, one per kernel row; block s is the
//! matrix polynomial sum_k alpha_{sk} L^k. Atom a = s*N + v is the atom of
//! subdictionary s centered at vertex v; support-recovery metrics rely on
//! this indexing.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernels::KernelSpec;
use crate::omp::SparseCodeMatrix;

/// Norm below which an atom counts as numerically zero.
pub const ZERO_ATOM_TOL: f64 = 1e-12;

/// N x (N*S) atom matrix. `atom_norms` is present only after [`Dictionary::normalized`].
#[derive(Debug, Clone)]
pub struct Dictionary {
    atoms: Array2<f64>,
    n: usize,
    s_count: usize,
    atom_norms: Option<Array1<f64>>,
}

impl Dictionary {
    pub fn atoms(&self) -> &Array2<f64> {
        &self.atoms
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s_count(&self) -> usize {
        self.s_count
    }

    pub fn atom_count(&self) -> usize {
        self.n * self.s_count
    }

    pub fn is_normalized(&self) -> bool {
        self.atom_norms.is_some()
    }

    /// Original column norms, recorded by [`Dictionary::normalized`].
    pub fn atom_norms(&self) -> Option<&Array1<f64>> {
        self.atom_norms.as_ref()
    }

    /// D * X.
    pub fn apply(&self, codes: &SparseCodeMatrix) -> Array2<f64> {
        self.atoms.dot(codes.codes())
    }

    /// Scale every atom to unit Euclidean norm, recording the original norms
    /// so codes can be mapped back. A numerically zero column is an error:
    /// it would make pursuit correlations meaningless, and it signals a
    /// degenerate graph/kernel combination worth surfacing early.
    pub fn normalized(&self) -> Result<Dictionary> {
        let mut atoms = self.atoms.clone();
        let mut norms = Array1::<f64>::zeros(self.atom_count());
        for (j, mut col) in atoms.columns_mut().into_iter().enumerate() {
            let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm <= ZERO_ATOM_TOL {
                return Err(Error::ZeroAtom(j));
            }
            col.mapv_inplace(|x| x / norm);
            norms[j] = norm;
        }
        Ok(Dictionary {
            atoms,
            n: self.n,
            s_count: self.s_count,
            atom_norms: Some(norms),
        })
    }
}

/// Assemble the unnormalized dictionary `[D_1 ... D_S]` with
/// `D_s = sum_k alpha_{sk} L^k`, sharing one power cache across blocks.
pub fn build_dictionary(graph: &Graph, spec: &KernelSpec) -> Result<Dictionary> {
    let n = graph.n();
    let s_count = spec.s_count();
    let degree = spec.degree();
    if degree < 1 {
        return Err(Error::DimensionMismatch(format!(
            "kernel degree must be >= 1, got {degree}"
        )));
    }

    let powers = graph.normalized_laplacian().powers(degree);
    let atoms = assemble_atoms(&powers, spec);
    Ok(Dictionary {
        atoms,
        n,
        s_count,
        atom_norms: None,
    })
}

/// Blocks `sum_k alpha_{sk} P_k` concatenated column-wise from a power cache.
/// The learner reuses this on its own internally regularized power cache.
pub(crate) fn assemble_atoms(powers: &[Array2<f64>], spec: &KernelSpec) -> Array2<f64> {
    let n = powers[0].nrows();
    let s_count = spec.s_count();
    let mut atoms = Array2::<f64>::zeros((n, n * s_count));
    for s in 0..s_count {
        let mut block = Array2::<f64>::zeros((n, n));
        for (k, power) in powers.iter().enumerate() {
            let alpha = spec.coeffs()[[s, k]];
            if alpha != 0.0 {
                block.scaled_add(alpha, power);
            }
        }
        atoms
            .slice_mut(ndarray::s![.., s * n..(s + 1) * n])
            .assign(&block);
    }
    atoms
}

/// Undo atom normalization on the code side: row j of X is divided by the
/// recorded norm of atom j, keeping the product D X unchanged between the
/// normalized and the original dictionary.
pub fn renormalize_codes(x: &SparseCodeMatrix, atom_norms: &Array1<f64>) -> SparseCodeMatrix {
    let mut codes = x.codes().clone();
    for (j, mut row) in codes.rows_mut().into_iter().enumerate() {
        let norm = atom_norms[j];
        row.mapv_inplace(|v| v / norm);
    }
    SparseCodeMatrix::from_parts(codes, x.t0())
}
