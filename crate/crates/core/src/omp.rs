//! Sparse coding of signals against a fixed dictionary with orthogonal
//! matching pursuit under a per-signal L0 budget.

use ndarray::{Array1, Array2, ArrayView1};

use crate::dictionary::Dictionary;
use crate::error::{Error, Result};
use crate::linalg::min_norm_least_squares;

/// Residual norm below which pursuit stops before exhausting the budget;
/// anything smaller is numerical noise, not signal.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// N x M matrix of column signals.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalSet {
    signals: Array2<f64>,
}

impl SignalSet {
    pub fn new(signals: Array2<f64>) -> Result<Self> {
        if let Some(((row, col), _)) = signals
            .indexed_iter()
            .find(|(_, v)| !v.is_finite())
        {
            return Err(Error::NonFiniteEntry { row, col });
        }
        Ok(Self { signals })
    }

    pub fn signals(&self) -> &Array2<f64> {
        &self.signals
    }

    pub fn n(&self) -> usize {
        self.signals.nrows()
    }

    pub fn m(&self) -> usize {
        self.signals.ncols()
    }
}

/// (N*S) x M coefficient matrix with at most `t0` nonzeros per column.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseCodeMatrix {
    codes: Array2<f64>,
    t0: usize,
}

impl SparseCodeMatrix {
    /// Wrap a coefficient matrix whose columns are already within budget.
    pub fn from_parts(codes: Array2<f64>, t0: usize) -> Self {
        debug_assert!(
            codes
                .columns()
                .into_iter()
                .all(|c| c.iter().filter(|v| **v != 0.0).count() <= t0),
            "column exceeds the sparsity budget"
        );
        Self { codes, t0 }
    }

    pub fn codes(&self) -> &Array2<f64> {
        &self.codes
    }

    pub fn t0(&self) -> usize {
        self.t0
    }

    pub fn atom_count(&self) -> usize {
        self.codes.nrows()
    }

    pub fn m(&self) -> usize {
        self.codes.ncols()
    }

    /// Nonzero (atom, signal) support pairs, tolerance `tol` on magnitude.
    pub fn support(&self, tol: f64) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for ((a, m), &v) in self.codes.indexed_iter() {
            if v.abs() > tol {
                out.push((a, m));
            }
        }
        out
    }
}

/// Greedy pursuit for one signal: pick the atom most correlated with the
/// residual, refit the selected support by least squares, repeat up to `t0`
/// times. Ties break toward the lowest atom index so results are
/// reproducible. Requires a normalized dictionary.
pub fn omp_encode_one(dict: &Dictionary, y: ArrayView1<f64>, t0: usize) -> Result<Array1<f64>> {
    let n_atoms = dict.atom_count();
    debug_assert!(dict.is_normalized(), "OMP needs unit-norm atoms");
    if y.len() != dict.n() {
        return Err(Error::DimensionMismatch(format!(
            "signal length {} vs dictionary rows {}",
            y.len(),
            dict.n()
        )));
    }
    if t0 == 0 || t0 > n_atoms {
        return Err(Error::InvalidConfig(format!(
            "sparsity budget {t0} outside 1..={n_atoms}"
        )));
    }

    let atoms = dict.atoms();
    let mut residual = y.to_owned();
    let mut support: Vec<usize> = Vec::with_capacity(t0);
    let mut coeffs = Array1::<f64>::zeros(0);

    for _ in 0..t0 {
        let res_norm = residual.iter().map(|v| v * v).sum::<f64>().sqrt();
        if res_norm < RESIDUAL_TOL {
            break;
        }

        let mut best = usize::MAX;
        let mut best_corr = -1.0;
        for j in 0..n_atoms {
            if support.contains(&j) {
                continue;
            }
            let corr = atoms.column(j).dot(&residual).abs();
            if corr > best_corr {
                best_corr = corr;
                best = j;
            }
        }
        if best == usize::MAX {
            break;
        }
        support.push(best);

        let mut selected = Array2::<f64>::zeros((dict.n(), support.len()));
        for (c, &j) in support.iter().enumerate() {
            selected.column_mut(c).assign(&atoms.column(j));
        }
        coeffs = min_norm_least_squares(&selected.view(), &y)?;
        residual = y.to_owned() - selected.dot(&coeffs);
    }

    let mut x = Array1::<f64>::zeros(n_atoms);
    for (c, &j) in support.iter().enumerate() {
        x[j] = coeffs[c];
    }
    Ok(x)
}

/// Encode every column of `ys`. Columns are independent; with the `parallel`
/// feature they are encoded across threads and written back by column index,
/// so the result does not depend on scheduling.
pub fn omp_encode_all(dict: &Dictionary, ys: &SignalSet, t0: usize) -> Result<SparseCodeMatrix> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let columns: Vec<Result<Array1<f64>>> = (0..ys.m())
            .into_par_iter()
            .map(|m| omp_encode_one(dict, ys.signals().column(m), t0))
            .collect();
        assemble(dict, ys, t0, columns)
    }
    #[cfg(not(feature = "parallel"))]
    {
        omp_encode_all_seq(dict, ys, t0)
    }
}

/// Sequential reference path for [`omp_encode_all`]; also the baseline the
/// benchmark suite compares against.
pub fn omp_encode_all_seq(
    dict: &Dictionary,
    ys: &SignalSet,
    t0: usize,
) -> Result<SparseCodeMatrix> {
    let columns: Vec<Result<Array1<f64>>> = (0..ys.m())
        .map(|m| omp_encode_one(dict, ys.signals().column(m), t0))
        .collect();
    assemble(dict, ys, t0, columns)
}

fn assemble(
    dict: &Dictionary,
    ys: &SignalSet,
    t0: usize,
    columns: Vec<Result<Array1<f64>>>,
) -> Result<SparseCodeMatrix> {
    let mut codes = Array2::<f64>::zeros((dict.atom_count(), ys.m()));
    for (m, col) in columns.into_iter().enumerate() {
        match col {
            Ok(x) => codes.column_mut(m).assign(&x),
            Err(e) => {
                return Err(Error::ColumnEncoding {
                    column: m,
                    source: Box::new(e),
                })
            }
        }
    }
    Ok(SparseCodeMatrix::from_parts(codes, t0))
}
