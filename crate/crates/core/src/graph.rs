//! Undirected weighted graphs and their normalized Laplacian.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};

/// Symmetric nonnegative weight matrix with a zero diagonal over `n >= 2` vertices.
///
/// Validity is checked once at construction; everything downstream relies on it.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    weights: Array2<f64>,
}

impl Graph {
    /// Validate a candidate weight matrix and wrap it.
    ///
    /// Symmetry is exact: the optimizer and the generators only ever produce
    /// bitwise-symmetric matrices, so any drift indicates a real bug.
    pub fn from_weights(weights: Array2<f64>) -> Result<Self> {
        let (rows, cols) = weights.dim();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows < 2 {
            return Err(Error::TooFewVertices(rows));
        }
        for i in 0..rows {
            for j in 0..cols {
                let w = weights[[i, j]];
                if !w.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
                if w < 0.0 {
                    return Err(Error::NegativeWeight {
                        row: i,
                        col: j,
                        value: w,
                    });
                }
                if i == j && w != 0.0 {
                    return Err(Error::NonzeroDiagonal { index: i, value: w });
                }
                if j > i && weights[[j, i]] != w {
                    return Err(Error::AsymmetricMatrix {
                        row: i,
                        col: j,
                        a: w,
                        b: weights[[j, i]],
                    });
                }
            }
        }
        Ok(Self { weights })
    }

    pub fn n(&self) -> usize {
        self.weights.nrows()
    }

    pub fn weights(&self) -> &Array2<f64> {
        &self.weights
    }

    /// Vertex degrees d_i = sum_j W_ij.
    pub fn degrees(&self) -> Array1<f64> {
        self.weights.rows().into_iter().map(|r| r.sum()).collect()
    }

    /// Number of vertex pairs (i < j) with positive weight.
    pub fn edge_count(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.weights[[i, j]] > 0.0 {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn min_degree(&self) -> f64 {
        self.degrees().iter().fold(f64::INFINITY, |a, &b| a.min(b))
    }

    /// L = I - D^{-1/2} W D^{-1/2}.
    ///
    /// Isolated vertices use the pseudo-inverse convention: their D^{-1/2}
    /// entry is zero and the identity contribution is dropped, so the
    /// corresponding row and column of L are entirely zero. The result is
    /// re-symmetrized to cancel floating-point drift.
    pub fn normalized_laplacian(&self) -> NormalizedLaplacian {
        let n = self.n();
        let degrees = self.degrees();
        let inv_sqrt: Array1<f64> =
            degrees.mapv(|d| if d > 0.0 { 1.0 / d.sqrt() } else { 0.0 });

        let mut l = Array2::<f64>::zeros((n, n));
        for i in 0..n {
            if degrees[i] > 0.0 {
                l[[i, i]] = 1.0;
            }
            for j in 0..n {
                if i != j {
                    l[[i, j]] = -inv_sqrt[i] * self.weights[[i, j]] * inv_sqrt[j];
                }
            }
        }
        let sym = (&l + &l.t()) * 0.5;
        NormalizedLaplacian { matrix: sym }
    }
}

/// Normalized Laplacian of a [`Graph`]; symmetric with spectrum in [0, 2]
/// whenever the graph has no isolated vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedLaplacian {
    matrix: Array2<f64>,
}

impl NormalizedLaplacian {
    pub fn matrix(&self) -> &Array2<f64> {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    /// Cache of `[L^0, L^1, ..., L^k_max]`; shared by dictionary assembly and
    /// the weight-matrix gradient.
    pub fn powers(&self, k_max: usize) -> Vec<Array2<f64>> {
        matrix_powers(self, k_max)
    }
}

/// `[L^0, L^1, ..., L^k_max]` with element 0 the identity.
pub fn matrix_powers(l: &NormalizedLaplacian, k_max: usize) -> Vec<Array2<f64>> {
    let n = l.n();
    let mut powers = Vec::with_capacity(k_max + 1);
    powers.push(Array2::<f64>::eye(n));
    for k in 1..=k_max {
        let next = powers[k - 1].dot(l.matrix());
        powers.push(next);
    }
    powers
}
