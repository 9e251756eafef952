//! Small dense symmetric eigensolver and least-squares helpers.
//!
//! The problem sizes here are modest (N <= a few hundred, supports of a few
//! atoms), so a cyclic Jacobi sweep is plenty and keeps the crate free of
//! LAPACK bindings.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2};

use crate::error::{Error, Result};

const JACOBI_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 64;

/// Eigenvalues of a symmetric matrix, ascending.
pub fn symmetric_eigenvalues(m: &Array2<f64>) -> Array1<f64> {
    let (vals, _) = jacobi(m, false);
    vals
}

/// Eigenvalues (ascending) and matching eigenvector columns of a symmetric matrix.
pub fn symmetric_eigen(m: &Array2<f64>) -> (Array1<f64>, Array2<f64>) {
    let (vals, vecs) = jacobi(m, true);
    (vals, vecs.expect("vectors requested"))
}

/// Cyclic Jacobi rotations until all off-diagonal mass is below tolerance.
fn jacobi(m: &Array2<f64>, want_vectors: bool) -> (Array1<f64>, Option<Array2<f64>>) {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "jacobi needs a square matrix");
    let mut a = m.clone();
    let mut v = if want_vectors {
        Some(Array2::<f64>::eye(n))
    } else {
        None
    };

    let off = |a: &Array2<f64>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += a[[i, j]] * a[[i, j]];
            }
        }
        s.sqrt()
    };

    let scale = a.iter().fold(0.0f64, |acc, x| acc.max(x.abs())).max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off(&a) <= JACOBI_TOL * scale * n as f64 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[[p, q]];
                if apq.abs() <= JACOBI_TOL * scale {
                    continue;
                }
                let app = a[[p, p]];
                let aqq = a[[q, q]];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for i in 0..n {
                    if i != p && i != q {
                        let aip = a[[i, p]];
                        let aiq = a[[i, q]];
                        a[[i, p]] = c * aip - s * aiq;
                        a[[p, i]] = a[[i, p]];
                        a[[i, q]] = s * aip + c * aiq;
                        a[[q, i]] = a[[i, q]];
                    }
                }
                a[[p, p]] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                a[[q, q]] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                a[[p, q]] = 0.0;
                a[[q, p]] = 0.0;

                if let Some(v) = v.as_mut() {
                    for i in 0..n {
                        let vip = v[[i, p]];
                        let viq = v[[i, q]];
                        v[[i, p]] = c * vip - s * viq;
                        v[[i, q]] = s * vip + c * viq;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[[i, i]].total_cmp(&a[[j, j]]));

    let vals = Array1::from_iter(order.iter().map(|&i| a[[i, i]]));
    let vecs = v.map(|v| {
        let mut sorted = Array2::<f64>::zeros((n, n));
        for (out, &src) in order.iter().enumerate() {
            sorted.column_mut(out).assign(&v.column(src));
        }
        sorted
    });
    (vals, vecs)
}

/// Minimum-norm least-squares solution of `atoms * x ~= y`.
///
/// Solved through the Gram matrix pseudo-inverse, which coincides with the
/// pseudo-inverse solution of the rectangular problem, so rank-deficient
/// supports get the minimum-norm coefficient vector rather than an error.
pub(crate) fn min_norm_least_squares(
    atoms: &ArrayView2<f64>,
    y: &ArrayView1<f64>,
) -> Result<Array1<f64>> {
    let k = atoms.ncols();
    let gram = atoms.t().dot(atoms);
    let rhs = atoms.t().dot(y);

    let (vals, vecs) = symmetric_eigen(&gram);
    let max_ev = vals.iter().fold(0.0f64, |acc, &x| acc.max(x.abs()));
    if !max_ev.is_finite() {
        return Err(Error::RankDeficientSupport(format!(
            "gram spectrum not finite for support of size {k}"
        )));
    }
    let cutoff = max_ev * 1e-12;

    // x = V diag(1/lambda_i on the numerical range) V^T rhs
    let mut x = Array1::<f64>::zeros(k);
    for i in 0..k {
        let ev = vals[i];
        if ev > cutoff {
            let proj = vecs.column(i).dot(&rhs) / ev;
            for j in 0..k {
                x[j] += proj * vecs[[j, i]];
            }
        }
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::RankDeficientSupport(format!(
            "non-finite coefficients for support of size {k}"
        )));
    }
    Ok(x)
}
