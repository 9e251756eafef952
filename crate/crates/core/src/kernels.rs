//! Generating kernels and their polynomial coefficient vectors.
//!
//! A kernel is a scalar function of the Laplacian eigenvalue; each kernel row
//! turns into one subdictionary as a matrix polynomial of L. Coefficients are
//! plain data, so externally computed expansions (Chebyshev, learned) can be
//! loaded from file without touching this module.

use ndarray::{Array1, Array2, ArrayView1};

use crate::error::{Error, Result};

/// Polynomial coefficients for S kernels of degree K: an S x (K+1) matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    coeffs: Array2<f64>,
}

impl KernelSpec {
    pub fn new(coeffs: Array2<f64>) -> Result<Self> {
        if coeffs.nrows() == 0 {
            return Err(Error::InvalidConfig("kernel spec has no rows".into()));
        }
        if coeffs.ncols() < 2 {
            return Err(Error::InvalidDegree(coeffs.ncols().saturating_sub(1)));
        }
        for (s, row) in coeffs.rows().into_iter().enumerate() {
            if row.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "kernel row {s} has a non-finite coefficient"
                )));
            }
            if row.iter().all(|&c| c == 0.0) {
                return Err(Error::EmptyKernelRow(s));
            }
        }
        Ok(Self { coeffs })
    }

    /// Number of subdictionaries S.
    pub fn s_count(&self) -> usize {
        self.coeffs.nrows()
    }

    /// Polynomial degree K.
    pub fn degree(&self) -> usize {
        self.coeffs.ncols() - 1
    }

    pub fn coeffs(&self) -> &Array2<f64> {
        &self.coeffs
    }

    pub fn row(&self, s: usize) -> ArrayView1<'_, f64> {
        self.coeffs.row(s)
    }
}

/// Maclaurin coefficients of the heat kernel e^{-tau * lambda}, truncated at
/// `degree`: coefficient k is (-tau)^k / k!.
pub fn taylor_heat(tau: f64, degree: usize) -> Result<Array1<f64>> {
    if !tau.is_finite() || tau <= 0.0 {
        return Err(Error::InvalidTau(tau));
    }
    if degree < 1 {
        return Err(Error::InvalidDegree(degree));
    }
    let mut coeffs = Array1::<f64>::zeros(degree + 1);
    let mut term = 1.0;
    coeffs[0] = term;
    for k in 1..=degree {
        term *= -tau / k as f64;
        coeffs[k] = term;
    }
    Ok(coeffs)
}

/// Coefficients of 1 - e^{-tau * lambda}: zero constant term, then the
/// negated heat-kernel tail.
pub fn taylor_one_minus_heat(tau: f64, degree: usize) -> Result<Array1<f64>> {
    let mut coeffs = taylor_heat(tau, degree)?;
    coeffs[0] = 0.0;
    for k in 1..=degree {
        coeffs[k] = -coeffs[k];
    }
    Ok(coeffs)
}

/// The default two-kernel set: a fast-decaying heat kernel e^{-2 lambda}
/// paired with its complement 1 - e^{-lambda}, which covers high frequencies.
pub fn general_kernels(degree: usize) -> Result<KernelSpec> {
    let row1 = taylor_heat(2.0, degree)?;
    let row2 = taylor_one_minus_heat(1.0, degree)?;
    stack_rows(&[row1, row2])
}

/// Two low-pass kernels, e^{-2 lambda} and e^{-lambda}; used for comparisons
/// against methods that assume smooth signals.
pub fn lowpass_kernels(degree: usize) -> Result<KernelSpec> {
    let row1 = taylor_heat(2.0, degree)?;
    let row2 = taylor_heat(1.0, degree)?;
    stack_rows(&[row1, row2])
}

fn stack_rows(rows: &[Array1<f64>]) -> Result<KernelSpec> {
    let cols = rows[0].len();
    let mut m = Array2::<f64>::zeros((rows.len(), cols));
    for (i, r) in rows.iter().enumerate() {
        m.row_mut(i).assign(r);
    }
    KernelSpec::new(m)
}

/// Horner evaluation of a coefficient vector at `lambda`.
pub fn eval_kernel(coeffs: ArrayView1<f64>, lambda: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * lambda + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn heat_coefficients_tau_two() {
        let c = taylor_heat(2.0, 2).unwrap();
        assert_eq!(c, array![1.0, -2.0, 2.0]);
    }

    #[test]
    fn heat_coefficients_tau_one() {
        let c = taylor_heat(1.0, 3).unwrap();
        let expected = array![1.0, -1.0, 0.5, -1.0 / 6.0];
        for k in 0..4 {
            assert!((c[k] - expected[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn heat_polynomial_approximates_exponential() {
        let c = taylor_heat(2.0, 15).unwrap();
        let approx = eval_kernel(c.view(), 1.0);
        assert!((approx - (-2.0f64).exp()).abs() < 1e-6);
    }

    #[test]
    fn heat_rejects_nonpositive_tau() {
        assert!(matches!(taylor_heat(0.0, 3), Err(Error::InvalidTau(_))));
        assert!(matches!(taylor_heat(-1.0, 3), Err(Error::InvalidTau(_))));
    }

    #[test]
    fn one_minus_heat_coefficients() {
        let c = taylor_one_minus_heat(1.0, 2).unwrap();
        assert_eq!(c, array![0.0, 1.0, -0.5]);
    }

    #[test]
    fn one_minus_heat_vanishes_at_zero() {
        let c = taylor_one_minus_heat(1.0, 15).unwrap();
        assert_eq!(eval_kernel(c.view(), 0.0), 0.0);
    }

    #[test]
    fn one_minus_heat_value_at_two() {
        let c = taylor_one_minus_heat(1.0, 15).unwrap();
        let expected = 1.0 - (-2.0f64).exp();
        assert!((eval_kernel(c.view(), 2.0) - expected).abs() < 1e-5);
    }

    #[test]
    fn complementary_pair_sums_to_one() {
        let heat = taylor_heat(1.5, 9).unwrap();
        let comp = taylor_one_minus_heat(1.5, 9).unwrap();
        let sum = &heat + &comp;
        assert_eq!(sum[0], 1.0);
        for k in 1..=9 {
            assert_eq!(sum[k], 0.0);
        }
    }

    #[test]
    fn general_set_shape_and_endpoints() {
        let spec = general_kernels(15).unwrap();
        assert_eq!(spec.s_count(), 2);
        assert_eq!(spec.degree(), 15);
        assert_eq!(spec.coeffs().ncols(), 16);
        assert!((eval_kernel(spec.row(0), 0.0) - 1.0).abs() < 1e-12);
        assert_eq!(eval_kernel(spec.row(1), 0.0), 0.0);
    }

    #[test]
    fn general_set_degree_one_truncation() {
        let spec = general_kernels(1).unwrap();
        assert_eq!(spec.coeffs().row(0).to_owned(), array![1.0, -2.0]);
        assert_eq!(spec.coeffs().row(1).to_owned(), array![0.0, 1.0]);
    }

    #[test]
    fn lowpass_set_matches_maclaurin() {
        let spec = lowpass_kernels(2).unwrap();
        assert_eq!(spec.coeffs().row(0).to_owned(), array![1.0, -2.0, 2.0]);
        assert_eq!(spec.coeffs().row(1).to_owned(), array![1.0, -1.0, 0.5]);
    }

    #[test]
    fn lowpass_rows_decrease_on_spectrum() {
        let spec = lowpass_kernels(15).unwrap();
        for s in 0..2 {
            let mut prev = f64::INFINITY;
            for i in 0..100 {
                let lambda = 2.0 * i as f64 / 99.0;
                let v = eval_kernel(spec.row(s), lambda);
                assert!(v < prev, "kernel {s} not decreasing at {lambda}");
                prev = v;
            }
        }
    }

    #[test]
    fn lowpass_row2_matches_exponential() {
        let spec = lowpass_kernels(15).unwrap();
        assert!((eval_kernel(spec.row(1), 1.0) - (-1.0f64).exp()).abs() < 1e-8);
    }

    #[test]
    fn horner_evaluation_cases() {
        assert_eq!(eval_kernel(array![1.0, -2.0, 2.0].view(), 0.0), 1.0);
        assert_eq!(eval_kernel(array![0.0, 1.0].view(), 2.0), 2.0);
        let v = eval_kernel(array![1.0, -1.0, 0.5, -1.0 / 6.0].view(), 1.0);
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn heat_at_lambda_zero_is_exactly_one() {
        for tau in [0.5, 1.0, 2.0] {
            let c = taylor_heat(tau, 15).unwrap();
            assert_eq!(eval_kernel(c.view(), 0.0), 1.0);
        }
    }

    #[test]
    fn heat_uniform_error_bound_on_spectrum() {
        // Alternating-series remainder at the worst point tau * lambda = 4 is
        // (4^16 / 16!) * sum_j (-4)^j 16!/(16+j)! ~= 1.66e-4, so 2e-4 is the
        // honest uniform bound for tau = 2; tau = 1 is far inside 1e-4.
        for (tau, bound) in [(1.0, 1e-4), (2.0, 2e-4)] {
            let c = taylor_heat(tau, 15).unwrap();
            for i in 0..=200 {
                let lambda = 2.0 * i as f64 / 200.0;
                let err = (eval_kernel(c.view(), lambda) - (-tau * lambda).exp()).abs();
                assert!(err <= bound, "tau={tau} lambda={lambda} err={err}");
            }
        }
    }

    #[test]
    fn spec_rejects_all_zero_row() {
        let err = KernelSpec::new(array![[1.0, 2.0], [0.0, 0.0]]).unwrap_err();
        assert!(matches!(err, Error::EmptyKernelRow(1)));
    }
}
