//! Recovery scoring: edge precision/recall/F-measure against a ground-truth
//! graph, and support metrics for sparse codes.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::omp::SparseCodeMatrix;

/// Magnitude below which a code entry counts as zero; separates true zeros
/// from least-squares refit residue.
pub const SUPPORT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub tp: usize,
    pub fp: usize,
    pub fn_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodeMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub tp: usize,
    pub fp: usize,
    pub fn_count: usize,
}

/// Precision/recall/F triple; lets [`aggregate`] work over either metric kind.
pub trait PrfScore {
    fn prf(&self) -> (f64, f64, f64);
}

impl PrfScore for EdgeMetrics {
    fn prf(&self) -> (f64, f64, f64) {
        (self.precision, self.recall, self.f_measure)
    }
}

impl PrfScore for CodeMetrics {
    fn prf(&self) -> (f64, f64, f64) {
        (self.precision, self.recall, self.f_measure)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStat {
    pub mean: f64,
    pub std: f64,
}

/// Componentwise mean and sample standard deviation over replications.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsSummary {
    pub precision: SummaryStat,
    pub recall: SummaryStat,
    pub f_measure: SummaryStat,
    pub count: usize,
}

fn prf_from_counts(tp: usize, fp: usize, fn_count: usize) -> (f64, f64, f64) {
    // empty predictions score zero precision so F stays well-defined
    let precision = if tp + fp > 0 {
        tp as f64 / (tp + fp) as f64
    } else {
        0.0
    };
    let recall = if tp + fn_count > 0 {
        tp as f64 / (tp + fn_count) as f64
    } else {
        0.0
    };
    let f_measure = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    (precision, recall, f_measure)
}

/// Compare edge supports: an edge is a pair (i < j) with positive weight;
/// weights beyond nonzero-ness are ignored.
pub fn edge_metrics(learned: &Graph, truth: &Graph) -> Result<EdgeMetrics> {
    if learned.n() != truth.n() {
        return Err(Error::DimensionMismatch(format!(
            "learned graph has {} vertices, truth has {}",
            learned.n(),
            truth.n()
        )));
    }
    let n = learned.n();
    let (mut tp, mut fp, mut fn_count) = (0usize, 0usize, 0usize);
    for i in 0..n {
        for j in (i + 1)..n {
            let l = learned.weights()[[i, j]] > 0.0;
            let t = truth.weights()[[i, j]] > 0.0;
            match (l, t) {
                (true, true) => tp += 1,
                (true, false) => fp += 1,
                (false, true) => fn_count += 1,
                (false, false) => {}
            }
        }
    }
    let (precision, recall, f_measure) = prf_from_counts(tp, fp, fn_count);
    Ok(EdgeMetrics {
        precision,
        recall,
        f_measure,
        tp,
        fp,
        fn_count,
    })
}

/// Compare nonzero supports of two code matrices over (atom, signal) pairs.
/// Atom indexing is fixed by (subdictionary, center vertex), so supports are
/// directly comparable without any alignment step.
pub fn code_metrics(learned: &SparseCodeMatrix, truth: &SparseCodeMatrix) -> Result<CodeMetrics> {
    if learned.codes().dim() != truth.codes().dim() {
        return Err(Error::DimensionMismatch(format!(
            "code matrices differ in shape: {:?} vs {:?}",
            learned.codes().dim(),
            truth.codes().dim()
        )));
    }
    let (mut tp, mut fp, mut fn_count) = (0usize, 0usize, 0usize);
    for (idx, &lv) in learned.codes().indexed_iter() {
        let l = lv.abs() > SUPPORT_TOL;
        let t = truth.codes()[idx].abs() > SUPPORT_TOL;
        match (l, t) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fn_count += 1,
            (false, false) => {}
        }
    }
    let (precision, recall, f_measure) = prf_from_counts(tp, fp, fn_count);
    Ok(CodeMetrics {
        precision,
        recall,
        f_measure,
        tp,
        fp,
        fn_count,
    })
}

/// Mean and sample standard deviation of each component.
pub fn aggregate<T: PrfScore>(metrics: &[T]) -> Result<MetricsSummary> {
    if metrics.is_empty() {
        return Err(Error::EmptyList);
    }
    let n = metrics.len() as f64;
    let stat = |pick: &dyn Fn(&T) -> f64| -> SummaryStat {
        let mean = metrics.iter().map(pick).sum::<f64>() / n;
        let std = if metrics.len() > 1 {
            let var = metrics
                .iter()
                .map(|m| (pick(m) - mean).powi(2))
                .sum::<f64>()
                / (n - 1.0);
            var.sqrt()
        } else {
            0.0
        };
        SummaryStat { mean, std }
    };
    Ok(MetricsSummary {
        precision: stat(&|m: &T| m.prf().0),
        recall: stat(&|m: &T| m.prf().1),
        f_measure: stat(&|m: &T| m.prf().2),
        count: metrics.len(),
    })
}
