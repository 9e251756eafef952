//! Ground-truth graph generators and planted training signals.
//!
//! All generators are pure functions of (config, seed) with a ChaCha8 stream,
//! so instances reproduce exactly across runs and platforms.

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dictionary::build_dictionary;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernels::KernelSpec;
use crate::omp::{SignalSet, SparseCodeMatrix};

const MAX_ATTEMPTS: usize = 100;

/// Random-graph family and its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphModel {
    /// Independent unit-weight edges with probability `p`.
    Er { p: f64 },
    /// Vertices uniform in the unit square; edge weight
    /// `exp(-dist^2 / (2 sigma^2))` when `dist <= kappa`, zero otherwise.
    Rbf { sigma: f64, kappa: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticGraphConfig {
    pub n: usize,
    pub model: GraphModel,
    /// Approximate edge count the model parameters should be calibrated to.
    pub target_edges: Option<usize>,
    pub seed: u64,
}

impl SyntheticGraphConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::TooFewVertices(self.n));
        }
        match self.model {
            GraphModel::Er { p } => {
                if !p.is_finite() || p <= 0.0 || p >= 1.0 {
                    return Err(Error::InvalidConfig(format!(
                        "edge probability must be in (0, 1), got {p}"
                    )));
                }
            }
            GraphModel::Rbf { sigma, kappa } => {
                if !sigma.is_finite() || sigma <= 0.0 {
                    return Err(Error::InvalidConfig(format!(
                        "sigma must be > 0, got {sigma}"
                    )));
                }
                if !kappa.is_finite() || kappa <= 0.0 {
                    return Err(Error::InvalidConfig(format!(
                        "kappa must be > 0, got {kappa}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A ground-truth graph together with signals generated exactly from the
/// sparse model, for recovery scoring.
#[derive(Debug, Clone)]
pub struct PlantedInstance {
    pub graph: Graph,
    pub signals: SignalSet,
    pub true_codes: SparseCodeMatrix,
    pub spec: KernelSpec,
}

/// Sample an Erdos-Renyi graph with unit weights; regenerate (same stream)
/// until no vertex is isolated, which the signal model needs.
pub fn gen_er(cfg: &SyntheticGraphConfig) -> Result<Graph> {
    cfg.validate()?;
    let p = match cfg.model {
        GraphModel::Er { p } => p,
        _ => {
            return Err(Error::InvalidConfig(
                "gen_er called with a non-ER model".into(),
            ))
        }
    };
    let n = cfg.n;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut w = Array2::<f64>::zeros((n, n));
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.random::<f64>() < p {
                    w[[i, j]] = 1.0;
                    w[[j, i]] = 1.0;
                }
            }
        }
        let graph = Graph::from_weights(w)?;
        if graph.min_degree() > 0.0 {
            return Ok(graph);
        }
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ATTEMPTS,
    })
}

/// Sample a thresholded-Gaussian-kernel graph on random unit-square
/// coordinates; regenerates like [`gen_er`].
pub fn gen_rbf(cfg: &SyntheticGraphConfig) -> Result<Graph> {
    cfg.validate()?;
    let (sigma, kappa) = match cfg.model {
        GraphModel::Rbf { sigma, kappa } => (sigma, kappa),
        _ => {
            return Err(Error::InvalidConfig(
                "gen_rbf called with a non-RBF model".into(),
            ))
        }
    };
    let n = cfg.n;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..MAX_ATTEMPTS {
        let coords = sample_coords(&mut rng, n);
        let graph = rbf_from_coords(&coords, sigma, kappa)?;
        if graph.min_degree() > 0.0 {
            return Ok(graph);
        }
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ATTEMPTS,
    })
}

/// Dispatch on the configured model.
pub fn generate_graph(cfg: &SyntheticGraphConfig) -> Result<Graph> {
    match cfg.model {
        GraphModel::Er { .. } => gen_er(cfg),
        GraphModel::Rbf { .. } => gen_rbf(cfg),
    }
}

fn sample_coords(rng: &mut ChaCha8Rng, n: usize) -> Vec<(f64, f64)> {
    (0..n).map(|_| (rng.random(), rng.random())).collect()
}

fn rbf_from_coords(coords: &[(f64, f64)], sigma: f64, kappa: f64) -> Result<Graph> {
    let n = coords.len();
    let mut w = Array2::<f64>::zeros((n, n));
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = coords[i].0 - coords[j].0;
            let dy = coords[i].1 - coords[j].1;
            let dist = (dx * dx + dy * dy).sqrt();
            if dist <= kappa {
                let weight = (-dist * dist / (2.0 * sigma * sigma)).exp();
                w[[i, j]] = weight;
                w[[j, i]] = weight;
            }
        }
    }
    Graph::from_weights(w)
}

/// Resolve `target_edges` into model parameters.
///
/// ER has the closed form p = 2 E / (N (N-1)). For RBF the edge count is
/// monotone in kappa, so we bisect kappa against the mean edge count over 20
/// fixed trial coordinate sets until it lands within 10% of the target.
pub fn calibrate_density(cfg: &SyntheticGraphConfig) -> Result<SyntheticGraphConfig> {
    cfg.validate()?;
    let target = cfg.target_edges.ok_or_else(|| {
        Error::CalibrationFailed("target_edges is not set".into())
    })? as f64;
    let n = cfg.n;
    let max_edges = (n * (n - 1) / 2) as f64;
    if target < 1.0 || target > max_edges {
        return Err(Error::CalibrationFailed(format!(
            "target {target} outside 1..={max_edges}"
        )));
    }

    match cfg.model {
        GraphModel::Er { .. } => {
            let p = 2.0 * target / (n as f64 * (n as f64 - 1.0));
            if !p.is_finite() || p <= 0.0 || p >= 1.0 {
                return Err(Error::CalibrationFailed(format!(
                    "derived edge probability {p} outside (0, 1)"
                )));
            }
            Ok(SyntheticGraphConfig {
                model: GraphModel::Er { p },
                ..cfg.clone()
            })
        }
        GraphModel::Rbf { sigma, .. } => {
            const TRIALS: usize = 20;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let trial_coords: Vec<Vec<(f64, f64)>> =
                (0..TRIALS).map(|_| sample_coords(&mut rng, n)).collect();

            let mean_edges = |kappa: f64| -> f64 {
                let total: usize = trial_coords
                    .iter()
                    .map(|coords| {
                        let mut count = 0;
                        for i in 0..n {
                            for j in (i + 1)..n {
                                let dx = coords[i].0 - coords[j].0;
                                let dy = coords[i].1 - coords[j].1;
                                if (dx * dx + dy * dy).sqrt() <= kappa {
                                    count += 1;
                                }
                            }
                        }
                        count
                    })
                    .sum();
                total as f64 / TRIALS as f64
            };

            let mut lo = 0.0;
            let mut hi = std::f64::consts::SQRT_2;
            if mean_edges(hi) < target {
                return Err(Error::CalibrationFailed(format!(
                    "target {target} not reachable even with kappa = sqrt(2)"
                )));
            }
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                let edges = mean_edges(mid);
                if (edges - target).abs() <= 0.1 * target {
                    return Ok(SyntheticGraphConfig {
                        model: GraphModel::Rbf { sigma, kappa: mid },
                        ..cfg.clone()
                    });
                }
                if edges < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Err(Error::CalibrationFailed(
                "bisection on kappa did not land within 10% of the target".into(),
            ))
        }
    }
}

/// Plant `m` signals: each picks `t0` distinct atoms uniformly at random with
/// standard-normal coefficients, and Y = D X against the unnormalized
/// dictionary so the instance satisfies the model exactly.
pub fn gen_signals(
    graph: &Graph,
    spec: &KernelSpec,
    m: usize,
    t0: usize,
    seed: u64,
) -> Result<PlantedInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_signals_with(graph, spec, m, t0, &mut rng, |rng| {
        rng.sample(StandardNormal)
    })
}

/// Test hook: same protocol with a custom coefficient sampler.
pub(crate) fn gen_signals_with<F>(
    graph: &Graph,
    spec: &KernelSpec,
    m: usize,
    t0: usize,
    rng: &mut ChaCha8Rng,
    mut coeff: F,
) -> Result<PlantedInstance>
where
    F: FnMut(&mut ChaCha8Rng) -> f64,
{
    if m < 1 {
        return Err(Error::EmptySignalSet);
    }
    let n_atoms = graph.n() * spec.s_count();
    if t0 < 1 || t0 > n_atoms {
        return Err(Error::InvalidConfig(format!(
            "t0 = {t0} outside 1..={n_atoms}"
        )));
    }

    let mut codes = Array2::<f64>::zeros((n_atoms, m));
    for mut col in codes.columns_mut() {
        let mut placed = 0;
        while placed < t0 {
            let idx = rng.random_range(0..n_atoms);
            if col[idx] == 0.0 {
                col[idx] = coeff(rng);
                placed += 1;
            }
        }
    }
    let true_codes = SparseCodeMatrix::from_parts(codes, t0);
    let dict = build_dictionary(graph, spec)?;
    let signals = SignalSet::new(dict.apply(&true_codes))?;
    Ok(PlantedInstance {
        graph: graph.clone(),
        signals,
        true_codes,
        spec: spec.clone(),
    })
}
