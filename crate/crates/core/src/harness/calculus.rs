use rayon::prelude::*;
use serde::Serialize;

use crate::calculus::{apply_spectral, contour_trapezoid, riesz_dunford, ContourSpec, HerglotzMeasure, DEFAULT_NODES};
use crate::error::{Error, Result};
use crate::linalg::{operator_norm, NormalMatrix};
use crate::samplers::{random_herglotz, random_normal_in_disk, SamplerConfig};

/// Spectral gap used for calculus trials; keeps `ρ(A) ≤ 0.8` so a contour at
/// `(ρ + 1)/2` sits at least 0.1 from both the spectrum and the poles of `f`.
pub const CALCULUS_MIN_GAP: f64 = 0.2;

/// Largest accepted discrepancy between the two evaluation paths.
pub const CALCULUS_TOL: f64 = 1e-8;

/// `||f(A)_contour - f(A)_spectral||_op` with `nodes` quadrature nodes on the
/// circle of radius `(ρ(A) + 1)/2`.
///
/// At [`DEFAULT_NODES`] or more the contour value also passes the internal
/// N-vs-2N accuracy check; coarser rules are evaluated unchecked.
pub fn calculus_discrepancy(a: &NormalMatrix, f: &HerglotzMeasure, nodes: usize) -> Result<f64> {
    let spectral = apply_spectral(f, &a.decomposition)?;
    let contour = ContourSpec::midway(a.decomposition.spectral_radius(), nodes)?;
    let kernel = |z| f.kernel_sum(z);
    let integral = if nodes >= DEFAULT_NODES {
        riesz_dunford(kernel, &a.matrix, &contour)?
    } else {
        contour_trapezoid(kernel, &a.matrix, &contour)?
    };
    operator_norm(&(&integral - &spectral))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CalculusTrial {
    pub trial_index: u64,
    pub discrepancy_coarse: f64,
    pub discrepancy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CalculusSummary {
    pub dim: usize,
    pub trials: u64,
    pub seed: u64,
    pub nodes: usize,
    pub coarse_nodes: usize,
    /// Worst discrepancy at `nodes`.
    pub worst: f64,
    /// Worst discrepancy at `nodes / 2`.
    pub worst_coarse: f64,
    /// Trials where doubling the node count did not shrink the discrepancy.
    pub non_decreasing: Vec<u64>,
    pub per_trial: Vec<CalculusTrial>,
}

impl CalculusSummary {
    pub fn success(&self) -> bool {
        self.worst <= CALCULUS_TOL
    }
}

/// Compares the contour-integral and spectral evaluations of random Herglotz
/// functions at random normal matrices, with 128 and 256 nodes.
pub fn calculus_check(dim: usize, trials: u64, seed: u64) -> Result<CalculusSummary> {
    if trials == 0 {
        return Err(Error::Usage("trials must be at least 1".into()));
    }
    let sampler = SamplerConfig::new(seed, dim)
        .and_then(|c| c.with_min_gap(CALCULUS_MIN_GAP))
        .map_err(|e| Error::Usage(e.to_string()))?;
    let nodes = DEFAULT_NODES;
    let coarse_nodes = DEFAULT_NODES / 2;
    let per_trial = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = sampler.stream(t);
            let a = random_normal_in_disk(&sampler, &mut rng);
            let f = random_herglotz(&mut rng);
            Ok(CalculusTrial {
                trial_index: t,
                discrepancy_coarse: calculus_discrepancy(&a, &f, coarse_nodes)?,
                discrepancy: calculus_discrepancy(&a, &f, nodes)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CalculusSummary {
        dim,
        trials,
        seed,
        nodes,
        coarse_nodes,
        worst: per_trial.iter().map(|t| t.discrepancy).fold(0.0, f64::max),
        worst_coarse: per_trial.iter().map(|t| t.discrepancy_coarse).fold(0.0, f64::max),
        non_decreasing: per_trial
            .iter()
            .filter(|t| !(t.discrepancy < t.discrepancy_coarse))
            .map(|t| t.trial_index)
            .collect(),
        per_trial,
    })
}
