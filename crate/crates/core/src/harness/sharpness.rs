use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::instance::{Instance, Region};
use crate::calculus::HerglotzMeasure;
use crate::error::{Error, Result};
use crate::inequalities::TheoremId;
use crate::linalg::{hermitian_eigen, ComplexMatrix, SpectralDecomposition};
use crate::norms::NormKind;
use crate::samplers::{complex_gaussian, normalized_atoms, orthonormalize, SamplerConfig, TrialRng, DEFAULT_MIN_GAP};
use crate::tolerance::REL_SLACK;

pub const MIN_BUDGET: u64 = 100;

/// Non-improving evaluations before a restart.
pub const STALL_LIMIT: u64 = 200;

/// Stream id of the search, distinct from every verify trial index in practice.
const SEARCH_STREAM: u64 = u64::MAX;

const STEP_SIZES: [f64; 5] = [0.3, 0.1, 0.03, 0.01, 0.001];

#[derive(Debug, Clone, PartialEq)]
pub struct SharpnessConfig {
    pub theorem: TheoremId,
    pub dim: usize,
    pub budget: u64,
    pub seed: u64,
    pub min_gap: f64,
}

impl SharpnessConfig {
    pub fn new(theorem: TheoremId, dim: usize, budget: u64, seed: u64) -> Self {
        Self {
            theorem,
            dim,
            budget,
            seed,
            min_gap: DEFAULT_MIN_GAP,
        }
    }

    pub fn validate(&self) -> Result<SamplerConfig> {
        if self.budget < MIN_BUDGET {
            return Err(Error::Usage(format!("budget must be at least {MIN_BUDGET}, got {}", self.budget)));
        }
        SamplerConfig::new(self.seed, self.dim)
            .and_then(|c| c.with_min_gap(self.min_gap))
            .map_err(|e| Error::Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessResult {
    pub theorem_id: TheoremId,
    pub dim: usize,
    pub seed: u64,
    pub best_ratio: f64,
    pub best_norm: NormKind,
    pub best_instance: Instance,
    pub evaluations_used: u64,
    pub restarts: u64,
    /// `best_ratio > 1 + 1e-9`: the instance contradicts a proved statement.
    pub anomaly: bool,
}

/// Largest ratio of `instance` over the norms its statement covers.
pub fn score(instance: &Instance) -> Result<(f64, NormKind)> {
    let bound = instance.evaluate()?;
    let mut best = (f64::NEG_INFINITY, NormKind::Operator);
    for k in instance.theorem.supported_norms(instance.dim) {
        let r = bound.ratio(&k);
        if r > best.0 || (r.is_nan() && !best.0.is_nan()) {
            best = (r, k);
        }
    }
    Ok(best)
}

/// Ratio of a serialized instance under one norm.
pub fn replay(instance: &Instance, norm: &NormKind) -> Result<f64> {
    Ok(instance.evaluate()?.ratio(norm))
}

/// Random-restart hill climbing on the ratio.
///
/// The first start is a sampled instance moved to the origin (`A = B = 0`), so
/// the known lower witnesses are always in the record. Later restarts are fresh
/// samples. Each step perturbs one input; improvements are kept.
pub fn sharpness(cfg: &SharpnessConfig) -> Result<SharpnessResult> {
    let sampler = cfg.validate()?;
    let mut rng = sampler.stream(SEARCH_STREAM);

    let mut current = Instance::sample(cfg.theorem, &sampler, &mut rng)?.at_origin();
    let (mut current_score, norm) = score(&current)?;
    let mut best = (current_score, norm, current.clone());
    let mut evaluations = 1u64;
    let mut stall = 0u64;
    let mut restarts = 0u64;

    while evaluations < cfg.budget {
        if stall >= STALL_LIMIT {
            current = Instance::sample(cfg.theorem, &sampler, &mut rng)?;
            current_score = score(&current).map(|s| s.0).unwrap_or(f64::NEG_INFINITY);
            evaluations += 1;
            stall = 0;
            restarts += 1;
            if current_score > best.0 {
                best = (current_score, score(&current)?.1, current.clone());
            }
            continue;
        }
        let candidate = perturb(&current, &sampler, &mut rng);
        evaluations += 1;
        match score(&candidate) {
            Ok((s, k)) if s > current_score => {
                current_score = s;
                current = candidate;
                stall = 0;
                if s > best.0 {
                    best = (s, k, current.clone());
                }
            }
            _ => stall += 1,
        }
    }

    Ok(SharpnessResult {
        theorem_id: cfg.theorem,
        dim: cfg.dim,
        seed: cfg.seed,
        best_ratio: best.0,
        best_norm: best.1,
        best_instance: best.2,
        evaluations_used: evaluations,
        restarts,
        anomaly: !(best.0 <= 1.0 + REL_SLACK),
    })
}

/// Writes the full result to `<dir>/sharpness-<theorem>-<seed>.quarantine.json`.
pub fn write_quarantine(result: &SharpnessResult, dir: &Path) -> Result<PathBuf> {
    let path = dir.join(format!("sharpness-{}-{}.quarantine.json", result.theorem_id, result.seed));
    let body = serde_json::to_string_pretty(result).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(&path, body + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(path)
}

#[derive(Debug, Clone, Copy)]
enum Move {
    EigA,
    EigB,
    RotA,
    RotB,
    X,
    XEigs,
    Y,
    U,
    F,
    G,
    Alpha,
    Beta,
}

fn moves(inst: &Instance) -> Vec<Move> {
    let mut m = Vec::new();
    if inst.a.is_some() {
        m.extend([Move::EigA, Move::RotA]);
    }
    if inst.b.is_some() {
        m.extend([Move::EigB, Move::RotB]);
    }
    let flags = [
        (inst.x.is_some(), Move::X),
        (inst.x_eigs.is_some(), Move::XEigs),
        (inst.y.is_some(), Move::Y),
        (inst.u.is_some(), Move::U),
        (inst.f.is_some(), Move::F),
        (inst.g.is_some(), Move::G),
        (inst.alpha.is_some(), Move::Alpha),
        (inst.beta.is_some(), Move::Beta),
    ];
    m.extend(flags.iter().filter(|(on, _)| *on).map(|(_, mv)| *mv));
    m
}

fn perturb(inst: &Instance, sampler: &SamplerConfig, rng: &mut TrialRng) -> Instance {
    let mut next = inst.clone();
    let options = moves(inst);
    let mv = options[rng.random_range(0..options.len())];
    let step = STEP_SIZES[rng.random_range(0..STEP_SIZES.len())];
    let shape = inst.shape();
    let bound = sampler.spectral_radius_bound();
    match mv {
        Move::EigA => nudge_eigenvalue(next.a.as_mut(), shape.a, bound, step, rng),
        Move::EigB => nudge_eigenvalue(next.b.as_mut(), shape.b, bound, step, rng),
        Move::RotA => {
            if let Some(d) = next.a.as_mut() {
                d.eigenvectors = rotate(&d.eigenvectors, step, rng);
            }
        }
        Move::RotB => {
            if let Some(d) = next.b.as_mut() {
                d.eigenvectors = rotate(&d.eigenvectors, step, rng);
            }
        }
        Move::X => jitter(next.x.as_mut(), step, rng),
        Move::Y => jitter(next.y.as_mut(), step, rng),
        Move::XEigs => {
            if let Some(xi) = next.x_eigs.as_mut() {
                let j = rng.random_range(0..xi.len());
                xi[j] += complex_gaussian(rng) * step;
            }
        }
        Move::U => {
            if let Some(u) = next.u.as_mut() {
                *u = rotate(u, step, rng);
            }
        }
        Move::F => next.f = next.f.as_ref().map(|m| nudge_measure(m, step, rng)),
        Move::G => next.g = next.g.as_ref().map(|m| nudge_measure(m, step, rng)),
        Move::Alpha => next.alpha = next.alpha.map(|a| (a + gaussian(rng) * step * PI).rem_euclid(2.0 * PI)),
        Move::Beta => next.beta = next.beta.map(|b| (b + gaussian(rng) * step * PI).rem_euclid(2.0 * PI)),
    }
    next
}

fn gaussian(rng: &mut TrialRng) -> f64 {
    StandardNormal.sample(rng)
}

/// Moves one eigenvalue and projects it back into its region.
fn nudge_eigenvalue(
    d: Option<&mut SpectralDecomposition>,
    region: Option<Region>,
    bound: f64,
    step: f64,
    rng: &mut TrialRng,
) {
    let (Some(d), Some(region)) = (d, region) else {
        return;
    };
    let j = rng.random_range(0..d.eigenvalues.len());
    let l = d.eigenvalues[j];
    d.eigenvalues[j] = match region {
        Region::Disk => {
            let z = l + complex_gaussian(rng) * step;
            if z.norm() > bound {
                z * (bound / z.norm())
            } else {
                z
            }
        }
        Region::Interval(lo, hi) => {
            let v = l.re + gaussian(rng) * step;
            Complex64::new(v.clamp(lo.max(-bound), hi.min(bound)), 0.0)
        }
    };
}

/// Geodesic step `U ← exp(iεH) U` with `H` a random Hermitian direction,
/// followed by re-orthonormalization against drift.
fn rotate(u: &ComplexMatrix, step: f64, rng: &mut TrialRng) -> ComplexMatrix {
    let n = u.rows();
    let g = ComplexMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let h = g.hermitian_part();
    let Ok(e) = hermitian_eigen(&h) else {
        return u.clone();
    };
    let scale = step / (n as f64).sqrt();
    let phases: Vec<Complex64> = e.values.iter().map(|&v| Complex64::from_polar(1.0, scale * v)).collect();
    let w = ComplexMatrix::conjugate_diag(&e.vectors, &phases);
    orthonormalize(&(&w * u))
}

fn jitter(m: Option<&mut ComplexMatrix>, step: f64, rng: &mut TrialRng) {
    if let Some(m) = m {
        let n = m.rows();
        let scale = step / (n as f64).sqrt();
        let noise = ComplexMatrix::from_fn(n, m.cols(), |_, _| complex_gaussian(rng) * scale);
        *m = &*m + &noise;
    }
}

/// Shifts one atom's angle and rescales one weight, then renormalizes.
fn nudge_measure(m: &HerglotzMeasure, step: f64, rng: &mut TrialRng) -> HerglotzMeasure {
    let atoms = m.atoms();
    let mut angles: Vec<f64> = atoms.iter().map(|a| a.angle).collect();
    let mut weights: Vec<f64> = atoms.iter().map(|a| a.weight).collect();
    let j = rng.random_range(0..atoms.len());
    angles[j] += gaussian(rng) * step * PI;
    weights[j] *= (gaussian(rng) * step).exp();
    if weights.iter().sum::<f64>() <= 0.0 {
        return m.clone();
    }
    HerglotzMeasure::new(normalized_atoms(&angles, &weights)).unwrap_or_else(|_| m.clone())
}
