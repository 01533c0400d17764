//! Seeded generators for every structured input the inequalities quantify over.
//!
//! # Random streams
//!
//! All randomness comes from ChaCha20 (the RFC 8439 block function, 20 rounds)
//! as implemented by `rand_chacha::ChaCha20Rng`. ChaCha is counter-based: the
//! output is a pure function of (key, stream id, block counter). A run with
//! `seed` and trial `t` uses
//!
//! - key: `ChaCha20Rng::seed_from_u64(seed)` (rand_core's PCG32 key expansion),
//! - stream id: `t`,
//!
//! so every trial owns an independent stream and results never depend on the
//! order in which workers pick up trials. Gaussians come from `rand_distr`'s
//! `StandardNormal` (ziggurat), uniform floats from `rand`'s 53-bit conversion.
//!
//! Test vectors, checked in this module's tests:
//!
//! - all-zero key, stream 0: first `u32` outputs
//!   `0xade0b876 0x903df1a0 0xe56a5d40 0x28bd8653` (the published ChaCha20
//!   zero-key keystream);
//! - `seed = 42`, stream 0: first `u64` outputs `0x8398bc11d7b54878`, `0x6902c9f9a3176399`;
//! - `seed = 42`, stream 7: first `u64` output `0x103800bb90246b01`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::calculus::{Atom, HerglotzMeasure};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, NormalMatrix, SpectralDecomposition};

/// Generator behind every sampler.
pub type TrialRng = ChaCha20Rng;

pub const DEFAULT_MIN_GAP: f64 = 0.05;
pub const MAX_DIM: usize = 16;
pub const MAX_ATOMS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerConfig {
    pub seed: u64,
    pub dim: usize,
    /// Enforced lower bound on the distance from sampled spectra to the unit circle.
    pub min_gap: f64,
    /// Scale of general and commuting `X` matrices.
    pub max_entry: f64,
}

impl SamplerConfig {
    pub fn new(seed: u64, dim: usize) -> Result<Self> {
        let cfg = Self {
            seed,
            dim,
            min_gap: DEFAULT_MIN_GAP,
            max_entry: 1.0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_min_gap(mut self, min_gap: f64) -> Result<Self> {
        self.min_gap = min_gap;
        self.validate()?;
        Ok(self)
    }

    pub fn with_max_entry(mut self, max_entry: f64) -> Result<Self> {
        self.max_entry = max_entry;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_DIM).contains(&self.dim) {
            return Err(Error::Domain(format!("dim {} not in [1, {MAX_DIM}]", self.dim)));
        }
        if !(self.min_gap > 0.0 && self.min_gap < 1.0) {
            return Err(Error::Domain(format!("min_gap {} not in (0, 1)", self.min_gap)));
        }
        if !(self.max_entry >= 0.0 && self.max_entry.is_finite()) {
            return Err(Error::Domain(format!("max_entry {} must be finite and >= 0", self.max_entry)));
        }
        Ok(())
    }

    /// Independent stream for one trial.
    pub fn stream(&self, trial_index: u64) -> TrialRng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(trial_index);
        rng
    }

    /// Largest eigenvalue modulus allowed by `min_gap`.
    pub fn spectral_radius_bound(&self) -> f64 {
        1.0 - self.min_gap
    }
}

fn normal_from_parts(eigenvalues: Vec<Complex64>, basis: ComplexMatrix) -> NormalMatrix {
    NormalMatrix::from_decomposition(SpectralDecomposition {
        eigenvalues,
        eigenvectors: basis,
    })
}

/// Standard complex Gaussian, `E|z|² = 1`.
pub fn complex_gaussian(rng: &mut TrialRng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre(n: usize, rng: &mut TrialRng) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| complex_gaussian(rng))
}

/// Orthonormalizes the columns of a square matrix by modified Gram–Schmidt
/// (two passes), giving the `Q` of a QR factorization whose `R` has a positive
/// diagonal.
pub(crate) fn orthonormalize(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.rows();
    let mut cols: Vec<Vec<Complex64>> = (0..m.cols()).map(|j| m.column(j)).collect();
    for j in 0..cols.len() {
        for _pass in 0..2 {
            for i in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let qi = &done[i];
                let proj: Complex64 = qi.iter().zip(rest[0].iter()).map(|(q, v)| q.conj() * v).sum();
                for (v, q) in rest[0].iter_mut().zip(qi) {
                    *v -= proj * q;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for v in &mut cols[j] {
            *v /= norm;
        }
    }
    ComplexMatrix::from_fn(n, cols.len(), |i, j| cols[j][i])
}

/// Haar-distributed unitary: Gram–Schmidt on a complex Ginibre matrix, which
/// fixes the phases of `R`'s diagonal to be positive.
pub fn random_unitary(cfg: &SamplerConfig, rng: &mut TrialRng) -> ComplexMatrix {
    orthonormalize(&ginibre(cfg.dim, rng))
}

/// Uniform point in the closed disk of the given radius, by rejection from the
/// bounding square.
pub fn uniform_in_disk(radius: f64, rng: &mut TrialRng) -> Complex64 {
    loop {
        let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if z.norm_sqr() < 1.0 {
            return z * radius;
        }
    }
}

/// `A = U diag(λ) U*` with `λ_j` uniform in the disk of radius `1 - min_gap`.
pub fn random_normal_in_disk(cfg: &SamplerConfig, rng: &mut TrialRng) -> NormalMatrix {
    let radius = cfg.spectral_radius_bound();
    let eigenvalues: Vec<Complex64> = (0..cfg.dim).map(|_| uniform_in_disk(radius, rng)).collect();
    let basis = random_unitary(cfg, rng);
    normal_from_parts(eigenvalues, basis)
}

/// Admissible eigenvalue interval: `[lo, hi]` intersected with
/// `[-(1 - min_gap), 1 - min_gap]`.
pub fn effective_interval(cfg: &SamplerConfig, lo: f64, hi: f64) -> Result<(f64, f64)> {
    if !(-1.0..=1.0).contains(&lo) || !(-1.0..=1.0).contains(&hi) || lo >= hi {
        return Err(Error::Domain(format!("need -1 <= lo < hi <= 1, got [{lo}, {hi}]")));
    }
    let bound = cfg.spectral_radius_bound();
    let (a, b) = (lo.max(-bound), hi.min(bound));
    if a >= b {
        return Err(Error::Domain(format!(
            "interval [{lo}, {hi}] leaves no room for min_gap {}",
            cfg.min_gap
        )));
    }
    Ok((a, b))
}

/// Hermitian `A` with eigenvalues uniform in `[lo, hi]` clipped to the
/// gap-respecting range; `lo = 0` gives a positive semidefinite matrix.
pub fn random_hermitian_in_interval(
    cfg: &SamplerConfig,
    lo: f64,
    hi: f64,
    rng: &mut TrialRng,
) -> Result<NormalMatrix> {
    let (a, b) = effective_interval(cfg, lo, hi)?;
    let eigenvalues: Vec<Complex64> = (0..cfg.dim)
        .map(|_| Complex64::new(rng.random_range(a..b), 0.0))
        .collect();
    let basis = random_unitary(cfg, rng);
    let mut s = normal_from_parts(eigenvalues, basis);
    s.matrix = s.matrix.hermitian_part();
    Ok(s)
}

/// Commuting normal pair sharing one eigenbasis: `A` with spectrum in the
/// gap-respecting disk and `X = U diag(ξ) U*`, `ξ` complex Gaussian scaled by
/// `max_entry`.
#[derive(Debug, Clone)]
pub struct CommutingPair {
    pub a: NormalMatrix,
    pub x: NormalMatrix,
}

pub fn random_commuting_normal_pair(cfg: &SamplerConfig, rng: &mut TrialRng) -> CommutingPair {
    let a = random_normal_in_disk(cfg, rng);
    let xi: Vec<Complex64> = (0..cfg.dim).map(|_| complex_gaussian(rng) * cfg.max_entry).collect();
    let x = normal_from_parts(xi, a.decomposition.eigenvectors.clone());
    CommutingPair { a, x }
}

/// I.i.d. complex Gaussian entries scaled by `max_entry / sqrt(dim)`.
pub fn random_general(cfg: &SamplerConfig, rng: &mut TrialRng) -> ComplexMatrix {
    let scale = cfg.max_entry / (cfg.dim as f64).sqrt();
    ComplexMatrix::from_fn(cfg.dim, cfg.dim, |_, _| complex_gaussian(rng) * scale)
}

/// Between 1 and 8 atoms, uniform angles, flat-Dirichlet weights.
pub fn random_herglotz(rng: &mut TrialRng) -> HerglotzMeasure {
    let k = rng.random_range(1..=MAX_ATOMS);
    let angles: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..TAU)).collect();
    let raw: Vec<f64> = (0..k).map(|_| Exp1.sample(rng)).collect();
    HerglotzMeasure::new(normalized_atoms(&angles, &raw)).expect("normalized weights form a probability measure")
}

/// Atoms with weights `raw / Σ raw`, the last weight absorbing round-off so the
/// total is 1 to the last bit.
pub(crate) fn normalized_atoms(angles: &[f64], raw: &[f64]) -> Vec<Atom> {
    let total: f64 = raw.iter().sum();
    let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let head: f64 = weights[..weights.len() - 1].iter().sum();
    *weights.last_mut().expect("at least one atom") = (1.0 - head).max(0.0);
    angles
        .iter()
        .zip(weights)
        .map(|(&angle, weight)| Atom {
            angle: angle.rem_euclid(TAU),
            weight,
        })
        .collect()
}
