use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::ResolventFamily;
use crate::error::{Error, Result};
use crate::linalg::{operator_norm, ComplexMatrix};

/// Deviation bound under which a grid certificate counts as G₁.
pub const G1_TOL: f64 = 1e-7;

/// Minimum distance of exterior probes from the spectrum.
const EXTERIOR_MIN_DIST: f64 = 0.05;

/// Fixed key of the exterior-probe stream, so certificates are reproducible.
const PROBE_SEED: u64 = 0x6731_5052_4f42_4553;

/// Resolvent-growth check of `||(z - A)^{-1}|| = 1 / dist(z, σ(A))` on a probe grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GOneCertificate {
    pub grid: Vec<Complex64>,
    /// Signed `||(z - A)^{-1}|| · dist(z, σ(A)) - 1` per probe; never below
    /// round-off since the left factor is at least `1/dist`.
    pub deviations: Vec<f64>,
    /// `max |deviation|` over the grid.
    pub max_deviation: f64,
}

impl GOneCertificate {
    pub fn is_g1(&self) -> bool {
        self.max_deviation <= G1_TOL
    }
}

/// Signed deviation `||(z - A)^{-1}|| · dist(z, σ(A)) - 1` at one point.
pub fn g1_deviation(family: &ResolventFamily, z: Complex64) -> Result<f64> {
    let r = family.at(z)?;
    Ok(operator_norm(&r)? * family.distance(z) - 1.0)
}

/// Certificate on an explicit grid.
pub fn g1_certify_at(a: &ComplexMatrix, grid: &[Complex64]) -> Result<GOneCertificate> {
    let family = ResolventFamily::new(a)?;
    let deviations = grid
        .iter()
        .map(|&z| g1_deviation(&family, z))
        .collect::<Result<Vec<_>>>()?;
    let max_deviation = deviations.iter().map(|d| d.abs()).fold(0.0, f64::max);
    Ok(GOneCertificate {
        grid: grid.to_vec(),
        deviations,
        max_deviation,
    })
}

/// Certificate on `probes` equispaced unit-circle points plus `probes` exterior
/// points drawn from a fixed stream in the disk of radius `ρ(A) + 1`, each at
/// distance at least 0.05 from the spectrum.
pub fn g1_certify(a: &ComplexMatrix, probes: usize) -> Result<GOneCertificate> {
    if probes < 8 {
        return Err(Error::Domain(format!("need at least 8 probes, got {probes}")));
    }
    let family = ResolventFamily::new(a)?;
    let outer = family.spectral_radius() + 1.0;
    let mut grid: Vec<Complex64> = (0..probes)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / probes as f64))
        .filter(|&z| family.distance(z) >= EXTERIOR_MIN_DIST)
        .collect();
    let mut rng = ChaCha20Rng::seed_from_u64(PROBE_SEED);
    let mut exterior = 0;
    while exterior < probes {
        let z = Complex64::new(rng.random_range(-outer..outer), rng.random_range(-outer..outer));
        if z.norm() <= outer && family.distance(z) >= EXTERIOR_MIN_DIST {
            grid.push(z);
            exterior += 1;
        }
    }
    let deviations = grid
        .iter()
        .map(|&z| g1_deviation(&family, z))
        .collect::<Result<Vec<_>>>()?;
    let max_deviation = deviations.iter().map(|d| d.abs()).fold(0.0, f64::max);
    Ok(GOneCertificate {
        grid,
        deviations,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn scalar_is_exact() {
        let a = ComplexMatrix::from_rows(&[&[c(0.3, -0.4)]]).unwrap();
        let cert = g1_certify(&a, 16).unwrap();
        assert!(cert.max_deviation < 1e-15, "{}", cert.max_deviation);
        assert_eq!(cert.grid.len(), 32);
    }

    #[test]
    fn jordan_block_is_not_g1() {
        let j = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let cert = g1_certify_at(&j, &[c(0.5, 0.0)]).unwrap();
        // ||[[2,4],[0,2]]|| = 2 + 2√2, times dist 0.5, minus 1.
        let want = (2.0 + 2.0 * 2f64.sqrt()) * 0.5 - 1.0;
        assert!((cert.deviations[0] - want).abs() < 1e-13);
        assert!(cert.max_deviation > 0.5);
        assert!(!g1_certify(&j, 8).unwrap().is_g1());
    }

    #[test]
    fn diagonal_passes() {
        let a = ComplexMatrix::from_diag(&[c(0.5, 0.0), c(0.0, 0.3), c(-0.2, -0.2)]);
        let cert = g1_certify(&a, 32).unwrap();
        assert!(cert.is_g1());
        assert!(cert.deviations.iter().all(|&d| d >= -1e-9));
    }

    #[test]
    fn too_few_probes() {
        assert!(matches!(
            g1_certify(&ComplexMatrix::identity(1), 7),
            Err(Error::Domain(_))
        ));
    }
}
