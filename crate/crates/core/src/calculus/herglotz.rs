use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, SpectralDecomposition};

/// Tolerance on the total mass of a measure.
pub const MASS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    /// Position on the circle, in `[0, 2π)`.
    pub angle: f64,
    pub weight: f64,
}

/// Finite atomic probability measure `μ` on the unit circle.
///
/// It represents the analytic function
/// `f(z) = Σ_j w_j (e^{iα_j} + z) / (e^{iα_j} - z)` on the open unit disk, which
/// has positive real part and `f(0) = Σ w_j = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Atom>", into = "Vec<Atom>")]
pub struct HerglotzMeasure {
    atoms: Vec<Atom>,
}

impl HerglotzMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Domain("a measure needs at least one atom".into()));
        }
        for a in &atoms {
            if !(a.weight >= 0.0 && a.weight.is_finite()) {
                return Err(Error::Domain(format!("negative or non-finite weight {}", a.weight)));
            }
            if !(0.0..TAU).contains(&a.angle) {
                return Err(Error::Domain(format!("angle {} outside [0, 2π)", a.angle)));
            }
        }
        let mass: f64 = atoms.iter().map(|a| a.weight).sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(Error::Domain(format!("total mass {mass} is not 1")));
        }
        Ok(Self { atoms })
    }

    /// Unit mass at `angle` (reduced mod 2π): `f(z) = (e^{iα} + z)/(e^{iα} - z)`.
    pub fn point_mass(angle: f64) -> Self {
        Self {
            atoms: vec![Atom {
                angle: angle.rem_euclid(TAU),
                weight: 1.0,
            }],
        }
    }

    /// `n` equal atoms at `2πk/n`; converges to `f ≡ 1`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("uniform measure needs n >= 1".into()));
        }
        Self::new(
            (0..n)
                .map(|k| Atom {
                    angle: TAU * k as f64 / n as f64,
                    weight: 1.0 / n as f64,
                })
                .collect(),
        )
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// `f(z)` for `|z| < 1`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if !(z.norm() < 1.0) {
            return Err(Error::Domain(format!("|z| = {} is not inside the unit disk", z.norm())));
        }
        Ok(self.kernel_sum(z))
    }

    /// The kernel sum without the disk check; finite everywhere off the atoms.
    pub fn kernel_sum(&self, z: Complex64) -> Complex64 {
        self.atoms
            .iter()
            .map(|a| {
                let e = Complex64::from_polar(1.0, a.angle);
                (e + z) / (e - z) * a.weight
            })
            .sum()
    }
}

impl TryFrom<Vec<Atom>> for HerglotzMeasure {
    type Error = Error;

    fn try_from(atoms: Vec<Atom>) -> Result<Self> {
        Self::new(atoms)
    }
}

impl From<HerglotzMeasure> for Vec<Atom> {
    fn from(m: HerglotzMeasure) -> Self {
        m.atoms
    }
}

/// `f(z)` for the function represented by `m`.
pub fn herglotz_eval(m: &HerglotzMeasure, z: Complex64) -> Result<Complex64> {
    m.eval(z)
}

/// `f(A) = U diag(f(λ_j)) U*` for a normal matrix given by its decomposition.
pub fn apply_spectral(m: &HerglotzMeasure, d: &SpectralDecomposition) -> Result<ComplexMatrix> {
    let values = d
        .eigenvalues
        .iter()
        .map(|&z| m.eval(z))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComplexMatrix::conjugate_diag(&d.eigenvectors, &values))
}
