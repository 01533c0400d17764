use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eig_normal, eigenvalues, operator_norm, solve, ComplexMatrix, NORMALITY_TOL};

/// Smallest distance to the spectrum at which a resolvent is still evaluated.
pub const MIN_RESOLVENT_DISTANCE: f64 = 1e-8;

/// Default node count for the circle quadrature.
pub const DEFAULT_NODES: usize = 256;

/// Circle `|z| = radius` sampled at `nodes` equispaced points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    radius: f64,
    nodes: usize,
}

impl ContourSpec {
    pub fn new(radius: f64, nodes: usize) -> Result<Self> {
        if !(radius > 0.0 && radius < 1.0) {
            return Err(Error::Domain(format!("contour radius {radius} not in (0, 1)")));
        }
        if nodes < 16 || nodes % 2 != 0 {
            return Err(Error::Domain(format!("node count {nodes} must be even and >= 16")));
        }
        Ok(Self { radius, nodes })
    }

    /// Radius halfway between the spectral radius and the unit circle.
    pub fn midway(spectral_radius: f64, nodes: usize) -> Result<Self> {
        Self::new((spectral_radius + 1.0) / 2.0, nodes)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    fn node(&self, k: usize, count: usize) -> Complex64 {
        Complex64::from_polar(self.radius, TAU * k as f64 / count as f64)
    }
}

/// Spectrum of `a`: the normal route when `a` is normal, Hessenberg QR otherwise.
pub fn spectrum(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    match eig_normal(a, NORMALITY_TOL) {
        Ok(d) => Ok(d.eigenvalues),
        Err(Error::NotNormal { .. }) => eigenvalues(a),
        Err(e) => Err(e),
    }
}

/// `dist(z, σ)`.
pub fn distance_to_spectrum(z: Complex64, spectrum: &[Complex64]) -> f64 {
    spectrum.iter().map(|l| (z - l).norm()).fold(f64::INFINITY, f64::min)
}

/// Resolvents `(z - A)^{-1}` of one matrix at many points, sharing one spectrum
/// computation.
#[derive(Debug, Clone)]
pub struct ResolventFamily {
    matrix: ComplexMatrix,
    spectrum: Vec<Complex64>,
}

impl ResolventFamily {
    pub fn new(a: &ComplexMatrix) -> Result<Self> {
        a.ensure_square()?;
        Ok(Self {
            matrix: a.clone(),
            spectrum: spectrum(a)?,
        })
    }

    pub fn spectrum(&self) -> &[Complex64] {
        &self.spectrum
    }

    pub fn spectral_radius(&self) -> f64 {
        self.spectrum.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn distance(&self, z: Complex64) -> f64 {
        distance_to_spectrum(z, &self.spectrum)
    }

    pub fn at(&self, z: Complex64) -> Result<ComplexMatrix> {
        let dist = self.distance(z);
        if dist < MIN_RESOLVENT_DISTANCE {
            return Err(Error::Singular {
                column: 0,
                pivot: dist,
                threshold: MIN_RESOLVENT_DISTANCE,
            });
        }
        self.at_unchecked(z)
    }

    fn at_unchecked(&self, z: Complex64) -> Result<ComplexMatrix> {
        let n = self.matrix.rows();
        let shifted = (-&self.matrix).shift(z);
        solve(&shifted, &ComplexMatrix::identity(n))
    }
}

/// `(z - A)^{-1}`.
pub fn resolvent(a: &ComplexMatrix, z: Complex64) -> Result<ComplexMatrix> {
    ResolventFamily::new(a)?.at(z)
}

/// Trapezoidal rule for `(1/2πi) ∮ f(z)(z - A)^{-1} dz` on the circle of `c`,
/// with no convergence check. With `z_k = r e^{2πik/N}` and `dz = i z dθ` the
/// rule reduces to `(1/N) Σ_k f(z_k) z_k (z_k - A)^{-1}`.
pub fn contour_trapezoid(
    f: impl Fn(Complex64) -> Complex64,
    a: &ComplexMatrix,
    c: &ContourSpec,
) -> Result<ComplexMatrix> {
    let family = ResolventFamily::new(a)?;
    check_inside(&family, c)?;
    sum_nodes(&f, &family, c, c.nodes, 0, 1)
}

fn check_inside(family: &ResolventFamily, c: &ContourSpec) -> Result<()> {
    let rho = family.spectral_radius();
    if rho >= c.radius {
        return Err(Error::Contour {
            spectral_radius: rho,
            radius: c.radius,
        });
    }
    Ok(())
}

/// Sums nodes `first, first+stride, ...` of the `count`-point rule, divided by
/// the number of nodes visited.
fn sum_nodes(
    f: &impl Fn(Complex64) -> Complex64,
    family: &ResolventFamily,
    c: &ContourSpec,
    count: usize,
    first: usize,
    stride: usize,
) -> Result<ComplexMatrix> {
    let n = family.matrix.rows();
    let mut acc = ComplexMatrix::zeros(n, n);
    let mut visited = 0usize;
    for k in (first..count).step_by(stride) {
        let z = c.node(k, count);
        let r = family.at(z)?;
        acc = &acc + &r.scale(f(z) * z);
        visited += 1;
    }
    Ok(acc.scale_real(1.0 / visited as f64))
}

/// `f(A)` by the contour integral on the circle of `c`.
///
/// The `N`-node result is returned after checking it against the `2N`-node rule
/// (the extra nodes interleave with the original ones); a difference above
/// `1e-8 max(1, ||f(A)||)` is an accuracy error.
pub fn riesz_dunford(
    f: impl Fn(Complex64) -> Complex64,
    a: &ComplexMatrix,
    c: &ContourSpec,
) -> Result<ComplexMatrix> {
    let family = ResolventFamily::new(a)?;
    check_inside(&family, c)?;
    let doubled = 2 * c.nodes;
    let even = sum_nodes(&f, &family, c, doubled, 0, 2)?;
    let odd = sum_nodes(&f, &family, c, doubled, 1, 2)?;
    let fine = (&even + &odd).scale_real(0.5);
    let discrepancy = operator_norm(&(&fine - &even))?;
    if discrepancy > 1e-8 * operator_norm(&even)?.max(1.0) {
        return Err(Error::Accuracy { discrepancy });
    }
    Ok(even)
}
