use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{hermitian_eigen, operator_norm, ComplexMatrix, NORMALITY_TOL};
use crate::error::{Error, Result};

/// Eigen-pairs `A = U diag(λ) U*` of a normal matrix, `U` unitary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<Complex64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn new(eigenvalues: Vec<Complex64>, eigenvectors: ComplexMatrix) -> Result<Self> {
        let n = eigenvectors.ensure_square()?;
        if eigenvalues.len() != n {
            return Err(Error::Shape(format!(
                "{} eigenvalues for {n}x{n} eigenvector matrix",
                eigenvalues.len()
            )));
        }
        Ok(Self {
            eigenvalues,
            eigenvectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `U diag(λ) U*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        ComplexMatrix::conjugate_diag(&self.eigenvectors, &self.eigenvalues)
    }

    /// Decomposition of `A*`: same eigenvectors, conjugated eigenvalues.
    pub fn adjoint(&self) -> SpectralDecomposition {
        SpectralDecomposition {
            eigenvalues: self.eigenvalues.iter().map(|z| z.conj()).collect(),
            eigenvectors: self.eigenvectors.clone(),
        }
    }

    /// `U diag(h(λ)) U*`.
    pub fn map(&self, h: impl Fn(Complex64) -> Complex64) -> ComplexMatrix {
        let d: Vec<Complex64> = self.eigenvalues.iter().map(|&z| h(z)).collect();
        ComplexMatrix::conjugate_diag(&self.eigenvectors, &d)
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `||A*A - AA*||_op`.
pub fn normality_defect(a: &ComplexMatrix) -> Result<f64> {
    a.ensure_square()?;
    let ah = a.adjoint();
    operator_norm(&(&(&ah * a) - &(a * &ah)))
}

/// Unitary diagonalization of a normal matrix.
///
/// Splits `A = H + iK` into Hermitian parts, diagonalizes `H`, then
/// diagonalizes `K` compressed to each (numerical) eigenspace of `H`. Eigenvalues
/// of `H` closer than `1e-8 ||A||` share an eigenspace.
///
/// `tol` bounds the relative normality defect `||A*A - AA*|| / ||A||²`.
pub fn eig_normal(a: &ComplexMatrix, tol: f64) -> Result<SpectralDecomposition> {
    let n = a.ensure_square()?;
    let norm = operator_norm(a)?;
    let defect = normality_defect(a)?;
    if defect > tol * norm * norm {
        return Err(Error::NotNormal { commutator: defect });
    }

    let h = a.hermitian_part();
    let k = a.skew_hermitian_part();
    let he = hermitian_eigen(&h)?;
    let group_tol = 1e-8 * norm;

    let mut u = he.vectors.clone();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (he.values[end - 1] - he.values[end]).abs() <= group_tol {
            end += 1;
        }
        if end - start > 1 {
            let idx: Vec<usize> = (start..end).collect();
            let basis = he.vectors.select_columns(&idx);
            let compressed = &(&basis.adjoint() * &k) * &basis;
            let ke = hermitian_eigen(&compressed)?;
            let rotated = &basis * &ke.vectors;
            for (local, j) in idx.iter().enumerate() {
                u.set_column(*j, &rotated.column(local));
            }
        }
        start = end;
    }

    // Rayleigh quotients on the final basis.
    let au = a * &u;
    let eigenvalues = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| u[(i, j)].conj() * au[(i, j)])
                .sum::<Complex64>()
        })
        .collect();
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors: u,
    })
}

/// A normal matrix kept together with its spectral decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalMatrix {
    pub matrix: ComplexMatrix,
    pub decomposition: SpectralDecomposition,
}

impl NormalMatrix {
    /// `U diag(λ) U*` built from its factors.
    pub fn from_decomposition(decomposition: SpectralDecomposition) -> Self {
        Self {
            matrix: decomposition.reconstruct(),
            decomposition,
        }
    }

    /// Diagonalizes `a`, which must be normal to [`NORMALITY_TOL`].
    pub fn from_matrix(a: &ComplexMatrix) -> Result<Self> {
        Ok(Self {
            matrix: a.clone(),
            decomposition: eig_normal(a, NORMALITY_TOL)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.decomposition.dim()
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.decomposition.eigenvalues
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            decomposition: self.decomposition.adjoint(),
        }
    }
}
