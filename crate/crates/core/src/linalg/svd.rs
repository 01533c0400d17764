//! One-sided (Hestenes) Jacobi: singular values and the absolute value `|A|`.
//!
//! Working on the columns of `A` directly keeps small singular values accurate to
//! `eps * ||A||`, where squaring into `A*A` would only give `sqrt(eps) * ||A||`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ComplexMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;
/// Pairs count as orthogonal once `|<c_p, c_q>| <= tol ||c_p|| ||c_q||` with
/// `tol = sqrt(rows) * eps`; tighter targets sit below round-off and can cycle.
fn ortho_tol(rows: usize) -> f64 {
    (rows.max(1) as f64).sqrt() * f64::EPSILON
}

/// Singular values `s_1 >= s_2 >= ... >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularSpectrum {
    values: Vec<f64>,
}

impl SingularSpectrum {
    /// Sorts and validates an arbitrary list of nonnegative values.
    pub fn from_values(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Domain("singular values must be finite and nonnegative".into()));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `s_j` with the zero-padding convention beyond the stored length (1-based).
    pub fn get(&self, j: usize) -> f64 {
        assert!(j >= 1, "singular values are 1-indexed");
        self.values.get(j - 1).copied().unwrap_or(0.0)
    }

    pub fn largest(&self) -> f64 {
        self.get(1)
    }

    /// Sorted merge of two spectra (the spectrum of a direct sum).
    pub fn merge(&self, other: &SingularSpectrum) -> SingularSpectrum {
        let mut values = Vec::with_capacity(self.len() + other.len());
        values.extend_from_slice(&self.values);
        values.extend_from_slice(&other.values);
        values.sort_by(|a, b| b.total_cmp(a));
        SingularSpectrum { values }
    }

    /// Appends `count` zeros, i.e. the spectrum of `A ⊕ 0`.
    pub fn padded(&self, count: usize) -> SingularSpectrum {
        let mut values = self.values.clone();
        values.extend(std::iter::repeat_n(0.0, count));
        SingularSpectrum { values }
    }
}

struct ColumnJacobi {
    /// Column-major working copy, `cols` columns of length `rows`.
    work: Vec<Vec<Complex64>>,
    /// Accumulated right rotations, column-major, `cols x cols`.
    right: Option<Vec<Vec<Complex64>>>,
    /// Squared column norm below which a column is round-off of the others,
    /// `(eps ||A||_F)²`. Rotating such a column never settles.
    negligible: f64,
}

impl ColumnJacobi {
    fn run(a: &ComplexMatrix, accumulate: bool) -> Result<Self> {
        let n = a.cols();
        let work: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
        let right = accumulate.then(|| {
            (0..n)
                .map(|j| {
                    let mut col = vec![Complex64::new(0.0, 0.0); n];
                    col[j] = Complex64::new(1.0, 0.0);
                    col
                })
                .collect()
        });
        let negligible = (f64::EPSILON * a.frobenius_norm()).powi(2);
        let mut state = Self {
            work,
            right,
            negligible,
        };
        state.sweep_until_orthogonal()?;
        Ok(state)
    }

    fn sweep_until_orthogonal(&mut self) -> Result<()> {
        let n = self.work.len();
        for _ in 0..MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n.saturating_sub(1) {
                for q in p + 1..n {
                    rotated |= self.rotate(p, q);
                }
            }
            if !rotated {
                return Ok(());
            }
        }
        Err(Error::NoConvergence {
            routine: "one-sided jacobi",
            iterations: MAX_SWEEPS,
        })
    }

    fn rotate(&mut self, p: usize, q: usize) -> bool {
        let (alpha, beta, gamma) = {
            let cp = &self.work[p];
            let cq = &self.work[q];
            let mut alpha = 0.0;
            let mut beta = 0.0;
            let mut gamma = Complex64::new(0.0, 0.0);
            for (x, y) in cp.iter().zip(cq) {
                alpha += x.norm_sqr();
                beta += y.norm_sqr();
                gamma += x.conj() * y;
            }
            (alpha, beta, gamma)
        };
        let g = gamma.norm();
        let tol = ortho_tol(self.work[p].len());
        if g == 0.0 || g <= tol * alpha.sqrt() * beta.sqrt() || alpha.min(beta) <= self.negligible {
            return false;
        }
        let phase_conj = (gamma / g).conj();
        let zeta = (beta - alpha) / (2.0 * g);
        let t = if zeta == 0.0 {
            1.0
        } else {
            zeta.signum() / (zeta.abs() + (zeta * zeta + 1.0).sqrt())
        };
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = c * t;
        apply(&mut self.work, p, q, c, s, phase_conj);
        if let Some(right) = self.right.as_mut() {
            apply(right, p, q, c, s, phase_conj);
        }
        true
    }
}

fn apply(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, phase_conj: Complex64) {
    let (left, right) = cols.split_at_mut(q);
    let cp = &mut left[p];
    let cq = &mut right[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let yq = *y * phase_conj;
        let xp = *x;
        *x = xp * c - yq * s;
        *y = xp * s + yq * c;
    }
}

/// Singular values of any (possibly rectangular) matrix, sorted non-increasing,
/// `min(rows, cols)` of them.
pub fn singular_values(a: &ComplexMatrix) -> Result<SingularSpectrum> {
    let tall = if a.rows() >= a.cols() { a.clone() } else { a.adjoint() };
    let state = ColumnJacobi::run(&tall, false)?;
    let values = state
        .work
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    SingularSpectrum::from_values(values)
}

/// Operator (spectral) norm `s_1(A)`.
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(a)?.largest())
}

/// `|A| = (A*A)^{1/2}` for square `A`, as `V diag(s) V*` from the right
/// singular vectors.
pub fn absolute_value(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.ensure_square()?;
    let state = ColumnJacobi::run(a, true)?;
    let sigma: Vec<Complex64> = state
        .work
        .iter()
        .map(|col| Complex64::new(col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(), 0.0))
        .collect();
    let right = state.right.expect("accumulated");
    let v = ComplexMatrix::from_fn(n, n, |i, j| right[j][i]);
    let abs = ComplexMatrix::conjugate_diag(&v, &sigma);
    Ok(abs.hermitian_part())
}
