//! Cyclic Jacobi eigensolver for Hermitian matrices.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigen-pairs of a Hermitian matrix, eigenvalues sorted non-increasing.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Unitary; column `j` pairs with `values[j]`.
    pub vectors: ComplexMatrix,
}

/// Diagonalizes the Hermitian part of `a` by cyclic two-sided Jacobi rotations.
///
/// Only `(a + a*)/2` is used, so tiny asymmetries from round-off are harmless.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = a.ensure_square()?;
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    if n == 1 {
        return Ok(HermitianEigen {
            values: vec![m[(0, 0)].re],
            vectors: v,
        });
    }

    let scale = m.frobenius_norm();
    let mut converged = scale == 0.0;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                routine: "hermitian jacobi",
                iterations: sweeps,
            });
        }
        sweeps += 1;
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * 0.5 * scale {
            converged = true;
            continue;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    Ok(HermitianEigen {
        values: order.iter().map(|&i| diag[i]).collect(),
        vectors: v.select_columns(&order),
    })
}

/// Annihilates `m[p][q]` with the unitary `G = diag-phase ∘ rotation`,
/// applying `m <- G* m G` and `v <- v G`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // Skip rotations that cannot change the diagonal in floating point.
    if g < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        m[(p, q)] = Complex64::new(0.0, 0.0);
        m[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / g; // e^{iφ}
    let phase_conj = phase.conj();
    let theta = (aqq - app) / (2.0 * g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = m.rows();

    // Columns: m <- m G, with G_pp = c, G_pq = s, G_qp = -s e^{-iφ}, G_qq = c e^{-iφ}.
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * c - mkq * (phase_conj * s);
        m[(k, q)] = mkp * s + mkq * (phase_conj * c);
    }
    // Rows: m <- G* m.
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = mpk * c - mqk * (phase * s);
        m[(q, k)] = mpk * s + mqk * (phase * c);
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * (phase_conj * s);
        v[(k, q)] = vkp * s + vkq * (phase_conj * c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn check_decomposition(a: &ComplexMatrix, e: &HermitianEigen) {
        let n = a.rows();
        let d: Vec<Complex64> = e.values.iter().map(|&x| c(x, 0.0)).collect();
        let back = ComplexMatrix::conjugate_diag(&e.vectors, &d);
        assert!((&back - a).max_abs() < 1e-13 * (1.0 + a.max_abs()), "reconstruction");
        let gram = &e.vectors.adjoint() * &e.vectors;
        assert!((&gram - &ComplexMatrix::identity(n)).max_abs() < 1e-13, "unitarity");
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn pauli_x() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let e = hermitian_eigen(&a).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-15);
        assert!((e.values[1] + 1.0).abs() < 1e-15);
        check_decomposition(&a, &e);
    }

    #[test]
    fn complex_hermitian_3x3() {
        let a = ComplexMatrix::from_rows(&[
            &[c(2.0, 0.0), c(1.0, -1.0), c(0.0, 0.5)],
            &[c(1.0, 1.0), c(-1.0, 0.0), c(0.25, 0.0)],
            &[c(0.0, -0.5), c(0.25, 0.0), c(3.0, 0.0)],
        ])
        .unwrap();
        let e = hermitian_eigen(&a).unwrap();
        check_decomposition(&a, &e);
        let trace: f64 = e.values.iter().sum();
        assert!((trace - 4.0).abs() < 1e-13);
    }

    #[test]
    fn zero_and_scalar() {
        let e = hermitian_eigen(&ComplexMatrix::zeros(3, 3)).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
        let e = hermitian_eigen(&ComplexMatrix::from_real_rows(&[&[-2.5]]).unwrap()).unwrap();
        assert_eq!(e.values, vec![-2.5]);
    }

    #[test]
    fn rejects_rectangular() {
        assert!(matches!(
            hermitian_eigen(&ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }
}
