//! Dense complex linear algebra.

mod general;
mod hermitian;
mod matrix;
mod normal;
mod svd;

use num_complex::Complex64;

pub use general::eigenvalues;
pub use hermitian::{hermitian_eigen, HermitianEigen};
pub use matrix::{adjoint, multiply, ComplexMatrix};
pub use normal::{eig_normal, normality_defect, NormalMatrix, SpectralDecomposition};
pub use svd::{absolute_value, operator_norm, singular_values, SingularSpectrum};

use crate::error::{Error, Result};

/// Default relative normality tolerance for inputs that are normal by construction.
pub const NORMALITY_TOL: f64 = 1e-9;

/// Relative pivot threshold below which [`solve`] reports a singular matrix.
pub const SINGULAR_PIVOT_REL: f64 = 1e-14;

/// Block-diagonal `diag(a, b)` of two square matrices.
pub fn direct_sum(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let m = a.ensure_square()?;
    let n = b.ensure_square()?;
    let mut out = ComplexMatrix::zeros(m + n, m + n);
    for i in 0..m {
        for j in 0..m {
            out[(i, j)] = a[(i, j)];
        }
    }
    for i in 0..n {
        for j in 0..n {
            out[(m + i, m + j)] = b[(i, j)];
        }
    }
    Ok(out)
}

/// Solves `a · X = rhs` by Gaussian elimination with partial pivoting.
pub fn solve(a: &ComplexMatrix, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.ensure_square()?;
    if rhs.rows() != n {
        return Err(Error::Shape(format!(
            "rhs has {} rows, system has {n}",
            rhs.rows()
        )));
    }
    let threshold = SINGULAR_PIVOT_REL * operator_norm(a)?;
    let m = rhs.cols();
    let mut lu = a.clone();
    let mut x = rhs.clone();

    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&i, &j| lu[(i, k)].norm().total_cmp(&lu[(j, k)].norm()))
            .expect("non-empty range");
        let pivot = lu[(pivot_row, k)];
        if pivot.norm() <= threshold || pivot.norm() == 0.0 {
            return Err(Error::Singular {
                column: k,
                pivot: pivot.norm(),
                threshold,
            });
        }
        if pivot_row != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(pivot_row, j)];
                lu[(pivot_row, j)] = t;
            }
            for j in 0..m {
                let t = x[(k, j)];
                x[(k, j)] = x[(pivot_row, j)];
                x[(pivot_row, j)] = t;
            }
        }
        for i in k + 1..n {
            let factor = lu[(i, k)] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in k..n {
                let t = lu[(k, j)];
                lu[(i, j)] -= factor * t;
            }
            for j in 0..m {
                let t = x[(k, j)];
                x[(i, j)] -= factor * t;
            }
        }
    }
    for k in (0..n).rev() {
        for j in 0..m {
            let mut acc = x[(k, j)];
            for t in k + 1..n {
                acc -= lu[(k, t)] * x[(t, j)];
            }
            x[(k, j)] = acc / lu[(k, k)];
        }
    }
    Ok(x)
}

/// `h(A)` for Hermitian `A` with a real scalar function, via the Jacobi eigenbasis.
pub fn hermitian_function(a: &ComplexMatrix, h: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    let e = hermitian_eigen(a)?;
    let d: Vec<Complex64> = e.values.iter().map(|&v| Complex64::new(h(v), 0.0)).collect();
    Ok(ComplexMatrix::conjugate_diag(&e.vectors, &d).hermitian_part())
}

/// Positive square root of a positive semidefinite matrix. Eigenvalues in
/// `[-1e-12 ||A||, 0)` are treated as round-off and clamped to zero.
pub fn psd_sqrt(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let e = hermitian_eigen(a)?;
    let top = e.values.first().copied().unwrap_or(0.0).abs().max(1.0);
    if let Some(&min) = e.values.last() {
        if min < -1e-12 * top {
            return Err(Error::Domain(format!(
                "matrix is not positive semidefinite (eigenvalue {min:e})"
            )));
        }
    }
    let d: Vec<Complex64> = e.values.iter().map(|&v| Complex64::new(v.max(0.0).sqrt(), 0.0)).collect();
    Ok(ComplexMatrix::conjugate_diag(&e.vectors, &d).hermitian_part())
}

/// `||U*U - I||_op`.
pub fn unitarity_defect(u: &ComplexMatrix) -> Result<f64> {
    let n = u.ensure_square()?;
    operator_norm(&(&(&u.adjoint() * u) - &ComplexMatrix::identity(n)))
}

/// `||A - A*||_op`.
pub fn hermiticity_defect(a: &ComplexMatrix) -> Result<f64> {
    a.ensure_square()?;
    operator_norm(&(a - &a.adjoint()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn direct_sum_scalars() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0]]).unwrap();
        let b = ComplexMatrix::from_real_rows(&[&[2.0]]).unwrap();
        assert_eq!(direct_sum(&a, &b).unwrap(), ComplexMatrix::from_real_diag(&[1.0, 2.0]));
    }

    #[test]
    fn direct_sum_with_zero_pads_spectrum() {
        let a = ComplexMatrix::from_rows(&[&[c(1.0, 1.0), c(2.0, 0.0)], &[c(0.0, -1.0), c(0.5, 0.0)]]).unwrap();
        let s = singular_values(&direct_sum(&a, &ComplexMatrix::zeros(2, 2)).unwrap()).unwrap();
        let sa = singular_values(&a).unwrap();
        assert!((s.get(1) - sa.get(1)).abs() < 1e-14);
        assert!((s.get(2) - sa.get(2)).abs() < 1e-14);
        assert_eq!(&s.values()[2..], &[0.0, 0.0]);
    }

    #[test]
    fn direct_sum_rejects_rectangular() {
        let a = ComplexMatrix::zeros(1, 2);
        assert!(matches!(
            direct_sum(&a, &a),
            Err(Error::NotSquare { rows: 1, cols: 2 })
        ));
    }

    #[test]
    fn solve_trivial_systems() {
        let b = ComplexMatrix::from_rows(&[&[c(1.0, 2.0), c(0.0, 1.0)], &[c(3.0, 0.0), c(-1.0, -1.0)]]).unwrap();
        assert!((&solve(&ComplexMatrix::identity(2), &b).unwrap() - &b).max_abs() < 1e-15);

        let d = ComplexMatrix::from_real_diag(&[2.0, 4.0]);
        let inv = solve(&d, &ComplexMatrix::identity(2)).unwrap();
        assert!((&inv - &ComplexMatrix::from_real_diag(&[0.5, 0.25])).max_abs() < 1e-16);
    }

    #[test]
    fn solve_singular_and_shape_errors() {
        let s = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        assert!(matches!(
            solve(&s, &ComplexMatrix::identity(2)),
            Err(Error::Singular { column: 1, .. })
        ));
        assert!(matches!(
            solve(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3)),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let p = ComplexMatrix::from_rows(&[&[c(2.0, 0.0), c(0.5, 0.5)], &[c(0.5, -0.5), c(1.0, 0.0)]]).unwrap();
        let r = psd_sqrt(&p).unwrap();
        assert!((&(&r * &r) - &p).max_abs() < 1e-14);
        let neg = ComplexMatrix::from_real_diag(&[1.0, -0.5]);
        assert!(matches!(psd_sqrt(&neg), Err(Error::Domain(_))));
    }
}
