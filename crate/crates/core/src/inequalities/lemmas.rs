//! Ingredients used inside the proofs of the main bounds, checked on their own.

use std::f64::consts::{SQRT_2, TAU};

use num_complex::Complex64;

use super::{Bound, Side};
use crate::calculus::{apply_spectral, spectral_gap, HerglotzMeasure, ResolventFamily};
use crate::error::{Error, Result};
use crate::linalg::{
    absolute_value, normality_defect, operator_norm, psd_sqrt, singular_values, ComplexMatrix, NormalMatrix,
    NORMALITY_TOL,
};

use super::theorems::COMMUTATION_TOL;

/// Circle points per resolvent check.
pub const RESOLVENT_POINTS: usize = 64;

/// Allowed residual in `f(UAU*) = U f(A) U*`.
const CONJUGATION_TOL: f64 = 1e-9;

/// Allowed residual in `AX* = X*A`.
const FUGLEDE_TOL: f64 = 1e-10;

fn same_square(c: &ComplexMatrix, d: &ComplexMatrix) -> Result<usize> {
    let n = c.ensure_square()?;
    if d.ensure_square()? != n {
        return Err(Error::Shape(format!("{n}x{n} and {}x{} matrices", d.rows(), d.cols())));
    }
    Ok(n)
}

fn ensure_normal(m: &ComplexMatrix, name: &str) -> Result<()> {
    let scale = operator_norm(m)?;
    let defect = normality_defect(m)?;
    if defect > NORMALITY_TOL * scale * scale {
        return Err(Error::Precondition(format!("{name} is not normal: defect {defect:e}")));
    }
    Ok(())
}

/// Operator-monotone step with `h = √·`: `|||(C + D)^{1/2}||| ≤ |||C^{1/2} + D^{1/2}|||`
/// for positive semidefinite `C`, `D`.
pub fn check_andozhan(c: &ComplexMatrix, d: &ComplexMatrix) -> Result<Bound> {
    same_square(c, d)?;
    let lhs = psd_sqrt(&(c + d))?;
    let rhs = &psd_sqrt(c)? + &psd_sqrt(d)?;
    Ok(Bound {
        lhs: Side::norm_of(1.0, &lhs)?,
        rhs: Side::norm_of(1.0, &rhs)?,
        d_a: None,
        d_b: None,
    })
}

/// `|||C + D||| ≤ ||| |C| + |D| |||` for normal `C`, `D`.
pub fn check_bouldin(c: &ComplexMatrix, d: &ComplexMatrix) -> Result<Bound> {
    same_square(c, d)?;
    ensure_normal(c, "C")?;
    ensure_normal(d, "D")?;
    Ok(Bound {
        lhs: Side::norm_of(1.0, &(c + d))?,
        rhs: Side::norm_of(1.0, &(&absolute_value(c)? + &absolute_value(d)?))?,
        d_a: None,
        d_b: None,
    })
}

/// `s_j((C + D)/2) ≤ s_j(C ⊕ D)`, compared as `|||((C + D)/2) ⊕ 0||| ≤ |||C ⊕ D|||`.
pub fn check_halfsum(c: &ComplexMatrix, d: &ComplexMatrix) -> Result<Bound> {
    let n = same_square(c, d)?;
    let half = (c + d).scale_real(0.5);
    Ok(Bound {
        lhs: Side::spectrum(1.0, singular_values(&half)?.padded(2 * n)),
        rhs: Side::spectrum(1.0, singular_values(c)?.merge(&singular_values(d)?)),
        d_a: None,
        d_b: None,
    })
}

/// `max_k ||(e^{iθ_k} - A)^{-1}|| ≤ 1/d_A` over [`RESOLVENT_POINTS`] equispaced
/// angles `θ_k = α + 2πk/64` on the unit circle.
pub fn check_resolvent(a: &NormalMatrix, alpha: f64) -> Result<Bound> {
    let d = spectral_gap(a.eigenvalues())?;
    let family = ResolventFamily::new(&a.matrix)?;
    let mut worst = 0.0f64;
    for k in 0..RESOLVENT_POINTS {
        let z = Complex64::from_polar(1.0, alpha + TAU * k as f64 / RESOLVENT_POINTS as f64);
        worst = worst.max(operator_norm(&family.at(z)?)?);
    }
    Ok(Bound {
        lhs: Side::scalar(worst),
        rhs: Side::scalar(1.0 / d),
        d_a: Some(d),
        d_b: None,
    })
}

/// `||f(UAU*) - U f(A) U*||_op ≤ 1e-9` for Hermitian `A`, unitary `U`.
///
/// `f(UAU*)` is computed from a fresh diagonalization of `UAU*`, so the check
/// compares two independent eigensolves.
pub fn check_conjugation(a: &NormalMatrix, u: &ComplexMatrix, f: &HerglotzMeasure) -> Result<Bound> {
    same_square(&a.matrix, u)?;
    let conjugated = (&(u * &a.matrix) * &u.adjoint()).hermitian_part();
    let direct = apply_spectral(f, &NormalMatrix::from_matrix(&conjugated)?.decomposition)?;
    let moved = &(u * &apply_spectral(f, &a.decomposition)?) * &u.adjoint();
    Ok(Bound {
        lhs: Side::scalar(operator_norm(&(&direct - &moved))?),
        rhs: Side::scalar(CONJUGATION_TOL),
        d_a: None,
        d_b: None,
    })
}

/// For normal `X` commuting with `A`: `||AX* - X*A||_op ≤ 1e-10`.
pub fn check_fugledeputnam(a: &ComplexMatrix, x: &ComplexMatrix) -> Result<Bound> {
    same_square(a, x)?;
    ensure_normal(x, "X")?;
    let scale = (operator_norm(a)? * operator_norm(x)?).max(1.0);
    let commutator = operator_norm(&(&(a * x) - &(x * a)))?;
    if commutator > COMMUTATION_TOL * scale {
        return Err(Error::Precondition(format!("||AX - XA|| = {commutator:e} exceeds tolerance")));
    }
    let xs = x.adjoint();
    Ok(Bound {
        lhs: Side::scalar(operator_norm(&(&(a * &xs) - &(&xs * a)))?),
        rhs: Side::scalar(FUGLEDE_TOL),
        d_a: None,
        d_b: None,
    })
}

/// `|||AXB + e^{iα} X e^{iβ}||| ≤ √2 ||| |AXB| + |X| |||`.
pub fn check_s4(a: &ComplexMatrix, b: &ComplexMatrix, x: &ComplexMatrix, alpha: f64, beta: f64) -> Result<Bound> {
    same_square(a, b)?;
    same_square(a, x)?;
    let axb = &(a * x) * b;
    let lhs = &axb + &x.scale(Complex64::from_polar(1.0, alpha + beta));
    let rhs = &absolute_value(&axb)? + &absolute_value(x)?;
    Ok(Bound {
        lhs: Side::norm_of(1.0, &lhs)?,
        rhs: Side::norm_of(SQRT_2, &rhs)?,
        d_a: None,
        d_b: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SpectralDecomposition;
    use crate::norms::NormKind;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn andozhan_identity_pair() {
        let id = ComplexMatrix::identity(2);
        let b = check_andozhan(&id, &id).unwrap();
        let k2 = NormKind::KyFan(2);
        assert!((b.lhs.eval(&k2) - 2.0 * SQRT_2).abs() < 1e-14);
        assert!((b.rhs.eval(&k2) - 4.0).abs() < 1e-14);
        let neg = ComplexMatrix::from_real_diag(&[-1.0, 0.0]);
        assert!(matches!(check_andozhan(&neg, &neg), Err(Error::Domain(_))));
    }

    #[test]
    fn halfsum_scalar_equality() {
        let m = ComplexMatrix::from_rows(&[&[c(0.6, -0.8)]]).unwrap();
        let b = check_halfsum(&m, &m).unwrap();
        assert!((b.lhs.eval(&NormKind::Operator) - b.rhs.eval(&NormKind::Operator)).abs() < 1e-15);
    }

    #[test]
    fn bouldin_requires_normal() {
        let j = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(check_bouldin(&j, &j), Err(Error::Precondition(_))));
        let p = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let q = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        let b = check_bouldin(&p, &q).unwrap();
        // ||P + Q|| = √2 against || |P| + |Q| || = ||2I|| = 2.
        assert!((b.lhs.eval(&NormKind::Operator) - SQRT_2).abs() < 1e-14);
        assert!((b.rhs.eval(&NormKind::Operator) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn resolvent_of_diagonal_is_tight() {
        let a = NormalMatrix::from_decomposition(
            SpectralDecomposition::new(vec![c(0.5, 0.0), c(0.0, 0.2)], ComplexMatrix::identity(2)).unwrap(),
        );
        let b = check_resolvent(&a, 0.0).unwrap();
        // θ = 0 sits on the ray through 0.5, where the bound is attained.
        assert!((b.lhs.eval(&NormKind::Operator) - 2.0).abs() < 1e-13);
        assert_eq!(b.rhs.eval(&NormKind::Operator), 2.0);
    }

    #[test]
    fn conjugation_and_fuglede_on_small_inputs() {
        let a = NormalMatrix::from_decomposition(
            SpectralDecomposition::new(vec![c(0.3, 0.0), c(-0.6, 0.0)], ComplexMatrix::identity(2)).unwrap(),
        );
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u = ComplexMatrix::from_rows(&[&[c(s, 0.0), c(0.0, s)], &[c(0.0, s), c(s, 0.0)]]).unwrap();
        let b = check_conjugation(&a, &u, &HerglotzMeasure::point_mass(1.0)).unwrap();
        assert!(b.lhs.eval(&NormKind::Operator) < 1e-13);

        let x = ComplexMatrix::from_diag(&[c(1.0, 1.0), c(2.0, 0.0)]);
        let b = check_fugledeputnam(&a.matrix, &x).unwrap();
        assert_eq!(b.lhs.eval(&NormKind::Operator), 0.0);
        let off = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert!(matches!(
            check_fugledeputnam(&a.matrix, &off),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn s4_scalar_case() {
        // n = 1: |axb + e^{i(α+β)} x| ≤ √2 (|axb| + |x|).
        let a = ComplexMatrix::from_rows(&[&[c(0.5, 0.1)]]).unwrap();
        let x = ComplexMatrix::from_rows(&[&[c(-1.0, 2.0)]]).unwrap();
        let b = check_s4(&a, &a, &x, 0.3, 1.1).unwrap();
        let axb = c(0.5, 0.1) * c(-1.0, 2.0) * c(0.5, 0.1);
        let want = (axb + Complex64::from_polar(1.0, 1.4) * c(-1.0, 2.0)).norm();
        assert!((b.lhs.eval(&NormKind::Operator) - want).abs() < 1e-14);
        assert!((b.rhs.eval(&NormKind::Operator) - SQRT_2 * (axb.norm() + 5f64.sqrt())).abs() < 1e-13);
    }
}
