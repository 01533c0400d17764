use std::f64::consts::SQRT_2;

use super::{Bound, Side, Sign};
use crate::calculus::{apply_spectral, spectral_gap, HerglotzMeasure};
use crate::error::{Error, Result};
use crate::linalg::{
    absolute_value, hermiticity_defect, operator_norm, singular_values, unitarity_defect, ComplexMatrix,
    NormalMatrix,
};

/// Relative tolerance on `||AX - XA||` for inputs that commute by construction.
pub const COMMUTATION_TOL: f64 = 1e-10;

/// Tolerance on `|| |AXA*| - A|X|A* ||` for commuting normal pairs.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Imaginary parts and `||A - A*||` below this (relative) count as Hermitian.
const HERMITIAN_TOL: f64 = 1e-12;

fn gap(a: &NormalMatrix) -> Result<f64> {
    spectral_gap(a.eigenvalues())
}

fn check_dims(a: &NormalMatrix, b: &NormalMatrix, x: &ComplexMatrix) -> Result<usize> {
    let n = a.dim();
    if b.dim() != n || x.rows() != n || x.cols() != n {
        return Err(Error::Shape(format!(
            "expected A, B, X of one size, got {}, {}, {}x{}",
            n,
            b.dim(),
            x.rows(),
            x.cols()
        )));
    }
    Ok(n)
}

fn combine(p: &ComplexMatrix, sign: Sign, q: &ComplexMatrix) -> ComplexMatrix {
    match sign {
        Sign::Plus => p + q,
        Sign::Minus => p - q,
    }
}

/// Right-hand matrix shared by the `f(A)Xg(B) ± X` and `f(A)X ± Xg(B)`
/// families: `|AXB| + |X|` for plus, `|AX| + |XB|` for minus.
fn thm1_rhs_matrix(sign: Sign, a: &ComplexMatrix, b: &ComplexMatrix, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(match sign {
        Sign::Plus => &absolute_value(&(&(a * x) * b))? + &absolute_value(x)?,
        Sign::Minus => &absolute_value(&(a * x))? + &absolute_value(&(x * b))?,
    })
}

/// `|||f(A)Xg(B) ± X||| ≤ (2√2 / d_A d_B) |||R|||` with `R` as in [`thm1_rhs_matrix`].
pub fn check_thm1(
    sign: Sign,
    a: &NormalMatrix,
    b: &NormalMatrix,
    x: &ComplexMatrix,
    f: &HerglotzMeasure,
    g: &HerglotzMeasure,
) -> Result<Bound> {
    check_dims(a, b, x)?;
    let (d_a, d_b) = (gap(a)?, gap(b)?);
    let fa = apply_spectral(f, &a.decomposition)?;
    let gb = apply_spectral(g, &b.decomposition)?;
    let lhs = combine(&(&(&fa * x) * &gb), sign, x);
    let rhs = thm1_rhs_matrix(sign, &a.matrix, &b.matrix, x)?;
    Ok(Bound {
        lhs: Side::norm_of(1.0, &lhs)?,
        rhs: Side::norm_of(2.0 * SQRT_2 / (d_a * d_b), &rhs)?,
        d_a: Some(d_a),
        d_b: Some(d_b),
    })
}

/// `|||(f(A)Xg(B) + X) ⊕ 0||| ≤ (4√2 / d_A d_B) |||AXB ⊕ X|||`.
pub fn check_remark1(
    a: &NormalMatrix,
    b: &NormalMatrix,
    x: &ComplexMatrix,
    f: &HerglotzMeasure,
    g: &HerglotzMeasure,
) -> Result<Bound> {
    let n = check_dims(a, b, x)?;
    let (d_a, d_b) = (gap(a)?, gap(b)?);
    let fa = apply_spectral(f, &a.decomposition)?;
    let gb = apply_spectral(g, &b.decomposition)?;
    let lhs = &(&(&fa * x) * &gb) + x;
    let axb = &(&a.matrix * x) * &b.matrix;
    let sum = singular_values(&axb)?.merge(&singular_values(x)?);
    Ok(Bound {
        lhs: Side::spectrum(1.0, singular_values(&lhs)?.padded(2 * n)),
        rhs: Side::spectrum(4.0 * SQRT_2 / (d_a * d_b), sum),
        d_a: Some(d_a),
        d_b: Some(d_b),
    })
}

/// For normal `X` commuting with `A`:
/// `|||f(A)Xg(A*) + X||| ≤ (2/d_A²) |||A|X|A* + |X|||` and
/// `|||f(A)Xg(A*) - X||| ≤ (2/d_A²) ||| |AX| + |XA*| |||`.
///
/// Fails with a precondition error when the pair does not commute or when
/// `|AXA*| = A|X|A*` does not hold numerically.
pub fn check_cor_c1(
    sign: Sign,
    a: &NormalMatrix,
    x: &NormalMatrix,
    f: &HerglotzMeasure,
    g: &HerglotzMeasure,
) -> Result<Bound> {
    check_dims(a, a, &x.matrix)?;
    let am = &a.matrix;
    let xm = &x.matrix;
    let scale = (operator_norm(am)? * operator_norm(xm)?).max(1.0);
    let commutator = operator_norm(&(&(am * xm) - &(xm * am)))?;
    if commutator > COMMUTATION_TOL * scale {
        return Err(Error::Precondition(format!("||AX - XA|| = {commutator:e} exceeds tolerance")));
    }
    let a_star = am.adjoint();
    let abs_x = absolute_value(xm)?;
    let sandwich = &(am * &abs_x) * &a_star;
    let identity_residual = operator_norm(&(&absolute_value(&(&(am * xm) * &a_star))? - &sandwich))?;
    if identity_residual > IDENTITY_TOL * scale {
        return Err(Error::Precondition(format!(
            "|| |AXA*| - A|X|A* || = {identity_residual:e} exceeds tolerance"
        )));
    }

    let d = gap(a)?;
    let fa = apply_spectral(f, &a.decomposition)?;
    let ga_star = apply_spectral(g, &a.decomposition.adjoint())?;
    let lhs = combine(&(&(&fa * xm) * &ga_star), sign, xm);
    let rhs = match sign {
        Sign::Plus => &sandwich + &abs_x,
        Sign::Minus => &absolute_value(&(am * xm))? + &absolute_value(&(xm * &a_star))?,
    };
    Ok(Bound {
        lhs: Side::norm_of(1.0, &lhs)?,
        rhs: Side::norm_of(2.0 / (d * d), &rhs)?,
        d_a: Some(d),
        d_b: Some(d),
    })
}

/// `|||f(A)Xg(A) - X||| ≤ (2√2/d_A²) ||| |AX| + |XA| |||`.
pub fn check_cor_c2(a: &NormalMatrix, x: &ComplexMatrix, f: &HerglotzMeasure, g: &HerglotzMeasure) -> Result<Bound> {
    check_thm1(Sign::Minus, a, a, x, f, g)
}

/// `X = I`: `|||f(A)g(B) + I||| ≤ (2√2/d_A d_B) ||| |AB| + I |||` and
/// `|||f(A)g(B) - I||| ≤ (2√2/d_A d_B) ||| |A| + |B| |||`.
pub fn check_cor_c3(
    sign: Sign,
    a: &NormalMatrix,
    b: &NormalMatrix,
    f: &HerglotzMeasure,
    g: &HerglotzMeasure,
) -> Result<Bound> {
    check_thm1(sign, a, b, &ComplexMatrix::identity(a.dim()), f, g)
}

/// Positive `A` with `σ(A) ⊂ [0, 1)`, unitary `U`:
/// `|||f(A)Ug(A) - U||| ≤ (2√2/d_A²) |||AU + UA|||`.
pub fn check_prop_c4(a: &NormalMatrix, u: &ComplexMatrix, f: &HerglotzMeasure, g: &HerglotzMeasure) -> Result<Bound> {
    check_dims(a, a, u)?;
    ensure_hermitian(a)?;
    if let Some(l) = a.eigenvalues().iter().find(|l| l.re < -HERMITIAN_TOL) {
        return Err(Error::Domain(format!("A is not positive: eigenvalue {}", l.re)));
    }
    let defect = unitarity_defect(u)?;
    if defect > 1e-10 {
        return Err(Error::Precondition(format!("U is not unitary: ||U*U - I|| = {defect:e}")));
    }
    let d = gap(a)?;
    let fa = apply_spectral(f, &a.decomposition)?;
    let ga = apply_spectral(g, &a.decomposition)?;
    let lhs = &(&(&fa * u) * &ga) - u;
    let rhs = &(&a.matrix * u) + &(u * &a.matrix);
    Ok(Bound {
        lhs: Side::norm_of(1.0, &lhs)?,
        rhs: Side::norm_of(2.0 * SQRT_2 / (d * d), &rhs)?,
        d_a: Some(d),
        d_b: Some(d),
    })
}

/// `|||f(A)X ± Xg(B)||| ≤ (2√2/d_A d_B) |||R|||`, same `R` as [`check_thm1`].
pub fn check_thm_sum(
    sign: Sign,
    a: &NormalMatrix,
    b: &NormalMatrix,
    x: &ComplexMatrix,
    f: &HerglotzMeasure,
    g: &HerglotzMeasure,
) -> Result<Bound> {
    check_dims(a, b, x)?;
    let (d_a, d_b) = (gap(a)?, gap(b)?);
    let fa = apply_spectral(f, &a.decomposition)?;
    let gb = apply_spectral(g, &b.decomposition)?;
    let lhs = combine(&(&fa * x), sign, &(x * &gb));
    let rhs = thm1_rhs_matrix(sign, &a.matrix, &b.matrix, x)?;
    Ok(Bound {
        lhs: Side::norm_of(1.0, &lhs)?,
        rhs: Side::norm_of(2.0 * SQRT_2 / (d_a * d_b), &rhs)?,
        d_a: Some(d_a),
        d_b: Some(d_b),
    })
}

/// Two bounds on `|||f(A)X + f(A)Xg(B) + Xg(B)|||`:
///
/// 1. `(√2/d_A d_B)(||| |AXB|+|X| ||| + ||| |XB|+|X| ||| + ||| |AX|+|X| |||)`,
/// 2. `(2/d_A d_B) ||| |AXB| + |AX| + |XB| + 3|X| |||`.
pub fn check_prop_t2n(
    a: &NormalMatrix,
    b: &NormalMatrix,
    x: &ComplexMatrix,
    f: &HerglotzMeasure,
    g: &HerglotzMeasure,
) -> Result<(Bound, Bound)> {
    check_dims(a, b, x)?;
    let (d_a, d_b) = (gap(a)?, gap(b)?);
    let fa = apply_spectral(f, &a.decomposition)?;
    let gb = apply_spectral(g, &b.decomposition)?;
    let fax = &fa * x;
    let lhs = &(&fax + &(&fax * &gb)) + &(x * &gb);
    let lhs = Side::norm_of(1.0, &lhs)?;

    let abs_x = absolute_value(x)?;
    let abs_axb = absolute_value(&(&(&a.matrix * x) * &b.matrix))?;
    let abs_ax = absolute_value(&(&a.matrix * x))?;
    let abs_xb = absolute_value(&(x * &b.matrix))?;

    let c1 = SQRT_2 / (d_a * d_b);
    let first = Side::norm_of(c1, &(&abs_axb + &abs_x))?
        .plus_norm_of(c1, &(&abs_xb + &abs_x))?
        .plus_norm_of(c1, &(&abs_ax + &abs_x))?;
    let combined = &(&(&abs_axb + &abs_ax) + &abs_xb) + &abs_x.scale_real(3.0);
    let second = Side::norm_of(2.0 / (d_a * d_b), &combined)?;
    Ok((
        Bound {
            lhs: lhs.clone(),
            rhs: first,
            d_a: Some(d_a),
            d_b: Some(d_b),
        },
        Bound {
            lhs,
            rhs: second,
            d_a: Some(d_a),
            d_b: Some(d_b),
        },
    ))
}

fn ensure_hermitian(a: &NormalMatrix) -> Result<()> {
    let scale = operator_norm(&a.matrix)?.max(1.0);
    let defect = hermiticity_defect(&a.matrix)?;
    let imag = a.eigenvalues().iter().map(|l| l.im.abs()).fold(0.0, f64::max);
    if defect > HERMITIAN_TOL * scale || imag > HERMITIAN_TOL * scale {
        return Err(Error::Domain(format!(
            "matrix is not Hermitian: ||A - A*|| = {defect:e}, max |Im λ| = {imag:e}"
        )));
    }
    Ok(())
}

/// Hilbert–Schmidt bounds for Hermitian `A`, `B`:
///
/// 1. `||f(A)X ± Xg(B)||₂ ≤ ||(X + |A|X)/d_A + (X + X|B|)/d_B||₂`,
/// 2. `||f(A)Xg(B) ± X||₂ ≤ ||((I + |A|)/d_A) X ((I + |B|)/d_B) + X||₂`.
///
/// The sides are stored as spectra, so other norms can be evaluated, but the
/// statements only cover `Schatten(2)`.
pub fn check_thm_hs(
    sign: Sign,
    a: &NormalMatrix,
    b: &NormalMatrix,
    x: &ComplexMatrix,
    f: &HerglotzMeasure,
    g: &HerglotzMeasure,
) -> Result<(Bound, Bound)> {
    let n = check_dims(a, b, x)?;
    ensure_hermitian(a)?;
    ensure_hermitian(b)?;
    let (d_a, d_b) = (gap(a)?, gap(b)?);
    let fa = apply_spectral(f, &a.decomposition)?;
    let gb = apply_spectral(g, &b.decomposition)?;
    let abs_a = absolute_value(&a.matrix)?;
    let abs_b = absolute_value(&b.matrix)?;

    let lhs1 = combine(&(&fa * x), sign, &(x * &gb));
    let rhs1 = &(x + &(&abs_a * x)).scale_real(1.0 / d_a) + &(x + &(x * &abs_b)).scale_real(1.0 / d_b);

    let lhs2 = combine(&(&(&fa * x) * &gb), sign, x);
    let id = ComplexMatrix::identity(n);
    let left = (&id + &abs_a).scale_real(1.0 / d_a);
    let right = (&id + &abs_b).scale_real(1.0 / d_b);
    let rhs2 = &(&(&left * x) * &right) + x;

    Ok((
        Bound {
            lhs: Side::norm_of(1.0, &lhs1)?,
            rhs: Side::norm_of(1.0, &rhs1)?,
            d_a: Some(d_a),
            d_b: Some(d_b),
        },
        Bound {
            lhs: Side::norm_of(1.0, &lhs2)?,
            rhs: Side::norm_of(1.0, &rhs2)?,
            d_a: Some(d_a),
            d_b: Some(d_b),
        },
    ))
}
