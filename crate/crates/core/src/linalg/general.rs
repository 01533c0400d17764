//! Eigenvalues of arbitrary square matrices: Householder reduction to upper
//! Hessenberg form followed by single-shift complex QR with deflation.
//!
//! Only used where the input may be non-normal (resolvent-growth probes and
//! contour checks); normal inputs go through [`super::eig_normal`].

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// All eigenvalues of `a`, in no particular order.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = a.ensure_square()?;
    let mut h = hessenberg(a);
    let scale = h.frobenius_norm();
    let mut out = vec![ZERO; n];
    if scale == 0.0 {
        return Ok(out);
    }
    let small = f64::EPSILON * scale;
    let max_iter = 100 * n.max(4);

    let mut hi = n - 1;
    let mut iter_total = 0;
    let mut iter_since_deflation = 0;
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let local = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            if sub <= f64::EPSILON * local || sub <= small {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            out[hi] = h[(hi, hi)];
            hi -= 1;
            iter_since_deflation = 0;
            continue;
        }
        iter_total += 1;
        iter_since_deflation += 1;
        if iter_total > max_iter {
            return Err(Error::NoConvergence {
                routine: "hessenberg qr",
                iterations: iter_total,
            });
        }
        let shift = if iter_since_deflation % 11 == 10 {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.5 * h[(hi, hi - 1)].norm())
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        qr_step(&mut h, lo, hi, shift);
    }
    out[0] = h[(0, 0)];
    Ok(out)
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5 * ((a - d) * 0.5) + b * c).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn hessenberg(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let alpha = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let mut v = x;
        v[0] += phase * alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v {
            *z /= vnorm;
        }
        // H <- (I - 2vv*) H (I - 2vv*) acting on indices k+1..n.
        for j in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(t, vt)| vt.conj() * h[(k + 1 + t, j)]).sum();
            for (t, vt) in v.iter().enumerate() {
                h[(k + 1 + t, j)] -= *vt * dot * 2.0;
            }
        }
        for i in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(t, vt)| h[(i, k + 1 + t)] * vt).sum();
            for (t, vt) in v.iter().enumerate() {
                h[(i, k + 1 + t)] -= dot * vt.conj() * 2.0;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    h
}

/// One explicit shifted QR step `H - σI = QR`, `H <- RQ + σI` on the active
/// window `lo..=hi`.
fn qr_step(h: &mut ComplexMatrix, lo: usize, hi: usize, shift: Complex64) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let a = h[(k, k)];
        let b = h[(k + 1, k)];
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (c, s) = if r == 0.0 {
            (1.0, ZERO)
        } else if a.norm() == 0.0 {
            (0.0, Complex64::new(1.0, 0.0))
        } else {
            let c = a.norm() / r;
            (c, (a / a.norm()) * b.conj() / r)
        };
        // Rows k, k+1 <- G [row_k; row_k+1], G = [[c, s], [-s̄, c]].
        for j in k..=hi {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = x * c + s * y;
            h[(k + 1, j)] = -s.conj() * x + y * c;
        }
        rotations.push((c, s));
    }
    for (offset, &(c, s)) in rotations.iter().enumerate() {
        let k = lo + offset;
        // Columns k, k+1 <- [col_k, col_k+1] G*.
        for i in lo..=(k + 1).min(hi) {
            let x = h[(i, k)];
            let y = h[(i, k + 1)];
            h[(i, k)] = x * c + y * s.conj();
            h[(i, k + 1)] = -x * s + y * c;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}
