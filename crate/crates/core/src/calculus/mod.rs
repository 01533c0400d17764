//! Herglotz-class functions of matrices.
//!
//! A function in the class is given by an atomic probability measure on the
//! unit circle ([`HerglotzMeasure`]). For normal matrices it is applied through
//! the spectral decomposition ([`apply_spectral`]); for any matrix it can also
//! be evaluated by trapezoidal quadrature of the Cauchy contour integral
//! ([`riesz_dunford`]), which serves as the independent cross-check.

mod contour;
mod g1;
mod herglotz;

use num_complex::Complex64;

pub use contour::{
    contour_trapezoid, distance_to_spectrum, resolvent, riesz_dunford, spectrum, ContourSpec, ResolventFamily,
    DEFAULT_NODES, MIN_RESOLVENT_DISTANCE,
};
pub use g1::{g1_certify, g1_certify_at, g1_deviation, GOneCertificate, G1_TOL};
pub use herglotz::{apply_spectral, herglotz_eval, Atom, HerglotzMeasure, MASS_TOL};

use crate::error::{Error, Result};

/// Distance `min_j (1 - |λ_j|)` from the spectrum to the unit circle.
pub fn spectral_gap(eigenvalues: &[Complex64]) -> Result<f64> {
    let mut gap = f64::INFINITY;
    for z in eigenvalues {
        let r = z.norm();
        if !(r < 1.0) {
            return Err(Error::Domain(format!(
                "spectrum not inside unit disk (|λ| = {r})"
            )));
        }
        gap = gap.min(1.0 - r);
    }
    if gap.is_infinite() {
        return Err(Error::Domain("empty spectrum".into()));
    }
    Ok(gap)
}
