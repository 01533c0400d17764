//! Matrix analysis toolkit for norm bounds on elementary operators.
//!
//! The crate covers four layers:
//!
//! - [`linalg`]: dense complex matrices, Jacobi eigen/singular solvers, normal
//!   diagonalization, general eigenvalues and linear solves.
//! - [`norms`]: unitarily invariant norms (operator, Ky Fan, Schatten) and Ky Fan
//!   dominance.
//! - [`calculus`]: Herglotz measures, spectral and contour-integral functional
//!   calculus, spectral gaps and resolvent-growth (G₁) certification.
//! - [`samplers`], [`inequalities`], [`harness`]: seeded input generation, one
//!   checker per inequality, and the batch/sharpness drivers behind the CLI.

pub mod calculus;
pub mod error;
pub mod harness;
pub mod inequalities;
pub mod linalg;
pub mod norms;
pub mod samplers;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, SingularSpectrum, SpectralDecomposition};
pub use norms::NormKind;

pub use num_complex::Complex64;
