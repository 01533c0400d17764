//! Unitarily invariant norms and Ky Fan dominance.
//!
//! Every norm here is a symmetric gauge function of the singular values, so
//! evaluating several norms of one matrix costs a single singular value
//! decomposition: compute a [`SingularSpectrum`] once and call
//! [`SingularSpectrum::norm`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{singular_values, ComplexMatrix, SingularSpectrum};
use crate::tolerance::within_slack;

/// Selector for a unitarily invariant norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum NormKind {
    /// `s_1`.
    Operator,
    /// Sum of the `k` largest singular values.
    KyFan(usize),
    /// `(Σ s_j^p)^{1/p}`; `p = ∞` is the operator norm.
    Schatten(f64),
}

impl NormKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NormKind::Operator => Ok(()),
            NormKind::KyFan(0) => Err(Error::Domain("Ky Fan index must be >= 1".into())),
            NormKind::KyFan(_) => Ok(()),
            NormKind::Schatten(p) if p.is_nan() || p < 1.0 => {
                Err(Error::Domain(format!("Schatten exponent must be >= 1, got {p}")))
            }
            NormKind::Schatten(_) => Ok(()),
        }
    }

    pub fn is_ky_fan(&self) -> bool {
        matches!(self, NormKind::KyFan(_))
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormKind::Operator => write!(f, "operator"),
            NormKind::KyFan(k) => write!(f, "kyfan:{k}"),
            NormKind::Schatten(p) => write!(f, "schatten:{p}"),
        }
    }
}

impl FromStr for NormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s.split_once(':') {
            None if s == "operator" => NormKind::Operator,
            Some(("kyfan", k)) => NormKind::KyFan(
                k.parse()
                    .map_err(|_| Error::Usage(format!("bad Ky Fan index in {s:?}")))?,
            ),
            Some(("schatten", p)) => NormKind::Schatten(
                p.parse()
                    .map_err(|_| Error::Usage(format!("bad Schatten exponent in {s:?}")))?,
            ),
            _ => return Err(Error::Usage(format!("unknown norm {s:?}"))),
        };
        kind.validate()?;
        Ok(kind)
    }
}

impl TryFrom<String> for NormKind {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<NormKind> for String {
    fn from(k: NormKind) -> String {
        k.to_string()
    }
}

impl SingularSpectrum {
    /// Norm of any matrix with this spectrum. Indices past the stored length
    /// count as zero singular values.
    pub fn norm(&self, kind: &NormKind) -> f64 {
        let s = self.values();
        match *kind {
            NormKind::Operator => self.largest(),
            NormKind::KyFan(k) => s.iter().take(k).sum(),
            NormKind::Schatten(p) if p.is_infinite() => self.largest(),
            NormKind::Schatten(p) => {
                let top = self.largest();
                if top == 0.0 {
                    return 0.0;
                }
                let sum: f64 = s.iter().map(|v| (v / top).powf(p)).sum();
                top * sum.powf(1.0 / p)
            }
        }
    }
}

/// `|||a|||` for the selected norm.
pub fn norm(a: &ComplexMatrix, kind: &NormKind) -> Result<f64> {
    kind.validate()?;
    Ok(singular_values(a)?.norm(kind))
}

/// Outcome of comparing all Ky Fan norms of two matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dominance {
    /// `||a||_(k) <= ||b||_(k)` (under the slack rule) for every `k`.
    pub holds: bool,
    /// `max_k (||a||_(k) - ||b||_(k))`; positive exactly when some gap is adverse.
    pub max_violation: f64,
}

/// Ky Fan test on two spectra over `k = 1..=max(len)`.
pub fn ky_fan_dominance(a: &SingularSpectrum, b: &SingularSpectrum) -> Dominance {
    let n = a.len().max(b.len());
    let mut partial_a = 0.0;
    let mut partial_b = 0.0;
    let mut holds = true;
    let mut max_violation = f64::NEG_INFINITY;
    for j in 1..=n {
        partial_a += a.get(j);
        partial_b += b.get(j);
        holds &= within_slack(partial_a, partial_b);
        max_violation = max_violation.max(partial_a - partial_b);
    }
    Dominance {
        holds,
        max_violation: if n == 0 { 0.0 } else { max_violation },
    }
}

/// Whether `|||a||| <= |||b|||` for every Ky Fan norm, hence for every unitarily
/// invariant norm.
pub fn ky_fan_dominates(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Dominance> {
    let n = a.ensure_square()?;
    let m = b.ensure_square()?;
    if n != m {
        return Err(Error::Shape(format!("dominance needs equal sizes, got {n} and {m}")));
    }
    Ok(ky_fan_dominance(&singular_values(a)?, &singular_values(b)?))
}

/// Operator, Schatten 1/2/3 and every Ky Fan `k = 1..=n`.
pub fn norm_suite(n: usize) -> Vec<NormKind> {
    let mut suite = vec![
        NormKind::Operator,
        NormKind::Schatten(1.0),
        NormKind::Schatten(2.0),
        NormKind::Schatten(3.0),
    ];
    suite.extend((1..=n).map(NormKind::KyFan));
    suite
}
