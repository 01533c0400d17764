//! Norm inequalities for elementary operators, one checker per statement.
//!
//! A checker turns its inputs into a [`Bound`]: the singular spectra of the
//! matrices on both sides plus the scalar factors in front of them. A bound is
//! evaluated under any [`NormKind`] without further matrix work, which lets the
//! harness sweep a whole norm family per trial.

mod lemmas;
mod theorems;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use lemmas::{
    check_andozhan, check_bouldin, check_conjugation, check_fugledeputnam, check_halfsum, check_resolvent,
    check_s4, RESOLVENT_POINTS,
};
pub use theorems::{
    check_cor_c1, check_cor_c2, check_cor_c3, check_prop_c4, check_prop_t2n, check_remark1, check_thm1,
    check_thm_hs, check_thm_sum, COMMUTATION_TOL, IDENTITY_TOL,
};

use crate::error::{Error, Result};
use crate::linalg::{singular_values, ComplexMatrix, SingularSpectrum};
use crate::norms::{norm_suite, NormKind};
use crate::tolerance::{within_slack, ABS_SLACK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

macro_rules! theorem_ids {
    ($($variant:ident => $name:literal),+ $(,)?) => {
        /// Registered statement identifiers.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum TheoremId {
            $(#[serde(rename = $name)] $variant,)+
        }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$variant,)+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(TheoremId::$variant => $name,)+
                }
            }
        }
    };
}

theorem_ids! {
    Thm1Plus => "thm1-plus",
    Thm1Minus => "thm1-minus",
    Remark1 => "remark1",
    CorC1Plus => "cor-c1-plus",
    CorC1Minus => "cor-c1-minus",
    CorC2 => "cor-c2",
    CorC3Plus => "cor-c3-plus",
    CorC3Minus => "cor-c3-minus",
    PropC4 => "prop-c4",
    ThmSumPlus => "thm-sum-plus",
    ThmSumMinus => "thm-sum-minus",
    PropT2nBound1 => "prop-t2n-bound1",
    PropT2nBound2 => "prop-t2n-bound2",
    ThmHsPlusFirst => "thm-hs-plus-first",
    ThmHsPlusSecond => "thm-hs-plus-second",
    ThmHsMinusFirst => "thm-hs-minus-first",
    ThmHsMinusSecond => "thm-hs-minus-second",
    LemmaAndozhan => "lemma-andozhan",
    LemmaBouldin => "lemma-bouldin",
    LemmaHalfsum => "lemma-halfsum",
    LemmaResolvent => "lemma-resolvent",
    LemmaConjugation => "lemma-conjugation",
    LemmaFugledeputnam => "lemma-fugledeputnam",
    LemmaS4 => "lemma-s4",
}

impl TheoremId {
    pub fn is_lemma(self) -> bool {
        self.as_str().starts_with("lemma-")
    }

    /// Norms the statement quantifies over at matrix size `dim`.
    ///
    /// Hilbert–Schmidt statements use `Schatten(2)` only; residual and
    /// resolvent lemmas are scalar and use the operator norm as their label.
    /// Statements about `2n × 2n` direct sums get the suite of that size.
    pub fn supported_norms(self, dim: usize) -> Vec<NormKind> {
        use TheoremId::*;
        match self {
            ThmHsPlusFirst | ThmHsPlusSecond | ThmHsMinusFirst | ThmHsMinusSecond => vec![NormKind::Schatten(2.0)],
            LemmaResolvent | LemmaConjugation | LemmaFugledeputnam => vec![NormKind::Operator],
            Remark1 | LemmaHalfsum => norm_suite(2 * dim),
            _ => norm_suite(dim),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown theorem id '{s}'")))
    }
}

/// One side of an inequality: `Σ c_i |||M_i||| + constant`.
#[derive(Debug, Clone, PartialEq)]
pub struct Side {
    terms: Vec<(f64, SingularSpectrum)>,
    constant: f64,
}

impl Side {
    pub fn norm_of(coef: f64, m: &ComplexMatrix) -> Result<Self> {
        Ok(Self::spectrum(coef, singular_values(m)?))
    }

    pub fn spectrum(coef: f64, s: SingularSpectrum) -> Self {
        Self {
            terms: vec![(coef, s)],
            constant: 0.0,
        }
    }

    /// Norm-independent value.
    pub fn scalar(value: f64) -> Self {
        Self {
            terms: Vec::new(),
            constant: value,
        }
    }

    pub fn plus_norm_of(mut self, coef: f64, m: &ComplexMatrix) -> Result<Self> {
        self.terms.push((coef, singular_values(m)?));
        Ok(self)
    }

    pub fn eval(&self, kind: &NormKind) -> f64 {
        self.terms.iter().map(|(c, s)| c * s.norm(kind)).sum::<f64>() + self.constant
    }
}

/// Both sides of one inequality instance, `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bound {
    pub lhs: Side,
    pub rhs: Side,
    pub d_a: Option<f64>,
    pub d_b: Option<f64>,
}

/// Identifies the trial a report belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialMeta {
    pub theorem: TheoremId,
    pub dim: usize,
    pub seed: u64,
    pub trial_index: u64,
}

impl Bound {
    pub fn report(&self, kind: &NormKind, meta: TrialMeta) -> TrialReport {
        let lhs = self.lhs.eval(kind);
        let rhs = self.rhs.eval(kind);
        TrialReport {
            theorem_id: meta.theorem,
            dim: meta.dim,
            seed: meta.seed,
            trial_index: meta.trial_index,
            norm: *kind,
            lhs,
            rhs,
            ratio: ratio(lhs, rhs),
            d_a: self.d_a,
            d_b: self.d_b,
            pass: within_slack(lhs, rhs),
        }
    }

    pub fn ratio(&self, kind: &NormKind) -> f64 {
        ratio(self.lhs.eval(kind), self.rhs.eval(kind))
    }
}

/// `lhs / rhs`; 0 when both sides vanish, infinite when only `rhs` does.
pub fn ratio(lhs: f64, rhs: f64) -> f64 {
    if rhs > 0.0 {
        lhs / rhs
    } else if lhs <= ABS_SLACK {
        0.0
    } else {
        f64::INFINITY
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub theorem_id: TheoremId,
    pub dim: usize,
    pub seed: u64,
    pub trial_index: u64,
    pub norm: NormKind,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    #[serde(rename = "d_A")]
    pub d_a: Option<f64>,
    #[serde(rename = "d_B")]
    pub d_b: Option<f64>,
    pub pass: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        assert_eq!(TheoremId::ALL.len(), 24);
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), *id);
            let json = serde_json::to_string(id).unwrap();
            assert_eq!(json, format!("\"{id}\""));
        }
        assert!(matches!("thm9".parse::<TheoremId>(), Err(Error::Usage(_))));
        assert_eq!(TheoremId::ALL.iter().filter(|t| t.is_lemma()).count(), 7);
    }

    #[test]
    fn supported_norm_counts() {
        assert_eq!(TheoremId::Thm1Plus.supported_norms(1).len(), 5);
        assert_eq!(TheoremId::Thm1Plus.supported_norms(4).len(), 8);
        assert_eq!(TheoremId::Remark1.supported_norms(2).len(), 8);
        assert_eq!(
            TheoremId::ThmHsMinusSecond.supported_norms(6),
            vec![NormKind::Schatten(2.0)]
        );
    }

    #[test]
    fn ratio_and_pass_rules() {
        assert_eq!(ratio(0.0, 0.0), 0.0);
        assert_eq!(ratio(1e-13, 0.0), 0.0);
        assert!(ratio(1e-3, 0.0).is_infinite());
        assert_eq!(ratio(1.0, 2.0), 0.5);

        let meta = TrialMeta {
            theorem: TheoremId::Thm1Plus,
            dim: 1,
            seed: 0,
            trial_index: 0,
        };
        let b = Bound {
            lhs: Side::scalar(1.0 + 5e-10),
            rhs: Side::scalar(1.0),
            d_a: Some(1.0),
            d_b: None,
        };
        let r = b.report(&NormKind::Operator, meta);
        assert!(r.pass && r.ratio > 1.0 && r.ratio <= 1.0 + 1e-9);
        let b = Bound {
            lhs: Side::scalar(1.0 + 2e-9),
            ..b
        };
        assert!(!b.report(&NormKind::Operator, meta).pass);
    }

    #[test]
    fn sides_combine_spectra() {
        let m = ComplexMatrix::from_real_diag(&[3.0, 4.0]);
        let side = Side::norm_of(2.0, &m).unwrap().plus_norm_of(1.0, &m).unwrap();
        assert!((side.eval(&NormKind::Operator) - 12.0).abs() < 1e-14);
        assert!((side.eval(&NormKind::Schatten(2.0)) - 15.0).abs() < 1e-13);
        assert!((side.eval(&NormKind::KyFan(2)) - 21.0).abs() < 1e-13);
    }
}
