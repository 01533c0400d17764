use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::calculus::HerglotzMeasure;
use crate::error::{Error, Result};
use crate::inequalities::{self as ineq, Bound, Sign, TheoremId};
use crate::linalg::{ComplexMatrix, NormalMatrix, SpectralDecomposition};
use crate::samplers::{
    random_general, random_herglotz, random_normal_in_disk, random_unitary, SamplerConfig, TrialRng,
};

/// Where the eigenvalues of a normal input live.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    /// Open unit disk, kept `min_gap` away from the circle.
    Disk,
    /// Real interval, intersected with `[-(1 - min_gap), 1 - min_gap]`.
    Interval(f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XShape {
    Absent,
    General,
    /// Normal, diagonal in the eigenbasis of `A`.
    Commuting,
}

/// Inputs a statement takes. `b: None` with `a` present means the statement
/// reuses `A` where a second operator would go, or takes none.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shape {
    pub a: Option<Region>,
    pub b: Option<Region>,
    pub x: XShape,
    pub y: bool,
    pub u: bool,
    pub f: bool,
    pub g: bool,
    pub alpha: bool,
    pub beta: bool,
}

const NONE: Shape = Shape {
    a: None,
    b: None,
    x: XShape::Absent,
    y: false,
    u: false,
    f: false,
    g: false,
    alpha: false,
    beta: false,
};

const PAIR: Shape = Shape {
    a: Some(Region::Disk),
    b: Some(Region::Disk),
    x: XShape::General,
    f: true,
    g: true,
    ..NONE
};

pub fn shape_of(id: TheoremId) -> Shape {
    use TheoremId::*;
    let hermitian = Region::Interval(-1.0, 1.0);
    let positive = Region::Interval(0.0, 1.0);
    match id {
        Thm1Plus | Thm1Minus | Remark1 | ThmSumPlus | ThmSumMinus | PropT2nBound1 | PropT2nBound2 => PAIR,
        CorC1Plus | CorC1Minus => Shape {
            b: None,
            x: XShape::Commuting,
            ..PAIR
        },
        CorC2 => Shape { b: None, ..PAIR },
        CorC3Plus | CorC3Minus => Shape {
            x: XShape::Absent,
            ..PAIR
        },
        PropC4 => Shape {
            a: Some(positive),
            b: None,
            x: XShape::Absent,
            u: true,
            ..PAIR
        },
        ThmHsPlusFirst | ThmHsPlusSecond | ThmHsMinusFirst | ThmHsMinusSecond => Shape {
            a: Some(hermitian),
            b: Some(hermitian),
            ..PAIR
        },
        LemmaAndozhan => Shape {
            a: Some(positive),
            b: Some(positive),
            ..NONE
        },
        LemmaBouldin => Shape {
            a: Some(Region::Disk),
            b: Some(Region::Disk),
            ..NONE
        },
        LemmaHalfsum => Shape {
            x: XShape::General,
            y: true,
            ..NONE
        },
        LemmaResolvent => Shape {
            a: Some(Region::Disk),
            alpha: true,
            ..NONE
        },
        LemmaConjugation => Shape {
            a: Some(hermitian),
            u: true,
            f: true,
            ..NONE
        },
        LemmaFugledeputnam => Shape {
            a: Some(Region::Disk),
            x: XShape::Commuting,
            ..NONE
        },
        LemmaS4 => Shape {
            a: Some(Region::Disk),
            b: Some(Region::Disk),
            x: XShape::General,
            alpha: true,
            beta: true,
            ..NONE
        },
    }
}

/// Fully serialized inputs of one statement instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub theorem: TheoremId,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<SpectralDecomposition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<SpectralDecomposition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<ComplexMatrix>,
    /// Eigenvalues of a commuting `X` in the eigenbasis of `A`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_eigs: Option<Vec<Complex64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<ComplexMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<ComplexMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<HerglotzMeasure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<HerglotzMeasure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
}

fn sample_region(region: Region, cfg: &SamplerConfig, rng: &mut TrialRng) -> Result<SpectralDecomposition> {
    Ok(match region {
        Region::Disk => random_normal_in_disk(cfg, rng).decomposition,
        Region::Interval(lo, hi) => crate::samplers::random_hermitian_in_interval(cfg, lo, hi, rng)?.decomposition,
    })
}

impl Instance {
    /// Draws every input the statement takes, in a fixed order.
    pub fn sample(theorem: TheoremId, cfg: &SamplerConfig, rng: &mut TrialRng) -> Result<Self> {
        let shape = shape_of(theorem);
        let a = shape.a.map(|r| sample_region(r, cfg, rng)).transpose()?;
        let b = shape.b.map(|r| sample_region(r, cfg, rng)).transpose()?;
        let (x, x_eigs) = match shape.x {
            XShape::Absent => (None, None),
            XShape::General => (Some(random_general(cfg, rng)), None),
            XShape::Commuting => {
                let xi = (0..cfg.dim)
                    .map(|_| crate::samplers::complex_gaussian(rng) * cfg.max_entry)
                    .collect();
                (None, Some(xi))
            }
        };
        let y = shape.y.then(|| random_general(cfg, rng));
        let u = shape.u.then(|| random_unitary(cfg, rng));
        let f = shape.f.then(|| random_herglotz(rng));
        let g = shape.g.then(|| random_herglotz(rng));
        let alpha = shape.alpha.then(|| rng.random_range(0.0..TAU));
        let beta = shape.beta.then(|| rng.random_range(0.0..TAU));
        Ok(Self {
            theorem,
            dim: cfg.dim,
            a,
            b,
            x,
            x_eigs,
            y,
            u,
            f,
            g,
            alpha,
            beta,
        })
    }

    /// Same instance with every eigenvalue of `A` and `B` set to zero.
    pub fn at_origin(mut self) -> Self {
        for d in [self.a.as_mut(), self.b.as_mut()].into_iter().flatten() {
            d.eigenvalues.iter_mut().for_each(|l| *l = Complex64::new(0.0, 0.0));
        }
        self
    }

    pub fn shape(&self) -> Shape {
        shape_of(self.theorem)
    }

    /// Both sides of the statement on this instance.
    pub fn evaluate(&self) -> Result<Bound> {
        use TheoremId::*;
        let shape = self.shape();
        let a = || realize(self.a.as_ref(), shape.a, "a");
        let b = || realize(self.b.as_ref(), shape.b, "b");
        let x = || need(self.x.as_ref(), "x");
        let f = || need(self.f.as_ref(), "f");
        let g = || need(self.g.as_ref(), "g");
        let commuting = |a: &NormalMatrix| -> Result<NormalMatrix> {
            let xi = need(self.x_eigs.as_ref(), "x_eigs")?;
            Ok(NormalMatrix::from_decomposition(SpectralDecomposition::new(
                xi.clone(),
                a.decomposition.eigenvectors.clone(),
            )?))
        };
        match self.theorem {
            Thm1Plus => ineq::check_thm1(Sign::Plus, &a()?, &b()?, x()?, f()?, g()?),
            Thm1Minus => ineq::check_thm1(Sign::Minus, &a()?, &b()?, x()?, f()?, g()?),
            Remark1 => ineq::check_remark1(&a()?, &b()?, x()?, f()?, g()?),
            CorC1Plus | CorC1Minus => {
                let a = a()?;
                let sign = if self.theorem == CorC1Plus { Sign::Plus } else { Sign::Minus };
                ineq::check_cor_c1(sign, &a, &commuting(&a)?, f()?, g()?)
            }
            CorC2 => ineq::check_cor_c2(&a()?, x()?, f()?, g()?),
            CorC3Plus => ineq::check_cor_c3(Sign::Plus, &a()?, &b()?, f()?, g()?),
            CorC3Minus => ineq::check_cor_c3(Sign::Minus, &a()?, &b()?, f()?, g()?),
            PropC4 => ineq::check_prop_c4(&a()?, need(self.u.as_ref(), "u")?, f()?, g()?),
            ThmSumPlus => ineq::check_thm_sum(Sign::Plus, &a()?, &b()?, x()?, f()?, g()?),
            ThmSumMinus => ineq::check_thm_sum(Sign::Minus, &a()?, &b()?, x()?, f()?, g()?),
            PropT2nBound1 => Ok(ineq::check_prop_t2n(&a()?, &b()?, x()?, f()?, g()?)?.0),
            PropT2nBound2 => Ok(ineq::check_prop_t2n(&a()?, &b()?, x()?, f()?, g()?)?.1),
            ThmHsPlusFirst => Ok(ineq::check_thm_hs(Sign::Plus, &a()?, &b()?, x()?, f()?, g()?)?.0),
            ThmHsPlusSecond => Ok(ineq::check_thm_hs(Sign::Plus, &a()?, &b()?, x()?, f()?, g()?)?.1),
            ThmHsMinusFirst => Ok(ineq::check_thm_hs(Sign::Minus, &a()?, &b()?, x()?, f()?, g()?)?.0),
            ThmHsMinusSecond => Ok(ineq::check_thm_hs(Sign::Minus, &a()?, &b()?, x()?, f()?, g()?)?.1),
            LemmaAndozhan => ineq::check_andozhan(&a()?.matrix, &b()?.matrix),
            LemmaBouldin => ineq::check_bouldin(&a()?.matrix, &b()?.matrix),
            LemmaHalfsum => ineq::check_halfsum(x()?, need(self.y.as_ref(), "y")?),
            LemmaResolvent => ineq::check_resolvent(&a()?, *need(self.alpha.as_ref(), "alpha")?),
            LemmaConjugation => ineq::check_conjugation(&a()?, need(self.u.as_ref(), "u")?, f()?),
            LemmaFugledeputnam => {
                let a = a()?;
                ineq::check_fugledeputnam(&a.matrix, &commuting(&a)?.matrix)
            }
            LemmaS4 => ineq::check_s4(
                &a()?.matrix,
                &b()?.matrix,
                x()?,
                *need(self.alpha.as_ref(), "alpha")?,
                *need(self.beta.as_ref(), "beta")?,
            ),
        }
    }
}

fn need<'a, T>(v: Option<&'a T>, name: &str) -> Result<&'a T> {
    v.ok_or_else(|| Error::Precondition(format!("instance is missing '{name}'")))
}

/// Matrix of a stored decomposition; real-interval inputs are symmetrized so
/// they are Hermitian to the last bit.
fn realize(d: Option<&SpectralDecomposition>, region: Option<Region>, name: &str) -> Result<NormalMatrix> {
    let mut m = NormalMatrix::from_decomposition(need(d, name)?.clone());
    if matches!(region, Some(Region::Interval(..))) {
        m.matrix = m.matrix.hermitian_part();
    }
    Ok(m)
}
