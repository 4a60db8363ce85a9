//! The six boundary operators B_0 … B_5 attached to the sixth-order GJMS
//! operator, their curvature coefficients and their closed forms on models.

pub mod calculus;
pub mod engines;
pub mod generic;
pub mod halfspace;
pub mod lists;

pub use calculus::{Acc, BoundaryCalculus, Curvature, NPoly};
pub use engines::{BallPoly, ExpMode, ModeVal, Warped};
pub use generic::{apply_all, apply_b, b_main, t_scalar, Scalars};
pub use halfspace::HalfPoly;
pub use lists::{apply_list, geodesic_forms, normal_form_operators, ListKind, ModeStencil, NormalFormCoeffs};

use crate::error::{Gjms6Error, Result};
use crate::exact_poly::{MultiPoly, Series};
use crate::model_geometry::{ModelGeometry, ModelKind};
use crate::rational::{q, qi, Q};
use serde::{Deserialize, Serialize};

/// Index j of B_j; bidegree (−(n−5)/2, −(n+2j−5)/2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryOperatorId(usize);

impl BoundaryOperatorId {
    pub fn new(j: usize) -> Result<Self> {
        if j > 5 {
            return Err(Gjms6Error::OperatorIndex(j));
        }
        Ok(BoundaryOperatorId(j))
    }

    pub fn j(self) -> usize {
        self.0
    }

    pub fn bidegree(self, n: i64) -> (Q, Q) {
        (q(5 - n, 2), q(5 - n - 2 * self.0 as i64, 2))
    }
}

/// Curvature scalars of the operator formulas evaluated on a model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureCoefficients {
    pub t1: Q,
    pub t2: Q,
    pub t3: Q,
    pub t4c: Q,
    pub t5: Q,
    pub s2: Q,
    pub s3: Q,
    pub s4: Q,
    pub r13: Q,
    pub r23: Q,
    /// Components of the one-form σ_4 in an orthonormal boundary frame.
    pub sigma4: Vec<Q>,
}

impl CurvatureCoefficients {
    pub fn t(&self, j: usize) -> Q {
        match j {
            1 => self.t1.clone(),
            2 => self.t2.clone(),
            3 => self.t3.clone(),
            4 => self.t4c.clone(),
            5 => self.t5.clone(),
            _ => qi(0),
        }
    }

    pub fn is_zero(&self) -> bool {
        use num_traits::Zero;
        [&self.t1, &self.t2, &self.t3, &self.t4c, &self.t5, &self.s2, &self.s3, &self.s4, &self.r13, &self.r23]
            .iter()
            .all(|x| x.is_zero())
            && self.sigma4.iter().all(|x| x.is_zero())
    }
}

/// Exact coefficients on a model. Every model has constant boundary
/// curvature data, so σ_4 vanishes and the scalars are numbers.
pub fn coefficients(geom: &ModelGeometry) -> CurvatureCoefficients {
    let w = Warped::for_model(geom, qi(0)).expect("model warps carry enough coefficients");
    let s = Scalars::new(&w);
    let val = |b: ModeVal| b.c;
    CurvatureCoefficients {
        t1: val(generic::t_scalar_with(&w, 1, &s)),
        t2: val(generic::t_scalar_with(&w, 2, &s)),
        t3: val(generic::t_scalar_with(&w, 3, &s)),
        t4c: val(generic::t_scalar_with(&w, 4, &s)),
        t5: val(generic::t_scalar_with(&w, 5, &s)),
        s2: val(generic::s2_with(&w, &s)),
        s3: val(generic::s3_with(&w, &s)),
        s4: val(generic::s4_with(&w, &s)),
        r13: val(generic::r13_with(&w, &s)),
        r23: val(generic::r23_with(&w, &s)),
        sigma4: vec![qi(0); geom.n as usize],
    }
}

/// Inputs accepted by [`apply_b_on`].
#[derive(Clone, Debug, PartialEq)]
pub enum FieldRep {
    /// Polynomial in the n+1 ambient coordinates (ball or half-space).
    Poly(MultiPoly),
    /// Half-space profile p(t, y, …) of e^{ix·ξ − ty}p with |ξ| = t.
    ExpMode(MultiPoly),
    /// R(ρ)·Y with −Δ̄Y = λY, R given by its Taylor series at the boundary.
    Mode { lambda: Q, profile: Series<Q> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryValue {
    Poly(MultiPoly),
    Mode(ModeVal),
}

/// B_j(u) on a model geometry, exact for every supported representation.
pub fn apply_b_on(j: BoundaryOperatorId, geom: &ModelGeometry, u: &FieldRep) -> Result<BoundaryValue> {
    let j = j.j();
    match (u, geom.kind) {
        (FieldRep::Poly(p), ModelKind::EuclideanBall) => {
            check_dim(p.dim(), geom.n as usize + 1)?;
            Ok(BoundaryValue::Poly(apply_b(&BallPoly::new(geom.n)?, j, p)?))
        }
        (FieldRep::Poly(p), ModelKind::UpperHalfSpace) => {
            check_dim(p.dim(), geom.n as usize + 1)?;
            Ok(BoundaryValue::Poly(apply_b(&HalfPoly::new(geom.n)?, j, p)?))
        }
        (FieldRep::ExpMode(p), ModelKind::UpperHalfSpace) => {
            Ok(BoundaryValue::Poly(apply_b(&ExpMode::new(geom.n, p.dim())?, j, p)?))
        }
        (FieldRep::Mode { lambda, profile }, _) => {
            if profile.len() < Warped::LEN {
                return Err(Gjms6Error::MissingSeries(format!(
                    "mode profile needs {} Taylor coefficients",
                    Warped::LEN
                )));
            }
            let w = Warped::for_model(geom, lambda.clone())?;
            Ok(BoundaryValue::Mode(apply_b(&w, j, profile)?))
        }
        (other, kind) => Err(Gjms6Error::Unsupported(format!(
            "{} input on {}",
            match other {
                FieldRep::Poly(_) => "polynomial",
                FieldRep::ExpMode(_) => "exponential-mode",
                FieldRep::Mode { .. } => "mode",
            },
            kind.name()
        ))),
    }
}

fn check_dim(got: usize, expected: usize) -> Result<()> {
    if got != expected {
        return Err(Gjms6Error::DimensionMismatch { expected, got });
    }
    Ok(())
}
