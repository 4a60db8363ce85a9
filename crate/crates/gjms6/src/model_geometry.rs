//! Closed-form boundary data for the four model geometries.
//!
//! Each model is written as a warped product dρ² + w(ρ)²h near its boundary
//! ρ = 0, with h flat (κ = 0) or round (κ = 1).

use crate::error::{Gjms6Error, Result};
use crate::exact_poly::series::{sin_cos_at, Series};
use crate::rational::{q, q0, q1, qi, Q};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    UpperHalfSpace,
    EuclideanBall,
    RoundHemisphere,
    HyperbolicGeodesic,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::UpperHalfSpace,
        ModelKind::EuclideanBall,
        ModelKind::RoundHemisphere,
        ModelKind::HyperbolicGeodesic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::UpperHalfSpace => "halfspace",
            ModelKind::EuclideanBall => "ball",
            ModelKind::RoundHemisphere => "hemisphere",
            ModelKind::HyperbolicGeodesic => "geodesic",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "halfspace" | "upper" => Some(ModelKind::UpperHalfSpace),
            "ball" => Some(ModelKind::EuclideanBall),
            "hemisphere" => Some(ModelKind::RoundHemisphere),
            "geodesic" | "hyperbolic" => Some(ModelKind::HyperbolicGeodesic),
            _ => None,
        }
    }

    pub fn round_boundary(self) -> bool {
        self != ModelKind::UpperHalfSpace
    }

    pub fn flat_interior(self) -> bool {
        matches!(self, ModelKind::UpperHalfSpace | ModelKind::EuclideanBall)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelGeometry {
    pub kind: ModelKind,
    pub n: i64,
}

impl ModelGeometry {
    pub fn new(kind: ModelKind, n: i64) -> Result<Self> {
        if n < 5 {
            return Err(Gjms6Error::InvalidDimension(n));
        }
        Ok(ModelGeometry { kind, n })
    }

    /// Warping function w(ρ) to `len` coefficients and boundary curvature κ.
    pub fn warp_profile(&self, len: usize) -> (Series<Q>, Q) {
        let mut w = Series::<Q>::zeros(len);
        w.c[0] = q1();
        match self.kind {
            ModelKind::UpperHalfSpace => (w, q0()),
            ModelKind::EuclideanBall => {
                if len > 1 {
                    w.c[1] = qi(-1);
                }
                (w, q1())
            }
            ModelKind::RoundHemisphere => (sin_cos_at::<Q>(q0(), q1(), len).1, q1()),
            ModelKind::HyperbolicGeodesic => {
                if len > 2 {
                    w.c[2] = q(-1, 4);
                }
                (w, q1())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryGeometryData {
    pub h: Q,
    pub a0_norm_sq: Q,
    pub p_eta_eta: Q,
    pub jbar: Q,
    pub pbar_coeff: Q,
    pub fialkow_zero: bool,
    pub eta_j: Q,
    pub delta_j: Q,
    pub eta_delta_j: Q,
}

pub fn boundary_data(geom: &ModelGeometry) -> BoundaryGeometryData {
    let n = qi(geom.n);
    let round = geom.kind.round_boundary();
    let jbar = if round { &n / qi(2) } else { q0() };
    let pbar_coeff = if round { q(1, 2) } else { q0() };
    let (h, p_eta_eta, delta_j) = match geom.kind {
        ModelKind::UpperHalfSpace => (q0(), q0(), q0()),
        ModelKind::EuclideanBall => (n.clone(), q0(), q0()),
        // Round S^{n+1}: P = ½g, J constant.
        ModelKind::RoundHemisphere => (q0(), q(1, 2), q0()),
        // ΔJ = Δ̄J̄ + |P̄|² with |P̄|² = n/4.
        ModelKind::HyperbolicGeodesic => (q0(), q0(), &n / qi(4)),
    };
    BoundaryGeometryData {
        h,
        a0_norm_sq: q0(),
        p_eta_eta,
        jbar,
        pbar_coeff,
        fialkow_zero: true,
        eta_j: q0(),
        delta_j,
        eta_delta_j: q0(),
    }
}

/// Slices W(η,·,η,·) and C(η,·,·) in a fixed boundary frame, n×n each.
pub fn coronal_check(data: &BoundaryGeometryData, n: usize, weyl_eta: &[Vec<Q>], cotton_eta: &[Vec<Q>]) -> Result<bool> {
    for slice in [weyl_eta, cotton_eta] {
        if slice.len() != n {
            return Err(Gjms6Error::DimensionMismatch { expected: n, got: slice.len() });
        }
        for row in slice {
            if row.len() != n {
                return Err(Gjms6Error::DimensionMismatch { expected: n, got: row.len() });
            }
        }
    }
    let vanish = |s: &[Vec<Q>]| s.iter().all(|r| r.iter().all(|x| x.is_zero()));
    Ok(data.a0_norm_sq.is_zero() && vanish(weyl_eta) && vanish(cotton_eta))
}

/// Zero slices; all models are conformally flat.
pub fn model_slices(n: usize) -> (Vec<Vec<Q>>, Vec<Vec<Q>>) {
    (vec![vec![q0(); n]; n], vec![vec![q0(); n]; n])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactificationExpansion {
    pub n: i64,
    /// h_coeffs[k] is the coefficient of r^k in h_r, as a multiple of h.
    pub h_coeffs: Vec<Q>,
}

impl CompactificationExpansion {
    pub fn h2(&self) -> Q {
        self.h_coeffs.get(2).cloned().unwrap_or_else(q0)
    }

    pub fn trace_h4(&self) -> Q {
        self.h_coeffs.get(4).cloned().unwrap_or_else(q0) * qi(self.n)
    }

    pub fn is_even(&self) -> bool {
        self.h_coeffs.iter().enumerate().all(|(k, c)| k % 2 == 0 || c.is_zero())
    }

    /// Truncation at a given r evaluated as a multiple of h.
    pub fn eval(&self, r: &Q) -> Q {
        let mut s = q0();
        let mut p = q1();
        for c in &self.h_coeffs {
            s += c * &p;
            p *= r;
        }
        s
    }
}

pub fn hyperbolic_expansion(n: i64) -> Result<CompactificationExpansion> {
    if n < 5 {
        return Err(Gjms6Error::InvalidDimension(n));
    }
    let (w, _) = ModelGeometry::new(ModelKind::HyperbolicGeodesic, n)?.warp_profile(5);
    let h = w.mul(&w);
    Ok(CompactificationExpansion { n, h_coeffs: h.c })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicInvariants {
    pub h: Q,
    pub p_eta_eta: Q,
    pub j: Q,
    pub jbar: Q,
    pub eta_j: Q,
    pub delta_j: Q,
    pub eta_delta_j: Q,
    pub pbar_norm_sq: Q,
}

/// Invariants of dρ² + (1 − ρ²/4)²dθ² at ρ = 0, computed from J = n/(2w).
pub fn geodesic_invariants(n: i64) -> Result<GeodesicInvariants> {
    let g = ModelGeometry::new(ModelKind::HyperbolicGeodesic, n)?;
    let len = 6;
    let (w, _) = g.warp_profile(len);
    let nq = qi(n);
    let j = w.recip().scale(&(&nq / qi(2)));
    let wpw = w.deriv().div(&w.truncate(len - 1));
    let lap_j = j.deriv().deriv().add(&wpw.mul(&j.deriv()).scale(&nq));
    Ok(GeodesicInvariants {
        h: -w.jet(1) * &nq,
        p_eta_eta: q0(),
        j: j.coeff(0),
        jbar: &nq / qi(2),
        eta_j: -j.jet(1),
        delta_j: lap_j.coeff(0),
        eta_delta_j: -lap_j.jet(1),
        pbar_norm_sq: &nq / qi(4),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_boundary_data() {
        let up = boundary_data(&ModelGeometry::new(ModelKind::UpperHalfSpace, 7).unwrap());
        assert!(up.h.is_zero() && up.jbar.is_zero() && up.pbar_coeff.is_zero());
        let ball = boundary_data(&ModelGeometry::new(ModelKind::EuclideanBall, 7).unwrap());
        assert_eq!((ball.h, ball.jbar, ball.pbar_coeff), (qi(7), q(7, 2), q(1, 2)));
        let hemi = boundary_data(&ModelGeometry::new(ModelKind::RoundHemisphere, 7).unwrap());
        assert_eq!((hemi.h, hemi.jbar, hemi.p_eta_eta), (q0(), q(7, 2), q(1, 2)));
    }

    #[test]
    fn all_models_coronal() {
        for kind in ModelKind::ALL {
            let g = ModelGeometry::new(kind, 7).unwrap();
            let (w, c) = model_slices(7);
            assert!(coronal_check(&boundary_data(&g), 7, &w, &c).unwrap());
        }
    }

    #[test]
    fn coronal_violations() {
        let g = ModelGeometry::new(ModelKind::EuclideanBall, 6).unwrap();
        let mut d = boundary_data(&g);
        let (w, c) = model_slices(6);
        d.a0_norm_sq = q1();
        assert!(!coronal_check(&d, 6, &w, &c).unwrap());
        let d = boundary_data(&g);
        let mut w2 = w.clone();
        w2[1][2] = q1();
        assert!(!coronal_check(&d, 6, &w2, &c).unwrap());
        assert!(coronal_check(&d, 5, &w, &c).is_err());
    }

    #[test]
    fn compactification_identities() {
        for n in 5..=12 {
            let e = hyperbolic_expansion(n).unwrap();
            assert_eq!(e.h2(), q(-1, 2));
            // ¼|P̄|² with |P̄|² = n/4
            assert_eq!(e.trace_h4(), q(n, 16));
            assert!(e.is_even());
            assert_eq!(e.eval(&q0()), q1());
        }
    }

    #[test]
    fn geodesic_lemma_values() {
        let g = geodesic_invariants(7).unwrap();
        assert!(g.h.is_zero() && g.eta_j.is_zero() && g.eta_delta_j.is_zero());
        assert_eq!(g.j, g.jbar);
        assert_eq!(g.delta_j, q(7, 4));
        let b = boundary_data(&ModelGeometry::new(ModelKind::HyperbolicGeodesic, 7).unwrap());
        assert_eq!((b.h, b.p_eta_eta, b.jbar, b.delta_j), (g.h, g.p_eta_eta, g.jbar, g.delta_j));
        assert!(geodesic_invariants(5).unwrap().eta_delta_j.is_zero());
    }
}
