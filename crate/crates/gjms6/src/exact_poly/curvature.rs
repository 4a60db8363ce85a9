//! Curvature of ĝ = e^{2σ}g for flat g and polynomial σ.
//!
//! P̂ = −∇²σ + dσ⊗dσ − ½|∇σ|²g is polynomial. Quantities that carry a power
//! of e^{σ} are returned with that factor stripped and named accordingly.

use super::multipoly::MultiPoly;
use crate::error::{Gjms6Error, Result};
use crate::model_geometry::{ModelGeometry, ModelKind};
use crate::rational::{q, qi};

#[derive(Clone, Debug, PartialEq)]
pub struct ConformalCurvature {
    /// Components P̂_ij in the flat coordinate frame.
    pub p_hat: Vec<Vec<MultiPoly>>,
    /// tr_g P̂, so that Ĵ = e^{−2σ}·trace_p_hat.
    pub trace_p_hat: MultiPoly,
    /// e^{σ}Ĥ on the boundary.
    pub e_sigma_h_hat: MultiPoly,
    /// P̂(η, η) with η the g-unit normal, on the boundary; equals e^{2σ}P̂(η̂, η̂).
    pub p_hat_nn: MultiPoly,
}

pub fn conformally_flat_curvature(sigma: &MultiPoly, geom: &ModelGeometry) -> Result<ConformalCurvature> {
    let d = (geom.n + 1) as usize;
    if sigma.dim() != d {
        return Err(Gjms6Error::DimensionMismatch { expected: d, got: sigma.dim() });
    }
    let grad: Vec<MultiPoly> = (0..d).map(|i| sigma.deriv(i)).collect();
    let grad_sq = grad.iter().fold(MultiPoly::zero(d), |a, g| a + g * g);
    let half = grad_sq.scale(&q(-1, 2));
    let mut p_hat = vec![vec![MultiPoly::zero(d); d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut e = -grad[i].deriv(j) + &grad[i] * &grad[j];
            if i == j {
                e = e + &half;
            }
            p_hat[i][j] = e;
        }
    }
    let trace_p_hat = (0..d).fold(MultiPoly::zero(d), |a, i| a + &p_hat[i][i]);
    let n = qi(geom.n);
    let (e_sigma_h_hat, p_hat_nn) = match geom.kind {
        ModelKind::UpperHalfSpace => {
            let y = d - 1;
            // η = −∂_y, H = 0.
            let eta_sigma = -grad[y].restrict_zero(y);
            (eta_sigma.scale(&n), p_hat[y][y].restrict_zero(y))
        }
        ModelKind::EuclideanBall => {
            // η = x on the unit sphere, H = n; boundary values kept as ambient polynomials.
            let eta_sigma = sigma.euler();
            let mut pnn = MultiPoly::zero(d);
            for i in 0..d {
                for j in 0..d {
                    pnn = pnn + MultiPoly::var(d, i) * MultiPoly::var(d, j) * &p_hat[i][j];
                }
            }
            (MultiPoly::constant(d, n.clone()) + eta_sigma.scale(&n), pnn)
        }
        _ => {
            return Err(Gjms6Error::Unsupported(
                "conformally flat curvature needs a flat-interior model".into(),
            ))
        }
    };
    Ok(ConformalCurvature { p_hat, trace_p_hat, e_sigma_h_hat, p_hat_nn })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn linear_sigma_on_halfspace() {
        let g = ModelGeometry::new(ModelKind::UpperHalfSpace, 7).unwrap();
        let y = MultiPoly::var(8, 7);
        let c = conformally_flat_curvature(&y, &g).unwrap();
        assert_eq!(c.e_sigma_h_hat, MultiPoly::constant(8, qi(-7)));
        assert_eq!(c.p_hat_nn, MultiPoly::constant(8, q(1, 2)));
    }

    #[test]
    fn zero_sigma_is_flat() {
        let g = ModelGeometry::new(ModelKind::EuclideanBall, 5).unwrap();
        let c = conformally_flat_curvature(&MultiPoly::zero(6), &g).unwrap();
        assert!(c.trace_p_hat.is_zero());
        assert_eq!(c.e_sigma_h_hat, MultiPoly::constant(6, qi(5)));
        let hemi = ModelGeometry::new(ModelKind::RoundHemisphere, 5).unwrap();
        assert!(conformally_flat_curvature(&MultiPoly::zero(6), &hemi).is_err());
    }
}
