//! Stereographic transport of boundary data between the round sphere and
//! flat space, and between the hemisphere and the ball.

use crate::error::{Gjms6Error, Result};
use std::rc::Rc;

pub type BoundaryFn = Rc<dyn Fn(&[f64]) -> f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransportDirection {
    BallToHalfspace,
    HalfspaceToBall,
    HemisphereToBall,
    BallToHemisphere,
}

/// Dirichlet data (B_0 u, B_1 u, B_2 u) as pointwise functions.
#[derive(Clone)]
pub struct TripleFn {
    pub f: BoundaryFn,
    pub phi: BoundaryFn,
    pub psi: BoundaryFn,
}

/// Conformal factor 2/(1+|x|²) of stereographic projection.
pub fn stereo_factor(x: &[f64]) -> f64 {
    2.0 / (1.0 + x.iter().map(|v| v * v).sum::<f64>())
}

/// ℝⁿ → Sⁿ ⊂ ℝ^{n+1}, sending the origin to the south pole.
pub fn inverse_stereo(x: &[f64]) -> Vec<f64> {
    let r2: f64 = x.iter().map(|v| v * v).sum();
    let mut p: Vec<f64> = x.iter().map(|v| 2.0 * v / (1.0 + r2)).collect();
    p.push((r2 - 1.0) / (1.0 + r2));
    p
}

/// Sⁿ → ℝⁿ; the north pole has no image.
pub fn stereo(p: &[f64]) -> Result<Vec<f64>> {
    let last = *p.last().ok_or(Gjms6Error::DimensionMismatch { expected: 1, got: 0 })?;
    if (1.0 - last).abs() < 1e-300 {
        return Err(Gjms6Error::Singular("north pole has no stereographic image".into()));
    }
    Ok(p[..p.len() - 1].iter().map(|v| v / (1.0 - last)).collect())
}

/// Density weights (n−5)/2, (n−3)/2, (n−1)/2 of the three Dirichlet slots.
pub fn triple_weights(n: i64) -> [f64; 3] {
    let n = n as f64;
    [(n - 5.0) / 2.0, (n - 3.0) / 2.0, (n - 1.0) / 2.0]
}

/// A density of weight w transforms by f ↦ Φ^w·(f∘π⁻¹) under ℝⁿ → Sⁿ.
pub fn transport_density(f: BoundaryFn, weight: f64, direction: TransportDirection) -> BoundaryFn {
    match direction {
        TransportDirection::BallToHalfspace => Rc::new(move |x: &[f64]| stereo_factor(x).powf(weight) * f(&inverse_stereo(x))),
        TransportDirection::HalfspaceToBall => Rc::new(move |p: &[f64]| match stereo(p) {
            Ok(x) => stereo_factor(&x).powf(-weight) * f(&x),
            Err(_) => f64::NAN,
        }),
        // The equator of S^{n+1}_+ maps to the unit sphere with unit factor.
        TransportDirection::HemisphereToBall | TransportDirection::BallToHemisphere => f,
    }
}

pub fn cayley_transport(n: i64, data: &TripleFn, direction: TransportDirection) -> TripleFn {
    let w = triple_weights(n);
    TripleFn {
        f: transport_density(data.f.clone(), w[0], direction),
        phi: transport_density(data.phi.clone(), w[1], direction),
        psi: transport_density(data.psi.clone(), w[2], direction),
    }
}

/// Density of the round probability measure in stereographic coordinates:
/// Φ(x)ⁿ / Vol(Sⁿ).
pub fn round_probability_density(n: usize, x: &[f64]) -> f64 {
    stereo_factor(x).powi(n as i32) / crate::exact_poly::sphere_volume(n)
}
