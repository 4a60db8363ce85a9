//! Conformal covariance of the boundary operators: exact finite and
//! first-order checks under g ↦ e^{2σ}g on the half-space, the critical
//! T-shift law, stereographic transport and the normal-form jet.

pub mod half;
pub mod normal_form;
pub mod ring;
pub mod transport;

pub use half::ConfHalf;
pub use normal_form::{normal_form_defects, normalize_jet, BoundaryJet};

pub use ring::{ConfPoly, ConfRing, DualPoly};
pub use transport::{cayley_transport, TransportDirection, TripleFn};


use crate::boundary_ops::{apply_b, t_scalar};
use crate::error::{Gjms6Error, Result};
use crate::exact_poly::MultiPoly;
use crate::model_geometry::{ModelGeometry, ModelKind};
use crate::rational::Q;

/// First-order probe e^{2εσ}g acting on densities of weight w.
#[derive(Clone, Debug)]
pub struct VariationProbe {
    pub w: Q,
    pub sigma: MultiPoly,
    pub order: usize,
}

fn check_inputs(j: usize, sigma: &MultiPoly, u: &MultiPoly, geom: &ModelGeometry) -> Result<()> {
    if geom.kind != ModelKind::UpperHalfSpace {
        return Err(Gjms6Error::Unsupported(format!("covariance probes on {}", geom.kind.name())));
    }
    if j > 5 {
        return Err(Gjms6Error::OperatorIndex(j));
    }
    if sigma.dim() != u.dim() {
        return Err(Gjms6Error::DimensionMismatch { expected: sigma.dim(), got: u.dim() });
    }
    if sigma.dim() < 1 || sigma.dim() as i64 > geom.n + 1 {
        return Err(Gjms6Error::DimensionMismatch { expected: geom.n as usize + 1, got: sigma.dim() });
    }
    Ok(())
}

/// B̂_j(e^{wσ}u)·e^{−(w−j)σ} − B_j(u) computed through `R`, with w = −(n−5)/2.
fn covariance_defect<R: ConfRing>(j: usize, n: i64, u: &R) -> R {
    let hat = ConfHalf::new(n, u, true);
    let flat = ConfHalf::new(n, u, false);
    let w2 = -(n as i32 - 5);
    let lhs = apply_b(&hat, j, &u.shift(w2)).expect("j checked").shift(-(w2 - 2 * j as i32));
    let rhs = apply_b(&flat, j, u).expect("j checked");
    lhs.sub(&rhs)
}

/// First variation of the covariance defect; the zero polynomial when B_j has
/// the claimed bidegree.
pub fn infinitesimal_covariance_residual(
    j: usize,
    probe: &VariationProbe,
    u: &MultiPoly,
    geom: &ModelGeometry,
) -> Result<MultiPoly> {
    check_inputs(j, &probe.sigma, u, geom)?;
    if probe.w != Q::new((5 - geom.n).into(), 2.into()) {
        return Err(Gjms6Error::Unsupported("probe weight must be −(n−5)/2".into()));
    }
    if probe.order < j + 1 {
        return Err(Gjms6Error::UnderResolved(format!("probe order {} below {}", probe.order, j + 1)));
    }
    let d = DualPoly::new(probe.sigma.clone(), u.clone());
    let r = covariance_defect(j, geom.n, &d);
    debug_assert!(r.a.is_zero());
    Ok(r.b)
}

/// B̂_j(u) − e^{−((n+2j−5)/2)σ}B_j(e^{((n−5)/2)σ}u) on the boundary, exact.
pub fn finite_covariance_residual(j: usize, sigma: &MultiPoly, u: &MultiPoly, geom: &ModelGeometry) -> Result<ConfPoly> {
    check_inputs(j, sigma, u, geom)?;
    let n = geom.n;
    let c = ConfPoly::new(sigma.clone(), u.clone());
    let hat = ConfHalf::new(n, &c, true);
    let flat = ConfHalf::new(n, &c, false);
    let lhs = apply_b(&hat, j, &c)?;
    let k = n as i32 - 5;
    let rhs = apply_b(&flat, j, &c.shift(k))?.shift(-(k + 2 * j as i32));
    Ok(lhs.sub(&rhs))
}

/// e^{jσ}T̂_j − T_j − B_j(σ) on the half-space in dimension five.
pub fn critical_t_shift(j: usize, sigma: &MultiPoly, geom: &ModelGeometry) -> Result<ConfPoly> {
    if geom.n != 5 {
        return Err(Gjms6Error::Unsupported(format!("T-shift law needs n = 5, got {}", geom.n)));
    }
    if !(1..=5).contains(&j) {
        return Err(Gjms6Error::OperatorIndex(j));
    }
    check_inputs(j, sigma, sigma, geom)?;
    let s = ConfPoly::new(sigma.clone(), sigma.clone());
    let hat = ConfHalf::new(5, &s, true);
    let flat = ConfHalf::new(5, &s, false);
    let t_hat = t_scalar(&hat, j)?.shift(2 * j as i32);
    let t_flat = t_scalar(&flat, j)?;
    let b = apply_b(&flat, j, &s)?;
    Ok(t_hat.sub(&t_flat).sub(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary_ops::{apply_list, ListKind, Warped};
    use crate::rational::{q, qi};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn half(n: i64) -> ModelGeometry {
        ModelGeometry::new(ModelKind::UpperHalfSpace, n).unwrap()
    }

    #[test]
    fn documented_residuals() {
        let g = half(7);
        let y = MultiPoly::var(2, 1);
        let x = MultiPoly::var(2, 0);
        let one = MultiPoly::one(2);
        assert!(finite_covariance_residual(2, &y, &(&x * &x), &g).unwrap().is_zero());
        assert!(finite_covariance_residual(5, &(&y * &y), &one, &g).unwrap().is_zero());
        assert!(finite_covariance_residual(3, &MultiPoly::zero(2), &x, &g).unwrap().is_zero());
        let probe = VariationProbe { w: qi(-1), sigma: &x * &y, order: 6 };
        assert!(infinitesimal_covariance_residual(3, &probe, &y, &g).unwrap().is_zero());
        let probe = VariationProbe { w: qi(-1), sigma: y.clone(), order: 6 };
        assert!(infinitesimal_covariance_residual(1, &probe, &one, &g).unwrap().is_zero());
    }

    #[test]
    fn random_pairs_are_covariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [5, 6, 7, 10] {
            let g = half(n);
            for _ in 0..4 {
                let s = MultiPoly::random(&mut rng, 3, &[0, 1, 2], 3, 3);
                let u = MultiPoly::random(&mut rng, 3, &[0, 1, 2], 3, 3);
                let probe = VariationProbe { w: q(5 - n, 2), sigma: s.clone(), order: 6 };
                for j in 0..6 {
                    assert!(infinitesimal_covariance_residual(j, &probe, &u, &g).unwrap().is_zero(), "n={n} j={j}");
                    assert!(finite_covariance_residual(j, &s, &u, &g).unwrap().is_zero(), "n={n} j={j}");
                }
            }
        }
    }

    #[test]
    fn critical_shift_law() {
        let g = half(5);
        let y = MultiPoly::var(2, 1);
        assert!(critical_t_shift(1, &y, &g).unwrap().is_zero());
        assert!(critical_t_shift(2, &(&y * &y), &g).unwrap().is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for j in 1..6 {
            let s = MultiPoly::random(&mut rng, 3, &[0, 1, 2], 3, 4);
            assert!(critical_t_shift(j, &s, &g).unwrap().is_zero(), "j={j}");
        }
        assert!(critical_t_shift(1, &y, &half(7)).is_err());
    }

    #[test]
    fn unsupported_inputs() {
        let ball = ModelGeometry::new(ModelKind::EuclideanBall, 7).unwrap();
        let y = MultiPoly::var(2, 1);
        assert!(finite_covariance_residual(1, &y, &y, &ball).is_err());
        assert!(finite_covariance_residual(6, &y, &y, &half(7)).is_err());
    }

    #[test]
    fn normal_form_jets() {
        for kind in ModelKind::ALL {
            for n in [5, 6, 7, 9] {
                let g = ModelGeometry::new(kind, n).unwrap();
                let jet = normalize_jet(&g).unwrap();
                for (i, d) in normal_form_defects(&g, &jet).unwrap().iter().enumerate() {
                    assert_eq!(*d, qi(0), "{kind:?} n={n} condition {i}");
                }
                // In normal form the simplified list agrees with the general formulas.
                for l in 0..3 {
                    let lam = qi(l * (l + n - 1));
                    let w = Warped::new(&jet.rescaled_warp(&g), g.warp_profile(1).1, n, lam).unwrap();
                    for k in 0..6 {
                        let mut v = vec![qi(0); 6];
                        v[k] = qi(1);
                        let u = Warped::field_from_jets(&v);
                        for j in 0..6 {
                            assert_eq!(
                                crate::boundary_ops::apply_b(&w, j, &u).unwrap(),
                                apply_list(&w, ListKind::NormalForm, j, &u).unwrap(),
                                "{kind:?} n={n} l={l} k={k} j={j}"
                            );
                        }
                    }
                }
            }
        }
        let h = normalize_jet(&half(7)).unwrap();
        assert_eq!(h.coeffs, vec![qi(1), qi(0), qi(0), qi(0), qi(0), qi(0)]);
        let b = normalize_jet(&ModelGeometry::new(ModelKind::EuclideanBall, 7).unwrap()).unwrap();
        assert_eq!(b.coeffs[1], qi(-1));
        let geo = normalize_jet(&ModelGeometry::new(ModelKind::HyperbolicGeodesic, 7).unwrap()).unwrap();
        assert_ne!(geo.coeffs[2], qi(0));
    }

    #[test]
    fn stereographic_transport() {
        use std::rc::Rc;
        let n = 7;
        let one: transport::BoundaryFn = Rc::new(|_: &[f64]| 1.0);
        let data = TripleFn { f: one.clone(), phi: Rc::new(|p: &[f64]| p[0]), psi: Rc::new(|p: &[f64]| p[7] + 2.0) };
        let flat = cayley_transport(n, &data, TransportDirection::BallToHalfspace);
        let x = [0.3, -0.2, 0.5, 0.0, 0.1, 0.0, 0.7];
        let expect = transport::stereo_factor(&x).powf(1.0);
        assert!(((flat.f)(&x) - expect).abs() < 1e-14);
        let back = cayley_transport(n, &flat, TransportDirection::HalfspaceToBall);
        let p = transport::inverse_stereo(&x);
        for (a, b) in [(&back.f, &data.f), (&back.phi, &data.phi), (&back.psi, &data.psi)] {
            assert!((a(&p) - b(&p)).abs() < 1e-13);
        }
        let hemi = cayley_transport(n, &data, TransportDirection::HemisphereToBall);
        assert_eq!((hemi.phi)(&p), (data.phi)(&p));
        // Round probability measure on S⁵ in flat coordinates.
        let x5 = [0.4, 0.1, -0.3, 0.2, 0.0];
        let r2: f64 = x5.iter().map(|v| v * v).sum();
        let vol = std::f64::consts::PI.powi(3);
        let expect = ((1.0 + r2) / 2.0).powi(-5) / vol;
        assert!((transport::round_probability_density(5, &x5) - expect).abs() < 1e-14);
    }
}
