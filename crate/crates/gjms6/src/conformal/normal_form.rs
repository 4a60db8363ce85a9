//! The conformal factor putting a model metric into boundary normal form,
//! determined to normal order five by the triangular system B_j(u) = 0.

use crate::boundary_ops::{apply_b, b_main, t_scalar, BoundaryCalculus, Warped};
use crate::error::{Gjms6Error, Result};
use crate::exact_poly::Series;
use crate::model_geometry::ModelGeometry;
use crate::rational::{q, q0, qi, Q};
use num_traits::Zero;
use serde::Serialize;

/// Normal derivatives η^k u for k = 0 … order of a radial conformal factor.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryJet {
    pub n: i64,
    pub order: usize,
    /// c_k = η^k u; with η = −∂_ρ this is (−1)^k ∂_ρ^k u.
    pub coeffs: Vec<Q>,
    /// n = 5: u is the log-factor σ itself (g = e^{2u}g₀).
    pub critical: bool,
}

impl BoundaryJet {
    /// Taylor series of u(ρ) in the inward distance.
    pub fn profile(&self) -> Series<Q> {
        let jets: Vec<Q> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 0 { c.clone() } else { -c.clone() })
            .collect();
        Warped::field_from_jets(&jets)
    }

    /// Log-factor σ with g = e^{2σ}g₀.
    pub fn sigma(&self) -> Series<Q> {
        let u = self.profile();
        if self.critical {
            u
        } else {
            u.ln().scale(&q(2, self.n - 5))
        }
    }

    /// The rescaled metric e^{2σ}(dρ² + w²h) written as ds² + W(s)²h.
    pub fn rescaled_warp(&self, geom: &ModelGeometry) -> Series<Q> {
        let len = Warped::LEN;
        let (w, _) = geom.warp_profile(len);
        let es = self.sigma().exp();
        let s_of_rho = es.integral().truncate(len);
        let rho_of_s = s_of_rho.reversion();
        es.mul(&w).compose(&rho_of_s)
    }
}

/// Solve B_j(u) = 0 (n > 5, u|_M = 1) or T_j + B_j(u) = 0 (n = 5, u|_M = 0)
/// for the boundary-constant mode.
pub fn normalize_jet(geom: &ModelGeometry) -> Result<BoundaryJet> {
    let n = geom.n;
    let w = Warped::for_model(geom, q0())?;
    let critical = n == 5;
    let unit = |k: usize| {
        let mut v = vec![q0(); 6];
        v[k] = qi(1);
        Warped::field_from_jets(&v)
    };
    // Row j of the stencil: B_j(unit_k) for k ≤ j.
    let mut r = vec![q0(); 6];
    r[0] = if critical { q0() } else { qi(1) };
    for j in 1..6 {
        let mut rhs = if critical { -t_scalar(&w, j)?.c } else { q0() };
        for (k, rk) in r.iter().enumerate().take(j) {
            if !rk.is_zero() {
                let b = if critical { b_main(&w, j, &unit(k))? } else { apply_b(&w, j, &unit(k))? };
                rhs -= b.m * rk;
            }
        }
        let pivot = apply_b(&w, j, &unit(j))?.m;
        if pivot.is_zero() {
            return Err(Gjms6Error::Singular(format!("normal-form pivot {j}")));
        }
        r[j] = rhs / pivot;
    }
    let coeffs = r.iter().enumerate().map(|(k, x)| if k % 2 == 0 { x.clone() } else { -x.clone() }).collect();
    Ok(BoundaryJet { n, order: 5, coeffs, critical })
}

/// Values of the six normal-form conditions after rescaling, each of which
/// must vanish: H, P(η,η) − J̄/3, ηJ, ΔJ − (4|P̄|² − 4nJ̄²/9) (Δ̄J̄ = 0 on
/// models), ηΔJ + 4η|P|², and W(0) − 1.
pub fn normal_form_defects(geom: &ModelGeometry, jet: &BoundaryJet) -> Result<Vec<Q>> {
    let warp = jet.rescaled_warp(geom);
    let (_, kappa) = geom.warp_profile(1);
    let w0 = warp.coeff(0);
    let c = Warped::new(&warp, kappa, geom.n, q0())?.curvature();
    let n = qi(geom.n);
    Ok(vec![
        w0 - qi(1),
        c.h.c,
        c.pnn.c - &c.jbar.c / qi(3),
        c.eta_j.c,
        c.lap_j.c - (qi(4) * &c.pbar_sq.c - qi(4) * &n * &c.jbar.c * &c.jbar.c / qi(9)),
        c.eta_lap_j.c + qi(4) * c.eta_p_sq.c,
    ])
}
