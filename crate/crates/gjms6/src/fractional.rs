//! Fractional GJMS multipliers on the model boundaries, the scattering
//! expansion operators T2 and T4, and the Dirichlet-to-Neumann operators of
//! the sixth-order extension problem.

use crate::boundary_ops::{apply_all, ExpMode};
use crate::error::{Gjms6Error, Result};
use crate::exact_poly::{MultiPoly, T_VAR, Y_VAR};
use crate::mode_solver::{solve_mode, BoundaryTriple, ModeIndex};
use crate::model_geometry::{ModelGeometry, ModelKind};
use crate::rational::{gamma_ratio, q, q0, qi, qpow, to_f64, Num, Q};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Boundary {
    Round,
    Flat,
}

impl Boundary {
    pub fn of(geom: &ModelGeometry) -> Self {
        if geom.kind.round_boundary() {
            Boundary::Round
        } else {
            Boundary::Flat
        }
    }
}

fn check_mode(boundary: Boundary, mode: &ModeIndex) -> Result<()> {
    match (boundary, mode) {
        (Boundary::Round, ModeIndex::Degree(_)) => Ok(()),
        (Boundary::Flat, ModeIndex::Frequency(t)) if *t >= q0() => Ok(()),
        _ => Err(Gjms6Error::Unsupported(format!("mode {mode:?} on a {boundary:?} boundary"))),
    }
}

/// P_{2γ} acting on one boundary mode.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FractionalMultiplier {
    pub n: i64,
    pub gamma: Q,
    pub boundary: Boundary,
}

impl FractionalMultiplier {
    /// γ must be one of 1/2, 1, …, 3 and lie in (0, n/2).
    pub fn new(boundary: Boundary, n: i64, gamma: Q) -> Result<Self> {
        let two_g = &gamma * qi(2);
        let bad = || Gjms6Error::GammaOutOfRange { n, gamma: crate::rational::fmt_q(&gamma) };
        if !two_g.is_integer() || two_g < qi(1) || two_g > qi(6) {
            return Err(bad());
        }
        if two_g == qi(n) {
            return Err(Gjms6Error::Critical);
        }
        if two_g > qi(n) {
            return Err(bad());
        }
        Ok(FractionalMultiplier { n, gamma, boundary })
    }

    /// Γ(ℓ + n/2 + γ)/Γ(ℓ + n/2 − γ) on Sⁿ, t^{2γ} on ℝⁿ.
    pub fn value(&self, mode: &ModeIndex) -> Result<Q> {
        check_mode(self.boundary, mode)?;
        Ok(match mode {
            ModeIndex::Degree(l) => round_intertwining(self.n, &self.gamma, *l),
            ModeIndex::Frequency(t) => {
                let k = (&self.gamma * qi(2)).to_integer();
                qpow(t, k.try_into().expect("2γ ≤ 6"))
            }
        })
    }
}

fn round_intertwining(n: i64, gamma: &Q, ell: u32) -> Q {
    let base = qi(ell as i64) + q(n, 2);
    gamma_ratio(&(&base + gamma), &(&base - gamma)).expect("2γ is a non-negative integer")
}

pub fn multiplier(boundary: Boundary, n: i64, gamma: &Q, mode: &ModeIndex) -> Result<Q> {
    FractionalMultiplier::new(boundary, n, gamma.clone())?.value(mode)
}

/// The critical P5 on the round S⁵: ℓ(ℓ+1)(ℓ+2)(ℓ+3)(ℓ+4).
pub fn critical_multiplier(ell: u32) -> Q {
    round_intertwining(5, &q(5, 2), ell)
}

/// Multiplier of 𝔅_j (j = 1, 3, 5): 3P₁, 8P₃ and (8/3)P₅. At n = 5 the last
/// one uses the critical P₅.
pub fn dtn_multiplier(boundary: Boundary, n: i64, j: usize, mode: &ModeIndex) -> Result<Q> {
    let (c, gamma) = match j {
        1 => (qi(3), q(1, 2)),
        3 => (qi(8), q(3, 2)),
        5 => (q(8, 3), q(5, 2)),
        _ => return Err(Gjms6Error::OperatorIndex(j)),
    };
    let p = match multiplier(boundary, n, &gamma, mode) {
        Err(Gjms6Error::Critical) => {
            check_mode(boundary, mode)?;
            match mode {
                ModeIndex::Degree(l) => critical_multiplier(*l),
                ModeIndex::Frequency(t) => qpow(t, 5),
            }
        }
        r => r?,
    };
    Ok(c * p)
}

// ---------------------------------------------------------------- scattering

/// J̄, |P̄|² and the Δ̄-eigenvalue λ of a model boundary.
fn boundary_scalars(boundary: Boundary, n: i64, mode: &ModeIndex) -> Result<(Q, Q, Q)> {
    check_mode(boundary, mode)?;
    let lambda = mode.bar_eigenvalue(n);
    Ok(match boundary {
        Boundary::Round => (q(n, 2), q(n, 4), lambda),
        Boundary::Flat => (q0(), q0(), lambda),
    })
}

/// L₂(s) = −Δ̄ + sJ̄ on a mode.
pub fn l2(boundary: Boundary, n: i64, s: &Q, mode: &ModeIndex) -> Result<Q> {
    let (j, _, lambda) = boundary_scalars(boundary, n, mode)?;
    Ok(lambda + s * j)
}

/// L₄(s) = δ̄(2P̄ − J̄ḡ)d̄ + J̄Δ̄ − s|P̄|² on a mode. On an Einstein boundary
/// P̄ = (J̄/n)ḡ, so the first term is (2J̄/n − J̄)Δ̄.
pub fn l4(boundary: Boundary, n: i64, s: &Q, mode: &ModeIndex) -> Result<Q> {
    let (j, psq, lambda) = boundary_scalars(boundary, n, mode)?;
    let bar_lap = -lambda;
    let div_term = (qi(2) * &j / qi(n) - &j) * &bar_lap;
    Ok(div_term + &j * &bar_lap - s * psq)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScatteringExpansion {
    pub t2: Q,
    pub t4: Q,
}

/// Per-mode T₂(s), T₄(s); the poles 2s = n+2 and 2s = n+4 are errors.
pub fn scattering_t2_t4(n: i64, s: &Q, boundary: Boundary, mode: &ModeIndex) -> Result<ScatteringExpansion> {
    let d2 = qi(2) * s - qi(n + 2);
    let d4 = qi(2) * s - qi(n + 4);
    if d2.is_zero() || d4.is_zero() {
        return Err(Gjms6Error::ScatteringPole(crate::rational::fmt_q(s)));
    }
    let ns = qi(n) - s;
    let t2 = -l2(boundary, n, &ns, mode)? / (qi(2) * &d2);
    let t4 = (l2(boundary, n, &(&ns + qi(2)), mode)? * l2(boundary, n, &ns, mode)? / &d2 + l4(boundary, n, &ns, mode)?)
        / (qi(8) * d4);
    Ok(ScatteringExpansion { t2, t4 })
}

// ----------------------------------------------------------------------- DtN

/// Residuals of B₃ − 3P₁B₂, B₄ − 8P₃B₁ and B₅ − (8/3)P₅B₀ on one mode.
#[derive(Clone, Debug)]
pub struct DtnResidual {
    pub residuals: [Num; 3],
    pub exact: bool,
    pub boundary: [Num; 6],
}

impl DtnResidual {
    pub fn max(&self) -> f64 {
        self.residuals.iter().map(|r| r.to_f64().abs()).fold(0.0, f64::max)
    }
}

/// B₀ … B₅ of e^{−ty}(a + by + cy²) with t, a, b, c symbolic.
/// Variables: t = 0, y = 1, a = 2, b = 3, c = 4.
pub fn halfspace_symbolic_values(n: i64) -> Result<Vec<MultiPoly>> {
    let e = ExpMode::new(n, 5)?;
    let y = MultiPoly::var(5, Y_VAR);
    let p = &(&MultiPoly::var(5, 2) + &(&MultiPoly::var(5, 3) * &y)) + &(&MultiPoly::var(5, 4) * &y.pow(2));
    Ok(apply_all(&e, &p))
}

/// The three identities as polynomials in (t, a, b, c); all must be zero.
pub fn dtn_symbolic_halfspace(n: i64) -> Result<[MultiPoly; 3]> {
    let b = halfspace_symbolic_values(n)?;
    let t = MultiPoly::var(5, T_VAR);
    Ok([
        &b[3] - &(&t.scale(&qi(3)) * &b[2]),
        &b[4] - &(&t.pow(3).scale(&qi(8)) * &b[1]),
        &b[5] - &(&t.pow(5).scale(&q(8, 3)) * &b[0]),
    ])
}

/// Solve L₆u = 0 with the given data and compare B₃, B₄, B₅ with the
/// fractional multipliers. Numeric residuals are relative to 1 + |expected|.
pub fn dtn_verify(geom: &ModelGeometry, mode: &ModeIndex, data: &BoundaryTriple) -> Result<DtnResidual> {
    let sol = solve_mode(geom, mode, data)?;
    let bnd = Boundary::of(geom);
    let pairs = [(3usize, 1usize, 2usize), (4, 3, 1), (5, 5, 0)];
    let mut exact = true;
    let mut residuals: [Num; 3] = std::array::from_fn(|_| Num::Exact(q0()));
    for (k, (bj, dj, src)) in pairs.into_iter().enumerate() {
        let m = dtn_multiplier(bnd, geom.n, dj, mode)?;
        let expected = &m * &data.as_array()[src];
        residuals[k] = match &sol.boundary[bj] {
            Num::Exact(x) => Num::Exact(x - &expected),
            Num::Float(x) => {
                exact = false;
                let e = to_f64(&expected);
                Num::Float((x - e).abs() / (1.0 + e.abs()))
            }
        };
    }
    Ok(DtnResidual { residuals, exact, boundary: sol.boundary })
}

/// 𝔅_j for j ∈ {1, 3, 5} realised by solve-then-apply.
#[derive(Clone, Debug)]
pub struct DtnOperator {
    pub j: usize,
    pub geom: ModelGeometry,
}

impl DtnOperator {
    pub fn new(j: usize, geom: ModelGeometry) -> Result<Self> {
        if !matches!(j, 1 | 3 | 5) {
            return Err(Gjms6Error::OperatorIndex(j));
        }
        Ok(DtnOperator { j, geom })
    }

    /// Per-mode multiplier: B₃(extend(0,0,1)), B₄(extend(0,1,0)) or B₅(extend(1,0,0)).
    pub fn multiplier(&self, mode: &ModeIndex) -> Result<Num> {
        let (slot, bj) = match self.j {
            1 => (2, 3),
            3 => (1, 4),
            _ => (0, 5),
        };
        let sol = solve_mode(&self.geom, mode, &BoundaryTriple::unit(slot))?;
        Ok(sol.boundary[bj].clone())
    }
}

#[derive(Clone, Debug)]
pub struct SelfAdjointness {
    pub multipliers: Vec<Num>,
    /// max |∮f₁𝔅f₂ − ∮f₂𝔅f₁| over the sampled pairs.
    pub residual: f64,
}

/// Pairs f₁ = Σ a_k Y_k, f₂ = Σ b_k Y_k with orthonormal Y_k: the pairing is
/// Σ a_k b_k m_k in either order, so symmetry reduces to real multipliers.
pub fn dtn_selfadjointness(geom: &ModelGeometry, j: usize, modes: &[ModeIndex]) -> Result<SelfAdjointness> {
    let op = DtnOperator::new(j, *geom)?;
    let multipliers: Vec<Num> = modes.iter().map(|m| op.multiplier(m)).collect::<Result<_>>()?;
    let mut residual = 0.0f64;
    for shift in 1..=modes.len() {
        let a: Vec<f64> = (0..modes.len()).map(|k| 1.0 + k as f64).collect();
        let b: Vec<f64> = (0..modes.len()).map(|k| ((k + shift) % modes.len()) as f64 - 0.5).collect();
        let m: Vec<f64> = multipliers.iter().map(Num::to_f64).collect();
        let lhs: f64 = (0..m.len()).map(|k| a[k] * (m[k] * b[k])).sum();
        let rhs: f64 = (0..m.len()).map(|k| b[k] * (m[k] * a[k])).sum();
        if !m.iter().all(|x| x.is_finite()) {
            return Err(Gjms6Error::Singular("non-finite DtN multiplier".into()));
        }
        residual = residual.max((lhs - rhs).abs());
    }
    Ok(SelfAdjointness { multipliers, residual })
}

/// The y⁰, y¹, y² Taylor coefficients of the decaying half-space solution, as
/// polynomials in (t, f, φ, ψ) with variables t = 0, f = 2, φ = 3, ψ = 4.
pub fn halfspace_v_expansion(n: i64) -> Result<[MultiPoly; 3]> {
    let var = |i| MultiPoly::var(5, i);
    let data = [var(2), var(3), var(4)];
    let mut coeffs = [MultiPoly::zero(5), MultiPoly::zero(5), MultiPoly::zero(5)];
    for (slot, d) in data.iter().enumerate() {
        let prof = crate::mode_solver::halfspace_profile(n, &BoundaryTriple::unit(slot))?.embed(5);
        // e^{−ty}p(t, y) = Σ_k y^k Σ_{i ≤ k} (−t)^{k−i}/(k−i)! · p_i(t)
        for k in 0..3u32 {
            let mut ck = MultiPoly::zero(5);
            for (m, c) in prof.terms() {
                let i = m.exp(Y_VAR);
                if i <= k {
                    let e = k - i;
                    let sign = if e % 2 == 0 { qi(1) } else { qi(-1) };
                    let coef = c * sign / crate::rational::factorial(e);
                    ck = &ck + &MultiPoly::monomial(5, &[m.exp(T_VAR) + e, 0, 0, 0, 0], coef);
                }
            }
            coeffs[k as usize] = &coeffs[k as usize] + &(&ck * d);
        }
    }
    Ok(coeffs)
}

pub fn is_flat_model(kind: ModelKind) -> bool {
    kind.flat_interior()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary_ops::Warped;
    use crate::exact_poly::Series;
    use crate::gjms6::poincare_laplacian;

    #[test]
    fn documented_multipliers() {
        let r = |g: Q, l| multiplier(Boundary::Round, 7, &g, &ModeIndex::Degree(l)).unwrap();
        assert_eq!(r(qi(1), 0), q(35, 4));
        assert_eq!(r(q(5, 2), 0), qi(120));
        assert_eq!(r(q(5, 2), 1), qi(720));
        assert_eq!(r(q(5, 2), 2), qi(2520));
        assert_eq!(multiplier(Boundary::Flat, 7, &q(1, 2), &ModeIndex::Frequency(qi(2))).unwrap(), qi(2));
        assert_eq!(multiplier(Boundary::Round, 5, &q(5, 2), &ModeIndex::Degree(1)), Err(Gjms6Error::Critical));
        assert!(matches!(
            multiplier(Boundary::Round, 5, &qi(3), &ModeIndex::Degree(1)),
            Err(Gjms6Error::GammaOutOfRange { .. })
        ));
        assert!(multiplier(Boundary::Round, 7, &q(1, 3), &ModeIndex::Degree(1)).is_err());
        assert_eq!(critical_multiplier(1), qi(120));
        assert_eq!(critical_multiplier(0), q0());
    }

    #[test]
    fn integer_orders_match_differential_operators() {
        for n in 5..=12i64 {
            for l in 0..=10u32 {
                let lam = qi(l as i64 * (l as i64 + n - 1));
                let p2 = multiplier(Boundary::Round, n, &qi(1), &ModeIndex::Degree(l)).unwrap();
                assert_eq!(p2, &lam + q(n * (n - 2), 4));
                let half = qi(l as i64) + q(n, 2);
                assert_eq!(p2, &half * (&half - qi(1)));
                // P₆ on S^{n+1} against the hemisphere factorization of L₆.
                let d = n + 1;
                if d > 6 {
                    let lam_d = qi(l as i64 * (l as i64 + d - 1));
                    let geom = ModelGeometry::new(ModelKind::RoundHemisphere, n).unwrap();
                    let prod = crate::gjms6::L6Realization::for_model(&geom)
                        .factor_shifts()
                        .iter()
                        .fold(qi(1), |acc, c| acc * (&lam_d + c));
                    assert_eq!(multiplier(Boundary::Round, d, &qi(3), &ModeIndex::Degree(l)).unwrap(), prod);
                }
            }
        }
    }

    #[test]
    fn documented_scattering_values() {
        let e = scattering_t2_t4(7, &qi(6), Boundary::Round, &ModeIndex::Degree(0)).unwrap();
        assert_eq!(e.t2, q(-7, 12));
        let t = q(3, 2);
        let e = scattering_t2_t4(7, &q(13, 3), Boundary::Flat, &ModeIndex::Frequency(t.clone())).unwrap();
        assert_eq!(e.t2, -(&t * &t) / (qi(2) * (q(26, 3) - qi(9))));
        assert!(matches!(
            scattering_t2_t4(7, &q(9, 2), Boundary::Round, &ModeIndex::Degree(1)),
            Err(Gjms6Error::ScatteringPole(_))
        ));
        assert!(scattering_t2_t4(7, &q(11, 2), Boundary::Round, &ModeIndex::Degree(1)).is_err());
    }

    /// Formal solution of −Δ_{g₊}v = s(n−s)v with v = ρ^{n−s}(f + F₁ρ + …)
    /// on the geodesic model or the half-space.
    fn formal_poisson(geom: &ModelGeometry, s: &Q, mode: &ModeIndex) -> Vec<Q> {
        let n = geom.n;
        let lambda = mode.bar_eigenvalue(n);
        let w = match geom.kind {
            ModelKind::UpperHalfSpace => Warped::new(&Series::constant(qi(1), Warped::LEN), q0(), n, lambda).unwrap(),
            _ => Warped::for_model(geom, lambda).unwrap(),
        };
        let m = Series::constant(qi(1), Warped::LEN);
        let a = qi(n) - s;
        let eig = s * (qi(n) - s);
        let resid = |c: &[Q]| {
            let f = Series::from_vec(c.to_vec());
            poincare_laplacian(&w, &m, &a, &f).neg().sub(&f.scale(&eig))
        };
        let mut c = vec![q0(); Warped::LEN];
        c[0] = qi(1);
        for k in 1..5 {
            let r0 = resid(&c).coeff(k);
            c[k] = qi(1);
            let r1 = resid(&c).coeff(k);
            if r1 == r0 {
                // Indicial root: the coefficient is free (scattering data).
                assert!(r0.is_zero());
                c[k] = q0();
            } else {
                c[k] = -&r0 / (r1 - &r0);
            }
        }
        c
    }

    #[test]
    fn scattering_operators_match_formal_poisson_solve() {
        for n in [5i64, 6, 7, 9] {
            for s in [q(n + 5, 2), q(n + 3, 2), q(n + 1, 2), q(2 * n + 1, 3)] {
                if (qi(2) * &s - qi(n + 2)).is_zero() || (qi(2) * &s - qi(n + 4)).is_zero() {
                    continue;
                }
                let cases = [
                    (ModelKind::HyperbolicGeodesic, ModeIndex::Degree(0)),
                    (ModelKind::HyperbolicGeodesic, ModeIndex::Degree(3)),
                    (ModelKind::UpperHalfSpace, ModeIndex::Frequency(q(5, 3))),
                ];
                for (kind, mode) in cases {
                    let geom = ModelGeometry::new(kind, n).unwrap();
                    let c = formal_poisson(&geom, &s, &mode);
                    let e = scattering_t2_t4(n, &s, Boundary::of(&geom), &mode).unwrap();
                    assert!(c[1].is_zero() && c[3].is_zero());
                    assert_eq!(c[2], e.t2, "n={n} s={s} {mode:?}");
                    assert_eq!(c[4], e.t4, "n={n} s={s} {mode:?}");
                }
            }
        }
    }

    #[test]
    fn halfspace_symbolic_identities_vanish() {
        for n in 5..=10 {
            for r in dtn_symbolic_halfspace(n).unwrap() {
                assert!(r.is_zero(), "n={n}: {r}");
            }
        }
        // The documented closed forms of B₃ and B₅.
        let b = halfspace_symbolic_values(7).unwrap();
        let v = |i| MultiPoly::var(5, i);
        let t = v(0);
        let b3 = &(&(&t.pow(3).scale(&qi(4)) * &v(2)) - &(&t.pow(2).scale(&qi(6)) * &v(3))) + &(&t.scale(&qi(6)) * &v(4));
        assert_eq!(b[3], b3);
        assert_eq!(b[5], &t.pow(5).scale(&q(8, 3)) * &v(2));
    }

    #[test]
    fn documented_dtn_values() {
        let ball = ModelGeometry::new(ModelKind::EuclideanBall, 7).unwrap();
        let r = dtn_verify(&ball, &ModeIndex::Degree(1), &BoundaryTriple::unit(0)).unwrap();
        assert!(r.exact && r.max() == 0.0);
        assert_eq!(r.boundary[5], Num::Exact(qi(1920)));
        let sa = dtn_selfadjointness(&ball, 5, &[ModeIndex::Degree(0), ModeIndex::Degree(1), ModeIndex::Degree(2)]).unwrap();
        let want = [120, 720, 2520].map(|x| Num::Exact(q(8 * x, 3)));
        assert_eq!(sa.multipliers, want.to_vec());
        assert_eq!(sa.residual, 0.0);
        let half = ModelGeometry::new(ModelKind::UpperHalfSpace, 7).unwrap();
        let t = q(7, 4);
        let m = DtnOperator::new(1, half).unwrap().multiplier(&ModeIndex::Frequency(t.clone())).unwrap();
        assert_eq!(m, Num::Exact(qi(3) * t));
    }

    #[test]
    fn dtn_holds_on_every_model_for_mixed_data() {
        let d = BoundaryTriple::new(q(2, 3), qi(-1), q(5, 4));
        for n in [5i64, 6, 7] {
            for kind in [ModelKind::EuclideanBall, ModelKind::RoundHemisphere, ModelKind::HyperbolicGeodesic] {
                let geom = ModelGeometry::new(kind, n).unwrap();
                for l in [0u32, 1, 3] {
                    let r = dtn_verify(&geom, &ModeIndex::Degree(l), &d).unwrap();
                    assert!(r.max() <= 1e-8, "{kind:?} n={n} ℓ={l}: {:?}", r.residuals);
                }
            }
            let half = ModelGeometry::new(ModelKind::UpperHalfSpace, n).unwrap();
            let r = dtn_verify(&half, &ModeIndex::Frequency(q(3, 2)), &d).unwrap();
            assert!(r.exact && r.max() == 0.0);
        }
    }

    #[test]
    fn v_expansion_signs() {
        let [c0, c1, c2] = halfspace_v_expansion(7).unwrap();
        let v = |i| MultiPoly::var(5, i);
        let t = v(0);
        assert_eq!(c0, v(2));
        assert_eq!(c1, -v(3));
        // ½(ψ + 2f₍₂₎) with f₍₂₎ = T₂((n+5)/2)f = −t²f/6 on the flat boundary.
        let f2 = scattering_t2_t4(7, &qi(6), Boundary::Flat, &ModeIndex::Frequency(qi(1))).unwrap().t2;
        assert_eq!(f2, q(-1, 6));
        let want = &v(4).scale(&q(1, 2)) + &(&t.pow(2).scale(&f2) * &v(2));
        assert_eq!(c2, want);
    }
}
