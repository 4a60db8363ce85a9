//! The energy form 𝒬₆(u, v) = ∫ u L₆v + Σ_{j ≤ 2} ∮ B_j(u) B_{5−j}(v), its
//! interior/boundary split in normal form, the Dirichlet eigenvalue check
//! and the minimizing property of L₆-harmonic extensions.

use crate::boundary_ops::{apply_all, BallPoly, ExpMode, FieldRep};
use crate::error::{Gjms6Error, Result};
use crate::exact_poly::{ball_integral, half_line_integral, sphere_integral, MomentScalar, MomentUnit, MultiPoly, RadialPoly, T_VAR};
use crate::fractional::{dtn_multiplier, Boundary};
use crate::gjms6::apply_l6;
use crate::mode_solver::{
    ball_mode_solve, mode_boundary_values, radial_to_series, BoundaryTriple, ModeIndex, SolveResult, SolvedProfile,
};
use crate::boundary_ops::Warped;
use crate::model_geometry::{ModelGeometry, ModelKind};
use crate::rational::{q0, qi, to_f64, Num, Q};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq)]
pub struct EnergyReport {
    pub interior: Num,
    pub boundary: Num,
    pub total: Num,
    pub exact: bool,
    /// Exact ball values are multiples of Vol(Sⁿ); mode values are per unit
    /// L²-normalized boundary eigenfunction.
    pub unit: MomentUnit,
}

impl EnergyReport {
    fn exact(interior: Q, boundary: Q, unit: MomentUnit) -> Self {
        let total = &interior + &boundary;
        EnergyReport {
            interior: Num::Exact(interior),
            boundary: Num::Exact(boundary),
            total: Num::Exact(total),
            exact: true,
            unit,
        }
    }

    pub fn total_q(&self) -> Option<&Q> {
        self.total.exact()
    }
}

/// 𝒬₆(u, v) for polynomials on the flat ball, exact in units of Vol(Sⁿ).
pub fn q6_form(geom: &ModelGeometry, u: &FieldRep, v: &FieldRep) -> Result<EnergyReport> {
    match (geom.kind, u, v) {
        (ModelKind::EuclideanBall, FieldRep::Poly(a), FieldRep::Poly(b)) => {
            let lv = match apply_l6(geom, v)? {
                FieldRep::Poly(p) => p,
                _ => unreachable!("flat L6 keeps polynomials"),
            };
            let interior = ball_integral(&(a * &lv));
            let c = BallPoly::new(geom.n)?;
            let bu = apply_all(&c, a);
            let bv = apply_all(&c, b);
            let mut boundary = MomentScalar::vol(q0());
            for j in 0..3 {
                boundary = boundary.checked_add(&sphere_integral(&(&bu[j] * &bv[5 - j])))?;
            }
            Ok(EnergyReport::exact(interior.q, boundary.q, MomentUnit::VolSn))
        }
        _ => Err(Gjms6Error::Unsupported(format!("energy form for this input on {}", geom.kind.name()))),
    }
}

pub fn energy(geom: &ModelGeometry, u: &FieldRep) -> Result<EnergyReport> {
    q6_form(geom, u, u)
}

/// 𝒬₆(u, v) − 𝒬₆(v, u), exact on polynomial input.
pub fn symmetry_residual(geom: &ModelGeometry, u: &FieldRep, v: &FieldRep) -> Result<Q> {
    let a = q6_form(geom, u, v)?;
    let b = q6_form(geom, v, u)?;
    match (a.total.exact(), b.total.exact()) {
        (Some(x), Some(y)) => Ok(x - y),
        _ => Err(Gjms6Error::Unsupported("symmetry residual needs exact input".into())),
    }
}

/// 𝒬₆ between two radial profiles p·Y_ℓ and q·Y_ℓ on the ball, ∮Y_ℓ² = 1.
pub fn q6_ball_mode(n: i64, ell: u32, p: &RadialPoly, q: &RadialPoly) -> Result<EnergyReport> {
    let geom = ModelGeometry::new(ModelKind::EuclideanBall, n)?;
    let lam = ModeIndex::Degree(ell).bar_eigenvalue(n);
    let lq = q.mode_laplacian(n, &lam).mode_laplacian(n, &lam).mode_laplacian(n, &lam).scale(&qi(-1));
    let interior = p.mul(&lq).integrate_weight(n as i32);
    let bp = mode_boundary_values(&geom, &lam, &radial_to_series(p, Warped::LEN))?;
    let bq = mode_boundary_values(&geom, &lam, &radial_to_series(q, Warped::LEN))?;
    let boundary = (0..3).fold(q0(), |s, j| s + &bp[j] * &bq[5 - j]);
    Ok(EnergyReport::exact(interior, boundary, MomentUnit::Pure))
}

/// 𝒬₆ between e^{−ty}p(y) and e^{−ty}q(y) on one frequency of the half-space.
/// Profiles use the variables (t, y) and are evaluated at the given t.
pub fn q6_halfspace_mode(n: i64, t: &Q, p: &MultiPoly, q: &MultiPoly) -> Result<EnergyReport> {
    let e = ExpMode::new(n, p.dim())?;
    let lq = {
        use crate::boundary_ops::BoundaryCalculus;
        e.lap(&e.lap(&e.lap(q))).scale(&qi(-1))
    };
    let at = |x: &MultiPoly| x.eval_var(T_VAR, t);
    let interior = half_line_integral(&at(&(p * &lq)), t).constant_term();
    let bp = apply_all(&e, p);
    let bq = apply_all(&e, q);
    let boundary = (0..3).fold(q0(), |s, j| s + at(&(&bp[j] * &bq[5 - j])).constant_term());
    Ok(EnergyReport::exact(interior, boundary, MomentUnit::Pure))
}

/// 𝒬₆ between two solved modes of the same geometry and index.
pub fn q6_solved(a: &SolveResult, b: &SolveResult) -> Result<EnergyReport> {
    if a.geom != b.geom || a.index != b.index {
        return Err(Gjms6Error::Unsupported("energy of different modes".into()));
    }
    match (&a.profile, &b.profile, &a.index) {
        (SolvedProfile::Radial(p), SolvedProfile::Radial(q), ModeIndex::Degree(l)) => q6_ball_mode(a.geom.n, *l, p, q),
        (SolvedProfile::Exp(p), SolvedProfile::Exp(q), ModeIndex::Frequency(t)) => {
            q6_halfspace_mode(a.geom.n, t, &p.embed(2), &q.embed(2))
        }
        _ => {
            // L₆-harmonic input: the interior term vanishes identically.
            let boundary: f64 = (0..3).map(|j| a.boundary[j].to_f64() * b.boundary[5 - j].to_f64()).sum();
            Ok(EnergyReport {
                interior: Num::Float(0.0),
                boundary: Num::Float(boundary),
                total: Num::Float(boundary),
                exact: false,
                unit: MomentUnit::Pure,
            })
        }
    }
}

// ---------------------------------------------------------- normal-form split

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BilinearDecomposition {
    pub fi: Q,
    pub fb: Q,
}

/// 𝓕_I and 𝓕_B on one half-space frequency. Only the half-space is in
/// normal form among the flat models (the ball has H = n ≠ 0).
pub fn fi_fb_decompose(geom: &ModelGeometry, mode: &ModeIndex, u: &FieldRep, v: &FieldRep) -> Result<BilinearDecomposition> {
    let (t, p, q) = match (geom.kind, mode, u, v) {
        (ModelKind::UpperHalfSpace, ModeIndex::Frequency(t), FieldRep::ExpMode(p), FieldRep::ExpMode(q)) => (t, p, q),
        (ModelKind::UpperHalfSpace, _, _, _) => {
            return Err(Gjms6Error::Unsupported("normal-form split needs exponential modes".into()))
        }
        (kind, _, _, _) => return Err(Gjms6Error::NonNormalForm(format!("{} is not in normal form", kind.name()))),
    };
    if *t <= q0() {
        return Err(Gjms6Error::DegenerateMode(format!("frequency t = {t}")));
    }
    use crate::boundary_ops::BoundaryCalculus;
    let e = ExpMode::new(geom.n, p.dim().max(q.dim()))?;
    let (p, q) = (p.embed(e.vars), q.embed(e.vars));
    let at = |x: &MultiPoly| x.eval_var(T_VAR, t);
    let tt = t * t;
    // Interior: ∫ ⟨∇Δu, ∇Δv⟩ with the tangential part contributing t².
    let (lu, lv) = (e.lap(&p), e.lap(&q));
    let dy = |x: &MultiPoly| -> MultiPoly {
        // ∂_y of e^{−ty}x is e^{−ty}(x_y − t x).
        &x.deriv(crate::exact_poly::Y_VAR) - &(&MultiPoly::var(e.vars, T_VAR) * x)
    };
    let integrand = &(&dy(&lu) * &dy(&lv)) + &(&lu * &lv).scale(&tt);
    let fi = half_line_integral(&at(&integrand), t).constant_term();
    // Boundary: −4((Δu)Δ̄ηv + (Δv)Δ̄ηu) + 8((ηu)Δ̄²v + (ηv)Δ̄²u); Δ̄ acts as −t².
    let r = |x: &MultiPoly| at(&e.restrict(x)).constant_term();
    let eta = |x: &MultiPoly| at(&e.eta(x)).constant_term();
    let fb = qi(-4) * (r(&lu) * (-&tt) * eta(&q) + r(&lv) * (-&tt) * eta(&p))
        + qi(8) * (eta(&p) * &tt * &tt * r(&q) + eta(&q) * &tt * &tt * r(&p));
    Ok(BilinearDecomposition { fi, fb })
}

// -------------------------------------------------- Dirichlet eigenvalue check

#[derive(Clone, Debug, Serialize)]
pub struct DirichletEigenEstimate {
    pub lambda_lower: f64,
    /// (ℓ, smallest Galerkin eigenvalue) per checked degree.
    pub modes_checked: Vec<(u32, f64)>,
}

/// Largest Galerkin basis per degree.
pub const GALERKIN_MAX: usize = 16;

/// Zero-data Galerkin basis r^ℓ(1 − r²)³r^{2k}, k < size.
pub fn zero_data_basis(ell: u32, size: usize) -> Vec<RadialPoly> {
    let one_minus = RadialPoly::monomial(0, qi(1)).add(&RadialPoly::monomial(2, qi(-1)));
    let cube = one_minus.mul(&one_minus).mul(&one_minus);
    (0..size).map(|k| cube.shift(ell as i32 + 2 * k as i32)).collect()
}

/// Smallest eigenvalue of the ℰ₆ form against the L² form on the zero-data
/// subspace, per degree ℓ ≤ lmax, on the flat ball. Gram–Schmidt runs in
/// exact arithmetic; only the final symmetric eigenproblem is floating.
pub fn dirichlet_eigen_lower(geom: &ModelGeometry, lmax: u32, grid: usize) -> Result<DirichletEigenEstimate> {
    if geom.kind != ModelKind::EuclideanBall {
        return Err(Gjms6Error::Unsupported(format!("Dirichlet eigenvalue check on {}", geom.kind.name())));
    }
    let n = geom.n;
    let size = grid.clamp(1, GALERKIN_MAX);
    let mut modes_checked = Vec::new();
    for ell in 0..=lmax {
        let basis = zero_data_basis(ell, size);
        let l2 = |a: &RadialPoly, b: &RadialPoly| a.mul(b).integrate_weight(n as i32);
        // Exact Gram–Schmidt in L²(r^n dr).
        let mut ortho: Vec<RadialPoly> = Vec::new();
        let mut norms: Vec<Q> = Vec::new();
        for b in &basis {
            let mut v = b.clone();
            for (o, nn) in ortho.iter().zip(&norms) {
                let c = l2(b, o) / nn;
                v = v.add(&o.scale(&-c));
            }
            norms.push(l2(&v, &v));
            ortho.push(v);
        }
        let lam = ModeIndex::Degree(ell).bar_eigenvalue(n);
        let l6 = |x: &RadialPoly| x.mode_laplacian(n, &lam).mode_laplacian(n, &lam).mode_laplacian(n, &lam).scale(&qi(-1));
        let images: Vec<RadialPoly> = ortho.iter().map(l6).collect();
        let mut m = DMatrix::<f64>::zeros(size, size);
        for i in 0..size {
            for j in 0..size {
                let e = ortho[i].mul(&images[j]).integrate_weight(n as i32);
                m[(i, j)] = to_f64(&e) / (to_f64(&norms[i]) * to_f64(&norms[j])).sqrt();
            }
        }
        let sym = (&m + m.transpose()) * 0.5;
        let ev = SymmetricEigen::new(sym).eigenvalues;
        let min = ev.iter().cloned().fold(f64::INFINITY, f64::min);
        modes_checked.push((ell, min));
    }
    let lambda_lower = modes_checked.iter().map(|m| m.1).fold(f64::INFINITY, f64::min);
    if !(lambda_lower > 0.0) {
        return Err(Gjms6Error::Singular(format!("indefinite Dirichlet form: λ = {lambda_lower:.6e}")));
    }
    Ok(DirichletEigenEstimate { lambda_lower, modes_checked })
}

// -------------------------------------------------------- lower-bound property

/// Re (x₁ + i x₂)^ℓ, a harmonic polynomial of degree ℓ.
pub fn harmonic_polynomial(dim: usize, ell: u32) -> MultiPoly {
    let mut out = MultiPoly::zero(dim);
    for k in (0..=ell).step_by(2) {
        let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
        let binom = crate::rational::factorial(ell) / (crate::rational::factorial(k) * crate::rational::factorial(ell - k));
        let mut e = vec![0u32; dim];
        e[0] = ell - k;
        e[1] = k;
        out = &out + &MultiPoly::monomial(dim, &e, binom * qi(sign));
    }
    out
}

/// Σ c_k r^k · Y with r^k = |x|^{k−ℓ}·r^ℓ and Y homogeneous of degree ℓ.
pub fn radial_times_harmonic(p: &RadialPoly, y: &MultiPoly, ell: u32) -> MultiPoly {
    let r2 = MultiPoly::radius_sq(y.dim());
    let mut out = MultiPoly::zero(y.dim());
    for (e, c) in p.terms() {
        let k = e - ell as i32;
        assert!(k >= 0 && k % 2 == 0, "profile is not regular for degree ℓ");
        out = &out + &(&r2.pow(k as u32 / 2) * y).scale(c);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundReport {
    /// ℰ₆(u₀) in units of Vol(Sⁿ).
    pub e0: Q,
    /// ∮[(8/3)fP₅f + 8φP₃φ + 3ψP₁ψ] in units of Vol(Sⁿ).
    pub predicted: Q,
    /// ℰ₆(u₀ + v) − ℰ₆(u₀) per perturbation, in units of Vol(Sⁿ).
    pub gaps: Vec<Q>,
    /// max |𝒬₆(u₀, v)| over the perturbations; zero for the minimizer.
    pub cross_max: Q,
}

impl LowerBoundReport {
    pub fn min_gap(&self) -> Option<&Q> {
        self.gaps.iter().min()
    }
}

/// Zero-data perturbation Σ_m p_m(r)·Y_m with Y_m = Re(x₁ + ix₂)^m and each
/// p_m in the span of [`zero_data_basis`], so B₀v = B₁v = B₂v = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroDataPerturbation {
    pub modes: Vec<(u32, RadialPoly)>,
}

impl ZeroDataPerturbation {
    pub fn to_poly(&self, dim: usize) -> MultiPoly {
        self.modes.iter().fold(MultiPoly::zero(dim), |acc, (m, p)| {
            &acc + &radial_times_harmonic(p, &harmonic_polynomial(dim, *m), *m)
        })
    }
}

/// Random perturbation over the degrees 0..=3 and `ell`, three basis
/// profiles per degree with small rational coefficients.
pub fn random_zero_data_perturbation(rng: &mut ChaCha8Rng, ell: u32) -> ZeroDataPerturbation {
    let mut degrees: Vec<u32> = (0..=3).collect();
    if ell > 3 {
        degrees.push(ell);
    }
    loop {
        let modes: Vec<(u32, RadialPoly)> = degrees
            .iter()
            .map(|&m| {
                let p = zero_data_basis(m, 3).iter().fold(RadialPoly::zero(), |acc, b| {
                    acc.add(&b.scale(&crate::rational::q(rng.gen_range(-5..=5), rng.gen_range(1..=4))))
                });
                (m, p)
            })
            .collect();
        if modes.iter().any(|(_, p)| p.terms().any(|(_, c)| !num_traits::Zero::is_zero(c))) {
            return ZeroDataPerturbation { modes };
        }
    }
}

fn exact_total(e: EnergyReport) -> Q {
    e.total_q().cloned().expect("ball mode energies are exact")
}

/// ∮ Y_m² for Y_m = Re(x₁ + ix₂)^m on S^{dim−1}, in units of Vol.
fn harmonic_norm_sq(dim: usize, m: u32) -> Q {
    let y = harmonic_polynomial(dim, m);
    sphere_integral(&(&y * &y)).q
}

/// ℰ₆(u₀ + v) − ℰ₆(u₀) and 𝒬₆(u₀, v) for u₀ = prof·Y_ℓ, in units of Vol.
pub fn perturbation_gap(n: i64, ell: u32, prof: &RadialPoly, v: &ZeroDataPerturbation) -> Result<(Q, Q)> {
    let d = n as usize + 1;
    let mut gap = q0();
    let mut cross = q0();
    for (m, p) in &v.modes {
        let norm = harmonic_norm_sq(d, *m);
        if *m == ell {
            // ℰ(u₀ + v) − ℰ(u₀) = 2𝒬(u₀, v) + ℰ(v) by symmetry.
            let c = exact_total(q6_ball_mode(n, ell, prof, p)?);
            gap += (qi(2) * &c + exact_total(q6_ball_mode(n, ell, p, p)?)) * &norm;
            cross += c * &norm;
        } else {
            gap += exact_total(q6_ball_mode(n, *m, p, p)?) * &norm;
        }
    }
    Ok((gap, cross))
}

/// Ball check that the L₆-harmonic extension u₀ of (f, φ, ψ)·Y_ℓ minimizes
/// ℰ₆ among fields with the same data. Spherical harmonics of different
/// degree are ℰ₆-orthogonal, so every quantity is a sum of exact radial
/// mode energies.
pub fn trace_lower_bound_check(n: i64, ell: u32, data: &BoundaryTriple, samples: usize, seed: u64) -> Result<LowerBoundReport> {
    ModelGeometry::new(ModelKind::EuclideanBall, n)?;
    let d = n as usize + 1;
    let sol = ball_mode_solve(n, ell, data)?;
    let SolvedProfile::Radial(prof) = &sol.profile else { unreachable!() };
    let y_sq = harmonic_norm_sq(d, ell);
    let e0 = exact_total(q6_ball_mode(n, ell, prof, prof)?) * &y_sq;
    let mode = ModeIndex::Degree(ell);
    let predicted = (0..3).fold(q0(), |s, k| {
        let j = [5, 3, 1][k];
        let m = dtn_multiplier(Boundary::Round, n, j, &mode).expect("valid multiplier");
        let x = &data.as_array()[k];
        s + m * x * x
    }) * &y_sq;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gaps = Vec::with_capacity(samples);
    let mut cross_max = q0();
    for _ in 0..samples {
        let v = random_zero_data_perturbation(&mut rng, ell);
        let (gap, cross) = perturbation_gap(n, ell, prof, &v)?;
        gaps.push(gap);
        let cross = if cross < q0() { -cross } else { cross };
        if cross > cross_max {
            cross_max = cross;
        }
    }
    Ok(LowerBoundReport { e0, predicted, gaps, cross_max })
}

/// Energy identity for a solved mode: ℰ₆(u) against
/// (8/3)P₅f² + 8P₃φ² + 3P₁ψ².
pub fn mode_energy_identity(sol: &SolveResult) -> Result<(Num, Q)> {
    let e = q6_solved(sol, sol)?;
    let bnd = Boundary::of(&sol.geom);
    let d = sol.data.as_array();
    let mut predicted = q0();
    for (k, j) in [5usize, 3, 1].into_iter().enumerate() {
        predicted += dtn_multiplier(bnd, sol.geom.n, j, &sol.index)? * &d[k] * &d[k];
    }
    Ok((e.total, predicted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::Y_VAR;
    use crate::mode_solver::halfspace_solve;
    use crate::rational::q;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn ball7() -> ModelGeometry {
        ModelGeometry::new(ModelKind::EuclideanBall, 7).unwrap()
    }

    #[test]
    fn documented_ball_values() {
        let g = ball7();
        let x = |i| FieldRep::Poly(MultiPoly::var(8, i));
        assert_eq!(q6_form(&g, &x(0), &x(1)).unwrap().total, Num::Exact(q0()));
        let e = energy(&g, &x(0)).unwrap();
        assert_eq!(e.total, Num::Exact(qi(576)));
        assert_eq!(e.interior, Num::Exact(q0()));
        let zero = FieldRep::Poly(MultiPoly::zero(8));
        assert_eq!(energy(&g, &zero).unwrap().total, Num::Exact(q0()));
    }

    #[test]
    fn ball_energy_two_routes_agree() {
        // Boundary operators on x₁ directly.
        let c = BallPoly::new(7).unwrap();
        let x1 = MultiPoly::var(8, 0);
        let b = apply_all(&c, &x1);
        for (j, w) in [1i64, 2, 8, 96, 960, 1920].into_iter().enumerate() {
            assert!(c.sphere_eq(&b[j], &x1.scale(&qi(w))), "B{j}");
        }
        // Multiplier route: ∮[(8/3)·720 + 8·P₃·4 + 3·P₁·64]x₁² with ℓ = 1.
        let m = ModeIndex::Degree(1);
        let mult = |j| dtn_multiplier(Boundary::Round, 7, j, &m).unwrap();
        let route = (mult(5) * qi(1) + mult(3) * qi(4) + mult(1) * qi(64)) / qi(8);
        assert_eq!(route, qi(576));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]
        #[test]
        fn symmetry_on_random_pairs(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let active = [0usize, 1, 2];
            let u = MultiPoly::random(&mut rng, 8, &active, 4, 4);
            let v = MultiPoly::random(&mut rng, 8, &active, 4, 4);
            let r = symmetry_residual(&ball7(), &FieldRep::Poly(u), &FieldRep::Poly(v)).unwrap();
            prop_assert!(r.is_zero());
        }
    }

    #[test]
    fn documented_symmetry_pair() {
        let u = FieldRep::Poly(MultiPoly::var(8, 0));
        let v = FieldRep::Poly(MultiPoly::var(8, 1).pow(2));
        assert!(symmetry_residual(&ball7(), &u, &v).unwrap().is_zero());
    }

    #[test]
    fn polarization() {
        let g = ball7();
        let u = &MultiPoly::var(8, 0).pow(3) + &MultiPoly::var(8, 1);
        let v = &MultiPoly::var(8, 0) * &MultiPoly::var(8, 2).pow(2);
        let e = |p: MultiPoly| energy(&g, &FieldRep::Poly(p)).unwrap().total_q().unwrap().clone();
        let pol = (e(&u + &v) - e(&u - &v)) / qi(4);
        let qv = q6_form(&g, &FieldRep::Poly(u), &FieldRep::Poly(v)).unwrap();
        assert_eq!(Num::Exact(pol), qv.total);
    }

    #[test]
    fn ball_modes_agree_with_polynomials() {
        let n = 7;
        for ell in [0u32, 1, 2] {
            let s1 = ball_mode_solve(n, ell, &BoundaryTriple::new(qi(1), q(1, 2), qi(-3))).unwrap();
            let SolvedProfile::Radial(p) = &s1.profile else { unreachable!() };
            let pert = zero_data_basis(ell, 2)[1].add(p);
            let y = harmonic_polynomial(8, ell);
            let y_sq = sphere_integral(&(&y * &y)).q;
            let poly = radial_times_harmonic(&pert, &y, ell);
            let a = energy(&ball7(), &FieldRep::Poly(poly)).unwrap();
            let b = q6_ball_mode(n, ell, &pert, &pert).unwrap();
            assert_eq!(a.total, Num::Exact(b.total_q().unwrap() * &y_sq));
        }
    }

    #[test]
    fn fi_fb_matches_q6_on_halfspace_modes() {
        let g = ModelGeometry::new(ModelKind::UpperHalfSpace, 7).unwrap();
        let t = q(3, 2);
        let y = MultiPoly::var(2, Y_VAR);
        let tv = MultiPoly::var(2, T_VAR);
        let profiles = [
            &MultiPoly::one(2) + &(&tv * &y),
            &y.pow(3) - &y.scale(&qi(2)),
            &(&y.pow(2) * &tv) + &MultiPoly::constant(2, qi(5)),
        ];
        for p in &profiles {
            for qp in &profiles {
                let d = fi_fb_decompose(&g, &ModeIndex::Frequency(t.clone()), &FieldRep::ExpMode(p.clone()), &FieldRep::ExpMode(qp.clone()))
                    .unwrap();
                let d2 = fi_fb_decompose(&g, &ModeIndex::Frequency(t.clone()), &FieldRep::ExpMode(qp.clone()), &FieldRep::ExpMode(p.clone()))
                    .unwrap();
                assert_eq!(d, d2);
                let e = q6_halfspace_mode(7, &t, p, qp).unwrap();
                assert_eq!(Num::Exact(&d.fi + &d.fb), e.total);
            }
        }
        assert!(matches!(
            fi_fb_decompose(&ball7(), &ModeIndex::Degree(1), &FieldRep::Poly(MultiPoly::var(8, 0)), &FieldRep::Poly(MultiPoly::var(8, 0))),
            Err(Gjms6Error::NonNormalForm(_))
        ));
    }

    #[test]
    fn harmonic_extensions_have_boundary_energy_only() {
        let s = halfspace_solve(7, &qi(2), &BoundaryTriple::new(qi(1), qi(2), qi(3))).unwrap();
        let e = q6_solved(&s, &s).unwrap();
        assert_eq!(e.interior, Num::Exact(q0()));
        let (tot, pred) = mode_energy_identity(&s).unwrap();
        assert_eq!(tot, Num::Exact(pred));
        let b = ball_mode_solve(7, 0, &BoundaryTriple::unit(0)).unwrap();
        let (tot, pred) = mode_energy_identity(&b).unwrap();
        assert_eq!(pred, q(8 * 120, 3));
        assert_eq!(tot, Num::Exact(pred));
        let h = crate::mode_solver::hemisphere_mode_solve(7, 2, &BoundaryTriple::new(qi(1), qi(-1), qi(2))).unwrap();
        let (tot, pred) = mode_energy_identity(&h).unwrap();
        assert!((tot.to_f64() - to_f64(&pred)).abs() <= 1e-8 * to_f64(&pred));
    }

    #[test]
    fn dirichlet_form_is_positive() {
        let est = dirichlet_eigen_lower(&ball7(), 8, 64).unwrap();
        assert_eq!(est.modes_checked.len(), 9);
        assert!(est.lambda_lower > 0.0);
        // A single zero-data profile already has positive energy.
        let b = &zero_data_basis(0, 1)[0];
        assert!(*q6_ball_mode(7, 0, b, b).unwrap().total_q().unwrap() > q0());
        assert!(dirichlet_eigen_lower(&ModelGeometry::new(ModelKind::RoundHemisphere, 7).unwrap(), 2, 8).is_err());
    }

    #[test]
    fn extension_minimizes_energy() {
        let r = trace_lower_bound_check(7, 1, &BoundaryTriple::unit(0), 6, 11).unwrap();
        assert_eq!(r.e0, qi(240));
        assert_eq!(r.e0, r.predicted);
        assert!(r.cross_max.is_zero());
        assert!(r.gaps.iter().all(|g| *g > q0()));
        // A small perturbation, once per mode and once by polynomial integration on B⁸.
        let g = ball7();
        let s = ball_mode_solve(7, 1, &BoundaryTriple::unit(0)).unwrap();
        let SolvedProfile::Radial(p) = &s.profile else { unreachable!() };
        let u0 = radial_times_harmonic(p, &harmonic_polynomial(8, 1), 1);
        let v = ZeroDataPerturbation {
            modes: vec![(0, zero_data_basis(0, 1)[0].scale(&q(1, 2))), (1, zero_data_basis(1, 1)[0].scale(&qi(-3)))],
        };
        let (gap, c) = perturbation_gap(7, 1, p, &v).unwrap();
        assert!(c.is_zero() && gap > q0());
        let v = v.to_poly(8);
        let e = |p: MultiPoly| energy(&g, &FieldRep::Poly(p)).unwrap().total_q().unwrap().clone();
        assert_eq!(e(&u0 + &v) - e(u0.clone()), gap);
        let cross = q6_form(&g, &FieldRep::Poly(u0), &FieldRep::Poly(v)).unwrap();
        assert_eq!(cross.total, Num::Exact(q0()));
    }
}
