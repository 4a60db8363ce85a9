//! Per-harmonic solvers for L6 u = 0 with prescribed (B0, B1, B2) data.
//!
//! Every model boundary is homogeneous, so the extension problem splits over
//! boundary eigenfunctions. The half-space and ball reduce to exact linear
//! algebra; the hemisphere uses Chebyshev collocation on each second-order
//! factor of L6, and the geodesic compactification is pulled back from the
//! hemisphere by the conformal map between the two.

use crate::boundary_ops::{apply_all, ExpMode, Warped};
use crate::error::{Gjms6Error, Result};
use crate::exact_poly::{MultiPoly, RadialPoly, Series, T_VAR, Y_VAR};
use crate::gjms6::L6Realization;
use crate::model_geometry::{ModelGeometry, ModelKind};
use crate::rational::{q, q0, qi, to_f64, Num, Q};
use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Chebyshev nodes used by the hemisphere collocation.
pub const COLLOCATION_NODES: usize = 64;
pub const COLLOCATION_TOL: f64 = 1e-10;
pub const CONDITION_GUARD: f64 = 1e12;
pub const DEFAULT_LMAX: u32 = 32;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ModeIndex {
    /// Spherical-harmonic degree ℓ on the round boundary.
    Degree(u32),
    /// Frequency t = |ξ| on the flat boundary.
    Frequency(Q),
}

impl ModeIndex {
    /// λ with −Δ̄Y = λY.
    pub fn bar_eigenvalue(&self, n: i64) -> Q {
        match self {
            ModeIndex::Degree(l) => qi(*l as i64 * (*l as i64 + n - 1)),
            ModeIndex::Frequency(t) => t * t,
        }
    }
}

/// Dirichlet data (B0 u, B1 u, B2 u) for a single boundary mode.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryTriple {
    pub f: Q,
    pub phi: Q,
    pub psi: Q,
}

impl BoundaryTriple {
    pub fn new(f: Q, phi: Q, psi: Q) -> Self {
        BoundaryTriple { f, phi, psi }
    }

    pub fn zero() -> Self {
        Self::new(q0(), q0(), q0())
    }

    /// Unit data in one slot (0 = f, 1 = φ, 2 = ψ).
    pub fn unit(slot: usize) -> Self {
        let mut a = [q0(), q0(), q0()];
        a[slot] = qi(1);
        Self::from_array(a)
    }

    pub fn from_array(a: [Q; 3]) -> Self {
        let [f, phi, psi] = a;
        Self::new(f, phi, psi)
    }

    pub fn as_array(&self) -> [Q; 3] {
        [self.f.clone(), self.phi.clone(), self.psi.clone()]
    }

    /// Conformal weights (n−5)/2, (n−3)/2, (n−1)/2 of the three slots.
    pub fn weights(n: i64) -> [Q; 3] {
        [q(n - 5, 2), q(n - 3, 2), q(n - 1, 2)]
    }
}

/// Regular solution of (−Δ + c)v = 0 on the hemisphere for one degree ℓ,
/// written v = cos^ℓρ · g(sin ρ) with g(0) = 1.
#[derive(Clone, Debug)]
pub struct FactorSolution {
    pub shift: Q,
    pub ell: u32,
    /// g'(0), which equals v'(0).
    pub robin: f64,
    pub z: Vec<f64>,
    pub g: Vec<f64>,
    pub dg: Vec<f64>,
    pub residual: f64,
    pub condition: f64,
}

impl FactorSolution {
    /// (g, g') at z ∈ [0, 1] by barycentric interpolation.
    pub fn eval_g(&self, z: f64) -> (f64, f64) {
        (barycentric(&self.z, &self.g, z), barycentric(&self.z, &self.dg, z))
    }

    /// (v, ∂ρv) at distance ρ from the equator.
    pub fn eval(&self, rho: f64) -> (f64, f64) {
        let (s, c) = rho.sin_cos();
        let (g, dg) = self.eval_g(s);
        let l = self.ell as i32;
        let cl = c.powi(l);
        let dcl = if l == 0 { 0.0 } else { -(l as f64) * c.powi(l - 1) * s };
        (cl * g, dcl * g + cl * c * dg)
    }
}

#[derive(Clone, Debug)]
pub enum SolvedProfile {
    /// e^{−ty}·p(t, y); p has variables (t, y).
    Exp(MultiPoly),
    /// Σ c_k r^k on the unit ball, r the distance to the centre.
    Radial(RadialPoly),
    /// Σ α_k v_k over the chained factor solutions of the hemisphere.
    Collocated { coeffs: [f64; 3], factors: Vec<FactorSolution> },
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub geom: ModelGeometry,
    pub index: ModeIndex,
    pub data: BoundaryTriple,
    pub profile: SolvedProfile,
    /// B_0 … B_5 of the solution, per unit boundary eigenfunction.
    pub boundary: [Num; 6],
    pub residual_norms: [f64; 3],
}

impl SolveResult {
    pub fn achieved(&self) -> [Num; 3] {
        [self.boundary[0].clone(), self.boundary[1].clone(), self.boundary[2].clone()]
    }

    pub fn max_residual(&self) -> f64 {
        self.residual_norms.iter().cloned().fold(0.0, f64::max)
    }
}

fn residuals(data: &BoundaryTriple, got: &[Num; 6]) -> [f64; 3] {
    let d = data.as_array();
    let mut r = [0.0; 3];
    for k in 0..3 {
        r[k] = match &got[k] {
            Num::Exact(x) => to_f64(&(x - &d[k])).abs(),
            Num::Float(x) => (x - to_f64(&d[k])).abs(),
        };
    }
    r
}

// ---------------------------------------------------------------- half-space

/// Profile p(t, y) in ℚ[t, y] of the decaying triharmonic mode with the given
/// data, for a formal frequency t.
///
/// The map from (a, b, c) in e^{−ty}(a + by + cy²) to (B0, B1, B2) is built
/// from the boundary operators themselves; it is lower triangular with
/// constant pivots, so back-substitution stays polynomial in t.
pub fn halfspace_profile(n: i64, data: &BoundaryTriple) -> Result<MultiPoly> {
    let e = ExpMode::new(n, 2)?;
    let y = MultiPoly::var(2, Y_VAR);
    let basis = [MultiPoly::one(2), y.clone(), y.pow(2)];
    let cols: Vec<Vec<MultiPoly>> = basis.iter().map(|b| apply_all(&e, b)).collect();
    let d = data.as_array();
    let mut coef: Vec<MultiPoly> = Vec::new();
    for row in 0..3 {
        for (k, col) in cols.iter().enumerate().skip(row + 1) {
            if !col[row].is_zero() {
                return Err(Gjms6Error::Singular(format!("half-space map not triangular at ({row}, {k})")));
            }
        }
        let pivot = &cols[row][row];
        if pivot.degree() != 0 || pivot.is_zero() {
            return Err(Gjms6Error::Singular("half-space pivot is not a nonzero constant".into()));
        }
        let mut rhs = MultiPoly::constant(2, d[row].clone());
        for (i, c) in coef.iter().enumerate() {
            rhs = &rhs - &(&cols[i][row] * c);
        }
        coef.push(rhs.scale(&(qi(1) / pivot.constant_term())));
    }
    let mut p = MultiPoly::zero(2);
    for (c, b) in coef.iter().zip(&basis) {
        p = &p + &(c * b);
    }
    Ok(p)
}

/// (a, b, c) of e^{−ty}(a + by + cy²) as polynomials in t.
pub fn halfspace_coefficients(p: &MultiPoly) -> [MultiPoly; 3] {
    let mut out = [MultiPoly::zero(2), MultiPoly::zero(2), MultiPoly::zero(2)];
    for (m, c) in p.terms() {
        let k = m.exp(Y_VAR) as usize;
        let t = MultiPoly::monomial(2, &[m.exp(T_VAR), 0], c.clone());
        out[k] = &out[k] + &t;
    }
    out
}

pub fn halfspace_solve(n: i64, t: &Q, data: &BoundaryTriple) -> Result<SolveResult> {
    if !t.is_positive_q() {
        return Err(Gjms6Error::DegenerateMode(format!("frequency t = {t} gives no decaying mode")));
    }
    let geom = ModelGeometry::new(ModelKind::UpperHalfSpace, n)?;
    let sym = halfspace_profile(n, data)?;
    let e = ExpMode::new(n, 2)?;
    let b = apply_all(&e, &sym);
    let boundary: [Num; 6] = std::array::from_fn(|j| Num::Exact(b[j].eval_var(T_VAR, t).constant_term()));
    let p = sym.eval_var(T_VAR, t);
    let residual_norms = residuals(data, &boundary);
    Ok(SolveResult {
        geom,
        index: ModeIndex::Frequency(t.clone()),
        data: data.clone(),
        profile: SolvedProfile::Exp(p),
        boundary,
        residual_norms,
    })
}

trait Positive {
    fn is_positive_q(&self) -> bool;
}

impl Positive for Q {
    fn is_positive_q(&self) -> bool {
        *self > q0()
    }
}

// ---------------------------------------------------------------------- ball

/// B_0 … B_5 of a mode profile given by its Taylor series at the boundary.
pub fn mode_boundary_values(geom: &ModelGeometry, lambda: &Q, profile: &Series<Q>) -> Result<[Q; 6]> {
    let w = Warped::for_model(geom, lambda.clone())?;
    let mut s = profile.clone();
    s.c.resize(Warped::LEN.max(s.len()), q0());
    let b = apply_all(&w, &s);
    Ok(std::array::from_fn(|j| b[j].m.clone()))
}

/// The polynomial Σ c_k r^k as a series in ρ = 1 − r.
pub fn radial_to_series(p: &RadialPoly, len: usize) -> Series<Q> {
    let mut out = Series::zeros(len);
    let mut base = Series::zeros(len);
    base.c[0] = qi(1);
    if len > 1 {
        base.c[1] = qi(-1);
    }
    for (e, c) in p.terms() {
        assert!(e >= 0, "negative power of r in a regular profile");
        out = out.add(&base.powi(e as u32).scale(c));
    }
    out
}

fn solve3_exact(m: &[[Q; 3]; 3], rhs: &[Q; 3]) -> Result<[Q; 3]> {
    let mut a: Vec<Vec<Q>> = (0..3).map(|i| {
        let mut r = m[i].to_vec();
        r.push(rhs[i].clone());
        r
    }).collect();
    for col in 0..3 {
        let piv = (col..3).find(|&r| !a[r][col].is_zero()).ok_or_else(|| {
            Gjms6Error::Singular("3×3 Dirichlet system".into())
        })?;
        a.swap(col, piv);
        for r in 0..3 {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for k in col..4 {
                    let v = &a[col][k] * &f;
                    a[r][k] -= v;
                }
            }
        }
    }
    Ok(std::array::from_fn(|i| &a[i][3] / &a[i][i]))
}

fn det3_exact(m: &[[Q; 3]; 3]) -> Q {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Boundary values of r^{ℓ+2i}, i = 0, 1, 2, on the ball: column i holds B_0 … B_5.
fn ball_basis_values(n: i64, ell: u32) -> Result<Vec<[Q; 6]>> {
    let geom = ModelGeometry::new(ModelKind::EuclideanBall, n)?;
    let lambda = ModeIndex::Degree(ell).bar_eigenvalue(n);
    (0..3)
        .map(|i| {
            let p = RadialPoly::monomial(ell as i32 + 2 * i, qi(1));
            mode_boundary_values(&geom, &lambda, &radial_to_series(&p, Warped::LEN))
        })
        .collect()
}

pub fn ball_mode_solve(n: i64, ell: u32, data: &BoundaryTriple) -> Result<SolveResult> {
    let geom = ModelGeometry::new(ModelKind::EuclideanBall, n)?;
    let cols = ball_basis_values(n, ell)?;
    let m: [[Q; 3]; 3] = std::array::from_fn(|j| std::array::from_fn(|i| cols[i][j].clone()));
    let coef = solve3_exact(&m, &data.as_array())?;
    let mut profile = RadialPoly::zero();
    let mut boundary: [Q; 6] = std::array::from_fn(|_| q0());
    for i in 0..3 {
        profile = profile.add(&RadialPoly::monomial(ell as i32 + 2 * i as i32, coef[i].clone()));
        for j in 0..6 {
            boundary[j] += &cols[i][j] * &coef[i];
        }
    }
    let boundary = boundary.map(Num::Exact);
    let residual_norms = residuals(data, &boundary);
    Ok(SolveResult {
        geom,
        index: ModeIndex::Degree(ell),
        data: data.clone(),
        profile: SolvedProfile::Radial(profile),
        boundary,
        residual_norms,
    })
}

// ---------------------------------------------------------------- hemisphere

/// Chebyshev points x_j = cos(πj/N) and the differentiation matrix.
pub fn chebyshev(n: usize) -> (Vec<f64>, DMatrix<f64>) {
    let x: Vec<f64> = (0..=n).map(|j| (std::f64::consts::PI * j as f64 / n as f64).cos()).collect();
    let c = |j: usize| if j == 0 || j == n { 2.0 } else { 1.0 };
    let mut d = DMatrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        for j in 0..=n {
            if i != j {
                let s = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                d[(i, j)] = c(i) / c(j) * s / (x[i] - x[j]);
            }
        }
    }
    for i in 0..=n {
        let s: f64 = (0..=n).filter(|&j| j != i).map(|j| d[(i, j)]).sum();
        d[(i, i)] = -s;
    }
    (x, d)
}

/// Chebyshev coefficients a_k of the interpolant through values on cos(πj/N).
pub fn chebyshev_coefficients(v: &[f64]) -> Vec<f64> {
    let n = v.len() - 1;
    (0..=n)
        .map(|k| {
            let mut s = 0.0;
            for (j, vj) in v.iter().enumerate() {
                let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                s += w * vj * (std::f64::consts::PI * (j * k) as f64 / n as f64).cos();
            }
            let c = if k == 0 || k == n { 1.0 } else { 2.0 };
            c * s / n as f64
        })
        .collect()
}

/// Barycentric interpolation through Chebyshev–Lobatto nodes.
pub fn barycentric(nodes: &[f64], vals: &[f64], x: f64) -> f64 {
    let n = nodes.len() - 1;
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 0..=n {
        let d = x - nodes[j];
        if d == 0.0 {
            return vals[j];
        }
        let mut w = if j % 2 == 0 { 1.0 } else { -1.0 };
        if j == 0 || j == n {
            w *= 0.5;
        }
        num += w / d * vals[j];
        den += w / d;
    }
    num / den
}

/// Collocation solve of (1−z²)g'' − (2ℓ+n+1)z g' − (ℓ(ℓ+n) + c)g = 0 on
/// z ∈ [0, 1] with g(0) = 1. Regularity at the pole z = 1 is automatic for
/// polynomial collocation.
pub fn hemisphere_factor(n: i64, ell: u32, shift: &Q, nodes: usize) -> Result<FactorSolution> {
    hemisphere_factor_forced(n, ell, shift, nodes, None)
}

/// As [`hemisphere_factor`] with right-hand side `forcing` (values on the
/// same grid) and g(0) = 0 when a forcing is given.
pub fn hemisphere_factor_forced(
    n: i64,
    ell: u32,
    shift: &Q,
    nodes: usize,
    forcing: Option<&[f64]>,
) -> Result<FactorSolution> {
    let (x, dx) = chebyshev(nodes);
    let z: Vec<f64> = x.iter().map(|v| 0.5 * (v + 1.0)).collect();
    let d = dx * 2.0;
    let d2 = &d * &d;
    let l = ell as f64;
    let nn = n as f64 + 1.0;
    let mu = l * (l + nn - 1.0) + to_f64(shift);
    let m = nodes + 1;
    let mut op: DMatrix<f64> = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            op[(i, j)] = (1.0 - z[i] * z[i]) * d2[(i, j)] - (2.0 * l + nn) * z[i] * d[(i, j)];
        }
        op[(i, i)] -= mu;
    }
    let mut rhs = match forcing {
        Some(f) => DVector::from_column_slice(f),
        None => DVector::zeros(m),
    };
    // z = 0 is the last node.
    for j in 0..m {
        op[(nodes, j)] = 0.0;
    }
    op[(nodes, nodes)] = 1.0;
    rhs[nodes] = if forcing.is_some() { 0.0 } else { 1.0 };
    let sv = op.clone().svd(false, false).singular_values;
    let condition = sv.max() / sv.min();
    if !condition.is_finite() || condition > CONDITION_GUARD {
        return Err(Gjms6Error::Collocation(format!("condition number {condition:.3e} exceeds guard")));
    }
    let g = op
        .clone()
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Gjms6Error::Collocation("singular collocation matrix".into()))?;
    let dg = &d * &g;
    // Normwise backward error of the collocation solve plus the Chebyshev
    // tail of g; pointwise ODE residuals of a differentiated interpolant sit
    // at the N⁴·ε roundoff floor and say nothing about convergence.
    let backward = (&op * &g - &rhs).amax() / (op.amax() * g.amax() * m as f64 + rhs.amax());
    let cheb = chebyshev_coefficients(g.as_slice());
    let head = cheb.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let tail = cheb[m - 8..].iter().fold(0.0f64, |a, v| a.max(v.abs())) / head;
    let residual = backward.max(tail);
    if !(residual <= COLLOCATION_TOL) {
        return Err(Gjms6Error::Collocation(format!("ODE residual {residual:.3e} above tolerance")));
    }
    let gv: Vec<f64> = g.iter().cloned().collect();
    let dgv: Vec<f64> = dg.iter().cloned().collect();
    Ok(FactorSolution { shift: shift.clone(), ell, robin: dgv[nodes], z, g: gv, dg: dgv, residual, condition })
}

/// Taylor solution of ΔR = cR + f with R(0) = r0, R'(0) = r1 on a warped
/// model; f = 0 when absent.
pub fn factor_series_forced(w: &Warped, shift: &Q, r0: Q, r1: Q, f: Option<&Series<Q>>) -> Series<Q> {
    let len = Warped::LEN;
    let n = qi(w.n);
    let mut c = vec![q0(); len];
    c[0] = r0;
    c[1] = r1;
    for k in 0..len - 2 {
        // R'' = cR + f − n(w'/w)R' + λR/w², coefficient of ρ^k.
        let r = Series::from_vec(c.clone());
        let mut rhs = r.scale(shift).coeff(k) - w.w_ratio().mul(&r.deriv()).scale(&n).coeff(k)
            + w.inv_w2().mul(&r).scale(&w.lambda).coeff(k);
        if let Some(f) = f {
            rhs += f.coeff(k);
        }
        c[k + 2] = rhs / qi(((k + 2) * (k + 1)) as i64);
    }
    Series::from_vec(c)
}

/// Local solutions of ΔR = cR with (R(0), R'(0)) = (1, 0) and (0, 1).
pub fn factor_series(w: &Warped, shift: &Q) -> [Series<Q>; 2] {
    [factor_series_forced(w, shift, qi(1), q0(), None), factor_series_forced(w, shift, q0(), qi(1), None)]
}

/// A kernel function as Σ coef·series, with exact series and floating
/// coefficients taken from the collocation solves.
#[derive(Clone, Debug)]
struct KernelFn {
    terms: Vec<(f64, Series<Q>)>,
}

fn kernel_boundary(geom: &ModelGeometry, lambda: &Q, k: &KernelFn) -> Result<[f64; 6]> {
    let mut out = [0.0; 6];
    for (coef, s) in &k.terms {
        let b = mode_boundary_values(geom, lambda, s)?;
        for j in 0..6 {
            out[j] += coef * to_f64(&b[j]);
        }
    }
    Ok(out)
}

/// Kernel of ∏(−Δ + c_k) on one hemisphere mode, built as a chain
/// (Δ − c₃)v₃ = 0, (Δ − c₂)v₂ = v₃, (Δ − c₁)v₁ = v₂ with v₃(0) = 1 and
/// v₂(0) = v₁(0) = 0. The chain keeps the Dirichlet matrix well conditioned
/// where three separate factor kernels become nearly parallel as ℓ grows.
fn hemisphere_kernels(n: i64, ell: u32, nodes: usize) -> Result<(Vec<FactorSolution>, Vec<KernelFn>)> {
    let geom = ModelGeometry::new(ModelKind::RoundHemisphere, n)?;
    let lambda = ModeIndex::Degree(ell).bar_eigenvalue(n);
    let w = Warped::for_model(&geom, lambda)?;
    let shifts = L6Realization::for_model(&geom).factor_shifts();
    let mut facs: Vec<FactorSolution> = Vec::new();
    let mut ks: Vec<KernelFn> = Vec::new();
    for c in shifts.iter().rev() {
        let prev = facs.last().map(|f| f.g.clone());
        let fs = hemisphere_factor_forced(n, ell, c, nodes, prev.as_deref())?;
        let kf = match ks.last() {
            None => {
                let [p, s] = factor_series(&w, c);
                KernelFn { terms: vec![(1.0, p), (fs.robin, s)] }
            }
            Some(prev) => {
                let mut terms = vec![(fs.robin, factor_series_forced(&w, c, q0(), qi(1), None))];
                for (coef, f) in &prev.terms {
                    terms.push((*coef, factor_series_forced(&w, c, q0(), q0(), Some(f))));
                }
                KernelFn { terms }
            }
        };
        ks.push(kf);
        facs.push(fs);
    }
    Ok((facs, ks))
}

/// Pull a hemisphere profile back to the geodesic compactification:
/// u(ρ) = (1 + ρ²/4)^{−(n−5)/2} · v(2 atan(ρ/2)).
pub fn hemisphere_to_geodesic(n: i64, v: &Series<Q>) -> Series<Q> {
    let len = v.len();
    let mut at = Series::zeros(len);
    for m in 0..len {
        let k = 2 * m + 1;
        if k < len {
            // 2·atan(ρ/2) = Σ (−1)^m ρ^{2m+1} / ((2m+1)·4^m)
            let sign = if m % 2 == 0 { 1 } else { -1 };
            at.c[k] = q(sign, 1) / (qi(k as i64) * crate::rational::qpow(&qi(4), m as u32));
        }
    }
    let mut conf = Series::zeros(len);
    conf.c[0] = qi(1);
    if len > 2 {
        conf.c[2] = q(1, 4);
    }
    conf.pow_q(&q(-(n - 5), 2)).mul(&v.compose(&at))
}

fn collocated_solve(geom: ModelGeometry, ell: u32, data: &BoundaryTriple, nodes: usize) -> Result<SolveResult> {
    let n = geom.n;
    let (facs, mut ks) = hemisphere_kernels(n, ell, nodes)?;
    if geom.kind == ModelKind::HyperbolicGeodesic {
        for k in ks.iter_mut() {
            for (_, s) in k.terms.iter_mut() {
                *s = hemisphere_to_geodesic(n, s);
            }
        }
    }
    let lambda = ModeIndex::Degree(ell).bar_eigenvalue(n);
    let cols: Vec<[f64; 6]> = ks.iter().map(|k| kernel_boundary(&geom, &lambda, k)).collect::<Result<_>>()?;
    let m = Matrix3::from_fn(|j, i| cols[i][j]);
    let sv = m.svd(false, false).singular_values;
    if sv.min() == 0.0 || sv.max() / sv.min() > CONDITION_GUARD {
        return Err(Gjms6Error::Collocation("Dirichlet system is ill-conditioned".into()));
    }
    let d = data.as_array().map(|x| to_f64(&x));
    let alpha = m.lu().solve(&Vector3::new(d[0], d[1], d[2])).ok_or_else(|| Gjms6Error::Singular("3×3 Dirichlet system".into()))?;
    let boundary: [Num; 6] = std::array::from_fn(|j| Num::Float((0..3).map(|i| alpha[i] * cols[i][j]).sum()));
    let residual_norms = residuals(data, &boundary);
    Ok(SolveResult {
        geom,
        index: ModeIndex::Degree(ell),
        data: data.clone(),
        profile: SolvedProfile::Collocated { coeffs: [alpha[0], alpha[1], alpha[2]], factors: facs },
        boundary,
        residual_norms,
    })
}

pub fn hemisphere_mode_solve(n: i64, ell: u32, data: &BoundaryTriple) -> Result<SolveResult> {
    hemisphere_mode_solve_with(n, ell, data, COLLOCATION_NODES)
}

pub fn hemisphere_mode_solve_with(n: i64, ell: u32, data: &BoundaryTriple, nodes: usize) -> Result<SolveResult> {
    collocated_solve(ModelGeometry::new(ModelKind::RoundHemisphere, n)?, ell, data, nodes)
}

/// Solve on the geodesic compactification of hyperbolic space, using the
/// hemisphere kernel pulled back by the conformal map between the two models.
pub fn geodesic_mode_solve(n: i64, ell: u32, data: &BoundaryTriple) -> Result<SolveResult> {
    collocated_solve(ModelGeometry::new(ModelKind::HyperbolicGeodesic, n)?, ell, data, COLLOCATION_NODES)
}

/// Dispatch on the model geometry.
pub fn solve_mode(geom: &ModelGeometry, index: &ModeIndex, data: &BoundaryTriple) -> Result<SolveResult> {
    match (geom.kind, index) {
        (ModelKind::UpperHalfSpace, ModeIndex::Frequency(t)) => halfspace_solve(geom.n, t, data),
        (ModelKind::EuclideanBall, ModeIndex::Degree(l)) => ball_mode_solve(geom.n, *l, data),
        (ModelKind::RoundHemisphere, ModeIndex::Degree(l)) => hemisphere_mode_solve(geom.n, *l, data),
        (ModelKind::HyperbolicGeodesic, ModeIndex::Degree(l)) => geodesic_mode_solve(geom.n, *l, data),
        (kind, idx) => Err(Gjms6Error::Unsupported(format!("mode {idx:?} on {}", kind.name()))),
    }
}

/// Whether the Dirichlet problem for this mode has a unique solution.
pub fn kernel_check(geom: &ModelGeometry, index: &ModeIndex) -> bool {
    match (geom.kind, index) {
        (ModelKind::UpperHalfSpace, ModeIndex::Frequency(t)) => {
            t.is_positive_q() && halfspace_profile(geom.n, &BoundaryTriple::unit(0)).is_ok()
        }
        (ModelKind::EuclideanBall, ModeIndex::Degree(l)) => match ball_basis_values(geom.n, *l) {
            Ok(cols) => {
                let m: [[Q; 3]; 3] = std::array::from_fn(|j| std::array::from_fn(|i| cols[i][j].clone()));
                !det3_exact(&m).is_zero()
            }
            Err(_) => false,
        },
        (ModelKind::RoundHemisphere | ModelKind::HyperbolicGeodesic, ModeIndex::Degree(_)) => {
            solve_mode(geom, index, &BoundaryTriple::unit(0)).is_ok()
        }
        _ => false,
    }
}

/// σ(−Δ_{g₊}) = [n²/4, ∞) on hyperbolic space, which sits above every
/// s(n − s) = n²/4 − γ² used here and above (n² − 1)/4.
pub const HYPERBOLIC_SPECTRUM_HYPOTHESIS: bool = true;
