//! Sharp Sobolev trace inequalities on the half-space, ball and hemisphere,
//! and their critical (n = 5) logarithmic versions.
//!
//! Boundary data are zonal functions on the round Sⁿ, expanded in normalized
//! Gegenbauer polynomials. The energy side is the explicit integral display
//! of each model, evaluated per boundary mode on the L₆-harmonic extension;
//! the norm side uses the same zonal quadrature (or radial quadrature on ℝⁿ
//! for the half-space).

use crate::boundary_ops::{BoundaryCalculus, ExpMode};
use crate::error::{Gjms6Error, Result};
use crate::exact_poly::{ball_integral, half_line_integral, sphere_integral, sphere_volume, MultiPoly, T_VAR, Y_VAR};
use crate::fractional::{critical_multiplier, multiplier, Boundary};
use crate::mode_solver::{
    ball_mode_solve, halfspace_solve, hemisphere_mode_solve_with, BoundaryTriple, ModeIndex, SolvedProfile,
    COLLOCATION_NODES,
};
use crate::model_geometry::ModelKind;
use crate::rational::{gamma_ratio, q, q0, qi, to_f64, Q};
use gauss_quad::GaussLegendre;
use serde::Serialize;
use std::rc::Rc;

pub const QUAD_NODES: usize = 256;
/// Relative Parseval defect above which an expansion counts as unresolved.
pub const TAIL_TOL: f64 = 1e-10;
/// Coefficients of the three slots in the trace inequality.
pub const SLOT_COEFFS: [f64; 3] = [8.0 / 3.0, 8.0, 3.0];

/// Fractional order γ of slot k: 5/2, 3/2, 1/2.
pub fn slot_gamma(k: usize) -> Q {
    q(5 - 2 * k as i64, 2)
}

/// Conformal weight (n − 5 + 2k)/2 of slot k.
pub fn slot_weight(n: i64, k: usize) -> f64 {
    (n as f64 - 5.0 + 2.0 * k as f64) / 2.0
}

// ------------------------------------------------------------ sharp constants

/// C_{n,γ} = Γ((n+2γ)/2)/Γ((n−2γ)/2)·Vol(Sⁿ)^{2γ/n}, kept as the exact
/// Γ-ratio times a symbolic power of Vol(Sⁿ).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SharpConstant {
    pub n: i64,
    pub gamma: Q,
    pub gamma_ratio: Q,
    pub vol_power: Q,
}

impl SharpConstant {
    pub fn value(&self) -> f64 {
        to_f64(&self.gamma_ratio) * sphere_volume(self.n as usize).powf(to_f64(&self.vol_power))
    }

    /// Both sides of the sharp inequality for w ≡ 1, as (coefficient, power
    /// of Vol(Sⁿ)): ∮1·P_{2γ}1 and C_{n,γ}‖1‖²_p.
    pub fn constant_case(&self) -> ((Q, Q), (Q, Q)) {
        let lhs = (self.gamma_ratio.clone(), qi(1));
        let norm_power = (qi(self.n) - &self.gamma * qi(2)) / qi(self.n);
        (lhs, (self.gamma_ratio.clone(), &self.vol_power + norm_power))
    }
}

pub fn sharp_constant(n: i64, gamma: &Q) -> Result<SharpConstant> {
    let two_g = gamma * qi(2);
    if two_g == qi(n) {
        return Err(Gjms6Error::Critical);
    }
    if *gamma <= q0() || two_g > qi(n) {
        return Err(Gjms6Error::GammaOutOfRange { n, gamma: crate::rational::fmt_q(gamma) });
    }
    let b = (qi(n) + &two_g) / qi(2);
    let a = (qi(n) - &two_g) / qi(2);
    let ratio = gamma_ratio(&b, &a)
        .ok_or_else(|| Gjms6Error::GammaOutOfRange { n, gamma: crate::rational::fmt_q(gamma) })?;
    Ok(SharpConstant { n, gamma: gamma.clone(), gamma_ratio: ratio, vol_power: two_g / qi(n) })
}

// ---------------------------------------------------------- zonal machinery

/// Normalized Gegenbauer polynomials P_ℓ(s) on Sⁿ, P_ℓ(1) = 1, ℓ ≤ lmax.
pub fn gegenbauer(n: i64, lmax: u32, s: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(lmax as usize + 1);
    p.push(1.0);
    if lmax >= 1 {
        p.push(s);
    }
    let nf = n as f64;
    for l in 1..lmax as usize {
        let lf = l as f64;
        let next = ((2.0 * lf + nf - 1.0) * s * p[l] - lf * p[l - 1]) / (lf + nf - 1.0);
        p.push(next);
    }
    p
}

/// Dimension of the degree-ℓ spherical harmonics on Sⁿ.
pub fn harmonic_dimension(n: i64, ell: u32) -> f64 {
    let (n, l) = (n as f64, ell as f64);
    let mut binom = 1.0;
    for k in 1..=ell {
        binom *= (k as f64 + n - 2.0) / k as f64;
    }
    (2.0 * l + n - 1.0) / (n - 1.0) * binom
}

/// Gauss–Legendre rule in the polar angle θ ∈ [0, π] with the Sⁿ weight
/// Vol(S^{n−1})·sin^{n−1}θ, and the Gegenbauer table at its nodes.
#[derive(Clone, Debug)]
pub struct ZonalBasis {
    pub n: i64,
    pub lmax: u32,
    pub s: Vec<f64>,
    pub weights: Vec<f64>,
    pub table: Vec<Vec<f64>>,
    /// ∮ P_ℓ(x·e)² over Sⁿ.
    pub norms: Vec<f64>,
}

fn legendre_rule(nodes: usize) -> Result<GaussLegendre> {
    GaussLegendre::new(nodes).map_err(|e| Gjms6Error::Config(format!("quadrature: {e}")))
}

fn rule_on(rule: &GaussLegendre, a: f64, b: f64) -> Vec<(f64, f64)> {
    rule.as_node_weight_pairs()
        .iter()
        .map(|(x, w)| (0.5 * ((b - a) * x + b + a), 0.5 * (b - a) * w))
        .collect()
}

impl ZonalBasis {
    pub fn new(n: i64, lmax: u32, nodes: usize) -> Result<Self> {
        let rule = legendre_rule(nodes)?;
        let area = sphere_volume(n as usize - 1);
        let mut s = Vec::new();
        let mut weights = Vec::new();
        let mut table = Vec::new();
        for (theta, w) in rule_on(&rule, 0.0, std::f64::consts::PI) {
            let c = theta.cos();
            s.push(c);
            weights.push(w * area * theta.sin().powi(n as i32 - 1));
            table.push(gegenbauer(n, lmax, c));
        }
        let norms = (0..=lmax as usize)
            .map(|l| weights.iter().zip(&table).map(|(w, p)| w * p[l] * p[l]).sum())
            .collect();
        Ok(ZonalBasis { n, lmax, s, weights, table, norms })
    }

    /// ∮ g(x·e) over Sⁿ.
    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.s.iter().zip(&self.weights).map(|(s, w)| w * g(*s)).sum()
    }

    pub fn volume(&self) -> f64 {
        sphere_volume(self.n as usize)
    }

    pub fn expand(&self, field: &SlotField) -> Result<ZonalExpansion> {
        let vals: Vec<f64> = self.s.iter().map(|s| (field.profile)(*s)).collect();
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Gjms6Error::UnderResolved("boundary field is not finite on the sphere".into()));
        }
        let coeffs: Vec<f64> = (0..=self.lmax as usize)
            .map(|l| {
                let m: f64 = vals.iter().zip(&self.weights).zip(&self.table).map(|((v, w), p)| v * w * p[l]).sum();
                m / self.norms[l]
            })
            .collect();
        let total: f64 = vals.iter().zip(&self.weights).map(|(v, w)| v * v * w).sum();
        let captured: f64 = coeffs.iter().zip(&self.norms).map(|(c, h)| c * c * h).sum();
        let tail = if total > 0.0 { ((total - captured) / total).abs() } else { 0.0 };
        if tail > TAIL_TOL {
            return Err(Gjms6Error::UnderResolved(format!("Parseval defect {tail:.3e} at lmax = {}", self.lmax)));
        }
        Ok(ZonalExpansion { axis: field.axis.clone(), coeffs, tail })
    }

    /// ⟨a_ℓ, b_ℓ⟩_{L²(Sⁿ)} for the degree-ℓ parts of two zonal expansions.
    pub fn pairing(&self, a: &ZonalExpansion, b: &ZonalExpansion, ell: u32) -> f64 {
        let l = ell as usize;
        let cos: f64 = a.axis.iter().zip(&b.axis).map(|(x, y)| x * y).sum();
        let p = gegenbauer(self.n, ell, cos.clamp(-1.0, 1.0))[l];
        a.coeffs[l] * b.coeffs[l] * self.norms[l] * p
    }

    /// (∮|w|^p)^{2/p}.
    pub fn lp_norm_sq(&self, field: &SlotField, p: f64) -> f64 {
        self.integrate(|s| (field.profile)(s).abs().powf(p)).powf(2.0 / p)
    }
}

#[derive(Clone, Debug)]
pub struct ZonalExpansion {
    pub axis: Vec<f64>,
    pub coeffs: Vec<f64>,
    pub tail: f64,
}

pub type Profile = Rc<dyn Fn(f64) -> f64>;

/// A boundary slot: a zonal function s ↦ w(s), s = x·axis, on the round Sⁿ,
/// and for half-space data also the flat profile r ↦ g(|x − x₀|) on ℝⁿ.
#[derive(Clone)]
pub struct SlotField {
    pub axis: Vec<f64>,
    pub profile: Profile,
    pub flat: Option<Profile>,
}

impl SlotField {
    pub fn zonal(axis: Vec<f64>, profile: Profile) -> Self {
        SlotField { axis, profile, flat: None }
    }

    pub fn zero(n: i64) -> Self {
        SlotField::zonal(unit_axis(n, 0), Rc::new(|_| 0.0))
    }

    /// A radial function g(|x|) on ℝⁿ of conformal weight w, carried to Sⁿ by
    /// inverse stereographic projection: (Φ^{−w}g)(x) with Φ = 2/(1+|x|²).
    pub fn flat_radial(n: i64, weight: f64, g: Profile) -> Self {
        let gs = g.clone();
        // The last coordinate of the sphere point is s = (r² − 1)/(r² + 1).
        let profile: Profile = Rc::new(move |s: f64| {
            let r = ((1.0 + s) / (1.0 - s)).sqrt();
            ((1.0 + r * r) / 2.0).powf(weight) * gs(r)
        });
        SlotField { axis: unit_axis(n, n as usize), profile, flat: Some(g) }
    }
}

pub fn unit_axis(n: i64, i: usize) -> Vec<f64> {
    let mut a = vec![0.0; n as usize + 1];
    a[i] = 1.0;
    a
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

// ------------------------------------------------------------ extremal specs

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExtremalKind {
    PowerBubble,
    LogBubble,
}

/// One extremal slot. On the ball and hemisphere, `center` is ξ ∈ ℝ^{n+1}
/// with |ξ| < 1 and `scale` is unused; on the half-space it is x₀ ∈ ℝⁿ with
/// scale ε > 0.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremalSpec {
    pub kind: ExtremalKind,
    pub center: Vec<f64>,
    pub scale: f64,
    pub amplitude: f64,
}

impl ExtremalSpec {
    pub fn power(center: Vec<f64>, amplitude: f64) -> Self {
        ExtremalSpec { kind: ExtremalKind::PowerBubble, center, scale: 1.0, amplitude }
    }

    pub fn log(center: Vec<f64>, amplitude: f64) -> Self {
        ExtremalSpec { kind: ExtremalKind::LogBubble, center, scale: 1.0, amplitude }
    }

    pub fn flat_power(center: Vec<f64>, eps: f64, amplitude: f64) -> Self {
        ExtremalSpec { kind: ExtremalKind::PowerBubble, center, scale: eps, amplitude }
    }

    pub fn flat_log(center: Vec<f64>, eps: f64, amplitude: f64) -> Self {
        ExtremalSpec { kind: ExtremalKind::LogBubble, center, scale: eps, amplitude }
    }

    pub fn centered(n: i64, amplitude: f64) -> Self {
        Self::power(vec![0.0; n as usize + 1], amplitude)
    }

    /// Slot k as a boundary field on the round sphere (with the flat profile
    /// for half-space specs).
    pub fn field(&self, kind: ModelKind, n: i64, slot: usize) -> Result<SlotField> {
        if self.kind == ExtremalKind::LogBubble && (slot != 0 || n != 5) {
            return Err(Gjms6Error::Unsupported("log bubbles only occupy slot f at n = 5".into()));
        }
        let w = slot_weight(n, slot);
        let a = self.amplitude;
        match kind {
            ModelKind::EuclideanBall | ModelKind::RoundHemisphere => {
                let xi: Vec<f64> = match self.center.len() {
                    d if d == n as usize + 1 => self.center.clone(),
                    d if d == n as usize + 2 && self.center[d - 1] == 0.0 => self.center[..d - 1].to_vec(),
                    got => return Err(Gjms6Error::DimensionMismatch { expected: n as usize + 1, got }),
                };
                let r = norm(&xi);
                if r >= 1.0 {
                    return Err(Gjms6Error::Unsupported(format!("bubble centre |ξ| = {r} must lie inside the unit ball")));
                }
                let axis = if r > 0.0 { xi.iter().map(|v| v / r).collect() } else { unit_axis(n, 0) };
                let profile: Profile = match self.kind {
                    ExtremalKind::PowerBubble => Rc::new(move |s: f64| a * (1.0 + r * s).powf(-w)),
                    ExtremalKind::LogBubble => Rc::new(move |s: f64| a - (1.0 + r * s).ln()),
                };
                Ok(SlotField::zonal(axis, profile))
            }
            ModelKind::UpperHalfSpace => {
                if self.center.len() != n as usize {
                    return Err(Gjms6Error::DimensionMismatch { expected: n as usize, got: self.center.len() });
                }
                let eps = self.scale;
                if !(eps > 0.0) {
                    return Err(Gjms6Error::Unsupported(format!("bubble scale ε = {eps} must be positive")));
                }
                // 2(ε + |x − x₀|²)/(1 + |x|²) = A + p·v on the sphere.
                let x0sq: f64 = self.center.iter().map(|v| v * v).sum();
                let big_a = eps + x0sq + 1.0;
                let mut v: Vec<f64> = self.center.iter().map(|x| -2.0 * x).collect();
                v.push(1.0 - eps - x0sq);
                let vn = norm(&v);
                let axis = if vn > 0.0 { v.iter().map(|x| x / vn).collect() } else { unit_axis(n, n as usize) };
                let rho = vn / big_a;
                let (profile, flat): (Profile, Option<Profile>) = match self.kind {
                    ExtremalKind::PowerBubble => (
                        Rc::new(move |s: f64| a * big_a.powf(-w) * (1.0 + rho * s).powf(-w)),
                        Some(Rc::new(move |r: f64| a * (eps + r * r).powf(-w))),
                    ),
                    ExtremalKind::LogBubble => {
                        (Rc::new(move |s: f64| a - (big_a / 2.0).ln() - (1.0 + rho * s).ln()), None)
                    }
                };
                Ok(SlotField { axis, profile, flat })
            }
            ModelKind::HyperbolicGeodesic => Err(Gjms6Error::Unsupported("trace inequalities on the geodesic model".into())),
        }
    }
}

// ----------------------------------------------------- per-mode display forms

/// Boundary traces (f, φ, ψ) of one mode and the interior bilinear pieces.
#[derive(Clone, Debug)]
struct ModeTrace<T> {
    data: [T; 3],
}

/// Symmetric bilinear boundary display on one mode with coefficients
/// (ψψ, ψφ, ψf, φφ, φf, ff) as polynomials in λ: Σ_k c_k λ^k.
struct BoundaryDisplay<T> {
    coeffs: [[T; 3]; 6],
}

impl BoundaryDisplay<Q> {
    fn ball(n: i64) -> Self {
        let n = qi(n);
        let n2 = &n * &n;
        let z = q0;
        BoundaryDisplay {
            coeffs: [
                [(&n - qi(9)) / qi(2), z(), z()],
                [qi(2) * (&n2 - qi(9)), qi(8), z()],
                [-((&n - qi(3)) * (&n - qi(5)) * (&n + qi(3))) / qi(3), -(qi(4) * (&n - qi(3))) / qi(3), z()],
                [qi(8) * (&n - qi(3)), z(), z()],
                [
                    (&n - qi(5)) * (&n - qi(3)) * (&n - qi(3)) * (&n + qi(3)) / qi(3),
                    qi(8) * (&n2 - qi(4) * &n - qi(3)) / qi(3),
                    q(16, 3),
                ],
                [
                    (&n - qi(5)) * (&n - qi(3)) * (&n + qi(3)) * (&n2 + qi(4) * &n - qi(9)) / qi(18),
                    qi(4) * (&n2 * &n + &n2 - qi(21) * &n - qi(9)) / qi(9),
                    qi(8) * (&n + qi(3)) / qi(9),
                ],
            ],
        }
    }

    fn hemisphere(n: i64) -> Self {
        let n = qi(n);
        let n2 = &n * &n;
        let z = q0;
        BoundaryDisplay {
            coeffs: [
                [z(), z(), z()],
                [(qi(3) * &n2 - qi(8) * &n + qi(13)) / qi(2), qi(8), z()],
                [z(), z(), z()],
                [z(), z(), z()],
                [
                    (&n - qi(3)) * (&n - qi(5)) * (qi(3) * &n2 + qi(4) * &n - qi(11)) / qi(12),
                    qi(2) * (qi(5) * &n2 - qi(8) * &n - qi(37)) / qi(3),
                    q(16, 3),
                ],
                [z(), z(), z()],
            ],
        }
    }

    fn flat() -> Self {
        let z = q0;
        BoundaryDisplay {
            coeffs: [
                [z(), z(), z()],
                [z(), qi(8), z()],
                [z(), z(), z()],
                [z(), z(), z()],
                [z(), z(), q(16, 3)],
                [z(), z(), z()],
            ],
        }
    }

    /// The bilinear form at Δ̄-eigenvalue λ (⟨∇̄a,∇̄b⟩ ↦ λab, Δ̄aΔ̄b ↦ λ²ab).
    fn eval(&self, lambda: &Q, a: &[Q; 3], b: &[Q; 3]) -> Q {
        let c: Vec<Q> = self.coeffs.iter().map(|k| &k[0] + lambda * &k[1] + lambda * lambda * &k[2]).collect();
        let (f, p, s) = (0, 1, 2);
        let sym = |i: usize, j: usize| (&a[i] * &b[j] + &a[j] * &b[i]) / qi(2);
        &c[0] * &a[s] * &b[s] + &c[1] * sym(s, p) + &c[2] * sym(s, f) + &c[3] * &a[p] * &b[p] + &c[4] * sym(p, f)
            + &c[5] * &a[f] * &b[f]
    }
}

impl BoundaryDisplay<Q> {
    fn eval_f64(&self, lambda: f64, a: &[f64; 3], b: &[f64; 3]) -> f64 {
        let c: Vec<f64> =
            self.coeffs.iter().map(|k| to_f64(&k[0]) + lambda * to_f64(&k[1]) + lambda * lambda * to_f64(&k[2])).collect();
        let sym = |i: usize, j: usize| (a[i] * b[j] + a[j] * b[i]) / 2.0;
        c[0] * a[2] * b[2] + c[1] * sym(2, 1) + c[2] * sym(2, 0) + c[3] * a[1] * b[1] + c[4] * sym(1, 0) + c[5] * a[0] * b[0]
    }
}

fn to_f64_matrix(m: &[[Q; 3]; 3]) -> [[f64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| to_f64(&m[i][j])))
}

/// Ball display restricted to the degree-ℓ mode, as the Gram matrix over the
/// extensions of unit data (∮Y² = 1). Exact.
pub fn ball_display_matrix(n: i64, ell: u32) -> Result<[[Q; 3]; 3]> {
    let lambda = ModeIndex::Degree(ell).bar_eigenvalue(n);
    let disp = BoundaryDisplay::ball(n);
    let mut profiles = Vec::new();
    let mut traces = Vec::new();
    for k in 0..3 {
        let sol = ball_mode_solve(n, ell, &BoundaryTriple::unit(k))?;
        let SolvedProfile::Radial(p) = sol.profile else { unreachable!("ball solves are radial") };
        let d1 = p.deriv();
        let d2 = d1.deriv();
        let f = p.eval_one();
        let phi = d1.eval_one() + q(n - 5, 2) * &f;
        let psi = d2.eval_one() + qi(n - 4) * &phi + &lambda * &f / qi(3) - q((n - 5) * (n - 6), 6) * &f;
        traces.push(ModeTrace { data: [f, phi, psi] });
        profiles.push(p.mode_laplacian(n, &lambda));
    }
    let nn = n as i32;
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (gi, gj) = (&profiles[i], &profiles[j]);
            let interior = gi.deriv().mul(&gj.deriv()).integrate_weight(nn)
                + &lambda * gi.mul(gj).shift(-2).integrate_weight(nn);
            interior + disp.eval(&lambda, &traces[i].data, &traces[j].data)
        })
    }))
}

/// Half-space display at frequency t > 0 over the extensions of unit data.
pub fn halfspace_display_matrix(n: i64, t: &Q) -> Result<[[Q; 3]; 3]> {
    let e = ExpMode::new(n, 2)?;
    let tt = t * t;
    let disp = BoundaryDisplay::flat();
    let tv = MultiPoly::var(2, T_VAR);
    let dy = |x: &MultiPoly| &x.deriv(Y_VAR) - &(&tv * x);
    let at0 = |x: &MultiPoly| x.eval_var(T_VAR, t).restrict_zero(Y_VAR).constant_term();
    let mut lap = Vec::new();
    let mut traces = Vec::new();
    for k in 0..3 {
        let sol = halfspace_solve(n, t, &BoundaryTriple::unit(k))?;
        let SolvedProfile::Exp(p) = sol.profile else { unreachable!("half-space solves are exponential") };
        let p = p.embed(2);
        let f = at0(&p);
        let phi = -at0(&dy(&p));
        let psi = at0(&dy(&dy(&p))) + &tt * &f / qi(3);
        traces.push(ModeTrace { data: [f, phi, psi] });
        lap.push(e.lap(&p));
    }
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let integrand = &(&dy(&lap[i]) * &dy(&lap[j])) + &(&lap[i] * &lap[j]).scale(&tt);
            let interior = half_line_integral(&integrand.eval_var(T_VAR, t), t).constant_term();
            interior + disp.eval(&tt, &traces[i].data, &traces[j].data)
        })
    }))
}

/// Hemisphere display on the degree-ℓ mode, from the collocated extensions
/// and Gauss–Legendre quadrature in the distance ρ ∈ [0, π/2] to the
/// equator. Also returns the largest factor-equation residual.
pub fn hemisphere_display_matrix(n: i64, ell: u32, nodes: usize) -> Result<([[f64; 3]; 3], f64)> {
    let lambda = ModeIndex::Degree(ell).bar_eigenvalue(n);
    let lam = to_f64(&lambda);
    let nf = n as f64;
    let a2 = (3.0 * nf * nf - 35.0) / 4.0;
    let a1 = (3.0 * nf.powi(4) - 70.0 * nf * nf + 259.0) / 16.0;
    let a0 = to_f64(&gamma_ratio(&q(n + 7, 2), &q(n - 5, 2)).expect("integer Γ step"));
    let disp = BoundaryDisplay::hemisphere(n);
    let rule = rule_on(&legendre_rule(nodes)?, 0.0, std::f64::consts::FRAC_PI_2);
    // Per unit datum: values (u, u', Δu, (Δu)') at each node, and traces.
    let mut samples: Vec<Vec<[f64; 4]>> = Vec::new();
    let mut traces: Vec<[f64; 3]> = Vec::new();
    let mut residual = 0.0f64;
    for k in 0..3 {
        let sol = hemisphere_mode_solve_with(n, ell, &BoundaryTriple::unit(k), COLLOCATION_NODES)?;
        let SolvedProfile::Collocated { coeffs, factors } = &sol.profile else { unreachable!("hemisphere solves are collocated") };
        residual = residual.max(factors.iter().fold(0.0, |m, f| m.max(f.residual)));
        let shifts: Vec<f64> = factors.iter().map(|f| to_f64(&f.shift)).collect();
        // Chain: Δv₀ = c₀v₀ and Δv_k = c_k v_k + v_{k−1}.
        let eval = |rho: f64| -> [f64; 4] {
            let vals: Vec<(f64, f64)> = factors.iter().map(|f| f.eval(rho)).collect();
            let mut out = [0.0; 4];
            for (k, (v, dv)) in vals.iter().enumerate() {
                let (lv, ldv) = if k == 0 { (0.0, 0.0) } else { vals[k - 1] };
                out[0] += coeffs[k] * v;
                out[1] += coeffs[k] * dv;
                out[2] += coeffs[k] * (shifts[k] * v + lv);
                out[3] += coeffs[k] * (shifts[k] * dv + ldv);
            }
            out
        };
        let b = eval(0.0);
        let f = b[0];
        let phi = -b[1];
        let psi = b[2] + 4.0 / 3.0 * lam * f + (nf - 3.0) * (nf - 5.0) / 12.0 * f;
        traces.push([f, phi, psi]);
        samples.push(rule.iter().map(|(rho, _)| eval(*rho)).collect());
    }
    let m = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut interior = 0.0;
            for (node, (rho, w)) in rule.iter().enumerate() {
                let c = rho.cos();
                let (x, y) = (&samples[i][node], &samples[j][node]);
                let grad_lap = x[3] * y[3] + lam * x[2] * y[2] / (c * c);
                let grad = x[1] * y[1] + lam * x[0] * y[0] / (c * c);
                interior += w * c.powi(n as i32) * (grad_lap + a2 * x[2] * y[2] + a1 * grad + a0 * x[0] * y[0]);
            }
            interior + disp.eval_f64(lam, &traces[i], &traces[j])
        })
    });
    Ok((m, residual))
}

/// Multiplier form diag((8/3)P₅, 8P₃, 3P₁) on one round mode; at n = 5 the
/// first entry uses the critical P₅.
pub fn multiplier_matrix(n: i64, ell: u32) -> [f64; 3] {
    let mode = ModeIndex::Degree(ell);
    std::array::from_fn(|k| {
        let m = match multiplier(Boundary::Round, n, &slot_gamma(k), &mode) {
            Ok(v) => v,
            Err(_) => critical_multiplier(ell),
        };
        SLOT_COEFFS[k] * to_f64(&m)
    })
}

// --------------------------------------------------------------- evaluators

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceConfig {
    pub lmax: u32,
    pub nodes: usize,
}

impl Default for TraceConfig {
    fn default() -> Self {
        TraceConfig { lmax: crate::mode_solver::DEFAULT_LMAX, nodes: QUAD_NODES }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityReport {
    /// Energy side: the integral display on the L₆-harmonic extension.
    pub lhs: f64,
    /// Norm side: the weighted sharp-Sobolev (or logarithmic) terms.
    pub rhs: f64,
    pub gap: f64,
    pub relative_gap: f64,
    /// Largest relative Parseval defect of the slot expansions.
    pub tail: f64,
    /// Largest factor-equation residual (hemisphere), else 0.
    pub equation_residual: f64,
    /// |display − multiplier form| relative to the display.
    pub dtn_defect: f64,
}

fn report(lhs: f64, rhs: f64, tail: f64, equation_residual: f64, dtn_defect: f64) -> InequalityReport {
    let gap = lhs - rhs;
    let scale = lhs.abs().max(rhs.abs());
    let relative_gap = if scale > 0.0 { gap / scale } else { 0.0 };
    InequalityReport { lhs, rhs, gap, relative_gap, tail, equation_residual, dtn_defect }
}

/// ∮ w P_{2γ} w − C_{n,γ}‖w‖²_p on the round Sⁿ for a zonal w.
pub fn sphere_sobolev_check(n: i64, gamma: &Q, field: &SlotField, basis: &ZonalBasis) -> Result<InequalityReport> {
    let c = sharp_constant(n, gamma)?;
    let ex = basis.expand(field)?;
    let mut lhs = 0.0;
    for l in 0..=basis.lmax {
        let m = to_f64(&multiplier(Boundary::Round, n, gamma, &ModeIndex::Degree(l))?);
        lhs += m * basis.pairing(&ex, &ex, l);
    }
    let p = 2.0 * n as f64 / (n as f64 - 2.0 * to_f64(gamma));
    let rhs = c.value() * basis.lp_norm_sq(field, p);
    Ok(report(lhs, rhs, ex.tail, 0.0, 0.0))
}

/// ‖g(|x|)‖²_{L^p(ℝⁿ)} by Gauss–Legendre in θ with |x| = tan θ.
pub fn flat_lp_norm_sq(n: i64, g: &Profile, p: f64, nodes: usize) -> Result<f64> {
    let rule = rule_on(&legendre_rule(nodes)?, 0.0, std::f64::consts::FRAC_PI_2);
    let area = sphere_volume(n as usize - 1);
    let s: f64 = rule
        .iter()
        .map(|(th, w)| {
            let (r, c) = (th.tan(), th.cos());
            w * g(r).abs().powf(p) * r.powi(n as i32 - 1) / (c * c)
        })
        .sum();
    Ok((area * s).powf(2.0 / p))
}

/// Per-mode display matrices for the geometry; the half-space uses the ball
/// after stereographic transport of its boundary data.
fn display_matrices(kind: ModelKind, n: i64, cfg: &TraceConfig) -> Result<(Vec<[[f64; 3]; 3]>, f64)> {
    let mut out = Vec::new();
    let mut residual = 0.0f64;
    for l in 0..=cfg.lmax {
        match kind {
            ModelKind::EuclideanBall | ModelKind::UpperHalfSpace => out.push(to_f64_matrix(&ball_display_matrix(n, l)?)),
            ModelKind::RoundHemisphere => {
                let (m, r) = hemisphere_display_matrix(n, l, cfg.nodes)?;
                residual = residual.max(r);
                out.push(m);
            }
            ModelKind::HyperbolicGeodesic => {
                return Err(Gjms6Error::Unsupported("trace inequalities on the geodesic model".into()))
            }
        }
    }
    Ok((out, residual))
}

struct EnergySide {
    value: f64,
    dtn_defect: f64,
    tail: f64,
    expansions: Vec<ZonalExpansion>,
}

fn energy_side(n: i64, fields: &[SlotField; 3], mats: &[[[f64; 3]; 3]], basis: &ZonalBasis) -> Result<EnergySide> {
    let ex: Vec<ZonalExpansion> = fields.iter().map(|f| basis.expand(f)).collect::<Result<_>>()?;
    let mut value = 0.0;
    let mut mult = 0.0;
    let mut top = 0.0;
    for l in 0..=basis.lmax {
        let diag = multiplier_matrix(n, l);
        let mut mode = 0.0;
        for i in 0..3 {
            mult += diag[i] * basis.pairing(&ex[i], &ex[i], l);
            for j in 0..3 {
                mode += mats[l as usize][i][j] * basis.pairing(&ex[i], &ex[j], l);
            }
        }
        value += mode;
        if l + 4 > basis.lmax {
            top += mode.abs();
        }
    }
    // Data with (almost) no energy are measured against their L² size.
    let l2: f64 = (0..=basis.lmax).map(|l| (0..3).map(|i| basis.pairing(&ex[i], &ex[i], l)).sum::<f64>()).sum();
    let scale = value.abs().max(l2);
    if top > TAIL_TOL * scale {
        return Err(Gjms6Error::UnderResolved(format!("energy in the top modes is {:.3e} of the total", top / scale)));
    }
    let tail = ex.iter().fold(0.0f64, |m, e| m.max(e.tail));
    let dtn_defect = if value != 0.0 { ((value - mult) / value).abs() } else { (value - mult).abs() };
    Ok(EnergySide { value, dtn_defect, tail, expansions: ex })
}

fn check_trace_geometry(kind: ModelKind) -> Result<()> {
    match kind {
        ModelKind::UpperHalfSpace | ModelKind::EuclideanBall | ModelKind::RoundHemisphere => Ok(()),
        other => Err(Gjms6Error::Unsupported(format!("trace inequalities on {}", other.name()))),
    }
}

/// Evaluator for one geometry and dimension. The per-mode display matrices
/// and the zonal basis are built once and shared by every check.
#[derive(Clone, Debug)]
pub struct TraceEvaluator {
    pub kind: ModelKind,
    pub n: i64,
    pub cfg: TraceConfig,
    basis: ZonalBasis,
    mats: Vec<[[f64; 3]; 3]>,
    residual: f64,
}

impl TraceEvaluator {
    pub fn new(kind: ModelKind, n: i64, cfg: &TraceConfig) -> Result<Self> {
        check_trace_geometry(kind)?;
        let basis = ZonalBasis::new(n, cfg.lmax, cfg.nodes)?;
        let (mats, residual) = display_matrices(kind, n, cfg)?;
        Ok(TraceEvaluator { kind, n, cfg: *cfg, basis, mats, residual })
    }

    pub fn basis(&self) -> &ZonalBasis {
        &self.basis
    }

    /// Largest factor-equation residual of the extensions (hemisphere).
    pub fn equation_residual(&self) -> f64 {
        self.residual
    }

    fn norm_sq(&self, k: usize, field: &SlotField) -> Result<f64> {
        let p = self.n as f64 / slot_weight(self.n, k);
        match (self.kind, &field.flat) {
            (ModelKind::UpperHalfSpace, Some(g)) => flat_lp_norm_sq(self.n, g, p, self.cfg.nodes),
            (ModelKind::UpperHalfSpace, None) => Err(Gjms6Error::Unsupported("half-space slot without a flat profile".into())),
            _ => Ok(self.basis.lp_norm_sq(field, p)),
        }
    }

    /// Both sides of the L^p trace inequality (n ≥ 6).
    pub fn corollary(&self, fields: &[SlotField; 3]) -> Result<InequalityReport> {
        let n = self.n;
        if n == 5 {
            return Err(Gjms6Error::Critical);
        }
        if n < 6 {
            return Err(Gjms6Error::InvalidDimension(n));
        }
        let e = energy_side(n, fields, &self.mats, &self.basis)?;
        let mut rhs = 0.0;
        for (k, field) in fields.iter().enumerate() {
            rhs += SLOT_COEFFS[k] * sharp_constant(n, &slot_gamma(k))?.value() * self.norm_sq(k, field)?;
        }
        Ok(report(e.value, rhs, e.tail, self.residual, e.dtn_defect))
    }

    /// The critical (n = 5) inequality with the logarithmic f-term
    /// (128/5)·Vol(S⁵)·ln ⨍ e^{5(f − f̄)}. The logarithmic term is evaluated
    /// on the round S⁵ for every geometry; on the half-space this is the same
    /// integral pushed forward by stereographic projection.
    pub fn critical(&self, fields: &[SlotField; 3]) -> Result<InequalityReport> {
        if self.n != 5 {
            return Err(Gjms6Error::Config(format!("the logarithmic inequality needs n = 5, got {}", self.n)));
        }
        let e = energy_side(5, fields, &self.mats, &self.basis)?;
        let vol = self.basis.volume();
        let fbar = e.expansions[0].coeffs[0];
        let f = fields[0].profile.clone();
        let mean_exp = self.basis.integrate(|s| (5.0 * (f(s) - fbar)).exp()) / vol;
        let mut rhs = 128.0 / 5.0 * vol * mean_exp.ln();
        for (k, field) in fields.iter().enumerate().skip(1) {
            rhs += SLOT_COEFFS[k] * sharp_constant(5, &slot_gamma(k))?.value() * self.norm_sq(k, field)?;
        }
        Ok(report(e.value, rhs, e.tail, self.residual, e.dtn_defect))
    }

    pub fn fields(&self, specs: &[ExtremalSpec; 3]) -> Result<[SlotField; 3]> {
        slot_fields(self.kind, self.n, specs)
    }
}

pub fn corollary_check_fields(kind: ModelKind, n: i64, fields: &[SlotField; 3], cfg: &TraceConfig) -> Result<InequalityReport> {
    if n == 5 {
        return Err(Gjms6Error::Critical);
    }
    TraceEvaluator::new(kind, n, cfg)?.corollary(fields)
}

pub fn corollary_check(kind: ModelKind, n: i64, specs: &[ExtremalSpec; 3], cfg: &TraceConfig) -> Result<InequalityReport> {
    let fields = slot_fields(kind, n, specs)?;
    corollary_check_fields(kind, n, &fields, cfg)
}

fn slot_fields(kind: ModelKind, n: i64, specs: &[ExtremalSpec; 3]) -> Result<[SlotField; 3]> {
    Ok([specs[0].field(kind, n, 0)?, specs[1].field(kind, n, 1)?, specs[2].field(kind, n, 2)?])
}

pub fn critical_check_fields(kind: ModelKind, fields: &[SlotField; 3], cfg: &TraceConfig) -> Result<InequalityReport> {
    TraceEvaluator::new(kind, 5, cfg)?.critical(fields)
}

pub fn critical_check(kind: ModelKind, specs: &[ExtremalSpec; 3], cfg: &TraceConfig) -> Result<InequalityReport> {
    let fields = slot_fields(kind, 5, specs)?;
    critical_check_fields(kind, &fields, cfg)
}

/// Exact ball display for a polynomial u on B^{n+1}, in units of Vol(Sⁿ).
/// Boundary derivatives use r∂_r = E (Euler operator) and
/// Δ̄a = Δa − E²a − (n−1)Ea on the unit sphere.
pub fn ball_display_poly(n: i64, u: &MultiPoly) -> Result<Q> {
    let d = n as usize + 1;
    if u.dim() != d {
        return Err(Gjms6Error::DimensionMismatch { expected: d, got: u.dim() });
    }
    let e = |p: &MultiPoly| p.euler();
    let bar_lap = |p: &MultiPoly| &(&p.laplacian() - &e(&e(p))) - &e(p).scale(&qi(n - 1));
    let bar_grad = |a: &MultiPoly, b: &MultiPoly| {
        let mut s = MultiPoly::zero(d);
        for i in 0..d {
            s = &s + &(&a.deriv(i) * &b.deriv(i));
        }
        &s - &(&e(a) * &e(b))
    };
    let lu = u.laplacian();
    let mut interior = MultiPoly::zero(d);
    for i in 0..d {
        let g = lu.deriv(i);
        interior = &interior + &(&g * &g);
    }
    let f = u.clone();
    let phi = &e(u) + &f.scale(&q(n - 5, 2));
    let lf = bar_lap(&f);
    let psi = &(&(&(&e(&e(u)) - &e(u)) + &phi.scale(&qi(n - 4))) - &lf.scale(&q(1, 3))) - &f.scale(&q((n - 5) * (n - 6), 6));
    let nq = qi(n);
    let n2 = &nq * &nq;
    let terms: Vec<(Q, MultiPoly)> = vec![
        ((&nq - qi(9)) / qi(2), &psi * &psi),
        (qi(8), bar_grad(&psi, &phi)),
        (qi(2) * (&n2 - qi(9)), &psi * &phi),
        (-(qi(4) * (&nq - qi(3))) / qi(3), bar_grad(&psi, &f)),
        (-((&nq - qi(3)) * (&nq - qi(5)) * (&nq + qi(3))) / qi(3), &f * &psi),
        (qi(8) * (&nq - qi(3)), &phi * &phi),
        (q(16, 3), &bar_lap(&phi) * &lf),
        (qi(8) * (&n2 - qi(4) * &nq - qi(3)) / qi(3), bar_grad(&phi, &f)),
        ((&nq - qi(5)) * (&nq - qi(3)) * (&nq - qi(3)) * (&nq + qi(3)) / qi(3), &phi * &f),
        (qi(8) * (&nq + qi(3)) / qi(9), &lf * &lf),
        (qi(4) * (&n2 * &nq + &n2 - qi(21) * &nq - qi(9)) / qi(9), bar_grad(&f, &f)),
        ((&nq - qi(5)) * (&nq - qi(3)) * (&nq + qi(3)) * (&n2 + qi(4) * &nq - qi(9)) / qi(18), &f * &f),
    ];
    let mut total = ball_integral(&interior).q;
    for (c, p) in terms {
        total += c * sphere_integral(&p).q;
    }
    Ok(total)
}

/// Random zonal field 1 + Σ_{ℓ=2}^{4} r_ℓ P_ℓ with |r_ℓ| ≤ 0.1, orthogonal
/// to the bubble directions (ℓ ≤ 1) at second order.
pub fn random_zonal_field(n: i64, rng: &mut impl rand::Rng) -> SlotField {
    let r: Vec<f64> = (0..3).map(|_| rng.gen_range(-0.1..0.1)).collect();
    let axis = unit_axis(n, rng.gen_range(0..n as usize + 1));
    SlotField::zonal(
        axis,
        Rc::new(move |s: f64| {
            let p = gegenbauer(n, 4, s);
            1.0 + r[0] * p[2] + r[1] * p[3] + r[2] * p[4]
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::transport::{inverse_stereo, transport_density, TransportDirection};
    use crate::energy_form::energy;
    use crate::boundary_ops::FieldRep;
    use crate::model_geometry::ModelGeometry;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> TraceConfig {
        TraceConfig::default()
    }

    #[test]
    fn documented_sharp_constants() {
        let c = sharp_constant(7, &q(1, 2)).unwrap();
        assert_eq!(c.gamma_ratio, qi(3));
        assert_eq!(c.vol_power, q(1, 7));
        let vol = std::f64::consts::PI.powi(4) / 3.0;
        assert!((c.value() - 3.0 * vol.powf(1.0 / 7.0)).abs() < 1e-12);
        assert_eq!(sharp_constant(7, &q(5, 2)).unwrap().gamma_ratio, qi(120));
        assert_eq!(sharp_constant(5, &q(5, 2)), Err(Gjms6Error::Critical));
        for (n, g) in [(7, q(1, 2)), (8, q(3, 2)), (6, q(5, 2))] {
            let (l, r) = sharp_constant(n, &g).unwrap().constant_case();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn gegenbauer_norms_match_closed_form() {
        let b = ZonalBasis::new(7, 12, QUAD_NODES).unwrap();
        for l in 0..=12u32 {
            let want = b.volume() / harmonic_dimension(7, l);
            assert!((b.norms[l as usize] / want - 1.0).abs() < 1e-12, "ℓ = {l}");
        }
        // Funk–Hecke pairing against a direct two-angle quadrature on S⁷ of
        // P₂(x₁)·P₂(0.6x₁ + 0.8x₂).
        let a = ZonalExpansion { axis: unit_axis(7, 0), coeffs: vec![0.0, 0.0, 1.0], tail: 0.0 };
        let mut bx = vec![0.0; 8];
        bx[0] = 0.6;
        bx[1] = 0.8;
        let c = ZonalExpansion { axis: bx, coeffs: vec![0.0, 0.0, 1.0], tail: 0.0 };
        let rule = legendre_rule(128).unwrap();
        let pi = std::f64::consts::PI;
        let mut direct = 0.0;
        for (th, wt) in rule_on(&rule, 0.0, pi) {
            for (ph, wp) in rule_on(&rule, 0.0, pi) {
                let (x1, x2) = (th.cos(), th.sin() * ph.cos());
                let g = gegenbauer(7, 2, x1)[2] * gegenbauer(7, 2, 0.6 * x1 + 0.8 * x2)[2];
                direct += wt * wp * g * th.sin().powi(6) * ph.sin().powi(5);
            }
        }
        direct *= sphere_volume(5);
        assert!((b.pairing(&a, &c, 2) - direct).abs() < 1e-12);
    }

    #[test]
    fn sphere_sobolev_constant_and_bubbles() {
        let b = ZonalBasis::new(7, 32, QUAD_NODES).unwrap();
        let one = SlotField::zonal(unit_axis(7, 0), Rc::new(|_| 1.0));
        let r = sphere_sobolev_check(7, &q(5, 2), &one, &b).unwrap();
        assert!(r.relative_gap.abs() < 1e-12);
        let bubble = SlotField::zonal(unit_axis(7, 0), Rc::new(|s| 1.0 / (1.0 + 0.5 * s)));
        let r = sphere_sobolev_check(7, &q(5, 2), &bubble, &b).unwrap();
        assert!(r.relative_gap.abs() <= 1e-6, "{r:?}");
        for g in [q(1, 2), q(3, 2)] {
            let w = slot_weight(7, if g == q(1, 2) { 2 } else { 1 });
            let bub = SlotField::zonal(unit_axis(7, 3), Rc::new(move |s| (1.0 - 0.4 * s).powf(-w)));
            assert!(sphere_sobolev_check(7, &g, &bub, &b).unwrap().relative_gap.abs() <= 1e-6);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let w = random_zonal_field(7, &mut rng);
            assert!(sphere_sobolev_check(7, &q(5, 2), &w, &b).unwrap().gap > 0.0);
        }
        let sharp = SlotField::zonal(unit_axis(7, 0), Rc::new(|s| 1.0 / (1.0 + 0.999 * s)));
        assert!(matches!(sphere_sobolev_check(7, &q(5, 2), &sharp, &b), Err(Gjms6Error::UnderResolved(_))));
    }

    #[test]
    fn ball_display_is_the_energy() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in [6i64, 7] {
            let g = ModelGeometry::new(ModelKind::EuclideanBall, n).unwrap();
            for _ in 0..3 {
                let u = MultiPoly::random(&mut rng, n as usize + 1, &[0, 1, 2], 5, 5);
                let e = energy(&g, &FieldRep::Poly(u.clone())).unwrap();
                assert_eq!(ball_display_poly(n, &u).unwrap(), *e.total_q().unwrap());
            }
        }
        // Zero boundary data: the norm side vanishes, the energy is positive.
        let w = &MultiPoly::one(8) - &MultiPoly::radius_sq(8);
        let u = &w.pow(3) * &MultiPoly::var(8, 0);
        assert!(ball_display_poly(7, &u).unwrap() > q0());
    }

    #[test]
    fn mode_displays_equal_multiplier_forms() {
        for n in [5i64, 6, 7] {
            for l in [0u32, 1, 2, 5] {
                let m = ball_display_matrix(n, l).unwrap();
                let d = multiplier_matrix(n, l);
                for i in 0..3 {
                    for j in 0..3 {
                        let want = if i == j { d[i] } else { 0.0 };
                        assert_eq!(to_f64(&m[i][j]), want, "ball n={n} ℓ={l} ({i},{j})");
                    }
                }
                let (h, res) = hemisphere_display_matrix(n, l, QUAD_NODES).unwrap();
                assert!(res <= 1e-10);
                for i in 0..3 {
                    for j in 0..3 {
                        let want = if i == j { d[i] } else { 0.0 };
                        assert!((h[i][j] - want).abs() <= 1e-8 * (1.0 + d[0].abs()), "hemisphere n={n} ℓ={l} ({i},{j}): {}", h[i][j]);
                    }
                }
            }
        }
        let t = q(3, 2);
        let m = halfspace_display_matrix(7, &t).unwrap();
        let want = [q(8, 3) * crate::rational::qpow(&t, 5), qi(8) * crate::rational::qpow(&t, 3), qi(3) * &t];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m[i][j], if i == j { want[i].clone() } else { q0() });
            }
        }
    }

    #[test]
    fn halfspace_transport_matches_pointwise_density() {
        let n = 7;
        let spec = ExtremalSpec::flat_power(vec![0.3, -0.2, 0.0, 0.1, 0.0, 0.0, 0.0], 0.7, 1.3);
        for slot in 0..3 {
            let field = spec.field(ModelKind::UpperHalfSpace, n, slot).unwrap();
            let w = slot_weight(n, slot);
            let flat = field.flat.clone().unwrap();
            let x0 = spec.center.clone();
            let flat_fn: crate::conformal::transport::BoundaryFn = Rc::new(move |x: &[f64]| {
                let d: f64 = x.iter().zip(&x0).map(|(a, b)| (a - b) * (a - b)).sum();
                flat(d.sqrt())
            });
            let on_sphere = transport_density(flat_fn, w, TransportDirection::HalfspaceToBall);
            for x in [[0.1, 0.2, -0.3, 0.0, 0.5, 0.0, 0.1], [2.0, -1.0, 0.0, 0.3, 0.0, 0.0, 0.0]] {
                let p = inverse_stereo(&x);
                let s: f64 = p.iter().zip(&field.axis).map(|(a, b)| a * b).sum();
                assert!(((field.profile)(s) / on_sphere(&p) - 1.0).abs() < 1e-12);
            }
        }
        // The generic radial transport agrees with the bubble formula at x₀ = 0.
        let g: Profile = Rc::new(|r: f64| (1.0 + r * r).powf(-1.0));
        let generic = SlotField::flat_radial(7, 1.0, g);
        let bubble = ExtremalSpec::flat_power(vec![0.0; 7], 1.0, 1.0).field(ModelKind::UpperHalfSpace, 7, 0).unwrap();
        for s in [-0.9, -0.1, 0.4, 0.95] {
            assert!(((generic.profile)(s) - (bubble.profile)(s)).abs() < 1e-12);
        }
    }

    #[test]
    fn corollary_equality_on_extremals() {
        let n = 7;
        let d = n as usize + 1;
        let centered = [ExtremalSpec::centered(n, 1.0), ExtremalSpec::centered(n, -2.0), ExtremalSpec::centered(n, 0.5)];
        let mut x1 = vec![0.0; d];
        x1[0] = 0.5;
        let mut x2 = vec![0.0; d];
        x2[1] = -0.3;
        x2[2] = 0.2;
        let off = [ExtremalSpec::power(x1, 1.0), ExtremalSpec::power(x2, 0.7), ExtremalSpec::centered(n, 1.5)];
        for kind in [ModelKind::EuclideanBall, ModelKind::RoundHemisphere] {
            for specs in [&centered, &off] {
                let r = corollary_check(kind, n, specs, &cfg()).unwrap();
                assert!(r.relative_gap.abs() <= 1e-6, "{kind:?}: {r:?}");
                assert!(r.dtn_defect <= 1e-8);
            }
        }
        let flat = [
            ExtremalSpec::flat_power(vec![0.0; 7], 1.0, 1.0),
            ExtremalSpec::flat_power(vec![0.2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], 0.8, 1.0),
            ExtremalSpec::flat_power(vec![0.0, -0.3, 0.0, 0.0, 0.0, 0.0, 0.0], 1.5, 2.0),
        ];
        let r = corollary_check(ModelKind::UpperHalfSpace, n, &flat, &cfg()).unwrap();
        assert!(r.relative_gap.abs() <= 1e-6, "{r:?}");
        // Zero data gives 0 = 0.
        let zero = [SlotField::zero(n), SlotField::zero(n), SlotField::zero(n)];
        let r = corollary_check_fields(ModelKind::EuclideanBall, n, &zero, &cfg()).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
    }

    #[test]
    fn stereographic_equivalence_and_scaling() {
        let n = 6;
        let flat = [
            ExtremalSpec::flat_power(vec![0.1, 0.0, 0.0, 0.0, 0.0, 0.0], 1.2, 1.0),
            ExtremalSpec::flat_power(vec![0.0; 6], 0.6, 1.0),
            ExtremalSpec::flat_power(vec![0.0, 0.0, 0.4, 0.0, 0.0, 0.0], 1.0, 1.0),
        ];
        let fields: Vec<SlotField> = (0..3).map(|k| flat[k].field(ModelKind::UpperHalfSpace, n, k).unwrap()).collect();
        let round: [SlotField; 3] = std::array::from_fn(|k| SlotField::zonal(fields[k].axis.clone(), fields[k].profile.clone()));
        let half = corollary_check(ModelKind::UpperHalfSpace, n, &flat, &cfg()).unwrap();
        let ball = corollary_check_fields(ModelKind::EuclideanBall, n, &round, &cfg()).unwrap();
        let hemi = corollary_check_fields(ModelKind::RoundHemisphere, n, &round, &cfg()).unwrap();
        assert!((half.rhs / ball.rhs - 1.0).abs() <= 1e-8);
        assert!((hemi.lhs / ball.lhs - 1.0).abs() <= 1e-8);
        let scaled: [ExtremalSpec; 3] = std::array::from_fn(|k| ExtremalSpec { amplitude: 3.0, ..flat[k].clone() });
        let s = corollary_check(ModelKind::UpperHalfSpace, n, &scaled, &cfg()).unwrap();
        assert!((s.lhs / half.lhs - 9.0).abs() <= 1e-10 && (s.rhs / half.rhs - 9.0).abs() <= 1e-10);
    }

    #[test]
    fn random_data_have_positive_gaps() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for kind in [ModelKind::EuclideanBall, ModelKind::RoundHemisphere] {
            for _ in 0..2 {
                let fields = [random_zonal_field(7, &mut rng), random_zonal_field(7, &mut rng), random_zonal_field(7, &mut rng)];
                assert!(corollary_check_fields(kind, 7, &fields, &cfg()).unwrap().gap > 0.0);
            }
        }
        let g: Profile = Rc::new(|r: f64| (1.0 + r * r).powf(-1.0) * (1.0 + 0.3 * (-r * r).exp()));
        let h: Profile = Rc::new(|r: f64| (1.0 + r * r).powf(-2.0));
        let k: Profile = Rc::new(|r: f64| (1.0 + r * r).powf(-3.0));
        let fields = [SlotField::flat_radial(7, 1.0, g), SlotField::flat_radial(7, 2.0, h), SlotField::flat_radial(7, 3.0, k)];
        let r = corollary_check_fields(ModelKind::UpperHalfSpace, 7, &fields, &cfg()).unwrap();
        assert!(r.gap > 0.0 && r.relative_gap > 1e-6, "{r:?}");
    }

    #[test]
    fn critical_equality() {
        let mut x1 = vec![0.0; 6];
        x1[0] = 0.3;
        let specs = [ExtremalSpec::log(x1, 0.4), ExtremalSpec::centered(5, 1.0), ExtremalSpec::centered(5, -0.5)];
        for kind in [ModelKind::EuclideanBall, ModelKind::RoundHemisphere] {
            let r = critical_check(kind, &specs, &cfg()).unwrap();
            assert!(r.gap.abs() <= 1e-5, "{kind:?}: {r:?}");
            assert!(r.equation_residual <= 1e-8);
        }
        let flat = [
            ExtremalSpec::flat_log(vec![0.2, 0.0, 0.0, 0.0, 0.0], 0.9, 1.0),
            ExtremalSpec::flat_power(vec![0.0; 5], 1.0, 1.0),
            ExtremalSpec::flat_power(vec![0.0, 0.1, 0.0, 0.0, 0.0], 1.3, 1.0),
        ];
        let r = critical_check(ModelKind::UpperHalfSpace, &flat, &cfg()).unwrap();
        assert!(r.gap.abs() <= 1e-5, "{r:?}");
        // Constant f with φ = ψ = 0: both sides vanish.
        let fields = [SlotField::zonal(unit_axis(5, 0), Rc::new(|_| 2.0)), SlotField::zero(5), SlotField::zero(5)];
        let r = critical_check_fields(ModelKind::EuclideanBall, &fields, &cfg()).unwrap();
        assert!(r.lhs.abs() < 1e-12 && r.rhs.abs() < 1e-12);
        assert!(matches!(corollary_check(ModelKind::EuclideanBall, 5, &specs, &cfg()), Err(Gjms6Error::Critical)));
    }
}
