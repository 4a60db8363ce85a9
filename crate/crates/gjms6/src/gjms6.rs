//! The sixth-order GJMS operator L6, the tensor T4 and Q6 on model geometries.
//!
//! L6 is only ever realized through one of three closed forms: (−Δ)³ on flat
//! interiors, a product of shifted Laplacians on the round hemisphere, and the
//! hyperbolic factorization pulled back through the defining function on the
//! geodesic compactification.

use crate::boundary_ops::{BoundaryCalculus, FieldRep, Warped};
use crate::error::{Gjms6Error, Result};
use crate::exact_poly::{ExpPolyMode, MultiPoly, Series};
use crate::model_geometry::{ModelGeometry, ModelKind};
use crate::rational::{q, q0, qi, Q};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum L6Form {
    FlatTriharmonic,
    EinsteinFactorized,
    GeodesicInterior,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct L6Realization {
    pub geom: ModelGeometry,
    pub form: L6Form,
}

impl L6Realization {
    pub fn for_model(geom: &ModelGeometry) -> Self {
        let form = match geom.kind {
            ModelKind::UpperHalfSpace | ModelKind::EuclideanBall => L6Form::FlatTriharmonic,
            ModelKind::RoundHemisphere => L6Form::EinsteinFactorized,
            ModelKind::HyperbolicGeodesic => L6Form::GeodesicInterior,
        };
        L6Realization { geom: *geom, form }
    }

    /// Shifts c_k in L6 = Π(−Δ + c_k); negated for the hyperbolic metric.
    pub fn factor_shifts(&self) -> [Q; 3] {
        let n = self.geom.n;
        let c = |k: i64| q((n + 2 * k - 1) * (n - 2 * k + 1), 4);
        match self.form {
            L6Form::FlatTriharmonic => [q0(), q0(), q0()],
            L6Form::EinsteinFactorized => [c(1), c(2), c(3)],
            L6Form::GeodesicInterior => [-c(1), -c(2), -c(3)],
        }
    }

    pub fn apply(&self, u: &FieldRep) -> Result<FieldRep> {
        let flat = self.form == L6Form::FlatTriharmonic;
        match u {
            FieldRep::Poly(p) if flat => {
                check_dim(p.dim(), self.geom.n as usize + 1)?;
                Ok(FieldRep::Poly(-p.laplacian().laplacian().laplacian()))
            }
            FieldRep::ExpMode(p) if self.geom.kind == ModelKind::UpperHalfSpace => {
                let m = ExpPolyMode::new(p.clone())?;
                Ok(FieldRep::ExpMode(m.lap().lap().lap().scale(&qi(-1)).profile))
            }
            FieldRep::Mode { lambda, profile } => {
                if profile.len() < Warped::LEN {
                    return Err(Gjms6Error::MissingSeries(format!(
                        "mode profile needs {} Taylor coefficients",
                        Warped::LEN
                    )));
                }
                let w = Warped::for_model(&self.geom, lambda.clone())?;
                let out = match self.form {
                    L6Form::GeodesicInterior => {
                        // r = ρ is the geodesic defining function.
                        let m = Series::constant(qi(1), Warped::LEN);
                        via_poincare_metric(&w, &m, profile)?
                    }
                    _ => factorized(&w, &self.factor_shifts(), profile),
                };
                Ok(FieldRep::Mode { lambda: lambda.clone(), profile: out })
            }
            other => Err(Gjms6Error::Unsupported(format!(
                "L6 on {} for {:?}",
                self.geom.kind.name(),
                std::mem::discriminant(other)
            ))),
        }
    }
}

fn check_dim(got: usize, expected: usize) -> Result<()> {
    if got != expected {
        return Err(Gjms6Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Π(−Δ + c_k) applied to a mode profile.
fn factorized(w: &Warped, shifts: &[Q; 3], u: &Series<Q>) -> Series<Q> {
    let mut v = u.clone();
    for c in shifts.iter().rev() {
        v = w.lap(&v).neg().add(&v.scale(c));
    }
    v
}

fn times_rho(s: &Series<Q>, k: usize) -> Series<Q> {
    let mut c = vec![q0(); k];
    c.extend(s.c.iter().cloned());
    Series::from_vec(c)
}

/// L6 on g = r²g₊ with g₊ hyperbolic and r = ρ·m(ρ), via
/// L6^g(u) = r^{−(n+7)/2} L6^{g₊}(r^{(n−5)/2} u).
///
/// Powers of ρ are carried symbolically: fields are ρ^a·F with F a series.
/// ρ^{−a}Δ_{g₊}(ρ^a F) for g₊ = r^{−2}g with r = ρ·m, using
/// Δ_{g₊} = r²Δ_g − (n−1) r r' ∂ρ on the mode.
pub fn poincare_laplacian(w: &Warped, m: &Series<Q>, a: &Q, f: &Series<Q>) -> Series<Q> {
    let n = w.n;
    let r1 = times_rho(m, 1).deriv();
    let m2 = m.mul(m);
    let f1 = f.deriv();
    let euler = f.scale(a).add(&times_rho(&f1, 1));
    let inner = f
        .scale(&(a * (a - qi(1))))
        .add(&times_rho(&f1, 1).scale(&(qi(2) * a)))
        .add(&times_rho(&f1.deriv(), 2))
        .add(&times_rho(&w.w_ratio().mul(&euler), 1).scale(&qi(n)))
        .sub(&times_rho(&w.inv_w2().mul(f), 2).scale(&w.lambda));
    m2.mul(&inner).sub(&m.mul(&r1).mul(&euler).scale(&qi(n - 1)))
}

pub fn via_poincare_metric(w: &Warped, m: &Series<Q>, u: &Series<Q>) -> Result<Series<Q>> {
    let n = w.n;
    let a = q(n - 5, 2);
    let shifts = L6Realization {
        geom: ModelGeometry { kind: ModelKind::HyperbolicGeodesic, n },
        form: L6Form::GeodesicInterior,
    }
    .factor_shifts();
    let lap_plus = |f: &Series<Q>| poincare_laplacian(w, m, &a, f);
    let mut v = m.pow_q(&a).mul(u);
    for c in shifts.iter().rev() {
        v = lap_plus(&v).neg().add(&v.scale(c));
    }
    for k in 0..6.min(v.len()) {
        if !v.c[k].is_zero() {
            return Err(Gjms6Error::Singular(format!("ρ^{k} coefficient survives the weight shift")));
        }
    }
    if v.len() <= 6 {
        return Err(Gjms6Error::MissingSeries("profile too short for the weight shift".into()));
    }
    let h = Series::from_vec(v.c[6..].to_vec());
    Ok(m.truncate(h.len()).pow_q(&q(-(n + 7), 2)).mul(&h))
}

pub fn apply_l6(geom: &ModelGeometry, u: &FieldRep) -> Result<FieldRep> {
    L6Realization::for_model(geom).apply(u)
}

/// Q6 of the unit round sphere S^d.
pub fn q6_constant_curvature(d: i64) -> Result<Q> {
    if d < 6 {
        return Err(Gjms6Error::InvalidDimension(d - 1));
    }
    let n = d - 1;
    let j = q(d, 2);
    let p_sq = q(d, 4);
    let tr_p3 = q(d, 8);
    Ok(q((n - 1) * (n + 3), 4) * &j * &j * &j - qi(4 * (n + 1)) * &j * p_sq + qi(16) * tr_p3)
}

/// Q6 of a model interior where it is constant.
pub fn q6_model(geom: &ModelGeometry) -> Result<Q> {
    match geom.kind {
        ModelKind::UpperHalfSpace | ModelKind::EuclideanBall => Ok(q0()),
        ModelKind::RoundHemisphere => q6_constant_curvature(geom.n + 1),
        ModelKind::HyperbolicGeodesic => {
            Err(Gjms6Error::Unsupported("Q6 is not constant on the geodesic compactification".into()))
        }
    }
}

/// T4 of a warped product dρ² + w²h, which is diagonal: `nn` on ∂ρ and
/// `tan` times the metric on tangential directions.
#[derive(Clone, Debug, PartialEq)]
pub struct T4Profile {
    pub nn: Series<Q>,
    pub tan: Series<Q>,
}

pub fn t4_profile(w: &Warped) -> T4Profile {
    let n = w.n;
    let nq = qi(n);
    let (pa, pb) = w.schouten();
    let j = pa.add(&pb.scale(&nq));
    let j1 = j.deriv();
    let lap_j = j1.deriv().add(&w.w_ratio().mul(&j1).scale(&nq));
    let p_sq = pa.mul(pa).add(&pb.mul(pb).scale(&nq));
    let trace_part = lap_j
        .scale(&qi(-(n - 5)))
        .add(&j.mul(&j).scale(&q(3 * n * n - 6 * n - 13, 4)))
        .sub(&p_sq.scale(&qi(4 * (n - 3))));
    let diag = |p: &Series<Q>| {
        trace_part.add(&j.mul(p).scale(&qi(-8 * (n - 1)))).add(&p.mul(p).scale(&qi(48)))
    };
    T4Profile { nn: diag(pa), tan: diag(pb) }
}

/// T4 = t·g on the round sphere S^{n+1}.
pub fn t4_constant_curvature(n: i64) -> Q {
    let j = q(n + 1, 2);
    let p_sq = q(n + 1, 4);
    q(3 * n * n - 6 * n - 13, 4) * &j * &j - qi(4 * (n - 3)) * p_sq - qi(8 * (n - 1)) * &j * q(1, 2) + qi(12)
}

/// One-form fields: polynomial components, or R_n(ρ)dρ + R_t(ρ)dY for a
/// boundary eigenfunction Y.
#[derive(Clone, Debug, PartialEq)]
pub enum OneForm {
    Poly(Vec<MultiPoly>),
    Mode { lambda: Q, normal: Series<Q>, tangential: Series<Q> },
}

impl OneForm {
    /// du for a field representation.
    pub fn differential(u: &FieldRep) -> Result<Self> {
        match u {
            FieldRep::Poly(p) => Ok(OneForm::Poly((0..p.dim()).map(|i| p.deriv(i)).collect())),
            FieldRep::Mode { lambda, profile } => Ok(OneForm::Mode {
                lambda: lambda.clone(),
                normal: profile.deriv(),
                tangential: profile.clone(),
            }),
            FieldRep::ExpMode(_) => Err(Gjms6Error::Unsupported("differential of an exponential mode".into())),
        }
    }
}

/// T4(du, ·) as a one-form.
pub fn t4_action(geom: &ModelGeometry, du: &OneForm) -> Result<OneForm> {
    match du {
        OneForm::Poly(c) if geom.kind.flat_interior() => {
            Ok(OneForm::Poly(c.iter().map(|p| MultiPoly::zero(p.dim())).collect()))
        }
        OneForm::Mode { lambda, normal, tangential } => {
            let t4 = t4_profile(&Warped::for_model(geom, lambda.clone())?);
            Ok(OneForm::Mode {
                lambda: lambda.clone(),
                normal: t4.nn.mul(normal),
                tangential: t4.tan.mul(tangential),
            })
        }
        OneForm::Poly(_) => Err(Gjms6Error::Unsupported(format!(
            "polynomial one-forms on {}",
            geom.kind.name()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::normalize_jet;
    use crate::exact_poly::sin_cos_at;

    fn mode(lambda: Q, jets: &[Q]) -> FieldRep {
        FieldRep::Mode { lambda, profile: Warped::field_from_jets(jets) }
    }

    fn profile(u: FieldRep) -> Series<Q> {
        match u {
            FieldRep::Mode { profile, .. } => profile,
            _ => panic!("expected a mode"),
        }
    }

    #[test]
    fn flat_documented_values() {
        let g = ModelGeometry::new(ModelKind::EuclideanBall, 5).unwrap();
        let x1sq = MultiPoly::var(6, 0).pow(2);
        assert_eq!(apply_l6(&g, &FieldRep::Poly(x1sq)).unwrap(), FieldRep::Poly(MultiPoly::zero(6)));
        let r6 = MultiPoly::radius_sq(6).pow(3);
        let expect = MultiPoly::constant(6, qi(-23040));
        assert_eq!(apply_l6(&g, &FieldRep::Poly(r6)).unwrap(), FieldRep::Poly(expect));
    }

    #[test]
    fn ball_modes_agree_with_polynomials() {
        // |x|⁶ = (1 − ρ)⁶ as a radial mode.
        let g = ModelGeometry::new(ModelKind::EuclideanBall, 5).unwrap();
        let mut c = vec![qi(1), qi(-1)];
        c.resize(Warped::LEN, q0());
        let u = FieldRep::Mode { lambda: q0(), profile: Series::from_vec(c).powi(6) };
        let out = profile(apply_l6(&g, &u).unwrap());
        assert_eq!(out.coeff(0), qi(-23040));
        assert!(out.c[1..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn hemisphere_constant() {
        let g = ModelGeometry::new(ModelKind::RoundHemisphere, 7).unwrap();
        let out = profile(apply_l6(&g, &mode(q0(), &[qi(1)])).unwrap());
        assert_eq!(out.coeff(0), qi(720));
        for n in 6..=12 {
            let g = ModelGeometry::new(ModelKind::RoundHemisphere, n).unwrap();
            let out = profile(apply_l6(&g, &mode(q0(), &[qi(1)])).unwrap());
            assert_eq!(out.coeff(0), q(n - 5, 2) * q6_constant_curvature(n + 1).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn q6_values() {
        assert_eq!(q6_constant_curvature(6).unwrap(), qi(120));
        assert_eq!(q6_constant_curvature(8).unwrap(), qi(720));
        assert!(q6_constant_curvature(5).is_err());
        let flat = ModelGeometry::new(ModelKind::UpperHalfSpace, 6).unwrap();
        assert!(q6_model(&flat).unwrap().is_zero());
    }

    #[test]
    fn hemisphere_factorization_matches_poincare_metric() {
        // The round hemisphere is sin²ρ times the hyperbolic metric.
        for n in [5, 6, 7, 9] {
            let g = ModelGeometry::new(ModelKind::RoundHemisphere, n).unwrap();
            for (lam, jets) in [
                (q0(), vec![qi(1), qi(2), q(-1, 3)]),
                (qi(n), vec![q(1, 2), qi(0), qi(3), qi(-1), q(2, 5)]),
                (qi(2 * n + 2), vec![qi(0), qi(1), qi(0), qi(0), qi(7)]),
            ] {
                let u = Warped::field_from_jets(&jets);
                let w = Warped::for_model(&g, lam.clone()).unwrap();
                let (sin, _) = sin_cos_at::<Q>(q0(), qi(1), Warped::LEN + 1);
                let m = Series::from_vec(sin.c[1..].to_vec());
                let a = factorized(&w, &L6Realization::for_model(&g).factor_shifts(), &u);
                let b = via_poincare_metric(&w, &m, &u).unwrap();
                let len = a.len().min(b.len());
                assert!(len >= 6);
                assert_eq!(a.truncate(len), b.truncate(len), "n = {n}, λ = {lam}");
            }
        }
    }

    #[test]
    fn geodesic_model_runs() {
        let g = ModelGeometry::new(ModelKind::HyperbolicGeodesic, 7).unwrap();
        let out = profile(apply_l6(&g, &mode(qi(7), &[qi(1), qi(1)])).unwrap());
        assert!(out.len() >= 6);
    }

    #[test]
    fn unsupported_pairs() {
        let g = ModelGeometry::new(ModelKind::RoundHemisphere, 6).unwrap();
        assert!(apply_l6(&g, &FieldRep::Poly(MultiPoly::one(7))).is_err());
        let short = FieldRep::Mode { lambda: q0(), profile: Series::constant(qi(1), 3) };
        assert!(apply_l6(&g, &short).is_err());
    }

    #[test]
    fn t4_on_models() {
        let flat = ModelGeometry::new(ModelKind::UpperHalfSpace, 6).unwrap();
        let du = OneForm::differential(&FieldRep::Poly(MultiPoly::var(7, 2).pow(3))).unwrap();
        match t4_action(&flat, &du).unwrap() {
            OneForm::Poly(c) => assert!(c.iter().all(|p| p.is_zero())),
            _ => panic!(),
        }
        let g = ModelGeometry::new(ModelKind::RoundHemisphere, 7).unwrap();
        let t = t4_constant_curvature(7);
        let u = FieldRep::Mode { lambda: qi(7), profile: Warped::field_from_jets(&[qi(1), qi(2), qi(3)]) };
        let du = OneForm::differential(&u).unwrap();
        match (t4_action(&g, &du).unwrap(), &du) {
            (OneForm::Mode { normal, tangential, .. }, OneForm::Mode { normal: n0, tangential: t0, .. }) => {
                assert_eq!(normal, n0.truncate(normal.len()).scale(&t));
                assert_eq!(tangential, t0.truncate(tangential.len()).scale(&t));
            }
            _ => panic!(),
        }
        // Tangential one-forms stay tangential: T4(η, Y) = 0.
        let tang = OneForm::Mode {
            lambda: qi(7),
            normal: Series::zeros(Warped::LEN),
            tangential: Series::constant(qi(1), Warped::LEN),
        };
        match t4_action(&g, &tang).unwrap() {
            OneForm::Mode { normal, .. } => assert!(normal.c.iter().all(|x| x.is_zero())),
            _ => panic!(),
        }
    }

    #[test]
    fn t4_normal_form_boundary_identity() {
        for kind in [ModelKind::EuclideanBall, ModelKind::RoundHemisphere, ModelKind::HyperbolicGeodesic] {
            for n in 5..=9 {
                let g = ModelGeometry::new(kind, n).unwrap();
                let jet = normalize_jet(&g).unwrap();
                let (_, kappa) = g.warp_profile(1);
                let w = Warped::new(&jet.rescaled_warp(&g), kappa.clone(), n, q0()).unwrap();
                let t4 = t4_profile(&w);
                let jbar = qi(n) * &kappa / qi(2);
                let pbar_sq = qi(n) * &kappa * &kappa / qi(4);
                let expect = -qi(8 * (n - 4)) * pbar_sq + q(8 * (2 * n * n - 10 * n + 5), 9) * &jbar * &jbar;
                assert_eq!(t4.nn.coeff(0), expect, "{} n = {n}", kind.name());
            }
        }
    }
}
