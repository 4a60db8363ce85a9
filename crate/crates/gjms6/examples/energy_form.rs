//! The energy form on the flat ball: the value on x₁, symmetry on random
//! polynomials, and the minimizing property of L₆-harmonic extensions.

use gjms6::boundary_ops::FieldRep;
use gjms6::energy_form::{energy, symmetry_residual, trace_lower_bound_check};
use gjms6::exact_poly::MultiPoly;
use gjms6::mode_solver::BoundaryTriple;
use gjms6::rational::{fmt_q, q, qi};
use gjms6::{ModelGeometry, ModelKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gjms6::Result<()> {
    let ball = ModelGeometry::new(ModelKind::EuclideanBall, 7)?;
    let e = energy(&ball, &FieldRep::Poly(MultiPoly::var(8, 0)))?;
    println!("E6(x1) = {} (interior {}, boundary {}) x Vol(S^7)", e.total.render(), e.interior.render(), e.boundary.render());
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let u = MultiPoly::random(&mut rng, 8, &[0, 1, 2], 4, 4);
    let v = MultiPoly::random(&mut rng, 8, &[0, 1, 2], 4, 4);
    println!("Q6(u,v) - Q6(v,u) = {}", fmt_q(&symmetry_residual(&ball, &FieldRep::Poly(u), &FieldRep::Poly(v))?));
    let r = trace_lower_bound_check(7, 1, &BoundaryTriple::new(qi(1), q(1, 2), qi(-3)), 10, 0)?;
    println!("E6(u0) = {}, boundary form = {}", fmt_q(&r.e0), fmt_q(&r.predicted));
    println!("smallest gap over 10 zero-data perturbations: {}", fmt_q(r.min_gap().unwrap()));
    Ok(())
}
