//! Exact covariance residuals of B0 … B5 under g ↦ e^{2σ}g on the half-space,
//! and the critical T-shift law in dimension five.

use gjms6::conformal::{critical_t_shift, finite_covariance_residual, infinitesimal_covariance_residual, ConfRing, VariationProbe};
use gjms6::exact_poly::MultiPoly;
use gjms6::rational::q;
use gjms6::{ModelGeometry, ModelKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gjms6::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [5, 7] {
        let g = ModelGeometry::new(ModelKind::UpperHalfSpace, n)?;
        let sigma = MultiPoly::random(&mut rng, 3, &[0, 1, 2], 3, 3);
        let u = MultiPoly::random(&mut rng, 3, &[0, 1, 2], 3, 3);
        println!("n = {n}, sigma = {sigma}, u = {u}");
        let probe = VariationProbe { w: q(5 - n, 2), sigma: sigma.clone(), order: 6 };
        for j in 0..6 {
            let inf = infinitesimal_covariance_residual(j, &probe, &u, &g)?.is_zero();
            let fin = finite_covariance_residual(j, &sigma, &u, &g)?.is_zero();
            println!("  B{j}: first-order residual zero = {inf}, finite residual zero = {fin}");
        }
    }
    let g5 = ModelGeometry::new(ModelKind::UpperHalfSpace, 5)?;
    let sigma = MultiPoly::random(&mut rng, 3, &[0, 1, 2], 3, 4);
    for j in 1..=5 {
        println!("T-shift law j = {j}: residual zero = {}", critical_t_shift(j, &sigma, &g5)?.is_zero());
    }
    Ok(())
}
