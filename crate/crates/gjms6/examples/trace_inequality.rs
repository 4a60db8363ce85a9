//! Both sides of the sharp L^p trace inequality for bubbles (equality) and
//! for perturbed data (strict inequality) on the ball, hemisphere and
//! half-space in dimension seven.

use gjms6::trace_ineq::{random_zonal_field, ExtremalSpec, SlotField, TraceConfig, TraceEvaluator};
use gjms6::ModelKind;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gjms6::Result<()> {
    let n = 7;
    let cfg = TraceConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for kind in [ModelKind::EuclideanBall, ModelKind::RoundHemisphere, ModelKind::UpperHalfSpace] {
        let ev = TraceEvaluator::new(kind, n, &cfg)?;
        let specs = if kind == ModelKind::UpperHalfSpace {
            [
                ExtremalSpec::flat_power(vec![0.3, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], 0.8, 1.0),
                ExtremalSpec::flat_power(vec![0.0; 7], 1.5, -0.5),
                ExtremalSpec::flat_power(vec![0.0, 0.2, 0.0, 0.0, 0.0, 0.0, 0.0], 1.0, 2.0),
            ]
        } else {
            let mut c = vec![0.0; 8];
            c[0] = 0.4;
            [ExtremalSpec::power(c, 1.0), ExtremalSpec::centered(n, -0.5), ExtremalSpec::centered(n, 2.0)]
        };
        let r = ev.corollary(&ev.fields(&specs)?)?;
        println!("{:<11} bubbles: lhs {:.10e} rhs {:.10e} relative gap {:.1e}", kind.name(), r.lhs, r.rhs, r.relative_gap);
        if kind != ModelKind::UpperHalfSpace {
            let f: [SlotField; 3] = std::array::from_fn(|_| random_zonal_field(n, &mut rng));
            let r = ev.corollary(&f)?;
            println!("{:<11} random:  lhs {:.10e} rhs {:.10e} relative gap {:.3}", kind.name(), r.lhs, r.rhs, r.relative_gap);
        }
    }
    Ok(())
}
