//! L₆ on constants of the round hemisphere: ((n − 5)/2)·Q₆(S^{n+1}).

use gjms6::boundary_ops::{FieldRep, Warped};
use gjms6::exact_poly::Series;
use gjms6::gjms6::{apply_l6, q6_constant_curvature};
use gjms6::rational::{fmt_q, q0, qi};
use gjms6::{ModelGeometry, ModelKind};

fn main() -> gjms6::Result<()> {
    for n in 5..=12 {
        let g = ModelGeometry::new(ModelKind::RoundHemisphere, n)?;
        let one = FieldRep::Mode { lambda: q0(), profile: Series::constant(qi(1), Warped::LEN) };
        if let FieldRep::Mode { profile, .. } = apply_l6(&g, &one)? {
            println!("n = {n:>2}: L6(1) = {:>8}   Q6(S^{}) = {}", fmt_q(&profile.coeff(0)), n + 1, fmt_q(&q6_constant_curvature(n + 1)?));
        }
    }
    Ok(())
}
