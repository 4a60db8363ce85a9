//! Dirichlet-to-Neumann identities: the symbolic half-space check and the
//! per-mode comparison with 3P₁, 8P₃ and (8/3)P₅ on the round models.

use gjms6::fractional::{dtn_multiplier, dtn_symbolic_halfspace, dtn_verify, Boundary};
use gjms6::mode_solver::{BoundaryTriple, ModeIndex};
use gjms6::rational::{fmt_q, q, qi};
use gjms6::{ModelGeometry, ModelKind};

fn main() -> gjms6::Result<()> {
    let zero = dtn_symbolic_halfspace(7)?.iter().all(|p| p.is_zero());
    println!("half-space identities vanish in (t, a, b, c): {zero}");
    println!("ell   3P1     8P3       (8/3)P5   on S^7");
    for l in 0..=5u32 {
        let m = |j| fmt_q(&dtn_multiplier(Boundary::Round, 7, j, &ModeIndex::Degree(l)).unwrap());
        println!("{l:<5} {:<7} {:<9} {}", m(1), m(3), m(5));
    }
    let data = BoundaryTriple::new(q(2, 3), qi(-1), q(5, 4));
    for kind in [ModelKind::EuclideanBall, ModelKind::RoundHemisphere, ModelKind::HyperbolicGeodesic] {
        let g = ModelGeometry::new(kind, 7)?;
        let r = dtn_verify(&g, &ModeIndex::Degree(3), &data)?;
        println!("{:<11} ell = 3: max residual {:.1e} (exact: {})", kind.name(), r.max(), r.exact);
    }
    Ok(())
}
