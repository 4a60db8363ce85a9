//! Solve L₆u = 0 with Dirichlet data (f, φ, ψ) on one boundary mode of each
//! model and report the achieved B0 … B5.

use gjms6::mode_solver::{solve_mode, BoundaryTriple, ModeIndex};
use gjms6::rational::{fmt_q, q, qi};
use gjms6::{ModelGeometry, ModelKind};

fn main() -> gjms6::Result<()> {
    let data = BoundaryTriple::new(q(2, 3), qi(-1), q(5, 4));
    for kind in ModelKind::ALL {
        let g = ModelGeometry::new(kind, 7)?;
        let mode = if kind == ModelKind::UpperHalfSpace { ModeIndex::Frequency(q(3, 2)) } else { ModeIndex::Degree(2) };
        let sol = solve_mode(&g, &mode, &data)?;
        let label = match &mode {
            ModeIndex::Degree(l) => format!("ell = {l}"),
            ModeIndex::Frequency(t) => format!("t = {}", fmt_q(t)),
        };
        let b: Vec<String> = sol.boundary.iter().map(|x| x.render()).collect();
        println!("{:<11} {label:<8} B = [{}], data residual {:.1e}", kind.name(), b.join(", "), sol.max_residual());
    }
    Ok(())
}
