//! Boundary invariants and curvature coefficients T_j of the four models.

use gjms6::boundary_ops::coefficients;
use gjms6::model_geometry::boundary_data;
use gjms6::rational::fmt_q;
use gjms6::{ModelGeometry, ModelKind};

fn main() -> gjms6::Result<()> {
    let n = 7;
    for kind in ModelKind::ALL {
        let g = ModelGeometry::new(kind, n)?;
        let d = boundary_data(&g);
        let c = coefficients(&g);
        let t: Vec<String> = (1..=5).map(|j| fmt_q(&c.t(j))).collect();
        println!(
            "{:<11} H = {:<3} Jbar = {:<4} P(eta,eta) = {:<4} T1..T5 = [{}]",
            kind.name(),
            fmt_q(&d.h),
            fmt_q(&d.jbar),
            fmt_q(&d.p_eta_eta),
            t.join(", ")
        );
    }
    Ok(())
}
