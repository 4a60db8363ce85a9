//! B0 … B5 of the coordinate function x₁ on the unit ball B⁸.

use gjms6::boundary_ops::{apply_all, BallPoly};
use gjms6::exact_poly::MultiPoly;
use gjms6::rational::{fmt_q, q0, qi};

fn main() -> gjms6::Result<()> {
    let n = 7;
    let ball = BallPoly::new(n)?;
    let x1 = MultiPoly::var(n as usize + 1, 0);
    let mut e1 = vec![q0(); n as usize + 1];
    e1[0] = qi(1);
    for (j, b) in apply_all(&ball, &x1).iter().enumerate() {
        // Each B_j(x₁) restricts to a multiple of x₁ on the sphere.
        println!("B{j}(x1) = {} x1   ({b})", fmt_q(&b.eval(&e1)));
    }
    Ok(())
}
