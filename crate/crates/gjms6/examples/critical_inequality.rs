//! The logarithmic trace inequality in dimension five: equality on
//! (log-bubble, bubble, bubble) and a strict gap once f is perturbed.

use std::rc::Rc;

use gjms6::trace_ineq::{unit_axis, ExtremalSpec, SlotField, TraceConfig, TraceEvaluator};
use gjms6::ModelKind;

fn main() -> gjms6::Result<()> {
    let ev = TraceEvaluator::new(ModelKind::RoundHemisphere, 5, &TraceConfig::default())?;
    let mut c = vec![0.0; 6];
    c[0] = 0.3;
    let specs = [ExtremalSpec::log(c, 0.4), ExtremalSpec::centered(5, 1.0), ExtremalSpec::centered(5, -0.5)];
    let mut fields = ev.fields(&specs)?;
    let r = ev.critical(&fields)?;
    println!("extremal:  lhs {:.10e} rhs {:.10e} gap {:.1e}", r.lhs, r.rhs, r.gap);
    println!("hemisphere factor-equation residual {:.1e}", ev.equation_residual());
    let f = fields[0].profile.clone();
    fields[0] = SlotField::zonal(unit_axis(5, 0), Rc::new(move |s: f64| f(s) + 0.2 * s * s));
    let r = ev.critical(&fields)?;
    println!("perturbed: lhs {:.10e} rhs {:.10e} gap {:.4e}", r.lhs, r.rhs, r.gap);
    Ok(())
}
