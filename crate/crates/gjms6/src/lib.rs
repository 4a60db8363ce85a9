//! Sixth-order GJMS operator on model geometries: the operator itself, its six
//! conformally covariant boundary operators, the associated energy form,
//! Dirichlet-to-Neumann identities and sharp Sobolev trace inequalities.
//!
//! Exact rational arithmetic is used wherever the model admits closed forms;
//! curved-model integrals fall back to spectral quadrature per boundary mode.

pub mod boundary_ops;
pub mod cli_report;
pub mod conformal;
pub mod energy_form;
pub mod error;
pub mod exact_poly;
pub mod fractional;
pub mod gjms6;
pub mod mode_solver;
pub mod model_geometry;
pub mod rational;
pub mod trace_ineq;

pub use error::{Gjms6Error, Result};
pub use model_geometry::{ModelGeometry, ModelKind};
pub use rational::Q;
