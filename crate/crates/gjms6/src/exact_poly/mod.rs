//! Exact rational calculus: polynomials, half-space modes, moments, series.

pub mod curvature;
pub mod exp_mode;
pub mod moments;
pub mod multipoly;
pub mod radial;
pub mod series;

pub use curvature::{conformally_flat_curvature, ConformalCurvature};
pub use exp_mode::{half_line_integral, mode_apply, ExpPolyMode, ModeOp, T_VAR, Y_VAR};
pub use moments::{ball_integral, sphere_integral, sphere_volume, MomentScalar, MomentUnit};
pub use multipoly::{laplacian, Mono, MultiPoly};
pub use radial::RadialPoly;
pub use series::{sin_cos_at, Scalar, Series};
