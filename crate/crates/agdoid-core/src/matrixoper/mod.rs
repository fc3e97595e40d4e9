//! Companion-form connections, the matrix lift of sections and the W₃ curvature check.

mod gauge;
mod lift;
mod matrix;
mod w3;

pub use gauge::{abar_matrix, curvature, gauge_variation};
pub use lift::{matrix_bracket_oracle, oper_matrix, solve_oper_lift, OperLift};
pub use matrix::MatrixPoly;
pub use w3::{verify_w3_curvature, CurvatureReport};
