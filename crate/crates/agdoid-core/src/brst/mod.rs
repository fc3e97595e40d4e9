//! Ghost phase space and the rank-one BRST charge over the oper algebroids of order 2 and 3.

mod charge;
mod ghost;

pub use charge::{
    brst_action, build_omega, build_omega_in, from_parts, nilpotency_check, omega_square, quadratic_coefficient, BRSTCharge, Block,
    NilpotencyReport,
};
pub use ghost::GhostPack;
