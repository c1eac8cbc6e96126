//! The truncated graph product Fock space and the left and right vertex
//! actions on it.

mod operator;
mod space;

pub(crate) use operator::advance;
pub use operator::{
    apply_to_vacuum, lambda, reduced_operator, rho, safe_norm, safe_residual, tensor_vector,
    vacuum_state, FockOperator, CENTER_TOL,
};
pub use space::{FockSpace, DEFAULT_DIM_CAP};
