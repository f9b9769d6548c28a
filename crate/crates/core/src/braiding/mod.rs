//! The R-matrix, its consistency checks, root-of-unity tables and a state-sum oracle.

mod coeffs;
mod rmatrix;
mod statesum;

pub use coeffs::{boundary_coeffs, BoundaryCoeffTable};
pub use rmatrix::{check_hecke, check_ybe, r_entry, HeckeReport, RMatrix};
pub use statesum::{state_sum_eval, state_sum_with, Morse, Slice};
