//! Exact stated SL_n skein calculus.

pub mod braiding;
pub mod corpus;
pub mod error;
pub mod linalg;
pub mod par;
pub mod perm;
pub mod qmatrix;
pub mod scalar;
pub mod signmap;
pub mod skein;
pub mod splitting;
pub mod verify;
pub mod web;

pub use error::{Error, Result};
