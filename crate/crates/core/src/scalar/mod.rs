//! Exact coefficient arithmetic.

mod constants;
mod laurent;
pub(crate) mod parse;
mod spec;

pub use constants::{
    a_exponent, bar, c_i, constants, neg_q_pow, q, q_diff, q_frac, q_pow, quantum_integer, t_v,
    unknot_value, ConstantsTable,
};
pub use laurent::{Coeff, Laurent, LaurentScalar};
pub use parse::parse_laurent;
pub use spec::{cyclotomic, lift_int_coeffs, scale_variable, specialize, SpecScalar};
