//! The quantized coordinate rings `O_q(M(n))` and `O_q(SL_n)`.

mod algebra;
mod hopf;
mod rules;
mod sl;
mod word;

pub use algebra::{Combo, Mono, QAlgebra, QElement, Ring};
pub use hopf::{
    antipode, antipode_generator, coproduct, counit, det_q, det_q_columns, quantum_minor, Tensor,
};
pub use rules::{rtt_relations, RuleSet};
pub use sl::sl_equal;
pub use word::{format_monomial, format_qelement, parse_qelement};
