//! Linear combinations of diagrams, the defining relations as rewrites, and closed evaluation.

mod eval;
mod expr;
mod relations;

pub use eval::{
    eliminate_pair, eliminate_vertices, evaluate_closed, evaluate_links, pair_coefficient, smooth_crossing,
    standard_position, switch_crossing, LinkEvaluator, Mode,
};
pub use expr::{stack_expr, SkeinExpression};
pub use relations::{apply_relation, rewrite, Relation, Site};
