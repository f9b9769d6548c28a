//! Stated n-web diagrams in ideal polygons as rotation systems.

mod build;
mod canon;
mod diagram;
mod geom;
mod json;
mod map;
mod moves;
mod stack;
mod stats;
mod surgery;
mod validate;

pub use canon::{canonical_code, canonical_form, isomorphic, CanonCode};
pub use diagram::{crossing_sign, Arc, Dir, EdgeOrder, Node, PortRef, PortTable, WebDiagram};
pub use json::{diagram_from_json, diagram_from_value, diagram_to_json, diagram_to_value, FORMAT_VERSION};
pub use map::MapView;
pub use stats::{closed_strands, stats, strand_next, tau, writhe, DiagramStats};
pub use validate::{validate, Violation};
pub use geom::{angle_cmp, q, Pt, SKind, SLoop, SNode, SPath, Sketch, Q};
pub use build::{bigon_arc, braid_closure, from_morse, kinked_unknot, permutation_tangle, theta_web, unknot};
pub use stack::{layer_writhe, mutual_crossing_sum, relative_writhe, stack};
pub use surgery::{excise, region_boundary, splice, subdivide};
pub use moves::{
    apply_move, candidate_moves, kink, kink_sign, move_equivalent, poke, replay, slide, unkink, unpoke, unwrap, wrap,
    Move,
};
pub(crate) use moves::dissolve;
