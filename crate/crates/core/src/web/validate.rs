use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::diagram::{Node, WebDiagram};
use super::map::MapView;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.detail)
    }
}

pub const VERTEX_ARITY: &str = "vertex arity";
pub const CROSSING_PORTS: &str = "crossing ports";
pub const PORT_USAGE: &str = "port usage";
pub const ORIENTATION: &str = "orientation";
pub const ENDPOINT_EDGE: &str = "endpoint edge";
pub const STATE_RANGE: &str = "state range";
pub const HEIGHT_RANKS: &str = "height ranks";
pub const PARITY: &str = "parity e ≡ n·p (mod 2)";
pub const PLANARITY: &str = "planarity";
pub const ORDERING: &str = "ordering";
pub const PAIRING: &str = "pairing";

/// Every violated structural invariant; empty means valid.
pub fn validate(d: &WebDiagram) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |rule: &'static str, detail: String| out.push(Violation { rule, detail });
    if d.ordering.len() != d.ideal_points {
        push(ORDERING, format!("{} conventions for {} edges", d.ordering.len(), d.ideal_points));
    }
    let (mut e, mut p) = (0usize, 0usize);
    let mut heights: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, node) in d.nodes.iter().enumerate() {
        match node {
            Node::Sink { arity, base } | Node::Source { arity, base } => {
                p += 1;
                if *arity != d.n {
                    push(VERTEX_ARITY, format!("node {i} has {arity} ports, expected {}", d.n));
                }
                if *base >= (*arity).max(1) {
                    push(VERTEX_ARITY, format!("node {i} base port {base} out of range"));
                }
            }
            Node::Crossing { over_in, under_in } => {
                if *over_in > 3 || *under_in > 3 || (over_in + 1) % 4 != *under_in && (under_in + 1) % 4 != *over_in {
                    push(CROSSING_PORTS, format!("node {i} has strands entering at {over_in} and {under_in}"));
                }
            }
            Node::Endpoint { edge, height, state, .. } => {
                e += 1;
                if *edge >= d.ideal_points {
                    push(ENDPOINT_EDGE, format!("node {i} lies on edge {edge} of a {}-gon", d.ideal_points));
                } else {
                    heights.entry(*edge).or_default().push(*height);
                }
                if *state == 0 || *state as usize > d.n {
                    push(STATE_RANGE, format!("node {i} has state {state}"));
                }
            }
            Node::Pass | Node::Blob { .. } => {}
        }
    }
    for (edge, mut hs) in heights {
        hs.sort();
        if hs.iter().enumerate().any(|(k, &h)| h != k + 1) {
            push(HEIGHT_RANKS, format!("edge {edge} heights {hs:?}"));
        }
    }
    if e % 2 != (d.n * p) % 2 {
        push(PARITY, format!("e = {e}, n = {}, p = {p}", d.n));
    }
    let mut used: Vec<Vec<usize>> = d.nodes.iter().map(|n| vec![0; n.arity()]).collect();
    let mut ports_ok = true;
    for (k, a) in d.arcs.iter().enumerate() {
        for (end, want_in) in [(a.tail, false), (a.head, true)] {
            match used.get_mut(end.0).and_then(|r| r.get_mut(end.1)) {
                Some(c) => *c += 1,
                None => {
                    ports_ok = false;
                    push(PORT_USAGE, format!("arc {k} names missing port {end:?}"));
                    continue;
                }
            }
            if let Some(is_in) = d.nodes[end.0].is_in_port(end.1) {
                if is_in != want_in {
                    push(ORIENTATION, format!("arc {k} {} at port {end:?}", if want_in { "ends" } else { "starts" }));
                }
            }
        }
    }
    for (i, row) in used.iter().enumerate() {
        for (port, &c) in row.iter().enumerate() {
            if c != 1 {
                ports_ok = false;
                push(PORT_USAGE, format!("port ({i}, {port}) used {c} times"));
            }
        }
    }
    if ports_ok {
        if let Ok(m) = MapView::new(d) {
            let defect = m.euler_defect();
            if defect != 0 {
                push(PLANARITY, format!("Euler characteristic off by {defect}"));
            }
        }
    }
    for (s, t) in &d.pairs {
        let ok = matches!(d.nodes.get(*s), Some(Node::Sink { .. })) && matches!(d.nodes.get(*t), Some(Node::Source { .. }));
        if !ok {
            push(PAIRING, format!("pair ({s}, {t}) is not a sink/source pair"));
        }
    }
    out
}
