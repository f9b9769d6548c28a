use serde::Serialize;

use super::diagram::{crossing_sign, Dir, Node, WebDiagram};
use crate::error::{Error, Result};
use crate::perm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramStats {
    pub e: usize,
    pub t: usize,
    pub p: usize,
    pub w: i64,
    #[serde(rename = "K")]
    pub k: usize,
    /// `tau[c] = c'` on 0-based colors; absent when sinks and sources cannot be paired.
    pub tau: Option<Vec<usize>>,
    pub tau_length: Option<usize>,
}

/// Arc that continues the strand through the head of `arc`, if the head is a crossing or pass.
pub fn strand_next(d: &WebDiagram, pt: &super::diagram::PortTable, arc: usize) -> Option<usize> {
    let (v, p) = d.arcs[arc].head;
    let out = match d.nodes[v] {
        Node::Crossing { .. } => (p + 2) % 4,
        Node::Pass => 1,
        _ => return None,
    };
    pt.arc_at((v, out))
}

/// Closed strand components, each as its list of arcs starting from the lowest arc id.
pub fn closed_strands(d: &WebDiagram) -> Vec<Vec<usize>> {
    let pt = d.ports();
    let mut seen = vec![false; d.arcs.len()];
    let mut out = Vec::new();
    let mut has_pred = vec![false; d.arcs.len()];
    for a in 0..d.arcs.len() {
        if let Some(b) = strand_next(d, &pt, a) {
            has_pred[b] = true;
        }
    }
    for a in 0..d.arcs.len() {
        if has_pred[a] {
            continue;
        }
        let mut x = Some(a);
        while let Some(y) = x {
            seen[y] = true;
            x = strand_next(d, &pt, y);
        }
    }
    for a in 0..d.arcs.len() {
        if seen[a] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut y = a;
        while !seen[y] {
            seen[y] = true;
            cyc.push(y);
            y = strand_next(d, &pt, y).expect("closed strand");
        }
        out.push(cyc);
    }
    out
}

pub fn writhe(d: &WebDiagram) -> i64 {
    d.nodes
        .iter()
        .map(|n| match n {
            Node::Crossing { over_in, under_in } => crossing_sign(*over_in, *under_in),
            _ => 0,
        })
        .sum()
}

/// The permutation `τ` read off by coloring half-edges at paired sinks and sources.
pub fn tau(d: &WebDiagram) -> Result<Vec<usize>> {
    let pairs = d.pairing()?;
    let n = d.n;
    let pt = d.ports();
    let mut sink_index = vec![usize::MAX; d.nodes.len()];
    for (i, (s, _)) in pairs.iter().enumerate() {
        sink_index[*s] = i;
    }
    let mut tau = vec![usize::MAX; n * pairs.len()];
    for (i, (_, src)) in pairs.iter().enumerate() {
        let Node::Source { arity, base } = d.nodes[*src] else {
            return Err(Error::Precondition("pair does not name a source".into()));
        };
        for j in 1..=arity {
            let port = (base + j - 1) % arity;
            let mut a = pt.arc_at((*src, port)).ok_or_else(|| Error::Precondition("dangling source port".into()))?;
            loop {
                match strand_next(d, &pt, a) {
                    Some(b) => a = b,
                    None => break,
                }
            }
            let (v, p) = d.arcs[a].head;
            let Node::Sink { arity: sa, base: sb } = d.nodes[v] else {
                return Err(Error::Precondition("a strand from a source does not end at a sink".into()));
            };
            let jj = (p + sa - sb) % sa + 1;
            let from = i * n + n + 1 - j;
            let to = sink_index[v] * n + jj;
            tau[from - 1] = to - 1;
        }
    }
    if !perm::is_perm(&tau) {
        return Err(Error::Precondition("half-edge coloring is not a permutation".into()));
    }
    Ok(tau)
}

pub fn stats(d: &WebDiagram) -> DiagramStats {
    let mut s = DiagramStats { e: 0, t: 0, p: 0, w: writhe(d), k: 0, tau: None, tau_length: None };
    for n in &d.nodes {
        match n {
            Node::Endpoint { dir, .. } => {
                s.e += 1;
                if *dir == Dir::In {
                    s.t += 1;
                }
            }
            Node::Sink { .. } | Node::Source { .. } => s.p += 1,
            _ => {}
        }
    }
    s.k = closed_strands(d).len() + d.loops.len();
    if let Ok(t) = tau(d) {
        s.tau_length = Some(perm::length(&t));
        s.tau = Some(t);
    }
    s
}
