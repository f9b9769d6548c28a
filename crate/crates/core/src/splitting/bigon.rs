//! The bigon dictionary: an arc from edge 0 (state `i`) to edge 1 (state `j`) is `u_{i,j}`,
//! and a stack of such arcs is their product read from the top down.

use std::collections::BTreeMap;

use super::SplitExpression;
use crate::error::{Error, Result};
use crate::qmatrix::{QElement, Ring, Tensor};
use crate::skein::SkeinExpression;
use crate::web::{closed_strands, strand_next, Dir, Node, WebDiagram};

fn not_elementary(msg: impl Into<String>) -> Error {
    Error::Precondition(format!("not a stack of elementary arcs: {}", msg.into()))
}

/// The word `[(i, j), …]` of a bigon diagram in stack form, top arc first.
pub fn stack_word(d: &WebDiagram) -> Result<Vec<(u8, u8)>> {
    if d.ideal_points != 2 {
        return Err(Error::Precondition(format!("the dictionary needs a bigon, not a {}-gon", d.ideal_points)));
    }
    if !d.loops.is_empty() || !closed_strands(d).is_empty() {
        return Err(not_elementary("closed components"));
    }
    if d.nodes.iter().any(|x| x.is_vertex() || matches!(x, Node::Blob { .. })) {
        return Err(not_elementary("vertices"));
    }
    let pt = d.ports();
    let mut strand_of = vec![usize::MAX; d.arcs.len()];
    // (state, height) at edge 0 and edge 1, per strand
    let mut ends: Vec<((u8, usize), (u8, usize))> = vec![];
    for x in d.edge_endpoints_ccw(0) {
        let Node::Endpoint { height, state, dir, .. } = d.nodes[x] else { unreachable!() };
        if dir != Dir::Out {
            return Err(not_elementary("an arc runs into edge 0"));
        }
        let s = ends.len();
        let mut a = pt.arc_at((x, 0)).ok_or_else(|| not_elementary("dangling endpoint"))?;
        loop {
            strand_of[a] = s;
            match strand_next(d, &pt, a) {
                Some(b) => a = b,
                None => break,
            }
        }
        let (v, _) = d.arcs[a].head;
        match d.nodes[v] {
            Node::Endpoint { edge: 1, height: h1, state: s1, .. } => ends.push(((state, height), (s1, h1))),
            _ => return Err(not_elementary("an arc does not run from edge 0 to edge 1")),
        }
    }
    if ends.len() != d.endpoints().count() / 2 || strand_of.iter().any(|&s| s == usize::MAX) {
        return Err(not_elementary("an arc does not run from edge 0 to edge 1"));
    }
    let mut order: Vec<usize> = (0..ends.len()).collect();
    order.sort_by(|&a, &b| ends[b].0 .1.cmp(&ends[a].0 .1));
    let mut rank = vec![0; ends.len()];
    for (r, &s) in order.iter().enumerate() {
        rank[s] = r;
    }
    let mut by_right: Vec<usize> = (0..ends.len()).collect();
    by_right.sort_by(|&a, &b| ends[b].1 .1.cmp(&ends[a].1 .1));
    if by_right != order {
        return Err(not_elementary("heights on the two edges disagree"));
    }
    for c in d.crossings() {
        let Node::Crossing { over_in, under_in } = d.nodes[c] else { unreachable!() };
        let so = strand_of[pt.arc_at((c, over_in as usize)).expect("crossing port")];
        let su = strand_of[pt.arc_at((c, under_in as usize)).expect("crossing port")];
        if so == su {
            return Err(not_elementary("an arc crosses itself"));
        }
        if rank[so] > rank[su] {
            return Err(not_elementary("a lower arc passes over a higher one"));
        }
    }
    Ok(order.iter().map(|&s| (ends[s].0 .0, ends[s].1 .0)).collect())
}

pub fn bigon_diagram_to_oq(d: &WebDiagram) -> Result<QElement> {
    let n = d.n;
    let word: Vec<u8> = stack_word(d)?.into_iter().map(|(i, j)| ((i as usize - 1) * n + (j as usize - 1)) as u8).collect();
    QElement::from_word(n, Ring::SLn, &word)
}

/// The element of `O_q(SL_n)` represented by a bigon expression in stack form.
pub fn bigon_to_oq(expr: &SkeinExpression) -> Result<QElement> {
    let mut out = QElement::zero(expr.n, Ring::SLn);
    for (d, c) in expr.terms() {
        out = out.add(&bigon_diagram_to_oq(d)?.scale(c))?;
    }
    Ok(out)
}

/// A split bigon expression read in `O_q(SL_n) ⊗ O_q(SL_n)`, right piece first.
pub fn split_to_tensor(s: &SplitExpression) -> Result<Tensor> {
    let mut parts = BTreeMap::new();
    for (a, b, c) in s.terms() {
        let t = Tensor::pair(&bigon_diagram_to_oq(a)?, &bigon_diagram_to_oq(b)?);
        for (k, x) in t.parts {
            let e: &mut crate::scalar::LaurentScalar = parts.entry(k.clone()).or_default();
            e.add_assign_ref(&(&x * c));
            if e.is_zero() {
                parts.remove(&k);
            }
        }
    }
    Ok(Tensor { n: s.n, ring: Ring::SLn, parts })
}
