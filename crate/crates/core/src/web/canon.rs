use std::collections::{BTreeMap, HashMap, VecDeque};

use super::diagram::{Dir, Node, WebDiagram};
use super::map::MapView;
use crate::error::Result;

/// A complete isomorphism invariant of the combinatorial map (layer tags ignored;
/// split components are compared as an unordered family).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonCode(pub Vec<i64>);

const HUB: usize = usize::MAX;

struct Labeler<'a> {
    d: &'a WebDiagram,
    m: &'a MapView,
}

impl Labeler<'_> {
    fn arity(&self, v: usize) -> usize {
        if v == HUB {
            self.m.hub.len()
        } else {
            self.d.nodes[v].arity()
        }
    }

    /// Offset of dart `x` from dart `entry` in the rotation of their common vertex.
    fn offset(&self, entry: usize, x: usize) -> usize {
        if self.m.is_hub_dart(x) {
            let k = self.m.hub.len();
            (self.m.hub_index(x).unwrap() + k - self.m.hub_index(entry).unwrap()) % k
        } else {
            let a = self.arity(self.m.dart_node[x]);
            (self.m.dart_port[x] + a - self.m.dart_port[entry]) % a
        }
    }

    fn label(&self, v: usize, entry: usize, out: &mut Vec<i64>) {
        if v == HUB {
            let k = self.m.hub.len();
            let start = self.m.hub_index(entry).unwrap();
            out.push(6);
            out.push(k as i64);
            for i in 0..k {
                let x = self.m.hub[(start + i) % k];
                if let Node::Endpoint { edge, height, state, dir } = &self.d.nodes[self.m.dart_node[x]] {
                    out.extend([*edge as i64, *height as i64, *state as i64, (*dir == Dir::In) as i64]);
                }
            }
            return;
        }
        let rel = |p: usize| ((p + self.arity(v) - self.m.dart_port[entry]) % self.arity(v)) as i64;
        match &self.d.nodes[v] {
            Node::Crossing { over_in, under_in } => out.extend([1, rel(*over_in as usize), rel(*under_in as usize)]),
            Node::Sink { arity, base } => out.extend([2, *arity as i64, rel(*base)]),
            Node::Source { arity, base } => out.extend([3, *arity as i64, rel(*base)]),
            Node::Pass => out.extend([4, rel(0)]),
            Node::Blob { arity } => out.extend([5, *arity as i64]),
            Node::Endpoint { .. } => unreachable!("endpoints belong to the hub"),
        }
    }

    /// Breadth-first code from a root dart; also returns the discovery index of every node.
    fn rooted(&self, root: usize) -> (Vec<i64>, HashMap<usize, usize>) {
        let mut index: HashMap<usize, usize> = HashMap::new();
        let mut entry: Vec<usize> = Vec::new();
        let mut queue = VecDeque::new();
        let v0 = self.m.vertex(root);
        index.insert(v0, 0);
        entry.push(root);
        queue.push_back(v0);
        let mut code = Vec::new();
        while let Some(v) = queue.pop_front() {
            let e = entry[index[&v]];
            self.label(v, e, &mut code);
            let mut x = e;
            loop {
                let y = self.m.alpha[x];
                let w = self.m.vertex(y);
                let wi = match index.get(&w) {
                    Some(&i) => i,
                    None => {
                        let i = entry.len();
                        index.insert(w, i);
                        entry.push(y);
                        queue.push_back(w);
                        i
                    }
                };
                code.push(wi as i64);
                code.push(self.offset(entry[wi], y) as i64);
                x = self.m.sigma[x];
                if x == e {
                    break;
                }
            }
        }
        (code, index)
    }
}

/// Canonical code of a diagram.
pub fn canonical_code(d: &WebDiagram) -> Result<CanonCode> {
    let m = MapView::new(d)?;
    let lab = Labeler { d, m: &m };
    let mut out = vec![d.n as i64, d.ideal_points as i64];
    out.extend(d.ordering.iter().map(|o| matches!(o, super::diagram::EdgeOrder::Positive) as i64));
    out.push(d.loops.len() as i64);
    let mut node_ids: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut parts: Vec<(Vec<i64>, HashMap<usize, usize>)> = Vec::new();
    let mut hub_part = None;
    for comp in m.components() {
        if m.is_hub_dart(comp[0]) || comp.iter().any(|&x| m.is_hub_dart(x)) {
            hub_part = Some(lab.rooted(m.hub[0]));
            continue;
        }
        let best = comp.iter().map(|&r| lab.rooted(r)).min_by(|a, b| a.0.cmp(&b.0)).unwrap();
        parts.push(best);
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    if let Some(h) = hub_part {
        parts.insert(0, h);
    }
    for (ci, (code, index)) in parts.iter().enumerate() {
        out.push(-1);
        out.push(code.len() as i64);
        out.extend(code);
        for (&v, &i) in index {
            node_ids.insert(v, (ci, i));
        }
    }
    let mut pairs: Vec<(usize, usize, usize, usize)> = d
        .pairs
        .iter()
        .map(|(s, t)| {
            let (a, b) = node_ids[s];
            let (c, e) = node_ids[t];
            (a, b, c, e)
        })
        .collect();
    pairs.sort();
    out.push(-2);
    for p in pairs {
        out.extend([p.0 as i64, p.1 as i64, p.2 as i64, p.3 as i64]);
    }
    Ok(CanonCode(out))
}

/// Whether two diagrams have the same canonical code.
pub fn isomorphic(a: &WebDiagram, b: &WebDiagram) -> Result<bool> {
    Ok(canonical_code(a)? == canonical_code(b)?)
}

/// Renumber nodes, ports and arcs in canonical discovery order, so that
/// diagrams with equal codes become equal.
pub fn canonical_form(d: &WebDiagram) -> Result<WebDiagram> {
    let m = MapView::new(d)?;
    let lab = Labeler { d, m: &m };
    let mut parts: Vec<(Vec<i64>, Vec<(usize, usize)>)> = Vec::new();
    let mut hub_part = None;
    for comp in m.components() {
        let roots: Vec<usize> = if comp.iter().any(|&x| m.is_hub_dart(x)) { vec![m.hub[0]] } else { comp.clone() };
        let best = roots
            .iter()
            .map(|&r| {
                let (c, _) = lab.rooted(r);
                (c, r)
            })
            .min_by(|a, b| a.0.cmp(&b.0))
            .unwrap();
        let entries = discovery(&lab, best.1);
        if m.is_hub_dart(best.1) {
            hub_part = Some((best.0, entries));
        } else {
            parts.push((best.0, entries));
        }
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    if let Some(h) = hub_part {
        parts.insert(0, h);
    }
    let mut order: Vec<(usize, usize)> = Vec::new();
    for (_, entries) in &parts {
        for &(v, e) in entries {
            if v == HUB {
                for &x in m.hub.iter().rev() {
                    order.push((m.dart_node[x], 0));
                }
            } else {
                order.push((v, m.dart_port[e]));
            }
        }
    }
    let mut map = vec![(usize::MAX, 0); d.nodes.len()];
    for (new, &(old, shift)) in order.iter().enumerate() {
        map[old] = (new, shift);
    }
    let port = |(v, p): (usize, usize)| {
        let (nv, shift) = map[v];
        let a = d.nodes[v].arity();
        (nv, (p + a - shift) % a)
    };
    let mut out = WebDiagram { nodes: Vec::new(), arcs: Vec::new(), pairs: Vec::new(), ..d.clone() };
    for &(old, shift) in &order {
        let a = d.nodes[old].arity();
        let r = |p: usize| (p + a - shift) % a;
        out.nodes.push(match d.nodes[old].clone() {
            Node::Crossing { over_in, under_in } => {
                Node::Crossing { over_in: r(over_in as usize) as u8, under_in: r(under_in as usize) as u8 }
            }
            Node::Sink { arity, base } => Node::Sink { arity, base: r(base) },
            Node::Source { arity, base } => Node::Source { arity, base: r(base) },
            other => other,
        });
    }
    out.arcs = d.arcs.iter().map(|a| super::diagram::Arc { tail: port(a.tail), head: port(a.head), layer: None }).collect();
    out.sort_arcs();
    out.pairs = d.pairs.iter().map(|(s, t)| (map[*s].0, map[*t].0)).collect();
    out.pairs.sort();
    out.loops = vec![None; d.loops.len()];
    Ok(out)
}

/// Nodes in discovery order from a root, with their entry darts. Passes keep port 0.
fn discovery(lab: &Labeler<'_>, root: usize) -> Vec<(usize, usize)> {
    let m = lab.m;
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut out: Vec<(usize, usize)> = Vec::new();
    let mut queue = VecDeque::new();
    let v0 = m.vertex(root);
    seen.insert(v0, 0);
    out.push((v0, root));
    queue.push_back(v0);
    while let Some(v) = queue.pop_front() {
        let e = out[seen[&v]].1;
        let mut x = e;
        loop {
            let y = m.alpha[x];
            let w = m.vertex(y);
            if !seen.contains_key(&w) {
                seen.insert(w, out.len());
                out.push((w, y));
                queue.push_back(w);
            }
            x = m.sigma[x];
            if x == e {
                break;
            }
        }
    }
    for (v, e) in out.iter_mut() {
        if *v != HUB && lab.d.nodes[*v] == Node::Pass {
            *e = m.dart(*v, 0);
        }
    }
    out
}
