//! Build diagrams from exact polylines in the plane.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::diagram::{Arc, Dir, EdgeOrder, Node, WebDiagram};
use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pt {
    pub x: Q,
    pub y: Q,
}

impl Pt {
    pub fn new(x: Q, y: Q) -> Pt {
        Pt { x, y }
    }

    pub fn int(x: i64, y: i64) -> Pt {
        Pt { x: q(x, 1), y: q(y, 1) }
    }

    /// Point on the unit circle at parameter `t = tan(θ/2)`; increasing `t` runs counterclockwise.
    pub fn on_circle(t: &Q) -> Pt {
        let t2 = t * t;
        let den = Q::one() + &t2;
        Pt { x: (Q::one() - &t2) / &den, y: (t * q(2, 1)) / den }
    }

    pub fn scaled(&self, s: &Q) -> Pt {
        Pt { x: &self.x * s, y: &self.y * s }
    }

    fn sub(&self, o: &Pt) -> Pt {
        Pt { x: &self.x - &o.x, y: &self.y - &o.y }
    }

    fn lerp(&self, o: &Pt, t: &Q) -> Pt {
        Pt { x: &self.x + (&o.x - &self.x) * t, y: &self.y + (&o.y - &self.y) * t }
    }
}

fn cross(a: &Pt, b: &Pt) -> Q {
    &a.x * &b.y - &a.y * &b.x
}

fn half(d: &Pt) -> u8 {
    if d.y.is_positive() || (d.y.is_zero() && d.x.is_positive()) {
        0
    } else {
        1
    }
}

/// Counterclockwise angular order of direction vectors, starting from the positive x axis.
pub fn angle_cmp(a: &Pt, b: &Pt) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

#[derive(Clone, Debug)]
pub enum SKind {
    /// `base_path` names the path whose end becomes the base port.
    Sink { base_path: Option<usize> },
    Source { base_path: Option<usize> },
    /// On the unit circle at parameter `t`.
    Endpoint { edge: usize, state: u8, t: Q },
    Blob { base_path: Option<usize> },
}

#[derive(Clone, Debug)]
pub struct SNode {
    pub pos: Pt,
    pub kind: SKind,
}

/// A polyline from node to node; `ranks[s]` orders segment `s` at crossings (higher is over).
#[derive(Clone, Debug)]
pub struct SPath {
    pub from: usize,
    pub to: usize,
    pub via: Vec<Pt>,
    pub ranks: Vec<i64>,
    pub layer: Option<u32>,
}

/// A closed polygon; segment `s` runs from `pts[s]` to `pts[s+1]` (cyclically).
#[derive(Clone, Debug)]
pub struct SLoop {
    pub pts: Vec<Pt>,
    pub ranks: Vec<i64>,
    pub layer: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct Sketch {
    pub n: usize,
    pub ideal_points: usize,
    pub ordering: Vec<EdgeOrder>,
    pub nodes: Vec<SNode>,
    pub paths: Vec<SPath>,
    pub loops: Vec<SLoop>,
    pub pairs: Vec<(usize, usize)>,
}

struct Seg {
    a: Pt,
    b: Pt,
    rank: i64,
    /// `(curve, index)`; curves are paths then loops.
    curve: usize,
    index: usize,
}

struct Event {
    t: Q,
    node: usize,
    over: bool,
}

fn degenerate(msg: &str) -> Error {
    Error::Precondition(format!("sketch not in general position: {msg}"))
}

impl Sketch {
    pub fn new(n: usize, ideal_points: usize) -> Sketch {
        Sketch {
            n,
            ideal_points,
            ordering: vec![EdgeOrder::Negative; ideal_points],
            nodes: Vec::new(),
            paths: Vec::new(),
            loops: Vec::new(),
            pairs: Vec::new(),
        }
    }

    pub fn node(&mut self, pos: Pt, kind: SKind) -> usize {
        self.nodes.push(SNode { pos, kind });
        self.nodes.len() - 1
    }

    /// Parameter of the `j`-th of `m` evenly spaced slots on `edge`, counterclockwise.
    pub fn slot(&self, edge: usize, j: usize, m: usize) -> Q {
        q(edge as i64, 1) - q(self.ideal_points as i64, 2) + q(j as i64 + 1, m as i64 + 1)
    }

    pub fn endpoint(&mut self, edge: usize, state: u8, t: Q) -> usize {
        let pos = Pt::on_circle(&t);
        self.node(pos, SKind::Endpoint { edge, state, t })
    }

    pub fn path(&mut self, from: usize, to: usize, via: Vec<Pt>, rank: i64) -> usize {
        let ranks = vec![rank; via.len() + 1];
        self.paths.push(SPath { from, to, via, ranks, layer: None });
        self.paths.len() - 1
    }

    pub fn closed(&mut self, pts: Vec<Pt>, ranks: Vec<i64>) {
        self.loops.push(SLoop { pts, ranks, layer: None });
    }

    fn polyline(&self, i: usize) -> Vec<Pt> {
        let p = &self.paths[i];
        let mut pts = vec![self.nodes[p.from].pos.clone()];
        pts.extend(p.via.iter().cloned());
        pts.push(self.nodes[p.to].pos.clone());
        pts
    }

    fn segments(&self) -> Result<(Vec<Seg>, Vec<usize>)> {
        let mut segs = Vec::new();
        let mut counts = Vec::new();
        for (i, p) in self.paths.iter().enumerate() {
            let pts = self.polyline(i);
            if p.ranks.len() != pts.len() - 1 {
                return Err(degenerate("path rank list has the wrong length"));
            }
            for s in 0..pts.len() - 1 {
                segs.push(Seg { a: pts[s].clone(), b: pts[s + 1].clone(), rank: p.ranks[s], curve: i, index: s });
            }
            counts.push(pts.len() - 1);
        }
        for (j, l) in self.loops.iter().enumerate() {
            let m = l.pts.len();
            if m < 3 || l.ranks.len() != m {
                return Err(degenerate("loop needs at least three points and one rank per segment"));
            }
            for s in 0..m {
                let curve = self.paths.len() + j;
                segs.push(Seg { a: l.pts[s].clone(), b: l.pts[(s + 1) % m].clone(), rank: l.ranks[s], curve, index: s });
            }
            counts.push(m);
        }
        for s in &segs {
            if s.a == s.b {
                return Err(degenerate("zero-length segment"));
            }
        }
        Ok((segs, counts))
    }

    fn adjacent(&self, x: &Seg, y: &Seg, counts: &[usize]) -> bool {
        if x.curve != y.curve {
            return false;
        }
        let m = counts[x.curve];
        let closed = x.curve >= self.paths.len();
        let d = x.index.abs_diff(y.index);
        d == 1 || (closed && d == m - 1)
    }

    fn is_node_point(&self, p: &Pt) -> bool {
        self.nodes.iter().any(|n| &n.pos == p)
    }

    pub fn build(&self) -> Result<WebDiagram> {
        let (segs, counts) = self.segments()?;
        let mut d = WebDiagram::empty(self.n, self.ideal_points);
        d.ordering = self.ordering.clone();
        // crossings
        let mut events: Vec<Vec<(usize, Event)>> = (0..counts.len()).map(|_| Vec::new()).collect();
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                let (x, y) = (&segs[i], &segs[j]);
                if self.adjacent(x, y, &counts) {
                    continue;
                }
                let (dx, dy) = (x.b.sub(&x.a), y.b.sub(&y.a));
                let den = cross(&dx, &dy);
                let w = y.a.sub(&x.a);
                if den.is_zero() {
                    if cross(&w, &dx).is_zero() {
                        let len = &dx.x * &dx.x + &dx.y * &dx.y;
                        let proj = |p: &Pt| {
                            let r = p.sub(&x.a);
                            (&r.x * &dx.x + &r.y * &dx.y) / &len
                        };
                        let (s0, s1) = (proj(&y.a), proj(&y.b));
                        let (lo, hi) = if s0 < s1 { (s0, s1) } else { (s1, s0) };
                        if hi > Q::zero() && lo < Q::one() {
                            return Err(degenerate("overlapping collinear segments"));
                        }
                        let touch = if hi.is_zero() { Some(x.a.clone()) } else if lo == Q::one() { Some(x.b.clone()) } else { None };
                        if let Some(p) = touch {
                            if !self.is_node_point(&p) {
                                return Err(degenerate("segments touch end to end"));
                            }
                        }
                    }
                    continue;
                }
                let ta = cross(&w, &dy) / &den;
                let tb = cross(&w, &dx) / &den;
                let unit = Q::zero()..=Q::one();
                if !unit.contains(&ta) || !unit.contains(&tb) {
                    continue;
                }
                let at_end = |t: &Q| t.is_zero() || t == &Q::one();
                if at_end(&ta) || at_end(&tb) {
                    let p = x.a.lerp(&x.b, &ta);
                    if at_end(&ta) && at_end(&tb) && self.is_node_point(&p) {
                        continue;
                    }
                    return Err(degenerate("a segment passes through a vertex or corner"));
                }
                if x.rank == y.rank {
                    return Err(degenerate("crossing between segments of equal rank"));
                }
                let node = d.add_node(Node::Crossing { over_in: 0, under_in: 1 });
                let x_over = x.rank > y.rank;
                let (dov, dun) = if x_over { (dx.clone(), dy.clone()) } else { (dy.clone(), dx.clone()) };
                let under_in = if cross(&dov, &dun).is_positive() { 1 } else { 3 };
                d.nodes[node] = Node::Crossing { over_in: 0, under_in };
                events[x.curve].push((x.index, Event { t: ta, node, over: x_over }));
                events[y.curve].push((y.index, Event { t: tb, node, over: !x_over }));
            }
        }
        for ev in events.iter_mut() {
            ev.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.t.cmp(&b.1.t)));
            if ev.windows(2).any(|w| w[0].0 == w[1].0 && w[0].1.t == w[1].1.t) {
                return Err(degenerate("three segments meet at one point"));
            }
        }
        // node ports
        let offset = d.nodes.len();
        let mut ends: Vec<Vec<(Pt, usize, bool)>> = vec![Vec::new(); self.nodes.len()];
        for (i, p) in self.paths.iter().enumerate() {
            let pts = self.polyline(i);
            let m = pts.len();
            ends[p.from].push((pts[1].sub(&pts[0]), i, false));
            ends[p.to].push((pts[m - 2].sub(&pts[m - 1]), i, true));
        }
        let mut port_of: BTreeMap<(usize, bool), (usize, usize)> = BTreeMap::new();
        for (v, sn) in self.nodes.iter().enumerate() {
            let list = &mut ends[v];
            list.sort_by(|a, b| angle_cmp(&a.0, &b.0));
            for w in list.windows(2) {
                if angle_cmp(&w[0].0, &w[1].0) == Ordering::Equal {
                    return Err(degenerate("two paths leave a node in the same direction"));
                }
            }
            let base_path = match &sn.kind {
                SKind::Sink { base_path } | SKind::Source { base_path } | SKind::Blob { base_path } => *base_path,
                SKind::Endpoint { .. } => None,
            };
            if let Some(bp) = base_path {
                let Some(k) = list.iter().position(|e| e.1 == bp) else {
                    return Err(degenerate("base path does not meet its node"));
                };
                list.rotate_left(k);
            }
            let arity = list.len();
            let node = match &sn.kind {
                SKind::Sink { .. } => {
                    if list.iter().any(|e| !e.2) {
                        return Err(degenerate("a path leaves a sink"));
                    }
                    Node::Sink { arity, base: 0 }
                }
                SKind::Source { .. } => {
                    if list.iter().any(|e| e.2) {
                        return Err(degenerate("a path enters a source"));
                    }
                    Node::Source { arity, base: 0 }
                }
                SKind::Blob { .. } => Node::Blob { arity },
                SKind::Endpoint { edge, state, .. } => {
                    if arity != 1 {
                        return Err(degenerate("an endpoint must meet exactly one path"));
                    }
                    let dir = if list[0].2 { Dir::In } else { Dir::Out };
                    Node::Endpoint { edge: *edge, height: 0, state: *state, dir }
                }
            };
            let id = d.add_node(node);
            debug_assert_eq!(id, offset + v);
            for (k, e) in list.iter().enumerate() {
                port_of.insert((e.1, e.2), (id, k));
            }
        }
        // heights from positions along each edge
        let mut per_edge: Vec<Vec<(Q, usize)>> = vec![Vec::new(); self.ideal_points];
        for (v, sn) in self.nodes.iter().enumerate() {
            if let SKind::Endpoint { edge, t, .. } = &sn.kind {
                if *edge >= self.ideal_points {
                    return Err(degenerate("endpoint on a missing edge"));
                }
                per_edge[*edge].push((t.clone(), offset + v));
            }
        }
        let ccw: Vec<Vec<usize>> = per_edge
            .into_iter()
            .map(|mut l| {
                l.sort();
                l.into_iter().map(|x| x.1).collect()
            })
            .collect();
        d.set_heights_from_ccw(&ccw);
        // arcs
        let attach = |node: usize, over: bool, arriving: bool| -> (usize, usize) {
            let base = if over { 0 } else { under_port(&d, node) };
            (node, if arriving { base } else { (base + 2) % 4 })
        };
        let mut arcs = Vec::new();
        let mut free = Vec::new();
        for (i, p) in self.paths.iter().enumerate() {
            let mut tail = port_of[&(i, false)];
            for (_, ev) in &events[i] {
                arcs.push(Arc { tail, head: attach(ev.node, ev.over, true), layer: p.layer });
                tail = attach(ev.node, ev.over, false);
            }
            arcs.push(Arc { tail, head: port_of[&(i, true)], layer: p.layer });
        }
        for (j, l) in self.loops.iter().enumerate() {
            let ev = &events[self.paths.len() + j];
            if ev.is_empty() {
                free.push(l.layer);
                continue;
            }
            for k in 0..ev.len() {
                let (a, b) = (&ev[k].1, &ev[(k + 1) % ev.len()].1);
                arcs.push(Arc { tail: attach(a.node, a.over, false), head: attach(b.node, b.over, true), layer: l.layer });
            }
        }
        d.arcs = arcs;
        d.loops.extend(free);
        d.pairs = self.pairs.iter().map(|(s, t)| (offset + s, offset + t)).collect();
        Ok(d)
    }
}

fn under_port(d: &WebDiagram, node: usize) -> usize {
    match d.nodes[node] {
        Node::Crossing { under_in, .. } => under_in as usize,
        _ => unreachable!(),
    }
}
