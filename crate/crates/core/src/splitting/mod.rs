//! Splitting polygons along ideal arcs, the monogon map and the bigon dictionary.
//!
//! Ideal point `p` sits at the start of edge `p`, so edge `e` runs counterclockwise
//! from ideal point `e` to ideal point `e + 1`.

mod bigon;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::LaurentScalar;
use crate::skein::SkeinExpression;
use crate::web::{
    canonical_code, canonical_form, diagram_to_value, CanonCode, Dir, EdgeOrder, MapView, Node, PortRef, WebDiagram,
};

pub use bigon::{bigon_diagram_to_oq, bigon_to_oq, split_to_tensor, stack_word};

/// An ideal arc from ideal point `from` to ideal point `to`.
///
/// Without `via` the arc runs just inside the boundary edges `to, …, from - 1`, crossing
/// every strand that ends there. With `via` it crosses the listed arcs (ids of the
/// canonical form of each term) in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSpec {
    pub from: usize,
    pub to: usize,
    pub via: Option<Vec<usize>>,
}

impl FromStr for CutSpec {
    type Err = Error;

    /// `a-b` or `a-b:x,y,z`.
    fn from_str(s: &str) -> Result<CutSpec> {
        let bad = || Error::Parse(format!("bad arc `{s}`, expected `a-b` or `a-b:arc,arc,…`"));
        let (ends, via) = match s.split_once(':') {
            Some((e, v)) => (e, Some(v)),
            None => (s, None),
        };
        let (a, b) = ends.split_once('-').ok_or_else(bad)?;
        let from = a.trim().parse().map_err(|_| bad())?;
        let to = b.trim().parse().map_err(|_| bad())?;
        let via = match via {
            Some(v) if v.trim().is_empty() => Some(vec![]),
            Some(v) => Some(v.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<Vec<usize>>>()?),
            None => None,
        };
        Ok(CutSpec { from, to, via })
    }
}

impl fmt::Display for CutSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.from, self.to)?;
        if let Some(v) = &self.via {
            let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            write!(f, ":{}", v.join(","))?;
        }
        Ok(())
    }
}

/// One of the two polygons produced by a cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub id: String,
    pub ideal_points: usize,
    /// Ideal points of the original polygon, in the piece's counterclockwise order.
    pub corners: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Right,
    Left,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::Right => Side::Left,
            Side::Left => Side::Right,
        }
    }
}

/// Pieces of a `k`-gon cut from `from` to `to`. The right piece has the edges
/// `from, …, to - 1` followed by the cut; the left piece starts with the cut.
pub fn pieces(k: usize, cut: &CutSpec) -> Result<(Piece, Piece)> {
    let (a, b) = (cut.from, cut.to);
    if a >= k || b >= k || a == b {
        return Err(Error::Precondition(format!("an arc between ideal points {a} and {b} does not cut a {k}-gon")));
    }
    let r = (b + k - a) % k;
    let right: Vec<usize> = (0..=r).map(|i| (a + i) % k).collect();
    let left: Vec<usize> = std::iter::once(a).chain((0..=k - r).map(|i| (b + i) % k).take(k - r)).collect();
    let name = |side: &str, c: &[usize]| {
        let c: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        format!("{side}:P{}[{}]", c.len(), c.join(","))
    };
    Ok((
        Piece { id: name("right", &right), ideal_points: right.len(), corners: right },
        Piece { id: name("left", &left), ideal_points: left.len(), corners: left },
    ))
}

/// A place where the cut crosses the diagram, in order along the cut.
#[derive(Clone, Copy, Debug)]
struct CutPoint {
    arc: usize,
    /// Which piece the part of the arc before this point (toward its tail) lies in.
    tail_side: Side,
    /// Position along the arc when it is crossed more than once.
    rank: usize,
}

fn edge_side(k: usize, cut: &CutSpec, e: usize) -> Side {
    let r = (cut.to + k - cut.from) % k;
    if (e + k - cut.from) % k < r {
        Side::Right
    } else {
        Side::Left
    }
}

fn collar_points(d: &WebDiagram, cut: &CutSpec) -> Vec<CutPoint> {
    let k = d.ideal_points;
    let pt = d.ports();
    let r = (cut.to + k - cut.from) % k;
    let mut pts = vec![];
    // left edges from `to` counterclockwise to `from`; the cut meets them in reverse
    for i in 0..k - r {
        let e = (cut.to + i) % k;
        for x in d.edge_endpoints_ccw(e) {
            let Node::Endpoint { dir, .. } = d.nodes[x] else { unreachable!() };
            let arc = pt.arc_at((x, 0)).expect("endpoint has an arc");
            // the left part is the short piece next to the endpoint
            let (tail_side, rank) = if dir == Dir::Out { (Side::Left, 0) } else { (Side::Right, 1) };
            pts.push(CutPoint { arc, tail_side, rank });
        }
    }
    pts.reverse();
    pts
}

fn via_points(d: &WebDiagram, cut: &CutSpec, via: &[usize]) -> Result<Vec<CutPoint>> {
    if via.is_empty() {
        return Ok(vec![]);
    }
    let m = MapView::new(d)?;
    let k = d.ideal_points;
    let corner_face = |p: usize| -> Result<usize> {
        // the gap that contains corner p follows the last endpoint before it
        for i in 1..=k {
            let e = (p + k - i) % k;
            if let Some(&x) = d.edge_endpoints_ccw(e).last() {
                return Ok(m.face[m.dart(x, 0)]);
            }
        }
        Err(Error::Precondition("a cut through a diagram without endpoints needs no `via` list".into()))
    };
    let mut face = corner_face(cut.from)?;
    let mut seen = std::collections::BTreeSet::new();
    let mut pts = vec![];
    for &arc in via {
        let a = d.arcs.get(arc).ok_or_else(|| Error::Precondition(format!("no arc {arc}")))?;
        if !seen.insert(arc) {
            return Err(Error::Precondition(format!("the cut crosses arc {arc} twice")));
        }
        let right = m.face[m.dart(a.tail.0, a.tail.1)];
        let left = m.face[m.dart(a.head.0, a.head.1)];
        let tail_side = if right == left {
            return Err(Error::Precondition(format!("arc {arc} has the same region on both sides")));
        } else if face == right {
            face = left;
            Side::Left
        } else if face == left {
            face = right;
            Side::Right
        } else {
            return Err(Error::Precondition(format!("arc {arc} does not bound the current region of the cut")));
        };
        pts.push(CutPoint { arc, tail_side, rank: 0 });
    }
    if face != corner_face(cut.to)? {
        return Err(Error::Precondition(format!("the cut does not reach ideal point {}", cut.to)));
    }
    Ok(pts)
}

/// The two pieces of `d` with the cut endpoints in place; states on the cut are left at 1.
struct Template {
    right: WebDiagram,
    left: WebDiagram,
    /// For each cut point, its endpoint in the right and in the left piece.
    slots: Vec<(usize, usize)>,
}

fn build_template(d: &WebDiagram, cut: &CutSpec) -> Result<Template> {
    let k = d.ideal_points;
    let (rp, lp) = pieces(k, cut)?;
    let pts = match &cut.via {
        None => collar_points(d, cut),
        Some(v) => via_points(d, cut, v)?,
    };
    let n_nodes = d.nodes.len();
    // cut points on each arc, ordered from tail to head
    let mut on_arc: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, p) in pts.iter().enumerate() {
        on_arc.entry(p.arc).or_default().push(i);
    }
    for list in on_arc.values_mut() {
        list.sort_by_key(|&i| pts[i].rank);
        for w in list.windows(2) {
            if pts[w[0]].tail_side.flip() != pts[w[1]].tail_side {
                return Err(Error::Precondition("the cut meets an arc inconsistently".into()));
            }
        }
    }
    // sides of the nodes: flood through uncut arcs from the boundary and the cut
    let mut side: Vec<Option<Side>> = vec![None; n_nodes];
    let mut queue = vec![];
    let assign = |side: &mut Vec<Option<Side>>, queue: &mut Vec<usize>, v: usize, s: Side| -> Result<()> {
        match side[v] {
            Some(t) if t != s => Err(Error::Precondition("the cut does not separate the diagram".into())),
            Some(_) => Ok(()),
            None => {
                side[v] = Some(s);
                queue.push(v);
                Ok(())
            }
        }
    };
    for (v, node) in d.nodes.iter().enumerate() {
        if let Node::Endpoint { edge, .. } = node {
            assign(&mut side, &mut queue, v, edge_side(k, cut, *edge))?;
        }
    }
    for (&arc, list) in &on_arc {
        let first = pts[list[0]].tail_side;
        let last = if list.len() % 2 == 1 { first.flip() } else { first };
        assign(&mut side, &mut queue, d.arcs[arc].tail.0, first)?;
        assign(&mut side, &mut queue, d.arcs[arc].head.0, last)?;
    }
    let mut adj: Vec<Vec<usize>> = vec![vec![]; n_nodes];
    for (i, a) in d.arcs.iter().enumerate() {
        if !on_arc.contains_key(&i) {
            adj[a.tail.0].push(a.head.0);
            adj[a.head.0].push(a.tail.0);
        }
    }
    while let Some(v) = queue.pop() {
        let s = side[v].unwrap();
        for &u in &adj[v] {
            assign(&mut side, &mut queue, u, s)?;
        }
    }
    // floating components go to the right piece
    for v in 0..n_nodes {
        if side[v].is_none() {
            assign(&mut side, &mut queue, v, Side::Right)?;
            while let Some(x) = queue.pop() {
                for &u in &adj[x] {
                    assign(&mut side, &mut queue, u, Side::Right)?;
                }
            }
        }
    }

    let mut right = WebDiagram::empty(d.n, rp.ideal_points);
    let mut left = WebDiagram::empty(d.n, lp.ideal_points);
    left.ordering[0] = EdgeOrder::Positive;
    let r = rp.ideal_points - 1;
    let new_edge = |e: usize| -> (Side, usize) {
        match edge_side(k, cut, e) {
            Side::Right => (Side::Right, (e + k - cut.from) % k),
            Side::Left => (Side::Left, 1 + (e + k - cut.to) % k),
        }
    };
    for e in 0..k {
        let (s, ne) = new_edge(e);
        let o = d.ordering.get(e).copied().unwrap_or_default();
        match s {
            Side::Right => right.ordering[ne] = o,
            Side::Left => left.ordering[ne] = o,
        }
    }
    let mut map = vec![usize::MAX; n_nodes];
    for (v, node) in d.nodes.iter().enumerate() {
        let s = side[v].unwrap();
        let mut node = node.clone();
        if let Node::Endpoint { edge, .. } = &mut node {
            *edge = new_edge(*edge).1;
        }
        map[v] = match s {
            Side::Right => right.add_node(node),
            Side::Left => left.add_node(node),
        };
    }
    // cut endpoints: (In endpoint, its side) and (Out endpoint, its side) per cut point
    let mut ends: Vec<[(Side, usize); 2]> = vec![[(Side::Right, 0); 2]; pts.len()];
    for (i, p) in pts.iter().enumerate() {
        let in_side = p.tail_side;
        let mk = |s: Side, dir: Dir, right: &mut WebDiagram, left: &mut WebDiagram| {
            let (g, e) = match s {
                Side::Right => (right, r),
                Side::Left => (left, 0),
            };
            (s, g.add_node(Node::Endpoint { edge: e, height: 0, state: 1, dir }))
        };
        ends[i] = [mk(in_side, Dir::In, &mut right, &mut left), mk(in_side.flip(), Dir::Out, &mut right, &mut left)];
    }
    let mut add_arc = |s: Side, tail: PortRef, head: PortRef| match s {
        Side::Right => {
            right.add_arc(tail, head);
        }
        Side::Left => {
            left.add_arc(tail, head);
        }
    };
    for (i, a) in d.arcs.iter().enumerate() {
        let ts = side[a.tail.0].unwrap();
        let tail = (map[a.tail.0], a.tail.1);
        let head = (map[a.head.0], a.head.1);
        match on_arc.get(&i) {
            None => add_arc(ts, tail, head),
            Some(list) => {
                let mut from = (ts, tail);
                for &c in list {
                    let [(si, ein), (so, eout)] = ends[c];
                    debug_assert_eq!(si, from.0);
                    add_arc(si, from.1, (ein, 0));
                    from = (so, (eout, 0));
                }
                add_arc(from.0, from.1, head);
            }
        }
    }
    for _ in &d.loops {
        right.loops.push(None);
    }
    for &(s, t) in &d.pairs {
        if side[s] == side[t] {
            match side[s].unwrap() {
                Side::Right => right.pairs.push((map[s], map[t])),
                Side::Left => left.pairs.push((map[s], map[t])),
            }
        }
    }
    // heights: old edges keep their order; the right cut edge runs against the cut,
    // the left one along it, and heights grow along the cut on both
    let mut per_r: Vec<Vec<usize>> = vec![vec![]; rp.ideal_points];
    let mut per_l: Vec<Vec<usize>> = vec![vec![]; lp.ideal_points];
    for e in 0..k {
        let list: Vec<usize> = d.edge_endpoints_ccw(e).into_iter().map(|x| map[x]).collect();
        match new_edge(e) {
            (Side::Right, ne) => per_r[ne] = list,
            (Side::Left, ne) => per_l[ne] = list,
        }
    }
    let mut slots = vec![];
    for e in &ends {
        let find = |s: Side| e.iter().find(|x| x.0 == s).map(|x| x.1).unwrap();
        let (xr, xl) = (find(Side::Right), find(Side::Left));
        per_r[r].push(xr);
        per_l[0].push(xl);
        slots.push((xr, xl));
    }
    per_r[r].reverse();
    right.set_heights_from_ccw(&per_r);
    left.set_heights_from_ccw(&per_l);
    right.sort_arcs();
    left.sort_arcs();
    Ok(Template { right, left, slots })
}

/// Every lift of `d` across the cut: one pair of pieces per state assignment on the cut,
/// assignments in lexicographic order.
pub fn split_diagram(d: &WebDiagram, cut: &CutSpec) -> Result<Vec<(WebDiagram, WebDiagram)>> {
    let t = build_template(d, cut)?;
    let r = t.slots.len();
    let total = d.n.checked_pow(r as u32).filter(|&x| x <= 1 << 20).ok_or_else(|| {
        Error::Precondition(format!("{r} crossings with the cut give too many state assignments"))
    })?;
    let mut out = Vec::with_capacity(total);
    let mut states = vec![1u8; r];
    for _ in 0..total {
        let (mut a, mut b) = (t.right.clone(), t.left.clone());
        for (i, &(xr, xl)) in t.slots.iter().enumerate() {
            set_state(&mut a, xr, states[i]);
            set_state(&mut b, xl, states[i]);
        }
        out.push((a, b));
        for s in states.iter_mut().rev() {
            if (*s as usize) < d.n {
                *s += 1;
                break;
            }
            *s = 1;
        }
    }
    Ok(out)
}

fn set_state(d: &mut WebDiagram, x: usize, s: u8) {
    if let Node::Endpoint { state, .. } = &mut d.nodes[x] {
        *state = s;
    }
}

/// A combination of pairs of diagrams, one on each piece of a cut polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitExpression {
    pub n: usize,
    pub right: Piece,
    pub left: Piece,
    terms: BTreeMap<(CanonCode, CanonCode), (WebDiagram, WebDiagram, LaurentScalar)>,
}

impl SplitExpression {
    pub fn zero(n: usize, right: Piece, left: Piece) -> Self {
        SplitExpression { n, right, left, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, a: &WebDiagram, b: &WebDiagram, c: &LaurentScalar) -> Result<()> {
        if a.ideal_points != self.right.ideal_points || b.ideal_points != self.left.ideal_points {
            return Err(Error::Precondition("a term does not live on the pieces of the cut".into()));
        }
        if c.is_zero() {
            return Ok(());
        }
        let key = (canonical_code(a)?, canonical_code(b)?);
        match self.terms.get_mut(&key) {
            Some((_, _, x)) => {
                x.add_assign_ref(c);
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, (canonical_form(a)?, canonical_form(b)?, c.clone()));
            }
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WebDiagram, &WebDiagram, &LaurentScalar)> {
        self.terms.values().map(|(a, b, c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> Result<Value> {
        let piece = |p: &Piece| json!({ "id": p.id, "ideal_points": p.ideal_points, "corners": p.corners });
        let terms = self
            .terms()
            .map(|(a, b, c)| {
                Ok(json!({
                    "coefficient": c.to_string(),
                    "diagrams": { self.right.id.clone(): diagram_to_value(a)?, self.left.id.clone(): diagram_to_value(b)? },
                }))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(json!({ "n": self.n, "surfaces": [piece(&self.right), piece(&self.left)], "terms": terms }))
    }
}

/// `Θ_c`: the sum over all states on the cut of the lifted diagrams.
pub fn split(expr: &SkeinExpression, cut: &CutSpec) -> Result<SplitExpression> {
    let (rp, lp) = pieces(expr.ideal_points, cut)?;
    let mut out = SplitExpression::zero(expr.n, rp, lp);
    let terms: Vec<(&WebDiagram, &LaurentScalar)> = expr.terms().collect();
    let lifted = crate::par::map(&terms, |(d, _)| split_diagram(d, cut));
    for ((_, c), lifts) in terms.iter().zip(lifted) {
        for (a, b) in lifts? {
            out.add_term(&a, &b, c)?;
        }
    }
    Ok(out)
}

/// `Θ_p`: the corner `p` is opened into a new edge facing the monogon. Diagrams are
/// kept away from the monogon, so only the edge labels change.
pub fn theta_p(expr: &SkeinExpression, p: usize) -> Result<SkeinExpression> {
    let k = expr.ideal_points;
    if p >= k {
        return Err(Error::Precondition(format!("no ideal point {p} on a {k}-gon")));
    }
    let mut out = SkeinExpression::zero(expr.n, k + 1);
    for (d, c) in expr.terms() {
        let mut e = d.clone();
        e.ideal_points = k + 1;
        e.ordering.insert(p, EdgeOrder::Negative);
        for node in &mut e.nodes {
            if let Node::Endpoint { edge, .. } = node {
                if *edge >= p {
                    *edge += 1;
                }
            }
        }
        out.add_term(&e, c)?;
    }
    Ok(out)
}
