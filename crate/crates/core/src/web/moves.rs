//! Local moves on diagrams and replay of move scripts.
//!
//! Moves are addressed by node and arc ids of the diagram they act on. New nodes
//! and arcs are appended, so ids mentioned later in a script refer to the diagram
//! produced by the previous step.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::canon::canonical_code;
use super::diagram::{crossing_sign, Arc, Node, PortRef, WebDiagram};
use super::map::MapView;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// One kink on `arc` looping into the face on its right (or left), with crossing sign `sign`.
    /// Changes the writhe by `sign`; not an isotopy on its own.
    Kink { arc: usize, sign: i8, right: bool },
    /// Remove the kink at `crossing`.
    Unkink { crossing: usize },
    /// A positive and a negative kink side by side.
    KinkPair { arc: usize, right: bool },
    UnkinkPair { crossings: [usize; 2] },
    /// Push a finger of `over` across a face it shares with `under`, creating two crossings.
    Poke { over: usize, under: usize },
    /// Remove the bigon between two crossings.
    Unpoke { crossings: [usize; 2] },
    /// Slide one strand across the crossing of the other two (the triangle bounded by three crossings).
    Slide { crossings: [usize; 3] },
    /// Push a finger of `arc` around `vertex`, over or under all of its legs.
    Wrap { arc: usize, vertex: usize, over: bool },
    /// Undo a wrap: the crossings of one strand with every leg of a vertex.
    Unwrap { crossings: Vec<usize> },
}

impl Move {
    /// Whether the move preserves the web up to isotopy.
    pub fn is_isotopy(&self) -> bool {
        !matches!(self, Move::Kink { .. } | Move::Unkink { .. })
    }
}

fn pattern(msg: impl Into<String>) -> Error {
    Error::Pattern(msg.into())
}

fn arc_ref(d: &WebDiagram, arc: usize) -> Result<&Arc> {
    d.arcs.get(arc).ok_or_else(|| pattern(format!("no arc {arc}")))
}

fn crossing(d: &WebDiagram, c: usize) -> Result<(usize, usize)> {
    match d.nodes.get(c) {
        Some(Node::Crossing { over_in, under_in }) => Ok((*over_in as usize, *under_in as usize)),
        _ => Err(pattern(format!("node {c} is not a crossing"))),
    }
}

/// Replace `arc` by a chain through new ports. `hops` lists `(entry, exit)` ports in the order met
/// when walking from `start` to the other end. Returns the ids of the new arcs in walking order.
fn reroute(d: &mut WebDiagram, arc: usize, start: PortRef, hops: &[(PortRef, PortRef)]) -> Vec<usize> {
    let Arc { tail, head, layer } = d.arcs[arc].clone();
    let forward = tail == start;
    let end = if forward { head } else { tail };
    let mut stops = vec![start];
    for &(a, b) in hops {
        stops.push(a);
        stops.push(b);
    }
    stops.push(end);
    let mut ids = Vec::new();
    for pair in stops.chunks(2) {
        let (a, b) = (pair[0], pair[1]);
        let arc = if forward { Arc { tail: a, head: b, layer } } else { Arc { tail: b, head: a, layer } };
        d.arcs.push(arc);
        ids.push(d.arcs.len() - 1);
    }
    let removed = arc;
    d.arcs.remove(removed);
    ids.iter().map(|&i| i - 1).collect()
}

/// The dart that starts the walk along `arc` with `face` on its right, if any.
fn dart_on_face(m: &MapView, d: &WebDiagram, arc: usize, face: usize) -> Option<usize> {
    let a = &d.arcs[arc];
    let (xt, xh) = (m.dart(a.tail.0, a.tail.1), m.dart(a.head.0, a.head.1));
    [xt, xh].into_iter().find(|&x| m.face[x] == face)
}

fn check_planar(d: &WebDiagram) -> Result<()> {
    if MapView::new(d)?.euler_defect() != 0 {
        return Err(pattern("the move does not fit the embedding"));
    }
    Ok(())
}

/// Replace every listed crossing by two straight passes and contract them.
pub(crate) fn dissolve(d: &mut WebDiagram, cs: &BTreeSet<usize>) -> Result<()> {
    for &c in cs {
        let (o, u) = crossing(d, c)?;
        d.nodes[c] = Node::Pass;
        let p2 = d.add_node(Node::Pass);
        for a in d.arcs.iter_mut() {
            if a.head == (c, o) {
                a.head = (c, 0);
            } else if a.head == (c, u) {
                a.head = (p2, 0);
            }
            if a.tail == (c, (o + 2) % 4) {
                a.tail = (c, 1);
            } else if a.tail == (c, (u + 2) % 4) {
                a.tail = (p2, 1);
            }
        }
    }
    d.contract_passes();
    Ok(())
}

/// Add a kink; returns the new diagram and the arc that continues past the kink.
pub fn kink(d: &WebDiagram, arc: usize, sign: i8, right: bool) -> Result<(WebDiagram, usize)> {
    if sign != 1 && sign != -1 {
        return Err(pattern("kink sign must be 1 or -1"));
    }
    let a = arc_ref(d, arc)?.clone();
    let start = if right { a.tail } else { a.head };
    let mut e = d.clone();
    let c = e.add_node(Node::Crossing { over_in: 0, under_in: 1 });
    // ports counterclockwise: 0 east, 1 west, 2 south-west, 3 south-east; the loop hangs south
    let ids = reroute(&mut e, arc, start, &[((c, 1), (c, 3)), ((c, 2), (c, 0))]);
    let (first, second) = if right { ((1u8, 3u8), (2u8, 0u8)) } else { ((3, 1), (0, 2)) };
    let (o, u) = if crossing_sign(first.0, second.0) == sign as i64 { (first.0, second.0) } else { (second.0, first.0) };
    e.nodes[c] = Node::Crossing { over_in: o, under_in: u };
    check_planar(&e)?;
    Ok((e, ids[2]))
}

/// The kink loop at `c`: its arc and the sign of the crossing.
fn kink_at(d: &WebDiagram, c: usize) -> Result<(usize, i64)> {
    let (o, u) = crossing(d, c)?;
    let m = MapView::new(d)?;
    for (i, a) in d.arcs.iter().enumerate() {
        if a.tail.0 == c && a.head.0 == c {
            let diff = (a.head.1 + 4 - a.tail.1) % 4;
            if diff != 1 && diff != 3 {
                continue;
            }
            let x = m.dart(a.tail.0, a.tail.1);
            let empty = [x, m.alpha[x]].iter().any(|&y| m.face_darts(m.face[y]).len() == 1);
            if empty {
                return Ok((i, crossing_sign(o as u8, u as u8)));
            }
        }
    }
    Err(pattern(format!("crossing {c} is not a kink")))
}

/// The sign of the kink at `c`, or an error if there is none.
pub fn kink_sign(d: &WebDiagram, c: usize) -> Result<i64> {
    kink_at(d, c).map(|k| k.1)
}

pub fn unkink(d: &WebDiagram, c: usize) -> Result<WebDiagram> {
    kink_at(d, c)?;
    let mut e = d.clone();
    dissolve(&mut e, &BTreeSet::from([c]))?;
    Ok(e)
}

fn shared_face(m: &MapView, d: &WebDiagram, a: usize, b: usize) -> Option<(usize, usize, usize)> {
    let fa = |arc: usize| {
        let x = &d.arcs[arc];
        [m.face[m.dart(x.tail.0, x.tail.1)], m.face[m.dart(x.head.0, x.head.1)]]
    };
    let mut common: Vec<usize> = fa(a).into_iter().filter(|f| fa(b).contains(f)).collect();
    common.sort();
    let f = *common.first()?;
    Some((f, dart_on_face(m, d, a, f)?, dart_on_face(m, d, b, f)?))
}

/// Second Reidemeister move: a finger of `over` pushed across `under`.
pub fn poke(d: &WebDiagram, over: usize, under: usize) -> Result<WebDiagram> {
    arc_ref(d, over)?;
    arc_ref(d, under)?;
    if over == under {
        return Err(pattern("a poke needs two different arcs"));
    }
    let m = MapView::new(d)?;
    let (_, xa, xb) = shared_face(&m, d, over, under).ok_or_else(|| pattern("the arcs share no face"))?;
    let sa = (m.dart_node[xa], m.dart_port[xa]);
    let sb = (m.dart_node[xb], m.dart_port[xb]);
    let fa = d.arcs[over].tail == sa;
    let fb = d.arcs[under].tail == sb;
    let mut e = d.clone();
    let p = e.add_node(Node::Pass);
    let q = e.add_node(Node::Pass);
    // ports counterclockwise: 0 east, 1 north, 2 west, 3 south; the finger rises at p and returns at q
    let (under_arc, under_start) = (under, sb);
    reroute(&mut e, over, sa, &[((p, 3), (p, 1)), ((q, 1), (q, 3))]);
    let under_arc = if under_arc > over { under_arc - 1 } else { under_arc };
    reroute(&mut e, under_arc, under_start, &[((q, 2), (q, 0)), ((p, 2), (p, 0))]);
    let ui = if fb { 2 } else { 0 };
    e.nodes[p] = Node::Crossing { over_in: if fa { 3 } else { 1 }, under_in: ui };
    e.nodes[q] = Node::Crossing { over_in: if fa { 1 } else { 3 }, under_in: ui };
    check_planar(&e)?;
    Ok(e)
}

/// The two arcs joining `c1` and `c2` around an empty bigon, if the same strand is over at both.
fn bigon(d: &WebDiagram, c1: usize, c2: usize) -> Result<()> {
    let (o1, _) = crossing(d, c1)?;
    let (o2, _) = crossing(d, c2)?;
    if c1 == c2 {
        return Err(pattern("a bigon needs two crossings"));
    }
    let m = MapView::new(d)?;
    for c in 0..4 {
        let f = m.corner_face(c1, c);
        let ds = m.face_darts(f);
        if ds.len() != 2 {
            continue;
        }
        let nodes: BTreeSet<usize> = ds.iter().map(|&x| m.vertex(x)).collect();
        if nodes != BTreeSet::from([c1, c2]) {
            continue;
        }
        // one of the two bigon sides belongs to the strand that is over at c1
        for &x in &ds {
            if m.dart_node[x] != c1 {
                continue;
            }
            let y = m.alpha[x];
            let over1 = m.dart_port[x] % 2 == o1 % 2;
            let over2 = m.dart_port[y] % 2 == o2 % 2;
            if over1 != over2 {
                return Err(pattern("the bigon has a strand passing over and then under"));
            }
        }
        return Ok(());
    }
    Err(pattern(format!("crossings {c1} and {c2} do not bound a bigon")))
}

pub fn unpoke(d: &WebDiagram, c1: usize, c2: usize) -> Result<WebDiagram> {
    bigon(d, c1, c2)?;
    let mut e = d.clone();
    dissolve(&mut e, &BTreeSet::from([c1, c2]))?;
    check_planar(&e)?;
    Ok(e)
}

/// Third Reidemeister move across the triangle bounded by `cs`.
pub fn slide(d: &WebDiagram, cs: [usize; 3]) -> Result<WebDiagram> {
    let set: BTreeSet<usize> = cs.into_iter().collect();
    if set.len() != 3 {
        return Err(pattern("a slide needs three distinct crossings"));
    }
    for &c in &cs {
        crossing(d, c)?;
    }
    let m = MapView::new(d)?;
    let tri = (0..4)
        .map(|p| m.corner_face(cs[0], p))
        .find(|&f| {
            let ds = m.face_darts(f);
            ds.len() == 3 && ds.iter().map(|&x| m.vertex(x)).collect::<BTreeSet<_>>() == set
        })
        .ok_or_else(|| pattern("the crossings do not bound a triangle"))?;
    let pt = d.ports();
    // the triangle sides, as arcs from the first crossing of a strand to its second
    let sides: Vec<usize> = m.face_darts(tri).iter().map(|&x| pt.arc_at((m.dart_node[x], m.dart_port[x])).unwrap()).collect();
    // over/under must not be cyclic: some strand is over at both of its crossings
    let is_over = |p: PortRef| {
        let Node::Crossing { over_in, .. } = d.nodes[p.0] else { unreachable!() };
        p.1 % 2 == over_in as usize % 2
    };
    let tops = sides.iter().filter(|&&a| is_over(d.arcs[a].tail) && is_over(d.arcs[a].head)).count();
    let bottoms = sides.iter().filter(|&&a| !is_over(d.arcs[a].tail) && !is_over(d.arcs[a].head)).count();
    if tops != 1 || bottoms != 1 {
        return Err(pattern("the triangle is cyclically over and under; no third move applies"));
    }
    // each crossing keeps its ports; the triangle moves to the opposite corner of each, so
    // outside arcs reattach from in1 to in2 and from out2 to out1, and each side runs out2 -> in1
    let mut heads = BTreeMap::new();
    let mut tails = BTreeMap::new();
    for &s in &sides {
        let Arc { tail: out1, head: in2, .. } = d.arcs[s];
        heads.insert((out1.0, (out1.1 + 2) % 4), in2);
        tails.insert((in2.0, (in2.1 + 2) % 4), out1);
    }
    let mut e = d.clone();
    for (i, a) in e.arcs.iter_mut().enumerate() {
        if sides.contains(&i) {
            let (out1, in2) = (a.tail, a.head);
            a.tail = (in2.0, (in2.1 + 2) % 4);
            a.head = (out1.0, (out1.1 + 2) % 4);
        } else {
            a.tail = tails.get(&a.tail).copied().unwrap_or(a.tail);
            a.head = heads.get(&a.head).copied().unwrap_or(a.head);
        }
    }
    check_planar(&e)?;
    Ok(e)
}

/// Push a finger of `arc` around `vertex`, crossing each of its legs once.
pub fn wrap(d: &WebDiagram, arc: usize, vertex: usize, over: bool) -> Result<WebDiagram> {
    let a = arc_ref(d, arc)?.clone();
    let (k, sink) = match d.nodes.get(vertex) {
        Some(Node::Sink { arity, .. }) => (*arity, true),
        Some(Node::Source { arity, .. }) => (*arity, false),
        _ => return Err(pattern(format!("node {vertex} is not a vertex"))),
    };
    if a.tail.0 == vertex || a.head.0 == vertex {
        return Err(pattern("the arc is a leg of the vertex"));
    }
    let m = MapView::new(d)?;
    let (corner, x) = (0..k)
        .find_map(|c| dart_on_face(&m, d, arc, m.corner_face(vertex, c)).map(|x| (c, x)))
        .ok_or_else(|| pattern("the arc does not share a face with the vertex"))?;
    let start = (m.dart_node[x], m.dart_port[x]);
    let forward = a.tail == start;
    let pt = d.ports();
    let mut e = d.clone();
    let mut hops = Vec::new();
    let mut legs = Vec::new();
    for s in 1..=k {
        let l = (corner + s) % k;
        let c = e.add_node(Node::Pass);
        hops.push(((c, 3), (c, 1)));
        legs.push((l, c, pt.arc_at((vertex, l)).ok_or_else(|| pattern("vertex port without arc"))?));
    }
    // ports counterclockwise: 0 away from the vertex, 1 along the finger, 2 toward the vertex, 3 back
    for &(l, c, leg) in &legs {
        let other = if sink { e.arcs[leg].tail } else { e.arcs[leg].head };
        if sink {
            e.arcs[leg].tail = (c, 2);
            e.arcs.push(Arc { tail: other, head: (c, 0), layer: e.arcs[leg].layer });
        } else {
            e.arcs[leg].head = (c, 2);
            e.arcs.push(Arc { tail: (c, 0), head: other, layer: e.arcs[leg].layer });
        }
        debug_assert!(e.arcs[leg].head == (vertex, l) || e.arcs[leg].tail == (vertex, l));
    }
    reroute(&mut e, arc, start, &hops);
    let fin = if forward { 3 } else { 1 };
    let leg_in = if sink { 0 } else { 2 };
    for &(_, c, _) in &legs {
        let (o, u) = if over { (fin, leg_in) } else { (leg_in, fin) };
        e.nodes[c] = Node::Crossing { over_in: o, under_in: u };
    }
    check_planar(&e)?;
    Ok(e)
}

/// Undo [`wrap`]: `cs` are the crossings of one strand with all legs of one vertex, in any order.
pub fn unwrap(d: &WebDiagram, cs: &[usize]) -> Result<WebDiagram> {
    let set: BTreeSet<usize> = cs.iter().copied().collect();
    if set.len() != cs.len() || cs.is_empty() {
        return Err(pattern("unwrap needs distinct crossings"));
    }
    let pt = d.ports();
    let neighbours = |c: usize| -> Vec<(PortRef, usize)> {
        (0..4).filter_map(|p| d.other_end(&pt, (c, p)).map(|o| (o, p))).filter(|(o, _)| d.nodes[o.0].is_vertex()).collect()
    };
    let mut common: Option<BTreeSet<usize>> = None;
    for &c in cs {
        crossing(d, c)?;
        let vs: BTreeSet<usize> = neighbours(c).iter().map(|(o, _)| o.0).collect();
        common = Some(match common {
            None => vs,
            Some(s) => s.intersection(&vs).copied().collect(),
        });
    }
    let v = common
        .and_then(|s| s.into_iter().find(|&v| d.nodes[v].arity() == cs.len()))
        .ok_or_else(|| pattern("the crossings do not surround one vertex"))?;
    let mut legs = BTreeSet::new();
    let mut finger_over = BTreeSet::new();
    for &c in cs {
        let (o, _) = crossing(d, c)?;
        let ends: Vec<(PortRef, usize)> = neighbours(c).into_iter().filter(|(x, _)| x.0 == v).collect();
        let [(leg, p)] = ends[..] else {
            return Err(pattern(format!("crossing {c} is not on a single leg")));
        };
        legs.insert(leg.1);
        finger_over.insert(p % 2 != o % 2);
    }
    if legs.len() != d.nodes[v].arity() || finger_over.len() != 1 {
        return Err(pattern("the crossings are not one strand wrapped around every leg"));
    }
    let mut e = d.clone();
    dissolve(&mut e, &set)?;
    check_planar(&e)?;
    Ok(e)
}

pub fn apply_move(d: &WebDiagram, mv: &Move) -> Result<WebDiagram> {
    match mv {
        Move::Kink { arc, sign, right } => kink(d, *arc, *sign, *right).map(|r| r.0),
        Move::Unkink { crossing } => unkink(d, *crossing),
        Move::KinkPair { arc, right } => {
            let (e, next) = kink(d, *arc, 1, *right)?;
            kink(&e, next, -1, *right).map(|r| r.0)
        }
        Move::UnkinkPair { crossings: [a, b] } => {
            let (sa, sb) = (kink_sign(d, *a)?, kink_sign(d, *b)?);
            if sa + sb != 0 || a == b {
                return Err(pattern("a kink pair needs one positive and one negative kink"));
            }
            let mut e = d.clone();
            dissolve(&mut e, &BTreeSet::from([*a, *b]))?;
            Ok(e)
        }
        Move::Poke { over, under } => poke(d, *over, *under),
        Move::Unpoke { crossings: [a, b] } => unpoke(d, *a, *b),
        Move::Slide { crossings } => slide(d, *crossings),
        Move::Wrap { arc, vertex, over } => wrap(d, *arc, *vertex, *over),
        Move::Unwrap { crossings } => unwrap(d, crossings),
    }
}

pub fn replay(d: &WebDiagram, script: &[Move]) -> Result<WebDiagram> {
    let mut cur = d.clone();
    for mv in script {
        cur = apply_move(&cur, mv)?;
    }
    Ok(cur)
}

/// Whether `script` turns `a` into a diagram isomorphic to `b`.
pub fn move_equivalent(a: &WebDiagram, b: &WebDiagram, script: &[Move]) -> Result<bool> {
    let end = replay(a, script)?;
    Ok(canonical_code(&end)? == canonical_code(b)?)
}

/// Every move that applies to `d`, in a fixed order.
pub fn candidate_moves(d: &WebDiagram) -> Vec<Move> {
    let mut out = Vec::new();
    let Ok(m) = MapView::new(d) else { return out };
    let cs: Vec<usize> = d.crossings().collect();
    for (i, _) in d.arcs.iter().enumerate() {
        for right in [true, false] {
            out.push(Move::KinkPair { arc: i, right });
        }
    }
    for &c in &cs {
        if kink_at(d, c).is_ok() {
            out.push(Move::Unkink { crossing: c });
        }
    }
    // pokes between arcs sharing a face
    let mut by_face: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let pt = d.ports();
    for x in 0..m.darts() {
        if let Some(a) = pt.arc_at((m.dart_node[x], m.dart_port[x])) {
            by_face.entry(m.face[x]).or_default().insert(a);
        }
    }
    let mut pokes = BTreeSet::new();
    for arcs in by_face.values() {
        for &a in arcs {
            for &b in arcs {
                if a != b {
                    pokes.insert((a, b));
                }
            }
        }
    }
    out.extend(pokes.into_iter().map(|(over, under)| Move::Poke { over, under }));
    for (i, &a) in cs.iter().enumerate() {
        for &b in &cs[i + 1..] {
            if bigon(d, a, b).is_ok() {
                out.push(Move::Unpoke { crossings: [a, b] });
            }
        }
    }
    for f in 0..m.faces {
        let ds = m.face_darts(f);
        if ds.len() != 3 {
            continue;
        }
        let mut nodes: Vec<usize> = ds.iter().map(|&x| m.vertex(x)).collect();
        nodes.sort();
        nodes.dedup();
        if nodes.len() == 3 && nodes.iter().all(|&v| v != usize::MAX && d.nodes[v].is_crossing()) {
            let t = [nodes[0], nodes[1], nodes[2]];
            if slide(d, t).is_ok() {
                out.push(Move::Slide { crossings: t });
            }
        }
    }
    for v in (0..d.nodes.len()).filter(|&v| d.nodes[v].is_vertex()) {
        for (i, a) in d.arcs.iter().enumerate() {
            if a.tail.0 != v && a.head.0 != v {
                for over in [true, false] {
                    let mv = Move::Wrap { arc: i, vertex: v, over };
                    if apply_move(d, &mv).is_ok() {
                        out.push(mv);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::web::{braid_closure, stats, theta_web, validate};

    fn ok(d: &WebDiagram) {
        assert!(validate(d).is_empty(), "{:?}", validate(d));
    }

    #[test]
    fn kinks_change_writhe_by_their_sign() {
        let d = braid_closure(2, 2, &[1]).unwrap();
        for arc in 0..d.arcs.len() {
            for right in [true, false] {
                for sign in [1i8, -1] {
                    let (e, _) = kink(&d, arc, sign, right).unwrap();
                    ok(&e);
                    assert_eq!(stats(&e).w, stats(&d).w + sign as i64);
                    let c = e.nodes.len() - 1;
                    assert_eq!(kink_sign(&e, c).unwrap(), sign as i64);
                    assert!(isomorphic(&unkink(&e, c).unwrap(), &d));
                }
            }
        }
    }

    fn isomorphic(a: &WebDiagram, b: &WebDiagram) -> bool {
        crate::web::isomorphic(a, b).unwrap()
    }

    #[test]
    fn poke_then_unpoke_is_the_identity() {
        let d = braid_closure(2, 3, &[1, -2]).unwrap();
        let mut seen = 0;
        for mv in candidate_moves(&d) {
            let Move::Poke { .. } = mv else { continue };
            let e = apply_move(&d, &mv).unwrap();
            ok(&e);
            let st = stats(&e);
            assert_eq!(st.w, stats(&d).w);
            let n = e.nodes.len();
            assert!(isomorphic(&unpoke(&e, n - 2, n - 1).unwrap(), &d));
            seen += 1;
        }
        assert!(seen > 0);
    }

    #[test]
    fn slides_keep_the_statistics() {
        // a poke across a crossing leaves a triangle behind
        let d = braid_closure(2, 3, &[1, 2, 1]).unwrap();
        let slides: Vec<Move> = candidate_moves(&d).into_iter().filter(|m| matches!(m, Move::Slide { .. })).collect();
        assert!(!slides.is_empty());
        for mv in slides {
            let e = apply_move(&d, &mv).unwrap();
            ok(&e);
            assert_eq!(stats(&e), stats(&d));
            let Move::Slide { crossings } = mv else { unreachable!() };
            // sliding back restores the diagram
            assert!(isomorphic(&slide(&e, crossings).unwrap(), &d));
        }
    }

    #[test]
    fn wrapping_a_vertex_changes_writhe_by_n() {
        for n in 2..=3 {
            // a kink on one leg of a theta web gives an arc beside the sink that is not a leg
            let (d, _) = kink(&theta_web(n).unwrap(), 0, 1, true).unwrap();
            ok(&d);
            let arc = d.arcs.iter().position(|a| a.tail.0 == a.head.0).unwrap();
            let mut done = 0;
            for v in [0, 1] {
                for over in [true, false] {
                    let Ok(e) = wrap(&d, arc, v, over) else { continue };
                    ok(&e);
                    assert_eq!((stats(&e).w - stats(&d).w).abs(), n as i64);
                    let cs: Vec<usize> = (e.nodes.len() - n..e.nodes.len()).collect();
                    assert!(isomorphic(&unwrap(&e, &cs).unwrap(), &d));
                    done += 1;
                }
            }
            assert!(done > 0);
        }
    }
}
