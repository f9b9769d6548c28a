//! The defining relations as directed local rewrites.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::eval::{eliminate_pair, smooth_crossing, switch_crossing, Mode};
use super::expr::SkeinExpression;
use crate::error::{Error, Result};
use crate::perm;
use crate::scalar::{a_exponent, bar, c_i, neg_q_pow, q_diff, q_frac, q_pow, t_v, unknot_value, LaurentScalar};
use crate::web::{crossing_sign, dissolve, kink_sign, unkink, Arc, Dir, MapView, Node, WebDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
}

impl std::str::FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Relation> {
        let k = s.trim_start_matches(['R', 'r']);
        Ok(match k {
            "1" => Relation::R1,
            "2" => Relation::R2,
            "3" => Relation::R3,
            "4" => Relation::R4,
            "5" => Relation::R5,
            "6" => Relation::R6,
            "7" => Relation::R7,
            "8" => Relation::R8,
            "9" => Relation::R9,
            _ => return Err(Error::Parse(format!("unknown relation `{s}`"))),
        })
    }
}

/// Where a relation applies: a term of the expression (in canonical order) and the
/// local data inside its diagram.
///
/// | relation | `at` |
/// |---|---|
/// | R1, R2 | `[crossing]` |
/// | R8 | `[crossing]` or `[crossing, edge]` |
/// | R3 | `[loop index]` |
/// | R4, R9 | `[sink, source]` |
/// | R5 | `[vertex, port, edge, slot]`, the corner from `port` to `port + 1` facing the slot |
/// | R6 | `[endpoint, endpoint]` |
/// | R7 | `[arc, edge, slot]` |
///
/// A slot `s` on an edge is the gap after the `s`-th endpoint of that edge, counting counterclockwise
/// from 1; slot 0 is the gap before the first one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Site {
    pub term: usize,
    pub at: Vec<usize>,
}

fn pattern(msg: impl Into<String>) -> Error {
    Error::Pattern(msg.into())
}

fn need(at: &[usize], k: usize, rel: Relation) -> Result<()> {
    if at.len() != k {
        return Err(pattern(format!("{rel:?} needs {k} site numbers, got {}", at.len())));
    }
    Ok(())
}

/// Replace the matched term by the right-hand side of `rel`.
pub fn apply_relation(expr: &SkeinExpression, rel: Relation, site: &Site) -> Result<SkeinExpression> {
    let (d, c) = expr.term(site.term)?;
    let (d, c) = (d.clone(), c.clone());
    let rhs = rewrite(&d, rel, &site.at)?;
    let mut out = expr.clone();
    out.add_term(&d, &-&c)?;
    for (e, k) in rhs {
        out.add_term(&e, &(&c * &k))?;
    }
    Ok(out)
}

/// The right-hand side of `rel` at `at` in `d`, as diagrams with coefficients.
pub fn rewrite(d: &WebDiagram, rel: Relation, at: &[usize]) -> Result<Vec<(WebDiagram, LaurentScalar)>> {
    let n = d.n;
    match rel {
        Relation::R1 => {
            need(at, 1, rel)?;
            let c = at[0];
            let Some(Node::Crossing { over_in, under_in }) = d.nodes.get(c) else {
                return Err(pattern(format!("node {c} is not a crossing")));
            };
            let smooth = smooth_crossing(d, c)?;
            let switched = switch_crossing(d, c)?;
            Ok(if crossing_sign(*over_in, *under_in) > 0 {
                vec![(smooth, &q_frac(-1) * &q_diff(n)), (switched, q_frac(-2))]
            } else {
                vec![(switched, q_frac(2)), (smooth, -&(&q_frac(1) * &q_diff(n)))]
            })
        }
        Relation::R2 => {
            need(at, 1, rel)?;
            let s = kink_sign(d, at[0])?;
            let t = t_v(n);
            let k = if s > 0 { t } else { t.inverse_monomial().expect("t is a monomial") };
            Ok(vec![(unkink(d, at[0])?, k)])
        }
        Relation::R3 => {
            need(at, 1, rel)?;
            if at[0] >= d.loops.len() {
                return Err(pattern(format!("no free loop {}", at[0])));
            }
            let mut e = d.clone();
            e.loops.remove(at[0]);
            Ok(vec![(e, unknot_value(n))])
        }
        Relation::R4 | Relation::R9 => {
            need(at, 2, rel)?;
            let mode = if rel == Relation::R4 { Mode::Stated } else { Mode::Based };
            eliminate_pair(d, at[0], at[1], mode).map_err(|e| match e {
                Error::Precondition(m) => Error::Pattern(m),
                other => other,
            })
        }
        Relation::R5 => {
            need(at, 4, rel)?;
            vertex_to_boundary(d, at[0], at[1], at[2], at[3])
        }
        Relation::R6 => {
            need(at, 2, rel)?;
            close_cap(d, at[0], at[1])
        }
        Relation::R7 => {
            need(at, 3, rel)?;
            cut_arc(d, at[0], at[1], at[2])
        }
        Relation::R8 => {
            if at.len() == 2 {
                return boundary_crossing(d, at[0], Some(at[1]));
            }
            need(at, 1, rel)?;
            boundary_crossing(d, at[0], None)
        }
    }
}

fn edge_lists(d: &WebDiagram) -> Vec<Vec<usize>> {
    (0..d.ideal_points).map(|e| d.edge_endpoints_ccw(e)).collect()
}

/// The face containing slot `slot` of `edge`; `None` when the diagram has no endpoints at all.
fn slot_face(d: &WebDiagram, m: &MapView, edge: usize, slot: usize) -> Result<Option<usize>> {
    if edge >= d.ideal_points {
        return Err(pattern(format!("no boundary edge {edge}")));
    }
    let lists = edge_lists(d);
    if slot > lists[edge].len() {
        return Err(pattern(format!("edge {edge} has no slot {slot}")));
    }
    let before = if slot > 0 {
        Some(lists[edge][slot - 1])
    } else {
        lists[..edge].iter().rev().chain(lists[edge..].iter().rev()).find_map(|l| l.last().copied())
    };
    Ok(before.map(|x| m.face[m.dart(x, 0)]))
}

/// Add endpoints (already pushed as nodes) to `edge` at `slot`, in counterclockwise order.
fn place(d: &mut WebDiagram, mut lists: Vec<Vec<usize>>, edge: usize, slot: usize, new: &[usize]) {
    let tail = lists[edge].split_off(slot);
    lists[edge].extend_from_slice(new);
    lists[edge].extend(tail);
    d.set_heights_from_ccw(&lists);
}

fn endpoint(d: &WebDiagram, x: usize) -> Result<(usize, u8, Dir)> {
    match d.nodes.get(x) {
        Some(Node::Endpoint { edge, state, dir, .. }) => Ok((*edge, *state, *dir)),
        _ => Err(pattern(format!("node {x} is not an endpoint"))),
    }
}

fn set_state(d: &mut WebDiagram, x: usize, s: u8) {
    if let Node::Endpoint { state, .. } = &mut d.nodes[x] {
        *state = s;
    }
}

/// R5: a vertex whose corner faces the boundary becomes `n` endpoints.
fn vertex_to_boundary(d: &WebDiagram, v: usize, port: usize, edge: usize, slot: usize) -> Result<Vec<(WebDiagram, LaurentScalar)>> {
    let n = d.n;
    let sink = match d.nodes.get(v) {
        Some(Node::Sink { arity, .. }) if *arity == n => true,
        Some(Node::Source { arity, .. }) if *arity == n => false,
        _ => return Err(pattern(format!("node {v} is not a vertex of valence {n}"))),
    };
    if port >= n {
        return Err(pattern(format!("vertex {v} has no port {port}")));
    }
    let m = MapView::new(d)?;
    if let Some(f) = slot_face(d, &m, edge, slot)? {
        if m.corner_face(v, port) != f {
            return Err(pattern("the chosen corner does not face the chosen slot"));
        }
    }
    let lists = edge_lists(d);
    let a = LaurentScalar::v_pow(a_exponent(n)?);
    let mut out = Vec::new();
    for sigma in perm::all(n) {
        let mut e = d.clone();
        let mut new = Vec::new();
        for k in 0..n {
            let dir = if sink { Dir::In } else { Dir::Out };
            let x = e.add_node(Node::Endpoint { edge, height: 0, state: sigma[k] as u8 + 1, dir });
            // the k-th new endpoint counterclockwise takes over vertex port `port - k`
            let vp = (v, (port + n - k) % n);
            for arc in e.arcs.iter_mut() {
                if arc.head == vp {
                    arc.head = (x, 0);
                }
                if arc.tail == vp {
                    arc.tail = (x, 0);
                }
            }
            new.push(x);
        }
        place(&mut e, lists.clone(), edge, slot, &new);
        e.remove_nodes(&BTreeSet::from([v]));
        let coeff = &a * &neg_q_pow(n, perm::length(&sigma) as i64);
        out.push((e, coeff));
    }
    Ok(out)
}

/// R6: an arc between neighbouring endpoints around an empty region.
fn close_cap(d: &WebDiagram, x: usize, y: usize) -> Result<Vec<(WebDiagram, LaurentScalar)>> {
    let (ex, _, _) = endpoint(d, x)?;
    let (ey, _, _) = endpoint(d, y)?;
    if ex != ey {
        return Err(pattern("the endpoints lie on different edges"));
    }
    let list = d.edge_endpoints_ccw(ex);
    let (px, py) = (list.iter().position(|&z| z == x).unwrap(), list.iter().position(|&z| z == y).unwrap());
    let (lo, hi) = if px < py { (x, y) } else { (y, x) };
    if px.abs_diff(py) != 1 {
        return Err(pattern("the endpoints are not neighbours"));
    }
    let joined = d.arcs.iter().any(|a| (a.tail.0, a.head.0) == (x, y) || (a.tail.0, a.head.0) == (y, x));
    let m = MapView::new(d)?;
    if !joined || m.face_darts(m.face[m.dart(lo, 0)]).len() != 1 {
        return Err(pattern("the endpoints are not joined by an arc around an empty region"));
    }
    let (_, j, _) = endpoint(d, lo)?;
    let (_, i, _) = endpoint(d, hi)?;
    let mut e = d.clone();
    e.remove_nodes(&BTreeSet::from([x, y]));
    let lists = edge_lists(&e);
    e.set_heights_from_ccw(&lists);
    if bar(d.n, j as usize) != i as usize {
        return Ok(vec![]);
    }
    Ok(vec![(e, c_i(d.n, i as usize))])
}

/// R7: cut an arc running along a boundary gap into two boundary arcs.
fn cut_arc(d: &WebDiagram, arc: usize, edge: usize, slot: usize) -> Result<Vec<(WebDiagram, LaurentScalar)>> {
    let n = d.n;
    let Some(&Arc { tail, head, layer }) = d.arcs.get(arc) else {
        return Err(pattern(format!("no arc {arc}")));
    };
    let m = MapView::new(d)?;
    let right_face = m.face[m.dart(tail.0, tail.1)];
    let left_face = m.face[m.dart(head.0, head.1)];
    // with the boundary on the right the arc runs up the edge
    let upward = match slot_face(d, &m, edge, slot)? {
        None => true,
        Some(f) if f == right_face => true,
        Some(f) if f == left_face => false,
        Some(_) => return Err(pattern("the arc does not run along the chosen slot")),
    };
    let lists = edge_lists(d);
    let mut out = Vec::new();
    for i in 1..=n {
        let ib = bar(n, i);
        let mut e = d.clone();
        e.arcs.remove(arc);
        let bottom_dir = if upward { Dir::In } else { Dir::Out };
        let top_dir = if upward { Dir::Out } else { Dir::In };
        let bottom = e.add_node(Node::Endpoint { edge, height: 0, state: ib as u8, dir: bottom_dir });
        let top = e.add_node(Node::Endpoint { edge, height: 0, state: i as u8, dir: top_dir });
        let (into, from) = if upward { (bottom, top) } else { (top, bottom) };
        e.arcs.push(Arc { tail, head: (into, 0), layer });
        e.arcs.push(Arc { tail: (from, 0), head, layer });
        place(&mut e, lists.clone(), edge, slot, &[bottom, top]);
        e.contract_passes();
        let k = c_i(n, ib).inverse_monomial().expect("c is a monomial");
        out.push((e, k));
    }
    Ok(out)
}

/// R8: a crossing whose strands run straight to neighbouring endpoints, the over
/// strand to the lower one.
fn boundary_crossing(d: &WebDiagram, c: usize, edge: Option<usize>) -> Result<Vec<(WebDiagram, LaurentScalar)>> {
    let n = d.n;
    let Some(&Node::Crossing { over_in, .. }) = d.nodes.get(c) else {
        return Err(pattern(format!("node {c} is not a crossing")));
    };
    let pt = d.ports();
    let m = MapView::new(d)?;
    let reach = |p: usize| {
        d.other_end(&pt, (c, p)).map(|o| o.0).filter(|&x| matches!(d.nodes[x], Node::Endpoint { .. }))
    };
    // corners of the crossing that open onto an empty gap between neighbouring endpoints
    let mut found = Vec::new();
    for p in 0..4 {
        let (Some(x), Some(y)) = (reach(p), reach((p + 1) % 4)) else { continue };
        let (ex, _, _) = endpoint(d, x)?;
        let (ey, _, _) = endpoint(d, y)?;
        if ex != ey || edge.is_some_and(|e| e != ex) {
            continue;
        }
        let list = d.edge_endpoints_ccw(ex);
        let (a, b) = (list.iter().position(|&z| z == x).unwrap(), list.iter().position(|&z| z == y).unwrap());
        if a.abs_diff(b) != 1 {
            continue;
        }
        let (lower, lower_port, upper) = if a < b { (x, p, y) } else { (y, (p + 1) % 4, x) };
        let f = m.face[m.dart(lower, 0)];
        if f == m.corner_face(c, p) && m.face_darts(f).len() == 2 {
            found.push((lower_port, lower, upper));
        }
    }
    let (pb, bottom, top) = match found[..] {
        [one] => one,
        [] => return Err(pattern("the crossing strands do not reach neighbouring endpoints around an empty region")),
        _ => return Err(pattern("the crossing meets the boundary at several corners; give the edge")),
    };
    if pb % 2 != over_in as usize % 2 {
        return Err(pattern("mirrored crossing: the over strand must reach the lower endpoint; reflect the diagram"));
    }
    let (_, j, _) = endpoint(d, bottom)?;
    let (_, i, _) = endpoint(d, top)?;
    let base = q_frac(-1);
    let mut out = Vec::new();
    for swap_states in [true, false] {
        let coeff = if swap_states {
            if j >= i {
                continue;
            }
            &base * &q_diff(n)
        } else if i == j {
            &base * &q_pow(n, 1)
        } else {
            base.clone()
        };
        let mut e = d.clone();
        let (hb, ht) = match (&e.nodes[bottom], &e.nodes[top]) {
            (Node::Endpoint { height: hb, .. }, Node::Endpoint { height: ht, .. }) => (*hb, *ht),
            _ => unreachable!(),
        };
        if let Node::Endpoint { height, .. } = &mut e.nodes[bottom] {
            *height = ht;
        }
        if let Node::Endpoint { height, .. } = &mut e.nodes[top] {
            *height = hb;
        }
        // the node that was lower is now the top endpoint
        if swap_states {
            set_state(&mut e, bottom, i);
            set_state(&mut e, top, j);
        }
        dissolve(&mut e, &BTreeSet::from([c]))?;
        out.push((e, coeff));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::quantum_integer;
    use crate::web::{bigon_arc, kink, unknot, validate};

    fn valid(d: &WebDiagram) {
        assert!(validate(d).is_empty(), "{:?}", validate(d));
    }

    #[test]
    fn circle_and_kink() {
        for n in 2..=4 {
            let e = SkeinExpression::from_diagram(&unknot(n)).unwrap();
            let r = apply_relation(&e, Relation::R3, &Site { term: 0, at: vec![0] }).unwrap();
            assert_eq!(r.as_scalar().unwrap(), unknot_value(n));
            let d = crate::web::kinked_unknot(n, &[1]).unwrap();
            let out = rewrite(&d, Relation::R2, &[0]).unwrap();
            assert_eq!(out[0].1, t_v(n));
            assert_eq!(out[0].0.loops.len(), 1);
        }
        assert_eq!(unknot_value(2), -quantum_integer(2));
    }

    #[test]
    fn cap_needs_opposite_states() {
        let n = 3;
        for i in 1..=3u8 {
            for j in 1..=3u8 {
                let mut d = WebDiagram::empty(n, 1);
                // negatively ordered: height 2 comes first counterclockwise
                let first = d.add_node(Node::Endpoint { edge: 0, height: 2, state: i, dir: Dir::In });
                let second = d.add_node(Node::Endpoint { edge: 0, height: 1, state: j, dir: Dir::Out });
                d.add_arc((second, 0), (first, 0));
                let out = rewrite(&d, Relation::R6, &[first, second]).unwrap();
                if bar(n, i as usize) == j as usize {
                    assert_eq!(out.len(), 1);
                    assert_eq!(out[0].1, c_i(n, j as usize));
                } else {
                    assert!(out.is_empty());
                }
            }
        }
    }

    #[test]
    fn cutting_then_capping_a_circle_gives_its_value() {
        for n in 2..=4 {
            let mut d = WebDiagram::empty(n, 1);
            let p = d.add_node(Node::Pass);
            d.add_arc((p, 1), (p, 0));
            let mut total = LaurentScalar::zero();
            for (e, k) in rewrite(&d, Relation::R7, &[0, 0, 0]).unwrap() {
                valid(&e);
                let eps = e.edge_endpoints_ccw(0);
                for (f, k2) in rewrite(&e, Relation::R6, &[eps[0], eps[1]]).unwrap() {
                    assert!(f.nodes.is_empty() && f.arcs.is_empty());
                    total.add_assign_ref(&(&k * &k2));
                }
            }
            assert_eq!(total, unknot_value(n));
        }
    }

    #[test]
    fn vertex_next_to_the_boundary() {
        let n = 2;
        // a source whose two legs end on the boundary of a monogon
        let mut d = WebDiagram::empty(n, 1);
        let s = d.add_node(Node::Source { arity: 2, base: 0 });
        let a = d.add_node(Node::Endpoint { edge: 0, height: 2, state: 1, dir: Dir::In });
        let b = d.add_node(Node::Endpoint { edge: 0, height: 1, state: 1, dir: Dir::In });
        d.add_arc((s, 0), (a, 0));
        d.add_arc((s, 1), (b, 0));
        valid(&d);
        let m = MapView::new(&d).unwrap();
        let mut hits = 0;
        for port in 0..2 {
            for slot in 0..=2 {
                let Ok(out) = rewrite(&d, Relation::R5, &[s, port, 0, slot]) else { continue };
                assert_eq!(m.corner_face(s, port), slot_face(&d, &m, 0, slot).unwrap().unwrap());
                assert_eq!(out.len(), 2);
                for (e, _) in &out {
                    valid(e);
                    assert_eq!(e.edge_endpoints_ccw(0).len(), 4);
                }
                hits += 1;
            }
        }
        assert!(hits > 0);
    }

    #[test]
    fn crossing_at_the_boundary() {
        let n = 2;
        // two bigon arcs stacked cross once near each edge
        let d = crate::web::stack(&bigon_arc(n, 1, 2), &bigon_arc(n, 2, 1)).unwrap();
        let c = d.crossings().next().unwrap();
        let (d2, _) = kink(&d, 0, 1, true).unwrap();
        assert!(rewrite(&d2, Relation::R8, &[d2.nodes.len() - 1]).is_err());
        assert!(rewrite(&d, Relation::R8, &[c]).is_err());
        match rewrite(&d, Relation::R8, &[c, 1]) {
            Ok(out) => {
                for (e, _) in &out {
                    valid(e);
                    assert_eq!(e.crossings().count(), 0);
                }
            }
            Err(Error::Pattern(m)) => assert!(m.contains("mirrored") || m.contains("neighbouring"), "{m}"),
            Err(e) => panic!("{e}"),
        }
    }
}
