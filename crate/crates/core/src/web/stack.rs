//! Stacking one diagram above another in the same polygon.

use super::diagram::{crossing_sign, Dir, EdgeOrder, Node, WebDiagram};
use super::geom::{q, Pt, SKind, Sketch};
use super::surgery::splice;
use crate::error::{Error, Result};

const TOP: u32 = 0;
const BOTTOM: u32 = 1;

fn compatible(a: &WebDiagram, b: &WebDiagram) -> Result<()> {
    if a.n != b.n || a.ideal_points != b.ideal_points || a.ordering != b.ordering {
        return Err(Error::Precondition("stacking needs the same rank, polygon and edge conventions".into()));
    }
    Ok(())
}

/// `a` above `b`. Arcs coming from `a` are tagged with layer 0, those from `b` with layer 1.
pub fn stack(a: &WebDiagram, b: &WebDiagram) -> Result<WebDiagram> {
    compatible(a, b)?;
    let mut last = None;
    for jitter in 0..8i64 {
        match stack_at(a, b, jitter) {
            Ok(d) => return Ok(d),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn stack_at(a: &WebDiagram, b: &WebDiagram, jitter: i64) -> Result<WebDiagram> {
    let k = a.ideal_points;
    let mut s = Sketch::new(a.n, k);
    s.ordering = a.ordering.clone();
    let centers = [
        Pt::new(q(-1, 5) + q(jitter, 53), q(1, 7) - q(jitter * jitter, 211)),
        Pt::new(q(1, 4) - q(jitter, 97), q(-1, 9) + q(jitter, 61)),
    ];
    let blobs: Vec<usize> = centers.iter().map(|c| s.node(c.clone(), SKind::Blob { base_path: None })).collect();
    for e in 0..k {
        let (ea, eb) = (a.edge_endpoints_ccw(e), b.edge_endpoints_ccw(e));
        let m = ea.len() + eb.len();
        let tagged: Vec<(usize, usize)> = match a.ordering[e] {
            EdgeOrder::Negative => ea.iter().map(|&x| (0, x)).chain(eb.iter().map(|&x| (1, x))).collect(),
            EdgeOrder::Positive => eb.iter().map(|&x| (1, x)).chain(ea.iter().map(|&x| (0, x))).collect(),
        };
        for (j, (side, x)) in tagged.into_iter().enumerate() {
            let d = if side == 0 { a } else { b };
            let Node::Endpoint { state, dir, .. } = d.nodes[x] else { unreachable!() };
            let t = s.slot(e, j, m);
            let ep = s.endpoint(e, state, t);
            let path = match dir {
                Dir::In => s.path(blobs[side], ep, vec![], if side == 0 { 1 } else { 0 }),
                Dir::Out => s.path(ep, blobs[side], vec![], if side == 0 { 1 } else { 0 }),
            };
            s.paths[path].layer = Some(side as u32);
            let first = d.boundary_ccw().first() == Some(&x);
            if first {
                s.nodes[blobs[side]].kind = SKind::Blob { base_path: Some(path) };
            }
        }
    }
    let mut d = s.build()?;
    // blobs are the first sketch nodes after the crossings
    let blob_ids: Vec<usize> = (0..d.nodes.len()).filter(|&i| matches!(d.nodes[i], Node::Blob { .. })).collect();
    let (ba, bb) = (blob_ids[0], blob_ids[1]);
    let (mut ta, mut tb) = (a.clone(), b.clone());
    for x in ta.arcs.iter_mut() {
        x.layer = Some(TOP);
    }
    for l in ta.loops.iter_mut() {
        *l = Some(TOP);
    }
    for x in tb.arcs.iter_mut() {
        x.layer = Some(BOTTOM);
    }
    for l in tb.loops.iter_mut() {
        *l = Some(BOTTOM);
    }
    // splice the higher-numbered blob first so the other id stays valid
    splice(&mut d, bb, &tb)?;
    splice(&mut d, ba, &ta)?;
    Ok(d)
}

/// Sum of the signs of crossings where a layer-`top` strand passes over a layer-`bottom` strand.
pub fn layer_writhe(d: &WebDiagram, top: u32, bottom: u32) -> i64 {
    let pt = d.ports();
    let layer = |p: (usize, usize)| pt.arc_at(p).and_then(|a| d.arcs[a].layer);
    d.crossings()
        .map(|c| {
            let Node::Crossing { over_in, under_in } = d.nodes[c] else { unreachable!() };
            let (lo, lu) = (layer((c, over_in as usize)), layer((c, under_in as usize)));
            if lo == Some(top) && lu == Some(bottom) {
                crossing_sign(over_in, under_in)
            } else {
                0
            }
        })
        .sum()
}

/// `w(a, b)`: the signed count of crossings between `a` and `b` strands when `a` is stacked over `b`, reduced mod `n`.
pub fn relative_writhe(a: &WebDiagram, b: &WebDiagram) -> Result<i64> {
    let d = stack(a, b)?;
    Ok(layer_writhe(&d, TOP, BOTTOM).rem_euclid(a.n as i64))
}

/// The raw signed count, before reduction.
pub fn mutual_crossing_sum(a: &WebDiagram, b: &WebDiagram) -> Result<i64> {
    let d = stack(a, b)?;
    Ok(layer_writhe(&d, TOP, BOTTOM))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::web::{bigon_arc, isomorphic, stats, validate};

    #[test]
    fn two_arcs_cross_once() {
        let d = stack(&bigon_arc(2, 1, 2), &bigon_arc(2, 2, 1)).unwrap();
        assert!(validate(&d).is_empty(), "{:?}", validate(&d));
        let st = stats(&d);
        assert_eq!((st.e, st.w.abs()), (4, 1));
        assert_eq!(layer_writhe(&d, TOP, BOTTOM), st.w);
    }

    #[test]
    fn empty_is_a_unit_and_stacking_associates() {
        let (a, b, c) = (bigon_arc(3, 1, 2), bigon_arc(3, 2, 3), bigon_arc(3, 3, 1));
        let e = WebDiagram::empty(3, 2);
        assert!(isomorphic(&stack(&e, &b).unwrap(), &b).unwrap());
        assert!(isomorphic(&stack(&b, &e).unwrap(), &b).unwrap());
        let l = stack(&stack(&a, &b).unwrap(), &c).unwrap();
        let r = stack(&a, &stack(&b, &c).unwrap()).unwrap();
        assert!(validate(&l).is_empty() && validate(&r).is_empty());
        // the two groupings agree up to a third Reidemeister move
        assert_eq!(stats(&l), stats(&r));
    }
}
