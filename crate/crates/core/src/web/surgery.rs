//! Cutting a disk out of a diagram and gluing a tangle into the hole.

use std::collections::BTreeSet;

use super::diagram::{Arc, Node, PortRef, WebDiagram};
use super::map::MapView;
use crate::error::{Error, Result};

/// Put a `Pass` node in the middle of `arc`; returns the new node.
pub fn subdivide(d: &mut WebDiagram, arc: usize) -> usize {
    let p = d.add_node(Node::Pass);
    let Arc { head, layer, .. } = d.arcs[arc].clone();
    d.arcs[arc].head = (p, 0);
    d.arcs.push(Arc { tail: (p, 1), head, layer });
    p
}

/// External ports of a connected set of nodes, counterclockwise around its outline.
pub fn region_boundary(m: &MapView, region: &BTreeSet<usize>) -> Result<Vec<PortRef>> {
    let inside = |x: usize| !m.is_hub_dart(x) && region.contains(&m.dart_node[x]);
    let ext: Vec<usize> = (0..m.darts()).filter(|&x| inside(x) && !inside(m.alpha[x])).collect();
    let Some(&start) = ext.first() else {
        return Err(Error::Pattern("region has no external ports".into()));
    };
    let mut out = vec![start];
    let mut x = start;
    loop {
        let mut y = m.sigma[x];
        let mut guard = 0;
        while inside(m.alpha[y]) {
            y = m.sigma[m.alpha[y]];
            guard += 1;
            if guard > m.darts() {
                return Err(Error::Pattern("region outline does not close".into()));
            }
        }
        if y == start {
            break;
        }
        out.push(y);
        x = y;
    }
    if out.len() != ext.len() {
        return Err(Error::Pattern("region is not a disk".into()));
    }
    Ok(out.into_iter().map(|x| (m.dart_node[x], m.dart_port[x])).collect())
}

/// Replace the nodes `dead` by one blob whose port `j` takes over the arc at `ext[j]`.
/// Arcs between dead nodes that are not listed in `ext` disappear.
pub fn excise(d: &mut WebDiagram, dead: &BTreeSet<usize>, ext: &[PortRef]) -> Result<usize> {
    let listed: BTreeSet<PortRef> = ext.iter().copied().collect();
    if listed.len() != ext.len() || ext.iter().any(|p| !dead.contains(&p.0)) {
        return Err(Error::Pattern("external ports must be distinct ports of the region".into()));
    }
    let blob = d.add_node(Node::Blob { arity: ext.len() });
    for (j, &p) in ext.iter().enumerate() {
        let pt = d.ports();
        let Some(a) = pt.arc_at(p) else {
            return Err(Error::Pattern(format!("port {p:?} is unused")));
        };
        let other = if d.arcs[a].tail == p { d.arcs[a].head } else { d.arcs[a].tail };
        let a = if dead.contains(&other.0) || other.0 == blob {
            // both ends leave through the outline: split the arc outside
            subdivide(d, a);
            d.ports().arc_at(p).expect("subdivided arc")
        } else {
            a
        };
        if d.arcs[a].tail == p {
            d.arcs[a].tail = (blob, j);
        } else {
            d.arcs[a].head = (blob, j);
        }
    }
    d.remove_nodes(dead);
    Ok(blob - dead.len())
}

/// Glue `tangle` into `blob`: the tangle's `j`-th boundary endpoint (counterclockwise)
/// meets blob port `j`. Passes left over from [`excise`] are contracted.
pub fn splice(d: &mut WebDiagram, blob: usize, tangle: &WebDiagram) -> Result<()> {
    let Node::Blob { arity } = d.nodes[blob] else {
        return Err(Error::Pattern("splice target is not a blob".into()));
    };
    let order = tangle.boundary_ccw();
    if order.len() != arity {
        return Err(Error::Pattern(format!("tangle has {} endpoints, hole has {arity}", order.len())));
    }
    let mut slot = vec![usize::MAX; tangle.nodes.len()];
    for (j, &e) in order.iter().enumerate() {
        slot[e] = j;
    }
    let mut map = vec![usize::MAX; tangle.nodes.len()];
    for (i, n) in tangle.nodes.iter().enumerate() {
        if !matches!(n, Node::Endpoint { .. }) {
            map[i] = d.add_node(n.clone());
        }
    }
    let pt = d.ports();
    let outer: Vec<usize> = (0..arity)
        .map(|j| pt.arc_at((blob, j)).ok_or_else(|| Error::Pattern("blob port without arc".into())))
        .collect::<Result<_>>()?;
    let mut drop = BTreeSet::new();
    for a in &tangle.arcs {
        let tail = if slot[a.tail.0] != usize::MAX {
            let j = slot[a.tail.0];
            let o = &d.arcs[outer[j]];
            if o.head != (blob, j) {
                return Err(Error::Pattern("orientation mismatch at the hole".into()));
            }
            drop.insert(outer[j]);
            o.tail
        } else {
            (map[a.tail.0], a.tail.1)
        };
        let head = if slot[a.head.0] != usize::MAX {
            let j = slot[a.head.0];
            let o = &d.arcs[outer[j]];
            if o.tail != (blob, j) {
                return Err(Error::Pattern("orientation mismatch at the hole".into()));
            }
            drop.insert(outer[j]);
            o.head
        } else {
            (map[a.head.0], a.head.1)
        };
        d.arcs.push(Arc { tail, head, layer: a.layer });
    }
    let mut k = 0;
    d.arcs.retain(|_| {
        k += 1;
        !drop.contains(&(k - 1))
    });
    d.loops.extend(tangle.loops.iter().copied());
    d.pairs.extend(tangle.pairs.iter().map(|(s, t)| (map[*s], map[*t])));
    d.remove_nodes(&BTreeSet::from([blob]));
    d.contract_passes();
    Ok(())
}
