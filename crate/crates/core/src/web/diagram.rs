use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(node, port)`
pub type PortRef = (usize, usize);

/// Endpoint direction: `In` points toward the boundary (the arc ends there).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    In,
    Out,
}

/// Height convention on a boundary edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum EdgeOrder {
    #[default]
    Negative,
    Positive,
}

/// Ports are numbered counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    /// The over strand enters at `over_in` and leaves at `over_in + 2`; same for the under strand.
    Crossing { over_in: u8, under_in: u8 },
    /// All ports incoming. `base` marks the first half-edge of the linear order.
    Sink { arity: usize, base: usize },
    /// All ports outgoing.
    Source { arity: usize, base: usize },
    /// One port on boundary edge `edge`; heights on an edge are `1..=m`.
    Endpoint { edge: usize, height: usize, state: u8, dir: Dir },
    /// Port 0 in, port 1 out; removed by [`WebDiagram::contract_passes`].
    Pass,
    /// Placeholder for a region cut out by surgery.
    Blob { arity: usize },
}

impl Node {
    pub fn arity(&self) -> usize {
        match self {
            Node::Crossing { .. } => 4,
            Node::Sink { arity, .. } | Node::Source { arity, .. } | Node::Blob { arity } => *arity,
            Node::Endpoint { .. } => 1,
            Node::Pass => 2,
        }
    }

    /// Whether arcs arrive at `port`; `None` for blobs.
    pub fn is_in_port(&self, port: usize) -> Option<bool> {
        Some(match self {
            Node::Crossing { over_in, under_in } => port == *over_in as usize || port == *under_in as usize,
            Node::Sink { .. } => true,
            Node::Source { .. } => false,
            Node::Endpoint { dir, .. } => *dir == Dir::In,
            Node::Pass => port == 0,
            Node::Blob { .. } => return None,
        })
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self, Node::Sink { .. } | Node::Source { .. })
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self, Node::Crossing { .. })
    }
}

/// `+1` iff the under strand enters one step counterclockwise from the over strand.
pub fn crossing_sign(over_in: u8, under_in: u8) -> i64 {
    if (over_in + 1) % 4 == under_in {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub tail: PortRef,
    pub head: PortRef,
    /// Which stacked layer the arc came from, if any.
    pub layer: Option<u32>,
}

/// A stated n-web diagram in an ideal polygon with `ideal_points` corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebDiagram {
    pub n: usize,
    pub ideal_points: usize,
    pub ordering: Vec<EdgeOrder>,
    pub nodes: Vec<Node>,
    pub arcs: Vec<Arc>,
    /// Closed loops without nodes, with their layer tags.
    pub loops: Vec<Option<u32>>,
    /// Declared `(sink, source)` pairs.
    pub pairs: Vec<(usize, usize)>,
}

/// For every port, the arc attached to it.
#[derive(Clone, Debug)]
pub struct PortTable {
    table: Vec<Vec<Option<usize>>>,
}

impl PortTable {
    pub fn arc_at(&self, p: PortRef) -> Option<usize> {
        self.table[p.0][p.1]
    }
}

impl WebDiagram {
    pub fn empty(n: usize, ideal_points: usize) -> WebDiagram {
        WebDiagram {
            n,
            ideal_points,
            ordering: vec![EdgeOrder::Negative; ideal_points],
            nodes: Vec::new(),
            arcs: Vec::new(),
            loops: Vec::new(),
            pairs: Vec::new(),
        }
    }

    pub fn add_node(&mut self, node: Node) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn add_arc(&mut self, tail: PortRef, head: PortRef) -> usize {
        self.arcs.push(Arc { tail, head, layer: None });
        self.arcs.len() - 1
    }

    pub fn ports(&self) -> PortTable {
        let mut table: Vec<Vec<Option<usize>>> = self.nodes.iter().map(|n| vec![None; n.arity()]).collect();
        for (i, a) in self.arcs.iter().enumerate() {
            for p in [a.tail, a.head] {
                if let Some(slot) = table.get_mut(p.0).and_then(|r| r.get_mut(p.1)) {
                    *slot = Some(i);
                }
            }
        }
        PortTable { table }
    }

    /// The port at the other end of the arc attached at `p`.
    pub fn other_end(&self, pt: &PortTable, p: PortRef) -> Option<PortRef> {
        let a = &self.arcs[pt.arc_at(p)?];
        Some(if a.tail == p { a.head } else { a.tail })
    }

    pub fn crossings(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes.iter().enumerate().filter(|(_, n)| n.is_crossing()).map(|(i, _)| i)
    }

    pub fn endpoints(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes.iter().enumerate().filter(|(_, n)| matches!(n, Node::Endpoint { .. })).map(|(i, _)| i)
    }

    pub fn sinks(&self) -> Vec<usize> {
        self.nodes.iter().enumerate().filter(|(_, n)| matches!(n, Node::Sink { .. })).map(|(i, _)| i).collect()
    }

    pub fn sources(&self) -> Vec<usize> {
        self.nodes.iter().enumerate().filter(|(_, n)| matches!(n, Node::Source { .. })).map(|(i, _)| i).collect()
    }

    pub fn is_closed(&self) -> bool {
        self.endpoints().next().is_none()
    }

    /// Drop the given nodes and every arc touching them; renumber the rest.
    pub fn remove_nodes(&mut self, dead: &BTreeSet<usize>) {
        let mut map = vec![usize::MAX; self.nodes.len()];
        let mut kept = Vec::new();
        for (i, n) in self.nodes.drain(..).enumerate() {
            if !dead.contains(&i) {
                map[i] = kept.len();
                kept.push(n);
            }
        }
        self.nodes = kept;
        self.arcs.retain(|a| !dead.contains(&a.tail.0) && !dead.contains(&a.head.0));
        for a in &mut self.arcs {
            a.tail.0 = map[a.tail.0];
            a.head.0 = map[a.head.0];
        }
        self.pairs.retain(|(s, t)| !dead.contains(s) && !dead.contains(t));
        for (s, t) in &mut self.pairs {
            *s = map[*s];
            *t = map[*t];
        }
    }

    /// Remove every `Pass` node, merging its two arcs; a cycle of passes becomes a free loop.
    pub fn contract_passes(&mut self) {
        let mut dead = BTreeSet::new();
        loop {
            let pt = self.ports();
            let Some(p) = (0..self.nodes.len()).find(|i| !dead.contains(i) && self.nodes[*i] == Node::Pass) else {
                break;
            };
            let (ai, bi) = (pt.arc_at((p, 0)).expect("pass in"), pt.arc_at((p, 1)).expect("pass out"));
            if ai == bi {
                let layer = self.arcs[ai].layer;
                self.loops.push(layer);
                self.arcs.swap_remove(ai);
            } else {
                let head = self.arcs[bi].head;
                self.arcs[ai].head = head;
                self.arcs.swap_remove(bi);
            }
            dead.insert(p);
        }
        self.remove_nodes(&dead);
    }

    /// Put arcs in a canonical order (by tail port) so that arc ids are reproducible.
    pub fn sort_arcs(&mut self) {
        self.arcs.sort_by_key(|a| (a.tail, a.head));
    }

    /// Endpoints of one boundary edge in counterclockwise order.
    pub fn edge_endpoints_ccw(&self, edge: usize) -> Vec<usize> {
        let mut eps: Vec<(usize, usize)> = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| match n {
                Node::Endpoint { edge: e, height, .. } if *e == edge => Some((*height, i)),
                _ => None,
            })
            .collect();
        match self.ordering.get(edge).copied().unwrap_or_default() {
            EdgeOrder::Negative => eps.sort_by(|a, b| b.cmp(a)),
            EdgeOrder::Positive => eps.sort(),
        }
        eps.into_iter().map(|(_, i)| i).collect()
    }

    /// All endpoints in counterclockwise boundary order, edge 0 first.
    pub fn boundary_ccw(&self) -> Vec<usize> {
        (0..self.ideal_points).flat_map(|e| self.edge_endpoints_ccw(e)).collect()
    }

    /// Reassign heights on every edge so they agree with the given counterclockwise orders.
    pub fn set_heights_from_ccw(&mut self, per_edge: &[Vec<usize>]) {
        for (e, list) in per_edge.iter().enumerate() {
            let m = list.len();
            for (p, &node) in list.iter().enumerate() {
                let h = match self.ordering.get(e).copied().unwrap_or_default() {
                    EdgeOrder::Negative => m - p,
                    EdgeOrder::Positive => p + 1,
                };
                if let Node::Endpoint { edge, height, .. } = &mut self.nodes[node] {
                    *edge = e;
                    *height = h;
                }
            }
        }
    }

    /// Sink/source pairs: the declared ones, or the unique pair when there is one of each.
    pub fn pairing(&self) -> Result<Vec<(usize, usize)>> {
        let (sinks, sources) = (self.sinks(), self.sources());
        if sinks.len() != sources.len() {
            return Err(Error::Precondition(format!(
                "unbalanced vertices: {} sinks, {} sources",
                sinks.len(),
                sources.len()
            )));
        }
        if !self.pairs.is_empty() || sinks.is_empty() {
            let mut seen_s: Vec<usize> = self.pairs.iter().map(|p| p.0).collect();
            let mut seen_t: Vec<usize> = self.pairs.iter().map(|p| p.1).collect();
            seen_s.sort();
            seen_t.sort();
            if seen_s != sinks || seen_t != sources {
                return Err(Error::Precondition("unpaired vertices: pairs must cover every sink and source".into()));
            }
            return Ok(self.pairs.clone());
        }
        if sinks.len() == 1 {
            return Ok(vec![(sinks[0], sources[0])]);
        }
        Err(Error::Precondition("unpaired vertices: declare sink/source pairs".into()))
    }

    /// Counts of each node kind, used for quick summaries.
    pub fn census(&self) -> HashMap<&'static str, usize> {
        let mut m = HashMap::new();
        for n in &self.nodes {
            let k = match n {
                Node::Crossing { .. } => "crossings",
                Node::Sink { .. } => "sinks",
                Node::Source { .. } => "sources",
                Node::Endpoint { .. } => "endpoints",
                Node::Pass => "passes",
                Node::Blob { .. } => "blobs",
            };
            *m.entry(k).or_insert(0) += 1;
        }
        m.insert("loops", self.loops.len());
        m
    }
}
