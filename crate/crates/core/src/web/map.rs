use super::diagram::{Node, WebDiagram};
use crate::error::{Error, Result};

/// The rotation system of a diagram. Endpoints are glued to a single hub
/// vertex whose rotation is the clockwise boundary order.
#[derive(Clone, Debug)]
pub struct MapView {
    offs: Vec<usize>,
    pub dart_node: Vec<usize>,
    pub dart_port: Vec<usize>,
    pub alpha: Vec<usize>,
    pub sigma: Vec<usize>,
    /// Face to the right of each dart, walking away from its vertex: the corner
    /// swept counterclockwise from the previous dart to this one. For an endpoint
    /// this is the boundary gap that follows it counterclockwise.
    pub face: Vec<usize>,
    pub faces: usize,
    /// Endpoint darts in hub rotation order.
    pub hub: Vec<usize>,
    hub_pos: Vec<usize>,
}

impl MapView {
    pub fn new(d: &WebDiagram) -> Result<MapView> {
        let mut offs = Vec::with_capacity(d.nodes.len() + 1);
        let mut total = 0;
        for n in &d.nodes {
            offs.push(total);
            total += n.arity();
        }
        offs.push(total);
        let mut dart_node = vec![0; total];
        let mut dart_port = vec![0; total];
        for (v, n) in d.nodes.iter().enumerate() {
            for p in 0..n.arity() {
                dart_node[offs[v] + p] = v;
                dart_port[offs[v] + p] = p;
            }
        }
        let mut alpha = vec![usize::MAX; total];
        for a in &d.arcs {
            let (Some(x), Some(y)) = (dart_of(&offs, d, a.tail), dart_of(&offs, d, a.head)) else {
                return Err(Error::Precondition("arc references a missing port".into()));
            };
            if alpha[x] != usize::MAX || alpha[y] != usize::MAX {
                return Err(Error::Precondition("port used twice".into()));
            }
            alpha[x] = y;
            alpha[y] = x;
        }
        if alpha.iter().any(|&a| a == usize::MAX) {
            return Err(Error::Precondition("unused port".into()));
        }
        let mut hub: Vec<usize> = d.boundary_ccw().into_iter().map(|e| offs[e]).collect();
        hub.reverse();
        let mut hub_pos = vec![usize::MAX; total];
        for (i, &h) in hub.iter().enumerate() {
            hub_pos[h] = i;
        }
        let mut sigma = vec![0; total];
        for x in 0..total {
            let v = dart_node[x];
            sigma[x] = if let Node::Endpoint { .. } = d.nodes[v] {
                hub[(hub_pos[x] + 1) % hub.len()]
            } else {
                offs[v] + (dart_port[x] + 1) % d.nodes[v].arity()
            };
        }
        let mut face = vec![usize::MAX; total];
        let mut faces = 0;
        for x in 0..total {
            if face[x] != usize::MAX {
                continue;
            }
            let mut y = x;
            while face[y] == usize::MAX {
                face[y] = faces;
                y = sigma[alpha[y]];
            }
            faces += 1;
        }
        Ok(MapView { offs, dart_node, dart_port, alpha, sigma, face, faces, hub, hub_pos })
    }

    pub fn darts(&self) -> usize {
        self.alpha.len()
    }

    pub fn dart(&self, node: usize, port: usize) -> usize {
        self.offs[node] + port
    }

    pub fn is_hub_dart(&self, x: usize) -> bool {
        self.hub_pos[x] != usize::MAX
    }

    /// Position of an endpoint dart in the hub rotation.
    pub fn hub_index(&self, x: usize) -> Option<usize> {
        (self.hub_pos[x] != usize::MAX).then_some(self.hub_pos[x])
    }

    /// Vertex id of a dart: the node, or `usize::MAX` for the hub.
    pub fn vertex(&self, x: usize) -> usize {
        if self.is_hub_dart(x) {
            usize::MAX
        } else {
            self.dart_node[x]
        }
    }

    /// Face of the corner swept counterclockwise from `port` to `port + 1` at a node.
    pub fn corner_face(&self, node: usize, port: usize) -> usize {
        let a = self.offs[node + 1] - self.offs[node];
        self.face[self.dart(node, (port + 1) % a)]
    }

    /// Darts of a face in traversal order.
    pub fn face_darts(&self, f: usize) -> Vec<usize> {
        let Some(start) = self.face.iter().position(|&g| g == f) else { return Vec::new() };
        let mut out = vec![start];
        let mut y = self.sigma[self.alpha[start]];
        while y != start {
            out.push(y);
            y = self.sigma[self.alpha[y]];
        }
        out
    }

    /// Connected components as lists of darts, ordered by smallest dart.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let total = self.darts();
        let mut comp = vec![usize::MAX; total];
        let mut out = Vec::new();
        for s in 0..total {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            let mut list = Vec::new();
            comp[s] = id;
            while let Some(x) = stack.pop() {
                list.push(x);
                for y in [self.alpha[x], self.sigma[x]] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            list.sort();
            out.push(list);
        }
        out
    }

    /// `Σ (V − E + F − 2)` over components; zero iff the map is planar.
    pub fn euler_defect(&self) -> i64 {
        let mut defect = 0i64;
        for c in self.components() {
            let mut verts: Vec<usize> = c.iter().map(|&x| self.vertex(x)).collect();
            verts.sort();
            verts.dedup();
            let mut fs: Vec<usize> = c.iter().map(|&x| self.face[x]).collect();
            fs.sort();
            fs.dedup();
            defect += verts.len() as i64 - (c.len() / 2) as i64 + fs.len() as i64 - 2;
        }
        defect
    }
}

fn dart_of(offs: &[usize], d: &WebDiagram, p: (usize, usize)) -> Option<usize> {
    let node = d.nodes.get(p.0)?;
    (p.1 < node.arity()).then(|| offs[p.0] + p.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::web::diagram::Dir;

    fn chord_diagram(pairs: &[(usize, usize)], m: usize) -> WebDiagram {
        let mut d = WebDiagram::empty(2, 1);
        let mut ids = vec![0; m];
        for (i, id) in ids.iter_mut().enumerate() {
            let out = pairs.iter().any(|p| p.0 == i);
            let dir = if out { Dir::Out } else { Dir::In };
            *id = d.add_node(Node::Endpoint { edge: 0, height: m - i, state: 1, dir });
        }
        for &(a, b) in pairs {
            d.add_arc((ids[a], 0), (ids[b], 0));
        }
        d
    }

    #[test]
    fn nested_chords_are_planar_and_crossed_ones_are_not() {
        let ok = chord_diagram(&[(0, 1), (2, 3)], 4);
        assert_eq!(MapView::new(&ok).unwrap().euler_defect(), 0);
        let nested = chord_diagram(&[(0, 3), (1, 2)], 4);
        let m = MapView::new(&nested).unwrap();
        assert_eq!(m.euler_defect(), 0);
        assert_eq!(m.faces, 3);
        let bad = chord_diagram(&[(0, 2), (1, 3)], 4);
        assert_ne!(MapView::new(&bad).unwrap().euler_defect(), 0);
    }

    #[test]
    fn gap_after_an_endpoint_is_its_face() {
        // chords 0-1 and 2-3 cut off the gaps (0,1) and (2,3)
        let d = chord_diagram(&[(0, 1), (2, 3)], 4);
        let m = MapView::new(&d).unwrap();
        let dart = |i: usize| m.dart(i, 0);
        assert_eq!(m.face[dart(1)], m.face[dart(3)]);
        assert_ne!(m.face[dart(0)], m.face[dart(2)]);
        assert_ne!(m.face[dart(0)], m.face[dart(1)]);
        assert_eq!(m.face_darts(m.face[dart(0)]), vec![dart(0)]);
    }
}
