use serde::{Deserialize, Serialize};

use super::diagram::{Arc, Dir, EdgeOrder, Node, WebDiagram};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramJson {
    version: u32,
    n: usize,
    surface: SurfaceJson,
    nodes: Vec<NodeJson>,
    arcs: Vec<ArcJson>,
    #[serde(default, skip_serializing_if = "is_zero")]
    loops: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pairs: Vec<[usize; 2]>,
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceJson {
    ideal_points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ordering: Option<Vec<EdgeOrder>>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum NodeJson {
    Crossing { over_in: u8, under_in: u8 },
    Sink { arity: usize, #[serde(default)] base: usize },
    Source { arity: usize, #[serde(default)] base: usize },
    Endpoint { edge: usize, height: usize, state: u8, dir: Dir },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArcJson {
    from: [usize; 2],
    to: [usize; 2],
}

fn to_repr(d: &WebDiagram) -> Result<DiagramJson> {
    let mut nodes = Vec::with_capacity(d.nodes.len());
    for n in &d.nodes {
        nodes.push(match n {
            Node::Crossing { over_in, under_in } => NodeJson::Crossing { over_in: *over_in, under_in: *under_in },
            Node::Sink { arity, base } => NodeJson::Sink { arity: *arity, base: *base },
            Node::Source { arity, base } => NodeJson::Source { arity: *arity, base: *base },
            Node::Endpoint { edge, height, state, dir } => {
                NodeJson::Endpoint { edge: *edge, height: *height, state: *state, dir: *dir }
            }
            Node::Pass | Node::Blob { .. } => {
                return Err(Error::Internal("internal node kinds have no JSON form".into()))
            }
        });
    }
    let ordering = d.ordering.iter().any(|o| *o == EdgeOrder::Positive).then(|| d.ordering.clone());
    Ok(DiagramJson {
        version: FORMAT_VERSION,
        n: d.n,
        surface: SurfaceJson { ideal_points: d.ideal_points, ordering },
        nodes,
        arcs: d.arcs.iter().map(|a| ArcJson { from: [a.tail.0, a.tail.1], to: [a.head.0, a.head.1] }).collect(),
        loops: d.loops.len(),
        pairs: d.pairs.iter().map(|(s, t)| [*s, *t]).collect(),
    })
}

fn from_repr(j: DiagramJson) -> Result<WebDiagram> {
    if j.version != FORMAT_VERSION {
        return Err(Error::Parse(format!("unsupported diagram version {}", j.version)));
    }
    if j.n == 0 {
        return Err(Error::Parse("rank n must be positive".into()));
    }
    let k = j.surface.ideal_points;
    let ordering = j.surface.ordering.unwrap_or_else(|| vec![EdgeOrder::Negative; k]);
    if ordering.len() != k {
        return Err(Error::Parse(format!("ordering lists {} edges, surface has {k}", ordering.len())));
    }
    let nodes: Vec<Node> = j
        .nodes
        .into_iter()
        .map(|n| match n {
            NodeJson::Crossing { over_in, under_in } => Node::Crossing { over_in, under_in },
            NodeJson::Sink { arity, base } => Node::Sink { arity, base },
            NodeJson::Source { arity, base } => Node::Source { arity, base },
            NodeJson::Endpoint { edge, height, state, dir } => Node::Endpoint { edge, height, state, dir },
        })
        .collect();
    let arcs = j.arcs.iter().map(|a| Arc { tail: (a.from[0], a.from[1]), head: (a.to[0], a.to[1]), layer: None }).collect();
    Ok(WebDiagram {
        n: j.n,
        ideal_points: k,
        ordering,
        nodes,
        arcs,
        loops: vec![None; j.loops],
        pairs: j.pairs.into_iter().map(|[s, t]| (s, t)).collect(),
    })
}

pub fn diagram_to_value(d: &WebDiagram) -> Result<serde_json::Value> {
    serde_json::to_value(to_repr(d)?).map_err(|e| Error::Internal(e.to_string()))
}

pub fn diagram_from_value(v: serde_json::Value) -> Result<WebDiagram> {
    from_repr(serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?)
}

pub fn diagram_to_json(d: &WebDiagram) -> Result<String> {
    serde_json::to_string(&to_repr(d)?).map_err(|e| Error::Internal(e.to_string()))
}

pub fn diagram_from_json(s: &str) -> Result<WebDiagram> {
    from_repr(serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let src = r#"{"version":1,"n":2,"surface":{"ideal_points":1},"nodes":[{"kind":"endpoint","edge":0,"height":2,"state":1,"dir":"out"},{"kind":"endpoint","edge":0,"height":1,"state":2,"dir":"in"}],"arcs":[{"from":[0,0],"to":[1,0]}]}"#;
        let d = diagram_from_json(src).unwrap();
        assert_eq!(diagram_to_json(&d).unwrap(), src);
        assert_eq!(diagram_from_json(&diagram_to_json(&d).unwrap()).unwrap(), d);
    }

    #[test]
    fn rejects_bad_versions_and_fields() {
        assert!(diagram_from_json(r#"{"version":2,"n":2,"surface":{"ideal_points":0},"nodes":[],"arcs":[]}"#).is_err());
        assert!(diagram_from_json(r#"{"version":1,"n":2,"surface":{"ideal_points":0},"nodes":[],"arcs":[],"x":1}"#).is_err());
        assert!(diagram_from_json("[").is_err());
    }
}
