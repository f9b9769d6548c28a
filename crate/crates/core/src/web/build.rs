//! Standard diagrams: link diagrams from Morse slices, braid tangles, theta webs, stated arcs.

use std::collections::VecDeque;

use super::diagram::{Dir, Node, WebDiagram};
use super::geom::{q, Pt, SLoop, Sketch, Q};
use crate::braiding::{Morse, Slice};
use crate::error::{Error, Result};

struct Curve {
    pts: VecDeque<Pt>,
    ranks: VecDeque<i64>,
}

fn extend(c: &mut Curve, back: bool, p: Pt, rank: i64) {
    if back {
        c.pts.push_back(p);
        c.ranks.push_back(rank);
    } else {
        c.pts.push_front(p);
        c.ranks.push_front(rank);
    }
}

/// The link diagram of a Morse presentation, drawn with exact coordinates.
pub fn from_morse(n: usize, m: &Morse) -> Result<WebDiagram> {
    m.check()?;
    let mut curves: Vec<Option<Curve>> = Vec::new();
    // (curve, open end is the back)
    let mut open: Vec<(usize, bool)> = Vec::new();
    let mut loops: Vec<SLoop> = Vec::new();
    let at = |x: i64, y: i64| Pt::int(x, y);
    for (k, s) in m.slices.iter().enumerate() {
        let (y1, ymid) = (2 * k as i64 + 2, 2 * k as i64 + 1);
        let mut moves: Vec<(usize, i64, i64)> = Vec::new();
        match *s {
            Slice::Cup { pos, ccw } => {
                for (i, _) in open.iter().enumerate() {
                    let ni = if i < pos { i } else { i + 2 };
                    moves.push((i, ni as i64, 0));
                }
                apply_moves(&mut curves, &open, &moves, y1);
                let p = pos as i64;
                let legs = [at(2 * p, y1), at(2 * p + 1, ymid), at(2 * p + 2, y1)];
                let mut pts: VecDeque<Pt> = legs.into_iter().collect();
                if !ccw {
                    pts = pts.into_iter().rev().collect();
                }
                curves.push(Some(Curve { pts, ranks: VecDeque::from(vec![0, 0]) }));
                let id = curves.len() - 1;
                open.splice(pos..pos, [(id, !ccw), (id, ccw)]);
            }
            Slice::Cap { pos } => {
                for (i, _) in open.iter().enumerate() {
                    if i == pos || i == pos + 1 {
                        continue;
                    }
                    let ni = if i < pos { i } else { i - 2 };
                    moves.push((i, ni as i64, 0));
                }
                apply_moves(&mut curves, &open, &moves, y1);
                let apex = at(2 * pos as i64 + 1, ymid);
                let (a, b) = (open[pos], open[pos + 1]);
                let (up, down) = if a.1 { (a, b) } else { (b, a) };
                let mut cu = curves[up.0].take().expect("live curve");
                extend(&mut cu, true, apex, 0);
                if up.0 == down.0 {
                    cu.ranks.push_back(0);
                    loops.push(SLoop { pts: cu.pts.into_iter().collect(), ranks: cu.ranks.into_iter().collect(), layer: None });
                } else {
                    let cd = curves[down.0].take().expect("live curve");
                    cu.ranks.push_back(0);
                    cu.pts.extend(cd.pts);
                    cu.ranks.extend(cd.ranks);
                    curves[up.0] = Some(cu);
                    for e in open.iter_mut() {
                        if e.0 == down.0 {
                            e.0 = up.0;
                        }
                    }
                }
                open.drain(pos..pos + 2);
            }
            Slice::Cross { pos, positive } => {
                for (i, _) in open.iter().enumerate() {
                    let (ni, rank) = if i == pos {
                        (pos + 1, positive as i64)
                    } else if i == pos + 1 {
                        (pos, !positive as i64)
                    } else {
                        (i, 0)
                    };
                    moves.push((i, ni as i64, rank));
                }
                apply_moves(&mut curves, &open, &moves, y1);
                open.swap(pos, pos + 1);
            }
        }
    }
    if curves.iter().any(|c| c.is_some()) {
        return Err(Error::Internal("open curve left after the last slice".into()));
    }
    let mut s = Sketch::new(n, 0);
    s.loops = loops;
    s.build()
}

fn apply_moves(
    curves: &mut [Option<Curve>],
    open: &[(usize, bool)],
    moves: &[(usize, i64, i64)],
    y1: i64,
) {
    for &(i, nx, rank) in moves {
        let (c, back) = open[i];
        let cur = curves[c].as_mut().expect("live curve");
        let p = Pt::int(2 * nx, y1);
        extend(cur, back, p, rank);
    }
}

/// The closure of a braid on `m` strands (signed generators `±i`).
pub fn braid_closure(n: usize, m: usize, word: &[i32]) -> Result<WebDiagram> {
    if word.iter().any(|&g| g == 0 || g.unsigned_abs() as usize >= m) {
        return Err(Error::Precondition(format!("braid word {word:?} does not fit {m} strands")));
    }
    from_morse(n, &Morse::braid_closure(m, word))
}

/// A single circle with one kink per entry of `signs` (each `±1`).
pub fn kinked_unknot(n: usize, signs: &[i64]) -> Result<WebDiagram> {
    let m = signs.len() + 1;
    let word: Vec<i32> = signs.iter().enumerate().map(|(i, &s)| if s > 0 { i as i32 + 1 } else { -(i as i32 + 1) }).collect();
    braid_closure(n, m, &word)
}

pub fn unknot(n: usize) -> WebDiagram {
    let mut d = WebDiagram::empty(n, 0);
    d.loops.push(None);
    d
}

/// Endpoints of a braid tangle on the unit circle: left ends `L_0..L_{n-1}`
/// from the top, then right ends `R_{n-1}..R_0` from the bottom, counterclockwise.
fn tangle_params(n: usize, jitter: i64) -> (Vec<Q>, Vec<Q>) {
    let left: Vec<Q> = (0..n).map(|k| q(-(n as i64) - 2 + k as i64, 1) - q(k as i64 * jitter, 97 * 89)).collect();
    let right: Vec<Q> = (0..n)
        .map(|j| q(n as i64 - 1 - 2 * j as i64, n as i64 + 1) + q((j as i64 * j as i64 + 1) * jitter, 101 * 103))
        .collect();
    (left, right)
}

/// Positive permutation braid: the strand entering at `L_k` leaves at `R_{perm[k]}`.
/// The tangle lives in a monogon with its endpoints in counterclockwise order
/// `L_0, …, L_{n-1}, R_{n-1}, …, R_0`.
pub fn permutation_tangle(n: usize, perm: &[usize]) -> Result<WebDiagram> {
    let m = perm.len();
    let mut last = None;
    for jitter in 0..8 {
        let (left, right) = tangle_params(m, jitter);
        let mut s = Sketch::new(n, 1);
        let ls: Vec<usize> = left.iter().map(|t| s.endpoint(0, 1, t.clone())).collect();
        let mut rs = vec![0; m];
        for j in (0..m).rev() {
            rs[j] = s.endpoint(0, 1, right[j].clone());
        }
        for k in 0..m {
            s.path(ls[k], rs[perm[k]], vec![], -(k as i64));
        }
        match s.build() {
            Ok(d) => return Ok(d),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap())
}

/// A sink and a source in standard position joined outside by `n` parallel strands:
/// source port `base + k` runs around to sink port `base + k`.
/// The pair is recorded so that the web is ready for vertex elimination.
pub fn theta_web(n: usize) -> Result<WebDiagram> {
    let mut d = WebDiagram::empty(n, 0);
    let sink = d.add_node(Node::Sink { arity: n, base: 0 });
    let src = d.add_node(Node::Source { arity: n, base: 0 });
    // source port k is the k-th from the bottom on the east; route it around the
    // outside to the sink port that is k-th from the top on the west.
    for k in 0..n {
        d.add_arc((src, k), (sink, n - 1 - k));
    }
    d.pairs.push((sink, src));
    Ok(d)
}

/// An arc across a bigon from edge 0 (state `i`) to edge 1 (state `j`), oriented toward edge 1.
pub fn bigon_arc(n: usize, i: u8, j: u8) -> WebDiagram {
    let mut d = WebDiagram::empty(n, 2);
    let a = d.add_node(Node::Endpoint { edge: 0, height: 1, state: i, dir: Dir::Out });
    let b = d.add_node(Node::Endpoint { edge: 1, height: 1, state: j, dir: Dir::In });
    d.add_arc((a, 0), (b, 0));
    d
}
