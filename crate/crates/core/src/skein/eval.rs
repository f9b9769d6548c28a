//! Closed diagrams to Laurent polynomials: vertex elimination, then the crossing
//! recursion down to descending diagrams.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::expr::{check_valid, SkeinExpression};
use crate::error::{Error, Result};
use crate::par;
use crate::perm;
use crate::scalar::{neg_q_pow, q_diff, q_frac, q_pow, t_v, unknot_value, LaurentScalar};
use crate::web::{
    canonical_code, closed_strands, excise, permutation_tangle, splice, CanonCode, MapView, Node, PortRef, WebDiagram,
};

/// Stated webs have cyclically ordered vertices; based webs carry a linear order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Stated,
    Based,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "stated" => Ok(Mode::Stated),
            "based" => Ok(Mode::Based),
            _ => Err(Error::Parse(format!("unknown mode `{s}` (expected stated or based)"))),
        }
    }
}

/// Rotations `(sink base, source base)` that put the pair in standard position:
/// the corner of the sink just before its base faces the corner of the source just before its base.
pub fn standard_position(d: &WebDiagram, sink: usize, source: usize, mode: Mode) -> Result<(usize, usize)> {
    let (Node::Sink { arity: n, base: bs }, Node::Source { arity: n2, base: bt }) = (&d.nodes[sink], &d.nodes[source]) else {
        return Err(Error::Precondition(format!("({sink}, {source}) is not a sink/source pair")));
    };
    if n != n2 || *n != d.n {
        return Err(Error::Precondition("vertex arity differs from the rank".into()));
    }
    let n = *n;
    let m = MapView::new(d)?;
    let corner = |v: usize, b: usize| m.corner_face(v, (b + n - 1) % n);
    if corner(sink, *bs) == corner(source, *bt) {
        return Ok((*bs, *bt));
    }
    if mode == Mode::Stated {
        for i in 0..n {
            for j in 0..n {
                let (s, t) = ((bs + i) % n, (bt + j) % n);
                if corner(sink, s) == corner(source, t) {
                    return Ok((s, t));
                }
            }
        }
    }
    Err(Error::Precondition(format!("sink {sink} and source {source} are not in standard position")))
}

/// The prefactor of the braid term for `σ` when one pair is eliminated.
pub fn pair_coefficient(n: usize, length: usize, mode: Mode) -> LaurentScalar {
    let nn = n as i64;
    let pre = match mode {
        Mode::Stated => neg_q_pow(n, nn * (nn - 1) / 2),
        Mode::Based => q_pow(n, nn * (nn - 1)),
    };
    // (-q^{(1-n)/n})^ℓ
    let step = -q_frac(1 - nn);
    &pre * &step.pow(length as u32)
}

/// Replace one sink/source pair by the sum over positive permutation braids.
pub fn eliminate_pair(d: &WebDiagram, sink: usize, source: usize, mode: Mode) -> Result<Vec<(WebDiagram, LaurentScalar)>> {
    let n = d.n;
    let (bs, bt) = standard_position(d, sink, source, mode)?;
    let ext: Vec<PortRef> = (0..n).map(|k| (sink, (bs + k) % n)).chain((0..n).map(|k| (source, (bt + k) % n))).collect();
    let dead = BTreeSet::from([sink, source]);
    let mut out = Vec::new();
    for sigma in perm::all(n) {
        let tangle = permutation_tangle(n, &sigma)?;
        let mut e = d.clone();
        let blob = excise(&mut e, &dead, &ext)?;
        splice(&mut e, blob, &tangle)?;
        out.push((e, pair_coefficient(n, perm::length(&sigma), mode)));
    }
    Ok(out)
}

/// Expand every sink/source pair, leaving a vertex-free expression.
pub fn eliminate_vertices(expr: &SkeinExpression, mode: Mode) -> Result<SkeinExpression> {
    let mut cur = expr.clone();
    loop {
        let mut next = SkeinExpression::zero(cur.n, cur.ideal_points);
        let mut changed = false;
        for (d, c) in cur.terms() {
            let pairs = d.pairing()?;
            let Some(&(s, t)) = pairs.first() else {
                next.add_term(d, c)?;
                continue;
            };
            changed = true;
            let mut d = d.clone();
            d.pairs = pairs.clone();
            for (e, k) in eliminate_pair(&d, s, t, mode)? {
                next.add_term(&e, &(c * &k))?;
            }
        }
        if !changed {
            return Ok(next);
        }
        cur = next;
    }
}

/// Value of a closed diagram.
pub fn evaluate_closed(d: &WebDiagram, mode: Mode) -> Result<LaurentScalar> {
    check_valid(d)?;
    if !d.is_closed() {
        return Err(Error::Precondition("non-closed input: the diagram has boundary endpoints".into()));
    }
    let flat = eliminate_vertices(&SkeinExpression::from_diagram(d)?, mode)?;
    evaluate_links(&flat)
}

/// Sum of the values of vertex-free closed terms.
pub fn evaluate_links(expr: &SkeinExpression) -> Result<LaurentScalar> {
    let terms: Vec<(&WebDiagram, &LaurentScalar)> = expr.terms().collect();
    let vals = par::map(&terms, |(d, c)| LinkEvaluator::new(d.n).eval(d).map(|x| &x * c));
    let mut acc = LaurentScalar::zero();
    for v in vals {
        acc.add_assign_ref(&v?);
    }
    Ok(acc)
}

/// Swap over and under strands at a crossing.
pub fn switch_crossing(d: &WebDiagram, c: usize) -> Result<WebDiagram> {
    let Node::Crossing { over_in, under_in } = d.nodes[c] else {
        return Err(Error::Pattern(format!("node {c} is not a crossing")));
    };
    let mut e = d.clone();
    e.nodes[c] = Node::Crossing { over_in: under_in, under_in: over_in };
    Ok(e)
}

/// The orientation-respecting smoothing of a crossing.
pub fn smooth_crossing(d: &WebDiagram, c: usize) -> Result<WebDiagram> {
    let Node::Crossing { over_in, under_in } = d.nodes[c] else {
        return Err(Error::Pattern(format!("node {c} is not a crossing")));
    };
    let (o, u) = (over_in as usize, under_in as usize);
    let mut e = d.clone();
    e.nodes[c] = Node::Pass;
    let p2 = e.add_node(Node::Pass);
    for a in e.arcs.iter_mut() {
        if a.head == (c, o) {
            a.head = (c, 0);
        } else if a.head == (c, u) {
            a.head = (p2, 0);
        }
        if a.tail == (c, (u + 2) % 4) {
            a.tail = (c, 1);
        } else if a.tail == (c, (o + 2) % 4) {
            a.tail = (p2, 1);
        }
    }
    e.contract_passes();
    Ok(e)
}

/// Memoized evaluation of vertex-free closed diagrams.
pub struct LinkEvaluator {
    n: usize,
    memo: HashMap<CanonCode, LaurentScalar>,
    unknot: LaurentScalar,
}

impl LinkEvaluator {
    pub fn new(n: usize) -> Self {
        LinkEvaluator { n, memo: HashMap::new(), unknot: unknot_value(n) }
    }

    pub fn eval(&mut self, d: &WebDiagram) -> Result<LaurentScalar> {
        if d.n != self.n {
            return Err(Error::Precondition("rank mismatch".into()));
        }
        let mut d = d.clone();
        d.contract_passes();
        if d.nodes.iter().any(|x| !x.is_crossing()) {
            return Err(Error::Precondition("link evaluation needs a closed diagram without vertices".into()));
        }
        let circles = self.unknot.pow(d.loops.len() as u32);
        d.loops.clear();
        if d.nodes.is_empty() {
            return Ok(circles);
        }
        let key = canonical_code(&d)?;
        if let Some(x) = self.memo.get(&key) {
            return Ok(&circles * x);
        }
        let x = self.eval_connected(&d)?;
        self.memo.insert(key, x.clone());
        Ok(&circles * &x)
    }

    fn eval_connected(&mut self, d: &WebDiagram) -> Result<LaurentScalar> {
        let comps = closed_strands(d);
        let mut comp_of = vec![usize::MAX; d.arcs.len()];
        for (i, c) in comps.iter().enumerate() {
            for &a in c {
                comp_of[a] = i;
            }
        }
        let mut seen = vec![false; d.nodes.len()];
        for c in &comps {
            for &a in c {
                let (v, p) = d.arcs[a].head;
                if seen[v] {
                    continue;
                }
                seen[v] = true;
                let Node::Crossing { over_in, under_in } = d.nodes[v] else { unreachable!() };
                if p == under_in as usize {
                    return self.resolve(d, v, over_in, under_in);
                }
            }
        }
        // descending: an unlink, each component framed by its self-writhe
        let pt = d.ports();
        let mut writhe = vec![0i64; comps.len()];
        for v in d.crossings() {
            let Node::Crossing { over_in, under_in } = d.nodes[v] else { unreachable!() };
            let a = comp_of[pt.arc_at((v, over_in as usize)).expect("arc")];
            let b = comp_of[pt.arc_at((v, under_in as usize)).expect("arc")];
            if a == b {
                writhe[a] += crate::web::crossing_sign(over_in, under_in);
            }
        }
        let t = t_v(self.n);
        let mut acc = LaurentScalar::one();
        for w in writhe {
            acc = &acc * &self.unknot;
            acc = &acc * &t.powi(w).expect("t is a monomial");
        }
        Ok(acc)
    }

    fn resolve(&mut self, d: &WebDiagram, v: usize, over_in: u8, under_in: u8) -> Result<LaurentScalar> {
        let switched = self.eval(&switch_crossing(d, v)?)?;
        let smoothed = self.eval(&smooth_crossing(d, v)?)?;
        let qd = q_diff(self.n);
        if crate::web::crossing_sign(over_in, under_in) > 0 {
            // X+ = q^{-1/n}(q - q^{-1}) X0 + q^{-2/n} X-
            Ok(&(&(&q_frac(-1) * &qd) * &smoothed) + &(&q_frac(-2) * &switched))
        } else {
            // X- = q^{2/n} X+ - q^{1/n}(q - q^{-1}) X0
            Ok(&(&q_frac(2) * &switched) - &(&(&q_frac(1) * &qd) * &smoothed))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::{state_sum_eval, Morse};
    use crate::web::{braid_closure, kinked_unknot, theta_web, unknot};

    #[test]
    fn unknot_and_kinks() {
        for n in 1..=4 {
            let u = unknot_value(n);
            assert_eq!(evaluate_closed(&unknot(n), Mode::Stated).unwrap(), u);
            let t = t_v(n);
            assert_eq!(evaluate_closed(&kinked_unknot(n, &[1]).unwrap(), Mode::Stated).unwrap(), &t * &u, "n={n}");
            let ti = t.inverse_monomial().unwrap();
            assert_eq!(evaluate_closed(&kinked_unknot(n, &[-1]).unwrap(), Mode::Stated).unwrap(), &ti * &u, "n={n}");
        }
    }

    #[test]
    fn agrees_with_state_sum() {
        let corpus: Vec<(usize, Vec<i32>)> =
            vec![(2, vec![1, 1]), (2, vec![1, 1, 1]), (2, vec![-1, -1]), (3, vec![1, -2, 1, -2]), (3, vec![1, 2]), (2, vec![1, -1]), (3, vec![1, 1, 2, -1, 2])];
        for n in 2..=3 {
            for (m, w) in &corpus {
                let d = braid_closure(n, *m, w).unwrap();
                let a = evaluate_closed(&d, Mode::Stated).unwrap();
                let b = state_sum_eval(n, &Morse::braid_closure(*m, w)).unwrap();
                assert_eq!(a, b, "n={n} word={w:?}");
            }
        }
    }

    #[test]
    fn theta_parity_and_modes() {
        for n in 2..=3 {
            let d = theta_web(n).unwrap();
            let stated = evaluate_closed(&d, Mode::Stated).unwrap();
            let based = evaluate_closed(&d, Mode::Based).unwrap();
            let nn = n as i64;
            let ratio = &q_pow(n, nn * (nn - 1)) * &neg_q_pow(n, nn * (nn - 1) / 2).inverse_monomial().unwrap();
            assert_eq!(based, &stated * &ratio);
            assert!(!stated.is_zero());
        }
    }

    #[test]
    fn isotopy_scripts_keep_the_value() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 2..=3 {
            for word in [vec![1, 1], vec![1, -2, 1], vec![1, 2, 1]] {
                let d = braid_closure(n, 3, &word).unwrap();
                let want = evaluate_closed(&d, Mode::Stated).unwrap();
                let mut cur = d.clone();
                for _ in 0..4 {
                    let moves: Vec<_> = crate::web::candidate_moves(&cur).into_iter().filter(|m| m.is_isotopy()).collect();
                    let mv = moves.choose(&mut rng).unwrap();
                    cur = crate::web::apply_move(&cur, mv).unwrap();
                    assert_eq!(evaluate_closed(&cur, Mode::Stated).unwrap(), want, "n={n} {word:?} after {mv:?}");
                }
            }
        }
    }

    #[test]
    fn crossing_relation_closes() {
        for n in 2..=3 {
            let d = braid_closure(n, 3, &[1, -2, 1]).unwrap();
            for c in d.crossings() {
                let Node::Crossing { over_in, under_in } = d.nodes[c] else { unreachable!() };
                let (plus, minus) = if crate::web::crossing_sign(over_in, under_in) > 0 {
                    (d.clone(), switch_crossing(&d, c).unwrap())
                } else {
                    (switch_crossing(&d, c).unwrap(), d.clone())
                };
                let ev = |x: &WebDiagram| evaluate_closed(x, Mode::Stated).unwrap();
                let lhs = &(&q_frac(1) * &ev(&plus)) - &(&q_frac(-1) * &ev(&minus));
                assert_eq!(lhs, &q_diff(n) * &ev(&smooth_crossing(&d, c).unwrap()));
            }
        }
    }
}
