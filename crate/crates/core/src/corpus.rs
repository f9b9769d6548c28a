//! Seeded diagram and expression generators shared by the verification suite and the tests.

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::LaurentScalar;
use crate::skein::SkeinExpression;
use crate::web::{bigon_arc, braid_closure, stack, EdgeOrder, WebDiagram};

/// Closed links given as braid closures: name, strand count, word.
pub fn link_corpus() -> Vec<(&'static str, usize, Vec<i32>)> {
    vec![
        ("unknot", 1, vec![]),
        ("unknot-kinked", 2, vec![1]),
        ("unlink-2", 2, vec![]),
        ("hopf", 2, vec![1, 1]),
        ("hopf-negative", 2, vec![-1, -1]),
        ("trefoil", 2, vec![1, 1, 1]),
        ("trefoil-mirror", 2, vec![-1, -1, -1]),
        ("figure-eight", 3, vec![1, -2, 1, -2]),
        ("torus-2-4", 2, vec![1, 1, 1, 1]),
        ("cinquefoil", 2, vec![1, 1, 1, 1, 1]),
        ("torus-2-6", 2, vec![1, 1, 1, 1, 1, 1]),
        ("three-twist", 3, vec![1, 1, 1, 2, -1, 2]),
        ("borromean", 3, vec![1, -2, 1, -2, 1, -2]),
    ]
}

/// A diagram without endpoints moved into a polygon with `k` ideal points.
pub fn in_polygon(d: &WebDiagram, k: usize) -> Result<WebDiagram> {
    if d.endpoints().next().is_some() {
        return Err(Error::Precondition("only diagrams without endpoints can change polygon".into()));
    }
    let mut out = d.clone();
    out.ideal_points = k;
    out.ordering = vec![EdgeOrder::Negative; k];
    Ok(out)
}

pub fn random_laurent<R: Rng>(rng: &mut R) -> LaurentScalar {
    loop {
        let terms: Vec<(i64, num_bigint::BigInt)> =
            (0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(-6..=6), rng.gen_range(-3..=3i64).into())).collect();
        let x = LaurentScalar::from_terms(terms);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random braid closure on at most three strands with at most `max_len` crossings.
pub fn random_closed<R: Rng>(n: usize, max_len: usize, rng: &mut R) -> WebDiagram {
    let m = rng.gen_range(1..=3usize);
    let len = if m == 1 { 0 } else { rng.gen_range(0..=max_len) };
    let word: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..m as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    braid_closure(n, m, &word).expect("word fits")
}

/// Random states for one bigon arc.
pub fn random_arc<R: Rng>(n: usize, rng: &mut R) -> WebDiagram {
    bigon_arc(n, rng.gen_range(1..=n as u8), rng.gen_range(1..=n as u8))
}

/// A stack of `factors` random bigon arcs, the first on top.
pub fn random_bigon_product<R: Rng>(n: usize, factors: usize, rng: &mut R) -> Result<WebDiagram> {
    let mut d = WebDiagram::empty(n, 2);
    for i in 0..factors {
        let a = random_arc(n, rng);
        d = if i == 0 { a } else { stack(&d, &a)? };
    }
    Ok(d)
}

/// A bigon diagram: either a product of up to two arcs or a small closed link.
pub fn random_bigon_diagram<R: Rng>(n: usize, rng: &mut R) -> Result<WebDiagram> {
    if rng.gen_bool(0.6) {
        let f = rng.gen_range(1..=2);
        random_bigon_product(n, f, rng)
    } else {
        in_polygon(&random_closed(n, 3, rng), 2)
    }
}

/// A combination of one to four random bigon diagrams.
pub fn random_expression<R: Rng>(n: usize, rng: &mut R) -> Result<SkeinExpression> {
    let mut e = SkeinExpression::zero(n, 2);
    for _ in 0..rng.gen_range(1..=4) {
        e.add_term(&random_bigon_diagram(n, rng)?, &random_laurent(rng))?;
    }
    Ok(e)
}
