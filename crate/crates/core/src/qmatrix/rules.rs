//! Straightening rules read off `(u⊗u)Ř = Ř(u⊗u)`.
//!
//! `(u⊗u)` has entry `u_ij u_kl` at row `(i,k)`, column `(j,l)`. Every entry of
//! the matrix equation is a linear relation among quadratic words. Eliminating
//! the out-of-order words `u_x u_y` (`x > y` in the order `u_11 < u_12 < … < u_nn`)
//! over `Z[v^±1]` yields one rule per such word.

use std::collections::{BTreeMap, HashMap};

use crate::braiding::RMatrix;
use crate::error::{Error, Result};
use crate::linalg::SqMat;
use crate::scalar::{q_frac, LaurentScalar};

/// `(x, y)` with `x > y` maps to the ordered pairs `(a, b)`, `a ≤ b`, with coefficients.
pub type RuleSet = HashMap<(u8, u8), Vec<((u8, u8), LaurentScalar)>>;

type Row = BTreeMap<usize, LaurentScalar>;

fn relations(n: usize, rc: &SqMat) -> Vec<Row> {
    let big = n * n;
    let word = |x: usize, y: usize| x * big + y;
    let g = |i: usize, j: usize| i * n + j;
    let mut rows = Vec::new();
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let mut row = Row::new();
                    // (u⊗u)Ř
                    for a in 0..n {
                        for b in 0..n {
                            let x = rc.get(a * n + b, j * n + l);
                            if !x.is_zero() {
                                row.entry(word(g(i, a), g(k, b))).or_default().add_assign_ref(&x);
                            }
                        }
                    }
                    // Ř(u⊗u)
                    for (&c, x) in rc.row(i * n + k) {
                        let (a, b) = (c / n, c % n);
                        row.entry(word(g(a, j), g(b, l))).or_default().add_assign_ref(&-x);
                    }
                    row.retain(|_, x| !x.is_zero());
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
    }
    rows
}

/// `r ← p·r − c·pivot` with `c = r[col]`, `p = pivot[col]`; exact when `p` is a unit.
fn eliminate(r: &mut Row, pivot: &Row, col: usize) {
    let Some(c) = r.get(&col).cloned() else { return };
    let p = &pivot[&col];
    if p.is_unit() {
        let f = c.div_exact(p).expect("unit divides");
        for (k, x) in pivot {
            r.entry(*k).or_default().add_assign_ref(&-(x * &f));
        }
    } else {
        for x in r.values_mut() {
            *x = &*x * p;
        }
        for (k, x) in pivot {
            r.entry(*k).or_default().add_assign_ref(&-(x * &c));
        }
    }
    r.retain(|_, x| !x.is_zero());
}

fn solve(n: usize, rc: &SqMat) -> Result<RuleSet> {
    let big = n * n;
    let mut pool = relations(n, rc);
    let mut pivots: Vec<(usize, Row)> = Vec::new();
    for x in 0..big {
        for y in 0..x {
            let w = x * big + y;
            let pick = pool
                .iter()
                .enumerate()
                .filter(|(_, r)| r.contains_key(&w))
                .min_by_key(|(_, r)| (!r[&w].is_unit(), r[&w].len(), r.len()))
                .map(|(i, _)| i);
            let Some(i) = pick else {
                return Err(Error::Internal(format!("no relation straightens word {w}")));
            };
            let p = pool.swap_remove(i);
            for r in pool.iter_mut() {
                eliminate(r, &p, w);
            }
            for (_, r) in pivots.iter_mut() {
                eliminate(r, &p, w);
            }
            pool.retain(|r| !r.is_empty());
            pivots.push((w, p));
        }
    }
    if !pool.is_empty() {
        return Err(Error::Internal("relations among ordered words".into()));
    }
    let mut rules = RuleSet::new();
    for (w, row) in pivots {
        let lead = row[&w].clone();
        let mut rhs = Vec::new();
        for (&k, x) in &row {
            if k == w {
                continue;
            }
            let (a, b) = (k / big, k % big);
            if a > b {
                return Err(Error::Internal("rule has an unordered word on the right".into()));
            }
            let c = (-x).div_exact(&lead).ok_or_else(|| {
                Error::Internal(format!("rule for word {w} has non-integral coefficients"))
            })?;
            rhs.push(((a as u8, b as u8), c));
        }
        rules.insert(((w / big) as u8, (w % big) as u8), rhs);
    }
    Ok(rules)
}

/// Rules for rank `n`, derived twice (with and without the `q^{-1/n}` prefactor)
/// to confirm that the prefactor drops out.
pub fn rtt_relations(n: usize) -> Result<RuleSet> {
    let rc = RMatrix::build(n).braiding();
    let with = solve(n, &rc)?;
    let without = solve(n, &rc.scale(&q_frac(1)))?;
    if with != without {
        return Err(Error::Internal("the R-matrix prefactor does not cancel".into()));
    }
    Ok(with)
}
