//! Closed-link evaluation by contracting R-matrices against cap and cup weights.
//!
//! Diagrams are read bottom to top as a list of Morse slices. Every strand
//! carries a state in `1..=n`; a cup or cap carries one state on both legs and
//! is weighted by the state `i` of its upward leg:
//!
//! | slice        | weight       |
//! |--------------|--------------|
//! | ccw cup      | `c_i^{-1}`   |
//! | ccw cap      | `c_ī`        |
//! | cw cup       | `c_ī^{-1}`   |
//! | cw cap       | `c_i`        |
//!
//! A positive crossing of two upward strands acts by `Ř`, a negative one by `Ř^{-1}`.
//! The table is pinned by two constraints: a trivial circle evaluates to
//! `(-1)^{n-1}[n]` and a positive curl contributes `t_v`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::rmatrix::RMatrix;
use crate::error::{Error, Result};
use crate::linalg::SqMat;
use crate::scalar::{bar, c_i, LaurentScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "slice", rename_all = "lowercase")]
pub enum Slice {
    /// New strands at `pos, pos+1`; counterclockwise cups have the right leg going up.
    Cup { pos: usize, ccw: bool },
    /// Joins strands `pos, pos+1`.
    Cap { pos: usize },
    /// Strands `pos, pos+1`, both upward, swap places.
    Cross { pos: usize, positive: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morse {
    pub slices: Vec<Slice>,
}

impl Morse {
    /// Closure of a braid on `m` strands; `word` holds signed generators `±i`, `1 ≤ i < m`.
    pub fn braid_closure(m: usize, word: &[i32]) -> Morse {
        let mut slices = Vec::new();
        for k in 0..m {
            slices.push(Slice::Cup { pos: k, ccw: true });
        }
        for &g in word {
            let i = g.unsigned_abs() as usize;
            slices.push(Slice::Cross { pos: m + i - 1, positive: g > 0 });
        }
        for k in (0..m).rev() {
            slices.push(Slice::Cap { pos: k });
        }
        Morse { slices }
    }

    /// Errors unless every slice fits the strands present and the diagram closes up.
    pub fn check(&self) -> Result<()> {
        let mut up: Vec<bool> = Vec::new();
        for (t, s) in self.slices.iter().enumerate() {
            match *s {
                Slice::Cup { pos, ccw } => {
                    if pos > up.len() {
                        return Err(bad(t, "cup position out of range"));
                    }
                    up.splice(pos..pos, [!ccw, ccw]);
                }
                Slice::Cap { pos } => {
                    if pos + 1 >= up.len() {
                        return Err(bad(t, "cap position out of range"));
                    }
                    if up[pos] == up[pos + 1] {
                        return Err(bad(t, "cap joins two strands of the same direction"));
                    }
                    up.drain(pos..pos + 2);
                }
                Slice::Cross { pos, .. } => {
                    if pos + 1 >= up.len() {
                        return Err(bad(t, "crossing position out of range"));
                    }
                    if !(up[pos] && up[pos + 1]) {
                        return Err(bad(t, "crossings must join two upward strands"));
                    }
                }
            }
        }
        if !up.is_empty() {
            return Err(Error::Precondition("Morse diagram is not closed".into()));
        }
        Ok(())
    }

    pub fn crossings(&self) -> usize {
        self.slices.iter().filter(|s| matches!(s, Slice::Cross { .. })).count()
    }

    pub fn writhe(&self) -> i64 {
        self.slices
            .iter()
            .map(|s| match s {
                Slice::Cross { positive: true, .. } => 1,
                Slice::Cross { positive: false, .. } => -1,
                _ => 0,
            })
            .sum()
    }
}

fn bad(t: usize, msg: &str) -> Error {
    Error::Precondition(format!("non-Morse input at slice {t}: {msg}"))
}

/// Contract the diagram with the R-matrix `r`.
pub fn state_sum_with(r: &RMatrix, d: &Morse) -> Result<LaurentScalar> {
    d.check()?;
    let n = r.n();
    let pos_x = r.braiding();
    let neg_x = r.braiding_inverse();
    let inv_c: Vec<LaurentScalar> = (1..=n)
        .map(|i| c_i(n, i).inverse_monomial().expect("c_i is a monomial"))
        .collect();
    let mut up: Vec<bool> = Vec::new();
    let mut state: HashMap<Vec<u8>, LaurentScalar> = HashMap::new();
    state.insert(Vec::new(), LaurentScalar::one());
    for s in &d.slices {
        let mut next: HashMap<Vec<u8>, LaurentScalar> = HashMap::new();
        match *s {
            Slice::Cup { pos, ccw } => {
                for (k, x) in &state {
                    for i in 1..=n {
                        let w = if ccw { &inv_c[i - 1] } else { &inv_c[bar(n, i) - 1] };
                        let mut k2 = k.clone();
                        k2.splice(pos..pos, [i as u8, i as u8]);
                        acc(&mut next, k2, &(x * w));
                    }
                }
                up.splice(pos..pos, [!ccw, ccw]);
            }
            Slice::Cap { pos } => {
                let cw = up[pos];
                for (k, x) in &state {
                    if k[pos] != k[pos + 1] {
                        continue;
                    }
                    let i = k[pos] as usize;
                    let w = if cw { c_i(n, i) } else { c_i(n, bar(n, i)) };
                    let mut k2 = k.clone();
                    k2.drain(pos..pos + 2);
                    acc(&mut next, k2, &(x * &w));
                }
                up.drain(pos..pos + 2);
            }
            Slice::Cross { pos, positive } => {
                let m: &SqMat = if positive { &pos_x } else { &neg_x };
                for (k, x) in &state {
                    let row = (k[pos] as usize - 1) * n + (k[pos + 1] as usize - 1);
                    for (&col, y) in m.row(row) {
                        let mut k2 = k.clone();
                        k2[pos] = (col / n + 1) as u8;
                        k2[pos + 1] = (col % n + 1) as u8;
                        acc(&mut next, k2, &(x * y));
                    }
                }
            }
        }
        next.retain(|_, x| !x.is_zero());
        state = next;
    }
    Ok(state.remove(&Vec::new()).unwrap_or_default())
}

fn acc(map: &mut HashMap<Vec<u8>, LaurentScalar>, k: Vec<u8>, x: &LaurentScalar) {
    map.entry(k).or_default().add_assign_ref(x);
}

pub fn state_sum_eval(n: usize, d: &Morse) -> Result<LaurentScalar> {
    if n == 0 {
        return Err(Error::Precondition("rank n must be at least 1".into()));
    }
    state_sum_with(&RMatrix::build(n), d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{t_v, unknot_value};

    #[test]
    fn unknot_both_senses() {
        for n in 1..=4 {
            let ccw = Morse::braid_closure(1, &[]);
            assert_eq!(state_sum_eval(n, &ccw).unwrap(), unknot_value(n));
            let cw = Morse {
                slices: vec![Slice::Cup { pos: 0, ccw: false }, Slice::Cap { pos: 0 }],
            };
            assert_eq!(state_sum_eval(n, &cw).unwrap(), unknot_value(n));
        }
    }

    #[test]
    fn curls_give_framing_factor() {
        for n in 2..=3 {
            let u = unknot_value(n);
            let pos = state_sum_eval(n, &Morse::braid_closure(2, &[1])).unwrap();
            assert_eq!(pos, &t_v(n) * &u, "n={n}");
            let neg = state_sum_eval(n, &Morse::braid_closure(2, &[-1])).unwrap();
            assert_eq!(neg, &t_v(n).inverse_monomial().unwrap() * &u, "n={n}");
        }
    }

    #[test]
    fn two_circles_multiply() {
        let n = 2;
        let d = Morse::braid_closure(2, &[]);
        let u = unknot_value(n);
        assert_eq!(state_sum_eval(n, &d).unwrap(), &u * &u);
    }

    #[test]
    fn rejects_non_morse() {
        let d = Morse { slices: vec![Slice::Cup { pos: 0, ccw: true }] };
        assert!(state_sum_eval(2, &d).is_err());
        let d = Morse {
            slices: vec![
                Slice::Cup { pos: 0, ccw: true },
                Slice::Cross { pos: 0, positive: true },
                Slice::Cap { pos: 0 },
            ],
        };
        assert!(state_sum_eval(2, &d).is_err());
    }
}
