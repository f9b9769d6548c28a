use serde_json::{json, Value};

use crate::linalg::SqMat;
use crate::scalar::{q_diff, q_frac, q_pow, LaurentScalar};

/// The R-matrix of rank `n` as an `n² × n²` matrix.
///
/// Row `(i,j)` and column `(l,k)` (1-based states, index `(i-1)n + (j-1)`)
/// hold `q^{-1/n}(q^{δ_ij} δ_jk δ_il + (q - q^{-1}) δ_{j<i} δ_jl δ_ik)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    n: usize,
    m: SqMat,
}

/// The raw coefficient `R^{ij}_{lk}`, states 1-based.
pub fn r_entry(n: usize, i: usize, j: usize, l: usize, k: usize) -> LaurentScalar {
    let mut x = LaurentScalar::zero();
    if j == k && i == l {
        x = q_pow(n, (i == j) as i64);
    }
    if j < i && j == l && i == k {
        x = &x + &q_diff(n);
    }
    &x * &q_frac(-1)
}

impl RMatrix {
    pub fn build(n: usize) -> RMatrix {
        let mut m = SqMat::zero(n * n);
        for i in 1..=n {
            for j in 1..=n {
                for l in 1..=n {
                    for k in 1..=n {
                        let x = r_entry(n, i, j, l, k);
                        if !x.is_zero() {
                            m.set(pair(n, i, j), pair(n, l, k), x);
                        }
                    }
                }
            }
        }
        RMatrix { n, m }
    }

    /// Negative-control fixture: `R^{11}_{11}` shifted by one.
    pub fn perturbed(n: usize) -> RMatrix {
        let mut r = RMatrix::build(n);
        r.m.add_at(0, 0, &LaurentScalar::one());
        r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &SqMat {
        &self.m
    }

    /// Entry at row `(i,j)`, column `(l,k)`, states 1-based.
    pub fn entry(&self, i: usize, j: usize, l: usize, k: usize) -> LaurentScalar {
        self.m.get(pair(self.n, i, j), pair(self.n, l, k))
    }

    /// `Ř = P∘R`: row `(a,b)` of `Ř` is row `(b,a)` of `R`.
    pub fn braiding(&self) -> SqMat {
        let n = self.n;
        let mut out = SqMat::zero(n * n);
        for a in 1..=n {
            for b in 1..=n {
                for (&c, x) in self.m.row(pair(n, b, a)) {
                    out.set(pair(n, a, b), c, x.clone());
                }
            }
        }
        out
    }

    /// `Ř^{-1}` as predicted by the quadratic relation: `q^{1/n}(q^{1/n}Ř - (q-q^{-1}))`.
    pub fn braiding_inverse(&self) -> SqMat {
        let n = self.n;
        let rc = self.braiding();
        let id = SqMat::identity(n * n);
        rc.scale(&q_frac(1)).sub(&id.scale(&q_diff(n))).scale(&q_frac(1))
    }

    /// Embed on three tensor legs: `legs = (0,1)`, `(0,2)` or `(1,2)`.
    pub fn on_legs(&self, legs: (usize, usize)) -> SqMat {
        let n = self.n;
        let dim = n * n * n;
        let mut out = SqMat::zero(dim);
        let other = 3 - legs.0 - legs.1;
        for row in 0..dim {
            let idx = digits(n, row);
            let r = idx[legs.0] * n + idx[legs.1];
            for (&c, x) in self.m.row(r) {
                let mut jdx = [0; 3];
                jdx[legs.0] = c / n;
                jdx[legs.1] = c % n;
                jdx[other] = idx[other];
                out.set(row, (jdx[0] * n + jdx[1]) * n + jdx[2], x.clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let n = self.n;
        let rows: Vec<Vec<String>> = (0..n * n)
            .map(|r| (0..n * n).map(|c| self.m.get(r, c).to_string()).collect())
            .collect();
        json!({ "n": n, "index": "row (i,j), column (l,k), position (i-1)*n + (j-1)", "entries": rows })
    }
}

fn pair(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * n + (j - 1)
}

fn digits(n: usize, x: usize) -> [usize; 3] {
    [x / (n * n), (x / n) % n, x % n]
}

/// `R12 R13 R23 = R23 R13 R12`.
pub fn check_ybe(r: &RMatrix) -> bool {
    let (r12, r13, r23) = (r.on_legs((0, 1)), r.on_legs((0, 2)), r.on_legs((1, 2)));
    r12.mul(&r13).mul(&r23) == r23.mul(&r13).mul(&r12)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeReport {
    /// `q^{1/n}Ř - q^{-1/n}Ř^{-1} = (q - q^{-1}) Id`
    pub holds: bool,
    /// `det Ř`, which must be a unit of `Z[v^±1]`.
    pub det: LaurentScalar,
    pub invertible: bool,
}

pub fn check_hecke(r: &RMatrix) -> HeckeReport {
    let n = r.n;
    let rc = r.braiding();
    let det = rc.det();
    let invertible = det.is_unit();
    let inv = r.braiding_inverse();
    let id = SqMat::identity(n * n);
    let is_inverse = rc.mul(&inv) == id;
    let lhs = rc.scale(&q_frac(1)).sub(&inv.scale(&q_frac(-1)));
    let holds = invertible && is_inverse && lhs == id.scale(&q_diff(n));
    HeckeReport { holds, det, invertible }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: i64) -> LaurentScalar {
        LaurentScalar::v_pow(e)
    }

    #[test]
    fn rank_one_is_trivial() {
        let r = RMatrix::build(1);
        assert_eq!(r.entry(1, 1, 1, 1), LaurentScalar::one());
        assert!(check_ybe(&r));
        assert!(check_hecke(&r).holds);
    }

    #[test]
    fn rank_two_entries() {
        let r = RMatrix::build(2);
        assert_eq!(r.entry(1, 1, 1, 1), v(2));
        assert_eq!(r.entry(1, 2, 1, 2), v(-2));
        assert_eq!(r.entry(2, 1, 1, 2), &v(-2) * &(v(4) - v(-4)));
        assert_eq!(r.entry(2, 1, 2, 1), v(-2));
        assert!(r.entry(1, 2, 2, 1).is_zero());
        assert_eq!(r.matrix().nnz(), 5);
    }

    #[test]
    fn ybe_and_hecke_low_rank() {
        for n in 2..=3 {
            let r = RMatrix::build(n);
            assert!(check_ybe(&r), "ybe n={n}");
            let h = check_hecke(&r);
            assert!(h.holds, "hecke n={n}");
        }
    }

    #[test]
    fn perturbation_breaks_both() {
        let r = RMatrix::perturbed(2);
        assert!(!check_ybe(&r));
        assert!(!check_hecke(&r).holds);
    }
}
