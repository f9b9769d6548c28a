//! Sparse square matrices over `Z[v^±1]`.

use std::collections::BTreeMap;

use crate::par;
use crate::scalar::LaurentScalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SqMat {
    dim: usize,
    rows: Vec<BTreeMap<usize, LaurentScalar>>,
}

impl SqMat {
    pub fn zero(dim: usize) -> Self {
        SqMat { dim, rows: vec![BTreeMap::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = SqMat::zero(dim);
        for i in 0..dim {
            m.set(i, i, LaurentScalar::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> LaurentScalar {
        self.rows[r].get(&c).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, x: LaurentScalar) {
        if x.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, x);
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, x: &LaurentScalar) {
        let cur = self.get(r, c);
        self.set(r, c, &cur + x);
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, LaurentScalar> {
        &self.rows[r]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn scale(&self, s: &LaurentScalar) -> SqMat {
        let mut out = SqMat::zero(self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, x) in row {
                out.set(r, c, x * s);
            }
        }
        out
    }

    pub fn add(&self, o: &SqMat) -> SqMat {
        assert_eq!(self.dim, o.dim);
        let mut out = self.clone();
        for (r, row) in o.rows.iter().enumerate() {
            for (&c, x) in row {
                out.add_at(r, c, x);
            }
        }
        out
    }

    pub fn sub(&self, o: &SqMat) -> SqMat {
        self.add(&o.scale(&LaurentScalar::from_int(-1)))
    }

    /// Row-parallel product.
    pub fn mul(&self, o: &SqMat) -> SqMat {
        assert_eq!(self.dim, o.dim);
        let rows = par::map_range(self.dim, |r| {
            let mut acc: BTreeMap<usize, LaurentScalar> = BTreeMap::new();
            for (&k, x) in &self.rows[r] {
                for (&c, y) in &o.rows[k] {
                    acc.entry(c).or_default().add_assign_ref(&(x * y));
                }
            }
            acc.retain(|_, x| !x.is_zero());
            acc
        });
        SqMat { dim: self.dim, rows }
    }

    pub fn transpose(&self) -> SqMat {
        let mut out = SqMat::zero(self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, x) in row {
                out.set(c, r, x.clone());
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> LaurentScalar {
        let n = self.dim;
        let mut a: Vec<Vec<LaurentScalar>> =
            (0..n).map(|r| (0..n).map(|c| self.get(r, c)).collect()).collect();
        let mut sign = 1i64;
        let mut prev = LaurentScalar::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return LaurentScalar::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = LaurentScalar::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return LaurentScalar::one();
        }
        a[n - 1][n - 1].scale(&num_bigint::BigInt::from(sign))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: i64) -> LaurentScalar {
        LaurentScalar::v_pow(e)
    }

    #[test]
    fn det_of_two_by_two() {
        let mut m = SqMat::zero(2);
        m.set(0, 0, v(1));
        m.set(0, 1, v(2));
        m.set(1, 0, LaurentScalar::one());
        m.set(1, 1, v(-1));
        assert_eq!(m.det(), LaurentScalar::one() - v(2));
    }

    #[test]
    fn det_needs_pivoting() {
        let mut m = SqMat::zero(3);
        m.set(0, 1, v(1));
        m.set(1, 0, v(1));
        m.set(2, 2, v(3));
        assert_eq!(m.det(), -v(5));
        assert_eq!(SqMat::identity(4).det(), LaurentScalar::one());
    }

    #[test]
    fn product_with_identity() {
        let mut m = SqMat::zero(3);
        m.set(0, 2, v(4));
        m.set(2, 1, v(-2));
        assert_eq!(m.mul(&SqMat::identity(3)), m);
        assert_eq!(m.transpose().transpose(), m);
    }
}
