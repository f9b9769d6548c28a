use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{bar, specialize, LaurentScalar, SpecScalar};

/// `a_{i,j} = q_ε^{-1/n + δ_ij}` and `b_{i,j} = q_ε^{1/n - δ_{i,j̄}}` at a root of order `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCoeffTable {
    pub n: usize,
    pub order: u32,
    pub a: Vec<Vec<SpecScalar>>,
    pub b: Vec<Vec<SpecScalar>>,
}

pub fn boundary_coeffs(n: usize, order: u32) -> Result<BoundaryCoeffTable> {
    if n == 0 {
        return Err(Error::Precondition("rank n must be at least 1".into()));
    }
    if order == 0 || 4 % order != 0 {
        return Err(Error::Precondition(format!(
            "epsilon order {order} does not divide 4"
        )));
    }
    let ni = n as i64;
    // q^{1/n} = v^2 and q = v^{2n}
    let a = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| specialize(&LaurentScalar::v_pow(-2 + 2 * ni * (i == j) as i64), order))
                .collect()
        })
        .collect();
    let b = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let d = (i == bar(n, j)) as i64;
                    specialize(&LaurentScalar::v_pow(2 - 2 * ni * d), order)
                })
                .collect()
        })
        .collect();
    let t = BoundaryCoeffTable { n, order, a, b };
    if !t.entries_are_signs() || !t.products_are_one() {
        return Err(Error::Internal("boundary coefficient identities fail".into()));
    }
    Ok(t)
}

impl BoundaryCoeffTable {
    pub fn entries_are_signs(&self) -> bool {
        self.a.iter().chain(&self.b).flatten().all(|x| x.as_sign().is_some())
    }

    /// `a_{i,j} b_{i,j̄} = 1` for all `i, j`.
    pub fn products_are_one(&self) -> bool {
        let n = self.n;
        (1..=n).all(|i| {
            (1..=n).all(|j| {
                let p = crate::scalar::Coeff::mul(&self.a[i - 1][j - 1], &self.b[i - 1][bar(n, j) - 1]);
                p.as_sign() == Some(1)
            })
        })
    }

    pub fn to_json(&self) -> Value {
        let show = |t: &Vec<Vec<SpecScalar>>| -> Vec<Vec<i64>> {
            t.iter()
                .map(|r| r.iter().map(|x| x.as_sign().unwrap_or(0) as i64).collect())
                .collect()
        };
        json!({ "n": self.n, "eps_order": self.order, "a": show(&self.a), "b": show(&self.b) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_root() {
        let t = boundary_coeffs(3, 1).unwrap();
        assert!(t.a.iter().chain(&t.b).flatten().all(|x| x.as_sign() == Some(1)));
    }

    #[test]
    fn rank_two_order_four() {
        let t = boundary_coeffs(2, 4).unwrap();
        assert_eq!(t.a[0][0].as_sign(), Some(-1));
        assert_eq!(t.a[0][1].as_sign(), Some(-1));
    }

    #[test]
    fn rejects_bad_order() {
        assert!(boundary_coeffs(2, 3).is_err());
        assert!(boundary_coeffs(2, 8).is_err());
    }
}
