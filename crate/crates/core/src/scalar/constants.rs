use num_bigint::BigInt;
use serde::Serialize;

use super::laurent::LaurentScalar;
use crate::error::{Error, Result};

/// Named constants of rank `n`, all as polynomials in `v` (with `q = v^{2n}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantsTable {
    pub n: usize,
    /// `c[i-1] = c_i`
    pub c: Vec<LaurentScalar>,
    pub t: LaurentScalar,
    pub a: LaurentScalar,
    pub qint: LaurentScalar,
}

/// `q = v^{2n}`
pub fn q(n: usize) -> LaurentScalar {
    LaurentScalar::v_pow(2 * n as i64)
}

/// `q^k`
pub fn q_pow(n: usize, k: i64) -> LaurentScalar {
    LaurentScalar::v_pow(2 * n as i64 * k)
}

/// `q^{k/n} = v^{2k}`
pub fn q_frac(k: i64) -> LaurentScalar {
    LaurentScalar::v_pow(2 * k)
}

/// `(-q)^k`
pub fn neg_q_pow(n: usize, k: i64) -> LaurentScalar {
    LaurentScalar::signed_v_pow(k.rem_euclid(2) == 1, 2 * n as i64 * k)
}

/// `q - q^{-1}`
pub fn q_diff(n: usize) -> LaurentScalar {
    &q_pow(n, 1) - &q_pow(n, -1)
}

/// `ī = n + 1 - i`
pub fn bar(n: usize, i: usize) -> usize {
    n + 1 - i
}

/// `c_i = (-1)^{n-i} v^{2n(n-i) + n - 1}`
pub fn c_i(n: usize, i: usize) -> LaurentScalar {
    let (n, i) = (n as i64, i as i64);
    LaurentScalar::signed_v_pow((n - i) % 2 == 1, 2 * n * (n - i) + n - 1)
}

/// `[n] = Σ_j q^{n-1-2j}`
pub fn quantum_integer(n: usize) -> LaurentScalar {
    let mut out = LaurentScalar::zero();
    for j in 0..n as i64 {
        out.add_term(2 * n as i64 * (n as i64 - 1 - 2 * j), &BigInt::from(1));
    }
    out
}

/// `(-1)^{n-1} [n]`, the value of a trivial circle.
pub fn unknot_value(n: usize) -> LaurentScalar {
    let qi = quantum_integer(n);
    if n % 2 == 0 {
        -qi
    } else {
        qi
    }
}

pub fn t_v(n: usize) -> LaurentScalar {
    let n = n as i64;
    LaurentScalar::signed_v_pow((n - 1) % 2 == 1, 2 * (n * n - 1))
}

/// Exponent of `v` in `a_v`.
pub fn a_exponent(n: usize) -> Result<i64> {
    let n = n as i64;
    let num = n * (n + 1 - 2 * n * n);
    if num % 2 != 0 {
        return Err(Error::Internal(format!("a_v exponent {num}/2 is not integral")));
    }
    Ok(num / 2)
}

pub fn constants(n: usize) -> Result<ConstantsTable> {
    if n == 0 {
        return Err(Error::Precondition("rank n must be at least 1".into()));
    }
    Ok(ConstantsTable {
        n,
        c: (1..=n).map(|i| c_i(n, i)).collect(),
        t: t_v(n),
        a: LaurentScalar::v_pow(a_exponent(n)?),
        qint: quantum_integer(n),
    })
}

#[derive(Serialize)]
struct TableJson {
    n: usize,
    c: Vec<String>,
    t: String,
    a: String,
    qint: String,
}

impl ConstantsTable {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableJson {
            n: self.n,
            c: self.c.iter().map(|x| x.to_string()).collect(),
            t: self.t.to_string(),
            a: self.a.to_string(),
            qint: self.qint.to_string(),
        })
        .expect("constants serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: i64) -> LaurentScalar {
        LaurentScalar::v_pow(e)
    }

    #[test]
    fn rank_two_table() {
        let t = constants(2).unwrap();
        assert_eq!(t.c, vec![-v(5), v(1)]);
        assert_eq!(t.t, -v(6));
        assert_eq!(t.a, v(-5));
        assert_eq!(t.qint, v(4) + v(-4));
    }

    #[test]
    fn rank_one_table() {
        let t = constants(1).unwrap();
        assert!(t.c[0].is_one() && t.t.is_one() && t.a.is_one() && t.qint.is_one());
    }

    #[test]
    fn rank_zero_rejected() {
        assert!(constants(0).is_err());
    }

    #[test]
    fn quantum_integer_matches_division() {
        for n in 1..=6usize {
            let num = &q_pow(n, n as i64) - &q_pow(n, -(n as i64));
            let den = q_diff(n);
            assert_eq!(num.div_exact(&den).unwrap(), quantum_integer(n), "n={n}");
        }
        assert_eq!(quantum_integer(3), v(12) + LaurentScalar::one() + v(-12));
    }

    #[test]
    fn cap_cup_products_sum_to_unknot() {
        for n in 1..=6usize {
            let mut s = LaurentScalar::zero();
            for i in 1..=n {
                let ci = c_i(n, i);
                let cbar = c_i(n, bar(n, i)).inverse_monomial().unwrap();
                let prod = &ci * &cbar;
                assert_eq!(prod, neg_q_pow(n, n as i64 + 1 - 2 * i as i64));
                s = &s + &prod;
            }
            assert_eq!(s, unknot_value(n));
        }
    }
}
