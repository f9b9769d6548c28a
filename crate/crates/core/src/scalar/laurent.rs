use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficient ring for [`Laurent`]. Integers and cyclotomic residues implement it.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(i: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    /// Text for the coefficient alone; `atomic` is false when it needs parentheses
    /// in front of a power of `v`.
    fn render(&self) -> (String, bool);
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_int(i: i64) -> Self {
        BigInt::from(i)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn render(&self) -> (String, bool) {
        (self.to_string(), true)
    }
}

/// Finite sum `Σ c_e v^e` with no zero coefficient stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent<C: Coeff = BigInt> {
    terms: BTreeMap<i64, C>,
}

/// Laurent polynomial over the integers; the universal coefficient ring.
pub type LaurentScalar = Laurent<BigInt>;

impl<C: Coeff> Default for Laurent<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Laurent<C> {
    pub fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(i: i64) -> Self {
        Self::constant(C::from_int(i))
    }

    pub fn monomial(c: C, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Laurent { terms }
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(C::one(), e)
    }

    /// `±v^e`.
    pub fn signed_v_pow(negative: bool, e: i64) -> Self {
        let c = if negative { C::one().neg() } else { C::one() };
        Self::monomial(c, e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &C)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: i64) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The single term, if there is exactly one.
    pub fn as_monomial(&self) -> Option<(&C, i64)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c, *e))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, e: i64, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.add(c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn add_assign_ref(&mut self, o: &Self) {
        for (e, c) in &o.terms {
            self.add_term(*e, c);
        }
    }

    pub fn add_scaled(&mut self, o: &Self, s: &Self) {
        for (e1, c1) in &s.terms {
            for (e2, c2) in &o.terms {
                self.add_term(e1 + e2, &c1.mul(c2));
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x.mul(c))))
    }

    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self^k` for integer `k`; negative powers need a unit monomial.
    pub fn powi(&self, k: i64) -> Option<Self> {
        if k >= 0 {
            Some(self.pow(k as u32))
        } else {
            self.inverse_monomial().map(|inv| inv.pow((-k) as u32))
        }
    }

    /// Inverse of `±v^e`.
    pub fn inverse_monomial(&self) -> Option<Self> {
        let (c, e) = self.as_monomial()?;
        if c.is_one() {
            Some(Self::v_pow(-e))
        } else if c.neg().is_one() {
            Some(Self::signed_v_pow(true, -e))
        } else {
            None
        }
    }

    /// Substitute `v ↦ v^k`.
    pub fn subst_pow(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> Laurent<D> {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Render with `var` as the variable name.
    pub fn render_with(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let (text, atomic) = c.render();
            let (neg, body) = if atomic && text.starts_with('-') {
                (true, text[1..].to_string())
            } else {
                (false, text)
            };
            let power = match *e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            let term = if power.is_empty() {
                if atomic {
                    body
                } else {
                    format!("({body})")
                }
            } else if atomic && body == "1" {
                power
            } else if atomic {
                format!("{body}*{power}")
            } else {
                format!("({body})*{power}")
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

impl Laurent<BigInt> {
    /// True for `±v^e`.
    pub fn is_unit(&self) -> bool {
        self.inverse_monomial().is_some()
    }

    /// Exact division; `None` when `d` does not divide `self` in `Z[v^{±1}]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dmin = d.min_exp().unwrap();
        let dmax = d.max_exp().unwrap();
        let lead = d.coeff(dmax);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while !rem.is_zero() {
            let rmax = rem.max_exp().unwrap();
            let rmin = rem.min_exp().unwrap();
            if rmax - rmin < dmax - dmin {
                return None;
            }
            let rc = rem.coeff(rmax);
            let (q, r) = rc.div_rem(&lead);
            if !Zero::is_zero(&r) {
                return None;
            }
            let t = Self::monomial(q, rmax - dmax);
            rem = &rem - &(&t * d);
            quot.add_assign_ref(&t);
        }
        Some(quot)
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl<C: Coeff> Add for &Laurent<C> {
    type Output = Laurent<C>;
    fn add(self, o: &Laurent<C>) -> Laurent<C> {
        let mut out = self.clone();
        out.add_assign_ref(o);
        out
    }
}

impl<C: Coeff> Sub for &Laurent<C> {
    type Output = Laurent<C>;
    fn sub(self, o: &Laurent<C>) -> Laurent<C> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, &c.neg());
        }
        out
    }
}

impl<C: Coeff> Mul for &Laurent<C> {
    type Output = Laurent<C>;
    fn mul(self, o: &Laurent<C>) -> Laurent<C> {
        let mut out = Laurent::zero();
        out.add_scaled(self, o);
        out
    }
}

impl<C: Coeff> Neg for &Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for Laurent<C> {
            type Output = Laurent<C>;
            fn $m(self, o: Laurent<C>) -> Laurent<C> {
                <&Laurent<C> as $tr>::$m(&self, &o)
            }
        }
        impl<C: Coeff> $tr<&Laurent<C>> for Laurent<C> {
            type Output = Laurent<C>;
            fn $m(self, o: &Laurent<C>) -> Laurent<C> {
                <&Laurent<C> as $tr>::$m(&self, o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<C: Coeff> Neg for Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        -&self
    }
}

impl<C: Coeff> Coeff for Laurent<C> {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn one() -> Self {
        Laurent::one()
    }
    fn from_int(i: i64) -> Self {
        Laurent::from_int(i)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn render(&self) -> (String, bool) {
        let s = self.render_with("v");
        let atomic = self.terms.len() <= 1 && self.terms.keys().all(|e| *e == 0);
        (s, atomic)
    }
}

impl<C: Coeff> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with("v"))
    }
}

impl<C: Coeff> fmt::Debug for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: i64) -> LaurentScalar {
        LaurentScalar::v_pow(e)
    }

    #[test]
    fn inverse_monomials_multiply_to_one() {
        assert!((v(2) * v(-2)).is_one());
    }

    #[test]
    fn difference_of_squares() {
        let a = v(1) + v(-1);
        let b = v(1) - v(-1);
        assert_eq!(a * b, v(2) - v(-2));
    }

    #[test]
    fn render_orders_by_descending_exponent() {
        let x = LaurentScalar::from_int(1) - v(6) + v(-2).scale(&BigInt::from(3));
        assert_eq!(x.to_string(), "-v^6 + 1 + 3*v^-2");
        assert_eq!(LaurentScalar::zero().to_string(), "0");
        assert_eq!((-v(4) - v(-4)).to_string(), "-v^4 - v^-4");
        assert_eq!(v(1).to_string(), "v");
    }

    #[test]
    fn exact_division() {
        let q = v(4);
        let qi = v(-4);
        let num = q.pow(3) - qi.pow(3);
        let den = &q - &qi;
        let quo = num.div_exact(&den).unwrap();
        assert_eq!(quo, v(8) + LaurentScalar::one() + v(-8));
        assert!(v(2).div_exact(&(v(1) + v(0))).is_none());
    }
}
