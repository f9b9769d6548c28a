use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use super::laurent::{Coeff, Laurent, LaurentScalar};

/// Element of `Z[x]/Φ_k(x)`; `x` is the image of `v`, a primitive `k`-th root of unity.
///
/// `order == 0` marks a bare integer that has not been tied to a particular `k`;
/// integers reduce to themselves for every `k`, so they combine with any order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpecScalar {
    order: u32,
    coeffs: Vec<BigInt>,
}

/// Cached `Φ_k`, low degree first, monic.
pub fn cyclotomic(k: u32) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&k) {
        return p.clone();
    }
    assert!(k >= 1, "cyclotomic order must be positive");
    // x^k - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![BigInt::from(0); k as usize + 1];
    p[0] = -BigInt::from(1);
    p[k as usize] = BigInt::from(1);
    for d in 1..k {
        if k % d == 0 {
            p = poly_div_exact(&p, &cyclotomic(d));
        }
    }
    cache.lock().unwrap().insert(k, p.clone());
    p
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quo = vec![BigInt::from(0); nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = rem[i + dd].clone();
        if c == BigInt::from(0) {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quo[i] = c;
    }
    debug_assert!(rem.iter().all(|c| *c == BigInt::from(0)));
    quo
}

fn trim(c: &mut Vec<BigInt>) {
    while c.last().map_or(false, |x| *x == BigInt::from(0)) {
        c.pop();
    }
}

fn reduce(order: u32, mut c: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut c);
    if order == 0 {
        return c;
    }
    let phi = cyclotomic(order);
    let d = phi.len() - 1;
    while c.len() > d {
        let top = c.len() - 1;
        let lead = c[top].clone();
        for (j, pc) in phi.iter().enumerate() {
            c[top - d + j] -= &lead * pc;
        }
        trim(&mut c);
    }
    c
}

impl SpecScalar {
    pub fn new(order: u32, coeffs: Vec<BigInt>) -> Self {
        let c = reduce(order, coeffs);
        let order = if c.len() <= 1 { 0 } else { order };
        SpecScalar { order, coeffs: c }
    }

    pub fn int(i: i64) -> Self {
        SpecScalar::new(0, vec![BigInt::from(i)])
    }

    /// `ε^e` for a primitive `order`-th root `ε`.
    pub fn eps_pow(order: u32, e: i64) -> Self {
        assert!(order >= 1);
        let e = e.rem_euclid(order as i64) as usize;
        let mut c = vec![BigInt::from(0); e + 1];
        c[e] = BigInt::from(1);
        SpecScalar::new(order, c)
    }

    /// The residue's coefficients, low degree first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Order of the root this value is tied to; `0` for plain integers.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `Some(±1)` when the value is a unit integer.
    pub fn as_sign(&self) -> Option<i8> {
        if self.coeffs.len() == 1 {
            if self.coeffs[0] == BigInt::from(1) {
                return Some(1);
            }
            if self.coeffs[0] == -BigInt::from(1) {
                return Some(-1);
            }
        }
        None
    }

    fn join(&self, o: &Self) -> u32 {
        match (self.order, o.order) {
            (a, b) if a == b => a,
            (0, b) => b,
            (a, 0) => a,
            (a, b) => panic!("mixing residues at different roots of unity ({a} and {b})"),
        }
    }

    pub fn render_poly(&self, var: &str) -> String {
        let l: LaurentScalar = Laurent::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64, c.clone())),
        );
        l.render_with(var)
    }
}

impl Coeff for SpecScalar {
    fn zero() -> Self {
        SpecScalar { order: 0, coeffs: vec![] }
    }
    fn one() -> Self {
        SpecScalar::int(1)
    }
    fn from_int(i: i64) -> Self {
        SpecScalar::int(i)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let order = self.join(o);
        let len = self.coeffs.len().max(o.coeffs.len());
        let mut c = vec![BigInt::from(0); len];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in o.coeffs.iter().enumerate() {
            c[i] += x;
        }
        SpecScalar::new(order, c)
    }
    fn mul(&self, o: &Self) -> Self {
        let order = self.join(o);
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::zero();
        }
        let mut c = vec![BigInt::from(0); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in o.coeffs.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        SpecScalar::new(order, c)
    }
    fn neg(&self) -> Self {
        SpecScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn render(&self) -> (String, bool) {
        (self.render_poly("eps"), self.coeffs.len() <= 1)
    }
}

impl fmt::Display for SpecScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_poly("v"))
    }
}

impl fmt::Debug for SpecScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Spec[{}]({})", self.order, self.render_poly("x"))
    }
}

/// Ring map `Z[v^{±1}] → Z[x]/Φ_k`, `v ↦ x`.
pub fn specialize(x: &LaurentScalar, k: u32) -> SpecScalar {
    assert!(k >= 1, "root order must be positive");
    let mut c = vec![BigInt::from(0); k as usize];
    for (e, coef) in x.terms() {
        c[e.rem_euclid(k as i64) as usize] += coef;
    }
    SpecScalar::new(k, c)
}

/// Same polynomial in `v`, with its integer coefficients viewed as residues.
pub fn lift_int_coeffs(x: &LaurentScalar) -> Laurent<SpecScalar> {
    x.map_coeffs(|c| SpecScalar::new(0, vec![c.clone()]))
}

/// Substitute `v ↦ ε^j v` in a polynomial over residues at a root of order `order`.
pub fn scale_variable(x: &Laurent<SpecScalar>, order: u32, j: i64) -> Laurent<SpecScalar> {
    Laurent::from_terms(
        x.terms()
            .map(|(e, c)| (e, c.mul(&SpecScalar::eps_pow(order, j * e)))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: i64) -> LaurentScalar {
        LaurentScalar::v_pow(e)
    }

    #[test]
    fn cyclotomic_polynomials() {
        let show = |k| {
            cyclotomic(k)
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        assert_eq!(show(1), "-1,1");
        assert_eq!(show(2), "1,1");
        assert_eq!(show(4), "1,0,1");
        assert_eq!(show(6), "1,-1,1");
        assert_eq!(show(12), "1,0,-1,0,1");
    }

    #[test]
    fn eighth_power_is_one_at_order_four() {
        assert_eq!(specialize(&v(8), 4), SpecScalar::one());
    }

    #[test]
    fn minus_v6_at_order_four() {
        // x^6 = x^2 · x^4 ≡ x^2 ≡ -1 mod x^2+1
        assert_eq!(specialize(&-v(6), 4), SpecScalar::one());
    }

    #[test]
    fn v_at_order_one() {
        assert_eq!(specialize(&v(1), 1), SpecScalar::one());
    }

    #[test]
    fn negative_exponents_wrap() {
        let x = specialize(&v(-1), 4);
        let y = specialize(&v(1), 4);
        assert_eq!(x.mul(&y), SpecScalar::one());
    }
}
