//! Sign-twisting isomorphisms φ_ε, Ψ_n and Φ_n as coefficient functionals on diagrams.

mod expr;

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::scalar::{Coeff, SpecScalar};
use crate::web::{stats, EdgeOrder, WebDiagram};

pub use expr::TwistedExpression;

/// Spin function on based webs, reduced mod 2. Must be pure.
pub trait SpinOracle: Send + Sync {
    fn spin(&self, d: &WebDiagram) -> Result<u8>;
    fn name(&self) -> &str;
}

/// `s = K + w (mod 2)`: one more than the blackboard framing parity on each component.
/// A trivial knot gets 1 and every kink flips the value.
#[derive(Clone, Copy, Debug, Default)]
pub struct BlackboardSpin;

impl SpinOracle for BlackboardSpin {
    fn spin(&self, d: &WebDiagram) -> Result<u8> {
        let s = stats(d);
        Ok((s.k as i64 + s.w).rem_euclid(2) as u8)
    }
    fn name(&self) -> &str {
        "blackboard"
    }
}

#[derive(Clone)]
pub enum SignMapKind {
    /// `ε = ζ^power` for a primitive `eps_order`-th root `ζ`.
    PhiEps { m: usize, eps_order: u32, eps_power: i64 },
    Psi,
    PhiSpin(Arc<dyn SpinOracle>),
}

impl fmt::Debug for SignMapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignMapKind::PhiEps { m, eps_order, eps_power } => {
                write!(f, "PhiEps {{ m: {m}, eps_order: {eps_order}, eps_power: {eps_power} }}")
            }
            SignMapKind::Psi => f.write_str("Psi"),
            SignMapKind::PhiSpin(s) => write!(f, "PhiSpin({})", s.name()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SignMapSpec {
    pub n: usize,
    pub kind: SignMapKind,
}

/// Which of the six φ_ε cases applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpsCase {
    /// `ε^{2w+e/2}`, with `ε^m = -1` and `k` even.
    MinusEvenK,
    /// `(-ε)^{2w+e/2}`, with `ε^m = -1`, `k` odd and `m` even.
    MinusOddKEvenM,
    /// `(-ε)^{2w+t}`, with `ε^m = -1`, `k, m` odd and `(k+m)/2` odd.
    MinusOddOddHalfOdd,
    /// `(-1)^p (-ε)^{2w+t}`, with `ε^m = -1`, `k, m` odd and `(k+m)/2` even.
    MinusOddOddHalfEven,
    /// `ε^{2w+e/2}`, with `ε^m = 1` and `n` even.
    PlusEvenN,
    /// `ε^{2w+t}`, with `ε^m = 1` and `n` odd.
    PlusOddN,
}

impl EpsCase {
    pub fn select(n: usize, m: usize, eps_m_is_one: bool) -> EpsCase {
        let k = n / m;
        match (eps_m_is_one, k % 2 == 0, m % 2 == 0) {
            (true, _, _) if n % 2 == 0 => EpsCase::PlusEvenN,
            (true, _, _) => EpsCase::PlusOddN,
            (false, true, _) => EpsCase::MinusEvenK,
            (false, false, true) => EpsCase::MinusOddKEvenM,
            (false, false, false) if ((k + m) / 2) % 2 == 1 => EpsCase::MinusOddOddHalfOdd,
            (false, false, false) => EpsCase::MinusOddOddHalfEven,
        }
    }
}

impl SignMapSpec {
    /// φ_ε with `ε` a primitive `eps_order`-th root of unity.
    pub fn phi_eps(n: usize, m: usize, eps_order: u32) -> Result<SignMapSpec> {
        Self::phi_eps_power(n, m, eps_order, 1)
    }

    /// φ_ε with `ε = ζ^power`, `ζ` a primitive `eps_order`-th root of unity.
    pub fn phi_eps_power(n: usize, m: usize, eps_order: u32, eps_power: i64) -> Result<SignMapSpec> {
        if n == 0 || m == 0 || n % m != 0 {
            return Err(Error::Precondition(format!("m = {m} must divide n = {n}")));
        }
        if eps_order == 0 {
            return Err(Error::Precondition("the root order must be positive".into()));
        }
        let spec = SignMapSpec { n, kind: SignMapKind::PhiEps { m, eps_order, eps_power: eps_power.rem_euclid(eps_order as i64) } };
        if !spec.eps_pow(2 * m as i64).is_one() {
            return Err(Error::Precondition(format!("ε^(2m) = 1 fails for ε of order {} and m = {m}", spec.eps_true_order())));
        }
        Ok(spec)
    }

    pub fn psi(n: usize) -> SignMapSpec {
        SignMapSpec { n, kind: SignMapKind::Psi }
    }

    pub fn phi_spin(n: usize, oracle: Arc<dyn SpinOracle>) -> SignMapSpec {
        SignMapSpec { n, kind: SignMapKind::PhiSpin(oracle) }
    }

    /// The map going back: φ_{ε^{-1}} for φ_ε; Ψ_n and Φ_n are their own inverses up to relabeling.
    pub fn inverse(&self) -> SignMapSpec {
        match &self.kind {
            SignMapKind::PhiEps { m, eps_order, eps_power } => SignMapSpec {
                n: self.n,
                kind: SignMapKind::PhiEps { m: *m, eps_order: *eps_order, eps_power: (-eps_power).rem_euclid(*eps_order as i64) },
            },
            _ => self.clone(),
        }
    }

    /// `ε^e` in `Z[ζ]`.
    fn eps_pow(&self, e: i64) -> SpecScalar {
        match self.kind {
            SignMapKind::PhiEps { eps_order, eps_power, .. } => SpecScalar::eps_pow(eps_order, eps_power * e),
            _ => SpecScalar::one(),
        }
    }

    /// Multiplicative order of `ε` itself.
    fn eps_true_order(&self) -> u64 {
        match self.kind {
            SignMapKind::PhiEps { eps_order, eps_power, .. } => {
                let g = num_integer::gcd(eps_order as i64, eps_power) as u64;
                eps_order as u64 / g.max(1)
            }
            _ => 1,
        }
    }

    /// The φ_ε case for this spec; `None` for the other kinds.
    pub fn eps_case(&self) -> Option<EpsCase> {
        let SignMapKind::PhiEps { m, .. } = self.kind else { return None };
        Some(EpsCase::select(self.n, m, self.eps_pow(m as i64).is_one()))
    }

    /// How the quantum parameter of the target module relates to `v`.
    pub fn shift(&self) -> Param {
        match self.kind {
            SignMapKind::PhiEps { eps_order, eps_power, .. } => Param::turn(Ratio::new(eps_power, eps_order as i64), false),
            SignMapKind::Psi => Param::turn(Ratio::new(1, 2), false),
            SignMapKind::PhiSpin(_) => Param::turn(Ratio::new(1, 4), true),
        }
    }

    pub fn coeff(&self, d: &WebDiagram) -> Result<SpecScalar> {
        if d.n != self.n {
            return Err(Error::Precondition(format!("diagram of rank {} under a map of rank {}", d.n, self.n)));
        }
        match &self.kind {
            SignMapKind::PhiEps { .. } => phi_eps_coeff(d, self),
            SignMapKind::Psi => Ok(SpecScalar::int(psi_coeff(d, self.n)? as i64)),
            SignMapKind::PhiSpin(s) => Ok(SpecScalar::int(phi_spin_coeff(d, self.n, s.as_ref())? as i64)),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        match &self.kind {
            SignMapKind::PhiEps { m, eps_order, eps_power } => json!({
                "kind": "phi_eps", "n": self.n, "m": m, "eps_order": eps_order, "eps_power": eps_power,
                "case": format!("{:?}", self.eps_case().expect("phi_eps")),
            }),
            SignMapKind::Psi => json!({ "kind": "psi_n", "n": self.n }),
            SignMapKind::PhiSpin(s) => json!({ "kind": "phi_spin", "n": self.n, "spin": s.name() }),
        }
    }
}

/// A quantum parameter `e^{2πi·turn}·v`. With `squared` set only `v^2` matters,
/// so turns are compared modulo 1/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Param {
    turn: Ratio<i64>,
    squared: bool,
}

impl Param {
    pub fn identity() -> Param {
        Param { turn: Ratio::from_integer(0), squared: false }
    }

    pub fn turn(t: Ratio<i64>, squared: bool) -> Param {
        let modulus = if squared { Ratio::new(1, 2) } else { Ratio::from_integer(1) };
        let mut t = t % modulus;
        if t < Ratio::from_integer(0) {
            t += modulus;
        }
        Param { turn: t, squared }
    }

    pub fn then(&self, o: &Param) -> Param {
        Param::turn(self.turn + o.turn, self.squared || o.squared)
    }

    pub fn is_identity(&self) -> bool {
        self.turn == Ratio::from_integer(0)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (t, var) = if self.squared { (self.turn * 2, "v^2") } else { (self.turn, "v") };
        if t == Ratio::from_integer(0) {
            f.write_str(var)
        } else if t == Ratio::new(1, 2) {
            write!(f, "-{var}")
        } else {
            write!(f, "zeta{}^{}*{var}", t.denom(), t.numer())
        }
    }
}

fn negatively_ordered(d: &WebDiagram) -> Result<()> {
    for e in 0..d.ideal_points {
        if d.ordering.get(e) == Some(&EdgeOrder::Positive) && d.edge_endpoints_ccw(e).len() > 1 {
            return Err(Error::Precondition(format!("edge {e} is positively ordered")));
        }
    }
    Ok(())
}

fn half(e: usize) -> Result<i64> {
    if e % 2 != 0 {
        return Err(Error::Precondition(format!("odd endpoint count {e}")));
    }
    Ok(e as i64 / 2)
}

/// The φ_ε coefficient of a negatively ordered diagram, in `Z[ζ]`.
pub fn phi_eps_coeff(d: &WebDiagram, spec: &SignMapSpec) -> Result<SpecScalar> {
    let case = spec.eps_case().ok_or_else(|| Error::Precondition("not a phi_eps map".into()))?;
    negatively_ordered(d)?;
    let s = stats(d);
    let two_w = 2 * s.w;
    let neg_pow = |x: i64| if x.rem_euclid(2) == 1 { SpecScalar::int(-1) } else { SpecScalar::one() };
    Ok(match case {
        EpsCase::MinusEvenK | EpsCase::PlusEvenN => spec.eps_pow(two_w + half(s.e)?),
        EpsCase::MinusOddKEvenM => {
            let x = two_w + half(s.e)?;
            neg_pow(x).mul(&spec.eps_pow(x))
        }
        EpsCase::MinusOddOddHalfOdd => {
            let x = two_w + s.t as i64;
            neg_pow(x).mul(&spec.eps_pow(x))
        }
        EpsCase::MinusOddOddHalfEven => {
            let x = two_w + s.t as i64;
            neg_pow(x + s.p as i64).mul(&spec.eps_pow(x))
        }
        EpsCase::PlusOddN => spec.eps_pow(two_w + s.t as i64),
    })
}

/// The Ψ_n sign.
pub fn psi_coeff(d: &WebDiagram, n: usize) -> Result<i8> {
    let e = stats(d).e;
    let x = if n % 2 == 1 { (n as i64 - 1) * e as i64 / 2 } else { half(e)? };
    Ok(if x % 2 == 0 { 1 } else { -1 })
}

/// The Φ_n sign `(-1)^{s+K+ℓ(τ)}` for even `n`, and 1 for odd `n`.
pub fn phi_spin_coeff(d: &WebDiagram, n: usize, oracle: &dyn SpinOracle) -> Result<i8> {
    if n % 2 == 1 {
        return Ok(1);
    }
    let st = stats(d);
    let ell = if st.p == 0 {
        0
    } else {
        d.pairing()?;
        st.tau_length.ok_or_else(|| Error::Precondition("sinks and sources do not determine τ".into()))?
    };
    let x = oracle.spin(d)? as usize + st.k + ell;
    Ok(if x % 2 == 0 { 1 } else { -1 })
}

/// Multiply every term by its coefficient and move to the target parameter.
pub fn apply_signmap(expr: &TwistedExpression, spec: &SignMapSpec) -> Result<TwistedExpression> {
    if expr.n != spec.n {
        return Err(Error::Precondition(format!("expression of rank {} under a map of rank {}", expr.n, spec.n)));
    }
    let root = match spec.kind {
        SignMapKind::PhiEps { eps_order, .. } => Some(eps_order),
        _ => None,
    };
    if let (Some(a), Some(b)) = (root, expr.root_order) {
        if a != b {
            return Err(Error::Precondition(format!("coefficients live at a root of order {b}, the map at order {a}")));
        }
    }
    let mut out = TwistedExpression::zero(expr.n, expr.ideal_points, expr.param.then(&spec.shift()));
    out.root_order = root.or(expr.root_order);
    for (d, c) in expr.terms() {
        let f = spec.coeff(d)?;
        out.add_term(d, &c.scale(&f))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::web::{kinked_unknot, unknot, Dir, Node};

    fn sign(x: &SpecScalar) -> i8 {
        x.as_sign().expect("a sign")
    }

    #[test]
    fn empty_and_closed_unknot_give_one() {
        for n in 1..=6 {
            for m in (1..=n).filter(|m| n % m == 0) {
                for order in (1..=2 * m as u32).filter(|o| (2 * m as u32) % o == 0) {
                    let spec = SignMapSpec::phi_eps(n, m, order).unwrap();
                    assert!(spec.coeff(&WebDiagram::empty(n, 0)).unwrap().is_one());
                    assert!(spec.coeff(&unknot(n)).unwrap().is_one());
                }
            }
        }
    }

    #[test]
    fn minus_one_with_m_one() {
        // ε = -1, m = 1, n odd: k = n odd, so the (-ε)^{2w+t} branch with base 1
        for n in [3usize, 5] {
            let spec = SignMapSpec::phi_eps(n, 1, 2).unwrap();
            assert_eq!(spec.eps_case(), Some(if (n + 1) / 2 % 2 == 1 { EpsCase::MinusOddOddHalfOdd } else { EpsCase::MinusOddOddHalfEven }));
            let d = kinked_unknot(n, &[1, 1]).unwrap();
            assert!(spec.coeff(&d).unwrap().is_one());
        }
    }

    #[test]
    fn order_must_fit() {
        assert!(SignMapSpec::phi_eps(6, 3, 4).is_err());
        assert!(SignMapSpec::phi_eps(6, 4, 2).is_err());
        assert!(SignMapSpec::phi_eps(6, 3, 6).is_ok());
        assert!(SignMapSpec::phi_eps_power(6, 3, 12, 2).is_ok());
    }

    #[test]
    fn psi_examples() {
        let mut d = WebDiagram::empty(2, 2);
        let a = d.add_node(Node::Endpoint { edge: 0, height: 1, state: 1, dir: Dir::Out });
        let b = d.add_node(Node::Endpoint { edge: 1, height: 1, state: 2, dir: Dir::In });
        d.add_arc((a, 0), (b, 0));
        assert_eq!(psi_coeff(&d, 2).unwrap(), -1);
        d.n = 3;
        assert_eq!(psi_coeff(&d, 3).unwrap(), 1);
        assert_eq!(psi_coeff(&unknot(4), 4).unwrap(), 1);
    }

    #[test]
    fn spin_examples() {
        let s = BlackboardSpin;
        assert_eq!(phi_spin_coeff(&unknot(2), 2, &s).unwrap(), 1);
        assert_eq!(phi_spin_coeff(&kinked_unknot(2, &[1]).unwrap(), 2, &s).unwrap(), -1);
        assert_eq!(phi_spin_coeff(&kinked_unknot(3, &[1]).unwrap(), 3, &s).unwrap(), 1);
        let spec = SignMapSpec::phi_spin(4, Arc::new(BlackboardSpin));
        assert_eq!(sign(&spec.coeff(&kinked_unknot(4, &[-1, 1]).unwrap()).unwrap()), 1);
    }

    #[test]
    fn parameters_compose() {
        let p = SignMapSpec::phi_eps(4, 2, 4).unwrap();
        assert_eq!(p.shift().to_string(), "zeta4^1*v");
        assert!(p.shift().then(&p.inverse().shift()).is_identity());
        let psi = SignMapSpec::psi(3).shift();
        assert_eq!(psi.to_string(), "-v");
        assert!(psi.then(&psi).is_identity());
        let spin = SignMapSpec::phi_spin(2, Arc::new(BlackboardSpin)).shift();
        assert_eq!(spin.to_string(), "-v^2");
        assert!(spin.then(&spin).is_identity());
    }
}
