use std::collections::BTreeMap;

use super::algebra::{add_to, Mono, QAlgebra, QElement, Ring};
use crate::error::{Error, Result};
use crate::perm;
use crate::scalar::{neg_q_pow, LaurentScalar};

/// Element of a `k`-fold tensor power, keyed by one monomial per factor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor {
    pub n: usize,
    pub ring: Ring,
    pub parts: BTreeMap<Vec<Mono>, LaurentScalar>,
}

impl Tensor {
    pub fn unit(n: usize, ring: Ring, k: usize) -> Tensor {
        let mut parts = BTreeMap::new();
        parts.insert(vec![Vec::new(); k], LaurentScalar::one());
        Tensor { n, ring, parts }
    }

    fn add_part(&mut self, key: Vec<Mono>, c: &LaurentScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.parts.entry(key.clone()).or_default();
        e.add_assign_ref(c);
        if e.is_zero() {
            self.parts.remove(&key);
        }
    }

    /// Factorwise product.
    pub fn mul(&self, o: &Tensor) -> Result<Tensor> {
        let alg = QAlgebra::get(self.n)?;
        let mut out = Tensor { parts: BTreeMap::new(), ..self.clone() };
        for (ka, ca) in &self.parts {
            for (kb, cb) in &o.parts {
                let mut partial: Vec<(Vec<Mono>, LaurentScalar)> = vec![(Vec::new(), ca * cb)];
                for (ma, mb) in ka.iter().zip(kb) {
                    let prod = alg.mul(
                        &BTreeMap::from([(ma.clone(), LaurentScalar::one())]),
                        &BTreeMap::from([(mb.clone(), LaurentScalar::one())]),
                    );
                    let mut next = Vec::new();
                    for (key, c) in &partial {
                        for (m, x) in &prod {
                            let mut k2 = key.clone();
                            k2.push(m.clone());
                            next.push((k2, c * x));
                        }
                    }
                    partial = next;
                }
                for (k, c) in partial {
                    out.add_part(k, &c);
                }
            }
        }
        Ok(out)
    }

    /// Apply `f` to factor `at`, which turns one monomial into a tensor of some arity.
    fn expand_factor(&self, at: usize, f: &dyn Fn(&Mono) -> Result<Tensor>) -> Result<Tensor> {
        let mut out = Tensor { parts: BTreeMap::new(), ..self.clone() };
        for (key, c) in &self.parts {
            let t = f(&key[at])?;
            for (k2, x) in &t.parts {
                let mut nk = key[..at].to_vec();
                nk.extend(k2.iter().cloned());
                nk.extend(key[at + 1..].iter().cloned());
                out.add_part(nk, &(c * x));
            }
        }
        Ok(out)
    }

    /// `id^{⊗at} ⊗ Δ ⊗ id^{⊗…}`
    pub fn coproduct_at(&self, at: usize) -> Result<Tensor> {
        let (n, ring) = (self.n, self.ring);
        self.expand_factor(at, &|m| coproduct_mono(n, ring, m))
    }

    /// `id^{⊗at} ⊗ ε ⊗ id^{⊗…}`
    pub fn counit_at(&self, at: usize) -> Result<Tensor> {
        let (n, ring) = (self.n, self.ring);
        self.expand_factor(at, &|m| {
            let mut t = Tensor { n, ring, parts: BTreeMap::new() };
            t.add_part(Vec::new(), &counit_mono(n, m));
            Ok(t)
        })
    }

    /// `id^{⊗at} ⊗ S ⊗ id^{⊗…}`
    pub fn antipode_at(&self, at: usize) -> Result<Tensor> {
        let (n, ring) = (self.n, self.ring);
        self.expand_factor(at, &|m| {
            let s = antipode_mono(n, m)?;
            let mut t = Tensor { n, ring, parts: BTreeMap::new() };
            for (mm, c) in s.terms {
                t.add_part(vec![mm], &c);
            }
            Ok(t)
        })
    }

    /// Multiply all factors together.
    pub fn multiply_out(&self) -> Result<QElement> {
        let alg = QAlgebra::get(self.n)?;
        let mut out = QElement::zero(self.n, self.ring);
        for (key, c) in &self.parts {
            let mut acc = BTreeMap::from([(Vec::new(), c.clone())]);
            for m in key {
                acc = alg.mul(&acc, &BTreeMap::from([(m.clone(), LaurentScalar::one())]));
            }
            for (m, x) in acc {
                add_to(&mut out.terms, m, &x);
            }
        }
        Ok(out)
    }

    /// A one-factor tensor viewed as an element.
    pub fn to_element(&self) -> QElement {
        let mut out = QElement::zero(self.n, self.ring);
        for (key, c) in &self.parts {
            let m: Mono = key.iter().flatten().copied().collect();
            assert!(key.len() <= 1, "to_element on a multi-factor tensor");
            add_to(&mut out.terms, m, c);
        }
        out
    }

    pub fn from_element(x: &QElement) -> Tensor {
        let mut t = Tensor { n: x.n, ring: x.ring, parts: BTreeMap::new() };
        for (m, c) in &x.terms {
            t.add_part(vec![m.clone()], c);
        }
        t
    }

    /// `a ⊗ b` for two elements.
    pub fn pair(a: &QElement, b: &QElement) -> Tensor {
        let mut t = Tensor { n: a.n, ring: a.ring, parts: BTreeMap::new() };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                t.add_part(vec![ma.clone(), mb.clone()], &(ca * cb));
            }
        }
        t
    }
}

/// `Σ_σ (-q)^{ℓ(σ)} u_{r_1, c_σ(1)} … u_{r_m, c_σ(m)}` over 1-based rows and columns.
pub fn quantum_minor(n: usize, rows: &[usize], cols: &[usize]) -> Result<QElement> {
    assert_eq!(rows.len(), cols.len());
    let alg = QAlgebra::get(n)?;
    let mut out = QElement::zero(n, Ring::Mn);
    for s in perm::all(rows.len()) {
        let w: Vec<u8> = (0..rows.len()).map(|k| alg.generator(rows[k], cols[s[k]])).collect();
        let c = neg_q_pow(n, perm::length(&s) as i64);
        for (m, x) in alg.word(&w) {
            add_to(&mut out.terms, m, &(&x * &c));
        }
    }
    Ok(out)
}

/// Row expansion of the quantum determinant.
pub fn det_q(n: usize) -> Result<QElement> {
    let all: Vec<usize> = (1..=n).collect();
    quantum_minor(n, &all, &all)
}

/// Column expansion `Σ_σ (-q)^{ℓ(σ)} u_{σ(1),1} … u_{σ(n),n}`.
pub fn det_q_columns(n: usize) -> Result<QElement> {
    let alg = QAlgebra::get(n)?;
    let mut out = QElement::zero(n, Ring::Mn);
    for s in perm::all(n) {
        let w: Vec<u8> = (0..n).map(|k| alg.generator(s[k] + 1, k + 1)).collect();
        let c = neg_q_pow(n, perm::length(&s) as i64);
        for (m, x) in alg.word(&w) {
            add_to(&mut out.terms, m, &(&x * &c));
        }
    }
    Ok(out)
}

fn coproduct_mono(n: usize, ring: Ring, m: &Mono) -> Result<Tensor> {
    let mut acc = Tensor::unit(n, ring, 2);
    for &g in m {
        let (i, j) = (g as usize / n, g as usize % n);
        let mut dg = Tensor { n, ring, parts: BTreeMap::new() };
        for k in 0..n {
            dg.add_part(vec![vec![(i * n + k) as u8], vec![(k * n + j) as u8]], &LaurentScalar::one());
        }
        acc = acc.mul(&dg)?;
    }
    Ok(acc)
}

pub fn coproduct(x: &QElement) -> Result<Tensor> {
    Tensor::from_element(x).coproduct_at(0)
}

fn counit_mono(n: usize, m: &Mono) -> LaurentScalar {
    if m.iter().all(|&g| g as usize / n == g as usize % n) {
        LaurentScalar::one()
    } else {
        LaurentScalar::zero()
    }
}

pub fn counit(x: &QElement) -> LaurentScalar {
    let mut out = LaurentScalar::zero();
    for (m, c) in &x.terms {
        out.add_assign_ref(&(c * &counit_mono(x.n, m)));
    }
    out
}

/// `S(u_{i,j}) = (-q)^{i-j} det_q(u^{j,i})`, the minor without row `j` and column `i`.
pub fn antipode_generator(n: usize, i: usize, j: usize) -> Result<QElement> {
    let rows: Vec<usize> = (1..=n).filter(|&r| r != j).collect();
    let cols: Vec<usize> = (1..=n).filter(|&c| c != i).collect();
    Ok(quantum_minor(n, &rows, &cols)?.scale(&neg_q_pow(n, i as i64 - j as i64)).with_ring(Ring::SLn))
}

fn antipode_mono(n: usize, m: &Mono) -> Result<QElement> {
    let mut out = QElement::one(n, Ring::SLn);
    for &g in m.iter().rev() {
        let s = antipode_generator(n, g as usize / n + 1, g as usize % n + 1)?;
        out = out.mul(&s)?;
    }
    Ok(out)
}

/// The antipode, extended as an anti-homomorphism. Only defined on `O_q(SL_n)`.
pub fn antipode(x: &QElement) -> Result<QElement> {
    if x.ring != Ring::SLn {
        return Err(Error::Precondition("antipode requires the SLn ring tag".into()));
    }
    let mut out = QElement::zero(x.n, Ring::SLn);
    for (m, c) in &x.terms {
        out = out.add(&antipode_mono(x.n, m)?.scale(c))?;
    }
    Ok(out)
}
