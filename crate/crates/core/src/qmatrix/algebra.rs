use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::rules::{rtt_relations, RuleSet};
use crate::error::{Error, Result};
use crate::scalar::LaurentScalar;

/// Generator `u_{i,j}` is `(i-1)n + (j-1)`; a monomial is a non-decreasing list of generators.
pub type Mono = Vec<u8>;
pub type Combo = BTreeMap<Mono, LaurentScalar>;

/// Which quotient an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Ring {
    Mn,
    SLn,
}

/// `O_q(M(n))` with its straightening rules and a product cache.
pub struct QAlgebra {
    n: usize,
    rules: RuleSet,
    memo: Mutex<HashMap<(Mono, u8), Arc<Combo>>>,
}

impl fmt::Debug for QAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QAlgebra(n={}, {} rules)", self.n, self.rules.len())
    }
}

const STEP_LIMIT: usize = 2_000_000;

impl QAlgebra {
    pub fn new(n: usize) -> Result<QAlgebra> {
        if n == 0 || n > 15 {
            return Err(Error::Precondition(format!("rank {n} outside 1..=15")));
        }
        Ok(QAlgebra { n, rules: rtt_relations(n)?, memo: Mutex::new(HashMap::new()) })
    }

    /// Shared instance per rank.
    pub fn get(n: usize) -> Result<Arc<QAlgebra>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QAlgebra>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(a) = cache.lock().unwrap().get(&n) {
            return Ok(a.clone());
        }
        let a = Arc::new(QAlgebra::new(n)?);
        Ok(cache.lock().unwrap().entry(n).or_insert(a).clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    pub fn generator(&self, i: usize, j: usize) -> u8 {
        ((i - 1) * self.n + (j - 1)) as u8
    }

    /// Normal form of `m · u_g` for a normal monomial `m`.
    pub fn mul_gen(&self, m: &[u8], g: u8) -> Arc<Combo> {
        let key = (m.to_vec(), g);
        if let Some(c) = self.memo.lock().unwrap().get(&key) {
            return c.clone();
        }
        let out = match m.last() {
            Some(&last) if last > g => {
                let head = &m[..m.len() - 1];
                let mut acc = Combo::new();
                for &((a, b), ref c) in &self.rules[&(last, g)] {
                    for (m1, x1) in self.mul_gen(head, a).iter() {
                        for (m2, x2) in self.mul_gen(m1, b).iter() {
                            add_to(&mut acc, m2.clone(), &(&(c * x1) * x2));
                        }
                    }
                }
                acc
            }
            _ => {
                let mut w = m.to_vec();
                w.push(g);
                Combo::from([(w, LaurentScalar::one())])
            }
        };
        let out = Arc::new(out);
        self.memo.lock().unwrap().insert(key, out.clone());
        out
    }

    /// Normal form of the word `w` (any order).
    pub fn word(&self, w: &[u8]) -> Combo {
        let mut acc = Combo::from([(Vec::new(), LaurentScalar::one())]);
        for &g in w {
            acc = self.combo_mul_gen(&acc, g);
        }
        acc
    }

    fn combo_mul_gen(&self, x: &Combo, g: u8) -> Combo {
        let mut out = Combo::new();
        for (m, c) in x {
            for (m2, c2) in self.mul_gen(m, g).iter() {
                add_to(&mut out, m2.clone(), &(c * c2));
            }
        }
        out
    }

    pub fn mul(&self, x: &Combo, y: &Combo) -> Combo {
        let mut out = Combo::new();
        for (my, cy) in y {
            let mut part = x.clone();
            for &g in my {
                part = self.combo_mul_gen(&part, g);
            }
            for (m, c) in part {
                add_to(&mut out, m, &(&c * cy));
            }
        }
        out
    }

    /// Straighten by applying single rules at positions chosen by `pick`,
    /// which receives the word and the list of out-of-order positions.
    pub fn rewrite_with(
        &self,
        start: &Combo,
        pick: &mut dyn FnMut(&[u8], &[usize]) -> usize,
    ) -> Result<Combo> {
        let mut done = Combo::new();
        let mut todo: Vec<(Mono, LaurentScalar)> =
            start.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        let mut steps = 0;
        while let Some((w, c)) = todo.pop() {
            let bad: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]).collect();
            if bad.is_empty() {
                add_to(&mut done, w, &c);
                continue;
            }
            steps += 1;
            if steps > STEP_LIMIT {
                return Err(Error::Internal("straightening did not terminate".into()));
            }
            let i = bad[pick(&w, &bad) % bad.len()];
            for &((a, b), ref r) in &self.rules[&(w[i], w[i + 1])] {
                let mut w2 = w.clone();
                w2[i] = a;
                w2[i + 1] = b;
                todo.push((w2, &c * r));
            }
        }
        done.retain(|_, c| !c.is_zero());
        Ok(done)
    }
}

pub(crate) fn add_to(acc: &mut Combo, m: Mono, c: &LaurentScalar) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(m.clone()).or_default();
    e.add_assign_ref(c);
    if e.is_zero() {
        acc.remove(&m);
    }
}

/// Element of `O_q(M(n))` or `O_q(SL_n)`, stored in normal form.
///
/// In the `SLn` tag the stored combination is one representative of its class;
/// compare with [`super::sl_equal`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QElement {
    pub n: usize,
    pub ring: Ring,
    pub terms: Combo,
}

impl QElement {
    pub fn zero(n: usize, ring: Ring) -> QElement {
        QElement { n, ring, terms: Combo::new() }
    }

    pub fn scalar(n: usize, ring: Ring, c: LaurentScalar) -> QElement {
        let mut terms = Combo::new();
        add_to(&mut terms, Vec::new(), &c);
        QElement { n, ring, terms }
    }

    pub fn one(n: usize, ring: Ring) -> QElement {
        QElement::scalar(n, ring, LaurentScalar::one())
    }

    /// `u_{i,j}`, 1-based.
    pub fn generator(n: usize, ring: Ring, i: usize, j: usize) -> Result<QElement> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::Precondition(format!("generator u[{i},{j}] out of range for n={n}")));
        }
        let g = ((i - 1) * n + (j - 1)) as u8;
        Ok(QElement { n, ring, terms: Combo::from([(vec![g], LaurentScalar::one())]) })
    }

    /// Normal form of a word.
    pub fn from_word(n: usize, ring: Ring, w: &[u8]) -> Result<QElement> {
        let a = QAlgebra::get(n)?;
        Ok(QElement { n, ring, terms: a.word(w) })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn with_ring(mut self, ring: Ring) -> QElement {
        self.ring = ring;
        self
    }

    fn check(&self, o: &QElement) -> Result<()> {
        if self.n != o.n {
            return Err(Error::Precondition(format!("rank mismatch: {} vs {}", self.n, o.n)));
        }
        if self.ring != o.ring {
            return Err(Error::Precondition("ring tag mismatch".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &QElement) -> Result<QElement> {
        self.check(o)?;
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            add_to(&mut terms, m.clone(), c);
        }
        Ok(QElement { terms, ..self.clone() })
    }

    pub fn sub(&self, o: &QElement) -> Result<QElement> {
        self.add(&o.scale(&LaurentScalar::from_int(-1)))
    }

    pub fn scale(&self, s: &LaurentScalar) -> QElement {
        let mut terms = Combo::new();
        for (m, c) in &self.terms {
            add_to(&mut terms, m.clone(), &(c * s));
        }
        QElement { terms, ..self.clone() }
    }

    pub fn mul(&self, o: &QElement) -> Result<QElement> {
        self.check(o)?;
        let a = QAlgebra::get(self.n)?;
        Ok(QElement { terms: a.mul(&self.terms, &o.terms), ..self.clone() })
    }

    pub fn pow(&self, k: u32) -> Result<QElement> {
        let mut out = QElement::one(self.n, self.ring);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Split by total degree.
    pub fn graded(&self) -> BTreeMap<usize, QElement> {
        let mut out: BTreeMap<usize, QElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = out.entry(m.len()).or_insert_with(|| QElement::zero(self.n, self.ring));
            add_to(&mut e.terms, m.clone(), c);
        }
        out
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).max()
    }
}
