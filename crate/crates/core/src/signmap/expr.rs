use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::Param;
use crate::error::{Error, Result};
use crate::scalar::{lift_int_coeffs, Laurent, SpecScalar};
use crate::skein::SkeinExpression;
use crate::web::{canonical_code, canonical_form, diagram_to_value, CanonCode, WebDiagram};

/// A linear combination of diagrams with coefficients in `Z[ζ][v^{±1}]`, tagged
/// with the quantum parameter it is read at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedExpression {
    pub n: usize,
    pub ideal_points: usize,
    pub param: Param,
    /// Order of the root `ζ` the coefficients may involve.
    pub root_order: Option<u32>,
    terms: BTreeMap<CanonCode, (WebDiagram, Laurent<SpecScalar>)>,
}

impl TwistedExpression {
    pub fn zero(n: usize, ideal_points: usize, param: Param) -> Self {
        TwistedExpression { n, ideal_points, param, root_order: None, terms: BTreeMap::new() }
    }

    pub fn lift(e: &SkeinExpression) -> Result<Self> {
        let mut out = Self::zero(e.n, e.ideal_points, Param::identity());
        for (d, c) in e.terms() {
            out.add_term(d, &lift_int_coeffs(c))?;
        }
        Ok(out)
    }

    pub fn add_term(&mut self, d: &WebDiagram, c: &Laurent<SpecScalar>) -> Result<()> {
        if d.n != self.n || d.ideal_points != self.ideal_points {
            return Err(Error::Precondition("all terms must share rank and surface".into()));
        }
        if c.is_zero() {
            return Ok(());
        }
        let key = canonical_code(d)?;
        match self.terms.get_mut(&key) {
            Some((_, x)) => {
                x.add_assign_ref(c);
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, (canonical_form(d)?, c.clone()));
            }
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WebDiagram, &Laurent<SpecScalar>)> {
        self.terms.values().map(|(d, c)| (d, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> Result<Value> {
        let terms = self
            .terms()
            .map(|(d, c)| Ok(json!({ "coefficient": c.to_string(), "diagram": diagram_to_value(d)? })))
            .collect::<Result<Vec<_>>>()?;
        Ok(json!({
            "n": self.n,
            "ideal_points": self.ideal_points,
            "parameter": self.param.to_string(),
            "root_order": self.root_order,
            "terms": terms,
        }))
    }
}
