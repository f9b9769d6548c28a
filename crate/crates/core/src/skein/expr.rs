use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{parse_laurent, LaurentScalar};
use crate::web::{canonical_code, canonical_form, diagram_from_value, diagram_to_value, stack, validate, CanonCode, WebDiagram};

/// A finite linear combination of diagrams, each stored in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeinExpression {
    pub n: usize,
    pub ideal_points: usize,
    terms: BTreeMap<CanonCode, (WebDiagram, LaurentScalar)>,
}

impl SkeinExpression {
    pub fn zero(n: usize, ideal_points: usize) -> Self {
        SkeinExpression { n, ideal_points, terms: BTreeMap::new() }
    }

    pub fn from_diagram(d: &WebDiagram) -> Result<Self> {
        let mut e = Self::zero(d.n, d.ideal_points);
        e.add_term(d, &LaurentScalar::one())?;
        Ok(e)
    }

    /// The empty diagram with coefficient `c`.
    pub fn scalar(n: usize, ideal_points: usize, c: LaurentScalar) -> Self {
        let mut e = Self::zero(n, ideal_points);
        e.add_term(&WebDiagram::empty(n, ideal_points), &c).expect("empty diagram");
        e
    }

    pub fn add_term(&mut self, d: &WebDiagram, c: &LaurentScalar) -> Result<()> {
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

    pub fn add(&mut self, o: &SkeinExpression) -> Result<()> {
        for (d, c) in o.terms() {
            self.add_term(d, c)?;
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, o: &SkeinExpression, s: &LaurentScalar) -> Result<()> {
        for (d, c) in o.terms() {
            self.add_term(d, &(c * s))?;
        }
        Ok(())
    }

    pub fn scaled(&self, s: &LaurentScalar) -> SkeinExpression {
        let mut out = Self::zero(self.n, self.ideal_points);
        for (k, (d, c)) in &self.terms {
            let x = c * s;
            if !x.is_zero() {
                out.terms.insert(k.clone(), (d.clone(), x));
            }
        }
        out
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&WebDiagram, &LaurentScalar)> {
        self.terms.values().map(|(d, c)| (d, c))
    }

    pub fn term(&self, i: usize) -> Result<(&WebDiagram, &LaurentScalar)> {
        self.terms().nth(i).ok_or_else(|| Error::Pattern(format!("no term {i}")))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of the empty diagram, if that is the only term (or there are none).
    pub fn as_scalar(&self) -> Option<LaurentScalar> {
        match self.len() {
            0 => Some(LaurentScalar::zero()),
            1 => {
                let (d, c) = self.term(0).ok()?;
                (d.nodes.is_empty() && d.loops.is_empty()).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn map_terms<F>(&self, mut f: F) -> Result<SkeinExpression>
    where
        F: FnMut(&WebDiagram, &LaurentScalar) -> Result<SkeinExpression>,
    {
        let mut out = Self::zero(self.n, self.ideal_points);
        for (d, c) in self.terms() {
            out.add(&f(d, c)?)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Result<Value> {
        let terms = self
            .terms()
            .map(|(d, c)| Ok(json!({ "coefficient": c.to_string(), "diagram": diagram_to_value(d)? })))
            .collect::<Result<Vec<_>>>()?;
        Ok(json!({ "n": self.n, "ideal_points": self.ideal_points, "terms": terms }))
    }

    /// Reads either an expression object or a bare diagram (coefficient 1).
    pub fn from_json(v: Value) -> Result<SkeinExpression> {
        if v.get("terms").is_none() {
            let d = diagram_from_value(v)?;
            check_valid(&d)?;
            return SkeinExpression::from_diagram(&d);
        }
        let obj = v.as_object().ok_or_else(|| Error::Parse("expression must be an object".into()))?;
        for k in obj.keys() {
            if !matches!(k.as_str(), "n" | "ideal_points" | "terms") {
                return Err(Error::Parse(format!("unknown field `{k}`")));
            }
        }
        let field = |k: &str| {
            obj.get(k).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| Error::Parse(format!("missing `{k}`")))
        };
        let (n, k) = (field("n")?, field("ideal_points")?);
        let mut out = SkeinExpression::zero(n, k);
        let list = obj["terms"].as_array().ok_or_else(|| Error::Parse("`terms` must be a list".into()))?;
        for t in list {
            let c = t
                .get("coefficient")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("term without a coefficient string".into()))?;
            let c = parse_laurent(c, Some(n))?;
            let d = diagram_from_value(t.get("diagram").cloned().ok_or_else(|| Error::Parse("term without a diagram".into()))?)?;
            check_valid(&d)?;
            out.add_term(&d, &c)?;
        }
        Ok(out)
    }
}

pub(crate) fn check_valid(d: &WebDiagram) -> Result<()> {
    let v = validate(d);
    if let Some(first) = v.first() {
        return Err(Error::Precondition(first.to_string()));
    }
    Ok(())
}

/// Bilinear stacking, `a` above `b`.
pub fn stack_expr(a: &SkeinExpression, b: &SkeinExpression) -> Result<SkeinExpression> {
    if a.n != b.n || a.ideal_points != b.ideal_points {
        return Err(Error::Precondition("stacking needs the same rank and polygon".into()));
    }
    if a.ideal_points == 0 {
        return Err(Error::Precondition("stacking needs a polygon with at least one ideal point".into()));
    }
    let mut out = SkeinExpression::zero(a.n, a.ideal_points);
    for (da, ca) in a.terms() {
        for (db, cb) in b.terms() {
            out.add_term(&stack(da, db)?, &(ca * cb))?;
        }
    }
    Ok(out)
}
