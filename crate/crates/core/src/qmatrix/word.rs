//! Text form of quantum-matrix elements.
//!
//! ```text
//! expr   := [sign] term (sign term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' int]
//! atom   := uint | 'v' | 'q' | 'u' '[' uint ',' uint ']' | '(' expr ')'
//! ```
//!
//! Products are taken in the written order. `q` stands for `v^{2n}`. Negative
//! exponents are allowed on scalar monomials only.

use super::algebra::{QElement, Ring};
use crate::error::Result;
use crate::scalar::parse::Lexer;
use crate::scalar::LaurentScalar;

pub fn parse_qelement(src: &str, n: usize, ring: Ring) -> Result<QElement> {
    let mut lx = Lexer::new(src);
    let out = expr(&mut lx, n, ring)?;
    if !lx.at_end() {
        return Err(lx.err("trailing input"));
    }
    Ok(out)
}

fn expr(lx: &mut Lexer, n: usize, ring: Ring) -> Result<QElement> {
    let mut acc = QElement::zero(n, ring);
    let mut neg = lx.eat('-');
    if !neg {
        lx.eat('+');
    }
    loop {
        let t = term(lx, n, ring)?;
        acc = if neg { acc.sub(&t)? } else { acc.add(&t)? };
        if lx.eat('+') {
            neg = false;
        } else if lx.eat('-') {
            neg = true;
        } else {
            return Ok(acc);
        }
    }
}

fn term(lx: &mut Lexer, n: usize, ring: Ring) -> Result<QElement> {
    let mut acc = factor(lx, n, ring)?;
    while lx.eat('*') {
        acc = acc.mul(&factor(lx, n, ring)?)?;
    }
    Ok(acc)
}

fn factor(lx: &mut Lexer, n: usize, ring: Ring) -> Result<QElement> {
    let base = atom(lx, n, ring)?;
    if !lx.eat('^') {
        return Ok(base);
    }
    let e = lx.int()?;
    if e >= 0 {
        return base.pow(e as u32);
    }
    let scalar = match base.terms.iter().next() {
        Some((m, c)) if base.terms.len() == 1 && m.is_empty() => c.clone(),
        _ => return Err(lx.err("negative exponent on a non-scalar factor")),
    };
    let inv = scalar
        .powi(e)
        .ok_or_else(|| lx.err("negative exponent on a non-monomial scalar"))?;
    Ok(QElement::scalar(n, ring, inv))
}

fn atom(lx: &mut Lexer, n: usize, ring: Ring) -> Result<QElement> {
    match lx.peek() {
        Some(c) if c.is_ascii_digit() => Ok(QElement::scalar(n, ring, LaurentScalar::constant(lx.uint()?))),
        Some('v') => {
            lx.bump();
            Ok(QElement::scalar(n, ring, LaurentScalar::v_pow(1)))
        }
        Some('q') => {
            lx.bump();
            Ok(QElement::scalar(n, ring, LaurentScalar::v_pow(2 * n as i64)))
        }
        Some('u') => {
            lx.bump();
            lx.expect('[')?;
            let i = lx.small_uint()?;
            lx.expect(',')?;
            let j = lx.small_uint()?;
            lx.expect(']')?;
            QElement::generator(n, ring, i, j).map_err(|e| lx.err(&e.to_string()))
        }
        Some('(') => {
            lx.bump();
            let inner = expr(lx, n, ring)?;
            lx.expect(')')?;
            Ok(inner)
        }
        _ => Err(lx.err("expected a number, 'v', 'q', 'u[i,j]' or '('")),
    }
}

/// `u[1,1]^2*u[2,2]`; the empty monomial prints as an empty string.
pub fn format_monomial(n: usize, m: &[u8]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut k = 0;
    while k < m.len() {
        let mut e = 1;
        while k + e < m.len() && m[k + e] == m[k] {
            e += 1;
        }
        let g = m[k] as usize;
        let s = format!("u[{},{}]", g / n + 1, g % n + 1);
        parts.push(if e > 1 { format!("{s}^{e}") } else { s });
        k += e;
    }
    parts.join("*")
}

/// Coefficient text and whether it is negative, rendering `±v^{2nk}` as `q^k`.
fn coeff_text(n: usize, c: &LaurentScalar) -> (bool, String) {
    if let Some((k, e)) = c.as_monomial() {
        let neg = k.sign() == num_bigint::Sign::Minus;
        let abs_one = k.magnitude() == &num_bigint::BigUint::from(1u32);
        if abs_one && e % (2 * n as i64) == 0 {
            let p = e / (2 * n as i64);
            let s = match p {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{p}"),
            };
            return (neg, s);
        }
        if e == 0 {
            return (neg, k.magnitude().to_string());
        }
    }
    (false, format!("({c})"))
}

/// Degree descending, then ascending in generator order.
pub fn format_qelement(x: &QElement) -> String {
    let mut keys: Vec<&Vec<u8>> = x.terms.keys().collect();
    keys.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    if keys.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, m) in keys.into_iter().enumerate() {
        let (neg, c) = coeff_text(x.n, &x.terms[m]);
        let mono = format_monomial(x.n, m);
        let body = match (c.is_empty(), mono.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => mono,
            (false, true) => c,
            (false, false) => format!("{c}*{mono}"),
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}
