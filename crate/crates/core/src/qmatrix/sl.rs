use std::collections::BTreeMap;

use super::algebra::{QElement, Ring};
use super::hopf::det_q;
use crate::error::{Error, Result};

/// Decide `x = y` in `O_q(SL_n) = O_q(M(n))/(det_q - 1)`.
///
/// `x - y = w·(D - 1)` splits by degree into `z_d = w_{d-n} D - w_d`; the
/// recursion `w_d = w_{d-n} D - z_d` determines `w`, and a solution exists iff
/// `w` vanishes in the top `n` degrees.
pub fn sl_equal(x: &QElement, y: &QElement) -> Result<bool> {
    if x.n != y.n {
        return Err(Error::Precondition(format!("rank mismatch: {} vs {}", x.n, y.n)));
    }
    if x.ring != Ring::SLn || y.ring != Ring::SLn {
        return Err(Error::Precondition("sl_equal requires the SLn ring tag".into()));
    }
    let n = x.n;
    let z = x.clone().with_ring(Ring::Mn).sub(&y.clone().with_ring(Ring::Mn))?;
    let Some(dmax) = z.max_degree() else { return Ok(true) };
    let zd = z.graded();
    let d = det_q(n)?;
    let mut w: BTreeMap<usize, QElement> = BTreeMap::new();
    for deg in 0..=dmax {
        let mut wd = if deg >= n {
            w[&(deg - n)].mul(&d)?
        } else {
            QElement::zero(n, Ring::Mn)
        };
        if let Some(part) = zd.get(&deg) {
            wd = wd.sub(part)?;
        }
        w.insert(deg, wd);
    }
    Ok(w.range(dmax.saturating_sub(n - 1)..=dmax).all(|(_, e)| e.is_zero()))
}
