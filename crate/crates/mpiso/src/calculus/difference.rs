//! Backward difference operator on real sequences.
//!
//! (D a)_v = a_v - a_{v+1}, and the m-fold iterate expands to
//! (D^m a)_v = sum_k (-1)^k C(m,k) a_{v+k}. D^m annihilates exactly the
//! sequences that are polynomials of degree < m in the index, which is
//! what ties it to the defect polynomials: applying D^m to a power sum
//! table decides membership at order m.

use crate::error::{Error, Result};
use crate::linalg::multiindex::binomial;

/// m-fold backward difference. Input must be longer than m; the output
/// has `a.len() - m` entries.
pub fn difference(a: &[f64], m: u32) -> Result<Vec<f64>> {
    if a.is_empty() {
        return Err(Error::invalid("difference needs a nonempty sequence"));
    }
    if a.len() <= m as usize {
        return Err(Error::invalid(format!(
            "difference of order {m} needs at least {} terms, got {}",
            m as usize + 1,
            a.len()
        )));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("difference needs finite terms"));
    }
    let weights: Vec<f64> = (0..=m)
        .map(|k| if k % 2 == 0 { binomial(m as u64, k as u64) } else { -binomial(m as u64, k as u64) })
        .collect();
    Ok((0..a.len() - m as usize)
        .map(|v| weights.iter().enumerate().map(|(k, w)| w * a[v + k]).sum())
        .collect())
}

/// Single term (D^m a)_v.
pub fn difference_at(a: &[f64], m: u32, v: usize) -> Result<f64> {
    let table = difference(a, m)?;
    table
        .get(v)
        .copied()
        .ok_or_else(|| Error::invalid(format!("offset {v} out of range for difference table")))
}
