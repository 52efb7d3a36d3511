//! Convergence acceleration for radius sequences. The raw terms behave
//! like r * k^(a/k) * e^(b/k) because of the polynomial prefactor in the
//! multinomial sums, so log s_k is fitted against [1, (log k)/k, 1/k] by
//! least squares over the tail half and the intercept is exponentiated.
//! The raw last term always rides along so callers never have to trust
//! the fit blindly.

use crate::error::{Error, Result};
use crate::linalg::matrix::{Matrix, C64};

/// Fitted limit plus diagnostics.
#[derive(Clone, Copy, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Extrapolation {
    pub value: f64,
    /// Root-mean-square misfit of the model on the tail, in log space.
    pub fit_rms: f64,
    /// True when a non-positive tail forced the fallback to the last
    /// raw term.
    pub fell_back: bool,
    pub tail_len: usize,
}

/// Extrapolate a radius sequence (terms indexed from k = 1). Needs at
/// least four terms; fits the final max(4, len/2) of them.
pub fn extrapolate_radius(terms: &[f64]) -> Result<Extrapolation> {
    if terms.len() < 4 {
        return Err(Error::invalid("extrapolation needs at least four terms"));
    }
    let tail_len = (terms.len() / 2).max(4);
    let start = terms.len() - tail_len;
    let tail = &terms[start..];
    let last = *terms.last().expect("nonempty by the length check");
    if tail.iter().any(|&s| !(s > 0.0)) {
        return Ok(Extrapolation { value: last, fit_rms: 0.0, fell_back: true, tail_len });
    }

    // normal equations for y = c0 + c1 (log k)/k + c2 / k
    let rows: Vec<(f64, [f64; 3])> = tail
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let k = (start + i + 1) as f64;
            (s.ln(), [1.0, k.ln() / k, 1.0 / k])
        })
        .collect();
    let mut ata = [[0.0f64; 3]; 3];
    let mut aty = [0.0f64; 3];
    for (y, x) in &rows {
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += x[i] * x[j];
            }
            aty[i] += x[i] * y;
        }
    }
    let a = Matrix::from_fn(3, 3, |r, c| C64::new(ata[r][c], 0.0));
    let det = a.det();
    if det.norm() < 1e-250 {
        return Ok(Extrapolation { value: last, fit_rms: 0.0, fell_back: true, tail_len });
    }
    let mut coeffs = [0.0f64; 3];
    for col in 0..3 {
        let ai = Matrix::from_fn(3, 3, |r, c| {
            if c == col { C64::new(aty[r], 0.0) } else { C64::new(ata[r][c], 0.0) }
        });
        coeffs[col] = (ai.det() / det).re;
    }
    let mut sq = 0.0f64;
    for (y, x) in &rows {
        let fit = coeffs[0] * x[0] + coeffs[1] * x[1] + coeffs[2] * x[2];
        sq += (y - fit) * (y - fit);
    }
    let fit_rms = (sq / rows.len() as f64).sqrt();
    Ok(Extrapolation { value: coeffs[0].exp(), fit_rms, fell_back: false, tail_len })
}
