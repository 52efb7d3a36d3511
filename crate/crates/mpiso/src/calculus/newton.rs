//! Newton form of the probe sequence n -> Q^n(x).
//!
//! For an (m,p)-isometric tuple the sequence is a polynomial in n of
//! degree at most m-1, and its Newton coefficients over the falling
//! factorial basis are c_k = P_k(x)/k!. The expansion doubles as a growth
//! certificate: Q^n <= (sum_k |c_k|) n^(m-1) for n >= 1, and
//! Q^n / n^(m-1) -> P_{m-1}(x)/(m-1)!.

use crate::error::{Error, Result};
use crate::linalg::norms::NormContext;
use crate::linalg::tuple::OperatorTuple;
use crate::calculus::qtable::QTable;

/// n (n-1) ... (n-k+1), the product of k descending factors; 1 for k = 0.
pub fn falling_factorial(n: u32, k: u32) -> f64 {
    let mut acc = 1.0f64;
    for i in 0..k {
        acc *= n as f64 - i as f64;
    }
    acc
}

/// Newton coefficients c_0..c_{m-1} of the degree-(m-1) polynomial
/// reproducing n -> Q^n(x). The fit is exact when the tuple is an
/// (m,p)-isometry; this is checked by reconstructing Q^0..Q^12 and
/// comparing, and a mismatch is reported as an inconsistency rather than
/// returned as bad data.
pub fn newton_coefficients(
    tuple: &OperatorTuple,
    x: &[crate::linalg::matrix::C64],
    ctx: &NormContext,
    m: u32,
) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::invalid("the Newton expansion needs m >= 1"));
    }
    const CHECK_DEPTH: u32 = 12;
    let depth = CHECK_DEPTH.max(m - 1);
    let table = QTable::compute(tuple, x, ctx, depth)?;
    let mut coeffs = Vec::with_capacity(m as usize);
    let mut k_factorial = 1.0f64;
    for k in 0..m {
        if k > 0 {
            k_factorial *= k as f64;
        }
        coeffs.push(table.p_value(k)? / k_factorial);
    }
    for n in 0..=CHECK_DEPTH {
        let rebuilt: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * falling_factorial(n, k as u32))
            .sum();
        let actual = table.value(n)?;
        let scale = actual.abs().max(1.0);
        if (rebuilt - actual).abs() > 1e-8 * scale {
            return Err(Error::inconsistent(format!(
                "Newton reconstruction of Q^{n} is off by {:.3e} (got {rebuilt:.6e}, \
                 expected {actual:.6e}); the probe sequence is not a degree-{} polynomial",
                (rebuilt - actual).abs(),
                m - 1
            )));
        }
    }
    Ok(coeffs)
}
