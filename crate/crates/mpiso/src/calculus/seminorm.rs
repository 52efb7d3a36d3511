//! Norms induced by a verified tuple.
//!
//! Finite p: |x|_p = (P_{m-1}(x))^{1/p} is a semi-norm whenever the tuple
//! is an (m,p)-isometry; it is the leading Newton coefficient of
//! n -> Q^n(x) up to (m-1)!, bounded by a constant multiple of the
//! ambient norm, and the tuple acts on it as an l_p-spherical isometry.
//!
//! p = inf: |x|_inf = max_{|alpha| <= m-1} ||T^alpha x|| is a genuine
//! norm equivalent to the ambient one, ||x|| <= |x|_inf <= C ||x||, and
//! the tuple acts on it as an l_inf-spherical isometry.

use crate::error::{Error, Result};
use crate::linalg::matrix::C64;
use crate::linalg::norms::{lp_norm, operator_norm_bound, Exponent, NormContext};
use crate::linalg::orbit::{MatrixOrbit, VectorOrbit};
use crate::linalg::tuple::OperatorTuple;
use crate::calculus::qtable::QTable;
use crate::calculus::verify::DEFAULT_TOL;

/// (max(P_{m-1}(x), 0))^(1/p). The theory gives P_{m-1} >= 0 for an
/// (m,p)-isometry; a value below -tol relative to the term scale means
/// the caller's acceptance claim was wrong and raises an inconsistency.
pub fn leading_seminorm(
    tuple: &OperatorTuple,
    x: &[C64],
    ctx: &NormContext,
    m: u32,
) -> Result<f64> {
    if m == 0 {
        return Err(Error::invalid("the leading semi-norm needs m >= 1"));
    }
    let p = ctx.p.finite_value()?;
    let table = QTable::compute(tuple, x, ctx, m - 1)?;
    let value = table.p_value(m - 1)?;
    if value < 0.0 {
        let scale = table.p_scale(m - 1, 0)?.max(1.0);
        if value < -DEFAULT_TOL * scale {
            return Err(Error::inconsistent(format!(
                "P_{}(x) = {value:.6e} is significantly negative; \
                 the tuple cannot be an ({m},p)-isometry",
                m - 1
            )));
        }
    }
    Ok(value.max(0.0).powf(1.0 / p))
}

/// max_{|alpha| <= depth} ||T^alpha x||_q.
pub fn sup_norm_depth(tuple: &OperatorTuple, x: &[C64], q: Exponent, depth: u32) -> Result<f64> {
    let orbit = VectorOrbit::new(tuple, x, depth)?;
    let mut peak = 0.0f64;
    for k in 0..=depth {
        for v in &orbit.level(k).items {
            peak = peak.max(lp_norm(v, q));
        }
    }
    Ok(peak)
}

/// The equivalent norm attached to an (m,inf)-isometry:
/// |x|_inf = max over |alpha| <= m-1 of ||T^alpha x||_q.
pub fn sup_norm_infty(tuple: &OperatorTuple, x: &[C64], q: Exponent, m: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::invalid("the equivalent norm needs m >= 1"));
    }
    sup_norm_depth(tuple, x, q, m - 1)
}

/// C with ||x|| <= |x|_inf <= C ||x||: the largest operator norm among
/// the powers entering the max (exact for q in {1, 2, inf}, an upper
/// bound otherwise). The lower bound holds with constant 1 because the
/// empty power is the identity.
pub fn infty_norm_constant(tuple: &OperatorTuple, q: Exponent, m: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::invalid("the equivalent norm needs m >= 1"));
    }
    let orbit = MatrixOrbit::new(tuple, m - 1)?;
    let mut c = 0.0f64;
    for k in 0..=(m - 1) {
        for power in &orbit.level(k).items {
            c = c.max(operator_norm_bound(power, q)?);
        }
    }
    Ok(c)
}

/// C with |x|_p <= C ||x||: from P_{m-1}(x) <= sum_k C(m-1,k) Q^k(x) and
/// Q^k(x) <= (sum_j g_j^p)^k ||x||^p with g_j an operator-norm bound of
/// T_j, so C = (1 + sum_j g_j^p)^((m-1)/p).
pub fn seminorm_upper_constant(tuple: &OperatorTuple, ctx: &NormContext, m: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::invalid("the semi-norm bound needs m >= 1"));
    }
    let p = ctx.p.finite_value()?;
    let mut g = 0.0f64;
    for op in tuple.ops() {
        g += operator_norm_bound(op, ctx.q)?.powf(p);
    }
    Ok((1.0 + g).powf((m - 1) as f64 / p))
}
