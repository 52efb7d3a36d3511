//! l_p-spherical isometries: sum_j ||T_j x||^p = ||x||^p for finite p,
//! max_j ||T_j x|| = ||x|| for p = inf. These are exactly the
//! (1,p)-isometric tuples, and for p = inf every vector has an operator
//! index that it stays isometric under.

use crate::error::{Error, Result};
use crate::exec::map_collect;
use crate::linalg::matrix::{basis_vector, C64};
use crate::linalg::norms::{lp_norm, Exponent, NormContext};
use crate::linalg::tuple::OperatorTuple;
use crate::calculus::verify::VerifyOptions;
use crate::sampling::unit_probes;

/// Worst relative defect of the spherical-isometry identity over the
/// standard basis plus seeded random unit probes. Zero defect is
/// equivalent to being a (1,p)-isometry.
pub fn spherical_isometry_residual(
    tuple: &OperatorTuple,
    ctx: &NormContext,
    opts: &VerifyOptions,
) -> Result<f64> {
    let n = tuple.dim();
    let mut probes: Vec<Vec<C64>> = (0..n).map(|i| basis_vector(n, i)).collect();
    probes.extend(unit_probes(opts.seed, opts.samples, n, ctx.q, tuple.is_real()));
    let defects = map_collect(probes.len(), |i| {
        let x = &probes[i];
        let base = lp_norm(x, ctx.q);
        let images: Vec<f64> =
            tuple.ops().iter().map(|op| lp_norm(&op.matvec(x), ctx.q)).collect();
        match ctx.p {
            Exponent::Infinity => {
                let peak = images.iter().fold(0.0f64, |a, &b| a.max(b));
                (peak - base).abs() / base.max(f64::MIN_POSITIVE)
            }
            Exponent::Finite(p) => {
                let total: f64 = images.iter().map(|v| v.powf(p)).sum();
                (total - base.powf(p)).abs() / base.powf(p).max(f64::MIN_POSITIVE)
            }
        }
    });
    Ok(defects.into_iter().fold(0.0f64, f64::max))
}

/// Smallest operator index j (1-based, matching the subscripts T_1..T_d)
/// with ||T_j^n x|| = ||x|| within tol for every n <= n_max, or None.
/// For a verified (1,inf)-isometry such an index exists for every x.
pub fn isometric_direction(
    tuple: &OperatorTuple,
    x: &[C64],
    q: Exponent,
    n_max: u32,
    tol: f64,
) -> Result<Option<usize>> {
    if x.len() != tuple.dim() {
        return Err(Error::invalid(format!(
            "probe length {} does not match operator dimension {}",
            x.len(),
            tuple.dim()
        )));
    }
    let base = lp_norm(x, q);
    let scale = base.max(f64::MIN_POSITIVE);
    'next_op: for (j, op) in tuple.ops().iter().enumerate() {
        let mut v = x.to_vec();
        for _ in 0..n_max {
            v = op.matvec(&v);
            if (lp_norm(&v, q) - base).abs() > tol * scale {
                continue 'next_op;
            }
        }
        return Ok(Some(j + 1));
    }
    Ok(None)
}
