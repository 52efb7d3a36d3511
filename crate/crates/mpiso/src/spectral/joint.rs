//! Joint eigenvalues of a commuting tuple. Commuting matrices are
//! simultaneously unitarily triangularizable; a Schur decomposition of a
//! generic linear combination sum_j c_j T_j supplies the common basis,
//! and the joint eigenvalues are read off the transformed diagonals,
//! matched across operators by position.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::eigen::schur;
use crate::linalg::matrix::{Matrix, C64};
use crate::linalg::norms::{lp_norm, Exponent};
use crate::linalg::tuple::OperatorTuple;
use crate::sampling::{unit_coefficients, DEFAULT_SEED};

/// Relative off-triangle mass accepted after the common similarity.
pub const JOINT_TRI_TOL: f64 = 1e-8;
const MAX_ATTEMPTS: u32 = 5;
// Diagonal entries agreeing in every coordinate within this relative
// distance are treated as one eigenvalue cluster. Well above the
// sqrt(eps) splitting QR leaves on defective blocks, well below any
// genuine gap in the fixtures.
const CLUSTER_TOL: f64 = 1e-6;

/// The joint eigenvalue set, with multiplicity: one d-tuple per matrix
/// dimension, plus the worst relative below-diagonal mass left by the
/// triangularizing similarity.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct JointSpectrum {
    pub points: Vec<Vec<C64>>,
    pub residual: f64,
    pub attempts: u32,
}

fn strict_lower_mass(m: &Matrix) -> f64 {
    let mut total = 0.0f64;
    for r in 0..m.rows() {
        for c in 0..r {
            total += m[(r, c)].norm_sqr();
        }
    }
    total.sqrt()
}

/// Average the diagonal d-tuples over eigenvalue clusters. QR splits a
/// defective eigenvalue of multiplicity b into a cluster of width about
/// eps^(1/b); the cluster sum is trace-accurate, so replacing members by
/// the cluster mean cancels the split. The mean preserves coordinate sums
/// exactly, so position products (hence determinant checks) move only at
/// second order even if two genuinely close eigenvalues get merged.
fn cluster_average(points: &mut [Vec<C64>], scales: &[f64]) {
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    'next_point: for i in 0..points.len() {
        for cluster in clusters.iter_mut() {
            let rep = cluster[0];
            let close = points[i]
                .iter()
                .zip(&points[rep])
                .zip(scales)
                .all(|((a, b), s)| (a - b).norm() <= CLUSTER_TOL * s);
            if close {
                cluster.push(i);
                continue 'next_point;
            }
        }
        clusters.push(vec![i]);
    }
    for cluster in clusters {
        if cluster.len() < 2 {
            continue;
        }
        let d = points[cluster[0]].len();
        let weight = 1.0 / cluster.len() as f64;
        for j in 0..d {
            let mean: C64 = cluster.iter().map(|&i| points[i][j]).sum::<C64>() * weight;
            for &i in &cluster {
                points[i][j] = mean;
            }
        }
    }
}

/// Triangularize the whole tuple in one unitary basis and read the
/// diagonals. A combination whose Schur basis fails to triangularize
/// some T_j (within [`JOINT_TRI_TOL`] relative) is re-drawn up to five
/// times before a degeneracy error.
pub fn joint_eigenvalues(tuple: &OperatorTuple) -> Result<JointSpectrum> {
    let n = tuple.dim();
    let d = tuple.len();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut worst = f64::INFINITY;
    for attempt in 1..=MAX_ATTEMPTS {
        let coeffs = unit_coefficients(&mut rng, d);
        let mut combo = Matrix::zeros(n, n);
        for (c, op) in coeffs.iter().zip(tuple.ops()) {
            combo = combo.add(&op.scale(*c));
        }
        let dec = schur(&combo)?;
        let transformed: Vec<Matrix> = tuple
            .ops()
            .iter()
            .map(|op| dec.u.adjoint().matmul(op).matmul(&dec.u))
            .collect();
        let residual = transformed
            .iter()
            .map(|r| strict_lower_mass(r) / r.frobenius_norm().max(1.0))
            .fold(0.0, f64::max);
        worst = worst.min(residual);
        if residual <= JOINT_TRI_TOL {
            let mut points: Vec<Vec<C64>> = (0..n)
                .map(|i| transformed.iter().map(|r| r[(i, i)]).collect())
                .collect();
            let scales: Vec<f64> =
                tuple.ops().iter().map(|op| op.frobenius_norm().max(1.0)).collect();
            cluster_average(&mut points, &scales);
            return Ok(JointSpectrum { points, residual, attempts: attempt });
        }
    }
    Err(Error::degenerate(format!(
        "no random combination triangularized the tuple within {MAX_ATTEMPTS} attempts \
         (best residual {worst:.3e}); the tuple may be too far from commuting"
    )))
}

/// Largest deviation of the joint eigenvalue p-norms from 1. For a tuple
/// verified (m,p)-isometric the joint spectrum lies on the unit p-sphere,
/// so this is a theorem check there; for anything else it is just a
/// number.
pub fn unit_sphere_check(tuple: &OperatorTuple, p: Exponent) -> Result<f64> {
    let spectrum = joint_eigenvalues(tuple)?;
    Ok(spectrum
        .points
        .iter()
        .map(|lambda| (lp_norm(lambda, p) - 1.0).abs())
        .fold(0.0, f64::max))
}
