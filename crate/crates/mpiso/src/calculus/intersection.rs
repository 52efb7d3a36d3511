//! Structure forced on tuples that are simultaneously (m,p)- and
//! (mu,inf)-isometric. The checks mirror what the theory proves:
//!
//! * always: T_i^m T_j^m = 0 for every i != j;
//! * mu = 1: exactly one operator T_j0 is a q-isometry, and every
//!   order-m power of the remaining tuple vanishes;
//! * m = mu = 2: each ||T_j^n x|| is constant in n from n = 2 on, the
//!   squared tuple (T_1^2,...,T_d^2) is an l_p-spherical isometry, and at
//!   least one square vanishes.
//!
//! Verdicts are evidence with residuals, not theorems: the caller gets
//! every sub-check's number and can judge marginal cases.

use crate::error::{Error, Result};
use crate::linalg::matrix::{basis_vector, C64};
use crate::linalg::norms::{lp_norm, NormContext};
use crate::linalg::orbit::MatrixOrbit;
use crate::linalg::tuple::OperatorTuple;
use crate::calculus::spherical::spherical_isometry_residual;
use crate::calculus::verify::{is_minfty_isometry, is_mp_isometry, IsometryReport, VerifyOptions};
use crate::sampling::unit_probes;

/// Residual of T_i^m T_j^m = 0 for one ordered pair, 1-based indices.
#[derive(Clone, Copy, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PairwiseNilpotency {
    pub i: usize,
    pub j: usize,
    pub residual: f64,
}

/// Per-operator evidence: how far T_j is from a q-isometry, and the
/// Frobenius mass of its square.
#[derive(Clone, Copy, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OperatorEvidence {
    pub j: usize,
    pub isometry_residual: f64,
    pub square_frobenius: f64,
}

/// mu = 1 branch: a unique isometric direction whose complement is
/// jointly nilpotent of order m.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct UniqueIsometryBranch {
    pub isometric_count: usize,
    pub isometric_index: Option<usize>,
    /// Worst ||(T')^beta||_F over |beta| = m for the tuple without T_j0,
    /// relative to the operator scale; absent when d = 1.
    pub complement_nilpotency_residual: Option<f64>,
    pub passed: bool,
}

/// m = mu = 2 branch.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SquaredTupleBranch {
    /// Worst drift of n -> ||T_j^n x|| over n = 2..6 against its n = 2 value.
    pub power_constancy_residual: f64,
    /// Spherical-isometry residual of (T_1^2,...,T_d^2).
    pub squares_spherical_residual: f64,
    pub min_square_frobenius: f64,
    pub min_square_index: usize,
    pub some_square_vanishes: bool,
    pub passed: bool,
}

#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct IntersectionReport {
    pub m: u32,
    pub mu: u32,
    pub mp: IsometryReport,
    pub minfty: IsometryReport,
    pub pairwise: Vec<PairwiseNilpotency>,
    pub pairwise_max_residual: f64,
    pub operators: Vec<OperatorEvidence>,
    pub unique_isometry: Option<UniqueIsometryBranch>,
    pub squared_tuple: Option<SquaredTupleBranch>,
}

fn operator_isometry_residual(
    tuple: &OperatorTuple,
    j: usize,
    ctx: &NormContext,
    opts: &VerifyOptions,
) -> f64 {
    let n = tuple.dim();
    let mut probes: Vec<Vec<C64>> = (0..n).map(|i| basis_vector(n, i)).collect();
    probes.extend(unit_probes(opts.seed, opts.samples.min(32), n, ctx.q, tuple.is_real()));
    let op = tuple.op(j);
    probes
        .iter()
        .map(|x| {
            let base = lp_norm(x, ctx.q).max(f64::MIN_POSITIVE);
            (lp_norm(&op.matvec(x), ctx.q) - base).abs() / base
        })
        .fold(0.0, f64::max)
}

/// Run the full battery. Both acceptance preconditions are re-verified
/// here; a tuple failing either is an input error, since the structure
/// theorems say nothing about it.
pub fn intersection_diagnostics(
    tuple: &OperatorTuple,
    ctx: &NormContext,
    m: u32,
    mu: u32,
    opts: &VerifyOptions,
) -> Result<IntersectionReport> {
    if m == 0 || mu == 0 {
        return Err(Error::invalid("intersection diagnostics need m >= 1 and mu >= 1"));
    }
    let mp = is_mp_isometry(tuple, ctx, m, opts)?;
    if !mp.accepted() {
        return Err(Error::invalid(format!(
            "precondition failed: not an ({m},p)-isometry (residual {:.3e})",
            mp.max_relative_residual
        )));
    }
    let minfty = is_minfty_isometry(tuple, ctx.q, mu, opts)?;
    if !minfty.accepted() {
        return Err(Error::invalid(format!(
            "precondition failed: not a ({mu},inf)-isometry (residual {:.3e})",
            minfty.max_relative_residual
        )));
    }

    let d = tuple.len();
    let powers: Vec<_> = tuple.ops().iter().map(|t| t.pow(m)).collect();
    let mut pairwise = Vec::new();
    let mut pairwise_max = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            let scale = (powers[i].frobenius_norm() * powers[j].frobenius_norm()).max(1.0);
            let residual = powers[i].matmul(&powers[j]).frobenius_norm() / scale;
            pairwise_max = pairwise_max.max(residual);
            pairwise.push(PairwiseNilpotency { i: i + 1, j: j + 1, residual });
        }
    }

    let operators: Vec<OperatorEvidence> = (0..d)
        .map(|j| OperatorEvidence {
            j: j + 1,
            isometry_residual: operator_isometry_residual(tuple, j, ctx, opts),
            square_frobenius: tuple.op(j).pow(2).frobenius_norm(),
        })
        .collect();

    let unique_isometry = if mu == 1 {
        let isometric: Vec<usize> = operators
            .iter()
            .filter(|e| e.isometry_residual <= opts.tol)
            .map(|e| e.j)
            .collect();
        let isometric_index = (isometric.len() == 1).then(|| isometric[0]);
        let complement = match isometric_index {
            Some(j0) if d > 1 => {
                let rest = tuple.remove_index(j0 - 1)?;
                let orbit = MatrixOrbit::new(&rest, m)?;
                let scale = rest
                    .ops()
                    .iter()
                    .map(|t| t.frobenius_norm())
                    .fold(0.0f64, f64::max)
                    .max(1.0)
                    .powi(m as i32);
                let worst = orbit
                    .level(m)
                    .items
                    .iter()
                    .map(|mat| mat.frobenius_norm())
                    .fold(0.0, f64::max);
                Some(worst / scale)
            }
            _ => None,
        };
        let passed = isometric.len() == 1 && complement.map_or(d == 1, |r| r <= opts.tol);
        Some(UniqueIsometryBranch {
            isometric_count: isometric.len(),
            isometric_index,
            complement_nilpotency_residual: complement,
            passed,
        })
    } else {
        None
    };

    let squared_tuple = if m == 2 && mu == 2 {
        let n = tuple.dim();
        let mut probes: Vec<Vec<C64>> = (0..n).map(|i| basis_vector(n, i)).collect();
        probes.extend(unit_probes(opts.seed, opts.samples.min(32), n, ctx.q, tuple.is_real()));
        let mut constancy = 0.0f64;
        for x in &probes {
            for op in tuple.ops() {
                let mut v = op.matvec(&op.matvec(x));
                let base = lp_norm(&v, ctx.q);
                let mut drift = 0.0f64;
                for _ in 3..=6 {
                    v = op.matvec(&v);
                    drift = drift.max((lp_norm(&v, ctx.q) - base).abs());
                }
                if base > 0.0 {
                    constancy = constancy.max(drift / base.max(1e-300));
                } else {
                    constancy = constancy.max(drift);
                }
            }
        }
        let squares = OperatorTuple::new(tuple.ops().iter().map(|t| t.pow(2)).collect())?;
        let spherical = spherical_isometry_residual(&squares, ctx, opts)?;
        let (min_idx, min_sq) = operators
            .iter()
            .map(|e| (e.j, e.square_frobenius))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("tuple is nonempty");
        let op_scale = tuple
            .ops()
            .iter()
            .map(|t| t.frobenius_norm())
            .fold(0.0f64, f64::max)
            .max(1.0);
        let vanishes = min_sq <= opts.tol * op_scale * op_scale;
        Some(SquaredTupleBranch {
            power_constancy_residual: constancy,
            squares_spherical_residual: spherical,
            min_square_frobenius: min_sq,
            min_square_index: min_idx,
            some_square_vanishes: vanishes,
            passed: constancy <= opts.tol && spherical <= opts.tol && vanishes,
        })
    } else {
        None
    };

    Ok(IntersectionReport {
        m,
        mu,
        mp,
        minfty,
        pairwise,
        pairwise_max_residual: pairwise_max,
        operators,
        unique_isometry,
        squared_tuple,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::Matrix;

    fn nilpotent_pair(a: f64) -> OperatorTuple {
        let t1 = Matrix::from_real_rows(&[
            vec![0.0, 0.0, 1.0],
            vec![0.0, -1.0, 0.0],
            vec![1.0, 0.0, 0.0],
        ])
        .unwrap();
        let t2 = Matrix::from_real_rows(&[
            vec![0.0, 0.0, 0.0],
            vec![a, 0.0, -a],
            vec![0.0, 0.0, 0.0],
        ])
        .unwrap();
        OperatorTuple::new(vec![t1, t2]).unwrap()
    }

    #[test]
    fn nilpotent_pair_passes_all_branches() {
        let t = nilpotent_pair(3.0);
        let ctx = NormContext::euclidean();
        let report =
            intersection_diagnostics(&t, &ctx, 2, 2, &VerifyOptions::default()).unwrap();
        assert!(report.pairwise_max_residual < 1e-14);
        // T_1 is the isometry, T_2 the nilpotent part
        assert!(report.operators[0].isometry_residual < 1e-12);
        assert!(report.operators[1].isometry_residual > 0.5);
        assert!(report.operators[1].square_frobenius == 0.0);
        let sq = report.squared_tuple.expect("m = mu = 2 branch runs");
        assert!(sq.passed, "{sq:?}");
        assert_eq!(sq.min_square_index, 2);
        assert!(report.unique_isometry.is_none());
    }

    #[test]
    fn single_isometry_passes_trivially() {
        let swap = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let t = OperatorTuple::new(vec![swap]).unwrap();
        let ctx = NormContext::euclidean();
        let report =
            intersection_diagnostics(&t, &ctx, 1, 1, &VerifyOptions::default()).unwrap();
        assert!(report.pairwise.is_empty());
        let ui = report.unique_isometry.expect("mu = 1 branch runs");
        assert!(ui.passed);
        assert_eq!(ui.isometric_index, Some(1));
        assert!(ui.complement_nilpotency_residual.is_none());
    }

    #[test]
    fn scaled_permutations_refuse_the_precondition() {
        // (S/2^(1/p), S/2^(1/p)) is (1,p)-spherical for finite p but every
        // power of each operator contracts, so no (mu,inf) verdict holds
        let s = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let w = C64::new(1.0 / 2.0f64.sqrt(), 0.0);
        let t = OperatorTuple::new(vec![s.scale(w), s.scale(w)]).unwrap();
        let ctx = NormContext::euclidean();
        let err = intersection_diagnostics(&t, &ctx, 1, 1, &VerifyOptions::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)), "{err}");
        let err = intersection_diagnostics(&t, &ctx, 1, 3, &VerifyOptions::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)), "{err}");
    }
}
