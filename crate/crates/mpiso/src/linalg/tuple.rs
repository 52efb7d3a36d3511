//! Commuting operator tuples.
//!
//! Construction is the single validation gate of the crate: everything
//! downstream (difference calculus, joint spectra, radius sequences)
//! assumes it holds a nonempty family of equal-sized, square, finite,
//! pairwise commuting matrices. Tuples whose commutator residual exceeds
//! [`COMMUTATIVITY_TOL`] are rejected here, not deep inside an algorithm.

use crate::error::{Error, Result};
use crate::linalg::matrix::{Matrix, C64};
use crate::linalg::multiindex::MultiIndex;

/// Relative Frobenius residual above which a family does not count as
/// commuting.
pub const COMMUTATIVITY_TOL: f64 = 1e-12;

/// A commuting tuple T = (T_1, ..., T_d) of n x n matrices.
#[derive(Clone, Debug)]
pub struct OperatorTuple {
    ops: Vec<Matrix>,
    dim: usize,
    commutator_residual: f64,
    real: bool,
}

/// Worst relative commutator over all pairs:
/// max over i < j of ||T_i T_j - T_j T_i||_F / max(1, ||T_i||_F ||T_j||_F).
///
/// Returns the residual together with the 1-based indices of the worst
/// pair; the pair is (1, 1) for families with fewer than two members.
pub fn commutator_residual(ops: &[Matrix]) -> (f64, usize, usize) {
    let mut worst = (0.0f64, 1usize, 1usize);
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            let ij = ops[i].matmul(&ops[j]);
            let ji = ops[j].matmul(&ops[i]);
            let scale = (ops[i].frobenius_norm() * ops[j].frobenius_norm()).max(1.0);
            let r = ij.sub(&ji).frobenius_norm() / scale;
            if r > worst.0 {
                worst = (r, i + 1, j + 1);
            }
        }
    }
    worst
}

impl OperatorTuple {
    pub fn new(ops: Vec<Matrix>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::invalid("operator tuple must contain at least one matrix"));
        }
        let dim = ops[0].rows();
        for (j, m) in ops.iter().enumerate() {
            if !m.is_square() {
                return Err(Error::invalid(format!(
                    "operator {} is {}x{}, expected square",
                    j + 1,
                    m.rows(),
                    m.cols()
                )));
            }
            if m.rows() != dim {
                return Err(Error::invalid(format!(
                    "operator {} has dimension {}, expected {}",
                    j + 1,
                    m.rows(),
                    dim
                )));
            }
            if !m.is_finite() {
                return Err(Error::invalid(format!(
                    "operator {} contains non-finite entries",
                    j + 1
                )));
            }
        }
        let (residual, i, j) = commutator_residual(&ops);
        if residual > COMMUTATIVITY_TOL {
            return Err(Error::NotCommuting { i, j, residual });
        }
        let real = ops.iter().all(Matrix::is_real);
        Ok(OperatorTuple { ops, dim, commutator_residual: residual, real })
    }

    /// Number of operators d.
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least one operator
    }

    /// Dimension n of the underlying space.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn op(&self, j: usize) -> &Matrix {
        &self.ops[j]
    }

    pub fn ops(&self) -> &[Matrix] {
        &self.ops
    }

    /// Residual recorded at construction time.
    pub fn commutator_residual(&self) -> f64 {
        self.commutator_residual
    }

    /// True when every entry of every operator is real.
    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Applies T^alpha = T_1^{a_1} ... T_d^{a_d} to a vector.
    pub fn apply_power(&self, alpha: &MultiIndex, x: &[C64]) -> Result<Vec<C64>> {
        if alpha.len() != self.ops.len() {
            return Err(Error::invalid(format!(
                "multi-index has {} components, tuple has {}",
                alpha.len(),
                self.ops.len()
            )));
        }
        if x.len() != self.dim {
            return Err(Error::invalid(format!(
                "vector has length {}, tuple dimension is {}",
                x.len(),
                self.dim
            )));
        }
        let mut v = x.to_vec();
        // operators commute, so application order does not matter
        for (j, &a) in alpha.entries().iter().enumerate().rev() {
            for _ in 0..a {
                v = self.ops[j].matvec(&v);
            }
        }
        Ok(v)
    }

    /// The power T^alpha as a matrix.
    pub fn power_matrix(&self, alpha: &MultiIndex) -> Result<Matrix> {
        if alpha.len() != self.ops.len() {
            return Err(Error::invalid(format!(
                "multi-index has {} components, tuple has {}",
                alpha.len(),
                self.ops.len()
            )));
        }
        let mut m = Matrix::identity(self.dim);
        for (j, &a) in alpha.entries().iter().enumerate() {
            for _ in 0..a {
                m = m.matmul(&self.ops[j]);
            }
        }
        Ok(m)
    }

    /// The reduced tuple T'_j with operator `j` (0-based) removed.
    pub fn remove_index(&self, j: usize) -> Result<OperatorTuple> {
        if j >= self.ops.len() {
            return Err(Error::invalid(format!(
                "operator index {} out of range for a tuple of {} operators",
                j,
                self.ops.len()
            )));
        }
        if self.ops.len() == 1 {
            return Err(Error::invalid("cannot remove the only operator of a tuple"));
        }
        let mut ops = self.ops.clone();
        ops.remove(j);
        OperatorTuple::new(ops)
    }
}
