//! Weighted power sums Q^n and the alternating defect values P_l.
//!
//! For a tuple T, probe x, ambient exponent q and power p:
//!
//!   Q^n(x) = sum over |alpha| = n of (n!/alpha!) ||T^alpha x||_q^p
//!   P_l(x) = sum_{k=0..l} (-1)^(l-k) C(l,k) Q^k(x)
//!
//! The tuple is (m,p)-isometric precisely when P_m vanishes identically,
//! equivalently when the m-fold backward difference of every Q table is
//! zero. Multinomial weights come from exact big-integer factorials with
//! a single rounding at the end.

use crate::error::{Error, Result};
use crate::linalg::matrix::C64;
use crate::linalg::multiindex::binomial;
use crate::linalg::norms::{lp_norm, NormContext};
use crate::linalg::orbit::VectorOrbit;
use crate::linalg::tuple::OperatorTuple;

/// Table of Q^0(x) .. Q^N(x) for one probe.
#[derive(Clone, Debug)]
pub struct QTable {
    probe: Vec<C64>,
    p: f64,
    values: Vec<f64>,
}

impl QTable {
    /// Computes the table up to level `n_max` inclusive.
    pub fn compute(
        tuple: &OperatorTuple,
        x: &[C64],
        ctx: &NormContext,
        n_max: u32,
    ) -> Result<QTable> {
        let p = ctx.p.finite_value()?;
        let orbit = VectorOrbit::new(tuple, x, n_max)?;
        let values = (0..=n_max)
            .map(|k| {
                let level = orbit.level(k);
                level
                    .indices
                    .iter()
                    .zip(&level.items)
                    .map(|(alpha, v)| alpha.multinomial() * lp_norm(v, ctx.q).powf(p))
                    .sum()
            })
            .collect();
        Ok(QTable { probe: x.to_vec(), p, values })
    }

    pub fn probe(&self) -> &[C64] {
        &self.probe
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Q^0 .. Q^N as a sequence; every entry is nonnegative.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, n: u32) -> Result<f64> {
        self.values
            .get(n as usize)
            .copied()
            .ok_or_else(|| Error::invalid(format!("Q table holds levels 0..{}, asked for {n}", self.values.len() - 1)))
    }

    /// P_l read off the table: the alternating binomial sum over Q^0..Q^l.
    pub fn p_value(&self, l: u32) -> Result<f64> {
        if (l as usize) >= self.values.len() {
            return Err(Error::invalid(format!(
                "P_{l} needs Q levels up to {l}, table holds 0..{}",
                self.values.len() - 1
            )));
        }
        Ok((0..=l)
            .map(|k| {
                let sign = if (l - k) % 2 == 0 { 1.0 } else { -1.0 };
                sign * binomial(l as u64, k as u64) * self.values[k as usize]
            })
            .sum())
    }

    /// Magnitude scale for P_l-type sums: sum_k C(l,k) Q^(k+shift).
    /// Used as the denominator of relative residuals.
    pub fn p_scale(&self, l: u32, shift: u32) -> Result<f64> {
        if ((l + shift) as usize) >= self.values.len() {
            return Err(Error::invalid(format!(
                "scale at order {l} offset {shift} needs Q levels up to {}, table holds 0..{}",
                l + shift,
                self.values.len() - 1
            )));
        }
        Ok((0..=l)
            .map(|k| binomial(l as u64, k as u64) * self.values[(k + shift) as usize])
            .sum())
    }

    /// The backward difference of the table at order m, offset v:
    /// (D^m Q)_v = sum_k (-1)^k C(m,k) Q^(v+k). Equals (-1)^m P_m at v=0.
    pub fn difference_at(&self, m: u32, v: u32) -> Result<f64> {
        if ((m + v) as usize) >= self.values.len() {
            return Err(Error::invalid(format!(
                "difference of order {m} at offset {v} needs Q levels up to {}, table holds 0..{}",
                m + v,
                self.values.len() - 1
            )));
        }
        Ok((0..=m)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * binomial(m as u64, k as u64) * self.values[(v + k) as usize]
            })
            .sum())
    }
}

/// Q^n(T, x) for a single level.
pub fn q_value(tuple: &OperatorTuple, x: &[C64], ctx: &NormContext, n: u32) -> Result<f64> {
    QTable::compute(tuple, x, ctx, n)?.value(n)
}

/// P_l(T, x), the alternating defect of order l.
pub fn p_value(tuple: &OperatorTuple, x: &[C64], ctx: &NormContext, l: u32) -> Result<f64> {
    QTable::compute(tuple, x, ctx, l)?.p_value(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{basis_vector, Matrix};
    use crate::linalg::norms::Exponent;

    fn richter() -> OperatorTuple {
        let z = std::f64::consts::FRAC_1_SQRT_2;
        let t1 = Matrix::from_real_rows(&[vec![z, 1.0], vec![0.0, z]]).unwrap();
        let t2 = Matrix::from_real_rows(&[vec![z, -1.0], vec![0.0, z]]).unwrap();
        OperatorTuple::new(vec![t1, t2]).unwrap()
    }

    #[test]
    fn richter_q_and_p_values_at_the_second_basis_vector() {
        // T_1 e_2 = (1, 1/sqrt2), T_2 e_2 = (-1, 1/sqrt2), each squared
        // norm 3/2, so Q^1(e_2) = 3; with Q^0 = 1 this gives P_1 = 2.
        let t = richter();
        let ctx = NormContext::euclidean();
        let e2 = basis_vector(2, 1);
        let q1 = q_value(&t, &e2, &ctx, 1).unwrap();
        assert!((q1 - 3.0).abs() < 1e-14, "{q1}");
        let p1 = p_value(&t, &e2, &ctx, 1).unwrap();
        assert!((p1 - 2.0).abs() < 1e-14, "{p1}");
        // e_1 spans the kernel of the defect form
        let e1 = basis_vector(2, 0);
        assert!(p_value(&t, &e1, &ctx, 1).unwrap().abs() < 1e-14);
        // table linearity: Q^n(e_2) = 1 + 2n for this pair
        let table = QTable::compute(&t, &e2, &ctx, 8).unwrap();
        for n in 0..=8u32 {
            assert!((table.value(n).unwrap() - (1.0 + 2.0 * n as f64)).abs() < 1e-12, "n={n}");
        }
        // P_2 vanishes: the pair is (2,2)-isometric
        assert!(table.p_value(2).unwrap().abs() < 1e-13);
    }

    #[test]
    fn averaged_identity_pair_keeps_unit_q_values() {
        // (I/2, I/2) with p = 1: levels collapse to ||x|| for every n
        let half = Matrix::identity(2).scale(C64::new(0.5, 0.0));
        let t = OperatorTuple::new(vec![half.clone(), half]).unwrap();
        let ctx = NormContext::new(Exponent::Finite(2.0), Exponent::Finite(1.0));
        let x = vec![C64::new(0.6, 0.0), C64::new(0.8, 0.0)];
        for n in 0..=4u32 {
            let q = q_value(&t, &x, &ctx, n).unwrap();
            assert!((q - 1.0).abs() < 1e-14, "n={n}: {q}");
        }
    }

    #[test]
    fn difference_at_matches_signed_p_value() {
        let t = richter();
        let ctx = NormContext::euclidean();
        let x = vec![C64::new(0.3, 0.4), C64::new(-0.5, 0.1)];
        let table = QTable::compute(&t, &x, &ctx, 6).unwrap();
        for l in 0..=4u32 {
            let lhs = table.difference_at(l, 0).unwrap();
            let rhs = table.p_value(l).unwrap() * if l % 2 == 0 { 1.0 } else { -1.0 };
            assert!((lhs - rhs).abs() < 1e-12 * (1.0 + rhs.abs()), "l={l}");
        }
    }

    #[test]
    fn infinite_p_is_rejected() {
        let t = richter();
        let ctx = NormContext::new(Exponent::Finite(2.0), Exponent::Infinity);
        assert!(q_value(&t, &basis_vector(2, 0), &ctx, 1).is_err());
    }

    #[test]
    fn out_of_range_levels_are_errors() {
        let t = richter();
        let table = QTable::compute(&t, &basis_vector(2, 0), &NormContext::euclidean(), 3).unwrap();
        assert!(table.value(4).is_err());
        assert!(table.p_value(4).is_err());
        assert!(table.difference_at(2, 2).is_err());
    }
}
