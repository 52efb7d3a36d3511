//! Vector norms with an explicit exponent type.
//!
//! Exponents live in (0, inf]. Values below 1 give quasi-norms (the
//! triangle inequality fails); the [`NormContext`] records that so callers
//! can downgrade triangle-based shortcuts.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A norm exponent: a finite positive real or infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Validates a finite exponent: positive and finite.
    pub fn finite(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return Err(Error::invalid(format!(
                "exponent must be a positive finite real or infinity, got {p}"
            )));
        }
        Ok(Exponent::Finite(p))
    }

    /// Accepts `"inf"`, `"infinity"`, or a positive real literal.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(Exponent::Infinity);
        }
        let v: f64 = t
            .parse()
            .map_err(|_| Error::invalid(format!("cannot parse exponent '{s}'")))?;
        Exponent::finite(v)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Exponent::Finite(_))
    }

    /// Finite value, or an input error for infinity.
    pub fn finite_value(&self) -> Result<f64> {
        match self {
            Exponent::Finite(p) => Ok(*p),
            Exponent::Infinity => Err(Error::invalid("operation requires a finite exponent")),
        }
    }

    /// True for exponents below 1, where the norm is only a quasi-norm.
    pub fn is_quasi(&self) -> bool {
        matches!(self, Exponent::Finite(p) if *p < 1.0)
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => ser.serialize_f64(*p),
            Exponent::Infinity => ser.serialize_str("inf"),
        }
    }
}

/// Ambient norm exponent `q` together with the isometry exponent `p`.
///
/// `q` picks the norm on the underlying space; `p` is the power applied to
/// the operator-image norms in the defect polynomials. Both live in
/// (0, inf].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormContext {
    pub q: Exponent,
    pub p: Exponent,
}

impl NormContext {
    pub fn new(q: Exponent, p: Exponent) -> Self {
        NormContext { q, p }
    }

    /// Plain Hilbert-style context, `q = p = 2`.
    pub fn euclidean() -> Self {
        NormContext { q: Exponent::Finite(2.0), p: Exponent::Finite(2.0) }
    }

    /// True when either exponent drops below 1.
    pub fn quasi_norm(&self) -> bool {
        self.q.is_quasi() || self.p.is_quasi()
    }

    /// True on the exact Hilbert fast path `q = p = 2`.
    pub fn is_hilbert_22(&self) -> bool {
        self.q == Exponent::Finite(2.0) && self.p == Exponent::Finite(2.0)
    }
}

/// q-norm (or quasi-norm) of a complex vector.
///
/// Scales by the largest modulus before exponentiating, so large exponents
/// do not overflow and tiny entries do not underflow to zero prematurely.
pub fn lp_norm(x: &[Complex64], q: Exponent) -> f64 {
    let peak = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if peak == 0.0 || !peak.is_finite() {
        return peak;
    }
    match q {
        Exponent::Infinity => peak,
        Exponent::Finite(p) => {
            if p == 2.0 {
                // common enough to keep exact and fast
                return x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            }
            if p == 1.0 {
                return x.iter().map(|z| z.norm()).sum();
            }
            let sum: f64 = x.iter().map(|z| (z.norm() / peak).powf(p)).sum();
            peak * sum.powf(1.0 / p)
        }
    }
}

/// Upper bound on the induced q -> q operator norm of a matrix.
///
/// Exact for q = 2 (largest singular value), q = 1 (max column sum) and
/// q = inf (max row sum). For other q >= 1 it interpolates the 1- and
/// inf-norms, and for q < 1 it uses q-subadditivity of the quasi-norm;
/// both give valid upper bounds, not the exact induced norm (which is
/// NP-hard to compute for general q).
pub fn operator_norm_bound(m: &crate::linalg::matrix::Matrix, q: Exponent) -> crate::error::Result<f64> {
    let rows = m.rows();
    let cols = m.cols();
    let col_sum = |j: usize| -> f64 { (0..rows).map(|i| m[(i, j)].norm()).sum() };
    let row_sum = |i: usize| -> f64 { (0..cols).map(|j| m[(i, j)].norm()).sum() };
    let max_col: f64 = (0..cols).map(col_sum).fold(0.0, f64::max);
    let max_row: f64 = (0..rows).map(row_sum).fold(0.0, f64::max);
    match q {
        Exponent::Infinity => Ok(max_row),
        Exponent::Finite(p) if p == 1.0 => Ok(max_col),
        Exponent::Finite(p) if p == 2.0 => crate::linalg::eigen::operator_norm_2(m),
        Exponent::Finite(p) if p > 1.0 => {
            // Riesz-Thorin between the endpoint norms
            Ok(max_col.powf(1.0 / p) * max_row.powf(1.0 - 1.0 / p))
        }
        Exponent::Finite(p) => {
            // q < 1: ||Mx||_q^q <= max_j sum_i |m_ij|^q * ||x||_q^q
            let bound = (0..cols)
                .map(|j| (0..rows).map(|i| m[(i, j)].norm().powf(p)).sum::<f64>())
                .fold(0.0, f64::max);
            Ok(bound.powf(1.0 / p))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    #[test]
    fn norms_of_simple_vectors() {
        let x = vec![C::new(3.0, 0.0), C::new(0.0, -4.0)];
        assert!((lp_norm(&x, Exponent::Finite(2.0)) - 5.0).abs() < 1e-15);
        assert!((lp_norm(&x, Exponent::Finite(1.0)) - 7.0).abs() < 1e-15);
        assert!((lp_norm(&x, Exponent::Infinity) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn quasi_norm_exponent_flagged() {
        assert!(Exponent::finite(0.5).unwrap().is_quasi());
        assert!(!Exponent::finite(1.0).unwrap().is_quasi());
        let ctx = NormContext::new(Exponent::Finite(2.0), Exponent::Finite(0.5));
        assert!(ctx.quasi_norm());
        assert!(!NormContext::euclidean().quasi_norm());
    }

    #[test]
    fn rejects_nonpositive_exponents() {
        assert!(Exponent::finite(0.0).is_err());
        assert!(Exponent::finite(-1.0).is_err());
        assert!(Exponent::finite(f64::NAN).is_err());
        assert!(Exponent::parse("bogus").is_err());
    }

    #[test]
    fn parse_accepts_inf_spellings() {
        assert_eq!(Exponent::parse("inf").unwrap(), Exponent::Infinity);
        assert_eq!(Exponent::parse("Infinity").unwrap(), Exponent::Infinity);
        assert_eq!(Exponent::parse("2.5").unwrap(), Exponent::Finite(2.5));
    }

    #[test]
    fn large_exponent_does_not_overflow() {
        let x = vec![C::new(1e200, 0.0), C::new(5e199, 0.0)];
        let v = lp_norm(&x, Exponent::Finite(40.0));
        assert!(v.is_finite() && v >= 1e200);
    }

    #[test]
    fn operator_bound_dominates_probe_images() {
        use crate::linalg::matrix::Matrix;
        let m = Matrix::from_real_rows(&[vec![0.5, -2.0], vec![1.5, 0.25]]).unwrap();
        let probes = [
            vec![C::new(1.0, 0.0), C::new(0.0, 0.0)],
            vec![C::new(0.0, 0.0), C::new(1.0, 0.0)],
            vec![C::new(0.6, 0.3), C::new(-0.4, 0.7)],
        ];
        for q in [
            Exponent::Finite(0.5),
            Exponent::Finite(1.0),
            Exponent::Finite(1.7),
            Exponent::Finite(2.0),
            Exponent::Finite(3.0),
            Exponent::Infinity,
        ] {
            let bound = operator_norm_bound(&m, q).unwrap();
            for x in &probes {
                let image = lp_norm(&m.matvec(x), q);
                let scale = lp_norm(x, q);
                assert!(
                    image <= bound * scale * (1.0 + 1e-12),
                    "q={q}: {image} > {bound} * {scale}"
                );
            }
        }
    }
}
