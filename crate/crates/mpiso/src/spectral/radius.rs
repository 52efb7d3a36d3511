//! The joint l_p-spectral radius as a limit of multinomial sums:
//!
//!   s_k = ( sum_{|alpha|=k} (k!/alpha!) w(T^alpha)^p )^(1/(pk)),
//!
//! where the weight w is either the spectral radius of the power (the
//! default) or its largest singular value; both sequences converge to
//! the same limit. For p = inf the sequence is the plain power-maximum
//! s_k = (max_{|alpha|=k} w(T^alpha))^(1/k).

use crate::error::{Error, Result};
use crate::exec::map_collect;
use crate::linalg::eigen::{operator_norm_2, spectral_radius};
use crate::linalg::matrix::Matrix;
use crate::linalg::norms::Exponent;
use crate::linalg::orbit::MatrixOrbit;
use crate::linalg::tuple::OperatorTuple;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum RadiusMode {
    /// w(A) = r(A), the largest eigenvalue magnitude.
    Eigenvalue,
    /// w(A) = largest singular value (the Euclidean operator norm).
    EuclideanNorm,
}

impl RadiusMode {
    fn weigh(self, m: &Matrix) -> Result<f64> {
        match self {
            RadiusMode::Eigenvalue => spectral_radius(m),
            RadiusMode::EuclideanNorm => operator_norm_2(m),
        }
    }
}

/// s_1..s_k_max for one tuple, exponent and weight mode.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RadiusSequence {
    pub p: Exponent,
    pub mode: RadiusMode,
    pub terms: Vec<f64>,
    /// Some term vanished: the tuple is jointly nilpotent at that depth
    /// and the limit is 0 regardless of extrapolation.
    pub has_zero_terms: bool,
}

/// Evaluate the radius sequence up to k_max >= 4.
pub fn lp_radius_sequence(
    tuple: &OperatorTuple,
    p: Exponent,
    k_max: u32,
    mode: RadiusMode,
) -> Result<RadiusSequence> {
    if k_max < 4 {
        return Err(Error::invalid("the radius sequence needs k_max >= 4"));
    }
    let orbit = MatrixOrbit::new(tuple, k_max)?;
    let terms = map_collect(k_max as usize, |i| -> Result<f64> {
        let k = i as u32 + 1;
        let level = orbit.level(k);
        let weights: Result<Vec<f64>> = level.items.iter().map(|m| mode.weigh(m)).collect();
        let weights = weights?;
        let wmax = weights.iter().fold(0.0f64, |a, &b| a.max(b));
        if wmax == 0.0 {
            return Ok(0.0);
        }
        match p {
            Exponent::Infinity => Ok(wmax.powf(1.0 / k as f64)),
            Exponent::Finite(p) => {
                // factor out the peak so the sum stays well scaled even
                // when the weights decay geometrically in k
                let sum: f64 = level
                    .indices
                    .iter()
                    .zip(&weights)
                    .map(|(alpha, &w)| alpha.multinomial() * (w / wmax).powf(p))
                    .sum();
                Ok(wmax.powf(1.0 / k as f64) * sum.powf(1.0 / (p * k as f64)))
            }
        }
    });
    let mut out = Vec::with_capacity(k_max as usize);
    for t in terms {
        out.push(t?);
    }
    let has_zero_terms = out.iter().any(|&t| t == 0.0);
    Ok(RadiusSequence { p, mode, terms: out, has_zero_terms })
}
