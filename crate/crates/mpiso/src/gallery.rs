//! Named example tuples with their expected classifications, used as
//! fixtures everywhere. Each loader returns the concrete matrices plus
//! an [`ExampleSpec`] whose claims are re-checked by the test suites.
//!
//! Two families are deliberately absent. Weighted shifts live on
//! infinite-dimensional sequence spaces; any finite truncation is
//! nilpotent and fails the defining identity on vectors outside the
//! kernel, so truncations would be wrong fixtures, not approximations.
//! And no finite-dimensional single operator is known to be a strict
//! (m,inf)-isometry without being an isometry outright; the gallery does
//! not invent one.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::matrix::{Matrix, C64};
use crate::linalg::norms::{lp_norm, Exponent};
use crate::linalg::tuple::OperatorTuple;

const UNIT_TOL: f64 = 1e-12;

/// One classification claim: the tuple is accepted (or not) as an
/// (m,p)-isometry on the q-norm.
#[derive(Clone, Copy, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Claim {
    pub m: u32,
    pub p: Exponent,
    pub q: Exponent,
    pub accept: bool,
}

/// A gallery entry: resolved parameters, claims, and a prose note.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExampleSpec {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub claims: Vec<Claim>,
    pub notes: String,
}

/// Stable, CLI-addressable gallery names.
pub fn gallery_names() -> &'static [&'static str] {
    &["trivial_pair", "diag_13", "richter_22", "isometry_nilpotent"]
}

/// (z_1 S, ..., z_d S) for a single operator S. When S is an
/// (m,p)-isometric operator and ||z||_p = 1, the tuple is an
/// (m,p)-isometric tuple: the multinomial sum factors into
/// ||S^n x||^p (sum_i |z_i|^p)^n. The p = inf variant needs
/// ||z||_inf = 1 and works the same way through the parity maxima.
pub fn make_scaled_tuple(s: &Matrix, z: &[C64], p: Exponent) -> Result<OperatorTuple> {
    if !s.is_square() {
        return Err(Error::invalid("the base operator must be square"));
    }
    if z.is_empty() {
        return Err(Error::invalid("the scalar list must be nonempty"));
    }
    let norm = lp_norm(z, p);
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::invalid(format!(
            "the scalar list must have unit {p}-norm, got {norm:.15}"
        )));
    }
    OperatorTuple::new(z.iter().map(|&zi| s.scale(zi)).collect())
}

/// The block construction S_i = [[z_i I_n, V_i], [0, z_i I_m]] with
/// ||z||_2 = 1 and sum_i conj(z_i) V_i = 0, which is always a
/// (2,2)-isometric tuple on the Euclidean norm.
pub fn make_richter_pair(z: &[C64], v: &[Matrix], n: usize, m: usize) -> Result<OperatorTuple> {
    if z.len() != v.len() || z.is_empty() {
        return Err(Error::invalid("need equally many scalars and blocks, at least one"));
    }
    if n == 0 || m == 0 {
        return Err(Error::invalid("block sizes n and m must be positive"));
    }
    let norm = lp_norm(z, Exponent::Finite(2.0));
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::invalid(format!(
            "the scalar list must have unit 2-norm, got {norm:.15}"
        )));
    }
    let mut constraint = Matrix::zeros(n, m);
    let mut scale = 0.0f64;
    for (zi, vi) in z.iter().zip(v) {
        if vi.rows() != n || vi.cols() != m {
            return Err(Error::invalid(format!(
                "every block must be {n}x{m}, got {}x{}",
                vi.rows(),
                vi.cols()
            )));
        }
        constraint = constraint.add(&vi.scale(zi.conj()));
        scale = scale.max(vi.frobenius_norm());
    }
    if constraint.frobenius_norm() > UNIT_TOL * scale.max(1.0) {
        return Err(Error::invalid(format!(
            "sum of conj(z_i) V_i must vanish, Frobenius norm is {:.3e}",
            constraint.frobenius_norm()
        )));
    }
    let dim = n + m;
    let ops = z
        .iter()
        .zip(v)
        .map(|(&zi, vi)| {
            Matrix::from_fn(dim, dim, |r, c| {
                if r < n && c < n {
                    if r == c { zi } else { C64::new(0.0, 0.0) }
                } else if r < n {
                    vi[(r, c - n)]
                } else if c >= n {
                    if r == c { zi } else { C64::new(0.0, 0.0) }
                } else {
                    C64::new(0.0, 0.0)
                }
            })
        })
        .collect();
    OperatorTuple::new(ops)
}

fn claim(m: u32, p: Exponent, q: Exponent, accept: bool) -> Claim {
    Claim { m, p, q, accept }
}

fn parse_param_f64(params: &BTreeMap<String, String>, key: &str, default: f64) -> Result<f64> {
    match params.get(key) {
        None => Ok(default),
        Some(raw) => raw
            .parse::<f64>()
            .map_err(|_| Error::invalid(format!("parameter {key} must be a number, got {raw:?}")))
            .and_then(|v| {
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::invalid(format!("parameter {key} must be finite")))
                }
            }),
    }
}

fn reject_unknown_params(params: &BTreeMap<String, String>, allowed: &[&str]) -> Result<()> {
    for key in params.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(Error::invalid(format!(
                "unknown parameter {key:?}; this example accepts {allowed:?}"
            )));
        }
    }
    Ok(())
}

fn trivial_pair(params: &BTreeMap<String, String>) -> Result<(OperatorTuple, ExampleSpec)> {
    reject_unknown_params(params, &["dim"])?;
    let dim = parse_param_f64(params, "dim", 2.0)?;
    if dim.fract() != 0.0 || !(1.0..=64.0).contains(&dim) {
        return Err(Error::invalid("dim must be an integer in 1..=64"));
    }
    let dim = dim as usize;
    let half = C64::new(0.5, 0.0);
    let tuple = make_scaled_tuple(&Matrix::identity(dim), &[half, half], Exponent::Finite(1.0))?;
    let two = Exponent::Finite(2.0);
    let spec = ExampleSpec {
        name: "trivial_pair".into(),
        params: vec![("dim".into(), dim.to_string())],
        claims: vec![
            claim(1, Exponent::Finite(1.0), two, true),
            claim(2, Exponent::Finite(1.0), two, true),
            claim(1, two, two, false),
            claim(2, Exponent::Infinity, two, false),
        ],
        notes: "Two half-identities: sums of first powers preserve the norm for p = 1 \
                on any ambient norm, but each single operator contracts, so every \
                parity-based verdict fails."
            .into(),
    };
    Ok((tuple, spec))
}

fn diag_13(params: &BTreeMap<String, String>) -> Result<(OperatorTuple, ExampleSpec)> {
    reject_unknown_params(params, &[])?;
    let t1 = Matrix::from_real_rows(&[vec![0.5, 0.0], vec![0.0, 1.0 / 3.0]])?;
    let t2 = Matrix::from_real_rows(&[
        vec![7.0f64.cbrt() / 2.0, 0.0],
        vec![0.0, 26.0f64.cbrt() / 3.0],
    ])?;
    let tuple = OperatorTuple::new(vec![t1, t2])?;
    let three = Exponent::Finite(3.0);
    let spec = ExampleSpec {
        name: "diag_13".into(),
        params: vec![],
        claims: vec![
            claim(1, three, three, true),
            claim(2, three, three, true),
            claim(1, Exponent::Infinity, three, false),
        ],
        notes: "Diagonal pair tuned so |t_1|^3 + |t_2|^3 = 1 entrywise: an \
                l_3-spherical isometry on the 3-norm; neither operator alone is \
                isometric."
            .into(),
    };
    Ok((tuple, spec))
}

fn richter_22(params: &BTreeMap<String, String>) -> Result<(OperatorTuple, ExampleSpec)> {
    reject_unknown_params(params, &[])?;
    let w = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let one = Matrix::from_real_rows(&[vec![1.0]])?;
    let v = vec![one.clone(), one.scale(C64::new(-1.0, 0.0))];
    let tuple = make_richter_pair(&[w, w], &v, 1, 1)?;
    let two = Exponent::Finite(2.0);
    let spec = ExampleSpec {
        name: "richter_22".into(),
        params: vec![],
        claims: vec![
            claim(2, two, two, true),
            claim(3, two, two, true),
            claim(1, two, two, false),
        ],
        notes: "The 2x2 block pair with 1/sqrt(2) diagonals and off-diagonal blocks \
                +1/-1: the smallest strict (2,2)-isometric tuple."
            .into(),
    };
    Ok((tuple, spec))
}

fn isometry_nilpotent(params: &BTreeMap<String, String>) -> Result<(OperatorTuple, ExampleSpec)> {
    reject_unknown_params(params, &["a", "q"])?;
    let a = parse_param_f64(params, "a", 3.0)?;
    let q = match params.get("q") {
        None => Exponent::Finite(2.0),
        Some(raw) => Exponent::parse(raw)?,
    };
    let t1 = Matrix::from_real_rows(&[
        vec![0.0, 0.0, 1.0],
        vec![0.0, -1.0, 0.0],
        vec![1.0, 0.0, 0.0],
    ])?;
    let t2 = Matrix::from_real_rows(&[
        vec![0.0, 0.0, 0.0],
        vec![a, 0.0, -a],
        vec![0.0, 0.0, 0.0],
    ])?;
    let tuple = OperatorTuple::new(vec![t1, t2])?;
    let mut claims = Vec::new();
    if a == 0.0 {
        claims.push(claim(1, Exponent::Finite(2.0), q, true));
        claims.push(claim(1, Exponent::Infinity, q, true));
    } else {
        for p in [0.5, 1.0, 2.0, 3.0] {
            claims.push(claim(2, Exponent::Finite(p), q, true));
            claims.push(claim(1, Exponent::Finite(p), q, false));
        }
        claims.push(claim(2, Exponent::Infinity, q, true));
        claims.push(claim(1, Exponent::Infinity, q, false));
    }
    let spec = ExampleSpec {
        name: "isometry_nilpotent".into(),
        params: vec![("a".into(), a.to_string()), ("q".into(), q.to_string())],
        claims,
        notes: "A signed permutation (an isometry on every q-norm) paired with an \
                operator whose square vanishes: the probe sequence is affine in n, \
                so the pair is (2,p)-isometric for every positive p and (2,inf) too."
            .into(),
    };
    Ok((tuple, spec))
}

/// Load a gallery example by name with optional parameters.
pub fn load_example(
    name: &str,
    params: &BTreeMap<String, String>,
) -> Result<(OperatorTuple, ExampleSpec)> {
    match name {
        "trivial_pair" => trivial_pair(params),
        "diag_13" => diag_13(params),
        "richter_22" => richter_22(params),
        "isometry_nilpotent" => isometry_nilpotent(params),
        other => Err(Error::invalid(format!(
            "unknown example {other:?}; known names are {:?}",
            gallery_names()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::verify::{is_minfty_isometry, is_mp_isometry, VerifyOptions};
    use crate::linalg::norms::NormContext;

    fn quick_opts() -> VerifyOptions {
        VerifyOptions { samples: 16, ..VerifyOptions::default() }
    }

    fn no_params() -> BTreeMap<String, String> {
        BTreeMap::new()
    }

    #[test]
    fn every_example_reproduces_its_claims() {
        let opts = quick_opts();
        for name in gallery_names() {
            let (tuple, spec) = load_example(name, &no_params()).unwrap();
            for c in &spec.claims {
                let report = match c.p {
                    Exponent::Infinity => is_minfty_isometry(&tuple, c.q, c.m, &opts).unwrap(),
                    Exponent::Finite(_) => {
                        let ctx = NormContext::new(c.q, c.p);
                        is_mp_isometry(&tuple, &ctx, c.m, &opts).unwrap()
                    }
                };
                assert_eq!(
                    report.accepted(),
                    c.accept,
                    "{name}: claim m={} p={} q={} expected accept={}, residual {:.3e}",
                    c.m,
                    c.p,
                    c.q,
                    c.accept,
                    report.max_relative_residual
                );
            }
        }
    }

    #[test]
    fn richter_pair_matches_the_fixed_matrices() {
        let (tuple, _) = load_example("richter_22", &no_params()).unwrap();
        let w = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(tuple.len(), 2);
        assert!((tuple.op(0)[(0, 0)] - C64::new(w, 0.0)).norm() < 1e-15);
        assert!((tuple.op(0)[(0, 1)] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((tuple.op(1)[(0, 1)] - C64::new(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(tuple.op(0)[(1, 0)], C64::new(0.0, 0.0));
    }

    #[test]
    fn richter_constructor_rejects_bad_inputs() {
        let one = Matrix::from_real_rows(&[vec![1.0]]).unwrap();
        let w = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        // constraint sum is w, not zero
        let err = make_richter_pair(&[w, w], &[one.clone(), one.clone()], 1, 1).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)), "{err}");
        // scalar list not on the unit sphere
        let err = make_richter_pair(
            &[C64::new(1.0, 0.0), C64::new(1.0, 0.0)],
            &[one.clone(), one.scale(C64::new(-1.0, 0.0))],
            1,
            1,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)), "{err}");
    }

    #[test]
    fn richter_constructor_accepts_matrix_blocks() {
        let w = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let v1 = Matrix::from_real_rows(&[vec![1.0, 2.0], vec![-0.5, 0.25]]).unwrap();
        let v2 = v1.scale(C64::new(-1.0, 0.0));
        let tuple = make_richter_pair(&[w, w], &[v1, v2], 2, 2).unwrap();
        assert_eq!(tuple.dim(), 4);
        let report = is_mp_isometry(&tuple, &NormContext::euclidean(), 2, &quick_opts()).unwrap();
        assert!(report.accepted(), "residual {:.3e}", report.max_relative_residual);
    }

    #[test]
    fn scaled_tuple_checks_the_unit_sphere_condition() {
        let id = Matrix::identity(2);
        let half = C64::new(0.5, 0.0);
        assert!(make_scaled_tuple(&id, &[half, half], Exponent::Finite(1.0)).is_ok());
        assert!(make_scaled_tuple(&id, &[half, half], Exponent::Finite(2.0)).is_err());
        // inf variant: the largest scalar must have modulus one
        let s = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let z = [C64::new(1.0, 0.0), half];
        let tuple = make_scaled_tuple(&s, &z, Exponent::Infinity).unwrap();
        let report =
            is_minfty_isometry(&tuple, Exponent::Finite(2.0), 1, &quick_opts()).unwrap();
        assert!(report.accepted(), "residual {:.3e}", report.max_relative_residual);
    }

    #[test]
    fn nilpotent_example_with_a_zero_degenerates_gracefully() {
        let mut params = BTreeMap::new();
        params.insert("a".to_string(), "0".to_string());
        let (tuple, spec) = load_example("isometry_nilpotent", &params).unwrap();
        assert!(tuple.op(1).frobenius_norm() == 0.0);
        assert!(spec.claims.iter().all(|c| c.m == 1));
    }

    #[test]
    fn unknown_names_and_params_are_rejected() {
        assert!(load_example("nope", &no_params()).is_err());
        let mut params = BTreeMap::new();
        params.insert("banana".to_string(), "1".to_string());
        let err = load_example("richter_22", &params).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)), "{err}");
    }
}
