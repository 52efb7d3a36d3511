//! Complex Schur decomposition and quantities derived from it.
//!
//! The solver is a textbook single-shift QR iteration on the Householder
//! Hessenberg form, adequate and robust for the small dense matrices this
//! crate works with. It is fully deterministic: no randomness, and the
//! iteration order depends only on the input bits.

use crate::error::{Error, Result};
use crate::linalg::matrix::{Matrix, C64};

const EPS: f64 = f64::EPSILON;
/// QR sweeps allowed per matrix before declaring stagnation, scaled by n.
const MAX_SWEEPS_PER_DIM: usize = 60;
/// Every this many sweeps on the same trailing block an exceptional shift
/// is taken to break symmetric stalls.
const EXCEPTIONAL_EVERY: usize = 12;

/// Schur factorization A = U T U^* with U unitary and T upper triangular.
#[derive(Clone, Debug)]
pub struct Schur {
    pub u: Matrix,
    pub t: Matrix,
}

/// Complex Givens rotation: returns (c, s) with real c >= 0 such that
/// [[c, s], [-conj(s), c]] * [a; b] = [r; 0].
fn givens(a: C64, b: C64) -> (f64, C64) {
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    let an = a.norm();
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let t = an.hypot(bn);
    (an / t, (a / an) * (b.conj() / t))
}

/// Applies the rotation to rows (i, i+1), columns `from..`.
fn rotate_rows(m: &mut Matrix, i: usize, c: f64, s: C64, from: usize) {
    let n = m.cols();
    for col in from..n {
        let top = m[(i, col)];
        let bot = m[(i + 1, col)];
        m[(i, col)] = c * top + s * bot;
        m[(i + 1, col)] = -s.conj() * top + c * bot;
    }
}

/// Applies the adjoint rotation to columns (i, i+1), rows `0..=until`.
fn rotate_cols(m: &mut Matrix, i: usize, c: f64, s: C64, until: usize) {
    for row in 0..=until {
        let left = m[(row, i)];
        let right = m[(row, i + 1)];
        m[(row, i)] = c * left + s.conj() * right;
        m[(row, i + 1)] = -s * left + c * right;
    }
}

/// Householder reduction to upper Hessenberg form, A = Q H Q^*.
fn hessenberg(a: &Matrix) -> (Matrix, Matrix) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = Matrix::identity(n);
    if n < 3 {
        return (q, h);
    }
    let scale = h.frobenius_norm().max(1.0);
    for k in 0..n - 2 {
        let mut x: Vec<C64> = (k + 1..n).map(|r| h[(r, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm <= EPS * scale {
            continue;
        }
        let phase = if x[0].norm() == 0.0 { C64::new(1.0, 0.0) } else { x[0] / x[0].norm() };
        let alpha = -phase * xnorm;
        x[0] -= alpha;
        let vnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm <= EPS * scale {
            continue;
        }
        for z in &mut x {
            *z /= vnorm;
        }
        // h <- P h with P = I - 2 v v^*, v supported on rows k+1..n
        for col in k..n {
            let mut proj = C64::new(0.0, 0.0);
            for (t, v) in x.iter().enumerate() {
                proj += v.conj() * h[(k + 1 + t, col)];
            }
            proj *= 2.0;
            for (t, v) in x.iter().enumerate() {
                let sub = proj * v;
                h[(k + 1 + t, col)] -= sub;
            }
        }
        // h <- h P, columns k+1..n
        for row in 0..n {
            let mut proj = C64::new(0.0, 0.0);
            for (t, v) in x.iter().enumerate() {
                proj += h[(row, k + 1 + t)] * *v;
            }
            proj *= 2.0;
            for (t, v) in x.iter().enumerate() {
                let sub = proj * v.conj();
                h[(row, k + 1 + t)] -= sub;
            }
        }
        // q <- q P
        for row in 0..n {
            let mut proj = C64::new(0.0, 0.0);
            for (t, v) in x.iter().enumerate() {
                proj += q[(row, k + 1 + t)] * *v;
            }
            proj *= 2.0;
            for (t, v) in x.iter().enumerate() {
                let sub = proj * v.conj();
                q[(row, k + 1 + t)] -= sub;
            }
        }
        // the reflector zeroes these by construction
        for r in k + 2..n {
            h[(r, k)] = C64::new(0.0, 0.0);
        }
    }
    (q, h)
}

/// Wilkinson shift: the eigenvalue of the trailing 2x2 block closest to
/// the bottom-right entry.
fn wilkinson_shift(h: &Matrix, hi: usize) -> C64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mu1 = (a + d) * 0.5 + disc;
    let mu2 = (a + d) * 0.5 - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// Schur decomposition by shifted QR on the Hessenberg form.
///
/// Fails with a degeneracy error if the iteration does not deflate within
/// the sweep budget.
pub fn schur(a: &Matrix) -> Result<Schur> {
    if !a.is_square() {
        return Err(Error::invalid("Schur decomposition requires a square matrix"));
    }
    if !a.is_finite() {
        return Err(Error::invalid("Schur decomposition requires finite entries"));
    }
    let n = a.rows();
    let (mut u, mut h) = hessenberg(a);
    if n <= 1 {
        return Ok(Schur { u, t: h });
    }
    let hnorm = h.frobenius_norm().max(EPS);
    let negligible = |h: &Matrix, i: usize| -> bool {
        let local = h[(i - 1, i - 1)].norm() + h[(i, i)].norm();
        let thresh = if local > 0.0 { EPS * local } else { EPS * hnorm };
        h[(i, i - 1)].norm() <= thresh
    };

    let budget = MAX_SWEEPS_PER_DIM * n;
    let mut sweeps = 0usize;
    let mut stuck = 0usize;
    let mut hi = n - 1;
    loop {
        // deflate converged trailing entries
        while hi > 0 && negligible(&h, hi) {
            h[(hi, hi - 1)] = C64::new(0.0, 0.0);
            hi -= 1;
            stuck = 0;
        }
        if hi == 0 {
            break;
        }
        // active block [lo, hi]
        let mut lo = hi;
        while lo > 0 && !negligible(&h, lo) {
            lo -= 1;
        }
        if lo > 0 {
            h[(lo, lo - 1)] = C64::new(0.0, 0.0);
        }

        sweeps += 1;
        stuck += 1;
        if sweeps > budget {
            return Err(Error::degenerate(format!(
                "QR iteration did not converge within {budget} sweeps"
            )));
        }
        let shift = if stuck % EXCEPTIONAL_EVERY == 0 {
            // deterministic kick off a stalled orbit
            let off = h[(hi, hi - 1)].norm();
            h[(hi, hi)] + C64::new(1.5 * off, 0.75 * off)
        } else {
            wilkinson_shift(&h, hi)
        };

        for i in lo..=hi {
            h[(i, i)] -= shift;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            let (c, s) = givens(h[(i, i)], h[(i + 1, i)]);
            rotate_rows(&mut h, i, c, s, lo);
            h[(i + 1, i)] = C64::new(0.0, 0.0);
            rotations.push((c, s));
        }
        for (idx, &(c, s)) in rotations.iter().enumerate() {
            let i = lo + idx;
            rotate_cols(&mut h, i, c, s, (i + 1).min(n - 1));
            rotate_cols(&mut u, i, c, s, n - 1);
        }
        for i in lo..=hi {
            h[(i, i)] += shift;
        }
    }
    // everything below the diagonal is structurally zero by now
    for r in 1..n {
        for c in 0..r {
            h[(r, c)] = C64::new(0.0, 0.0);
        }
    }
    Ok(Schur { u, t: h })
}

/// Eigenvalues in Schur order.
pub fn eigenvalues(a: &Matrix) -> Result<Vec<C64>> {
    let s = schur(a)?;
    Ok((0..a.rows()).map(|i| s.t[(i, i)]).collect())
}

/// Largest eigenvalue modulus.
pub fn spectral_radius(a: &Matrix) -> Result<f64> {
    Ok(eigenvalues(a)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues
/// and an orthonormal eigenvector basis (columns). The input is
/// symmetrized first, so slightly non-Hermitian inputs are tolerated.
pub fn hermitian_eigen(a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    if !a.is_square() {
        return Err(Error::invalid("hermitian_eigen requires a square matrix"));
    }
    let sym = a.add(&a.adjoint()).scale(C64::new(0.5, 0.0));
    let s = schur(&sym)?;
    let n = sym.rows();
    let mut order: Vec<usize> = (0..n).collect();
    let vals: Vec<f64> = (0..n).map(|i| s.t[(i, i)].re).collect();
    order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap_or(std::cmp::Ordering::Equal));
    let sorted_vals: Vec<f64> = order.iter().map(|&i| vals[i]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, new_col)] = s.u[(r, old_col)];
        }
    }
    Ok((sorted_vals, vectors))
}

/// Operator norm for the Euclidean ambient norm: the largest singular
/// value, computed as the square root of the top eigenvalue of A^* A.
pub fn operator_norm_2(a: &Matrix) -> Result<f64> {
    let gram = a.adjoint().matmul(a);
    let (vals, _) = hermitian_eigen(&gram)?;
    Ok(vals.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_matrix(n: usize, seed: u64) -> Matrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Matrix::from_fn(n, n, |_, _| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
    }

    fn unitary_defect(u: &Matrix) -> f64 {
        u.adjoint().matmul(u).sub(&Matrix::identity(u.rows())).max_abs()
    }

    #[test]
    fn schur_reconstructs_random_matrices() {
        for seed in 1..=8u64 {
            let a = random_matrix(5, seed);
            let s = schur(&a).unwrap();
            let recon = s.u.matmul(&s.t).matmul(&s.u.adjoint());
            let rel = recon.sub(&a).frobenius_norm() / a.frobenius_norm();
            assert!(rel < 1e-12, "seed {seed}: reconstruction residual {rel:.3e}");
            assert!(unitary_defect(&s.u) < 1e-12, "seed {seed}");
            for r in 1..5 {
                for col in 0..r {
                    assert_eq!(s.t[(r, col)], c(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn eigenvalues_match_trace_and_det() {
        for seed in 11..=16u64 {
            let a = random_matrix(6, seed);
            let eigs = eigenvalues(&a).unwrap();
            let trace: C64 = (0..6).map(|i| a[(i, i)]).sum();
            let esum: C64 = eigs.iter().sum();
            assert!((trace - esum).norm() < 1e-10, "seed {seed}");
            let eprod = eigs.iter().fold(c(1.0, 0.0), |acc, &z| acc * z);
            let det = a.det();
            assert!(
                (eprod - det).norm() <= 1e-8 * det.norm().max(1.0),
                "seed {seed}: {eprod:?} vs {det:?}"
            );
        }
    }

    #[test]
    fn triangular_input_deflates_to_its_diagonal() {
        let a = Matrix::from_rows(&[
            vec![c(0.5, 0.5), c(3.0, -1.0), c(0.0, 2.0)],
            vec![c(0.0, 0.0), c(-0.25, 0.0), c(1.0, 1.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(2.0, -2.0)],
        ])
        .unwrap();
        let eigs = eigenvalues(&a).unwrap();
        let mut mods: Vec<f64> = eigs.iter().map(|z| z.norm()).collect();
        mods.sort_by(f64::total_cmp);
        let mut expect = vec![c(0.5, 0.5).norm(), 0.25, c(2.0, -2.0).norm()];
        expect.sort_by(f64::total_cmp);
        for (a, b) in mods.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn jordan_block_and_rotation_radii() {
        let nil = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(spectral_radius(&nil).unwrap(), 0.0);
        let rot = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        assert!((spectral_radius(&rot).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn repeated_defective_eigenvalue_converges() {
        // similarity-rotated Jordan block: double eigenvalue 1, defective
        let j = Matrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let q = Matrix::from_real_rows(&[vec![s, s], vec![-s, s]]).unwrap();
        let a = q.matmul(&j).matmul(&q.adjoint());
        let sch = schur(&a).unwrap();
        let recon = sch.u.matmul(&sch.t).matmul(&sch.u.adjoint());
        assert!(recon.sub(&a).frobenius_norm() < 1e-12);
        // defective pair splits by about sqrt(eps); both stay near 1
        for i in 0..2 {
            assert!((sch.t[(i, i)] - c(1.0, 0.0)).norm() < 1e-7);
        }
    }

    #[test]
    fn hermitian_eigen_sorted_with_orthonormal_basis() {
        for seed in 21..=25u64 {
            let b = random_matrix(5, seed);
            let a = b.add(&b.adjoint()).scale(c(0.5, 0.0));
            let (vals, u) = hermitian_eigen(&a).unwrap();
            assert!(vals.windows(2).all(|w| w[0] <= w[1]));
            assert!(unitary_defect(&u) < 1e-12);
            // A u_i = lambda_i u_i
            for i in 0..5 {
                let col: Vec<C64> = (0..5).map(|r| u[(r, i)]).collect();
                let av = a.matvec(&col);
                let worst = av
                    .iter()
                    .zip(&col)
                    .map(|(&l, &r)| (l - r * vals[i]).norm())
                    .fold(0.0, f64::max);
                assert!(worst < 1e-11, "seed {seed} eigenpair {i}: {worst:.2e}");
            }
        }
    }

    #[test]
    fn operator_norm_known_values() {
        let d = Matrix::from_rows(&[vec![c(3.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, -4.0)]])
            .unwrap();
        assert!((operator_norm_2(&d).unwrap() - 4.0).abs() < 1e-12);
        let shear = Matrix::from_real_rows(&[vec![0.0, 2.0], vec![0.0, 0.0]]).unwrap();
        assert!((operator_norm_2(&shear).unwrap() - 2.0).abs() < 1e-12);
        let one = Matrix::identity(4);
        assert!((operator_norm_2(&one).unwrap() - 1.0).abs() < 1e-12);
    }
}
