//! Dense complex matrices, row-major.
//!
//! Everything in this crate works on small dense matrices (operator tuples
//! on spaces of dimension up to a few dozen), so the implementation favours
//! clarity over blocking or SIMD. Entries are `Complex64`; real problems
//! embed with zero imaginary parts.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Dense `rows x cols` complex matrix, row-major storage.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = C64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Builds from nested rows; fails on ragged input or empty shape.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::invalid("matrix must have at least one row and column"));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("ragged rows in matrix literal"));
        }
        let data = rows.iter().flatten().copied().collect();
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    /// Real matrix literal, embedded with zero imaginary parts.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let lifted: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Matrix::from_rows(&lifted)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, x.len(), "matvec dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(C64::new(0.0, 0.0), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: C64) -> Matrix {
        let data = self.data.iter().map(|&a| a * s).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `self^k` by repeated multiplication; `k = 0` gives the identity.
    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square(), "pow requires a square matrix");
        let mut out = Matrix::identity(self.rows);
        for _ in 0..k {
            out = out.matmul(self);
        }
        out
    }

    /// Determinant via LU with partial pivoting.
    pub fn det(&self) -> C64 {
        assert!(self.is_square(), "det requires a square matrix");
        let n = self.rows;
        let mut lu = self.clone();
        let mut det = C64::new(1.0, 0.0);
        for k in 0..n {
            let (mut piv, mut best) = (k, lu[(k, k)].norm());
            for r in k + 1..n {
                let v = lu[(r, k)].norm();
                if v > best {
                    piv = r;
                    best = v;
                }
            }
            if best == 0.0 {
                return C64::new(0.0, 0.0);
            }
            if piv != k {
                for c in 0..n {
                    let tmp = lu[(k, c)];
                    lu[(k, c)] = lu[(piv, c)];
                    lu[(piv, c)] = tmp;
                }
                det = -det;
            }
            det *= lu[(k, k)];
            let inv = C64::new(1.0, 0.0) / lu[(k, k)];
            for r in k + 1..n {
                let factor = lu[(r, k)] * inv;
                for c in k..n {
                    let sub = factor * lu[(k, c)];
                    lu[(r, c)] -= sub;
                }
            }
        }
        det
    }
}

/// Euclidean inner product `<x, y> = sum conj(x_i) y_i`.
pub fn dot(x: &[C64], y: &[C64]) -> C64 {
    assert_eq!(x.len(), y.len());
    x.iter()
        .zip(y)
        .fold(C64::new(0.0, 0.0), |acc, (&a, &b)| acc + a.conj() * b)
}

pub fn vec_sub(x: &[C64], y: &[C64]) -> Vec<C64> {
    assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(&a, &b)| a - b).collect()
}

pub fn vec_add(x: &[C64], y: &[C64]) -> Vec<C64> {
    assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(&a, &b)| a + b).collect()
}

pub fn vec_scale(x: &[C64], s: C64) -> Vec<C64> {
    x.iter().map(|&a| a * s).collect()
}

/// Standard basis vector `e_i` (0-based) of length `n`.
pub fn basis_vector(n: usize, i: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); n];
    v[i] = C64::new(1.0, 0.0);
    v
}
