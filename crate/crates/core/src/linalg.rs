//! Small dense real linear algebra: just enough to build frame operators,
//! diagonalize them and apply their inverses.
//!
//! Matrices here are a few hundred rows at most, so everything is a plain
//! row-major `Vec<f64>` and the eigensolver is cyclic Jacobi.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{FrameError, Result};

/// Off-diagonal Frobenius norm, relative to `max(1, ‖S‖_F)`, at which Jacobi stops.
pub const JACOBI_TOLERANCE: f64 = 1e-14;
/// Hard cap on Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Relative asymmetry accepted by [`symmetric_eigen`].
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
/// Relative scale below which the smallest eigenvalue counts as zero.
pub const FRAME_TOLERANCE: f64 = 1e-10;

/// Threshold below which an eigenvalue is treated as zero, given the largest one.
pub fn frame_tolerance(lambda_max: f64) -> f64 {
    FRAME_TOLERANCE * lambda_max.max(1.0)
}

/// Dense row-major matrix of finite reals.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(FrameError::Empty);
        }
        if data.len() != rows * cols {
            return Err(FrameError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(FrameError::NonFinite(format!(
                "entry ({}, {})",
                pos / cols,
                pos % cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds a matrix from a slice of equally long rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map(Vec::len).unwrap_or(0);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(FrameError::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(FrameError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(l, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(FrameError::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    /// `self - other`, elementwise.
    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(FrameError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Frobenius norm of `self - selfᵀ`; zero for exactly symmetric input.
    pub fn asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self[(i, j)] - self[(j, i)];
                acc += d * d;
            }
        }
        acc.sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Eigen-decomposition `S = Q·diag(λ)·Qᵀ` of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `i` is the unit eigenvector for `eigenvalues[i]`.
    pub eigenvectors: Matrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `Q·diag(λ)·Qᵀ`.
    pub fn reconstruct(&self) -> Matrix {
        self.apply_function(|l| l)
    }

    /// `Q·diag(f(λ))·Qᵀ`.
    pub fn apply_function(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.dim();
        let q = &self.eigenvectors;
        let mut out = Matrix::zeros(n, n);
        for (k, &l) in self.eigenvalues.iter().enumerate() {
            let fl = f(l);
            for i in 0..n {
                let qik = q[(i, k)] * fl;
                for j in 0..n {
                    out[(i, j)] += qik * q[(j, k)];
                }
            }
        }
        out
    }

    /// Solves `S·y = x` through the spectrum, failing when `S` is numerically singular.
    pub fn apply_inverse(&self, x: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        if x.len() != n {
            return Err(FrameError::DimensionMismatch {
                expected: n,
                found: x.len(),
            });
        }
        let tolerance = frame_tolerance(self.max());
        if self.min() <= tolerance {
            return Err(FrameError::SingularOperator {
                lambda_min: self.min(),
                tolerance,
            });
        }
        let q = &self.eigenvectors;
        let mut y = vec![0.0; n];
        for (k, &l) in self.eigenvalues.iter().enumerate() {
            let coeff = (0..n).map(|i| q[(i, k)] * x[i]).sum::<f64>() / l;
            for (i, yi) in y.iter_mut().enumerate() {
                *yi += coeff * q[(i, k)];
            }
        }
        Ok(y)
    }
}

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Eigenvalues come back ascending (stable with respect to the rotation
/// order on ties) and each eigenvector is signed so that its first
/// non-negligible component is positive.
pub fn symmetric_eigen(s: &Matrix) -> Result<Spectrum> {
    if !s.is_square() {
        return Err(FrameError::NotSquare {
            rows: s.rows(),
            cols: s.cols(),
        });
    }
    let n = s.rows();
    let scale = s.frobenius_norm().max(1.0);
    let asymmetry = s.asymmetry();
    if asymmetry > SYMMETRY_TOLERANCE * scale {
        return Err(FrameError::NonSymmetric { asymmetry });
    }

    let mut a = s.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            let m = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = m;
            a[(j, i)] = m;
        }
    }
    let mut v = Matrix::identity(n);
    let threshold = JACOBI_TOLERANCE * scale;

    let mut converged = false;
    for _sweep in 0..=JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(FrameError::NoConvergence {
            iterations: JACOBI_MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));

    let eigenvalues = order.iter().map(|&i| a[(i, i)]).collect();
    let mut eigenvectors = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = v.column(src);
        let lead = col.iter().copied().find(|x| x.abs() > 1e-12).unwrap_or(0.0);
        if lead < 0.0 {
            col.iter_mut().for_each(|x| *x = -*x);
        }
        for (i, x) in col.into_iter().enumerate() {
            eigenvectors[(i, dst)] = x;
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)] * a[(i, j)];
            }
        }
    }
    acc.sqrt()
}

/// One Jacobi rotation annihilating `a[(p, q)]`; accumulates it into `v`.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let app = a[(p, p)];
    let aqq = a[(q, q)];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let n = a.rows();
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        let new_rp = c * arp - s * arq;
        let new_rq = s * arp + c * arq;
        a[(r, p)] = new_rp;
        a[(p, r)] = new_rp;
        a[(r, q)] = new_rq;
        a[(q, r)] = new_rq;
    }
    a[(p, p)] = app - t * apq;
    a[(q, q)] = aqq + t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;

    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = c * vrp - s * vrq;
        v[(r, q)] = s * vrp + c * vrq;
    }
}

/// Solves `S·y = x` for symmetric positive definite `S` via its eigendecomposition.
pub fn spd_apply_inverse(s: &Matrix, x: &[f64]) -> Result<Vec<f64>> {
    symmetric_eigen(s)?.apply_inverse(x)
}

/// Largest singular value of `m`.
pub fn operator_norm(m: &Matrix) -> Result<f64> {
    let mt = m.transpose();
    // The smaller Gram matrix carries the same nonzero spectrum.
    let gram = if m.rows() <= m.cols() {
        m.matmul(&mt)?
    } else {
        mt.matmul(m)?
    };
    let spectrum = symmetric_eigen(&gram)?;
    Ok(spectrum.max().max(0.0).sqrt())
}
