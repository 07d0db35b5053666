//! Dense complex matrices with just enough linear algebra for channel work.
//!
//! Everything downstream operates on matrices of dimension at most a few
//! dozen (states up to 25x25, Choi matrices up to 81x81), so the solvers
//! favour transparency and reproducibility over asymptotic speed: Hermitian
//! eigenproblems go through cyclic Jacobi rotations, random unitaries come
//! from explicitly orthonormalized Gaussian matrices, and all randomness is
//! drawn from the in-repo [`RngStream`].

mod random;
mod rng;

pub use random::{gue_hamiltonian, haar_unitary, random_permutation, random_permutation_matrix};
pub use rng::RngStream;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative off-diagonal threshold at which Jacobi sweeps stop.
const JACOBI_RELATIVE_TOL: f64 = 1e-13;
/// Hard cap on Jacobi sweeps; convergence is quadratic and in practice takes
/// fewer than ten sweeps at the dimensions used here.
const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense complex matrix in row-major storage.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from complete rows; all rows must share one length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        assert!(!rows.is_empty(), "from_rows needs at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| rows[i][j])
    }

    /// Builds a matrix from real-valued rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        assert!(!rows.is_empty(), "from_real_rows needs at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| Complex64::new(rows[i][j], 0.0))
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

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * factor).collect() }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest magnitude among `A - A^dagger` entries; zero for Hermitian input.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(self.is_square(), "hermitian_deviation of a non-square matrix");
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermitian_deviation() <= tol
    }

    /// Largest magnitude among `U^dagger U - I` entries.
    pub fn unitary_deviation(&self) -> f64 {
        let gram = self.dagger().mul_mat(self);
        gram.max_abs_diff(&Self::identity(self.cols))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_square() && self.unitary_deviation() <= tol
    }

    pub fn mul_mat(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Kronecker product; entry `((i1,i2),(j1,j2))` is `self[i1,j1] * other[i2,j2]`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self[(i1, j1)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        out[(i1 * other.rows + i2, j1 * other.cols + j2)] = a * other[(i2, j2)];
                    }
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, other: &ComplexMatrix) -> ComplexMatrix {
        self.mul_mat(other)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Real eigenvalues of a Hermitian matrix, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

/// Eigenvalues of a Hermitian matrix via cyclic Jacobi rotations.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, tol: f64) -> Result<Spectrum> {
    Ok(jacobi(m, tol, false)?.0)
}

/// Eigenvalues and eigenvectors of a Hermitian matrix.
///
/// Returns `(spectrum, v)` with `m = v * diag(spectrum) * v^dagger`; column
/// `k` of `v` is the eigenvector of the `k`-th (descending) eigenvalue.
pub fn hermitian_eigen(m: &ComplexMatrix, tol: f64) -> Result<(Spectrum, ComplexMatrix)> {
    let (spectrum, v) = jacobi(m, tol, true)?;
    Ok((spectrum, v.expect("vectors requested")))
}

/// `exp(i t h)` for Hermitian `h`, through the eigendecomposition of `h`.
pub fn hermitian_exp_i(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let (spectrum, v) = hermitian_eigen(h, 1e-9)?;
    Ok(assemble_exp_i(&spectrum, &v, t))
}

/// Assembles `exp(i t h) = v * diag(exp(i t lambda)) * v^dagger` from an
/// existing eigendecomposition, so callers evolving over many times can
/// decompose once.
pub fn assemble_exp_i(spectrum: &Spectrum, v: &ComplexMatrix, t: f64) -> ComplexMatrix {
    let n = v.rows();
    let lambda = spectrum.values();
    // v * diag(phases)
    let scaled = ComplexMatrix::from_fn(n, n, |i, j| {
        v[(i, j)] * Complex64::from_polar(1.0, lambda[j] * t)
    });
    scaled.mul_mat(&v.dagger())
}

/// Cyclic complex Jacobi diagonalization.
///
/// Each rotation zeroes one off-diagonal pair `(p, q)` with a unitary that is
/// the identity outside those two rows and columns; sweeps repeat until the
/// off-diagonal Frobenius norm falls below `JACOBI_RELATIVE_TOL` times the
/// input norm.
fn jacobi(
    m: &ComplexMatrix,
    hermitian_tol: f64,
    want_vectors: bool,
) -> Result<(Spectrum, Option<ComplexMatrix>)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            context: format!("eigendecomposition needs a square matrix, got {}x{}", m.rows(), m.cols()),
        });
    }
    let deviation = m.hermitian_deviation();
    if deviation > hermitian_tol {
        return Err(Error::NotHermitian { deviation, tol: hermitian_tol });
    }

    let n = m.rows();
    if n == 0 {
        return Ok((Spectrum { eigenvalues: vec![] }, want_vectors.then(|| ComplexMatrix::zeros(0, 0))));
    }

    // Work on the Hermitian average so tiny asymmetries within tolerance do
    // not leak into the iteration.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));

    let threshold = JACOBI_RELATIVE_TOL * a.frobenius_norm();
    if threshold == 0.0 {
        // Zero matrix: already diagonal.
        return Ok((Spectrum { eigenvalues: vec![0.0; n] }, v));
    }

    let mut converged = false;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                // Phase that makes the pivot real, then a real Givens angle.
                let u = apq / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = 0.5 * (2.0 * r).atan2(aqq - app);
                let c = theta.cos();
                let s = theta.sin();
                rotate(&mut a, p, q, c, s, u, r);
                if let Some(v) = v.as_mut() {
                    rotate_columns(v, p, q, c, s, u);
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > threshold {
        return Err(Error::Numerical {
            context: format!(
                "Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps \
                 (off-diagonal norm {:.3e})",
                off_diagonal_norm(&a)
            ),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = v.map(|v| ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]));
    Ok((Spectrum { eigenvalues }, vectors))
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Applies the two-sided rotation `A <- R^dagger A R` where `R` is the
/// identity except `R[p][p] = c*u`, `R[p][q] = s*u`, `R[q][p] = -s`,
/// `R[q][q] = c`, with `u = A[p][q] / |A[p][q]|` and `r = |A[p][q]|`.
fn rotate(a: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, u: Complex64, r: f64) {
    let n = a.rows();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_kp = akp * (u * c) - akq * s;
        let new_kq = akp * (u * s) + akq * c;
        a[(k, p)] = new_kp;
        a[(k, q)] = new_kq;
        a[(p, k)] = new_kp.conj();
        a[(q, k)] = new_kq.conj();
    }
    let zero = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app * c * c - 2.0 * r * c * s + aqq * s * s, 0.0);
    a[(q, q)] = Complex64::new(app * s * s + 2.0 * r * c * s + aqq * c * c, 0.0);
    a[(p, q)] = zero;
    a[(q, p)] = zero;
}

/// Applies `V <- V R` (columns only), for eigenvector accumulation.
fn rotate_columns(v: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, u: Complex64) {
    let n = v.rows();
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * (u * c) - vkq * s;
        v[(k, q)] = vkp * (u * s) + vkq * c;
    }
}
