//! Random matrix ensembles: Haar-distributed unitaries, GUE Hamiltonians,
//! and uniform permutations, all driven by [`RngStream`].

use num_complex::Complex64;

use super::rng::RngStream;
use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Haar-distributed `n x n` unitary matrix.
///
/// A matrix of i.i.d. standard complex Gaussians is orthonormalized column by
/// column, and each column is then rotated by the phase of its diagonal
/// triangular-factor entry.  Fixing those phases selects the unique QR
/// factorization with a positive-real diagonal, which makes the distribution
/// exactly Haar rather than merely invariant on average.  A second
/// orthonormalization pass scrubs the `O(eps * cond)` orthogonality loss of
/// plain Gram-Schmidt without touching the distribution.
pub fn haar_unitary(n: usize, rng: &mut RngStream) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter { context: "haar_unitary needs n >= 1".into() });
    }
    let g = ComplexMatrix::from_fn(n, n, |_, _| rng.next_complex_normal());
    let (mut q, rdiag) = orthonormalize_columns(&g)?;
    for j in 0..n {
        let d = rdiag[j];
        let phase = d / d.norm();
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    let (q, _) = orthonormalize_columns(&q)?;
    Ok(q)
}

/// Modified Gram-Schmidt.  Returns the orthonormal column matrix together
/// with the diagonal of the triangular factor.
fn orthonormalize_columns(m: &ComplexMatrix) -> Result<(ComplexMatrix, Vec<Complex64>)> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut q = m.clone();
    let mut rdiag = Vec::with_capacity(cols);
    for j in 0..cols {
        for i in 0..j {
            // Project out the already-fixed direction i.
            let mut overlap = Complex64::new(0.0, 0.0);
            for k in 0..rows {
                overlap += q[(k, i)].conj() * q[(k, j)];
            }
            for k in 0..rows {
                let qki = q[(k, i)];
                q[(k, j)] -= overlap * qki;
            }
        }
        let norm = (0..rows).map(|k| q[(k, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Numerical {
                context: format!("rank-deficient matrix in orthonormalization at column {j}"),
            });
        }
        for k in 0..rows {
            q[(k, j)] /= norm;
        }
        rdiag.push(Complex64::new(norm, 0.0));
    }
    Ok((q, rdiag))
}

/// GUE-distributed Hermitian matrix: `H = (A + A^dagger) / 2` for `A` with
/// i.i.d. standard complex Gaussian entries, so off-diagonal entries are
/// complex Gaussian and the diagonal is real Gaussian.
pub fn gue_hamiltonian(n: usize, rng: &mut RngStream) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter { context: "gue_hamiltonian needs n >= 1".into() });
    }
    let a = ComplexMatrix::from_fn(n, n, |_, _| rng.next_complex_normal());
    Ok((&a + &a.dagger()).scale_re(0.5))
}

/// Uniform random permutation of `0..n` (Fisher-Yates with unbiased indices).
pub fn random_permutation(n: usize, rng: &mut RngStream) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::InvalidParameter { context: "random_permutation needs n >= 1".into() });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.next_index(i + 1);
        perm.swap(i, j);
    }
    Ok(perm)
}

/// Uniform random permutation matrix; row `i` has its single 1 in column
/// `perm[i]`.
pub fn random_permutation_matrix(n: usize, rng: &mut RngStream) -> Result<ComplexMatrix> {
    let perm = random_permutation(n, rng)?;
    let mut m = ComplexMatrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        m[(i, j)] = Complex64::new(1.0, 0.0);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_one_dimensional_is_a_phase() {
        let mut rng = RngStream::new(1);
        for _ in 0..32 {
            let u = haar_unitary(1, &mut rng).unwrap();
            assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn haar_unitarity_is_tight() {
        let mut rng = RngStream::new(2);
        for n in [2usize, 4, 9, 16, 25] {
            let u = haar_unitary(n, &mut rng).unwrap();
            assert!(u.unitary_deviation() < 1e-12, "n={n} deviation {}", u.unitary_deviation());
        }
    }

    #[test]
    fn haar_first_entry_second_moment() {
        // E |U_00|^2 = 1/n; for n = 2 the modulus-squared is uniform on [0,1].
        let mut rng = RngStream::new(3);
        let draws = 10_000;
        let mean = (0..draws)
            .map(|_| haar_unitary(2, &mut rng).unwrap()[(0, 0)].norm_sqr())
            .sum::<f64>()
            / draws as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn haar_rejects_zero_dimension() {
        let mut rng = RngStream::new(4);
        assert!(matches!(haar_unitary(0, &mut rng), Err(Error::InvalidParameter { .. })));
    }

    #[test]
    fn gue_is_exactly_hermitian() {
        let mut rng = RngStream::new(5);
        for n in [2usize, 3, 9] {
            let h = gue_hamiltonian(n, &mut rng).unwrap();
            assert_eq!(h.hermitian_deviation(), 0.0, "n={n}");
        }
    }

    #[test]
    fn gue_entry_mean_is_near_zero() {
        let mut rng = RngStream::new(6);
        let draws = 10_000;
        let mut sum = 0.0;
        for _ in 0..draws {
            let h = gue_hamiltonian(3, &mut rng).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    sum += h[(i, j)].re + h[(i, j)].im;
                }
            }
        }
        let mean = sum / (draws as f64 * 9.0);
        assert!(mean.abs() < 0.05, "mean {mean}");
    }

    #[test]
    fn permutation_matrix_shape() {
        let mut rng = RngStream::new(7);
        let m = random_permutation_matrix(1, &mut rng).unwrap();
        assert_eq!(m[(0, 0)].re, 1.0);
        let m = random_permutation_matrix(5, &mut rng).unwrap();
        assert!(m.is_unitary(0.0));
        for i in 0..5 {
            let row_ones = (0..5).filter(|&j| m[(i, j)].re == 1.0).count();
            assert_eq!(row_ones, 1);
        }
    }

    #[test]
    fn permutations_are_uniform() {
        let mut rng = RngStream::new(8);
        let mut counts = std::collections::HashMap::new();
        let draws = 60_000;
        for _ in 0..draws {
            let p = random_permutation(3, &mut rng).unwrap();
            *counts.entry(p).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 6);
        for (perm, count) in counts {
            let freq = count as f64 / draws as f64;
            assert!(
                (freq - 1.0 / 6.0).abs() < 0.01,
                "permutation {perm:?} frequency {freq} drifted from 1/6"
            );
        }
    }
}
