//! Structured channel families with known entropy behaviour: triangular 0/1
//! matrices whose rows define projective Kraus operators, interpolations
//! between two such matrices, a small registry of named channels, and the
//! product construction that pins the extremal corner points of the entropy
//! plane.

pub mod boundary;

use num_complex::Complex64;

use crate::channel::{xlnx, EntropyPoint, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Triangular 0/1 matrix encoding a channel built from basis-vector
/// relabelings.  Row `i` (0-indexed) has `n - i` entries; entry `(i, j)`
/// contributes the term `|j><j+i|` to Kraus operator `K_i`.  The matrix is
/// valid when every anti-diagonal carries exactly one 1, which makes the
/// resulting operators a resolution of the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LMatrix {
    n: usize,
    rows: Vec<Vec<u8>>,
}

impl LMatrix {
    /// Validates the triangular shape, the 0/1 alphabet, and the
    /// one-per-anti-diagonal sum rule.
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidL { context: "empty matrix".into() });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n - i {
                return Err(Error::InvalidL {
                    context: format!("row {i} has {} entries, expected {}", row.len(), n - i),
                });
            }
            if let Some(&bad) = row.iter().find(|&&v| v > 1) {
                return Err(Error::InvalidL {
                    context: format!("row {i} contains {bad}; entries must be 0 or 1"),
                });
            }
        }
        // Anti-diagonal k holds the entries with i + j = k inside the
        // triangle; exactly one of them may be set.
        for k in 0..n {
            let sum: u32 = (0..=k).map(|i| u32::from(rows[i][k - i])).sum();
            if sum != 1 {
                return Err(Error::InvalidL {
                    context: format!("anti-diagonal {k} sums to {sum}, expected 1"),
                });
            }
        }
        Ok(Self { n, rows })
    }

    /// Parses the compact semicolon form, e.g. `"101;10;0"` for n = 3.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<Vec<u8>> = text
            .split(';')
            .map(|row| {
                row.trim()
                    .chars()
                    .map(|ch| match ch {
                        '0' => Ok(0u8),
                        '1' => Ok(1u8),
                        other => Err(Error::InvalidL {
                            context: format!("unexpected character {other:?} in {text:?}"),
                        }),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::new(rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Entry `(i, j)` of the triangle, zero outside it.
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.rows.get(i).and_then(|row| row.get(j)).copied().unwrap_or(0)
    }

    /// The matrix with a full first row: the identity channel padded with
    /// `n - 1` zero operators, whose entropy point is `(0, ln n)`.
    pub fn identity_rows(n: usize) -> Self {
        let mut rows = vec![vec![1u8; n]];
        rows.extend((1..n).map(|i| vec![0u8; n - i]));
        Self { n, rows }
    }

    /// The matrix with a full first column: every anti-diagonal is satisfied
    /// by its leftmost slot, and the channel sends everything to `|0><0|`.
    pub fn emission(n: usize) -> Self {
        let rows = (0..n).map(|i| {
            let mut row = vec![0u8; n - i];
            row[0] = 1;
            row
        });
        Self { n, rows: rows.collect() }
    }

    /// The `n = 3` matrix `101;10;0`, a balanced interior channel whose
    /// entropy pair sits at `(ln 3 - (2/3) ln 2)` in both coordinates.
    pub fn phi4() -> Self {
        Self::new(vec![vec![1, 0, 1], vec![1, 0], vec![0]]).expect("hard-coded matrix is valid")
    }

    /// An `n = 4` matrix whose row and column sums are both `{2, 2, 0, 0}`,
    /// landing exactly on `(ln 2, ln 2)`.
    pub fn saturating_example() -> Self {
        Self::new(vec![vec![1, 0, 1, 0], vec![1, 0, 1], vec![0, 0], vec![0]])
            .expect("hard-coded matrix is valid")
    }

    /// Reflection across the main anti-diagonal: entry `(i, j)` moves to
    /// `(j, i)` of the transposed triangle.  The transposed matrix generates
    /// the complementary channel, so row sums and column sums swap roles.
    pub fn transpose(&self) -> Self {
        let rows = (0..self.n)
            .map(|i| (0..self.n - i).map(|j| self.get(j, i)).collect())
            .collect();
        Self { n: self.n, rows }
    }

    /// Row sums `d_i`; the non-zero eigenvalues of the channel's image of the
    /// maximally mixed state are `d_i / n`.
    pub fn row_sums(&self) -> Vec<u32> {
        self.rows.iter().map(|row| row.iter().map(|&v| u32::from(v)).sum()).collect()
    }

    /// Column sums of the triangle (column `j` has `n - j` slots).
    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.n)
            .map(|j| (0..self.n - j).map(|i| u32::from(self.get(i, j))).collect::<Vec<_>>().iter().sum())
            .collect()
    }

    /// Kraus operators: `K_i = sum_j L[i][j] |j><j+i|`.  Rows that are all
    /// zero become zero operators and are kept, so the channel always has
    /// `n` operators.
    pub fn to_channel(&self) -> KrausChannel {
        let n = self.n;
        let ops = (0..n)
            .map(|i| {
                let mut op = ComplexMatrix::zeros(n, n);
                for j in 0..n - i {
                    if self.rows[i][j] == 1 {
                        op[(j, j + i)] = Complex64::new(1.0, 0.0);
                    }
                }
                op
            })
            .collect();
        KrausChannel::new(ops).expect("validated triangle always yields well-formed operators")
    }

    /// Entropy pair straight from the combinatorics: with row sums `d_i`,
    /// `S = ln n - (1/n) sum_i d_i ln d_i`, and `S~` is the same expression
    /// over column sums.  Agrees with the eigendecomposition route exactly.
    pub fn entropy_point(&self) -> EntropyPoint {
        let n = self.n as f64;
        let from_sums = |sums: &[u32]| -> f64 {
            n.ln() - sums.iter().map(|&d| xlnx(f64::from(d))).sum::<f64>() / n
        };
        EntropyPoint {
            s: from_sums(&self.row_sums()),
            s_tilde: from_sums(&self.col_sums()),
            n: self.n,
            m: self.n,
            tag: String::new(),
        }
    }
}

/// Enumerates every valid matrix for a given `n` — one choice of slot per
/// anti-diagonal, hence `n!` of them.  Sizes beyond 8 are refused: the count
/// grows factorially and 8! = 40320 is already more than any caller needs.
pub fn enumerate_l_matrices(n: usize) -> Result<Vec<LMatrix>> {
    if n == 0 || n > 8 {
        return Err(Error::InvalidParameter {
            context: format!("enumeration supports 1 <= n <= 8, got {n}"),
        });
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u8>> = (0..n).map(|i| vec![0u8; n - i]).collect();
    fn fill(k: usize, n: usize, rows: &mut Vec<Vec<u8>>, out: &mut Vec<LMatrix>) {
        if k == n {
            out.push(LMatrix { n, rows: rows.clone() });
            return;
        }
        for i in 0..=k {
            rows[i][k - i] = 1;
            fill(k + 1, n, rows, out);
            rows[i][k - i] = 0;
        }
    }
    fill(0, n, &mut rows, &mut out);
    Ok(out)
}

/// Entrywise interpolation between two triangular 0/1 matrices: entry
/// `(i, j)` becomes `sqrt(x * L1[i][j] + (1 - x) * L2[i][j])`.  At `x = 0`
/// and `x = 1` the endpoints are reproduced exactly; in between the operators
/// stay a resolution of the identity because each anti-diagonal still sums
/// to one after squaring.
#[derive(Debug, Clone)]
pub struct AMatrix {
    n: usize,
    rows: Vec<Vec<f64>>,
}

impl AMatrix {
    /// Builds the interpolation `sqrt(x * l1 + (1 - x) * l2)`.
    pub fn interpolate(l1: &LMatrix, l2: &LMatrix, x: f64) -> Result<Self> {
        if l1.n() != l2.n() {
            return Err(Error::DimensionMismatch {
                context: format!("interpolating {}-row and {}-row matrices", l1.n(), l2.n()),
            });
        }
        if !(0.0..=1.0).contains(&x) || !x.is_finite() {
            return Err(Error::InvalidParameter {
                context: format!("interpolation parameter {x} outside [0, 1]"),
            });
        }
        let n = l1.n();
        let rows = (0..n)
            .map(|i| {
                (0..n - i)
                    .map(|j| {
                        (x * f64::from(l1.get(i, j)) + (1.0 - x) * f64::from(l2.get(i, j))).sqrt()
                    })
                    .collect()
            })
            .collect();
        Ok(Self { n, rows })
    }

    /// Wraps explicit nonnegative entries whose squares sum to one along
    /// every anti-diagonal.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidL { context: "empty matrix".into() });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n - i {
                return Err(Error::InvalidL {
                    context: format!("row {i} has {} entries, expected {}", row.len(), n - i),
                });
            }
            if row.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return Err(Error::InvalidL {
                    context: format!("row {i} has a negative or non-finite entry"),
                });
            }
        }
        for k in 0..n {
            let sum: f64 = (0..=k).map(|i| rows[i][k - i] * rows[i][k - i]).sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidL {
                    context: format!("anti-diagonal {k} squares sum to {sum:.12}, expected 1"),
                });
            }
        }
        Ok(Self { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.rows.get(i).and_then(|row| row.get(j)).copied().unwrap_or(0.0)
    }

    /// Kraus operators `K_i = sum_j A[i][j] |j><j+i|`, exactly as for the
    /// 0/1 triangles but with real amplitudes.
    pub fn to_channel(&self) -> KrausChannel {
        let n = self.n;
        let ops = (0..n)
            .map(|i| {
                let mut op = ComplexMatrix::zeros(n, n);
                for j in 0..n - i {
                    if self.rows[i][j] != 0.0 {
                        op[(j, j + i)] = Complex64::new(self.rows[i][j], 0.0);
                    }
                }
                op
            })
            .collect();
        KrausChannel::new(ops).expect("validated amplitudes always yield well-formed operators")
    }
}

/// Channel for one of a small set of well-known names, on an `n`-dimensional
/// input.  Recognized names: `identity`, `coarse-graining` (projection onto
/// the basis diagonal, landing at `(ln n, ln n)`), `emission`, and `phi4`
/// (the latter only at `n = 3`).
pub fn named_channel(name: &str, n: usize) -> Result<KrausChannel> {
    if n == 0 {
        return Err(Error::InvalidParameter { context: "dimension must be positive".into() });
    }
    match name {
        "identity" => Ok(KrausChannel::identity(n)),
        "coarse-graining" | "coarse_graining" => {
            let ops = (0..n)
                .map(|i| {
                    let mut op = ComplexMatrix::zeros(n, n);
                    op[(i, i)] = Complex64::new(1.0, 0.0);
                    op
                })
                .collect();
            Ok(KrausChannel::new(ops).expect("basis projectors are well-formed"))
        }
        "emission" => Ok(LMatrix::emission(n).to_channel()),
        "phi4" => {
            if n != 3 {
                return Err(Error::InvalidParameter {
                    context: format!("phi4 is a qutrit channel; got n = {n}"),
                });
            }
            Ok(LMatrix::phi4().to_channel())
        }
        other => Err(Error::UnknownName {
            name: other.into(),
            expected: "identity, coarse-graining, emission, phi4".into(),
        }),
    }
}

/// Two-operator qubit channel tracing the lower boundary of the entropy
/// plane: for `a` in `[0, 1/2]` it lands exactly on `(h(a), h(1/2 - a))`
/// where `h` is the binary-entropy-style function `-x ln x - (1-x) ln (1-x)`
/// evaluated at the pair `{a, 1 - a}` resp. `{1/2 - a, 1/2 + a}`.
pub fn qubit_extremal_channel(a: f64) -> Result<KrausChannel> {
    if !(0.0..=0.5).contains(&a) || !a.is_finite() {
        return Err(Error::InvalidParameter {
            context: format!("parameter {a} outside [0, 1/2]"),
        });
    }
    let x = 1.0 - 2.0 * a;
    let k1 = ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, x.sqrt()]]);
    let k2 = ComplexMatrix::from_real_rows(&[vec![0.0, (1.0 - x).sqrt()], vec![0.0, 0.0]]);
    Ok(KrausChannel::new(vec![k1, k2]).expect("fixed 2x2 shapes"))
}

/// Degradable-direction product channel built from any unitary `u` of
/// dimension `n_a * n_b`: Kraus operator `alpha` (of `n_b` many) keeps rows
/// `(alpha - 1) n_a .. alpha n_a` of `u`'s action, placed in the top `n_a`
/// rows.  Its entropy pair is `(ln n_b, ln n_a)` for every unitary, which
/// saturates the sum lower bound at `n = n_a * n_b`.
pub fn product_saturating_channel(n_a: usize, n_b: usize, u: &ComplexMatrix) -> Result<KrausChannel> {
    let n = n_a * n_b;
    if n_a == 0 || n_b == 0 {
        return Err(Error::InvalidParameter {
            context: "factor dimensions must be positive".into(),
        });
    }
    if u.rows() != n || u.cols() != n {
        return Err(Error::DimensionMismatch {
            context: format!("unitary is {}x{}, expected {n}x{n}", u.rows(), u.cols()),
        });
    }
    let dev = u.unitary_deviation();
    if dev > 1e-9 {
        return Err(Error::NotUnitary { deviation: dev });
    }
    let ops = (0..n_b)
        .map(|alpha| {
            ComplexMatrix::from_fn(n, n, |i, j| {
                if i < n_a {
                    u[(i + alpha * n_a, j)]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
        })
        .collect();
    KrausChannel::new(ops)
}
