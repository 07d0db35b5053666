//! Quantum channels in Kraus form, their Choi states, complementary
//! channels, and the entropy functionals evaluated on them.
//!
//! A channel `Phi(rho) = sum_i K_i rho K_i^dagger` is stored as its list of
//! Kraus operators.  The number of operators `m` plays the role of an
//! environment dimension: exchanging rows of the stacked operators yields the
//! complementary channel into that environment.  The central scalar is the
//! map entropy — the von Neumann entropy of the Choi state — and the central
//! pair is the entropy point `(S, S~)` of a channel and its complement,
//! which this module evaluates through the images of the maximally mixed
//! state: the Choi spectrum of `Phi` equals the spectrum of
//! `Phi~(identity/N)`, turning an `N^2 x N^2` eigenproblem into an `m x m`
//! one.  Both routes are exposed so they can check each other.
//!
//! All entropies are natural-log; conversion to bits is left to callers.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, Spectrum};

/// Tolerance for Hermiticity and unit trace of density matrices.
const STATE_TOL: f64 = 1e-10;
/// Eigenvalues this far below zero (or above one) are clipped; anything worse
/// is reported as an invalid state instead of silently repaired.
const EIGENVALUE_CLIP: f64 = 1e-10;

/// `x ln x` with the continuous extension `0 ln 0 = 0`.
pub(crate) fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Unit-trace positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Wraps a matrix after checking Hermiticity and unit trace.  Positivity
    /// is enforced where eigenvalues are actually computed (see
    /// [`DensityMatrix::von_neumann_entropy`]).
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotAState {
                context: format!("matrix is {}x{}, not square", matrix.rows(), matrix.cols()),
            });
        }
        let dev = matrix.hermitian_deviation();
        if dev > STATE_TOL {
            return Err(Error::NotAState {
                context: format!("Hermiticity deviation {dev:.3e} exceeds {STATE_TOL:.0e}"),
            });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::NotAState {
                context: format!("trace {:.12} + {:.3e}i is not 1", tr.re, tr.im),
            });
        }
        Ok(Self { matrix })
    }

    /// The maximally mixed state `identity / n`.
    pub fn maximally_mixed(n: usize) -> Self {
        Self { matrix: ComplexMatrix::identity(n).scale_re(1.0 / n as f64) }
    }

    /// Projector onto basis vector `i` of an `n`-dimensional space.
    pub fn basis(n: usize, i: usize) -> Self {
        assert!(i < n, "basis index out of range");
        let mut m = ComplexMatrix::zeros(n, n);
        m[(i, i)] = Complex64::new(1.0, 0.0);
        Self { matrix: m }
    }

    /// Pure state from a normalized amplitude vector.
    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > STATE_TOL {
            return Err(Error::NotAState {
                context: format!("amplitude vector has norm^2 = {norm_sq:.12}"),
            });
        }
        let n = amplitudes.len();
        Ok(Self {
            matrix: ComplexMatrix::from_fn(n, n, |i, j| amplitudes[i] * amplitudes[j].conj()),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigenvalues, descending, clipped into `[0, 1]` when within
    /// `EIGENVALUE_CLIP` of the range and rejected otherwise.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        let spec = hermitian_eigenvalues(&self.matrix, STATE_TOL)?;
        let mut out = Vec::with_capacity(spec.len());
        for &lambda in spec.values() {
            if lambda < -EIGENVALUE_CLIP || lambda > 1.0 + EIGENVALUE_CLIP {
                return Err(Error::NotAState {
                    context: format!("eigenvalue {lambda:.6e} outside [0, 1]"),
                });
            }
            out.push(lambda.clamp(0.0, 1.0));
        }
        Ok(out)
    }

    /// Von Neumann entropy `-sum lambda ln lambda` in nats.
    pub fn von_neumann_entropy(&self) -> Result<f64> {
        Ok(self.spectrum()?.iter().map(|&l| -xlnx(l)).sum())
    }

    /// Linear entropy `1 - Tr(rho^2)`, in `[0, 1 - 1/dim]`.
    pub fn linear_entropy(&self) -> Result<f64> {
        // For Hermitian rho, Tr(rho^2) is the squared Frobenius norm.
        let purity = self.matrix.frobenius_norm().powi(2);
        Ok(1.0 - purity)
    }
}

/// The entropy pair of a channel and its complement, `S = S(Phi~(rho*))` and
/// `S~ = S(Phi(rho*))` with `rho*` maximally mixed; equivalently the map
/// entropies of the channel and of its complementary channel.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyPoint {
    pub s: f64,
    pub s_tilde: f64,
    /// Input dimension of the channel the point came from.
    pub n: usize,
    /// Number of Kraus operators (environment dimension).
    pub m: usize,
    /// Free-form provenance label, e.g. the sampler or curve-branch name.
    pub tag: String,
}

impl EntropyPoint {
    pub fn sum(&self) -> f64 {
        self.s + self.s_tilde
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = tag.into();
        self
    }
}

/// Quantum channel held as Kraus operators, each `dim_out x dim_in`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim_in: usize,
    dim_out: usize,
    operators: Vec<ComplexMatrix>,
}

impl KrausChannel {
    /// Wraps a non-empty list of equally shaped operators.  Trace
    /// preservation is a separate, tolerance-parameterized check
    /// ([`KrausChannel::validate`]).
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let first = operators.first().ok_or_else(|| Error::InvalidParameter {
            context: "a channel needs at least one Kraus operator".into(),
        })?;
        let (dim_out, dim_in) = (first.rows(), first.cols());
        if dim_in == 0 || dim_out == 0 {
            return Err(Error::InvalidParameter {
                context: "Kraus operators must have positive dimensions".into(),
            });
        }
        for (i, op) in operators.iter().enumerate() {
            if op.rows() != dim_out || op.cols() != dim_in {
                return Err(Error::DimensionMismatch {
                    context: format!(
                        "operator {i} is {}x{}, expected {}x{}",
                        op.rows(),
                        op.cols(),
                        dim_out,
                        dim_in
                    ),
                });
            }
        }
        Ok(Self { dim_in, dim_out, operators })
    }

    /// [`KrausChannel::new`] followed by [`KrausChannel::validate`].
    pub fn validated(operators: Vec<ComplexMatrix>, tol: f64) -> Result<Self> {
        let ch = Self::new(operators)?;
        ch.validate(tol)?;
        Ok(ch)
    }

    /// The identity channel on an `n`-dimensional system.
    pub fn identity(n: usize) -> Self {
        Self { dim_in: n, dim_out: n, operators: vec![ComplexMatrix::identity(n)] }
    }

    /// Single-Kraus channel `rho -> U rho U^dagger`.
    pub fn from_unitary(u: ComplexMatrix) -> Result<Self> {
        let dev = if u.is_square() { u.unitary_deviation() } else { f64::INFINITY };
        if dev > 1e-9 {
            return Err(Error::NotUnitary { deviation: dev });
        }
        Ok(Self { dim_in: u.cols(), dim_out: u.rows(), operators: vec![u] })
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    /// Number of Kraus operators; the environment dimension of the
    /// complementary channel.
    pub fn num_operators(&self) -> usize {
        self.operators.len()
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    /// Appends `extra` zero operators, enlarging the environment without
    /// changing the channel's action.
    pub fn with_zero_operators(mut self, extra: usize) -> Self {
        for _ in 0..extra {
            self.operators.push(ComplexMatrix::zeros(self.dim_out, self.dim_in));
        }
        self
    }

    /// Largest entry of `sum_i K_i^dagger K_i - identity`.
    pub fn identity_resolution_deviation(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim_in, self.dim_in);
        for op in &self.operators {
            sum = &sum + &op.dagger().mul_mat(op);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.dim_in))
    }

    /// Checks the identity resolution `sum_i K_i^dagger K_i = identity`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let deviation = self.identity_resolution_deviation();
        if deviation > tol {
            return Err(Error::NotTracePreserving { deviation, tol });
        }
        Ok(())
    }

    /// Applies the channel: `rho -> sum_i K_i rho K_i^dagger`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim_in {
            return Err(Error::DimensionMismatch {
                context: format!("state dim {} but channel input dim {}", rho.dim(), self.dim_in),
            });
        }
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for op in &self.operators {
            out = &out + &op.mul_mat(rho.matrix()).mul_mat(&op.dagger());
        }
        DensityMatrix::new(out)
    }

    /// Complementary channel into the environment spanned by the Kraus
    /// indices: operator `r` of the complement collects row `r` of every
    /// `K_i`, so `(K~_r)[i][j] = (K_i)[r][j]`.
    ///
    /// Zero operators produced by the row exchange are kept, which makes the
    /// construction an exact involution: `complementary(complementary(ch))`
    /// reproduces `ch` entry for entry.
    pub fn complementary(&self) -> Self {
        let m = self.num_operators();
        let operators: Vec<ComplexMatrix> = (0..self.dim_out)
            .map(|r| {
                ComplexMatrix::from_fn(m, self.dim_in, |i, j| self.operators[i][(r, j)])
            })
            .collect();
        Self { dim_in: self.dim_in, dim_out: m, operators }
    }

    /// Tensor product channel with Kraus set `{K_i kron L_j}`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut operators = Vec::with_capacity(self.operators.len() * other.operators.len());
        for a in &self.operators {
            for b in &other.operators {
                operators.push(a.kron(b));
            }
        }
        Self {
            dim_in: self.dim_in * other.dim_in,
            dim_out: self.dim_out * other.dim_out,
            operators,
        }
    }

    /// Choi state `(identity kron Phi)` applied to the maximally entangled
    /// state of the input space with itself: block `(mu, nu)` of the result
    /// is `Phi(|mu><nu|) / N` with `N = dim_in`.
    ///
    /// Defined for rectangular channels as well; the state then lives on a
    /// `dim_in * dim_out`-dimensional space.
    pub fn choi(&self) -> Result<ChoiState> {
        let n = self.dim_in;
        let d = self.dim_out;
        let scale = 1.0 / n as f64;
        let mut m = ComplexMatrix::zeros(n * d, n * d);
        for op in &self.operators {
            for mu in 0..n {
                for nu in 0..n {
                    for a in 0..d {
                        let left = op[(a, mu)];
                        if left.norm_sqr() == 0.0 {
                            continue;
                        }
                        for b in 0..d {
                            m[(mu * d + a, nu * d + b)] += left * op[(b, nu)].conj() * scale;
                        }
                    }
                }
            }
        }
        Ok(ChoiState { n_in: n, n_out: d, state: DensityMatrix::new(m)? })
    }

    /// Map entropy: von Neumann entropy of the Choi state.
    pub fn map_entropy(&self) -> Result<f64> {
        self.choi()?.state.von_neumann_entropy()
    }

    /// Map entropy through the complement's image of the maximally mixed
    /// state, `S(Phi~(identity/N))` — an `m x m` eigenproblem rather than the
    /// Choi route's `(N * dim_out)`-dimensional one.  Agreement of the two
    /// routes is a standing cross-check in the test suites.
    pub fn map_entropy_via_complement_image(&self) -> Result<f64> {
        self.complement_image_of_mixed()?.von_neumann_entropy()
    }

    fn complement_image_of_mixed(&self) -> Result<DensityMatrix> {
        self.complementary().apply(&DensityMatrix::maximally_mixed(self.dim_in))
    }

    /// The entropy pair `(S, S~)` of the channel and its complement.
    pub fn entropy_point(&self) -> Result<EntropyPoint> {
        let s = self.complement_image_of_mixed()?.von_neumann_entropy()?;
        let s_tilde = self.apply(&DensityMatrix::maximally_mixed(self.dim_in))?.von_neumann_entropy()?;
        Ok(EntropyPoint {
            s,
            s_tilde,
            n: self.dim_in,
            m: self.num_operators(),
            tag: String::new(),
        })
    }

    /// Coherent information at the maximally mixed input, `S~ - S`.
    pub fn coherent_information_at_mixed(&self) -> Result<f64> {
        let p = self.entropy_point()?;
        Ok(p.s_tilde - p.s)
    }
}

/// Choi state of a channel, kept with its block structure: an
/// `n_in x n_in` grid of `n_out x n_out` blocks.
#[derive(Debug, Clone)]
pub struct ChoiState {
    n_in: usize,
    n_out: usize,
    state: DensityMatrix,
}

impl ChoiState {
    pub fn dim(&self) -> usize {
        self.n_in * self.n_out
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    /// Block `(mu, nu)`, equal to `Phi(|mu><nu|) / n_in`.
    pub fn block(&self, mu: usize, nu: usize) -> ComplexMatrix {
        assert!(mu < self.n_in && nu < self.n_in, "block index out of range");
        let d = self.n_out;
        ComplexMatrix::from_fn(d, d, |a, b| self.state.matrix()[(mu * d + a, nu * d + b)])
    }

    /// Partial trace over the output factor; equals `identity / n_in` for any
    /// trace-preserving channel.
    pub fn reference_reduction(&self) -> ComplexMatrix {
        let d = self.n_out;
        ComplexMatrix::from_fn(self.n_in, self.n_in, |mu, nu| {
            (0..d).map(|a| self.state.matrix()[(mu * d + a, nu * d + a)]).sum()
        })
    }

    /// Eigenvalues of the Choi state, descending.
    pub fn spectrum(&self) -> Result<Spectrum> {
        hermitian_eigenvalues(self.state.matrix(), STATE_TOL)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{haar_unitary, RngStream};
    use crate::sampling::haar_block_channel;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const LN_2: f64 = std::f64::consts::LN_2;

    /// Qubit channel sending everything to |0><0|: K_1 = |0><0|, K_2 = |0><1|.
    fn emission_qubit() -> KrausChannel {
        let k1 = ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]);
        let k2 = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        KrausChannel::validated(vec![k1, k2], 1e-12).unwrap()
    }

    /// Dephasing-to-diagonal qubit channel: K_i = |i><i|.
    fn coarse_qubit() -> KrausChannel {
        let k1 = ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]);
        let k2 = ComplexMatrix::from_real_rows(&[vec![0.0, 0.0], vec![0.0, 1.0]]);
        KrausChannel::validated(vec![k1, k2], 1e-12).unwrap()
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::new(ComplexMatrix::identity(2)).is_err()); // trace 2
        assert!(DensityMatrix::new(ComplexMatrix::zeros(2, 3)).is_err());
        let ok = DensityMatrix::maximally_mixed(3);
        assert_eq!(ok.dim(), 3);
        let nonherm =
            ComplexMatrix::from_rows(&[vec![c(0.5, 0.0), c(0.1, 0.0)], vec![c(0.3, 0.0), c(0.5, 0.0)]]);
        assert!(matches!(DensityMatrix::new(nonherm), Err(Error::NotAState { .. })));
    }

    #[test]
    fn entropy_of_pure_and_mixed_states() {
        let pure = DensityMatrix::basis(4, 2);
        assert!(pure.von_neumann_entropy().unwrap().abs() < 1e-12);
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!((mixed.von_neumann_entropy().unwrap() - LN_2).abs() < 1e-12);
    }

    #[test]
    fn entropy_of_biased_diagonal_state() {
        // Oracle: -(1/4) ln(1/4) - (3/4) ln(3/4) = 2 ln 2 - (3/4) ln 3.
        let oracle = 2.0 * LN_2 - 0.75 * 3f64.ln();
        assert!((oracle - 0.5623351446188083).abs() < 1e-15);
        let rho = DensityMatrix::new(ComplexMatrix::from_real_rows(&[
            vec![0.25, 0.0],
            vec![0.0, 0.75],
        ]))
        .unwrap();
        assert!((rho.von_neumann_entropy().unwrap() - oracle).abs() < 1e-12);
    }

    #[test]
    fn entropy_rejects_badly_negative_spectra() {
        let m = ComplexMatrix::from_real_rows(&[vec![1.5, 0.0], vec![0.0, -0.5]]);
        let rho = DensityMatrix::new(m).unwrap(); // trace is fine
        assert!(matches!(rho.von_neumann_entropy(), Err(Error::NotAState { .. })));
    }

    #[test]
    fn linear_entropy_values() {
        assert!(DensityMatrix::basis(3, 0).linear_entropy().unwrap().abs() < 1e-12);
        let half = DensityMatrix::maximally_mixed(2).linear_entropy().unwrap();
        assert!((half - 0.5).abs() < 1e-12);
        let third = DensityMatrix::maximally_mixed(3).linear_entropy().unwrap();
        assert!((third - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn validate_catches_scaled_identity() {
        let half = ComplexMatrix::identity(2).scale_re(0.5);
        let ch = KrausChannel::new(vec![half]).unwrap();
        match ch.validate(1e-9) {
            Err(Error::NotTracePreserving { deviation, .. }) => {
                assert!((deviation - 0.75).abs() < 1e-12); // sum = I/4
            }
            other => panic!("expected NotTracePreserving, got {other:?}"),
        }
    }

    #[test]
    fn validate_accepts_proper_channels() {
        emission_qubit().validate(0.0).unwrap();
        KrausChannel::identity(3).validate(0.0).unwrap();
    }

    #[test]
    fn new_rejects_empty_and_ragged() {
        assert!(KrausChannel::new(vec![]).is_err());
        let ops = vec![ComplexMatrix::zeros(2, 2), ComplexMatrix::zeros(3, 2)];
        assert!(matches!(KrausChannel::new(ops), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn apply_identity_and_emission() {
        let rho = DensityMatrix::new(ComplexMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(0.0, 0.25)],
            vec![c(0.0, -0.25), c(0.5, 0.0)],
        ]))
        .unwrap();
        let id_out = KrausChannel::identity(2).apply(&rho).unwrap();
        assert!(id_out.matrix().max_abs_diff(rho.matrix()) < 1e-15);

        let out = emission_qubit().apply(&DensityMatrix::maximally_mixed(2)).unwrap();
        assert!(out.matrix().max_abs_diff(DensityMatrix::basis(2, 0).matrix()) < 1e-12);
    }

    #[test]
    fn apply_strips_coherences_in_coarse_graining() {
        let plus = DensityMatrix::pure(&[c(std::f64::consts::FRAC_1_SQRT_2, 0.0); 2]).unwrap();
        let out = coarse_qubit().apply(&plus).unwrap();
        assert!(out.matrix().max_abs_diff(DensityMatrix::maximally_mixed(2).matrix()) < 1e-12);
    }

    #[test]
    fn choi_of_identity_is_maximally_entangled() {
        let choi = KrausChannel::identity(2).choi().unwrap();
        let mut expected = ComplexMatrix::zeros(4, 4);
        for (i, j) in [(0usize, 0usize), (0, 3), (3, 0), (3, 3)] {
            expected[(i, j)] = c(0.5, 0.0);
        }
        assert!(choi.state().matrix().max_abs_diff(&expected) < 1e-15);
        assert!(choi.state().von_neumann_entropy().unwrap().abs() < 1e-9);
    }

    #[test]
    fn choi_of_coarse_graining_is_classically_correlated() {
        let choi = coarse_qubit().choi().unwrap();
        let mut expected = ComplexMatrix::zeros(4, 4);
        expected[(0, 0)] = c(0.5, 0.0);
        expected[(3, 3)] = c(0.5, 0.0);
        assert!(choi.state().matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn choi_reference_reduction_is_maximally_mixed() {
        let mut rng = RngStream::new(31);
        let ch = haar_block_channel(3, 2, &mut rng).unwrap();
        let red = ch.choi().unwrap().reference_reduction();
        assert!(red.max_abs_diff(&ComplexMatrix::identity(3).scale_re(1.0 / 3.0)) < 1e-9);
    }

    #[test]
    fn channel_reconstructs_from_choi_blocks() {
        let mut rng = RngStream::new(32);
        let ch = haar_block_channel(2, 3, &mut rng).unwrap();
        let choi = ch.choi().unwrap();
        let rho = DensityMatrix::new(ComplexMatrix::from_rows(&[
            vec![c(0.625, 0.0), c(0.1, -0.2)],
            vec![c(0.1, 0.2), c(0.375, 0.0)],
        ]))
        .unwrap();
        // Phi(rho) = N * sum_{mu,nu} rho[mu][nu] * block(mu, nu).
        let mut rebuilt = ComplexMatrix::zeros(2, 2);
        for mu in 0..2 {
            for nu in 0..2 {
                rebuilt = &rebuilt + &choi.block(mu, nu).scale(rho.matrix()[(mu, nu)] * 2.0);
            }
        }
        let direct = ch.apply(&rho).unwrap();
        assert!(rebuilt.max_abs_diff(direct.matrix()) < 1e-9);
    }

    #[test]
    fn complementary_of_emission_is_isometric_identity() {
        let comp = emission_qubit().complementary();
        assert_eq!(comp.num_operators(), 2);
        assert!(comp.operators()[0].max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
        assert_eq!(comp.operators()[1].max_abs(), 0.0);
        comp.validate(0.0).unwrap();
    }

    #[test]
    fn complementary_is_an_exact_involution() {
        let mut rng = RngStream::new(33);
        for (n, m) in [(2usize, 2usize), (3, 2), (2, 4)] {
            let ch = haar_block_channel(n, m, &mut rng).unwrap();
            let back = ch.complementary().complementary();
            assert_eq!(back.num_operators(), ch.num_operators());
            for (a, b) in back.operators().iter().zip(ch.operators()) {
                assert_eq!(a.max_abs_diff(b), 0.0, "involution is not exact");
            }
        }
    }

    #[test]
    fn unitary_channel_complement_image_is_pure() {
        let mut rng = RngStream::new(34);
        let u = haar_unitary(3, &mut rng).unwrap();
        let ch = KrausChannel::from_unitary(u).unwrap();
        let image = ch
            .complementary()
            .apply(&DensityMatrix::maximally_mixed(3))
            .unwrap();
        assert!(image.von_neumann_entropy().unwrap().abs() < 1e-10);
    }

    #[test]
    fn from_unitary_rejects_non_unitary() {
        let m = ComplexMatrix::identity(2).scale_re(0.9);
        assert!(matches!(KrausChannel::from_unitary(m), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn map_entropy_of_landmark_channels() {
        assert!(KrausChannel::identity(2).map_entropy().unwrap().abs() < 1e-9);
        assert!((emission_qubit().map_entropy().unwrap() - LN_2).abs() < 1e-9);
        assert!((coarse_qubit().map_entropy().unwrap() - LN_2).abs() < 1e-9);
    }

    #[test]
    fn entropy_point_of_landmark_channels() {
        let id = KrausChannel::identity(2).entropy_point().unwrap();
        assert!(id.s.abs() < 1e-12 && (id.s_tilde - LN_2).abs() < 1e-12);
        let em = emission_qubit().entropy_point().unwrap();
        assert!((em.s - LN_2).abs() < 1e-12 && em.s_tilde.abs() < 1e-12);
        let cg = coarse_qubit().entropy_point().unwrap();
        assert!((cg.s - LN_2).abs() < 1e-12 && (cg.s_tilde - LN_2).abs() < 1e-12);
        assert_eq!((cg.n, cg.m), (2, 2));
    }

    #[test]
    fn both_map_entropy_routes_agree_on_random_channels() {
        let mut rng = RngStream::new(35);
        for (n, m) in [(2usize, 2usize), (3, 3), (2, 4), (4, 2)] {
            let ch = haar_block_channel(n, m, &mut rng).unwrap();
            let slow = ch.map_entropy().unwrap();
            let fast = ch.map_entropy_via_complement_image().unwrap();
            assert!((slow - fast).abs() < 1e-9, "routes disagree at ({n},{m}): {slow} vs {fast}");
            // Mirrored form: map entropy of the complement vs the direct image.
            let slow_c = ch.complementary().map_entropy().unwrap();
            let fast_c = ch
                .apply(&DensityMatrix::maximally_mixed(n))
                .unwrap()
                .von_neumann_entropy()
                .unwrap();
            assert!((slow_c - fast_c).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_padding_changes_nothing_measurable() {
        let mut rng = RngStream::new(36);
        let ch = haar_block_channel(2, 2, &mut rng).unwrap();
        let base = ch.entropy_point().unwrap();
        let padded = ch.clone().with_zero_operators(2);
        padded.validate(1e-12).unwrap();
        assert_eq!(padded.num_operators(), 4);
        let p = padded.entropy_point().unwrap();
        assert!((p.s - base.s).abs() < 1e-12 && (p.s_tilde - base.s_tilde).abs() < 1e-12);
        assert!((padded.map_entropy().unwrap() - ch.map_entropy().unwrap()).abs() < 1e-9);
    }

    #[test]
    fn coherent_information_signs() {
        let mut rng = RngStream::new(37);
        let u = haar_unitary(2, &mut rng).unwrap();
        let unitary = KrausChannel::from_unitary(u).unwrap();
        assert!((unitary.coherent_information_at_mixed().unwrap() - LN_2).abs() < 1e-10);
        assert!((emission_qubit().coherent_information_at_mixed().unwrap() + LN_2).abs() < 1e-10);
        assert!(coarse_qubit().coherent_information_at_mixed().unwrap().abs() < 1e-10);
    }

    #[test]
    fn tensor_products_compose_dimensions_and_entropies() {
        let prod = emission_qubit().tensor(&KrausChannel::identity(2));
        assert_eq!((prod.dim_in(), prod.dim_out(), prod.num_operators()), (4, 4, 2));
        prod.validate(1e-12).unwrap();
        assert!((prod.map_entropy().unwrap() - LN_2).abs() < 1e-9);
    }

    #[test]
    fn tensor_additivity_on_random_channels() {
        let mut rng = RngStream::new(38);
        for _ in 0..10 {
            let a = haar_block_channel(2, 2, &mut rng).unwrap();
            let b = haar_block_channel(2, 2, &mut rng).unwrap();
            let joint = a.tensor(&b).map_entropy().unwrap();
            let split = a.map_entropy().unwrap() + b.map_entropy().unwrap();
            assert!((joint - split).abs() < 1e-8, "additivity broke: {joint} vs {split}");
        }
    }

    #[test]
    fn entropy_sum_and_range_bounds_hold_on_random_channels() {
        let mut rng = RngStream::new(39);
        for (n, m) in [(2usize, 2usize), (2, 3), (3, 3), (4, 2)] {
            for _ in 0..25 {
                let ch = haar_block_channel(n, m, &mut rng).unwrap();
                let p = ch.entropy_point().unwrap();
                let ln_n = (n as f64).ln();
                let ln_m = (m as f64).ln();
                assert!(p.sum() >= ln_n - 1e-9, "sum bound violated at ({n},{m}): {}", p.sum());
                assert!(p.s <= ln_m + 1e-9, "S exceeds ln m at ({n},{m})");
                assert!(p.s_tilde <= ln_n + 1e-9, "S~ exceeds ln n at ({n},{m})");
                assert!(p.s >= -1e-12 && p.s_tilde >= -1e-12);
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn complementary_involution_holds_for_any_seed(
                seed in any::<u64>(),
                n in 1usize..4,
                m in 1usize..4,
            ) {
                let mut rng = RngStream::new(seed);
                let ch = haar_block_channel(n, m, &mut rng).unwrap();
                let back = ch.complementary().complementary();
                for (a, b) in back.operators().iter().zip(ch.operators()) {
                    prop_assert_eq!(a.max_abs_diff(b), 0.0);
                }
            }

            #[test]
            fn entropy_points_respect_bounds_for_any_seed(
                seed in any::<u64>(),
                n in 1usize..4,
                m in 1usize..4,
            ) {
                let mut rng = RngStream::new(seed);
                let ch = haar_block_channel(n, m, &mut rng).unwrap();
                let p = ch.entropy_point().unwrap();
                prop_assert!(p.s >= -1e-12 && p.s <= (m as f64).ln() + 1e-9);
                prop_assert!(p.s_tilde >= -1e-12 && p.s_tilde <= (n as f64).ln() + 1e-9);
                prop_assert!(p.sum() >= (n as f64).ln() - 1e-9);
            }

            #[test]
            fn choi_reduction_is_uniform_for_any_seed(
                seed in any::<u64>(),
                n in 1usize..5,
                m in 1usize..4,
            ) {
                let mut rng = RngStream::new(seed);
                let ch = haar_block_channel(n, m, &mut rng).unwrap();
                let red = ch.choi().unwrap().reference_reduction();
                let target = ComplexMatrix::identity(n).scale_re(1.0 / n as f64);
                prop_assert!(red.max_abs_diff(&target) < 1e-9);
            }
        }
    }
}
