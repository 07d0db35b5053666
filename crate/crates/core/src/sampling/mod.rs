//! Random channel generation and entropy-plane surveys.
//!
//! Two sampling strategies live behind the [`ChannelSampler`] trait and a
//! name-keyed registry, so callers (notably the command line) pick one at
//! runtime: plain Haar-isometry sampling, which concentrates in the
//! high-entropy bulk, and stratified sampling over block-diagonal unitaries,
//! which reaches the sparse low-entropy fringe that plain sampling almost
//! never visits.
//!
//! The module also hosts the dynamical probe: starting from channels sitting
//! on the conjectured boundary, conjugate the stacked Kraus isometry by
//! `exp(i H t)` for random Hamiltonians `H` and watch whether any trajectory
//! dips below the boundary.

pub mod partitions;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::channel::{EntropyPoint, KrausChannel};
use crate::error::{Error, Result};
use crate::families::boundary::violation_depth;
use crate::families::{qubit_extremal_channel, AMatrix, LMatrix};
use crate::linalg::{gue_hamiltonian, haar_unitary, hermitian_eigen, random_permutation, ComplexMatrix, RngStream};

use partitions::{partitions, MAX_TOTAL};

/// Validation tolerance applied to every sampled or evolved channel.
const SAMPLE_TOL: f64 = 1e-9;

/// A named strategy for drawing random channels with `dim`-dimensional input
/// and output and `env` Kraus operators.
pub trait ChannelSampler: Send + Sync {
    /// Registry key and output tag for this strategy.
    fn name(&self) -> &'static str;

    /// Draws one channel from the strategy's distribution.
    fn sample(&self, dim: usize, env: usize, rng: &mut RngStream) -> Result<KrausChannel>;
}

/// Haar-random isometry sampling: `env * dim` rows of a Haar unitary, cut
/// into `env` stacked blocks of `dim` rows.
pub struct HaarBlockSampler;

impl ChannelSampler for HaarBlockSampler {
    fn name(&self) -> &'static str {
        "haar"
    }

    fn sample(&self, dim: usize, env: usize, rng: &mut RngStream) -> Result<KrausChannel> {
        haar_block_channel(dim, env, rng)
    }
}

/// Stratified sampling: first draw a uniformly random partition of
/// `dim * env`, then a block-diagonal Haar unitary with those block sizes,
/// scrambled by random row and column relabelings.
pub struct StratifiedSampler;

impl ChannelSampler for StratifiedSampler {
    fn name(&self) -> &'static str {
        "stratified"
    }

    fn sample(&self, dim: usize, env: usize, rng: &mut RngStream) -> Result<KrausChannel> {
        stratified_channel(dim, env, rng)
    }
}

static REGISTRY: &[(&str, fn() -> Box<dyn ChannelSampler>)] = &[
    ("haar", || Box::new(HaarBlockSampler)),
    ("stratified", || Box::new(StratifiedSampler)),
];

/// Looks a sampler up by name.  `haar_block` and `haar-block` are accepted
/// as aliases for `haar`.
pub fn sampler(name: &str) -> Result<Box<dyn ChannelSampler>> {
    let key = match name {
        "haar_block" | "haar-block" => "haar",
        other => other,
    };
    REGISTRY
        .iter()
        .find(|(n, _)| *n == key)
        .map(|(_, make)| make())
        .ok_or_else(|| Error::UnknownName {
            name: name.into(),
            expected: sampler_names().join(", "),
        })
}

/// The registered sampler names, in registry order.
pub fn sampler_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|(n, _)| *n).collect()
}

fn check_dims(dim: usize, env: usize) -> Result<()> {
    if dim == 0 || env == 0 {
        return Err(Error::InvalidParameter {
            context: format!("dimensions must be positive, got dim = {dim}, env = {env}"),
        });
    }
    Ok(())
}

/// Cuts the first `dim` columns of a `(dim * env)`-dimensional unitary into
/// `env` Kraus operators: operator `i` takes rows `i * dim .. (i + 1) * dim`.
fn channel_from_unitary_columns(w: &ComplexMatrix, dim: usize, env: usize) -> Result<KrausChannel> {
    let ops = (0..env)
        .map(|i| ComplexMatrix::from_fn(dim, dim, |a, j| w[(i * dim + a, j)]))
        .collect();
    let ch = KrausChannel::new(ops)?;
    ch.validate(SAMPLE_TOL)?;
    Ok(ch)
}

/// One channel from the Haar-isometry distribution.
pub fn haar_block_channel(dim: usize, env: usize, rng: &mut RngStream) -> Result<KrausChannel> {
    check_dims(dim, env)?;
    let w = haar_unitary(dim * env, rng)?;
    channel_from_unitary_columns(&w, dim, env)
}

/// One channel from a block-diagonal unitary with the given block sizes
/// (which must sum to `dim * env`), with rows and columns independently
/// relabeled at random.  The all-ones partition degenerates to monomial
/// unitaries and lands exactly on the integer-spectrum corner points.
pub fn block_unitary_channel(
    dim: usize,
    env: usize,
    parts: &[usize],
    rng: &mut RngStream,
) -> Result<KrausChannel> {
    check_dims(dim, env)?;
    let total = dim * env;
    if parts.iter().sum::<usize>() != total || parts.iter().any(|&p| p == 0) {
        return Err(Error::InvalidParameter {
            context: format!("block sizes {parts:?} do not partition {total}"),
        });
    }
    let mut blocks = ComplexMatrix::zeros(total, total);
    let mut offset = 0;
    for &p in parts {
        let u = haar_unitary(p, rng)?;
        for i in 0..p {
            for j in 0..p {
                blocks[(offset + i, offset + j)] = u[(i, j)];
            }
        }
        offset += p;
    }
    let row_perm = random_permutation(total, rng)?;
    let col_perm = random_permutation(total, rng)?;
    let w = ComplexMatrix::from_fn(total, total, |i, j| blocks[(row_perm[i], col_perm[j])]);
    channel_from_unitary_columns(&w, dim, env)
}

/// One channel from the stratified distribution: uniform over partitions of
/// `dim * env`, then [`block_unitary_channel`].
pub fn stratified_channel(dim: usize, env: usize, rng: &mut RngStream) -> Result<KrausChannel> {
    check_dims(dim, env)?;
    let total = dim * env;
    if total > MAX_TOTAL {
        return Err(Error::Unsupported {
            context: format!(
                "stratified sampling enumerates partitions up to {MAX_TOTAL}; dim * env = {total}"
            ),
        });
    }
    let table = partitions(total)?;
    let parts = &table[rng.next_index(table.len())];
    block_unitary_channel(dim, env, parts, rng)
}

/// A survey request: which strategy, what shape, how many, and from which
/// seed.
#[derive(Debug, Clone)]
pub struct SamplerConfig {
    pub dim: usize,
    pub env: usize,
    pub method: String,
    pub count: usize,
    pub seed: u64,
}

/// Draws `count` channels and returns their entropy points, tagged with the
/// sampler name.  Sample `i` uses substream `i` of the seed, so results are
/// reproducible, independent of thread count, and extendable (a longer
/// survey with the same seed begins with the same points).
pub fn survey(config: &SamplerConfig) -> Result<Vec<EntropyPoint>> {
    let strategy = sampler(&config.method)?;
    let root = RngStream::new(config.seed);
    (0..config.count)
        .into_par_iter()
        .map(|i| {
            let mut rng = root.substream(i as u64);
            let ch = strategy.sample(config.dim, config.env, &mut rng)?;
            Ok(ch.entropy_point()?.with_tag(strategy.name()))
        })
        .collect()
}

/// Stacks the Kraus operators into the `(env * dim_out) x dim_in` isometry
/// block column: row `i * dim_out + a` holds row `a` of operator `i`.
fn stack_operators(channel: &KrausChannel) -> ComplexMatrix {
    let (m, d_out, d_in) = (channel.num_operators(), channel.dim_out(), channel.dim_in());
    ComplexMatrix::from_fn(m * d_out, d_in, |r, j| channel.operators()[r / d_out][(r % d_out, j)])
}

fn unstack_operators(stacked: &ComplexMatrix, env: usize, d_out: usize) -> Vec<ComplexMatrix> {
    (0..env)
        .map(|i| ComplexMatrix::from_fn(d_out, stacked.cols(), |a, j| stacked[(i * d_out + a, j)]))
        .collect()
}

/// Evolves a channel along the unitary flow `B(t) = exp(i H t) B` on its
/// stacked isometry, returning the channel at each requested time.  `H` must
/// be Hermitian of dimension `num_operators * dim_out`.  The flow preserves
/// trace preservation exactly; each evolved channel is still validated.
pub fn evolve_channel(
    channel: &KrausChannel,
    hamiltonian: &ComplexMatrix,
    times: &[f64],
) -> Result<Vec<KrausChannel>> {
    let stacked_dim = channel.num_operators() * channel.dim_out();
    if hamiltonian.rows() != stacked_dim || hamiltonian.cols() != stacked_dim {
        return Err(Error::DimensionMismatch {
            context: format!(
                "Hamiltonian is {}x{}, expected {stacked_dim}x{stacked_dim}",
                hamiltonian.rows(),
                hamiltonian.cols()
            ),
        });
    }
    let (spectrum, v) = hermitian_eigen(hamiltonian, 1e-9)?;
    let b = stack_operators(channel);
    // exp(i H t) B = V diag(e^{i lambda t}) V^dagger B; precompute V^dagger B
    // once so each time step costs only thin-matrix work.
    let vtb = v.dagger().mul_mat(&b);
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let mut phased = vtb.clone();
        for (r, &lambda) in spectrum.values().iter().enumerate() {
            let phase = Complex64::from_polar(1.0, lambda * t);
            for c in 0..phased.cols() {
                phased[(r, c)] *= phase;
            }
        }
        let moved = v.mul_mat(&phased);
        let ch = KrausChannel::new(unstack_operators(&moved, channel.num_operators(), channel.dim_out()))?;
        ch.validate(SAMPLE_TOL)?;
        out.push(ch);
    }
    Ok(out)
}

/// One evolved start channel under one Hamiltonian: the entropy point at
/// each time, plus enough provenance to reproduce the run.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<EntropyPoint>,
    /// Seed of the probe that generated the Hamiltonian, if any.
    pub hamiltonian_seed: Option<u64>,
    pub hamiltonian_index: usize,
    /// Label of the start channel.
    pub start: String,
}

impl Trajectory {
    /// Largest violation depth along the trajectory (positive = below the
    /// boundary).
    pub fn max_violation(&self, n: usize) -> Result<f64> {
        let mut worst = f64::NEG_INFINITY;
        for p in &self.points {
            worst = worst.max(violation_depth(n, p.s, p.s_tilde)?);
        }
        Ok(worst)
    }
}

/// Start channels on (or at the corners of) the conjectured boundary for
/// input dimension `n`, labeled by branch and interpolation parameter.  All
/// starts have `n` Kraus operators and output dimension `n`, so one
/// `n^2`-dimensional Hamiltonian drives them all.
pub fn boundary_start_channels(n: usize) -> Result<Vec<(String, KrausChannel)>> {
    const GRID: [f64; 8] = [0.0, 0.02, 0.05, 0.1, 0.25, 0.5, 0.75, 1.0];
    let mut out: Vec<(String, KrausChannel)> = Vec::new();
    match n {
        2 => {
            for &a in &[0.0, 0.05, 0.125, 0.25, 0.375, 0.45, 0.5] {
                // Pad to two operators of output dimension 2 — already true.
                out.push((format!("curve:a={a}"), qubit_extremal_channel(a)?));
            }
        }
        3 => {
            let ident = LMatrix::identity_rows(3);
            let emit = LMatrix::emission(3);
            let sym = LMatrix::phi4();
            for &x in &GRID {
                out.push((
                    format!("curve:x={x}"),
                    AMatrix::interpolate(&ident, &sym, x)?.to_channel(),
                ));
                if x > 0.0 {
                    // x = 0 duplicates the symmetric channel already added.
                    out.push((
                        format!("mirror:x={x}"),
                        AMatrix::interpolate(&emit, &sym, x)?.to_channel(),
                    ));
                }
            }
        }
        4 => {
            let l1 = LMatrix::emission(4);
            let l2 =
                LMatrix::new(vec![vec![1, 0, 0, 0], vec![1, 0, 0], vec![1, 1], vec![0]]).unwrap();
            let l3 =
                LMatrix::new(vec![vec![1, 1, 0, 0], vec![0, 0, 0], vec![1, 1], vec![0]]).unwrap();
            for &x in &GRID {
                let on_mirror1 = AMatrix::interpolate(&l1, &l2, x)?.to_channel();
                let on_curve2 = AMatrix::interpolate(&l2, &l3, x)?.to_channel();
                // Each family walks one branch; its complement walks the
                // mirror image of that branch.
                out.push((format!("curve1:x={x}"), on_mirror1.complementary()));
                out.push((format!("mirror1:x={x}"), on_mirror1));
                out.push((format!("curve2:x={x}"), on_curve2.clone()));
                out.push((format!("mirror2:x={x}"), on_curve2.complementary()));
            }
        }
        _ => {
            return Err(Error::Unsupported {
                context: format!("boundary start channels are defined for n in {{2, 3, 4}}, got {n}"),
            })
        }
    }
    for (label, ch) in &out {
        debug_assert_eq!(ch.num_operators() * ch.dim_out(), n * n, "start {label}");
        ch.validate(SAMPLE_TOL)?;
    }
    Ok(out)
}

/// Outcome of a dynamical boundary probe.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub n: usize,
    pub hamiltonians: usize,
    pub start_count: usize,
    pub points_checked: usize,
    /// Largest violation depth seen anywhere (positive = below the
    /// boundary; a clearly negative value means no trajectory ever dipped).
    pub max_violation: f64,
    pub trajectories: Vec<Trajectory>,
}

/// Evolves every boundary start channel under `n_hamiltonians` random
/// Hamiltonians (one per substream of `seed`), recording entropy points at
/// the given times and the worst violation depth observed.
pub fn boundary_probe(
    n: usize,
    n_hamiltonians: usize,
    times: &[f64],
    seed: u64,
) -> Result<ProbeReport> {
    if n_hamiltonians == 0 || times.is_empty() {
        return Err(Error::InvalidParameter {
            context: "need at least one Hamiltonian and one time".into(),
        });
    }
    let starts = boundary_start_channels(n)?;
    let root = RngStream::new(seed);
    let per_hamiltonian: Vec<Vec<Trajectory>> = (0..n_hamiltonians)
        .into_par_iter()
        .map(|h| {
            let mut rng = root.substream(h as u64);
            let hamiltonian = gue_hamiltonian(n * n, &mut rng)?;
            starts
                .iter()
                .map(|(label, ch)| {
                    let evolved = evolve_channel(ch, &hamiltonian, times)?;
                    let points = evolved
                        .iter()
                        .map(|c| Ok(c.entropy_point()?.with_tag(label.clone())))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Trajectory {
                        times: times.to_vec(),
                        points,
                        hamiltonian_seed: Some(seed),
                        hamiltonian_index: h,
                        start: label.clone(),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let trajectories: Vec<Trajectory> = per_hamiltonian.into_iter().flatten().collect();
    let mut max_violation = f64::NEG_INFINITY;
    let mut points_checked = 0;
    for t in &trajectories {
        max_violation = max_violation.max(t.max_violation(n)?);
        points_checked += t.points.len();
    }
    Ok(ProbeReport {
        n,
        hamiltonians: n_hamiltonians,
        start_count: starts.len(),
        points_checked,
        max_violation,
        trajectories,
    })
}
