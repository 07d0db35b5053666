//! Numerics for the entropy plane of quantum channels.
//!
//! A channel in Kraus form and its complementary channel each carry an
//! entropy — the von Neumann entropy of the image of the maximally mixed
//! state, equivalently of the channel's Choi state — and together they place
//! the channel at a point `(S, S~)` in the plane.  This crate computes those
//! points and explores where they can lie:
//!
//! - [`linalg`]: dense complex matrices, a Jacobi Hermitian eigensolver,
//!   Haar-random unitaries, and a counter-based splittable RNG, with no
//!   external numerics dependencies.
//! - [`channel`]: density matrices, Kraus channels, Choi states,
//!   complementary channels, and the entropy functionals.
//! - [`families`]: structured channels with closed-form entropy points —
//!   triangular 0/1 matrices and their interpolations — plus the parametric
//!   lower-boundary curves for input dimensions 2, 3, and 4.
//! - [`sampling`]: random-channel strategies behind a name-keyed registry,
//!   deterministic parallel surveys, and a dynamical probe that drags
//!   boundary channels through unitary flows hunting for boundary
//!   violations.
//!
//! Entropies are in nats throughout; any conversion to bits happens at the
//! presentation layer.

pub mod channel;
pub mod error;
pub mod families;
pub mod linalg;
pub mod sampling;

pub use channel::{ChoiState, DensityMatrix, EntropyPoint, KrausChannel};
pub use error::{Error, Result};
pub use families::{
    enumerate_l_matrices, named_channel, product_saturating_channel, qubit_extremal_channel,
    AMatrix, LMatrix,
};
pub use linalg::{ComplexMatrix, RngStream};
pub use sampling::{
    boundary_probe, evolve_channel, sampler, sampler_names, survey, ChannelSampler, ProbeReport,
    SamplerConfig, Trajectory,
};
