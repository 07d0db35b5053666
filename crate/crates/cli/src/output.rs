//! Report schemas and formatting shared by the subcommands.
//!
//! Data goes to stdout, diagnostics to stderr.  CSV floats are printed with
//! twelve decimals so reruns are byte-identical; JSON reports rely on
//! serde's shortest-roundtrip float encoding, which is just as stable.

use serde::Serialize;

/// Entropy unit selected on the command line; nats internally, divided by
/// `ln 2` on the way out when bits were requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum LogBase {
    /// Natural logarithm: entropies in nats.
    E,
    /// Base-2 logarithm: entropies in bits.
    #[value(name = "2")]
    Two,
}

impl LogBase {
    pub fn convert(self, nats: f64) -> f64 {
        // An entropy of exactly zero often arrives as -0.0 (a sum of
        // negated zero terms); drop the sign before it reaches output.
        let nats = if nats == 0.0 { 0.0 } else { nats };
        match self {
            LogBase::E => nats,
            LogBase::Two => nats / std::f64::consts::LN_2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            LogBase::E => "e",
            LogBase::Two => "2",
        }
    }
}

/// CSV header for entropy-point listings.
pub const POINTS_HEADER: &str = "index,S,Stilde,tag";

/// Formats to twelve decimals, flushing values that would print as `-0` to
/// an honest zero.
fn fmt12(value: f64) -> String {
    let value = if value.abs() < 5e-13 { 0.0 } else { value };
    format!("{value:.12}")
}

/// One CSV row of an entropy-point listing.
pub fn point_row(index: usize, s: f64, s_tilde: f64, tag: &str) -> String {
    format!("{index},{},{},{tag}", fmt12(s), fmt12(s_tilde))
}

/// CSV header for trajectory listings.
pub const TRAJECTORY_HEADER: &str = "index,time,S,Stilde,tag";

/// One CSV row of a trajectory listing.
pub fn trajectory_row(index: usize, time: f64, s: f64, s_tilde: f64, tag: &str) -> String {
    format!("{index},{},{},{},{tag}", fmt12(time), fmt12(s), fmt12(s_tilde))
}

/// Tolerances a `verify` run judged against, echoed into the report so it
/// is self-describing.
#[derive(Debug, Serialize)]
pub struct Thresholds {
    /// Largest accepted deviation of `sum K_i^dagger K_i` from the identity.
    pub validity: f64,
    /// Largest accepted undershoot of `S + S~` below `ln dim_in`.
    pub entropy_sum: f64,
    /// Largest accepted gap between the two map-entropy routes.
    pub fast_path: f64,
    /// Largest accepted drift of a block-channel entropy sum off `ln n`.
    pub saturation: f64,
    /// Largest accepted dip below the lower boundary curve.
    pub boundary: f64,
}

/// One saturation check: channels built from an `n_a * n_b` unitary must
/// pin their entropy sum at `ln (n_a * n_b)` for every unitary drawn.
#[derive(Debug, Serialize)]
pub struct SaturationCheck {
    /// `[n_a, n_b]`, the two factors of the survey dimension.
    pub factors: [usize; 2],
    pub trials: usize,
    /// Largest observed `|S + S~ - ln (n_a * n_b)|`.
    pub max_sum_gap: f64,
}

/// Report printed by `verify`.  All entropy-valued fields are in nats.
#[derive(Debug, Serialize)]
pub struct VerifyReport {
    /// `survey` or `file`.
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dim_in: usize,
    pub dim_out: usize,
    pub kraus_operators: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Number of channels examined.
    pub checked: usize,
    pub thresholds: Thresholds,
    /// Largest deviation of `sum K_i^dagger K_i` from the identity seen on
    /// the validity subsample.
    pub validity_max_residual: f64,
    /// `ln dim_in`, the floor for `S + S~`.
    pub bound: f64,
    /// Smallest observed `S + S~`; below `bound` would breach the floor.
    pub min_sum: f64,
    /// Largest disagreement between the Choi-state entropy route and the
    /// complement-image route, over the cross-check subsample.
    pub fast_path_max_gap: f64,
    /// Block-channel saturation checks, one per factor pair of the survey
    /// dimension; empty for prime or file-supplied dimensions.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub saturation: Vec<SaturationCheck>,
    /// Whether a lower boundary curve exists for this shape and was checked.
    pub boundary_checked: bool,
    /// Largest violation depth against the boundary (positive = below the
    /// curve); absent when no boundary applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_violation_depth: Option<f64>,
    pub violations: usize,
}

/// Report printed by `channel`.
#[derive(Debug, Serialize)]
pub struct ChannelReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dim_in: usize,
    pub dim_out: usize,
    pub kraus_operators: usize,
    /// Largest deviation of `sum K_i^dagger K_i` from the identity.
    pub validity_residual: f64,
    /// `e` or `2`; applies to all entropy-valued fields.
    pub log_base: String,
    /// Map entropy of the channel.
    pub entropy: f64,
    /// Map entropy of the complementary channel.
    pub complement_entropy: f64,
    pub entropy_sum: f64,
    /// `complement_entropy - entropy`, the coherent information at the
    /// maximally mixed input.
    pub coherent_information: f64,
    /// Eigenvalues of the Choi state, descending.
    pub choi_spectrum: Vec<f64>,
}
