//! `mapent` — command-line front end for the entropy-plane toolkit.
//!
//! Subcommands:
//!
//! * `sample`   — draw random channels, print `(S, S~)` pairs as CSV
//! * `boundary` — print the lower boundary curves of the entropy plane
//! * `verify`   — check identities and bounds, print a JSON report
//! * `evolve`   — evolve channels under random Hamiltonians, print
//!   trajectories as CSV
//! * `channel`  — describe one channel (file, built-in, or 0/1 pattern)
//!
//! Exit codes: `0` success, `1` a `verify` run found violations, `2` usage
//! or input errors.  Data goes to stdout, diagnostics to stderr.  Reruns
//! with the same arguments produce byte-identical output.

mod chanfile;
mod output;

use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand};

use mapent_core::families::boundary::{boundary_curves, violation_depth};
use mapent_core::linalg::gue_hamiltonian;
use mapent_core::{
    boundary_probe, evolve_channel, named_channel, sampler, sampler_names, survey, LMatrix,
    RngStream, SamplerConfig,
};

use output::{ChannelReport, LogBase, VerifyReport};

/// Largest accepted deviation of `sum K_i^dagger K_i` from the identity;
/// channel files beyond it are rejected at load.
const VALIDITY_THRESHOLD: f64 = 1e-9;

/// Largest accepted undershoot of `S + S~` below `ln dim_in`.
const SUM_THRESHOLD: f64 = 1e-9;

/// Largest accepted gap between the two map-entropy routes.
const FAST_PATH_THRESHOLD: f64 = 1e-9;

/// Largest accepted drift of a block-channel entropy sum off `ln n`.
const SATURATION_THRESHOLD: f64 = 1e-9;

/// Boundary-violation depth beyond which a point counts as a violation.
/// Looser than the identity tolerances: the curve query itself carries a
/// deliberate conservative bias near its steep corners.
const VIOLATION_THRESHOLD: f64 = 1e-6;

fn thresholds() -> output::Thresholds {
    output::Thresholds {
        validity: VALIDITY_THRESHOLD,
        entropy_sum: SUM_THRESHOLD,
        fast_path: FAST_PATH_THRESHOLD,
        saturation: SATURATION_THRESHOLD,
        boundary: VIOLATION_THRESHOLD,
    }
}

#[derive(Parser)]
#[command(
    name = "mapent",
    version,
    about = "Entropy-plane numerics for quantum channels",
    long_about = "Numerics for the map entropy S of a quantum channel and the entropy S~ of \
                  its complementary channel: random surveys of the (S, S~) plane, its lower \
                  boundary curves, spot checks of exact identities, and unitary evolutions \
                  of the Kraus isometry."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw random channels and print their entropy pairs as CSV
    Sample(SampleArgs),
    /// Print the lower boundary curves of the entropy plane as CSV
    Boundary(BoundaryArgs),
    /// Check entropy identities and bounds; print a JSON report
    Verify(VerifyArgs),
    /// Evolve channels under random Hamiltonians; print trajectories as CSV
    Evolve(EvolveArgs),
    /// Describe a single channel; print a JSON report
    Channel(ChannelArgs),
}

#[derive(clap::Args)]
struct SampleArgs {
    /// Input and output dimension
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Environment dimension (number of Kraus operators)
    #[arg(long, default_value_t = 3)]
    env: usize,
    /// Sampling method: haar or stratified
    #[arg(long, default_value = "haar")]
    method: String,
    /// Number of channels to draw
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// RNG seed; same seed, same output
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Entropy unit: e for nats, 2 for bits
    #[arg(long = "log-base", value_enum, default_value_t = LogBase::E)]
    log_base: LogBase,
}

#[derive(clap::Args)]
struct BoundaryArgs {
    /// Dimension of the entropy plane (2, 3, or 4)
    #[arg(long)]
    n: usize,
    /// Sample points per branch
    #[arg(long, default_value_t = 512)]
    points: usize,
    /// Entropy unit: e for nats, 2 for bits
    #[arg(long = "log-base", value_enum, default_value_t = LogBase::E)]
    log_base: LogBase,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Check this channel file instead of running a random survey
    #[arg(long, conflicts_with_all = ["n", "env", "method", "samples", "seed"])]
    channel: Option<PathBuf>,
    /// Input and output dimension of the survey
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Environment dimension of the survey
    #[arg(long, default_value_t = 3)]
    env: usize,
    /// Sampling method for the survey: haar or stratified
    #[arg(long, default_value = "haar")]
    method: String,
    /// Number of channels to check
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(clap::Args)]
struct EvolveArgs {
    /// Dimension of the boundary-grid starts (ignored for file starts)
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Number of random Hamiltonians
    #[arg(long, default_value_t = 30)]
    hamiltonians: usize,
    /// Largest evolution time
    #[arg(long = "t-max", default_value_t = 0.5)]
    t_max: f64,
    /// Time step
    #[arg(long, default_value_t = 0.01)]
    dt: f64,
    /// RNG seed for the Hamiltonians
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Starting channels: "boundary-grid", or a channel-file path
    #[arg(long, default_value = "boundary-grid")]
    start: String,
    /// Entropy unit: e for nats, 2 for bits
    #[arg(long = "log-base", value_enum, default_value_t = LogBase::E)]
    log_base: LogBase,
}

#[derive(clap::Args)]
#[command(group(ArgGroup::new("source").required(true).args(["channel", "named", "l_matrix"])))]
struct ChannelArgs {
    /// Channel file (JSON) to describe
    #[arg(long)]
    channel: Option<PathBuf>,
    /// Built-in channel: identity, coarse-graining, emission, or phi4
    #[arg(long)]
    named: Option<String>,
    /// Subspace-preserving 0/1 pattern, rows separated by ';' (e.g. "101;10;0")
    #[arg(long = "L")]
    l_matrix: Option<String>,
    /// Dimension for --named channels
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Entropy unit: e for nats, 2 for bits
    #[arg(long = "log-base", value_enum, default_value_t = LogBase::E)]
    log_base: LogBase,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = err.print();
                    0
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    // Bare `mapent`: show the help, but it is still a usage
                    // error.
                    let _ = err.print();
                    2
                }
                _ => {
                    // One-line version of clap's message; the full usage text
                    // is a --help away.
                    let text = err.to_string();
                    let line = text
                        .lines()
                        .find(|l| !l.trim().is_empty())
                        .unwrap_or("error: invalid arguments");
                    eprintln!("{line}");
                    2
                }
            };
        }
    };
    let result = match cli.command {
        Command::Sample(args) => cmd_sample(args),
        Command::Boundary(args) => cmd_boundary(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Evolve(args) => cmd_evolve(args),
        Command::Channel(args) => cmd_channel(args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}

fn io_err(err: std::io::Error) -> String {
    if err.kind() == std::io::ErrorKind::BrokenPipe {
        // Downstream closed the pipe (e.g. `mapent ... | head`); quit
        // quietly instead of reporting an error.
        std::process::exit(0);
    }
    format!("writing output: {err}")
}

/// Prints a complete report to stdout, tolerating a closed pipe.
fn emit(text: &str) -> Result<(), String> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "{text}").map_err(io_err)?;
    out.flush().map_err(io_err)
}

fn cmd_sample(args: SampleArgs) -> Result<i32, String> {
    let config = SamplerConfig {
        dim: args.n,
        env: args.env,
        method: args.method,
        count: args.samples,
        seed: args.seed,
    };
    let points = survey(&config).map_err(|e| e.to_string())?;
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    writeln!(out, "{}", output::POINTS_HEADER).map_err(io_err)?;
    for (i, p) in points.iter().enumerate() {
        let row = output::point_row(
            i,
            args.log_base.convert(p.s),
            args.log_base.convert(p.s_tilde),
            &p.tag,
        );
        writeln!(out, "{row}").map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;
    Ok(0)
}

fn cmd_boundary(args: BoundaryArgs) -> Result<i32, String> {
    let branches = boundary_curves(args.n).map_err(|e| e.to_string())?;
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    writeln!(out, "{}", output::POINTS_HEADER).map_err(io_err)?;
    let mut index = 0;
    for branch in &branches {
        for (s, s_tilde) in branch.sample(args.points).map_err(|e| e.to_string())? {
            let row = output::point_row(
                index,
                args.log_base.convert(s),
                args.log_base.convert(s_tilde),
                branch.label(),
            );
            writeln!(out, "{row}").map_err(io_err)?;
            index += 1;
        }
    }
    out.flush().map_err(io_err)?;
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, String> {
    let report = match &args.channel {
        Some(path) => verify_file(path)?,
        None => verify_survey(&args)?,
    };
    let json = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
    emit(&json)?;
    Ok(if report.violations > 0 { 1 } else { 0 })
}

fn verify_survey(args: &VerifyArgs) -> Result<VerifyReport, String> {
    if args.samples == 0 {
        return Err("need at least one sample".into());
    }
    let strategy = sampler(&args.method)
        .map_err(|e| format!("{e} (available: {})", sampler_names().join(", ")))?;
    let root = RngStream::new(args.seed);
    let bound = (args.n as f64).ln();
    let boundary = (2..=4).contains(&args.n);
    // Residual and fast-path cross-checks are strided: they cost an extra
    // matrix product or eigensolve per channel, and a spread of ~64 channels
    // is plenty to catch a broken sampler or entropy route.
    let stride = (args.samples / 64).max(1);
    let mut report = VerifyReport {
        mode: "survey".into(),
        label: None,
        dim_in: args.n,
        dim_out: args.n,
        kraus_operators: args.env,
        method: Some(strategy.name().into()),
        samples: Some(args.samples),
        seed: Some(args.seed),
        checked: args.samples,
        thresholds: thresholds(),
        validity_max_residual: 0.0,
        bound,
        min_sum: f64::INFINITY,
        fast_path_max_gap: 0.0,
        saturation: Vec::new(),
        boundary_checked: boundary,
        max_violation_depth: boundary.then_some(f64::NEG_INFINITY),
        violations: 0,
    };
    for i in 0..args.samples {
        // Substream `i`, matching `sample`: with equal seeds the two
        // subcommands see identical channels.
        let mut rng = root.substream(i as u64);
        let channel = strategy
            .sample(args.n, args.env, &mut rng)
            .map_err(|e| format!("sample {i}: {e}"))?;
        let point = channel.entropy_point().map_err(|e| format!("sample {i}: {e}"))?;
        let sum = point.sum();
        report.min_sum = report.min_sum.min(sum);
        if sum < bound - SUM_THRESHOLD {
            report.violations += 1;
        }
        if i % stride == 0 {
            let residual = channel.identity_resolution_deviation();
            report.validity_max_residual = report.validity_max_residual.max(residual);
            if residual > VALIDITY_THRESHOLD {
                report.violations += 1;
            }
            let direct = channel.map_entropy().map_err(|e| format!("sample {i}: {e}"))?;
            let shortcut = channel
                .map_entropy_via_complement_image()
                .map_err(|e| format!("sample {i}: {e}"))?;
            let gap = (direct - shortcut).abs();
            report.fast_path_max_gap = report.fast_path_max_gap.max(gap);
            if gap > FAST_PATH_THRESHOLD {
                report.violations += 1;
            }
        }
        if boundary {
            let depth = violation_depth(args.n, point.s, point.s_tilde)
                .map_err(|e| format!("sample {i}: {e}"))?;
            let worst = report.max_violation_depth.unwrap().max(depth);
            report.max_violation_depth = Some(worst);
            if depth > VIOLATION_THRESHOLD {
                report.violations += 1;
            }
        }
    }
    saturation_checks(args.n, &root, &mut report)?;
    Ok(report)
}

/// For composite survey dimensions, checks that channels built from random
/// `n_a * n_b` unitaries pin their entropy sum at `ln n` regardless of the
/// unitary: one check per factor pair, a handful of draws each.
fn saturation_checks(
    n: usize,
    root: &RngStream,
    report: &mut VerifyReport,
) -> Result<(), String> {
    const TRIALS: usize = 16;
    // Substream indices far above any sample index keep these draws
    // independent of the survey.
    const SUBSTREAM_BASE: u64 = 1 << 40;
    let bound = (n as f64).ln();
    let mut pair_index = 0u64;
    for n_a in 2..=n {
        if n % n_a != 0 || n / n_a < n_a {
            continue;
        }
        let n_b = n / n_a;
        let mut max_gap = 0.0f64;
        for t in 0..TRIALS {
            let mut rng = root.substream(SUBSTREAM_BASE + pair_index * TRIALS as u64 + t as u64);
            let u = mapent_core::linalg::haar_unitary(n, &mut rng).map_err(|e| e.to_string())?;
            let point = mapent_core::product_saturating_channel(n_a, n_b, &u)
                .map_err(|e| e.to_string())?
                .entropy_point()
                .map_err(|e| e.to_string())?;
            max_gap = max_gap.max((point.sum() - bound).abs());
        }
        if max_gap > SATURATION_THRESHOLD {
            report.violations += 1;
        }
        report.saturation.push(output::SaturationCheck {
            factors: [n_a, n_b],
            trials: TRIALS,
            max_sum_gap: max_gap,
        });
        pair_index += 1;
    }
    Ok(())
}

fn verify_file(path: &std::path::Path) -> Result<VerifyReport, String> {
    let (label, channel) = chanfile::load(path, VALIDITY_THRESHOLD)?;
    let residual = channel.identity_resolution_deviation();
    let n = channel.dim_in();
    let bound = (n as f64).ln();
    let boundary = (2..=4).contains(&n) && channel.dim_out() == n;
    let point = channel.entropy_point().map_err(|e| e.to_string())?;
    let direct = channel.map_entropy().map_err(|e| e.to_string())?;
    let shortcut = channel
        .map_entropy_via_complement_image()
        .map_err(|e| e.to_string())?;
    let gap = (direct - shortcut).abs();
    let mut report = VerifyReport {
        mode: "file".into(),
        label,
        dim_in: n,
        dim_out: channel.dim_out(),
        kraus_operators: channel.num_operators(),
        method: None,
        samples: None,
        seed: None,
        checked: 1,
        thresholds: thresholds(),
        validity_max_residual: residual,
        bound,
        min_sum: point.sum(),
        fast_path_max_gap: gap,
        saturation: Vec::new(),
        boundary_checked: boundary,
        max_violation_depth: None,
        violations: 0,
    };
    if point.sum() < bound - SUM_THRESHOLD {
        report.violations += 1;
    }
    if gap > FAST_PATH_THRESHOLD {
        report.violations += 1;
    }
    if boundary {
        let depth = violation_depth(n, point.s, point.s_tilde).map_err(|e| e.to_string())?;
        report.max_violation_depth = Some(depth);
        if depth > VIOLATION_THRESHOLD {
            report.violations += 1;
        }
    }
    Ok(report)
}

fn cmd_evolve(args: EvolveArgs) -> Result<i32, String> {
    let times = time_grid(args.t_max, args.dt)?;
    if args.start == "boundary-grid" {
        evolve_boundary_grid(&args, &times)
    } else {
        evolve_from_file(&args, &times)
    }
}

fn time_grid(t_max: f64, dt: f64) -> Result<Vec<f64>, String> {
    if !(dt > 0.0) {
        return Err(format!("time step must be positive, got {dt}"));
    }
    if t_max < 0.0 {
        return Err(format!("largest time must be nonnegative, got {t_max}"));
    }
    let steps = (t_max / dt + 1e-9).floor() as usize;
    Ok((0..=steps).map(|k| k as f64 * dt).collect())
}

fn evolve_boundary_grid(args: &EvolveArgs, times: &[f64]) -> Result<i32, String> {
    let report =
        boundary_probe(args.n, args.hamiltonians, times, args.seed).map_err(|e| e.to_string())?;
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    writeln!(out, "{}", output::TRAJECTORY_HEADER).map_err(io_err)?;
    let mut index = 0;
    for trajectory in &report.trajectories {
        let tag = format!("{}@H{}", trajectory.start, trajectory.hamiltonian_index);
        for (t, p) in trajectory.times.iter().zip(trajectory.points.iter()) {
            let row = output::trajectory_row(
                index,
                *t,
                args.log_base.convert(p.s),
                args.log_base.convert(p.s_tilde),
                &tag,
            );
            writeln!(out, "{row}").map_err(io_err)?;
            index += 1;
        }
    }
    writeln!(
        out,
        "# n={} hamiltonians={} starts={} points_checked={} max_violation_nats={:.12e}",
        report.n, report.hamiltonians, report.start_count, report.points_checked,
        report.max_violation
    )
    .map_err(io_err)?;
    out.flush().map_err(io_err)?;
    Ok(0)
}

fn evolve_from_file(args: &EvolveArgs, times: &[f64]) -> Result<i32, String> {
    let path = PathBuf::from(&args.start);
    let (label, channel) = chanfile::load(&path, VALIDITY_THRESHOLD)?;
    let start_tag = label.unwrap_or_else(|| "file".into());
    let n = channel.dim_in();
    let check_boundary = (2..=4).contains(&n) && channel.dim_out() == n;
    let stacked_dim = channel.num_operators() * channel.dim_out();
    let root = RngStream::new(args.seed);
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    writeln!(out, "{}", output::TRAJECTORY_HEADER).map_err(io_err)?;
    let mut index = 0;
    let mut points_checked = 0;
    let mut max_violation = f64::NEG_INFINITY;
    for h in 0..args.hamiltonians {
        let mut rng = root.substream(h as u64);
        let hamiltonian = gue_hamiltonian(stacked_dim, &mut rng).map_err(|e| e.to_string())?;
        let evolved = evolve_channel(&channel, &hamiltonian, times).map_err(|e| e.to_string())?;
        let tag = format!("{start_tag}@H{h}");
        for (t, ch) in times.iter().zip(evolved.iter()) {
            let point = ch.entropy_point().map_err(|e| e.to_string())?;
            if check_boundary {
                let depth =
                    violation_depth(n, point.s, point.s_tilde).map_err(|e| e.to_string())?;
                max_violation = max_violation.max(depth);
                points_checked += 1;
            }
            let row = output::trajectory_row(
                index,
                *t,
                args.log_base.convert(point.s),
                args.log_base.convert(point.s_tilde),
                &tag,
            );
            writeln!(out, "{row}").map_err(io_err)?;
            index += 1;
        }
    }
    if check_boundary {
        writeln!(
            out,
            "# start={start_tag} hamiltonians={} points_checked={points_checked} \
             max_violation_nats={max_violation:.12e}",
            args.hamiltonians
        )
        .map_err(io_err)?;
    } else {
        writeln!(
            out,
            "# start={start_tag} hamiltonians={} points_checked=0 max_violation_nats=n/a",
            args.hamiltonians
        )
        .map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;
    Ok(0)
}

fn cmd_channel(args: ChannelArgs) -> Result<i32, String> {
    let (label, channel) = if let Some(path) = &args.channel {
        chanfile::load(path, VALIDITY_THRESHOLD)?
    } else if let Some(name) = &args.named {
        let ch = named_channel(name, args.n).map_err(|e| e.to_string())?;
        (Some(name.clone()), ch)
    } else if let Some(pattern) = &args.l_matrix {
        let l = LMatrix::parse(pattern).map_err(|e| e.to_string())?;
        (Some(format!("L:{pattern}")), l.to_channel())
    } else {
        unreachable!("clap enforces exactly one channel source");
    };
    let residual = channel.identity_resolution_deviation();
    let point = channel.entropy_point().map_err(|e| e.to_string())?;
    let coherent = channel
        .coherent_information_at_mixed()
        .map_err(|e| e.to_string())?;
    let choi = channel.choi().map_err(|e| e.to_string())?;
    let spectrum = choi.spectrum().map_err(|e| e.to_string())?;
    let report = ChannelReport {
        label,
        dim_in: channel.dim_in(),
        dim_out: channel.dim_out(),
        kraus_operators: channel.num_operators(),
        validity_residual: residual,
        log_base: args.log_base.label().into(),
        entropy: args.log_base.convert(point.s),
        complement_entropy: args.log_base.convert(point.s_tilde),
        entropy_sum: args.log_base.convert(point.sum()),
        coherent_information: args.log_base.convert(coherent),
        choi_spectrum: spectrum.values().to_vec(),
    };
    let json = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
    emit(&json)?;
    Ok(0)
}
