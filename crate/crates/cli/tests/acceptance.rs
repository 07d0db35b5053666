//! Acceptance suite: one test per release criterion, each printing a PASS
//! line with the measured figure when it holds.  Tolerances are fixed here,
//! not imported, so a regression in the library cannot silently relax them.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::process::Command;

use mapent_core::families::boundary::violation_depth;
use mapent_core::{
    enumerate_l_matrices, named_channel, product_saturating_channel, qubit_extremal_channel,
    sampler, survey, AMatrix, KrausChannel, LMatrix, RngStream, SamplerConfig,
};

const LN_2: f64 = std::f64::consts::LN_2;

fn ln(n: usize) -> f64 {
    (n as f64).ln()
}

fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

fn h2(a: f64) -> f64 {
    -xlnx(a) - xlnx(1.0 - a)
}

fn haar_channel(dim: usize, env: usize, seed: u64, index: u64) -> KrausChannel {
    let strategy = sampler("haar").expect("haar sampler is registered");
    let mut rng = RngStream::new(seed).substream(index);
    strategy.sample(dim, env, &mut rng).expect("sampling should succeed")
}

#[test]
fn criterion_01_entropy_sum_never_undershoots_log_dim() {
    const SAMPLES: usize = 10_000;
    const TOL: f64 = 1e-9;
    let mut worst = f64::INFINITY;
    for n in [2usize, 3, 4] {
        for method in ["haar", "stratified"] {
            let config = SamplerConfig {
                dim: n,
                env: n,
                method: method.into(),
                count: SAMPLES,
                seed: 0xACC1,
            };
            let points = survey(&config).expect("survey should succeed");
            assert_eq!(points.len(), SAMPLES);
            for p in &points {
                let margin = p.sum() - ln(n);
                worst = worst.min(margin);
                assert!(
                    margin >= -TOL,
                    "S + S~ fell below ln {n} by {:.3e} ({method})",
                    -margin
                );
            }
        }
    }
    println!(
        "ACCEPTANCE criterion 01: PASS — S + S~ >= ln N over 60000 channels, \
         smallest margin {worst:.3e}"
    );
}

#[test]
fn criterion_02_complement_image_shortcut_matches_direct_entropy() {
    const SAMPLES: u64 = 1_000;
    const TOL: f64 = 1e-9;
    let mut worst = 0.0f64;
    for (dim, env) in [(2usize, 2usize), (3, 3), (2, 4), (4, 2)] {
        for i in 0..SAMPLES {
            let ch = haar_channel(dim, env, 0xACC2, i);
            let direct = ch.map_entropy().unwrap();
            let shortcut = ch.map_entropy_via_complement_image().unwrap();
            let comp = ch.complementary();
            let comp_direct = comp.map_entropy().unwrap();
            let comp_shortcut = comp.map_entropy_via_complement_image().unwrap();
            let gap = (direct - shortcut).abs().max((comp_direct - comp_shortcut).abs());
            worst = worst.max(gap);
            assert!(gap < TOL, "entropy routes disagree by {gap:.3e} at ({dim},{env})");
            if i % 250 == 0 {
                // Padding with explicit zero operators must not move either
                // entropy.
                let padded = ch.clone().with_zero_operators(2);
                let p = ch.entropy_point().unwrap();
                let q = padded.entropy_point().unwrap();
                assert!((p.s - q.s).abs() < TOL && (p.s_tilde - q.s_tilde).abs() < TOL);
            }
        }
    }
    println!(
        "ACCEPTANCE criterion 02: PASS — Choi and complement-image entropies agree \
         over 4000 channels, largest gap {worst:.3e}"
    );
}

#[test]
fn criterion_03_landmark_channels_hit_exact_points() {
    const TOL: f64 = 1e-9;
    const PHI4_ENTROPY: f64 = 0.636514168294813;
    let mut checked = 0;
    for n in [2usize, 3, 4] {
        for (name, expect_s, expect_st) in [
            ("identity", 0.0, ln(n)),
            ("coarse-graining", ln(n), ln(n)),
            ("emission", ln(n), 0.0),
        ] {
            let p = named_channel(name, n).unwrap().entropy_point().unwrap();
            assert!(
                (p.s - expect_s).abs() < TOL && (p.s_tilde - expect_st).abs() < TOL,
                "{name} at n={n} landed at ({}, {})",
                p.s,
                p.s_tilde
            );
            checked += 1;
        }
    }
    let p = named_channel("phi4", 3).unwrap().entropy_point().unwrap();
    assert!((p.s - PHI4_ENTROPY).abs() < TOL && (p.s_tilde - PHI4_ENTROPY).abs() < TOL);
    checked += 1;
    println!("ACCEPTANCE criterion 03: PASS — {checked} landmark channels on their exact points");
}

#[test]
fn criterion_04_qubit_family_traces_curve_and_samples_stay_above() {
    const GRID_TOL: f64 = 1e-10;
    const DEPTH_TOL: f64 = 1e-6;
    // The extremal family must reproduce (h2(a), h2(1/2 - a)) pointwise.
    for i in 0..=100 {
        let a = i as f64 * 0.005;
        let p = qubit_extremal_channel(a).unwrap().entropy_point().unwrap();
        assert!(
            (p.s - h2(a)).abs() < GRID_TOL && (p.s_tilde - h2(0.5 - a)).abs() < GRID_TOL,
            "family point at a={a} off the curve"
        );
    }
    // No random qubit channel may land measurably below the curve.
    let mut worst = f64::NEG_INFINITY;
    for method in ["haar", "stratified"] {
        let config = SamplerConfig {
            dim: 2,
            env: 2,
            method: method.into(),
            count: 50_000,
            seed: 0xACC4,
        };
        for p in survey(&config).expect("survey should succeed") {
            let depth = violation_depth(2, p.s, p.s_tilde).unwrap();
            worst = worst.max(depth);
            assert!(depth <= DEPTH_TOL, "{method} sample below the curve by {depth:.3e}");
        }
    }
    println!(
        "ACCEPTANCE criterion 04: PASS — 101 family points on the curve, 100000 samples \
         above it (worst depth {worst:.3e})"
    );
}

#[test]
fn criterion_05_qutrit_samples_and_evolutions_stay_above() {
    const DEPTH_TOL: f64 = 1e-6;
    let config = SamplerConfig {
        dim: 3,
        env: 3,
        method: "haar".into(),
        count: 10_000,
        seed: 0xACC5,
    };
    let mut worst = f64::NEG_INFINITY;
    for p in survey(&config).expect("survey should succeed") {
        let depth = violation_depth(3, p.s, p.s_tilde).unwrap();
        worst = worst.max(depth);
        assert!(depth <= DEPTH_TOL, "sample below the qutrit boundary by {depth:.3e}");
    }
    let times: Vec<f64> = (0..=50).map(|k| k as f64 * 0.01).collect();
    let report = mapent_core::boundary_probe(3, 30, &times, 0xACC5).unwrap();
    assert_eq!(report.hamiltonians, 30);
    assert!(report.points_checked >= 30 * report.start_count * times.len());
    assert!(
        report.max_violation <= DEPTH_TOL,
        "evolution dipped below the boundary by {:.3e}",
        report.max_violation
    );
    println!(
        "ACCEPTANCE criterion 05: PASS — 10000 qutrit samples (worst depth {worst:.3e}) \
         and {} evolved points (worst {:.3e}) stay above the boundary",
        report.points_checked, report.max_violation
    );
}

#[test]
fn criterion_06_product_construction_saturates_the_floor() {
    const TOL: f64 = 1e-9;
    const TRIALS: u64 = 100;
    let mut worst = 0.0f64;
    for (n_a, n_b) in [(2usize, 2usize), (2, 3), (3, 2)] {
        let root = RngStream::new(0xACC6);
        for i in 0..TRIALS {
            let mut rng = root.substream((n_a * 10 + n_b) as u64 * 1000 + i);
            let u = mapent_core::linalg::haar_unitary(n_a * n_b, &mut rng).unwrap();
            let p = product_saturating_channel(n_a, n_b, &u)
                .unwrap()
                .entropy_point()
                .unwrap();
            let err = (p.s - ln(n_b)).abs().max((p.s_tilde - ln(n_a)).abs());
            worst = worst.max(err);
            assert!(
                err < TOL,
                "block construction at ({n_a},{n_b}) landed at ({}, {})",
                p.s,
                p.s_tilde
            );
        }
    }
    println!(
        "ACCEPTANCE criterion 06: PASS — 300 block channels pinned at (ln nb, ln na), \
         largest offset {worst:.3e}"
    );
}

#[test]
fn criterion_07_pattern_channel_entropy_formula_matches_eigensolver() {
    const TOL: f64 = 1e-9;
    let mut total = 0;
    let mut worst = 0.0f64;
    for n in 1..=5 {
        let patterns = enumerate_l_matrices(n).unwrap();
        let expected: usize = (1..=n).product();
        assert_eq!(patterns.len(), expected, "expected {expected} patterns at n={n}");
        for l in &patterns {
            let formula = l.entropy_point();
            let eigen = l.to_channel().entropy_point().unwrap();
            let err = (formula.s - eigen.s).abs().max((formula.s_tilde - eigen.s_tilde).abs());
            worst = worst.max(err);
            assert!(err < TOL, "row/column formula disagrees with eigensolver at n={n}");
            total += 1;
        }
    }
    println!(
        "ACCEPTANCE criterion 07: PASS — row-sum formula matches the eigensolver on all \
         {total} patterns up to n=5, largest gap {worst:.3e}"
    );
}

#[test]
fn criterion_08_map_entropy_is_additive_on_products() {
    const TOL: f64 = 1e-8;
    const PAIRS: u64 = 200;
    let mut worst = 0.0f64;
    for i in 0..PAIRS {
        let a = haar_channel(2, 2, 0xACC8, 2 * i);
        let b = haar_channel(2, 2, 0xACC8, 2 * i + 1);
        let joint = a.tensor(&b).entropy_point().unwrap();
        let pa = a.entropy_point().unwrap();
        let pb = b.entropy_point().unwrap();
        let gap = (joint.s - pa.s - pb.s)
            .abs()
            .max((joint.s_tilde - pa.s_tilde - pb.s_tilde).abs());
        worst = worst.max(gap);
        assert!(gap < TOL, "entropy failed to add on pair {i}: gap {gap:.3e}");
    }
    println!(
        "ACCEPTANCE criterion 08: PASS — map entropy additive on {PAIRS} qubit pairs, \
         largest gap {worst:.3e}"
    );
}

#[test]
fn criterion_09_dim4_interpolation_endpoints() {
    const TOL: f64 = 1e-9;

    // The closed-form branch evaluators first: the outer end of the first
    // branch and the junction point of the second.
    let branches = mapent_core::families::boundary::boundary_curves(4).unwrap();
    let curve1 = branches.iter().find(|b| b.label() == "curve1").unwrap();
    let (s, st) = curve1.eval(curve1.a_min()).unwrap();
    assert!(s.abs() < TOL && (st - ln(4)).abs() < TOL, "curve1 start at ({s}, {st})");
    let curve2 = branches.iter().find(|b| b.label() == "curve2").unwrap();
    let (s, st) = curve2.eval(curve2.a_min()).unwrap();
    assert!((s - LN_2).abs() < TOL && (st - LN_2).abs() < TOL, "curve2 start at ({s}, {st})");

    // Then the channel families that realize those endpoints.
    let l1 = LMatrix::emission(4);
    let l2 = LMatrix::new(vec![vec![1, 0, 0, 0], vec![1, 0, 0], vec![1, 1], vec![0]]).unwrap();
    let l3 = LMatrix::new(vec![vec![1, 1, 0, 0], vec![0, 0, 0], vec![1, 1], vec![0]]).unwrap();

    // At full weight on the first pattern the interpolation is the emission
    // channel; its complement must sit at the opposite corner (0, ln 4).
    let emission_end = AMatrix::interpolate(&l1, &l2, 1.0).unwrap().to_channel();
    let corner = emission_end.complementary().entropy_point().unwrap();
    assert!(corner.s.abs() < TOL && (corner.s_tilde - ln(4)).abs() < TOL);

    // At zero weight the second interpolation is the saturating pattern,
    // the midpoint (ln 2, ln 2) where the two halves of the boundary meet.
    let middle = AMatrix::interpolate(&l2, &l3, 0.0).unwrap().to_channel();
    let mid_point = middle.entropy_point().unwrap();
    assert!((mid_point.s - LN_2).abs() < TOL && (mid_point.s_tilde - LN_2).abs() < TOL);

    println!(
        "ACCEPTANCE criterion 09: PASS — curve evaluators and their realizing channels \
         agree on the endpoints (0, ln 4) and (ln 2, ln 2)"
    );
}

#[test]
fn criterion_10_cli_reruns_are_reproducible() {
    let bin = env!("CARGO_BIN_EXE_mapent");
    let cases: &[&[&str]] = &[
        &["sample", "--n", "3", "--env", "3", "--samples", "200", "--seed", "17"],
        &["sample", "--n", "2", "--env", "2", "--method", "stratified", "--samples", "200",
          "--seed", "17"],
        &["boundary", "--n", "4", "--points", "64"],
        &["verify", "--n", "2", "--env", "2", "--samples", "100", "--seed", "17"],
        &["evolve", "--n", "2", "--hamiltonians", "2", "--t-max", "0.05", "--dt", "0.01",
          "--seed", "17"],
    ];
    for args in cases {
        let run = |threads: &str| {
            Command::new(bin)
                .args(*args)
                .env("RAYON_NUM_THREADS", threads)
                .output()
                .expect("binary should launch")
        };
        let first = run("4");
        let second = run("4");
        let serial = run("1");
        assert!(first.status.success(), "{args:?} failed");
        assert_eq!(first.stdout, second.stdout, "rerun of {args:?} differed");
        assert_eq!(first.stdout, serial.stdout, "thread count changed output of {args:?}");
    }
    println!(
        "ACCEPTANCE criterion 10: PASS — {} CLI invocations byte-identical across reruns \
         and thread counts",
        cases.len()
    );
}
