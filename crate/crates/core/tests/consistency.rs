//! Cross-module checks that tie the channel algebra, the pattern families,
//! and the evolution flow together.

use mapent_core::linalg::gue_hamiltonian;
use mapent_core::sampling::evolve_channel;
use mapent_core::{enumerate_l_matrices, named_channel, sampler, RngStream};

/// Transposing a 0/1 pattern and building its channel gives *exactly* the
/// complementary channel: same operator count, same shapes, and bit-for-bit
/// equal entries, zero operators included.  This holds with no tolerance
/// because both constructions place the same 0.0/1.0 values.
#[test]
fn transposed_pattern_is_the_complementary_channel_exactly() {
    for n in 1..=4 {
        for l in enumerate_l_matrices(n).unwrap() {
            let from_transpose = l.transpose().to_channel();
            let from_complement = l.to_channel().complementary();
            assert_eq!(from_transpose.num_operators(), from_complement.num_operators());
            for (a, b) in from_transpose
                .operators()
                .iter()
                .zip(from_complement.operators())
            {
                assert_eq!(a.rows(), b.rows());
                assert_eq!(a.cols(), b.cols());
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        assert_eq!(a[(r, c)], b[(r, c)], "entry ({r},{c}) differs at n={n}");
                    }
                }
            }
        }
    }
}

/// Along a unitary evolution of the stacked isometry, the Choi-state route
/// and the complement-image shortcut must keep agreeing, and the entropy
/// pair of the complement must stay the mirror of the original.
#[test]
fn evolved_channels_keep_both_entropy_routes_aligned() {
    let start = named_channel("phi4", 3).unwrap();
    let mut rng = RngStream::new(0xC0);
    let h = gue_hamiltonian(start.num_operators() * start.dim_out(), &mut rng).unwrap();
    let times: Vec<f64> = (0..=10).map(|k| k as f64 * 0.05).collect();
    for ch in evolve_channel(&start, &h, &times).unwrap() {
        let direct = ch.map_entropy().unwrap();
        let shortcut = ch.map_entropy_via_complement_image().unwrap();
        assert!((direct - shortcut).abs() < 1e-9);
        let p = ch.entropy_point().unwrap();
        let q = ch.complementary().entropy_point().unwrap();
        assert!((p.s - q.s_tilde).abs() < 1e-9 && (p.s_tilde - q.s).abs() < 1e-9);
    }
}

/// The complement of a random rectangular channel swaps the entropy pair.
#[test]
fn random_channel_entropy_pairs_swap_under_complement() {
    let strategy = sampler("haar").unwrap();
    let root = RngStream::new(0xC1);
    for i in 0..50 {
        let mut rng = root.substream(i);
        let ch = strategy.sample(3, 2, &mut rng).unwrap();
        let p = ch.entropy_point().unwrap();
        let q = ch.complementary().entropy_point().unwrap();
        assert!((p.s - q.s_tilde).abs() < 1e-12 && (p.s_tilde - q.s).abs() < 1e-12);
    }
}
