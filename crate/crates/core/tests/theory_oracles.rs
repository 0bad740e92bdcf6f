use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skg_core::numeric::choose;
use skg_core::*;

fn graph500(levels: u32) -> DerivedParams {
    let p = Preset::graph500();
    DerivedParams::new(p.matrix, levels, p.insertions(levels)).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn probability_closure_all_presets() {
    for preset in Preset::all() {
        for levels in (2..=42).step_by(2) {
            let dp = DerivedParams::new(preset.matrix, levels, 1 << 20).unwrap();
            let half = dp.half_levels();
            let total: f64 = (-half..=half)
                .map(|r| slice_size(levels, r).unwrap() as f64 * slice_out_probability(&dp, r).unwrap())
                .sum();
            assert!((total - 1.0).abs() < 1e-10, "{} levels={levels}", preset.name);
        }
    }
}

#[test]
fn mass_conservation() {
    for (levels, delta) in [(10u32, 8u64), (12, 8), (8, 4)] {
        let p = Preset::graph500();
        let m = delta << levels;
        let dp = DerivedParams::new(p.matrix, levels, m).unwrap();
        let mut total = 0.0;
        let mut vertices = 0.0;
        for d in 0..=m {
            let x = expected_degree_count_exact(&dp, d).unwrap();
            total += d as f64 * x;
            vertices += x;
            // Past the largest slice mean the terms only shrink.
            if d as f64 > 2.0 * m as f64 * 0.76f64.powi(levels as i32) + 50.0 && d as f64 * x < 1e-15 * m as f64 {
                break;
            }
        }
        assert!(rel(total, m as f64) < 1e-6, "levels={levels}: {total}");
        assert!(rel(vertices, dp.n as f64) < 1e-9);
    }
}

#[test]
fn lemma_tracks_exact_sum() {
    let dp = graph500(16);
    let (lo, hi) = degree_regime(&dp);
    let mut checked = 0;
    for d in lo.ceil() as u64..=hi.floor() as u64 {
        let exact = expected_degree_count_exact(&dp, d).unwrap();
        if exact < 100.0 {
            continue;
        }
        let lemma = expected_degree_count_lemma(&dp, d).unwrap();
        assert!(lemma.in_regime);
        assert!(rel(lemma.value, exact) <= 0.2, "d={d}: lemma {} exact {exact}", lemma.value);
        checked += 1;
    }
    assert!(checked >= 15);
}

#[test]
fn theorem_envelopes_lemma() {
    let dp = graph500(16);
    let (lo, hi) = degree_regime(&dp);
    for d in lo.ceil() as u64..=hi.floor() as u64 {
        let idx = degree_index(&dp, d).unwrap();
        let (below, above) = expected_degree_count_lemma_terms(&dp, d).unwrap();
        let matching = if idx.nearest == idx.floor { below } else { above };
        let theorem = expected_degree_count_theorem(&dp, d).unwrap().value;
        // The theorem keeps the nearest-slice term and drops 1/sqrt(2 pi).
        assert!(theorem >= matching * (1.0 - 1e-12), "d={d}");
        // Up to an additive tail: at d = 230, gamma is 0.4996 and both
        // values are ~1e-15 vertices.
        assert!(theorem >= (1.0 - 0.05) * (below + above) - 1e-6, "d={d}: theorem {theorem} lemma {}", below + above);
    }
}

#[test]
fn lemma_predicts_oscillation() {
    let dp = graph500(16);
    let (lo, hi) = degree_regime(&dp);
    let ds: Vec<u64> = (lo.ceil() as u64..=hi.floor() as u64).collect();
    let values: Vec<f64> = ds.iter().map(|&d| expected_degree_count_lemma(&dp, d).unwrap().value).collect();
    let witness = ds.iter().zip(&values).any(|(&d1, &v1)| {
        ds.iter().zip(&values).any(|(&d2, &v2)| {
            let close = (d1.abs_diff(d2) as f64) <= dp.tau * d1.min(d2) as f64;
            close && v1 > 0.0 && v2 >= 10.0 * v1
        })
    });
    assert!(witness);
}

#[test]
fn slice_monotonicity() {
    for preset in Preset::all() {
        let dp = DerivedParams::new(preset.matrix, 18, preset.insertions(18)).unwrap();
        let ps: Vec<f64> = (-9..=9).map(|r| slice_out_probability(&dp, r).unwrap()).collect();
        assert!(ps.windows(2).all(|w| w[0] < w[1]), "{}", preset.name);
        let iso: Vec<f64> = (-9..=9).map(|r| (-2.0 * dp.lambda * dp.tau.powi(r)).exp()).collect();
        assert!(iso.windows(2).all(|w| w[0] > w[1] || w[1] == 0.0));
    }
}

#[test]
fn isolated_fraction_grows_with_levels() {
    let fracs: Vec<f64> = [16u32, 20, 26, 32, 42]
        .iter()
        .map(|&l| {
            let dp = graph500(l);
            isolated_expectation(&dp).unwrap() / dp.n as f64
        })
        .collect();
    assert!(fracs.windows(2).all(|w| w[0] < w[1]), "{fracs:?}");
}

#[test]
fn repeat_fraction_shrinks_with_levels() {
    let g = Preset::graph500().matrix;
    let fracs: Vec<f64> = [10u32, 14, 18, 22, 26].iter().map(|&l| repeat_fraction(&g, l, 16 << l)).collect();
    assert!(fracs.windows(2).all(|w| w[0] > w[1]), "{fracs:?}");
}

/// Kronecker power of the initiator, row-major `2^l x 2^l`.
fn probability_matrix(t: &GeneratorMatrix, levels: u32) -> Vec<f64> {
    let mut p = vec![1.0];
    let mut size = 1usize;
    let e = t.entries();
    for _ in 0..levels {
        let next_size = size * 2;
        let mut next = vec![0.0; next_size * next_size];
        for i in 0..size {
            for j in 0..size {
                for (q, &tq) in e.iter().enumerate() {
                    let (bi, bj) = (q / 2, q % 2);
                    next[(2 * i + bi) * next_size + 2 * j + bj] = p[i * size + j] * tq;
                }
            }
        }
        p = next;
        size = next_size;
    }
    p
}

#[test]
fn distinct_edges_match_cell_brute_force() {
    for preset in Preset::all() {
        for (levels, m) in [(4u32, 32u64), (4, 1000), (6, 500)] {
            let cells = probability_matrix(&preset.matrix, levels);
            assert!((cells.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            let brute: f64 = cells.iter().map(|&p| 1.0 - (1.0 - p).powf(m as f64)).sum();
            let got = expected_distinct_edges(&preset.matrix, levels, m);
            assert!(rel(got, brute) < 1e-9, "{} l={levels} m={m}", preset.name);
        }
    }
}

#[test]
fn slice_pmf_matches_simulated_vertices() {
    // 28 vertices with six zero bits per graph, ~36k graphs of 256 insertions:
    // about 10^6 vertex observations.
    let (levels, m, r, d) = (8u32, 256u64, 2i64, 3u64);
    let g = Preset::graph500().matrix;
    let dp = DerivedParams::new(g, levels, m).unwrap();
    let want = slice_degree_probability_exact(&dp, r, d).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let row0 = g.t1 + g.t2;
    let graphs = 35_715;
    let mut hits = 0u64;
    let mut trials = 0u64;
    let mut outdeg = vec![0u32; 1 << levels];
    for _ in 0..graphs {
        outdeg.iter_mut().for_each(|x| *x = 0);
        for _ in 0..m {
            let mut src = 0usize;
            for _ in 0..levels {
                src = (src << 1) | usize::from(rng.gen::<f64>() >= row0);
            }
            outdeg[src] += 1;
        }
        for (v, &deg) in outdeg.iter().enumerate() {
            if (levels - (v as u32).count_ones()) as i64 == levels as i64 / 2 + r {
                trials += 1;
                hits += u64::from(u64::from(deg) == d);
            }
        }
    }
    let freq = hits as f64 / trials as f64;
    let se = (want * (1.0 - want) / trials as f64).sqrt();
    assert!((freq - want).abs() <= 3.0 * se, "freq {freq} want {want} se {se}");
}

#[test]
fn noisy_matrix_mean_is_unbiased() {
    let g = Preset::graph500().matrix;
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let draws = 100_000;
    let mut sum = [0.0f64; 4];
    let mut sq = [0.0f64; 4];
    for _ in 0..draws / 16 {
        for t in noisy_matrices(&g, 16, 0.1, &mut rng).unwrap() {
            for (k, x) in t.entries().into_iter().enumerate() {
                sum[k] += x;
                sq[k] += x * x;
            }
        }
    }
    let count = (draws / 16 * 16) as f64;
    for k in 0..4 {
        let mean = sum[k] / count;
        let var = sq[k] / count - mean * mean;
        let se = (var / count).sqrt();
        assert!((mean - g.entries()[k]).abs() <= 3.0 * se, "entry {k}: {mean}");
    }
}

#[test]
fn log_bias_concentrates_near_zero() {
    // b = c / sqrt(levels) with c = 0.4, levels = 16.
    let p = Preset::graph500();
    let dp = DerivedParams::new(p.matrix, 16, p.insertions(16)).unwrap();
    let b = 0.4 / 4.0;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let draws = 10_000;
    let mean: f64 = (0..draws)
        .map(|_| {
            let ms = noisy_matrices(&p.matrix, 16, b, &mut rng).unwrap();
            vertex_bias(&dp, &ms, 0).unwrap().rho.ln()
        })
        .sum::<f64>()
        / draws as f64;
    assert!(mean.abs() <= 0.1, "mean ln rho = {mean}");
}

#[test]
fn slice_degree_pmf_normalizes_over_slices() {
    let dp = DerivedParams::new(Preset::cahepph().matrix, 6, 40).unwrap();
    for r in -3..=3 {
        let s: f64 = (0..=40).map(|d| slice_degree_probability_exact(&dp, r, d).unwrap()).sum();
        assert!((s - 1.0).abs() < 1e-12);
    }
}

#[test]
fn exact_curve_equals_slice_sum() {
    let dp = graph500(12);
    for d in [0u64, 3, 17, 40] {
        let brute: f64 =
            (-6..=6).map(|r| choose(12, (6 + r) as u64) * slice_degree_probability_exact(&dp, r, d).unwrap()).sum();
        assert!(rel(expected_degree_count_exact(&dp, d).unwrap(), brute) < 1e-12);
    }
}

proptest! {
    #[test]
    fn noisy_matrices_stay_stochastic(
        t1 in 0.3f64..0.7, t2 in 0.05f64..0.25, t3 in 0.05f64..0.25,
        frac in 0.0f64..0.999, seed in any::<u64>(),
    ) {
        let t4 = 1.0 - t1 - t2 - t3;
        prop_assume!(t4 > 0.01);
        let g = GeneratorMatrix::new(t1, t2, t3, t4).unwrap();
        let b = frac * NoiseSpec::bound(&g);
        let ms = noisy_matrices(&g, 12, b, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        for m in ms {
            prop_assert!((m.entries().iter().sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!(m.entries().iter().all(|&x| x > 0.0));
        }
    }

    #[test]
    fn degree_index_is_consistent(d in 1u64..100_000, levels in (4u32..30).prop_map(|l| l & !1)) {
        let dp = graph500(levels);
        let idx = degree_index(&dp, d).unwrap();
        prop_assert!(idx.nearest == idx.floor || idx.nearest == idx.floor + 1);
        prop_assert!((0.0..=0.5).contains(&idx.gamma));
        prop_assert!((0.0..1.0).contains(&idx.frac));
        prop_assert!((idx.gamma - idx.frac.min(1.0 - idx.frac)).abs() < 1e-12);
    }

    #[test]
    fn log_forms_match_direct(levels in (2u32..=24).prop_map(|l| l & !1), r_off in 0i64..=24) {
        let dp = graph500(levels);
        let half = dp.half_levels();
        let r = r_off % (2 * half + 1) - half;
        let direct = 0.76f64.powi((half + r) as i32) * 0.24f64.powi((half - r) as i32);
        prop_assert!(rel(slice_out_probability(&dp, r).unwrap(), direct) < 1e-10);
        prop_assert!(rel(ln_slice_size(levels, r).unwrap().exp(), slice_size(levels, r).unwrap() as f64) < 1e-10);
    }
}
