use flowsample::generators::{erdos_renyi, pick_source_sink, CapacitySpec, ErConfig};
use flowsample::maxflow::edmonds_karp;
use flowsample::rng::{self, Purpose};
use proptest::prelude::*;

#[test]
fn edge_count_concentrates_around_binomial_mean() {
    // Binomial(9900, 0.5): mean 4950, sd ~49.7.
    let counts: Vec<usize> = (0..50)
        .map(|seed| erdos_renyi(&ErConfig::new(100, 0.5, seed)).unwrap().edge_count())
        .collect();
    let mean = counts.iter().sum::<usize>() as f64 / counts.len() as f64;
    assert!((mean - 4950.0).abs() < 200.0, "mean edge count {mean}");
}

#[test]
fn edge_indicators_are_uncorrelated() {
    let seeds = 10_000;
    let (mut a, mut b, mut ab) = (0.0, 0.0, 0.0);
    for seed in 0..seeds {
        let g = erdos_renyi(&ErConfig::new(6, 0.5, seed)).unwrap();
        let has = |u, v| g.edges().iter().any(|e| e.src == u && e.dst == v);
        let (x, y) = (has(0, 1) as u8 as f64, has(4, 2) as u8 as f64);
        a += x;
        b += y;
        ab += x * y;
    }
    let n = seeds as f64;
    let cov = ab / n - (a / n) * (b / n);
    assert!(cov.abs() < 0.01, "covariance {cov}");
    assert!((a / n - 0.5).abs() < 0.03);
}

#[test]
fn sparse_and_dense_paths_agree_in_distribution() {
    // Just below and at the switch-over probability.
    for &pi in &[0.0099, 0.01] {
        let n = 400;
        let total: usize = (0..20)
            .map(|seed| erdos_renyi(&ErConfig::new(n, pi, seed)).unwrap().edge_count())
            .sum();
        let mean = total as f64 / 20.0;
        let expected = (n * (n - 1)) as f64 * pi;
        // sd of the 20-seed mean is about sqrt(expected / 20).
        assert!(
            (mean - expected).abs() < 4.0 * (expected / 20.0).sqrt(),
            "pi={pi}: {mean} vs {expected}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_graphs_are_valid(n in 2usize..60, pi in 0.0f64..=1.0, seed in any::<u64>(), lo in 0.0f64..3.0, w in 0.0f64..3.0) {
        let cfg = ErConfig::new(n, pi, seed).with_capacity(CapacitySpec::Uniform { lo, hi: lo + w });
        let g = erdos_renyi(&cfg).unwrap();
        prop_assert!(g.validate().is_empty());
        prop_assert_eq!(g.vertex_count(), n);
        prop_assert_eq!(&g, &erdos_renyi(&cfg).unwrap());
    }

    #[test]
    fn unit_flow_bounded_by_terminal_degrees(n in 2usize..80, pi in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = erdos_renyi(&ErConfig::new(n, pi, seed)).unwrap();
        let (s, t) = pick_source_sink(n, &mut rng::stream(seed, Purpose::SourceSink, 0)).unwrap();
        prop_assert_ne!(s, t);
        let f = edmonds_karp(&g, s, t).unwrap().value;
        prop_assert!(f <= g.out_degree(s).min(g.in_degree(t)) as f64);
    }
}

#[test]
fn dense_unit_flow_is_usually_min_degree() {
    let mut equal = 0;
    for seed in 0..30 {
        let g = erdos_renyi(&ErConfig::new(100, 0.5, seed)).unwrap();
        let (s, t) = pick_source_sink(100, &mut rng::stream(seed, Purpose::SourceSink, 0)).unwrap();
        let f = edmonds_karp(&g, s, t).unwrap().value;
        if f == g.out_degree(s).min(g.in_degree(t)) as f64 {
            equal += 1;
        }
    }
    assert!(equal >= 27, "{equal}/30");
}
