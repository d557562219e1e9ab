use proptest::prelude::*;

use nls_thermo::fluctuation::{
    clausius_bounds, heat_flow_check, j_heat_expectation, kl_monotonicity_check,
    mean_entropy_change, mean_heat,
};
use nls_thermo::genrand::{
    random_distribution, random_gibbs_instance, random_stochastic_with, rng_from_seed,
};
use nls_thermo::instance::InstanceFile;
use nls_thermo::nls::{kl_divergence, make_gibbs_state};
use nls_thermo::response::slope_symmetrized;
use nls_thermo::sweep::{read_csv, sweep, write_csv};
use nls_thermo::{LevelSystem, ProbabilityVector};

fn level_system() -> impl Strategy<Value = LevelSystem> {
    (2usize..10)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(-50.0f64..50.0, n),
                prop::collection::vec(1u32..5, n),
            )
        })
        .prop_map(|(e, d)| LevelSystem::new(e, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn gibbs_state_is_normalized(system in level_system(), beta in -200.0f64..200.0) {
        let state = make_gibbs_state(&system, beta).unwrap();
        let p = state.probabilities();
        let total: f64 = p.iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        prop_assert!(p.iter().all(|x| (0.0..=1.0).contains(x)));
        prop_assert!(state.log_partition_function().is_finite());
    }

    #[test]
    fn propagation_keeps_normalization(seed in any::<u64>(), n in 2usize..12) {
        let mut rng = rng_from_seed(seed);
        let t = random_stochastic_with(&mut rng, n);
        let p = random_distribution(&mut rng, n);
        let q = t.propagate(&p).unwrap();
        let total: f64 = q.iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn kl_is_nonnegative_and_contracts(seed in any::<u64>(), n in 2usize..12) {
        let mut rng = rng_from_seed(seed);
        let t = random_stochastic_with(&mut rng, n);
        let p = random_distribution(&mut rng, n);
        let p0 = random_distribution(&mut rng, n);
        prop_assert!(kl_divergence(&p, &p0).unwrap() >= 0.0);
        prop_assert!(kl_divergence(&p, &p).unwrap().abs() <= 1e-15);
        prop_assert!(kl_monotonicity_check(&t, &p, &p0).unwrap().holds);
    }

    #[test]
    fn fluctuation_relations_hold(seed in 0u64..10_000, n in 2usize..9, beta in -10.0f64..10.0) {
        let g = random_gibbs_instance(n, seed).unwrap().gibbs;
        prop_assert!((j_heat_expectation(&g, beta).unwrap() - 1.0).abs() <= 1e-10);
        prop_assert!(heat_flow_check(&g, beta).unwrap().holds);
        let b = clausius_bounds(&g, beta).unwrap();
        prop_assert!(b.first.holds && b.second.holds);
    }

    #[test]
    fn bath_temperature_is_a_fixed_point(seed in 0u64..10_000, n in 2usize..9) {
        let g = random_gibbs_instance(n, seed).unwrap().gibbs;
        prop_assert!(mean_heat(&g, g.beta0()).unwrap().abs() <= 1e-12);
        prop_assert!(mean_entropy_change(&g, g.beta0()).unwrap().abs() <= 1e-12);
        prop_assert!(slope_symmetrized(&g) >= 0.0);
    }

    #[test]
    fn instance_json_round_trip(seed in 0u64..10_000, n in 2usize..9) {
        let g = random_gibbs_instance(n, seed).unwrap().gibbs;
        let file = InstanceFile::from_gibbs(&g);
        let parsed = InstanceFile::from_json(&file.to_json()).unwrap();
        prop_assert_eq!(&parsed, &file);
        let again = parsed.to_gibbs(1e-10).unwrap();
        prop_assert_eq!(again.matrix(), g.matrix());
    }

    #[test]
    fn sweep_csv_round_trip(seed in 0u64..1_000, steps in 2usize..30) {
        let g = random_gibbs_instance(4, seed).unwrap().gibbs;
        let rows = sweep(&g, -3.0, 3.0, steps).unwrap();
        prop_assert!(rows.iter().all(|r| r.is_ordered()));
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let parsed = read_csv(std::str::from_utf8(&buf).unwrap()).unwrap();
        prop_assert_eq!(parsed, rows);
    }

    #[test]
    fn from_unnormalized_rescales(weights in prop::collection::vec(0.001f64..10.0, 2..10)) {
        let p = ProbabilityVector::from_unnormalized(weights.clone()).unwrap();
        let total: f64 = weights.iter().sum();
        for (a, w) in p.iter().zip(&weights) {
            prop_assert!((a - w / total).abs() <= 1e-15);
        }
    }
}
