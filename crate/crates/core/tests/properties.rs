mod common;

use common::*;
use hamfix_core::models::{standard_c1, standard_chern_coefficients};
use hamfix_core::solver::{enumerate_weight_systems, EnumerationOptions};
use hamfix_core::{
    c1_coefficient, chern_coefficients, classify_ring, cpn_model, quadric_model, ring_coefficients, validate,
    vanishing_battery, Rat, RingSpec,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn invariants_ignore_translation(data in model(), t in shift()) {
        translation_invariance(&data, &t)?;
    }

    #[test]
    fn cpn_models_round_trip(b in cpn_b(6)) {
        model_round_trip_cpn(&b)?;
    }

    #[test]
    fn quadric_models_round_trip((n, b) in quadric_b(7)) {
        model_round_trip_quadric(n, &b)?;
    }

    #[test]
    fn documents_round_trip(data in model(), t in shift()) {
        json_round_trip(&data, &t)?;
    }

    #[test]
    fn inference_recovers_normalized_models(data in model()) {
        infer_round_trip(&data)?;
    }

    #[test]
    fn solver_ignores_worker_count(phis in small_phis(4, 4), jobs in 2usize..=4) {
        jobs_independence(&phis, jobs)?;
    }

    #[test]
    fn cpn_models_have_the_standard_invariants(b in cpn_b(6)) {
        let data = cpn_model(&b).unwrap();
        let spec = RingSpec::projective_space(data.n()).unwrap();
        prop_assert!(validate(&data).is_valid());
        prop_assert_eq!(c1_coefficient(&data).unwrap(), standard_c1(&spec).unwrap());
        let rc = ring_coefficients(&data).unwrap();
        prop_assert_eq!(classify_ring(&rc), spec.clone());
        prop_assert_eq!(chern_coefficients(&data).unwrap().chern_coeffs, standard_chern_coefficients(&spec).unwrap());
        let battery = vanishing_battery(&data).unwrap();
        prop_assert!(battery.failures.is_empty());
        prop_assert_eq!(battery.volume, Rat::one());
    }

    #[test]
    fn quadric_models_have_the_standard_invariants((n, b) in quadric_b(7)) {
        let data = quadric_model(n, &b).unwrap();
        let spec = RingSpec::quadric(n).unwrap();
        prop_assert!(validate(&data).is_valid());
        prop_assert_eq!(c1_coefficient(&data).unwrap(), standard_c1(&spec).unwrap());
        prop_assert_eq!(classify_ring(&ring_coefficients(&data).unwrap()), spec.clone());
        prop_assert_eq!(chern_coefficients(&data).unwrap().chern_coeffs, standard_chern_coefficients(&spec).unwrap());
        let battery = vanishing_battery(&data).unwrap();
        prop_assert!(battery.failures.is_empty());
        prop_assert_eq!(battery.volume, Rat::from(2));
    }

    #[test]
    fn every_solver_result_passes_the_checks(phis in small_phis(3, 6)) {
        let spec = RingSpec::projective_space(phis.len() - 1).unwrap();
        let found = enumerate_weight_systems(&spec, &phis, &EnumerationOptions::default()).unwrap();
        prop_assert!(found.systems.len() <= 1);
        for system in &found.systems {
            prop_assert!(validate(system).is_valid());
            prop_assert!(vanishing_battery(system).unwrap().passed());
            prop_assert!(c1_coefficient(system).is_ok());
        }
    }

    #[test]
    fn flipping_a_weight_breaks_something(data in model(), point in 0usize..8, slot in 0usize..8) {
        let point = point % data.points().len();
        let slot = slot % data.n();
        let entries = data
            .points()
            .iter()
            .map(|p| {
                let mut w = p.weights().to_vec();
                if p.index() == point {
                    w[slot] = -w[slot];
                }
                (p.moment_value().clone(), w)
            })
            .collect();
        let broken = hamfix_core::FixedPointData::new(data.n(), entries).unwrap();
        let ok = validate(&broken).is_valid()
            && c1_coefficient(&broken).is_ok()
            && vanishing_battery(&broken).unwrap().passed();
        prop_assert!(!ok);
    }
}
