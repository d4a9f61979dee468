//! Strategies and property bodies shared by the property tests and the
//! acceptance runner.

#![allow(dead_code)]

use hamfix_core::cohomology::condition_d_offset;
use hamfix_core::document::InputDocument;
use hamfix_core::models::{expected_weights_cpn, expected_weights_quadric};
use hamfix_core::solver::{enumerate_weight_systems, infer_moment_values, EnumerationOptions};
use hamfix_core::{
    c1_coefficient, chern_coefficients, cpn_model, quadric_model, ring_coefficients, validate, vanishing_battery,
    FixedPointData, Rat, RingSpec,
};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Distinct parameters in `-8..=8` for `CP^n`, `n` in `1..=max_n`.
pub fn cpn_b(max_n: usize) -> impl Strategy<Value = Vec<i64>> {
    (1..=max_n).prop_flat_map(|n| proptest::sample::subsequence((-8..=8).collect::<Vec<i64>>(), n + 1))
}

/// `(n, b)` for the quadric, odd `n` in `3..=max_n`, parameters of distinct
/// absolute value in `1..=8` with random signs.
pub fn quadric_b(max_n: usize) -> impl Strategy<Value = (usize, Vec<i64>)> {
    let odd: Vec<usize> = (3..=max_n).filter(|n| n % 2 == 1).collect();
    proptest::sample::select(odd).prop_flat_map(|n| {
        let k = n.div_ceil(2);
        (
            Just(n),
            proptest::sample::subsequence((1..=8).collect::<Vec<i64>>(), k),
            proptest::collection::vec(any::<bool>(), k),
        )
            .prop_map(|(n, mags, signs)| {
                let b = mags
                    .into_iter()
                    .zip(signs)
                    .map(|(m, s)| if s { -m } else { m })
                    .collect();
                (n, b)
            })
    })
}

pub fn model() -> impl Strategy<Value = FixedPointData> {
    prop_oneof![
        cpn_b(5).prop_map(|b| cpn_model(&b).unwrap()),
        quadric_b(5).prop_map(|(n, b)| quadric_model(n, &b).unwrap()),
    ]
}

pub fn shift() -> impl Strategy<Value = Rat> {
    (-50i64..=50, 1i64..=7).prop_map(|(p, q)| Rat::from_parts(p, q).unwrap())
}

fn integer_phis(data: &FixedPointData) -> Vec<i64> {
    data.points()
        .iter()
        .map(|p| p.moment_value().to_i64().expect("integral model"))
        .collect()
}

/// Validation, the battery and the ring invariants do not see a translation
/// of the moment map; `d` moves by `C` times the shift.
pub fn translation_invariance(data: &FixedPointData, t: &Rat) -> Result<(), TestCaseError> {
    let moved = data.translated(t);
    prop_assert_eq!(validate(&moved), validate(data));
    prop_assert_eq!(vanishing_battery(&moved).unwrap(), vanishing_battery(data).unwrap());
    let c = c1_coefficient(data).unwrap();
    prop_assert_eq!(c1_coefficient(&moved).unwrap(), c.clone());
    prop_assert_eq!(
        condition_d_offset(&moved).unwrap(),
        condition_d_offset(data).unwrap() + &c * t
    );
    prop_assert_eq!(ring_coefficients(&moved).unwrap(), ring_coefficients(data).unwrap());
    prop_assert_eq!(chern_coefficients(&moved).unwrap(), chern_coefficients(data).unwrap());
    Ok(())
}

/// The weights a ring forces on a model's moment values are the model's.
pub fn model_round_trip_cpn(b: &[i64]) -> Result<(), TestCaseError> {
    let model = cpn_model(b).unwrap();
    prop_assert_eq!(expected_weights_cpn(&integer_phis(&model)).unwrap(), model);
    Ok(())
}

pub fn model_round_trip_quadric(n: usize, b: &[i64]) -> Result<(), TestCaseError> {
    let model = quadric_model(n, b).unwrap();
    prop_assert_eq!(expected_weights_quadric(&integer_phis(&model)).unwrap(), model);
    Ok(())
}

/// Moment values recovered from weights alone agree with the normalized
/// model.
pub fn infer_round_trip(data: &FixedPointData) -> Result<(), TestCaseError> {
    let weights: Vec<Vec<i64>> = data.points().iter().map(|p| p.weights().to_vec()).collect();
    let inferred = infer_moment_values(&weights).unwrap();
    prop_assert_eq!(inferred.data, data.normalized());
    Ok(())
}

/// Canonical JSON parses back to the same document and re-serializes
/// byte for byte.
pub fn json_round_trip(data: &FixedPointData, t: &Rat) -> Result<(), TestCaseError> {
    let moved = data.translated(t);
    let doc = InputDocument::from_data(&moved, None);
    let text = doc.to_canonical_json();
    let parsed = InputDocument::parse(&text).unwrap();
    prop_assert_eq!(&parsed, &doc);
    prop_assert_eq!(parsed.to_data().unwrap(), moved);
    prop_assert_eq!(parsed.to_canonical_json(), text);
    Ok(())
}

/// Strictly increasing moment values with small gaps.
pub fn small_phis(max_n: usize, max_gap: i64) -> impl Strategy<Value = Vec<i64>> {
    (1..=max_n, -5i64..=5).prop_flat_map(move |(n, start)| {
        proptest::collection::vec(1..=max_gap, n).prop_map(move |gaps| {
            let mut phis = vec![start];
            for g in gaps {
                phis.push(phis.last().unwrap() + g);
            }
            phis
        })
    })
}

/// The solver returns the same list whatever the number of workers.
pub fn jobs_independence(phis: &[i64], jobs: usize) -> Result<(), TestCaseError> {
    let n = phis.len() - 1;
    let mut specs = vec![RingSpec::projective_space(n).unwrap()];
    if n >= 3 && n % 2 == 1 {
        specs.push(RingSpec::quadric(n).unwrap());
    }
    for spec in specs {
        let one = enumerate_weight_systems(&spec, phis, &EnumerationOptions::default()).unwrap();
        let many = enumerate_weight_systems(
            &spec,
            phis,
            &EnumerationOptions {
                jobs,
                ..Default::default()
            },
        )
        .unwrap();
        prop_assert_eq!(one.systems, many.systems);
    }
    Ok(())
}
