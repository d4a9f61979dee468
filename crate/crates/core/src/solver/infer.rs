//! Recovering moment values from weights alone.
//!
//! The weight sums satisfy `Γ_i = −Cφ_i + d`, which fixes `φ` up to the
//! scale `C`. Normalizing `[ω]` to the degree two generator pins that scale:
//! `α_1 = x` forces `Λ_1^- = φ_0 − φ_1`.

use serde::Serialize;

use crate::data::FixedPointData;
use crate::rat::Rat;

use super::SolverError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InferredMoments {
    /// Moment values in point order, with `φ(P_0) = 0`.
    pub phis: Vec<Rat>,
    /// The first Chern class coefficient `C`.
    pub c1: Rat,
    /// `order[k]` is the input position of the point placed at index `k`.
    pub order: Vec<usize>,
    #[serde(skip)]
    pub data: FixedPointData,
}

/// Orders the points by decreasing weight sum and solves for the moment
/// values with `φ(P_0) = 0`.
pub fn infer_moment_values(weights: &[Vec<i64>]) -> Result<InferredMoments, SolverError> {
    if weights.len() < 2 {
        return Err(SolverError::WrongShape(format!(
            "need at least two fixed points, got {}",
            weights.len()
        )));
    }
    let n = weights.len() - 1;
    if let Some(bad) = weights.iter().position(|w| w.len() != n) {
        return Err(SolverError::WrongShape(format!(
            "point {bad} has {} weights, expected {n}",
            weights[bad].len()
        )));
    }

    let gamma = |w: &Vec<i64>| w.iter().map(|&x| x as i128).sum::<i128>();
    let mut order: Vec<usize> = (0..=n).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(gamma(&weights[k])));
    for pair in order.windows(2) {
        if gamma(&weights[pair[0]]) == gamma(&weights[pair[1]]) {
            return Err(SolverError::InconsistentGamma {
                first: pair[0].min(pair[1]),
                second: pair[0].max(pair[1]),
            });
        }
    }
    for (index, &k) in order.iter().enumerate() {
        let negatives = weights[k].iter().filter(|&&w| w < 0).count();
        if negatives != index {
            return Err(SolverError::IndexCount {
                input: k,
                index,
                negatives,
            });
        }
    }

    let sorted: Vec<Vec<i64>> = order.iter().map(|&k| weights[k].clone()).collect();
    let gammas: Vec<Rat> = sorted.iter().map(|w| Rat::from_integer(gamma(w))).collect();
    let lambda_minus_1: Rat = sorted[1]
        .iter()
        .filter(|&&w| w < 0)
        .map(|&w| Rat::from(w))
        .product();
    let phi_1 = -lambda_minus_1;
    let c1 = (&gammas[0] - &gammas[1])
        .checked_div(&phi_1)
        .filter(Rat::is_positive)
        .ok_or(SolverError::NoPositiveScale)?;
    let phis: Vec<Rat> = gammas.iter().map(|g| (&gammas[0] - g) / &c1).collect();

    let data = FixedPointData::new(n, phis.iter().cloned().zip(sorted).collect())
        .expect("shape checked above");
    Ok(InferredMoments {
        phis,
        c1,
        order,
        data,
    })
}
