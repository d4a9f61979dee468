//! The fixed point data model and its validation rules.
//!
//! A [`FixedPointData`] records, for each of the `n + 1` fixed points of a
//! circle action on a `2n`-dimensional manifold, its moment value and the
//! multiset of `n` integer weights of the isotropy representation. Nothing
//! else about the manifold is stored.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::rat::Rat;

/// Raised when the input does not even have the right shape to be checked.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("n must be at least 1")]
    ZeroDimension,
    #[error("expected {expected} fixed points (n + 1), found {found}")]
    WrongPointCount { expected: usize, found: usize },
    #[error("point {point} has {found} weights, expected {expected}")]
    WrongWeightCount { point: usize, expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("point index {index} out of range 0..={n}")]
pub struct IndexOutOfRange {
    pub index: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedPoint {
    index: usize,
    moment_value: Rat,
    /// Sorted ascending.
    weights: Vec<i64>,
}

impl FixedPoint {
    fn new(index: usize, moment_value: Rat, mut weights: Vec<i64>) -> Self {
        weights.sort_unstable();
        FixedPoint {
            index,
            moment_value,
            weights,
        }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn moment_value(&self) -> &Rat {
        &self.moment_value
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Half the Morse index of the moment map at this point.
    pub fn negative_count(&self) -> usize {
        self.weights.iter().filter(|&&w| w < 0).count()
    }

    pub fn gamma(&self) -> Rat {
        Rat::from_integer(self.weights.iter().map(|&w| BigInt::from(w)).sum::<BigInt>())
    }

    pub fn lambda_all(&self) -> Rat {
        product_where(&self.weights, |_| true)
    }

    pub fn lambda_minus(&self) -> Rat {
        product_where(&self.weights, |w| w < 0)
    }

    pub fn lambda_plus(&self) -> Rat {
        product_where(&self.weights, |w| w > 0)
    }

    /// Elementary symmetric polynomials `σ_0, …, σ_n` of the weights; `σ_k`
    /// is the coefficient of `t^k` in the restriction of the equivariant
    /// total Chern class to this point.
    pub fn elementary_symmetric(&self) -> Vec<BigInt> {
        let mut sigma = vec![BigInt::zero(); self.weights.len() + 1];
        sigma[0] = BigInt::one();
        for (seen, &w) in self.weights.iter().enumerate() {
            let w = BigInt::from(w);
            for k in (1..=seen + 1).rev() {
                let lower = &sigma[k - 1] * &w;
                sigma[k] += lower;
            }
        }
        sigma
    }
}

fn product_where(weights: &[i64], keep: impl Fn(i64) -> bool) -> Rat {
    Rat::from_integer(
        weights
            .iter()
            .copied()
            .filter(|&w| keep(w))
            .map(BigInt::from)
            .product::<BigInt>(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedPointData {
    n: usize,
    points: Vec<FixedPoint>,
}

impl FixedPointData {
    /// Builds the data from `(moment value, weights)` pairs in point order.
    ///
    /// Only the shape is checked here; see [`validate`] for the geometric
    /// rules.
    pub fn new(n: usize, points: Vec<(Rat, Vec<i64>)>) -> Result<Self, StructureError> {
        if n == 0 {
            return Err(StructureError::ZeroDimension);
        }
        if points.len() != n + 1 {
            return Err(StructureError::WrongPointCount {
                expected: n + 1,
                found: points.len(),
            });
        }
        let points = points
            .into_iter()
            .enumerate()
            .map(|(index, (phi, weights))| {
                if weights.len() != n {
                    return Err(StructureError::WrongWeightCount {
                        point: index,
                        expected: n,
                        found: weights.len(),
                    });
                }
                Ok(FixedPoint::new(index, phi, weights))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FixedPointData { n, points })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Result<&FixedPoint, IndexOutOfRange> {
        self.points.get(i).ok_or(IndexOutOfRange { index: i, n: self.n })
    }

    pub fn moment_values(&self) -> Vec<Rat> {
        self.points.iter().map(|p| p.moment_value.clone()).collect()
    }

    pub fn gamma(&self, i: usize) -> Result<Rat, IndexOutOfRange> {
        self.point(i).map(FixedPoint::gamma)
    }

    pub fn lambda_all(&self, i: usize) -> Result<Rat, IndexOutOfRange> {
        self.point(i).map(FixedPoint::lambda_all)
    }

    pub fn lambda_minus(&self, i: usize) -> Result<Rat, IndexOutOfRange> {
        self.point(i).map(FixedPoint::lambda_minus)
    }

    pub fn lambda_plus(&self, i: usize) -> Result<Rat, IndexOutOfRange> {
        self.point(i).map(FixedPoint::lambda_plus)
    }

    /// All `Γ_i` in point order.
    pub fn gammas(&self) -> Vec<Rat> {
        self.points.iter().map(FixedPoint::gamma).collect()
    }

    /// Adds `shift` to every moment value.
    pub fn translated(&self, shift: &Rat) -> Self {
        FixedPointData {
            n: self.n,
            points: self
                .points
                .iter()
                .map(|p| FixedPoint {
                    index: p.index,
                    moment_value: &p.moment_value + shift,
                    weights: p.weights.clone(),
                })
                .collect(),
        }
    }

    /// Translates so that `φ(P_0) = 0`.
    pub fn normalized(&self) -> Self {
        let shift = -self.points[0].moment_value.clone();
        self.translated(&shift)
    }

    /// The weight lists of all points concatenated; used as the canonical
    /// sort key for collections of weight systems.
    pub fn flattened_weights(&self) -> Vec<i64> {
        self.points.iter().flat_map(|p| p.weights.iter().copied()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationOptions {
    /// Require every `φ(P_i) − φ(P_j)` to be an integer (primitive integral
    /// symplectic class).
    pub require_integral_differences: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            require_integral_differences: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Violation {
    MomentNotIncreasing { lower: usize, upper: usize, lower_value: Rat, upper_value: Rat },
    NonIntegralDifference { point: usize, difference: Rat },
    ZeroWeight { point: usize },
    NegativeCount { point: usize, found: usize, expected: usize },
    IndexBound { point: usize, index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MomentNotIncreasing {
                lower,
                upper,
                lower_value,
                upper_value,
            } => write!(
                f,
                "moment values not strictly increasing: phi(P_{lower}) = {lower_value} >= phi(P_{upper}) = {upper_value}"
            ),
            Violation::NonIntegralDifference { point, difference } => write!(
                f,
                "moment value difference phi(P_{point}) - phi(P_0) = {difference} is not an integer"
            ),
            Violation::ZeroWeight { point } => write!(f, "zero weight at point {point}"),
            Violation::NegativeCount {
                point,
                found,
                expected,
            } => write!(
                f,
                "negative-weight count at P_{point} is {found}, expected {expected}"
            ),
            Violation::IndexBound { point, index } => write!(
                f,
                "index bound violated at P_{point}: {index} negative weights but only {point} fixed points below"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate(data: &FixedPointData) -> ValidationReport {
    validate_with(data, ValidationOptions::default())
}

pub fn validate_with(data: &FixedPointData, options: ValidationOptions) -> ValidationReport {
    let mut violations = Vec::new();
    let points = data.points();

    for pair in points.windows(2) {
        if pair[0].moment_value >= pair[1].moment_value {
            violations.push(Violation::MomentNotIncreasing {
                lower: pair[0].index,
                upper: pair[1].index,
                lower_value: pair[0].moment_value.clone(),
                upper_value: pair[1].moment_value.clone(),
            });
        }
    }

    if options.require_integral_differences {
        // Integrality of all pairwise differences is equivalent to
        // integrality of the differences against P_0.
        let base = &points[0].moment_value;
        for p in &points[1..] {
            let difference = &p.moment_value - base;
            if !difference.is_integer() {
                violations.push(Violation::NonIntegralDifference {
                    point: p.index,
                    difference,
                });
            }
        }
    }

    for p in points {
        if p.weights.contains(&0) {
            violations.push(Violation::ZeroWeight { point: p.index });
        }
        let found = p.negative_count();
        if found != p.index {
            violations.push(Violation::NegativeCount {
                point: p.index,
                found,
                expected: p.index,
            });
        }
        // Isolated fixed points below P_i each contribute 2 to the bound.
        if found > p.index {
            violations.push(Violation::IndexBound {
                point: p.index,
                index: found,
            });
        }
    }

    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp2() -> FixedPointData {
        FixedPointData::new(
            2,
            vec![
                (Rat::from(0), vec![1, 2]),
                (Rat::from(1), vec![-1, 1]),
                (Rat::from(2), vec![-2, -1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn structure_errors() {
        assert_eq!(
            FixedPointData::new(0, vec![(Rat::zero(), vec![])]),
            Err(StructureError::ZeroDimension)
        );
        assert_eq!(
            FixedPointData::new(1, vec![(Rat::zero(), vec![1])]),
            Err(StructureError::WrongPointCount { expected: 2, found: 1 })
        );
        assert_eq!(
            FixedPointData::new(1, vec![(Rat::zero(), vec![1]), (Rat::one(), vec![-1, 2])]),
            Err(StructureError::WrongWeightCount {
                point: 1,
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn cp2_is_valid() {
        assert!(validate(&cp2()).is_valid());
    }

    #[test]
    fn wrong_negative_count_is_reported() {
        let data = FixedPointData::new(
            2,
            vec![
                (Rat::from(0), vec![1, 2]),
                (Rat::from(1), vec![-1, -1]),
                (Rat::from(2), vec![-2, -1]),
            ],
        )
        .unwrap();
        let report = validate(&data);
        let messages: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        assert!(messages.contains(&"negative-weight count at P_1 is 2, expected 1".to_string()));
        assert!(report
            .violations
            .contains(&Violation::IndexBound { point: 1, index: 2 }));
    }

    #[test]
    fn equal_moment_values_are_reported() {
        let data = FixedPointData::new(
            2,
            vec![
                (Rat::from(0), vec![1, 2]),
                (Rat::from(0), vec![-1, 1]),
                (Rat::from(2), vec![-2, -1]),
            ],
        )
        .unwrap();
        let report = validate(&data);
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0]
            .to_string()
            .starts_with("moment values not strictly increasing"));
    }

    #[test]
    fn zero_weight_and_integrality() {
        let data = FixedPointData::new(
            1,
            vec![(Rat::from(0), vec![1]), ("1/2".parse().unwrap(), vec![0])],
        )
        .unwrap();
        let report = validate(&data);
        let messages: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        assert!(messages.contains(&"zero weight at point 1".to_string()));
        assert!(report.violations.iter().any(|v| matches!(v, Violation::NonIntegralDifference { point: 1, .. })));

        let relaxed = validate_with(
            &data,
            ValidationOptions {
                require_integral_differences: false,
            },
        );
        assert!(!relaxed
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NonIntegralDifference { .. })));
    }

    #[test]
    fn symbols() {
        let data = cp2();
        assert_eq!(data.gamma(0).unwrap(), Rat::from(3));
        assert_eq!(data.gamma(1).unwrap(), Rat::zero());
        assert_eq!(data.lambda_minus(0).unwrap(), Rat::one());
        assert_eq!(data.lambda_plus(2).unwrap(), Rat::one());
        assert_eq!(data.lambda_all(2).unwrap(), Rat::from(2));
        assert_eq!(data.lambda_minus(2).unwrap(), Rat::from(2));
        assert_eq!(data.gamma(3), Err(IndexOutOfRange { index: 3, n: 2 }));
    }

    #[test]
    fn elementary_symmetric_matches_expansion() {
        // (1 + 3t)(1 - 2t)(1 + 5t) = 1 + 6t - 1t^2 - 30t^3
        let data = FixedPointData::new(
            3,
            vec![
                (Rat::from(0), vec![3, -2, 5]),
                (Rat::from(1), vec![1, 1, 1]),
                (Rat::from(2), vec![1, 1, 1]),
                (Rat::from(3), vec![1, 1, 1]),
            ],
        )
        .unwrap();
        let sigma = data.points()[0].elementary_symmetric();
        let expected: Vec<BigInt> = [1, 6, -1, -30].into_iter().map(BigInt::from).collect();
        assert_eq!(sigma, expected);
    }

    #[test]
    fn weights_are_stored_sorted() {
        let data = FixedPointData::new(1, vec![(Rat::from(0), vec![5]), (Rat::from(5), vec![-5])]).unwrap();
        assert_eq!(data.points()[0].weights(), &[5]);
        let data = FixedPointData::new(
            2,
            vec![
                (Rat::from(0), vec![2, 1]),
                (Rat::from(1), vec![1, -1]),
                (Rat::from(2), vec![-1, -2]),
            ],
        )
        .unwrap();
        assert_eq!(data, cp2());
    }
}
