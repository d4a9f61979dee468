//! Localization sums over the fixed points.
//!
//! For an equivariant class of degree `2d` whose restriction to the fixed
//! point `P` is `a_P t^d`, the integral over the manifold is
//! `Σ_P a_P / Λ_P`, where `Λ_P` is the product of the weights at `P`. When
//! `d < n` the integral must vanish, and for `d = n` it is an ordinary
//! characteristic number.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::data::FixedPointData;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalizationError {
    #[error("no restriction given for point {point}")]
    MissingRestriction { point: usize },
    #[error("point {point} has a zero weight; its weight product vanishes")]
    ZeroWeight { point: usize },
}

/// Restrictions `a_P t^d` of a homogeneous equivariant class to the fixed
/// points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantRestriction {
    pub degree: u32,
    pub coefficients: BTreeMap<usize, Rat>,
}

impl EquivariantRestriction {
    pub fn new(degree: u32, coefficients: BTreeMap<usize, Rat>) -> Self {
        EquivariantRestriction { degree, coefficients }
    }

    pub fn from_values(degree: u32, values: impl IntoIterator<Item = Rat>) -> Self {
        EquivariantRestriction {
            degree,
            coefficients: values.into_iter().enumerate().collect(),
        }
    }

    /// `[ω − φt]^power`, restricting to `(−φ(P))^power`.
    pub fn moment_class_power(data: &FixedPointData, power: u32) -> Self {
        Self::monomial(data, 0, power)
    }

    /// `c_1^{S^1}(M)^a · [ω − φt]^b`, restricting to `Γ_P^a (−φ(P))^b`.
    pub fn monomial(data: &FixedPointData, chern_power: u32, moment_power: u32) -> Self {
        Self::from_values(
            chern_power + moment_power,
            data.points()
                .iter()
                .map(|p| p.gamma().pow(chern_power) * (-p.moment_value()).pow(moment_power)),
        )
    }

    pub fn scaled(&self, factor: &Rat) -> Self {
        EquivariantRestriction {
            degree: self.degree,
            coefficients: self
                .coefficients
                .iter()
                .map(|(&k, v)| (k, v * factor))
                .collect(),
        }
    }
}

/// `Σ_P a_P / Λ_P` over all fixed points.
pub fn abbv_sum(data: &FixedPointData, cls: &EquivariantRestriction) -> Result<Rat, LocalizationError> {
    let mut total = Rat::zero();
    for p in data.points() {
        let a = cls
            .coefficients
            .get(&p.index())
            .ok_or(LocalizationError::MissingRestriction { point: p.index() })?;
        let lambda = p.lambda_all();
        let term = a
            .checked_div(&lambda)
            .ok_or(LocalizationError::ZeroWeight { point: p.index() })?;
        total = total + term;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatteryFailure {
    /// Power of `c_1^{S^1}`.
    pub chern_power: u32,
    /// Power of `[ω − φt]`.
    pub moment_power: u32,
    pub value: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatteryReport {
    /// Number of `(a, b)` pairs with `a + b < n` that were evaluated.
    pub pairs_checked: usize,
    /// Failed pairs in lexicographic `(a, b)` order.
    pub failures: Vec<BatteryFailure>,
    /// `Σ_P (−φ_P)^n / Λ_P`, the symplectic volume `∫ ω^n`.
    pub volume: Rat,
}

impl BatteryReport {
    pub fn volume_positive(&self) -> bool {
        self.volume.is_positive()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.volume_positive()
    }
}

/// Checks that every monomial `c_1^a [ω − φt]^b` of degree below `n`
/// integrates to zero and that the volume is positive.
pub fn vanishing_battery(data: &FixedPointData) -> Result<BatteryReport, LocalizationError> {
    let n = data.n() as u32;
    let mut inverse_lambda = Vec::with_capacity(data.points().len());
    for p in data.points() {
        inverse_lambda.push(
            p.lambda_all()
                .recip()
                .ok_or(LocalizationError::ZeroWeight { point: p.index() })?,
        );
    }
    let gammas = data.gammas();
    let neg_phis: Vec<Rat> = data.points().iter().map(|p| -p.moment_value()).collect();

    let integrate = |a: u32, b: u32| -> Rat {
        gammas
            .iter()
            .zip(&neg_phis)
            .zip(&inverse_lambda)
            .map(|((g, x), inv)| g.pow(a) * x.pow(b) * inv)
            .sum()
    };

    let pairs: Vec<(u32, u32)> = (0..n)
        .flat_map(|a| (0..n - a).map(move |b| (a, b)))
        .collect();
    // `collect` on an indexed parallel iterator keeps the input order.
    let failures: Vec<BatteryFailure> = pairs
        .par_iter()
        .filter_map(|&(a, b)| {
            let value = integrate(a, b);
            (!value.is_zero()).then_some(BatteryFailure {
                chern_power: a,
                moment_power: b,
                value,
            })
        })
        .collect();

    Ok(BatteryReport {
        pairs_checked: pairs.len(),
        failures,
        volume: integrate(0, n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(n: usize, pts: &[(i64, &[i64])]) -> FixedPointData {
        FixedPointData::new(
            n,
            pts.iter().map(|(phi, w)| (Rat::from(*phi), w.to_vec())).collect(),
        )
        .unwrap()
    }

    fn cp1() -> FixedPointData {
        data(1, &[(0, &[1]), (1, &[-1])])
    }

    fn cp2() -> FixedPointData {
        data(2, &[(0, &[1, 2]), (1, &[-1, 1]), (2, &[-2, -1])])
    }

    fn q3() -> FixedPointData {
        data(
            3,
            &[(-2, &[3, 1, 2]), (-1, &[3, -1, 1]), (1, &[1, -3, -1]), (2, &[-1, -3, -2])],
        )
    }

    #[test]
    fn area_of_the_sphere() {
        let cls = EquivariantRestriction::moment_class_power(&cp1(), 1);
        assert_eq!(cls.coefficients.values().cloned().collect::<Vec<_>>(), vec![Rat::zero(), Rat::from(-1)]);
        assert_eq!(abbv_sum(&cp1(), &cls).unwrap(), Rat::one());
    }

    #[test]
    fn degree_of_the_quadric() {
        let cls = EquivariantRestriction::moment_class_power(&q3(), 3);
        assert_eq!(abbv_sum(&q3(), &cls).unwrap(), Rat::from(2));
    }

    #[test]
    fn zero_class_integrates_to_zero() {
        let cls = EquivariantRestriction::from_values(2, vec![Rat::zero(); 3]);
        assert_eq!(abbv_sum(&cp2(), &cls).unwrap(), Rat::zero());
    }

    #[test]
    fn missing_restriction() {
        let cls = EquivariantRestriction::from_values(1, vec![Rat::one(), Rat::one()]);
        assert_eq!(
            abbv_sum(&cp2(), &cls),
            Err(LocalizationError::MissingRestriction { point: 2 })
        );
    }

    #[test]
    fn battery_on_models() {
        let report = vanishing_battery(&cp2()).unwrap();
        assert_eq!(report.pairs_checked, 3);
        assert!(report.failures.is_empty());
        assert_eq!(report.volume, Rat::one());

        let report = vanishing_battery(&q3()).unwrap();
        assert_eq!(report.pairs_checked, 6);
        assert!(report.passed());
        assert_eq!(report.volume, Rat::from(2));
    }

    #[test]
    fn battery_catches_a_flipped_weight() {
        let bad = data(2, &[(0, &[1, 2]), (1, &[-1, 1]), (2, &[-3, -1])]);
        let report = vanishing_battery(&bad).unwrap();
        // Γ = (3, 0, -4), Λ = (2, -1, 3), -φ = (0, -1, -2)
        let expected: Vec<(u32, u32, &str)> = vec![(0, 0, "-1/6"), (0, 1, "1/3"), (1, 0, "1/6")];
        let got: Vec<(u32, u32, String)> = report
            .failures
            .iter()
            .map(|f| (f.chern_power, f.moment_power, f.value.to_string()))
            .collect();
        let expected: Vec<(u32, u32, String)> =
            expected.into_iter().map(|(a, b, v)| (a, b, v.to_string())).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn battery_zero_weight_is_an_error() {
        let bad = data(1, &[(0, &[0]), (1, &[-1])]);
        assert_eq!(vanishing_battery(&bad), Err(LocalizationError::ZeroWeight { point: 0 }));
    }
}
