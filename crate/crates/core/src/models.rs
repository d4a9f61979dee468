//! Standard circle actions on `CP^n` and on the odd-dimensional quadric
//! `G̃_2(R^{n+2})`, and the weight systems they force from moment values.

use num_bigint::BigInt;

use crate::cohomology::{RingKind, RingSpec};
use crate::data::FixedPointData;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("need at least two parameters, got {0}")]
    TooFewParameters(usize),
    #[error("parameter {0} appears more than once")]
    DuplicateB(i64),
    #[error("the quadric needs odd n, got n = {0}")]
    EvenN(usize),
    #[error("the quadric needs n >= 3, got n = {0}")]
    QuadricTooSmall(usize),
    #[error("expected {expected} parameters for n = {n}, got {found}")]
    WrongParameterCount { n: usize, expected: usize, found: usize },
    #[error("quadric parameters must be non-zero")]
    ZeroB,
    #[error("quadric parameters must be distinct in absolute value; |{0}| repeats")]
    DuplicateAbsB(i64),
    #[error("moment values must be strictly increasing; position {0} is not")]
    NonIncreasing(usize),
    #[error("half weight between P_{lower} and P_{upper} is not an integer: ({difference})/2")]
    OddHalfWeight { lower: usize, upper: usize, difference: i64 },
    #[error("integer overflow while forming weights")]
    Overflow,
}

fn diff(a: i64, b: i64) -> Result<i64, ModelError> {
    a.checked_sub(b).ok_or(ModelError::Overflow)
}

fn build(n: usize, points: Vec<(i64, Vec<i64>)>) -> FixedPointData {
    FixedPointData::new(
        n,
        points.into_iter().map(|(phi, w)| (Rat::from(phi), w)).collect(),
    )
    .expect("model constructors emit n + 1 points with n weights each")
}

fn check_increasing(phis: &[i64]) -> Result<(), ModelError> {
    match phis.windows(2).position(|w| w[0] >= w[1]) {
        Some(i) => Err(ModelError::NonIncreasing(i + 1)),
        None => Ok(()),
    }
}

/// The action `λ·[z_0 : … : z_n] = [λ^{b_0} z_0 : … : λ^{b_n} z_n]` on `CP^n`.
///
/// `b` is sorted ascending; `P_i` has moment value `b_i` and weights
/// `{b_j − b_i}_{j≠i}`.
pub fn cpn_model(b: &[i64]) -> Result<FixedPointData, ModelError> {
    if b.len() < 2 {
        return Err(ModelError::TooFewParameters(b.len()));
    }
    let mut sorted = b.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(ModelError::DuplicateB(w[0]));
    }
    expected_weights_cpn(&sorted)
}

/// The action on `G̃_2(R^{n+2})` induced by rotating the planes of
/// `R × C^{(n+1)/2}` with speeds `b_0, …, b_{(n-1)/2}`.
///
/// Signs of `b` are dropped and the values sorted so that
/// `b_0 > b_1 > ⋯ > 0`; the moment values are then
/// `−b_0 < ⋯ < −b_{(n−1)/2} < b_{(n−1)/2} < ⋯ < b_0`.
pub fn quadric_model(n: usize, b: &[i64]) -> Result<FixedPointData, ModelError> {
    check_quadric_n(n)?;
    let half = n.div_ceil(2);
    if b.len() != half {
        return Err(ModelError::WrongParameterCount {
            n,
            expected: half,
            found: b.len(),
        });
    }
    if b.contains(&0) {
        return Err(ModelError::ZeroB);
    }
    let mut speeds: Vec<i64> = b
        .iter()
        .map(|v| v.checked_abs().ok_or(ModelError::Overflow))
        .collect::<Result<_, _>>()?;
    speeds.sort_unstable_by(|a, b| b.cmp(a));
    if let Some(w) = speeds.windows(2).find(|w| w[0] == w[1]) {
        return Err(ModelError::DuplicateAbsB(w[0]));
    }

    let mut points: Vec<(i64, Vec<i64>)> = vec![(0, Vec::new()); n + 1];
    for (i, &bi) in speeds.iter().enumerate() {
        let mut low = Vec::with_capacity(n);
        let mut high = Vec::with_capacity(n);
        for (j, &bj) in speeds.iter().enumerate() {
            if j == i {
                continue;
            }
            low.push(bj.checked_add(bi).ok_or(ModelError::Overflow)?);
            low.push(diff(bi, bj)?);
            high.push(diff(bj, bi)?);
            high.push(diff(-bj, bi)?);
        }
        low.push(bi);
        high.push(-bi);
        points[i] = (-bi, low);
        points[n - i] = (bi, high);
    }
    Ok(build(n, points))
}

fn check_quadric_n(n: usize) -> Result<(), ModelError> {
    if n.is_multiple_of(2) {
        return Err(ModelError::EvenN(n));
    }
    if n < 3 {
        return Err(ModelError::QuadricTooSmall(n));
    }
    Ok(())
}

/// Weights `{φ_j − φ_i}_{j≠i}` at every point: the only weight system
/// compatible with the cohomology ring of `CP^n`.
pub fn expected_weights_cpn(phis: &[i64]) -> Result<FixedPointData, ModelError> {
    if phis.len() < 2 {
        return Err(ModelError::TooFewParameters(phis.len()));
    }
    check_increasing(phis)?;
    let n = phis.len() - 1;
    let points = phis
        .iter()
        .enumerate()
        .map(|(i, &phi_i)| {
            let weights = phis
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &phi_j)| diff(phi_j, phi_i))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((phi_i, weights))
        })
        .collect::<Result<Vec<_>, ModelError>>()?;
    Ok(build(n, points))
}

/// Weights `{φ_j − φ_i}_{j≠i, n−i} ∪ {(φ_{n−i} − φ_i)/2}`: the only weight
/// system compatible with the cohomology ring of the odd quadric.
pub fn expected_weights_quadric(phis: &[i64]) -> Result<FixedPointData, ModelError> {
    if phis.len() < 2 {
        return Err(ModelError::TooFewParameters(phis.len()));
    }
    let n = phis.len() - 1;
    check_quadric_n(n)?;
    check_increasing(phis)?;
    let points = (0..=n)
        .map(|i| {
            let partner = n - i;
            let mut weights = Vec::with_capacity(n);
            for (j, &phi_j) in phis.iter().enumerate() {
                if j != i && j != partner {
                    weights.push(diff(phi_j, phis[i])?);
                }
            }
            let gap = diff(phis[partner], phis[i])?;
            if gap % 2 != 0 {
                return Err(ModelError::OddHalfWeight {
                    lower: i.min(partner),
                    upper: i.max(partner),
                    difference: gap.abs(),
                });
            }
            weights.push(gap / 2);
            Ok((phis[i], weights))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(build(n, points))
}

/// The weight system a ring of type `ProjectiveSpace` or `Quadric` forces;
/// `None` for other rings.
pub fn expected_weights(spec: &RingSpec, phis: &[i64]) -> Option<Result<FixedPointData, ModelError>> {
    match spec.kind {
        RingKind::ProjectiveSpace => Some(expected_weights_cpn(phis)),
        RingKind::Quadric => Some(expected_weights_quadric(phis)),
        RingKind::Other(_) => None,
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// `γ_i = C(n+1, i)`: `c(CP^n) = (1 + x)^{n+1}`.
pub fn cpn_chern_coefficients(n: usize) -> Vec<Rat> {
    (1..=n as u64).map(|i| Rat::from_integer(binomial(n as u64 + 1, i))).collect()
}

/// Coefficients of `(1 + x)^{n+2} / (1 + 2x)` in degrees `1..=n`: the total
/// Chern class of the quadric hypersurface in `CP^{n+1}`.
pub fn quadric_chern_coefficients(n: usize) -> Vec<Rat> {
    let m = n as u64 + 2;
    (1..=n as u64)
        .map(|i| {
            let total: BigInt = (0..=i)
                .map(|k| binomial(m, k) * BigInt::from(-2).pow((i - k) as u32))
                .sum();
            Rat::from_integer(total)
        })
        .collect()
}

/// `c_1 = (n+1)x` for `CP^n` and `nx` for the quadric.
pub fn standard_c1(spec: &RingSpec) -> Option<Rat> {
    match spec.kind {
        RingKind::ProjectiveSpace => Some(Rat::from_integer(spec.n as u64 + 1)),
        RingKind::Quadric => Some(Rat::from_integer(spec.n as u64)),
        RingKind::Other(_) => None,
    }
}

pub fn standard_chern_coefficients(spec: &RingSpec) -> Option<Vec<Rat>> {
    match spec.kind {
        RingKind::ProjectiveSpace => Some(cpn_chern_coefficients(spec.n)),
        RingKind::Quadric => Some(quadric_chern_coefficients(spec.n)),
        RingKind::Other(_) => None,
    }
}
