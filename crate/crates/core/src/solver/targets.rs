//! Products of negative and positive weights prescribed by a ring.
//!
//! If `α_i = r_i x^i` with `x = [ω]` primitive integral, then combining the
//! generator formula with the constancy of `c_1` forces
//! `Λ_i^- = r_i Π_{j<i}(φ_j − φ_i)`. Running the same argument for `−φ`
//! gives `Λ_i^+ = r_{n−i} Π_{j>i}(φ_j − φ_i)`.

use crate::cohomology::RingSpec;
use crate::rat::Rat;

use super::SolverError;

pub(crate) fn check_phis(spec: &RingSpec, phis: &[i64]) -> Result<(), SolverError> {
    if phis.len() != spec.n + 1 {
        return Err(SolverError::SpecMismatch {
            expected: spec.n + 1,
            found: phis.len(),
        });
    }
    if let Some(i) = phis.windows(2).position(|w| w[0] >= w[1]) {
        return Err(SolverError::NonIncreasing(i + 1));
    }
    Ok(())
}

fn product_of_gaps(phis: &[i64], i: usize, others: impl Iterator<Item = usize>) -> Rat {
    others
        .map(|j| Rat::from(phis[j]) - Rat::from(phis[i]))
        .product()
}

/// `Λ_i^-` for `i = 0..=n`.
pub fn lambda_minus_targets(spec: &RingSpec, phis: &[i64]) -> Result<Vec<Rat>, SolverError> {
    check_phis(spec, phis)?;
    let ratios = spec.ratios();
    Ok((0..=spec.n)
        .map(|i| &ratios[i] * product_of_gaps(phis, i, 0..i))
        .collect())
}

/// `Λ_i^+` for `i = 0..=n`.
pub fn positive_targets(spec: &RingSpec, phis: &[i64]) -> Result<Vec<Rat>, SolverError> {
    check_phis(spec, phis)?;
    let ratios = spec.ratios();
    let n = spec.n;
    Ok((0..=n)
        .map(|i| &ratios[n - i] * product_of_gaps(phis, i, i + 1..=n))
        .collect())
}
