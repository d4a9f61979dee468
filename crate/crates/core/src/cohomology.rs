//! Cohomology ring and Chern class invariants read off from fixed point data.
//!
//! With `n + 1` isolated fixed points, `H^{2i}(M; Z)` is free of rank one for
//! every `i`. Writing `x = [ω]` for the degree two generator, the degree `2i`
//! generator is `α_i = r_i x^i` and the Chern classes are `c_i(M) = γ_i x^i`.
//! Everything here computes `C`, `d`, `r_i` and `γ_i` exactly from the
//! weights and moment values.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::data::FixedPointData;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("no two fixed points have distinct moment values")]
    NoDistinctMomentValues,
    #[error(
        "first Chern class is not a constant multiple of [omega]: pair ({}, {}) gives {}, pair ({}, {}) gives {}",
        first.0, first.1, first.2, second.0, second.1, second.2
    )]
    NonConstantC1 {
        first: (usize, usize, Rat),
        second: (usize, usize, Rat),
    },
    #[error("first Chern class coefficient C = {value} is not positive")]
    NonPositiveC1 { value: Rat },
    #[error("condition D fails at P_{point}: Gamma + C*phi = {found}, expected {expected}")]
    ConditionDViolated { point: usize, expected: Rat, found: Rat },
    #[error("weight sums coincide at P_{i} and P_{j}")]
    DegenerateGamma { i: usize, j: usize },
    #[error("ring coefficient r_{degree} = {value} is not positive")]
    NonPositiveRingCoefficient { degree: usize, value: Rat },
    #[error("P_{point} has a zero weight")]
    ZeroWeight { point: usize },
    #[error("the two Chern class expressions disagree in degree {degree}: {lambda_minus_form} vs {lambda_plus_form}")]
    CrossCheckFailed {
        degree: usize,
        lambda_minus_form: Rat,
        lambda_plus_form: Rat,
    },
}

/// The ratios `r_i = α_i / x^i`, `i = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingCoefficients {
    pub r: Vec<Rat>,
}

impl RingCoefficients {
    pub fn n(&self) -> usize {
        self.r.len() - 1
    }
}

impl fmt::Display for RingCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.r.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChernData {
    /// `sigma[i][k]` is `σ_k` of the weights at `P_i`, for `k = 0..=n`.
    #[serde(serialize_with = "sigma_as_strings")]
    pub sigma: Vec<Vec<BigInt>>,
    /// `γ_1, …, γ_n` with `c_i(M) = γ_i x^i`.
    pub chern_coeffs: Vec<Rat>,
}

fn sigma_as_strings<S: serde::Serializer>(sigma: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(sigma.len()))?;
    for row in sigma {
        let row: Vec<String> = row.iter().map(ToString::to_string).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

impl ChernData {
    /// `[1, γ_1, …, γ_n]`.
    pub fn total_class(&self) -> Vec<Rat> {
        std::iter::once(Rat::one())
            .chain(self.chern_coeffs.iter().cloned())
            .collect()
    }

    /// The total Chern class as a polynomial in `x`, e.g. `c = 1 + 3x + 3x^2`.
    pub fn polynomial(&self) -> String {
        format_total_class(&self.chern_coeffs)
    }
}

/// Formats `1 + γ_1 x + … + γ_n x^n`, skipping zero terms.
pub fn format_total_class(chern_coeffs: &[Rat]) -> String {
    let mut out = String::from("c = 1");
    for (i, g) in chern_coeffs.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        out.push_str(if g.is_negative() { " - " } else { " + " });
        let mag = g.abs();
        if !mag.is_one() {
            if mag.is_integer() {
                out.push_str(&mag.to_string());
            } else {
                out.push_str(&format!("({mag})"));
            }
        }
        out.push('x');
        if i > 0 {
            out.push_str(&format!("^{}", i + 1));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "r", rename_all = "kebab-case")]
pub enum RingKind {
    /// `Z[x]/x^{n+1}`.
    ProjectiveSpace,
    /// `Z[x, y]/(x^{(n+1)/2} − 2y, y^2)`, `n` odd.
    Quadric,
    /// Any other sequence of ratios `r_0, …, r_n`.
    Other(Vec<Rat>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingSpecError {
    #[error("n must be at least 1")]
    ZeroDimension,
    #[error("the quadric ring needs odd n >= 3, got n = {0}")]
    QuadricDimension(usize),
    #[error("expected {expected} ring ratios r_0..r_n, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("ring ratios must start with r_0 = r_1 = 1")]
    NotNormalized,
    #[error("ring ratio r_{0} is not positive")]
    NonPositive(usize),
}

/// A target integral cohomology ring of a `2n`-manifold with minimal Betti
/// numbers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RingSpec {
    pub kind: RingKind,
    pub n: usize,
}

impl RingSpec {
    pub fn new(kind: RingKind, n: usize) -> Result<Self, RingSpecError> {
        if n == 0 {
            return Err(RingSpecError::ZeroDimension);
        }
        match &kind {
            RingKind::ProjectiveSpace => {}
            RingKind::Quadric => {
                if n < 3 || n.is_multiple_of(2) {
                    return Err(RingSpecError::QuadricDimension(n));
                }
            }
            RingKind::Other(r) => {
                if r.len() != n + 1 {
                    return Err(RingSpecError::WrongLength {
                        expected: n + 1,
                        found: r.len(),
                    });
                }
                if !r[0].is_one() || !r[1].is_one() {
                    return Err(RingSpecError::NotNormalized);
                }
                if let Some(i) = r.iter().position(|v| !v.is_positive()) {
                    return Err(RingSpecError::NonPositive(i));
                }
            }
        }
        Ok(RingSpec { kind, n })
    }

    pub fn projective_space(n: usize) -> Result<Self, RingSpecError> {
        Self::new(RingKind::ProjectiveSpace, n)
    }

    pub fn quadric(n: usize) -> Result<Self, RingSpecError> {
        Self::new(RingKind::Quadric, n)
    }

    /// The ratios `r_0, …, r_n` this ring prescribes.
    pub fn ratios(&self) -> Vec<Rat> {
        match &self.kind {
            RingKind::ProjectiveSpace => vec![Rat::one(); self.n + 1],
            RingKind::Quadric => (0..=self.n)
                .map(|i| if 2 * i > self.n { Rat::half() } else { Rat::one() })
                .collect(),
            RingKind::Other(r) => r.clone(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self.kind {
            RingKind::ProjectiveSpace => "ProjectiveSpace",
            RingKind::Quadric => "Quadric",
            RingKind::Other(_) => "Other",
        }
    }
}

/// The constant `C` with `c_1(M) = C[ω]`, from the weight sums at every pair
/// of fixed points.
pub fn c1_coefficient(data: &FixedPointData) -> Result<Rat, CohomologyError> {
    let gammas = data.gammas();
    let phis = data.moment_values();
    let mut reference: Option<(usize, usize, Rat)> = None;
    for i in 0..phis.len() {
        for j in i + 1..phis.len() {
            let Some(value) = (&gammas[i] - &gammas[j]).checked_div(&(&phis[j] - &phis[i])) else {
                continue;
            };
            match &reference {
                None => reference = Some((i, j, value)),
                Some(first) if first.2 != value => {
                    return Err(CohomologyError::NonConstantC1 {
                        first: first.clone(),
                        second: (i, j, value),
                    })
                }
                Some(_) => {}
            }
        }
    }
    let (_, _, c) = reference.ok_or(CohomologyError::NoDistinctMomentValues)?;
    if !c.is_positive() {
        return Err(CohomologyError::NonPositiveC1 { value: c });
    }
    Ok(c)
}

/// The offset `d` in `Γ_i = C·(−φ(P_i)) + d`, with `C` from
/// [`c1_coefficient`].
pub fn condition_d_offset(data: &FixedPointData) -> Result<Rat, CohomologyError> {
    let c = c1_coefficient(data)?;
    condition_d_offset_with(data, &c)
}

/// As [`condition_d_offset`] but for a caller-supplied `C`.
pub fn condition_d_offset_with(data: &FixedPointData, c: &Rat) -> Result<Rat, CohomologyError> {
    let mut offsets = data
        .points()
        .iter()
        .map(|p| (p.index(), p.gamma() + c * p.moment_value()));
    let (_, d) = offsets.next().expect("fixed point data has at least two points");
    for (point, found) in offsets {
        if found != d {
            return Err(CohomologyError::ConditionDViolated {
                point,
                expected: d,
                found,
            });
        }
    }
    Ok(d)
}

fn distinct_gammas(data: &FixedPointData) -> Result<Vec<Rat>, CohomologyError> {
    let gammas = data.gammas();
    for i in 0..gammas.len() {
        for j in i + 1..gammas.len() {
            if gammas[i] == gammas[j] {
                return Err(CohomologyError::DegenerateGamma { i, j });
            }
        }
    }
    Ok(gammas)
}

/// `r_i = [Λ_i^- / (Λ_1^-)^i] · [(Γ_1 − Γ_0)^i / Π_{j<i}(Γ_i − Γ_j)]`.
pub fn ring_coefficients(data: &FixedPointData) -> Result<RingCoefficients, CohomologyError> {
    let gammas = distinct_gammas(data)?;
    let points = data.points();
    if let Some(p) = points.iter().find(|p| p.weights().contains(&0)) {
        return Err(CohomologyError::ZeroWeight { point: p.index() });
    }
    let lambda_minus_1 = points[1].lambda_minus();
    let gap_1 = &gammas[1] - &gammas[0];

    let mut r = vec![Rat::one(), Rat::one()];
    for i in 2..=data.n() {
        let exp = i as u32;
        let denominator: Rat = (0..i).map(|j| &gammas[i] - &gammas[j]).product();
        let value = points[i].lambda_minus() / lambda_minus_1.pow(exp) * gap_1.pow(exp) / denominator;
        if !value.is_positive() {
            return Err(CohomologyError::NonPositiveRingCoefficient { degree: i, value });
        }
        r.push(value);
    }
    Ok(RingCoefficients { r })
}

/// Coefficient of `c_i(M)` against the generator `α_i`, via the expression
/// built from `Λ_i^-`.
fn chern_against_generator_minus(
    gammas: &[Rat],
    sigma: &[Vec<BigInt>],
    lambda_minus_i: &Rat,
    i: usize,
) -> Rat {
    let prefactor: Rat = (0..i).map(|j| &gammas[i] - &gammas[j]).product::<Rat>() / lambda_minus_i;
    let sum: Rat = (0..=i)
        .map(|k| {
            let denominator: Rat = (0..=i)
                .filter(|&j| j != k)
                .map(|j| &gammas[k] - &gammas[j])
                .product();
            Rat::from_integer(sigma[k][i].clone()) / denominator
        })
        .sum();
    prefactor * sum
}

/// The same coefficient via the expression built from `Λ_i^+` and the full
/// weight products `Λ_k`.
fn chern_against_generator_plus(
    gammas: &[Rat],
    sigma: &[Vec<BigInt>],
    lambda_plus_i: &Rat,
    lambda_all: &[Rat],
    i: usize,
) -> Rat {
    let n = gammas.len() - 1;
    let prefactor = lambda_plus_i / (i + 1..=n).map(|j| &gammas[i] - &gammas[j]).product::<Rat>();
    let sum: Rat = (0..=i)
        .map(|k| {
            let upper: Rat = (i + 1..=n).map(|j| &gammas[k] - &gammas[j]).product();
            Rat::from_integer(sigma[k][i].clone()) * upper / &lambda_all[k]
        })
        .sum();
    prefactor * sum
}

/// Chern classes `c_i(M) = γ_i x^i`, evaluated with both closed forms and
/// checked against each other.
pub fn chern_coefficients(data: &FixedPointData) -> Result<ChernData, CohomologyError> {
    let ring = ring_coefficients(data)?;
    let gammas = data.gammas();
    let points = data.points();
    let sigma: Vec<Vec<BigInt>> = points.iter().map(|p| p.elementary_symmetric()).collect();
    let lambda_all: Vec<Rat> = points.iter().map(|p| p.lambda_all()).collect();
    if let Some(point) = lambda_all.iter().position(Rat::is_zero) {
        return Err(CohomologyError::ZeroWeight { point });
    }

    let mut chern_coeffs = Vec::with_capacity(data.n());
    for i in 1..=data.n() {
        let minus = chern_against_generator_minus(&gammas, &sigma, &points[i].lambda_minus(), i);
        let plus = chern_against_generator_plus(&gammas, &sigma, &points[i].lambda_plus(), &lambda_all, i);
        if minus != plus {
            return Err(CohomologyError::CrossCheckFailed {
                degree: i,
                lambda_minus_form: minus,
                lambda_plus_form: plus,
            });
        }
        chern_coeffs.push(plus * &ring.r[i]);
    }
    Ok(ChernData { sigma, chern_coeffs })
}

/// Recognizes the projective space and odd quadric patterns of ring ratios.
pub fn classify_ring(rc: &RingCoefficients) -> RingSpec {
    let n = rc.n();
    let kind = if rc.r.iter().all(Rat::is_one) {
        RingKind::ProjectiveSpace
    } else if n >= 3 && n % 2 == 1 && rc.r == (RingSpec { kind: RingKind::Quadric, n }).ratios() {
        RingKind::Quadric
    } else {
        RingKind::Other(rc.r.clone())
    };
    RingSpec { kind, n }
}
