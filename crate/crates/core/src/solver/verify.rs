//! The four-way equivalence for `CP^n` and the odd quadric, checked on a
//! concrete set of moment values.

use serde::Serialize;

use crate::cohomology::{c1_coefficient, chern_coefficients, classify_ring, ring_coefficients, RingKind, RingSpec};
use crate::data::FixedPointData;
use crate::models::{expected_weights, standard_c1, standard_chern_coefficients};
use crate::rat::Rat;

use super::enumerate::{enumerate_weight_systems, EnumerationOptions};
use super::SolverError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub ring: &'static str,
    pub n: usize,
    pub phis: Vec<i64>,
    pub systems_found: usize,
    pub nodes_explored: u64,
    pub implications: Vec<Implication>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.implications.iter().all(|l| l.passed)
    }
}

fn join(values: &[Rat]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn line(name: &'static str, passed: bool, detail: impl Into<String>) -> Implication {
    Implication {
        name,
        passed,
        detail: detail.into(),
    }
}

/// Runs the enumeration and checks the implications `(2)=>(4)`, `(4)=>(2)`,
/// `(4)=>(3)` and `(4)=>(1)`. The last three are checked on the unique
/// system found, and fail when there is none.
pub fn verify_equivalence(
    spec: &RingSpec,
    phis: &[i64],
    opts: &EnumerationOptions,
) -> Result<EquivalenceReport, SolverError> {
    if matches!(spec.kind, RingKind::Other(_)) {
        return Err(SolverError::UnsupportedRing);
    }
    let found = enumerate_weight_systems(spec, phis, opts)?;
    let expected = expected_weights(spec, phis).expect("standard ring");

    let mut implications = Vec::with_capacity(4);
    let unique: Option<&FixedPointData> = match found.systems.as_slice() {
        [only] => Some(only),
        _ => None,
    };
    let count = found.systems.len();
    let plural = if count == 1 { "system" } else { "systems" };
    implications.push(match (&expected, unique) {
        (Ok(model), Some(system)) if model == system => {
            line("(2)=>(4)", true, format!("unique system equals the {} model", spec.label()))
        }
        (Ok(_), Some(_)) => line("(2)=>(4)", false, "unique system differs from the model"),
        (Err(e), _) => line("(2)=>(4)", false, format!("{count} {plural} found; no model weights: {e}")),
        (Ok(_), None) => line("(2)=>(4)", false, format!("{count} {plural} found")),
    });

    match unique {
        None => {
            for name in ["(4)=>(2)", "(4)=>(3)", "(4)=>(1)"] {
                implications.push(line(name, false, "no unique system to test"));
            }
        }
        Some(system) => {
            implications.push(match ring_coefficients(system) {
                Ok(ring) => {
                    let kind = classify_ring(&ring).kind;
                    line(
                        "(4)=>(2)",
                        kind == spec.kind,
                        format!("r = {ring} classifies as {}", RingSpec { kind, n: spec.n }.label()),
                    )
                }
                Err(e) => line("(4)=>(2)", false, e.to_string()),
            });
            let want = standard_chern_coefficients(spec).expect("standard ring");
            implications.push(match chern_coefficients(system) {
                Ok(chern) => line(
                    "(4)=>(3)",
                    chern.chern_coeffs == want,
                    format!("gamma = ({}), expected ({})", join(&chern.chern_coeffs), join(&want)),
                ),
                Err(e) => line("(4)=>(3)", false, e.to_string()),
            });
            let want = standard_c1(spec).expect("standard ring");
            implications.push(match c1_coefficient(system) {
                Ok(c) => line("(4)=>(1)", c == want, format!("C = {c}, expected {want}")),
                Err(e) => line("(4)=>(1)", false, e.to_string()),
            });
        }
    }

    Ok(EquivalenceReport {
        ring: spec.label(),
        n: spec.n,
        phis: phis.to_vec(),
        systems_found: count,
        nodes_explored: found.nodes_explored,
        implications,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cp3_passes() {
        let spec = RingSpec::projective_space(3).unwrap();
        let report = verify_equivalence(&spec, &[0, 1, 2, 3], &EnumerationOptions::default()).unwrap();
        assert!(report.passed(), "{report:?}");
        let names: Vec<_> = report.implications.iter().map(|l| l.name).collect();
        assert_eq!(names, ["(2)=>(4)", "(4)=>(2)", "(4)=>(3)", "(4)=>(1)"]);
    }

    #[test]
    fn q3_passes_with_c_equal_to_n() {
        let spec = RingSpec::quadric(3).unwrap();
        let report = verify_equivalence(&spec, &[-2, -1, 1, 2], &EnumerationOptions::default()).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.implications[3].detail, "C = 3, expected 3");
    }

    #[test]
    fn odd_gap_quadric_fails_first_line() {
        let spec = RingSpec::quadric(3).unwrap();
        let report = verify_equivalence(&spec, &[-2, -1, 1, 3], &EnumerationOptions::default()).unwrap();
        assert_eq!(report.systems_found, 0);
        assert!(!report.implications[0].passed);
        assert!(!report.passed());
    }

    #[test]
    fn other_rings_are_rejected() {
        let spec = RingSpec::new(RingKind::Other(vec![Rat::one(); 3]), 2).unwrap();
        assert_eq!(
            verify_equivalence(&spec, &[0, 1, 2], &EnumerationOptions::default()),
            Err(SolverError::UnsupportedRing)
        );
    }
}
