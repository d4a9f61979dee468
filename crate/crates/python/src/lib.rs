//! Python bindings. Exact rationals cross the boundary as
//! `fractions.Fraction`; moment values are accepted as `int`, `Fraction` or
//! `"p/q"` strings.

use hamfix_core::cohomology::{condition_d_offset, format_total_class, RingSpecError};
use hamfix_core::data::ValidationOptions;
use hamfix_core::document::InputDocument;
use hamfix_core::localization::EquivariantRestriction;
use hamfix_core::solver::{self, EnumerationOptions, DEFAULT_BUDGET};
use hamfix_core::{self as core, Rat, RingKind, RingSpec, SolverError};
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyFloat, PyList, PyString};

create_exception!(hamfix, SearchBudgetExceeded, PyRuntimeError, "The solver ran out of search budget.");

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn solver_error(e: SolverError) -> PyErr {
    match e {
        SolverError::SearchBudgetExceeded { .. } => SearchBudgetExceeded::new_err(e.to_string()),
        _ => value_error(e),
    }
}

fn fraction<'py>(py: Python<'py>, r: &Rat) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.numer().clone(), r.denom().clone()))
}

fn fractions<'py>(py: Python<'py>, values: &[Rat]) -> PyResult<Bound<'py, PyList>> {
    let items = values.iter().map(|r| fraction(py, r)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

fn to_rat(obj: &Bound<'_, PyAny>) -> PyResult<Rat> {
    if let Ok(s) = obj.cast::<PyString>() {
        return s.to_str()?.parse().map_err(value_error);
    }
    if obj.is_instance_of::<PyFloat>() {
        return Err(PyTypeError::new_err("floats are not exact; pass an int, Fraction or \"p/q\" string"));
    }
    let num: BigInt = obj.getattr("numerator")?.extract()?;
    let den: BigInt = obj.getattr("denominator")?.extract()?;
    Rat::from_parts(num, den).ok_or_else(|| PyValueError::new_err("zero denominator"))
}

fn ring_spec(py: Python<'_>, ring: &str, n: usize, r: Option<Vec<Py<PyAny>>>) -> PyResult<RingSpec> {
    let spec: Result<RingSpec, RingSpecError> = match (ring, r) {
        ("cpn", None) => RingSpec::projective_space(n),
        ("quadric", None) => RingSpec::quadric(n),
        ("other", Some(r)) => {
            let r = r.iter().map(|v| to_rat(v.bind(py))).collect::<PyResult<Vec<_>>>()?;
            RingSpec::new(RingKind::Other(r), n)
        }
        ("other", None) => return Err(PyValueError::new_err("ring 'other' needs r")),
        ("cpn" | "quadric", Some(_)) => return Err(PyValueError::new_err("r only applies to ring 'other'")),
        _ => return Err(PyValueError::new_err(format!("unknown ring {ring:?}; use cpn, quadric or other"))),
    };
    spec.map_err(value_error)
}

/// Fixed point data: `n + 1` points, each with a moment value and `n`
/// integer weights.
#[pyclass(name = "FixedPointData", module = "hamfix", frozen, eq)]
#[derive(PartialEq)]
struct PyFixedPointData {
    inner: core::FixedPointData,
}

impl From<core::FixedPointData> for PyFixedPointData {
    fn from(inner: core::FixedPointData) -> Self {
        PyFixedPointData { inner }
    }
}

#[pymethods]
impl PyFixedPointData {
    /// `points` is a list of `(phi, weights)` pairs in point order.
    #[new]
    fn new(n: usize, points: Vec<(Py<PyAny>, Vec<i64>)>, py: Python<'_>) -> PyResult<Self> {
        let points = points
            .into_iter()
            .map(|(phi, w)| Ok((to_rat(phi.bind(py))?, w)))
            .collect::<PyResult<Vec<_>>>()?;
        core::FixedPointData::new(n, points).map(Self::from).map_err(value_error)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = InputDocument::parse(text).map_err(value_error)?;
        doc.to_data().map(Self::from).map_err(value_error)
    }

    fn to_json(&self) -> String {
        InputDocument::from_data(&self.inner, None).to_canonical_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn moment_values<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        fractions(py, &self.inner.moment_values())
    }

    fn weights(&self) -> Vec<Vec<i64>> {
        self.inner.points().iter().map(|p| p.weights().to_vec()).collect()
    }

    fn gammas<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        fractions(py, &self.inner.gammas())
    }

    fn translated(&self, shift: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(self.inner.translated(&to_rat(shift)?).into())
    }

    fn normalized(&self) -> Self {
        self.inner.normalized().into()
    }

    /// Violations as human-readable strings; empty when valid.
    #[pyo3(signature = (require_integral_differences = true))]
    fn validate(&self, require_integral_differences: bool) -> Vec<String> {
        core::validate_with(
            &self.inner,
            ValidationOptions {
                require_integral_differences,
            },
        )
        .violations
        .iter()
        .map(ToString::to_string)
        .collect()
    }

    fn c1<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &core::c1_coefficient(&self.inner).map_err(value_error)?)
    }

    fn condition_d<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &condition_d_offset(&self.inner).map_err(value_error)?)
    }

    fn ring_coefficients<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        fractions(py, &core::ring_coefficients(&self.inner).map_err(value_error)?.r)
    }

    /// `"ProjectiveSpace"`, `"Quadric"` or `"Other"`.
    fn ring_kind(&self) -> PyResult<&'static str> {
        let rc = core::ring_coefficients(&self.inner).map_err(value_error)?;
        Ok(core::classify_ring(&rc).label())
    }

    /// `γ_1, …, γ_n`.
    fn chern_coefficients<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        fractions(py, &core::chern_coefficients(&self.inner).map_err(value_error)?.chern_coeffs)
    }

    fn chern_polynomial(&self) -> PyResult<String> {
        let chern = core::chern_coefficients(&self.inner).map_err(value_error)?;
        Ok(format_total_class(&chern.chern_coeffs))
    }

    /// `Σ_P a_P / Λ_P` for restrictions `a_P` given in point order.
    fn abbv_sum<'py>(&self, py: Python<'py>, degree: u32, values: Vec<Py<PyAny>>) -> PyResult<Bound<'py, PyAny>> {
        let values = values.iter().map(|v| to_rat(v.bind(py))).collect::<PyResult<Vec<_>>>()?;
        let cls = EquivariantRestriction::from_values(degree, values);
        fraction(py, &core::abbv_sum(&self.inner, &cls).map_err(value_error)?)
    }

    /// `{"pairs_checked", "failures": [(a, b, value)], "volume", "passed"}`.
    fn battery<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let report = core::vanishing_battery(&self.inner).map_err(value_error)?;
        let out = PyDict::new(py);
        out.set_item("pairs_checked", report.pairs_checked)?;
        let failures = report
            .failures
            .iter()
            .map(|f| Ok((f.chern_power, f.moment_power, fraction(py, &f.value)?)))
            .collect::<PyResult<Vec<_>>>()?;
        out.set_item("failures", failures)?;
        out.set_item("volume", fraction(py, &report.volume)?)?;
        out.set_item("passed", report.passed())?;
        Ok(out)
    }

    /// `{"edges": [(lower, upper, weight, paired)], "ambiguous": [(point,
    /// weight, candidates)], "missing_pairs", "multiple_pairs"}`.
    fn gradient_graph<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let graph = solver::gradient_graph(&self.inner);
        let out = PyDict::new(py);
        let edges: Vec<_> = graph.edges.iter().map(|e| (e.lower, e.upper, e.weight, e.paired)).collect();
        out.set_item("edges", edges)?;
        let ambiguous: Vec<_> = graph
            .ambiguous
            .iter()
            .map(|a| (a.point, a.weight, a.candidates.clone()))
            .collect();
        out.set_item("ambiguous", ambiguous)?;
        out.set_item("missing_pairs", graph.missing_pairs)?;
        out.set_item("multiple_pairs", graph.multiple_pairs)?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        let points: Vec<String> = self
            .inner
            .points()
            .iter()
            .map(|p| format!("({:?}, {:?})", p.moment_value().to_string(), p.weights()))
            .collect();
        format!("FixedPointData({}, [{}])", self.inner.n(), points.join(", "))
    }
}

#[pyfunction]
fn cpn_model(b: Vec<i64>) -> PyResult<PyFixedPointData> {
    core::cpn_model(&b).map(Into::into).map_err(value_error)
}

#[pyfunction]
fn quadric_model(n: usize, b: Vec<i64>) -> PyResult<PyFixedPointData> {
    core::quadric_model(n, &b).map(Into::into).map_err(value_error)
}

fn options(jobs: usize, budget: u64, max_weight: Option<u64>) -> EnumerationOptions {
    EnumerationOptions {
        max_abs_weight: max_weight,
        budget,
        jobs,
        cancel: None,
    }
}

/// Every weight system `ring` forces on the moment values `phis`.
#[pyfunction]
#[pyo3(signature = (ring, phis, r = None, jobs = 1, budget = DEFAULT_BUDGET, max_weight = None))]
fn enumerate_weight_systems(
    py: Python<'_>,
    ring: &str,
    phis: Vec<i64>,
    r: Option<Vec<Py<PyAny>>>,
    jobs: usize,
    budget: u64,
    max_weight: Option<u64>,
) -> PyResult<Vec<PyFixedPointData>> {
    if phis.len() < 2 {
        return Err(PyValueError::new_err("need at least two moment values"));
    }
    let spec = ring_spec(py, ring, phis.len() - 1, r)?;
    let opts = options(jobs, budget, max_weight);
    let found = py
        .detach(|| solver::enumerate_weight_systems(&spec, &phis, &opts))
        .map_err(solver_error)?;
    Ok(found.systems.into_iter().map(Into::into).collect())
}

/// `{"ring", "n", "systems_found", "passed", "implications": [(name,
/// passed, detail)]}`.
#[pyfunction]
#[pyo3(signature = (ring, phis, jobs = 1, budget = DEFAULT_BUDGET))]
fn verify_equivalence<'py>(
    py: Python<'py>,
    ring: &str,
    phis: Vec<i64>,
    jobs: usize,
    budget: u64,
) -> PyResult<Bound<'py, PyDict>> {
    if phis.len() < 2 {
        return Err(PyValueError::new_err("need at least two moment values"));
    }
    let spec = ring_spec(py, ring, phis.len() - 1, None)?;
    let opts = options(jobs, budget, None);
    let report = py
        .detach(|| solver::verify_equivalence(&spec, &phis, &opts))
        .map_err(solver_error)?;
    let out = PyDict::new(py);
    out.set_item("ring", report.ring)?;
    out.set_item("n", report.n)?;
    out.set_item("systems_found", report.systems_found)?;
    out.set_item("passed", report.passed())?;
    let lines: Vec<_> = report
        .implications
        .iter()
        .map(|l| (l.name, l.passed, l.detail.clone()))
        .collect();
    out.set_item("implications", lines)?;
    Ok(out)
}

/// Returns `(phis, c1, order, data)` with `phis[0] == 0`; `order[k]` is the
/// input position of the point placed at index `k`.
#[pyfunction]
fn infer_moment_values<'py>(
    py: Python<'py>,
    weights: Vec<Vec<i64>>,
) -> PyResult<(Bound<'py, PyList>, Bound<'py, PyAny>, Vec<usize>, PyFixedPointData)> {
    let inferred = solver::infer_moment_values(&weights).map_err(solver_error)?;
    Ok((
        fractions(py, &inferred.phis)?,
        fraction(py, &inferred.c1)?,
        inferred.order,
        inferred.data.into(),
    ))
}

#[pymodule]
pub fn hamfix(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFixedPointData>()?;
    m.add_function(wrap_pyfunction!(cpn_model, m)?)?;
    m.add_function(wrap_pyfunction!(quadric_model, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_weight_systems, m)?)?;
    m.add_function(wrap_pyfunction!(verify_equivalence, m)?)?;
    m.add_function(wrap_pyfunction!(infer_moment_values, m)?)?;
    m.add("SearchBudgetExceeded", m.py().get_type::<SearchBudgetExceeded>())?;
    m.add("DEFAULT_BUDGET", DEFAULT_BUDGET)?;
    Ok(())
}
