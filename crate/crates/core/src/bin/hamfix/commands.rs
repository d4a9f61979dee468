use std::fmt::Write as _;
use std::path::Path;

use hamfix_core::cohomology::{condition_d_offset_with, RingSpecError};
use hamfix_core::data::ValidationOptions;
use hamfix_core::document::{parse_data, InputDocument};
use hamfix_core::solver::{
    enumerate_weight_systems, gradient_graph, infer_moment_values, verify_equivalence, EnumerationOptions,
};
use hamfix_core::{
    c1_coefficient, chern_coefficients, classify_ring, cpn_model, quadric_model, ring_coefficients, validate_with,
    vanishing_battery, FixedPointData, Rat, RingKind, RingSpec, SolverError, Violation,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Cli, Command, Global, ModelKind, RingArgs, RingChoice};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

enum Failure {
    Input(String),
    Check(String),
    Budget(String),
}

struct Outcome {
    text: String,
    json: Value,
    passed: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, passed: true }
    }
}

pub fn run(cli: &Cli) -> u8 {
    let g = &cli.global;
    let result = match &cli.command {
        Command::Check { file } => check(g, file),
        Command::Ring { file } => ring(g, file),
        Command::Chern { file } => chern(g, file),
        Command::Graph { file } => graph(g, file),
        Command::Model { kind } => return model(g, kind),
        Command::Solve(args) => solve(g, args),
        Command::Verify(args) => verify(g, args),
        Command::Infer { weights } => infer(weights),
    };
    match result {
        Ok(outcome) => {
            let body = if g.json {
                let mut s = serde_json::to_string_pretty(&outcome.json).expect("report serializes");
                s.push('\n');
                s
            } else {
                outcome.text
            };
            if let Err(code) = emit(g, &body) {
                return code;
            }
            if outcome.passed {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Check(msg)) => {
            if g.json {
                let body = format!(
                    "{}\n",
                    serde_json::to_string_pretty(&json!({ "passed": false, "error": msg })).unwrap()
                );
                if let Err(code) = emit(g, &body) {
                    return code;
                }
            }
            eprintln!("error: {msg}");
            EXIT_FAIL
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            EXIT_BUDGET
        }
    }
}

fn emit(g: &Global, body: &str) -> Result<(), u8> {
    match &g.out {
        Some(path) => std::fs::write(path, body).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            EXIT_INPUT
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn load(g: &Global, file: &Path) -> Result<FixedPointData, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", file.display())))?;
    let (_, data) = parse_data(&text).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    Ok(if g.normalize { data.normalized() } else { data })
}

/// Loads a file that must pass validation, as `ring` and `chern` require.
fn load_valid(g: &Global, file: &Path) -> Result<FixedPointData, Failure> {
    let data = load(g, file)?;
    let report = validate_with(
        &data,
        ValidationOptions {
            require_integral_differences: !g.no_integrality,
        },
    );
    if !report.is_valid() {
        let listed: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        return Err(Failure::Check(format!("{} fails validation: {}", file.display(), listed.join("; "))));
    }
    Ok(data)
}

fn mark(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Serialize)]
struct CheckLine {
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct CheckReport {
    passed: bool,
    n: usize,
    checks: Vec<CheckLine>,
    violations: Vec<Violation>,
    c1: Option<Rat>,
    d: Option<Rat>,
    volume: Option<Rat>,
}

fn check(g: &Global, file: &Path) -> Result<Outcome, Failure> {
    let data = load(g, file)?;
    let options = ValidationOptions {
        require_integral_differences: !g.no_integrality,
    };
    let validation = validate_with(&data, options);
    let mut checks = Vec::new();
    checks.push(CheckLine {
        name: "validate",
        passed: validation.is_valid(),
        detail: if validation.is_valid() {
            "ok".into()
        } else {
            validation
                .violations
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; ")
        },
    });

    let c1 = c1_coefficient(&data);
    checks.push(match &c1 {
        Ok(c) => CheckLine {
            name: "c1",
            passed: true,
            detail: format!("C = {c}"),
        },
        Err(e) => CheckLine {
            name: "c1",
            passed: false,
            detail: e.to_string(),
        },
    });
    let d = c1.as_ref().ok().map(|c| condition_d_offset_with(&data, c));
    checks.push(match &d {
        Some(Ok(d)) => CheckLine {
            name: "condition-d",
            passed: true,
            detail: format!("d = {d}"),
        },
        Some(Err(e)) => CheckLine {
            name: "condition-d",
            passed: false,
            detail: e.to_string(),
        },
        None => CheckLine {
            name: "condition-d",
            passed: false,
            detail: "skipped: no first Chern class coefficient".into(),
        },
    });

    let battery = vanishing_battery(&data);
    checks.push(match &battery {
        Ok(b) => {
            let mut detail = if b.failures.is_empty() {
                format!("{} pairs vanish", b.pairs_checked)
            } else {
                let listed: Vec<String> = b
                    .failures
                    .iter()
                    .map(|f| format!("(a={}, b={}) = {}", f.chern_power, f.moment_power, f.value))
                    .collect();
                format!("{} of {} pairs fail: {}", b.failures.len(), b.pairs_checked, listed.join(", "))
            };
            write!(detail, ", V = {}", b.volume).unwrap();
            if !b.volume_positive() {
                detail.push_str(" is not positive");
            }
            CheckLine {
                name: "battery",
                passed: b.passed(),
                detail,
            }
        }
        Err(e) => CheckLine {
            name: "battery",
            passed: false,
            detail: e.to_string(),
        },
    });

    let passed = checks.iter().all(|c| c.passed);
    let mut text = String::new();
    for c in &checks {
        writeln!(text, "{} {}: {}", mark(c.passed), c.name, c.detail).unwrap();
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    if passed {
        text.push_str("all checks passed\n");
    } else {
        writeln!(text, "{failed} of {} checks failed", checks.len()).unwrap();
    }
    let report = CheckReport {
        passed,
        n: data.n(),
        checks,
        violations: validation.violations,
        c1: c1.ok(),
        d: d.and_then(Result::ok),
        volume: battery.ok().map(|b| b.volume),
    };
    Ok(Outcome {
        text,
        json: serde_json::to_value(&report).unwrap(),
        passed,
    })
}

fn ring(g: &Global, file: &Path) -> Result<Outcome, Failure> {
    let data = load_valid(g, file)?;
    let rc = ring_coefficients(&data).map_err(|e| Failure::Check(e.to_string()))?;
    let spec = classify_ring(&rc);
    let text = format!("{rc} — {}\n", spec.label());
    let json = json!({ "n": data.n(), "r": rc.r, "ring": spec.label() });
    Ok(Outcome::ok(text, json))
}

fn chern(g: &Global, file: &Path) -> Result<Outcome, Failure> {
    let data = load_valid(g, file)?;
    let chern = chern_coefficients(&data).map_err(|e| Failure::Check(e.to_string()))?;
    let mut text = format!("{}\n", chern.polynomial());
    for (i, gamma) in chern.chern_coeffs.iter().enumerate() {
        writeln!(text, "gamma_{} = {gamma}", i + 1).unwrap();
    }
    for (i, row) in chern.sigma.iter().enumerate() {
        let row: Vec<String> = row.iter().map(ToString::to_string).collect();
        writeln!(text, "sigma(P_{i}) = {}", row.join(", ")).unwrap();
    }
    let sigma = serde_json::to_value(&chern).unwrap()["sigma"].take();
    let json = json!({
        "n": data.n(),
        "polynomial": chern.polynomial(),
        "chern_coeffs": chern.chern_coeffs,
        "sigma": sigma,
    });
    Ok(Outcome::ok(text, json))
}

fn graph(g: &Global, file: &Path) -> Result<Outcome, Failure> {
    let data = load(g, file)?;
    let graph = gradient_graph(&data);
    let mut text = String::new();
    for e in &graph.edges {
        writeln!(
            text,
            "P_{} -- P_{}  w = {}{}",
            e.lower,
            e.upper,
            e.weight,
            if e.paired { "" } else { "  (unpaired)" }
        )
        .unwrap();
    }
    for a in &graph.ambiguous {
        writeln!(text, "ambiguous: weight {} at P_{} could reach {:?}", a.weight, a.point, a.candidates).unwrap();
    }
    for (j, i) in &graph.missing_pairs {
        writeln!(text, "no sphere between P_{j} and P_{i}").unwrap();
    }
    for (j, i, count) in &graph.multiple_pairs {
        writeln!(text, "{count} spheres between P_{j} and P_{i}").unwrap();
    }
    Ok(Outcome::ok(text, serde_json::to_value(&graph).unwrap()))
}

fn model(g: &Global, kind: &ModelKind) -> u8 {
    let built = match kind {
        ModelKind::Cpn { b } => cpn_model(b),
        ModelKind::Quadric { n, b } => quadric_model(*n, b),
    };
    let data = match built {
        Ok(data) => data,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let data = if g.normalize { data.normalized() } else { data };
    let doc = InputDocument::from_data(&data, None);
    match emit(g, &doc.to_canonical_json()) {
        Ok(()) => EXIT_PASS,
        Err(code) => code,
    }
}

fn ring_spec(args: &RingArgs) -> Result<RingSpec, Failure> {
    if args.phi.len() < 2 {
        return Err(Failure::Input("--phi needs at least two values".into()));
    }
    let n = args.phi.len() - 1;
    if args.ring != RingChoice::Other && !args.r.is_empty() {
        return Err(Failure::Input("--r only applies to --ring other".into()));
    }
    let spec: Result<RingSpec, RingSpecError> = match args.ring {
        RingChoice::Cpn => RingSpec::projective_space(n),
        RingChoice::Quadric => RingSpec::quadric(n),
        RingChoice::Other => RingSpec::new(RingKind::Other(args.r.clone()), n),
    };
    spec.map_err(|e| Failure::Input(e.to_string()))
}

fn solver_failure(e: SolverError) -> Failure {
    match e {
        SolverError::SearchBudgetExceeded { .. } => Failure::Budget(e.to_string()),
        SolverError::Cohomology(_) => Failure::Check(e.to_string()),
        _ => Failure::Input(e.to_string()),
    }
}

fn options(g: &Global, args: &RingArgs) -> EnumerationOptions {
    EnumerationOptions {
        max_abs_weight: args.max_weight,
        budget: g.budget,
        jobs: g.jobs,
        cancel: None,
    }
}

fn found_line(count: usize) -> String {
    format!("{count} {} found", if count == 1 { "system" } else { "systems" })
}

fn solve(g: &Global, args: &RingArgs) -> Result<Outcome, Failure> {
    let spec = ring_spec(args)?;
    let found = enumerate_weight_systems(&spec, &args.phi, &options(g, args)).map_err(solver_failure)?;
    let mut text = String::new();
    let phis: Vec<String> = args.phi.iter().map(ToString::to_string).collect();
    writeln!(text, "ring {} with n = {}, phi = {}", spec.label(), spec.n, phis.join(", ")).unwrap();
    let mut systems = Vec::new();
    for system in &found.systems {
        let weights: Vec<Vec<i64>> = system.points().iter().map(|p| p.weights().to_vec()).collect();
        let parts: Vec<String> = weights.iter().map(|w| format!("{w:?}")).collect();
        writeln!(text, "  {}", parts.join(" ")).unwrap();
        systems.push(weights);
    }
    if found.filter_only {
        text.push_str("filter only: uniqueness is not claimed for this ring\n");
    }
    writeln!(text, "{}", found_line(found.systems.len())).unwrap();
    let json = json!({
        "ring": spec.label(),
        "n": spec.n,
        "phis": args.phi,
        "filter_only": found.filter_only,
        "count": found.systems.len(),
        "systems": systems,
    });
    Ok(Outcome::ok(text, json))
}

fn verify(g: &Global, args: &RingArgs) -> Result<Outcome, Failure> {
    let spec = ring_spec(args)?;
    if matches!(spec.kind, RingKind::Other(_)) {
        return Err(Failure::Input("verify needs --ring cpn or --ring quadric".into()));
    }
    let report = verify_equivalence(&spec, &args.phi, &options(g, args)).map_err(solver_failure)?;
    let mut text = String::new();
    for line in &report.implications {
        writeln!(text, "{} {}: {}", mark(line.passed), line.name, line.detail).unwrap();
    }
    writeln!(text, "{}", found_line(report.systems_found)).unwrap();
    Ok(Outcome {
        text,
        json: serde_json::to_value(&report).unwrap(),
        passed: report.passed(),
    })
}

fn parse_weights(spec: &str) -> Result<Vec<Vec<i64>>, Failure> {
    spec.split(';')
        .map(|point| {
            point
                .split(',')
                .map(|w| {
                    w.trim()
                        .parse::<i64>()
                        .map_err(|_| Failure::Input(format!("invalid weight {:?}", w.trim())))
                })
                .collect()
        })
        .collect()
}

fn infer(weights: &str) -> Result<Outcome, Failure> {
    let weights = parse_weights(weights)?;
    let inferred = infer_moment_values(&weights).map_err(|e| match e {
        SolverError::WrongShape(_) => Failure::Input(e.to_string()),
        _ => Failure::Check(e.to_string()),
    })?;
    let phis: Vec<String> = inferred.phis.iter().map(ToString::to_string).collect();
    let mut text = format!("phi = {}\nC = {}\n", phis.join(", "), inferred.c1);
    let rc = ring_coefficients(&inferred.data).ok();
    if let Some(rc) = &rc {
        writeln!(text, "r = {rc} — {}", classify_ring(rc).label()).unwrap();
    }
    let json = json!({
        "phis": inferred.phis,
        "c1": inferred.c1,
        "order": inferred.order,
        "r": rc.map(|rc| rc.r),
    });
    Ok(Outcome::ok(text, json))
}
