//! Exhaustive search for weight systems compatible with a prescribed ring.
//!
//! Under the paired-sphere ansatz every negative weight `−w` at `P_i` sits on
//! a gradient sphere to a distinct lower point `P_j`, and `+w` is then a
//! positive weight at `P_j`; `w` divides `φ_i − φ_j`. The search assigns
//! these magnitudes point by point from the top down, so that when `P_i` is
//! reached all of its positive weights are already known. Partial
//! assignments are pruned by the product targets for `Λ^±` and by the affine
//! relation between `Γ` and `φ`; complete ones go through the full battery
//! of checks.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::cohomology::{c1_coefficient, condition_d_offset, RingKind, RingSpec};
use crate::data::{validate, FixedPointData};
use crate::localization::vanishing_battery;
use crate::rat::Rat;

use super::targets::{lambda_minus_targets, positive_targets};
use super::SolverError;

/// Default node budget for [`enumerate_weight_systems`].
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone)]
pub struct EnumerationOptions {
    /// Largest weight magnitude considered; defaults to `φ_n − φ_0`.
    pub max_abs_weight: Option<u64>,
    /// Maximum number of search nodes before giving up.
    pub budget: u64,
    /// Worker threads; `0` lets rayon decide.
    pub jobs: usize,
    /// Setting this flag aborts a running search.
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            max_abs_weight: None,
            budget: DEFAULT_BUDGET,
            jobs: 1,
            cancel: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Every consistent weight system, sorted by flattened weights.
    pub systems: Vec<FixedPointData>,
    pub nodes_explored: u64,
    /// Set for rings other than `CP^n` and the quadric, where the ansatz is
    /// not known to hold and the list is only a filter result.
    pub filter_only: bool,
}

struct Problem {
    n: usize,
    phis: Vec<i64>,
    /// `divisors[i][j]`, `j < i`: admissible magnitudes for the sphere
    /// between `P_j` and `P_i`, ascending.
    divisors: Vec<Vec<Vec<u128>>>,
    /// `|Λ_i^-|`.
    neg_target: Vec<u128>,
    /// `Λ_i^+`.
    pos_target: Vec<u128>,
}

#[derive(Clone)]
struct State {
    /// `magnitude[i][j]` for `j < i`.
    magnitude: Vec<Vec<u128>>,
    pos_product: Vec<u128>,
    pos_sum: Vec<i128>,
    gamma: Vec<i128>,
}

struct Abort;

struct Search<'a> {
    problem: &'a Problem,
    counter: &'a AtomicU64,
    budget: u64,
    aborted: &'a AtomicBool,
    cancel: Option<&'a AtomicBool>,
}

fn divisors_up_to(value: u128, bound: u128) -> Vec<u128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d: u128 = 1;
    while d * d <= value {
        if value.is_multiple_of(d) {
            small.push(d);
            if d * d != value {
                large.push(value / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small.retain(|&d| d <= bound);
    small
}

/// Converts a target to a magnitude, or `None` if no integer weights can
/// realize it.
fn target_magnitude(target: &Rat, expected_negative: bool) -> Result<Option<u128>, SolverError> {
    let Some(value) = target.to_integer() else {
        return Ok(None);
    };
    let sign_ok = if expected_negative {
        target.is_negative()
    } else {
        target.is_positive()
    };
    if !sign_ok {
        return Ok(None);
    }
    let magnitude = value.magnitude().to_u128().ok_or(SolverError::Overflow)?;
    Ok(Some(magnitude))
}

impl Search<'_> {
    fn tick(&self) -> Result<(), Abort> {
        if self.aborted.load(Ordering::Relaxed) {
            return Err(Abort);
        }
        if self.cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
            self.aborted.store(true, Ordering::Relaxed);
            return Err(Abort);
        }
        if self.counter.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.aborted.store(true, Ordering::Relaxed);
            return Err(Abort);
        }
        Ok(())
    }

    /// Whether `Γ_i` (already stored) is consistent with `Γ = −Cφ + d` for
    /// the levels above it.
    fn affine_ok(&self, state: &State, i: usize) -> bool {
        let n = self.problem.n;
        let phis = &self.problem.phis;
        if i == n {
            return true;
        }
        let g = &state.gamma;
        // C = (Γ_{n-1} − Γ_n) / (φ_n − φ_{n-1}) must be positive.
        if i == n - 1 {
            return g[n - 1] > g[n];
        }
        let top_gap = (phis[n] - phis[n - 1]) as i128;
        let gap = (phis[n] - phis[i]) as i128;
        (g[i] - g[n]) * top_gap == (g[n - 1] - g[n]) * gap
    }

    /// Chooses magnitudes for the spheres from `P_i` down to `P_j, …, P_{i-1}`.
    fn assign(
        &self,
        state: &mut State,
        i: usize,
        j: usize,
        remaining: u128,
        on_complete: &mut dyn FnMut(&Self, &mut State) -> Result<(), Abort>,
    ) -> Result<(), Abort> {
        if j == i {
            if remaining != 1 {
                return Ok(());
            }
            let negatives: i128 = state.magnitude[i].iter().map(|&m| m as i128).sum();
            state.gamma[i] = state.pos_sum[i] - negatives;
            if !self.affine_ok(state, i) {
                return Ok(());
            }
            return on_complete(self, state);
        }
        let last = j + 1 == i;
        for &d in &self.problem.divisors[i][j] {
            self.tick()?;
            if !remaining.is_multiple_of(d) || (last && d != remaining) {
                continue;
            }
            let product = state.pos_product[j] * d;
            if !self.problem.pos_target[j].is_multiple_of(product) {
                continue;
            }
            state.magnitude[i][j] = d;
            state.pos_product[j] = product;
            state.pos_sum[j] += d as i128;
            let result = self.assign(state, i, j + 1, remaining / d, on_complete);
            state.pos_sum[j] -= d as i128;
            state.pos_product[j] /= d;
            result?;
        }
        Ok(())
    }

    /// Processes `P_i` and everything below it.
    fn level(&self, state: &mut State, i: usize, out: &mut Vec<Vec<Vec<u128>>>) -> Result<(), Abort> {
        if state.pos_product[i] != self.problem.pos_target[i] {
            return Ok(());
        }
        if i == 0 {
            state.gamma[0] = state.pos_sum[0];
            if self.affine_ok(state, 0) {
                out.push(state.magnitude.clone());
            }
            return Ok(());
        }
        let target = self.problem.neg_target[i];
        self.assign(state, i, 0, target, &mut |search, state| search.level(state, i - 1, out))
    }
}

fn candidate_data(problem: &Problem, magnitude: &[Vec<u128>]) -> Result<FixedPointData, SolverError> {
    let n = problem.n;
    let as_weight = |m: u128| i64::try_from(m).map_err(|_| SolverError::Overflow);
    let mut points = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut weights = Vec::with_capacity(n);
        for &m in &magnitude[i] {
            weights.push(-as_weight(m)?);
        }
        for row in magnitude.iter().skip(i + 1) {
            weights.push(as_weight(row[i])?);
        }
        points.push((Rat::from(problem.phis[i]), weights));
    }
    Ok(FixedPointData::new(n, points).expect("one weight per other fixed point"))
}

/// Every check a candidate weight system must pass to be reported.
pub(crate) fn passes_filters(data: &FixedPointData, neg_targets: &[Rat], pos_targets: &[Rat]) -> bool {
    validate(data).is_valid()
        && c1_coefficient(data).is_ok()
        && condition_d_offset(data).is_ok()
        && vanishing_battery(data).is_ok_and(|b| b.passed())
        && data
            .points()
            .iter()
            .all(|p| p.lambda_minus() == neg_targets[p.index()] && p.lambda_plus() == pos_targets[p.index()])
}

/// Finds all weight systems on the given moment values that are compatible
/// with `spec` under the paired-sphere ansatz.
pub fn enumerate_weight_systems(
    spec: &RingSpec,
    phis: &[i64],
    opts: &EnumerationOptions,
) -> Result<Enumeration, SolverError> {
    let neg_targets = lambda_minus_targets(spec, phis)?;
    let pos_targets = positive_targets(spec, phis)?;
    let n = spec.n;
    let filter_only = matches!(spec.kind, RingKind::Other(_));
    let empty = Enumeration {
        systems: Vec::new(),
        nodes_explored: 0,
        filter_only,
    };

    let mut neg_target = Vec::with_capacity(n + 1);
    let mut pos_target = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let (Some(neg), Some(pos)) = (
            target_magnitude(&neg_targets[i], i % 2 == 1)?,
            target_magnitude(&pos_targets[i], false)?,
        ) else {
            return Ok(empty);
        };
        neg_target.push(neg);
        pos_target.push(pos);
    }

    let span = (phis[n] as i128 - phis[0] as i128) as u128;
    let bound = opts.max_abs_weight.map_or(span, u128::from);
    let divisors = (0..=n)
        .map(|i| {
            (0..i)
                .map(|j| divisors_up_to((phis[i] as i128 - phis[j] as i128) as u128, bound))
                .collect()
        })
        .collect();
    let problem = Problem {
        n,
        phis: phis.to_vec(),
        divisors,
        neg_target,
        pos_target,
    };

    let counter = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let search = Search {
        problem: &problem,
        counter: &counter,
        budget: opts.budget,
        aborted: &aborted,
        cancel: opts.cancel.as_deref(),
    };
    let budget_error = |counter: &AtomicU64| SolverError::SearchBudgetExceeded {
        explored: counter.load(Ordering::Relaxed),
        cancelled: opts.cancel.as_ref().is_some_and(|c| c.load(Ordering::Relaxed)),
    };

    let mut root = State {
        magnitude: (0..=n).map(|i| vec![0; i]).collect(),
        pos_product: vec![1; n + 1],
        pos_sum: vec![0; n + 1],
        gamma: vec![0; n + 1],
    };

    // The top point has no positive weights, so its choices split the search
    // into independent subtrees.
    let mut prefixes = Vec::new();
    if root.pos_product[n] == problem.pos_target[n] {
        let collected = search.assign(&mut root, n, 0, problem.neg_target[n], &mut |_, state| {
            prefixes.push(state.clone());
            Ok(())
        });
        if collected.is_err() {
            return Err(budget_error(&counter));
        }
    }

    let explore = |mut state: State| -> Result<Vec<Vec<Vec<u128>>>, Abort> {
        let mut out = Vec::new();
        search.level(&mut state, n - 1, &mut out)?;
        Ok(out)
    };
    let results: Vec<Result<Vec<Vec<Vec<u128>>>, Abort>> = if opts.jobs == 1 {
        prefixes.into_iter().map(explore).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| SolverError::ThreadPool(e.to_string()))?;
        pool.install(|| prefixes.into_par_iter().map(explore).collect())
    };

    let mut systems = Vec::new();
    for result in results {
        let Ok(found) = result else {
            return Err(budget_error(&counter));
        };
        for magnitude in found {
            let data = candidate_data(&problem, &magnitude)?;
            if passes_filters(&data, &neg_targets, &pos_targets) {
                systems.push(data);
            }
        }
    }
    systems.sort_by_key(FixedPointData::flattened_weights);
    systems.dedup();

    Ok(Enumeration {
        systems,
        nodes_explored: counter.load(Ordering::Relaxed),
        filter_only,
    })
}
