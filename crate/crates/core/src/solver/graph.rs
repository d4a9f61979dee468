//! Reconstructing gradient spheres from weights and moment values.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::data::FixedPointData;
use crate::rat::Rat;

/// A gradient sphere between `P_lower` and `P_upper` carrying `−weight` at
/// the top and, when `paired`, `+weight` at the bottom. Its generic
/// stabilizer is `Z_weight`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GradientEdge {
    pub lower: usize,
    pub upper: usize,
    pub weight: u64,
    pub paired: bool,
}

impl GradientEdge {
    pub fn stabilizer_order(&self) -> u64 {
        self.weight
    }
}

/// A weight left over after pairing whose sphere cannot be placed uniquely.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmbiguousWeight {
    pub point: usize,
    pub weight: i64,
    /// Points it could reach under the divisibility constraint.
    pub candidates: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradientSphereGraph {
    /// Sorted by `(lower, upper, weight)`.
    pub edges: Vec<GradientEdge>,
    pub ambiguous: Vec<AmbiguousWeight>,
    /// Pairs `(lower, upper)` with no edge at all.
    pub missing_pairs: Vec<(usize, usize)>,
    /// Pairs `(lower, upper, count)` joined by more than one edge.
    pub multiple_pairs: Vec<(usize, usize, usize)>,
}

fn divides(w: u64, gap: &Rat) -> bool {
    gap.to_integer().is_some_and(|g| (g % BigInt::from(w)).is_zero())
}

/// Pairs `−w` at `P_i` with `+w` at `P_j`, `j < i`, whenever `w` divides
/// `φ_i − φ_j`, greedily taking the largest `w` first and then the closest
/// pair of points.
pub fn gradient_graph(data: &FixedPointData) -> GradientSphereGraph {
    let points = data.points();
    let count = points.len();
    let gap = |j: usize, i: usize| points[i].moment_value() - points[j].moment_value();

    // Remaining multiplicities of |w| among negative and positive weights.
    let mut negatives: Vec<BTreeMap<u64, usize>> = vec![BTreeMap::new(); count];
    let mut positives: Vec<BTreeMap<u64, usize>> = vec![BTreeMap::new(); count];
    for p in points {
        for &w in p.weights() {
            let side = if w < 0 { &mut negatives } else { &mut positives };
            *side[p.index()].entry(w.unsigned_abs()).or_default() += 1;
        }
    }

    let mut candidates: Vec<(u64, usize, usize)> = Vec::new();
    for i in 0..count {
        for &w in negatives[i].keys() {
            for j in 0..i {
                if positives[j].contains_key(&w) && divides(w, &gap(j, i)) {
                    candidates.push((w, j, i));
                }
            }
        }
    }
    candidates.sort_by(|a, b| b.0.cmp(&a.0).then((a.2 - a.1).cmp(&(b.2 - b.1))).then(a.1.cmp(&b.1)));

    let mut edges = Vec::new();
    for (w, j, i) in candidates {
        loop {
            let neg = negatives[i].get(&w).copied().unwrap_or(0);
            let pos = positives[j].get(&w).copied().unwrap_or(0);
            if neg == 0 || pos == 0 {
                break;
            }
            *negatives[i].get_mut(&w).unwrap() -= 1;
            *positives[j].get_mut(&w).unwrap() -= 1;
            edges.push(GradientEdge {
                lower: j,
                upper: i,
                weight: w,
                paired: true,
            });
        }
    }

    let mut ambiguous = Vec::new();
    for point in 0..count {
        for (&w, &left) in &negatives[point] {
            let targets: Vec<usize> = (0..point).filter(|&j| divides(w, &gap(j, point))).collect();
            for _ in 0..left {
                match targets.as_slice() {
                    [j] => edges.push(GradientEdge {
                        lower: *j,
                        upper: point,
                        weight: w,
                        paired: false,
                    }),
                    _ => ambiguous.push(AmbiguousWeight {
                        point,
                        weight: -(w as i64),
                        candidates: targets.clone(),
                    }),
                }
            }
        }
        for (&w, &left) in &positives[point] {
            let targets: Vec<usize> = (point + 1..count).filter(|&i| divides(w, &gap(point, i))).collect();
            for _ in 0..left {
                match targets.as_slice() {
                    [i] => edges.push(GradientEdge {
                        lower: point,
                        upper: *i,
                        weight: w,
                        paired: false,
                    }),
                    _ => ambiguous.push(AmbiguousWeight {
                        point,
                        weight: w as i64,
                        candidates: targets.clone(),
                    }),
                }
            }
        }
    }
    edges.sort();

    let mut multiplicity: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in &edges {
        *multiplicity.entry((e.lower, e.upper)).or_default() += 1;
    }
    let mut missing_pairs: Vec<(usize, usize)> = (0..count)
        .flat_map(|i| (0..i).map(move |j| (j, i)))
        .filter(|pair| !multiplicity.contains_key(pair))
        .collect();
    missing_pairs.sort();
    let multiple_pairs = multiplicity
        .into_iter()
        .filter(|&(_, c)| c > 1)
        .map(|((j, i), c)| (j, i, c))
        .collect();

    GradientSphereGraph {
        edges,
        ambiguous,
        missing_pairs,
        multiple_pairs,
    }
}
