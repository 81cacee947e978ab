//! Exhaustive checks of the toughness-type sufficient conditions for
//! bounded walks and trails.

use serde::{Serialize, Serializer};

use super::certificate::{EulerianCertificate, WalkKind};
use super::oracle::{find_bounded_walk, VisitCaps};
use crate::error::PreconditionError;
use crate::graph::{count_components, edges_within, MultiGraph, VertexSet};
use crate::trees::{format_rational, omega_value, Rational};

pub const WALK_SWEEP_LIMIT: usize = 20;
pub const TRAIL_SWEEP_LIMIT: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Lemma {
    Walk,
    Trail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub lemma: Lemma,
    pub k: u32,
    /// The subset with the least slack `right - left`.
    pub worst: VertexSet,
    #[serde(serialize_with = "as_fraction")]
    pub left: Rational,
    #[serde(serialize_with = "as_fraction")]
    pub right: Rational,
    /// Number of subsets violating the inequality.
    pub violations: usize,
    pub satisfied: bool,
    pub fallback: Option<EulerianCertificate>,
}

impl HypothesisReport {
    pub fn slack(&self) -> Rational {
        self.right - self.left
    }
}

fn as_fraction<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

fn half() -> Rational {
    Rational::new(1, 2)
}

/// `(omega(G - S), (k - 1/2)|S| + 1)`.
pub fn walk_sides(g: &MultiGraph, s: &VertexSet, k: u32) -> (Rational, Rational) {
    let left = Rational::from_integer(count_components(g, s) as i64);
    let right = (Rational::from_integer(k as i64) - half()) * s.len() as i64 + 1;
    (left, right)
}

/// `(Omega(G - S), (k - 1/2)|S| + 1 - e_G(S)/2)`.
pub fn trail_sides(g: &MultiGraph, s: &VertexSet, k: u32) -> (Rational, Rational) {
    let left = omega_value(&g.remove_vertices(s));
    let right = (Rational::from_integer(k as i64) - half()) * s.len() as i64 + 1
        - half() * edges_within(g, s) as i64;
    (left, right)
}

struct Sweep {
    worst: Option<(VertexSet, Rational, Rational)>,
    violating: Vec<VertexSet>,
}

impl Sweep {
    fn new() -> Self {
        Sweep { worst: None, violating: Vec::new() }
    }

    fn record(&mut self, s: VertexSet, left: Rational, right: Rational) {
        if left > right {
            self.violating.push(s.clone());
        }
        let better = match &self.worst {
            None => true,
            Some((_, l, r)) => right - left < *r - *l,
        };
        if better {
            self.worst = Some((s, left, right));
        }
    }
}

/// Sweeps every `S` contained in the independent set `x`.
///
/// With `use_fallback`, a violating `S` still counts as satisfied when some
/// spanning closed walk meets each vertex of `S` at most `k` times. A walk
/// capping all of `x` settles every `S` at once and is tried first.
pub fn check_walk_hypothesis(
    g: &MultiGraph,
    x: &VertexSet,
    k: u32,
    use_fallback: bool,
) -> Result<HypothesisReport, PreconditionError> {
    if !g.is_independent(x) {
        return Err(PreconditionError::NotIndependent(x.clone()));
    }
    if x.len() > WALK_SWEEP_LIMIT {
        return Err(PreconditionError::TooLarge { what: "independent set", limit: WALK_SWEEP_LIMIT, got: x.len() });
    }
    let members = x.as_slice();
    let mut sweep = Sweep::new();
    for mask in 0u64..1 << members.len() {
        let s: VertexSet = (0..members.len()).filter(|i| mask >> i & 1 == 1).map(|i| members[i]).collect();
        let (l, r) = walk_sides(g, &s, k);
        sweep.record(s, l, r);
    }
    let violations = sweep.violating.len();
    let mut satisfied = violations == 0;
    let mut fallback = None;
    if !satisfied && use_fallback {
        let n = g.n();
        fallback = find_bounded_walk(g, &VisitCaps::on_set(n, x, k), WalkKind::Walk);
        satisfied = fallback.is_some()
            || sweep
                .violating
                .iter()
                .all(|s| find_bounded_walk(g, &VisitCaps::on_set(n, s, k), WalkKind::Walk).is_some());
    }
    let (worst, left, right) = sweep.worst.expect("the empty set is always swept");
    Ok(HypothesisReport { lemma: Lemma::Walk, k, worst, left, right, violations, satisfied, fallback })
}

/// Sweeps every `S` contained in `V(G)`.
pub fn check_trail_hypothesis(g: &MultiGraph, k: u32) -> Result<HypothesisReport, PreconditionError> {
    let n = g.n();
    if n > TRAIL_SWEEP_LIMIT {
        return Err(PreconditionError::TooLarge { what: "vertex count", limit: TRAIL_SWEEP_LIMIT, got: n });
    }
    let mut sweep = Sweep::new();
    for mask in 0u64..1 << n {
        let s = VertexSet::from_mask(mask);
        let (l, r) = trail_sides(g, &s, k);
        sweep.record(s, l, r);
    }
    let violations = sweep.violating.len();
    let (worst, left, right) = sweep.worst.expect("the empty set is always swept");
    Ok(HypothesisReport {
        lemma: Lemma::Trail,
        k,
        worst,
        left,
        right,
        violations,
        satisfied: violations == 0,
        fallback: None,
    })
}
