//! Exact search for Eulerian certificates under per-vertex visit caps.
//!
//! Edge classes are assigned usage counts one at a time in an order that
//! finishes vertices early, so parity and cap violations surface near the
//! top of the search tree.

use std::collections::VecDeque;
use std::time::Instant;

use thiserror::Error;

use super::certificate::{EulerianCertificate, WalkKind};
use crate::graph::{count_components, MultiGraph, Vertex, VertexSet};
use crate::trees::Dsu;

/// Maximum number of visits allowed at each vertex; `None` means unbounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VisitCaps(Vec<Option<u32>>);

impl VisitCaps {
    pub fn uniform(n: usize, k: u32) -> Self {
        VisitCaps(vec![Some(k); n])
    }

    pub fn unbounded(n: usize) -> Self {
        VisitCaps(vec![None; n])
    }

    /// Caps every vertex of `s` at `k`, leaving the rest unbounded.
    pub fn on_set(n: usize, s: &VertexSet, k: u32) -> Self {
        let mut c = Self::unbounded(n);
        for v in s.iter() {
            c.0[v] = Some(k);
        }
        c
    }

    pub fn set(&mut self, v: Vertex, k: u32) {
        self.0[v] = Some(k);
    }

    pub fn get(&self, v: Vertex) -> Option<u32> {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn admits(&self, c: &EulerianCertificate) -> bool {
        c.visits().iter().enumerate().all(|(v, &t)| self.0[v].is_none_or(|k| t <= k))
    }
}

/// Optional wall-clock limit for a search.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn until(deadline: Instant) -> Self {
        Budget { deadline: Some(deadline) }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search interrupted by its time budget")]
pub struct Interrupted;

/// Result of searching for the least feasible `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinSearch {
    Found { k: u32, certificate: EulerianCertificate },
    /// No value of `k` works.
    Absent,
    /// Every `k` up to the limit fails, but larger ones were not tried.
    AboveLimit(u32),
}

/// Searches for a certificate with `visits(v) <= caps(v)` for all `v`.
///
/// Complete: `None` means no such walk (or trail) exists. A disconnected
/// graph has none.
pub fn find_bounded_walk(g: &MultiGraph, caps: &VisitCaps, kind: WalkKind) -> Option<EulerianCertificate> {
    find_bounded_walk_within(g, caps, kind, Budget::unlimited()).expect("unlimited budget")
}

pub fn find_bounded_walk_within(
    g: &MultiGraph,
    caps: &VisitCaps,
    kind: WalkKind,
    budget: Budget,
) -> Result<Option<EulerianCertificate>, Interrupted> {
    assert_eq!(caps.len(), g.n(), "caps must cover every vertex");
    if g.n() == 0 || !g.is_connected() {
        return Ok(None);
    }
    if g.n() == 1 {
        return Ok(Some(EulerianCertificate::new_unchecked(g.clone(), kind, Vec::new())));
    }
    let mut search = Search::new(g, caps, kind, budget);
    if search.run()? {
        let cert = EulerianCertificate::new_unchecked(g.clone(), kind, search.usage_by_edge());
        debug_assert!(cert.validate().is_ok() && caps.admits(&cert));
        Ok(Some(cert))
    } else {
        Ok(None)
    }
}

/// Least `k` admitting a spanning closed walk meeting every vertex at most
/// `k` times. `None` only for disconnected graphs.
pub fn min_walk_number(g: &MultiGraph) -> Option<u32> {
    match min_certificate(g, WalkKind::Walk, u32::MAX, Budget::unlimited()).expect("unlimited budget") {
        MinSearch::Found { k, .. } => Some(k),
        _ => None,
    }
}

/// Least `k` admitting a spanning closed trail with at most `k` visits per
/// vertex, or `None` when no spanning closed trail exists.
pub fn min_trail_number(g: &MultiGraph) -> Option<u32> {
    match min_certificate(g, WalkKind::Trail, u32::MAX, Budget::unlimited()).expect("unlimited budget") {
        MinSearch::Found { k, .. } => Some(k),
        _ => None,
    }
}

/// Tries `k = lower, lower + 1, ...` until a certificate appears, `k`
/// passes `limit`, or `k` reaches the point where caps no longer bind.
pub fn min_certificate(g: &MultiGraph, kind: WalkKind, limit: u32, budget: Budget) -> Result<MinSearch, Interrupted> {
    if g.n() == 0 || !g.is_connected() {
        return Ok(MinSearch::Absent);
    }
    // a vertex of degree d is visited at most d (walk) or d/2 (trail) times
    let ceiling = match kind {
        WalkKind::Walk => g.max_degree().max(1),
        WalkKind::Trail => (g.max_degree() / 2).max(1),
    } as u32;
    let mut k = toughness_lower_bound(g).max(1);
    while k <= ceiling {
        if k > limit {
            return Ok(MinSearch::AboveLimit(limit));
        }
        if budget.expired() {
            return Err(Interrupted);
        }
        if let Some(c) = find_bounded_walk_within(g, &VisitCaps::uniform(g.n(), k), kind, budget)? {
            return Ok(MinSearch::Found { k, certificate: c });
        }
        k += 1;
    }
    Ok(MinSearch::Absent)
}

/// `max ceil(omega(G - S) / |S|)` over non-empty `S`; every spanning closed
/// walk visits `S` at least `omega(G - S)` times in total.
fn toughness_lower_bound(g: &MultiGraph) -> u32 {
    let n = g.n();
    if n > 14 {
        return 1;
    }
    let mut best = 1;
    for mask in 1u64..(1 << n) - 1 {
        let s = VertexSet::from_mask(mask);
        let w = count_components(g, &s) as u32;
        best = best.max(w.div_ceil(s.len() as u32));
    }
    best
}

const CHECK_EVERY: u64 = 4096;

struct Search<'a> {
    n: usize,
    classes: Vec<(Vertex, Vertex)>,
    edge_of_class: Vec<usize>,
    max_use: Vec<u32>,
    deg_cap: Vec<u32>,
    close_at: Vec<usize>,
    deg: Vec<u32>,
    assign: Vec<u32>,
    budget: Budget,
    nodes: u64,
    g: &'a MultiGraph,
}

impl<'a> Search<'a> {
    fn new(g: &'a MultiGraph, caps: &VisitCaps, kind: WalkKind, budget: Budget) -> Self {
        let n = g.n();
        // BFS order from 0, then classes sorted so each vertex closes early
        let mut pos = vec![usize::MAX; n];
        let mut queue = VecDeque::from([0]);
        pos[0] = 0;
        let mut next = 1;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in g.neighbors(v) {
                if pos[w] == usize::MAX {
                    pos[w] = next;
                    next += 1;
                    queue.push_back(w);
                }
            }
        }
        let mut order: Vec<usize> = (0..g.edges().len()).collect();
        order.sort_by_key(|&i| {
            let e = g.edges()[i].0;
            let (a, b) = (pos[e.0], pos[e.1]);
            (a.max(b), a.min(b))
        });
        let classes: Vec<(Vertex, Vertex)> = order.iter().map(|&i| (g.edges()[i].0 .0, g.edges()[i].0 .1)).collect();
        let max_use = order.iter().map(|&i| g.edges()[i].1 * kind.per_instance()).collect();
        let mut close_at = vec![usize::MAX; n];
        for (i, &(u, v)) in classes.iter().enumerate() {
            close_at[u] = i;
            close_at[v] = i;
        }
        let deg_cap = (0..n)
            .map(|v| {
                let natural = g.degree(v) as u32 * kind.per_instance();
                caps.get(v).map_or(natural, |k| natural.min(2 * k))
            })
            .collect();
        Search {
            n,
            assign: vec![0; classes.len()],
            classes,
            edge_of_class: order,
            max_use,
            deg_cap,
            close_at,
            deg: vec![0; n],
            budget,
            nodes: 0,
            g,
        }
    }

    fn usage_by_edge(&self) -> Vec<u32> {
        let mut usage = vec![0; self.g.edges().len()];
        for (c, &i) in self.edge_of_class.iter().enumerate() {
            usage[i] = self.assign[c];
        }
        usage
    }

    fn run(&mut self) -> Result<bool, Interrupted> {
        if self.deg_cap.iter().any(|&c| c < 2) {
            return Ok(false);
        }
        self.go(0)
    }

    fn go(&mut self, i: usize) -> Result<bool, Interrupted> {
        if i == self.classes.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(CHECK_EVERY) && self.budget.expired() {
            return Err(Interrupted);
        }
        let (u, v) = self.classes[i];
        let room = (self.deg_cap[u] - self.deg[u]).min(self.deg_cap[v] - self.deg[v]);
        let hi = self.max_use[i].min(room);
        for x in (1..=hi).chain([0]) {
            self.assign[i] = x;
            self.deg[u] += x;
            self.deg[v] += x;
            if self.closes_ok(i, u) && self.closes_ok(i, v) && self.feasible(i + 1) && self.go(i + 1)? {
                return Ok(true);
            }
            self.deg[u] -= x;
            self.deg[v] -= x;
        }
        self.assign[i] = 0;
        Ok(false)
    }

    fn closes_ok(&self, i: usize, v: Vertex) -> bool {
        self.close_at[v] != i || (self.deg[v].is_multiple_of(2) && self.deg[v] >= 2)
    }

    fn usable(&self, c: usize) -> bool {
        let (u, v) = self.classes[c];
        self.deg[u] < self.deg_cap[u] && self.deg[v] < self.deg_cap[v]
    }

    /// Whether the partial assignment can still be completed, judged by
    /// connectivity and parity over the edges that remain usable.
    fn feasible(&self, next: usize) -> bool {
        let mut reach = Dsu::new(self.n);
        let mut parity = Dsu::new(self.n);
        let mut parts = self.n;
        for c in 0..next {
            if self.assign[c] > 0 {
                let (u, v) = self.classes[c];
                if reach.union(u, v) {
                    parts -= 1;
                }
            }
        }
        for c in next..self.classes.len() {
            if self.usable(c) {
                let (u, v) = self.classes[c];
                if reach.union(u, v) {
                    parts -= 1;
                }
                parity.union(u, v);
            }
        }
        if parts != 1 {
            return false;
        }
        let mut odd = vec![false; self.n];
        for v in 0..self.n {
            if self.deg[v] % 2 == 1 {
                let r = parity.find(v);
                odd[r] = !odd[r];
            }
        }
        odd.iter().all(|&o| !o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn cycle_is_hamiltonian() {
        let g = families::cycle(5);
        let c = find_bounded_walk(&g, &VisitCaps::uniform(5, 1), WalkKind::Walk).unwrap();
        assert_eq!(c.usage(), &[1; 5]);
    }

    #[test]
    fn star_has_no_trail() {
        let g = families::star(3);
        assert!(find_bounded_walk(&g, &VisitCaps::uniform(4, 1), WalkKind::Trail).is_none());
        assert!(find_bounded_walk(&g, &VisitCaps::uniform(4, 3), WalkKind::Trail).is_none());
    }

    #[test]
    fn star_walk_doubles_every_edge() {
        let g = families::star(3);
        let c = find_bounded_walk(&g, &VisitCaps::uniform(4, 3), WalkKind::Walk).unwrap();
        assert_eq!(c.usage(), &[2, 2, 2]);
        assert_eq!(c.visits()[0], 3);
        assert!(find_bounded_walk(&g, &VisitCaps::uniform(4, 2), WalkKind::Walk).is_none());
    }

    #[test]
    fn small_minimum_numbers() {
        assert_eq!(min_walk_number(&families::complete(4)), Some(1));
        assert_eq!(min_trail_number(&families::complete(4)), Some(1));
        assert_eq!(min_walk_number(&families::petersen()), Some(2));
        assert_eq!(min_trail_number(&families::complete_bipartite(3, 4)), Some(2));
        assert_eq!(min_trail_number(&families::star(3)), None);
        assert_eq!(min_walk_number(&families::path(1)), Some(1));
        assert_eq!(min_trail_number(&families::path(2)), None);
        assert_eq!(min_walk_number(&families::path(2)), Some(1));
        assert_eq!(min_walk_number(&families::herschel()), Some(2));
    }

    #[test]
    fn petersen_has_no_hamilton_cycle() {
        let g = families::petersen();
        assert!(find_bounded_walk(&g, &VisitCaps::uniform(10, 1), WalkKind::Walk).is_none());
        let c = find_bounded_walk(&g, &VisitCaps::uniform(10, 2), WalkKind::Walk).unwrap();
        assert!(c.max_visits(None) <= 2);
    }

    #[test]
    fn caps_on_a_subset() {
        // K_{2,4}: the 2-side must absorb four returns between them
        let g = families::complete_bipartite(2, 4);
        let s = VertexSet::from([0, 1]);
        assert!(find_bounded_walk(&g, &VisitCaps::on_set(6, &s, 1), WalkKind::Walk).is_none());
        let c = find_bounded_walk(&g, &VisitCaps::on_set(6, &s, 2), WalkKind::Walk).unwrap();
        assert!(c.max_visits(Some(&s)) <= 2);
    }

    #[test]
    fn disconnected_has_nothing() {
        let g = MultiGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(find_bounded_walk(&g, &VisitCaps::unbounded(4), WalkKind::Walk).is_none());
        assert_eq!(min_walk_number(&g), None);
    }

    #[test]
    fn expired_budget_interrupts() {
        let g = families::complete_bipartite(4, 8);
        let past = Budget::until(Instant::now());
        assert_eq!(
            min_certificate(&g, WalkKind::Trail, 8, past),
            Err(Interrupted)
        );
    }

    #[test]
    fn monotone_in_k() {
        for g in [families::petersen(), families::complete_bipartite(3, 5), families::two_k4_bridged()] {
            let k = min_walk_number(&g).unwrap();
            let c = find_bounded_walk(&g, &VisitCaps::uniform(g.n(), k), WalkKind::Walk).unwrap();
            assert!(VisitCaps::uniform(g.n(), k + 1).admits(&c));
            assert!(find_bounded_walk(&g, &VisitCaps::uniform(g.n(), k + 1), WalkKind::Walk).is_some());
        }
    }
}
