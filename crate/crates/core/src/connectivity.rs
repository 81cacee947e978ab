//! Vertex connectivity, contractible edges and Halin's structure lemmas for
//! minimally 3-connected graphs.
//!
//! Connectivity is always measured on the underlying simple graph. A graph is
//! k-connected when it has more than k vertices and no vertex cut of fewer
//! than k vertices.

use serde::Serialize;

use crate::error::PreconditionError;
use crate::graph::{contract_edge, Edge, MultiGraph, Vertex, VertexSet};

/// Unit-capacity flow network over split vertices `v_in = 2v`, `v_out = 2v+1`.
struct SplitNetwork {
    head: Vec<usize>,
    cap: Vec<i32>,
    next: Vec<usize>,
    first: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl SplitNetwork {
    fn new(g: &MultiGraph) -> Self {
        let mut net = SplitNetwork {
            head: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
            first: vec![NIL; 2 * g.n()],
        };
        for v in g.vertices() {
            net.arc(2 * v, 2 * v + 1, 1);
        }
        for &(e, _) in g.edges() {
            net.arc(2 * e.0 + 1, 2 * e.1, 1);
            net.arc(2 * e.1 + 1, 2 * e.0, 1);
        }
        net
    }

    fn arc(&mut self, from: usize, to: usize, c: i32) {
        for (a, b, c) in [(from, to, c), (to, from, 0)] {
            self.head.push(b);
            self.cap.push(c);
            self.next.push(self.first[a]);
            self.first[a] = self.head.len() - 1;
        }
    }

    /// Internally disjoint s-t paths, stopping once `limit` are found.
    fn local_connectivity(&self, s: Vertex, t: Vertex, limit: usize) -> usize {
        let mut cap = self.cap.clone();
        let (src, dst) = (2 * s + 1, 2 * t);
        let nodes = self.first.len();
        let mut flow = 0;
        while flow < limit {
            let mut pred = vec![NIL; nodes];
            pred[src] = NIL - 1;
            let mut queue = std::collections::VecDeque::from([src]);
            'bfs: while let Some(u) = queue.pop_front() {
                let mut a = self.first[u];
                while a != NIL {
                    let w = self.head[a];
                    if cap[a] > 0 && pred[w] == NIL {
                        pred[w] = a;
                        if w == dst {
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                    a = self.next[a];
                }
            }
            if pred[dst] == NIL {
                break;
            }
            let mut w = dst;
            while w != src {
                let a = pred[w];
                cap[a] -= 1;
                cap[a ^ 1] += 1;
                w = self.head[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Minimum number of vertices whose removal disconnects the graph or leaves a
/// single vertex. `K_n` gives `n - 1`; a disconnected graph gives 0.
pub fn vertex_connectivity(g: &MultiGraph) -> usize {
    connectivity_capped(g, usize::MAX)
}

/// `min(vertex_connectivity(g), cap)`, computed with flows stopped at `cap`.
pub fn connectivity_capped(g: &MultiGraph, cap: usize) -> usize {
    let n = g.n();
    if n <= 1 || !g.is_connected() {
        return 0;
    }
    let mut best = (n - 1).min(cap);
    let net = SplitNetwork::new(g);
    for u in 0..n {
        for v in u + 1..n {
            if best == 0 {
                return 0;
            }
            if g.has_edge(u, v) {
                continue;
            }
            best = best.min(net.local_connectivity(u, v, best));
        }
    }
    best
}

pub fn is_k_connected(g: &MultiGraph, k: usize) -> bool {
    g.n() > k && connectivity_capped(g, k) >= k
}

/// Whether `G/e` is still 3-connected (which needs at least 4 vertices).
pub fn is_contractible_edge(g: &MultiGraph, e: Edge) -> Result<bool, PreconditionError> {
    let h = contract_edge(g, e)?;
    Ok(is_k_connected(&h, 3))
}

/// 3-connected, and deleting any single edge instance destroys that.
pub fn is_minimally_3_connected(g: &MultiGraph) -> bool {
    if !is_k_connected(g, 3) {
        return false;
    }
    g.edges().iter().all(|&(e, _)| {
        let h = g.delete_edge(e).expect("edge present");
        !is_k_connected(&h, 3)
    })
}

/// `V_3(G)`, the vertices of degree exactly 3.
pub fn degree_three_vertices(g: &MultiGraph) -> VertexSet {
    g.vertices().filter(|&v| g.degree(v) == 3).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Vertex { vertex: Vertex },
    Edge { edge: Edge },
    Cycle { cycle: Vec<Vertex> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalinCheck {
    pub property: &'static str,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalinReport {
    pub graph_id: String,
    pub checks: Vec<HalinCheck>,
}

impl HalinReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, property: &str) -> Option<&HalinCheck> {
        self.checks.iter().find(|c| c.property == property)
    }
}

pub const DEG3_HAS_CONTRACTIBLE_EDGE: &str = "deg3-has-contractible-edge";
pub const V3_NONEMPTY: &str = "V3-nonempty";
pub const HIGH_HIGH_EDGES_CONTRACTIBLE: &str = "high-high-edges-contractible";
pub const CONTRACTION_PRESERVES_MINIMALITY: &str = "contraction-preserves-minimality";
pub const CYCLE_HAS_TWO_V3: &str = "cycle-has-two-V3";

fn outcome(property: &'static str, witness: Option<Witness>) -> HalinCheck {
    let status = if witness.is_some() { CheckStatus::Fail } else { CheckStatus::Pass };
    HalinCheck { property, status, witness }
}

/// Evaluates every Halin property exhaustively on a minimally 3-connected
/// graph. These are theorems, so a failure is a bug and the witness is the
/// thing to debug with.
pub fn verify_halin_properties(g: &MultiGraph) -> Result<HalinReport, PreconditionError> {
    if !is_minimally_3_connected(g) {
        return Err(PreconditionError::NotMinimally3Connected);
    }
    let v3 = degree_three_vertices(g);
    let contractible = |e: Edge| is_contractible_edge(g, e).expect("edge from the graph");
    let mut checks = Vec::new();

    if g.n() == 4 {
        // K_4 is the only 3-connected graph on 4 vertices and is excluded
        checks.push(HalinCheck {
            property: DEG3_HAS_CONTRACTIBLE_EDGE,
            status: CheckStatus::Skipped,
            witness: None,
        });
    } else {
        let bad = v3.iter().find(|&v| {
            !g.neighbors(v).iter().any(|&(w, _)| contractible(Edge::new(v, w)))
        });
        checks.push(outcome(DEG3_HAS_CONTRACTIBLE_EDGE, bad.map(|vertex| Witness::Vertex { vertex })));
    }

    let min_vertex = g.vertices().min_by_key(|&v| g.degree(v));
    checks.push(outcome(
        V3_NONEMPTY,
        if v3.is_empty() { min_vertex.map(|vertex| Witness::Vertex { vertex }) } else { None },
    ));

    let high_edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|&(e, _)| e)
        .filter(|e| !v3.contains(e.0) && !v3.contains(e.1))
        .collect();
    let bad = high_edges.iter().find(|&&e| !contractible(e));
    checks.push(outcome(HIGH_HIGH_EDGES_CONTRACTIBLE, bad.map(|&edge| Witness::Edge { edge })));

    let bad = high_edges
        .iter()
        .find(|&&e| !is_minimally_3_connected(&contract_edge(g, e).expect("edge present")));
    checks.push(outcome(CONTRACTION_PRESERVES_MINIMALITY, bad.map(|&edge| Witness::Edge { edge })));

    checks.push(outcome(CYCLE_HAS_TWO_V3, cycle_with_few(g, &v3).map(|cycle| Witness::Cycle { cycle })));

    Ok(HalinReport { graph_id: g.structure_hash(), checks })
}

/// A cycle containing at most one vertex of `marked`, if any exists.
///
/// Such a cycle is either a cycle among unmarked vertices, or a marked vertex
/// plus a path through unmarked vertices joining two of its neighbours.
fn cycle_with_few(g: &MultiGraph, marked: &VertexSet) -> Option<Vec<Vertex>> {
    let free = |v: Vertex| !marked.contains(v);
    // parallel edges between unmarked vertices are 2-cycles
    for &(e, m) in g.edges() {
        if m > 1 && (free(e.0) || free(e.1)) {
            return Some(vec![e.0, e.1, e.0]);
        }
    }
    // BFS forest over unmarked vertices; a non-tree edge closes a cycle
    let n = g.n();
    let mut parent = vec![NIL; n];
    let mut root = vec![NIL; n];
    let mut depth = vec![0usize; n];
    for s in g.vertices().filter(|&v| free(v)) {
        if root[s] != NIL {
            continue;
        }
        root[s] = s;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(w, _) in g.neighbors(u) {
                if !free(w) {
                    continue;
                }
                if root[w] == NIL {
                    root[w] = s;
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                } else if w != parent[u] && u != parent[w] {
                    let mut c = tree_path(&parent, &depth, u, w);
                    c.push(u);
                    return Some(c);
                }
            }
        }
    }
    for v in marked.iter() {
        let nbrs: Vec<Vertex> = g.neighbors(v).iter().map(|&(w, _)| w).filter(|&w| free(w)).collect();
        for (i, &a) in nbrs.iter().enumerate() {
            if let Some(&b) = nbrs[i + 1..].iter().find(|&&b| root[b] == root[a]) {
                let mut c = vec![v];
                c.extend(tree_path(&parent, &depth, a, b));
                c.push(v);
                return Some(c);
            }
        }
    }
    None
}

/// Vertex path from `a` to `b` in a rooted forest (both in one tree).
fn tree_path(parent: &[usize], depth: &[usize], a: Vertex, b: Vertex) -> Vec<Vertex> {
    let (mut x, mut y) = (a, b);
    let mut left = vec![];
    let mut right = vec![];
    while depth[x] > depth[y] {
        left.push(x);
        x = parent[x];
    }
    while depth[y] > depth[x] {
        right.push(y);
        y = parent[y];
    }
    while x != y {
        left.push(x);
        right.push(y);
        x = parent[x];
        y = parent[y];
    }
    left.push(x);
    left.extend(right.into_iter().rev());
    left
}

/// A simple cycle (first vertex repeated at the end) through every vertex of
/// `targets`, which may hold at most three vertices.
///
/// Search is an exhaustive DFS over simple paths from the first target, so it
/// never misses a cycle that exists; 3-connectivity guarantees one does.
pub fn cycle_through(g: &MultiGraph, targets: &VertexSet) -> Result<Vec<Vertex>, PreconditionError> {
    if targets.len() > 3 {
        return Err(PreconditionError::TooManyTargets(targets.len()));
    }
    if !is_k_connected(g, 3) {
        return Err(PreconditionError::NotKConnected(3));
    }
    let starts: Vec<Vertex> = match targets.first() {
        Some(t) => vec![t],
        None => g.vertices().collect(),
    };
    for s in starts {
        let mut path = vec![s];
        let mut on = vec![false; g.n()];
        on[s] = true;
        if extend_cycle(g, targets, &mut path, &mut on) {
            path.push(s);
            return Ok(path);
        }
    }
    Err(PreconditionError::NoCycle(targets.clone()))
}

fn extend_cycle(g: &MultiGraph, targets: &VertexSet, path: &mut Vec<Vertex>, on: &mut [bool]) -> bool {
    let start = path[0];
    let last = *path.last().unwrap();
    let covered = targets.iter().all(|t| on[t]);
    if covered && path.len() >= 3 && g.has_edge(last, start) {
        return true;
    }
    for &(w, _) in g.neighbors(last) {
        if on[w] {
            continue;
        }
        on[w] = true;
        path.push(w);
        if extend_cycle(g, targets, path, on) {
            return true;
        }
        path.pop();
        on[w] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    /// Smallest vertex cut by enumerating subsets.
    fn brute_connectivity(g: &MultiGraph) -> usize {
        let n = g.n();
        if n <= 1 {
            return 0;
        }
        (0..n)
            .find(|&size| {
                (0u32..1 << n).filter(|m| m.count_ones() as usize == size).any(|m| {
                    let s = VertexSet::from_mask(m as u64);
                    let left = n - size;
                    left == 1 || crate::graph::count_components(g, &s) > 1
                })
            })
            .unwrap_or(n - 1)
    }

    #[test]
    fn small_connectivities() {
        assert_eq!(vertex_connectivity(&families::complete(4)), 3);
        assert_eq!(vertex_connectivity(&families::cycle(6)), 2);
        assert_eq!(vertex_connectivity(&families::petersen()), 3);
        assert_eq!(vertex_connectivity(&families::path(4)), 1);
        let disconnected = MultiGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(vertex_connectivity(&disconnected), 0);
        assert_eq!(vertex_connectivity(&families::icosahedron()), 5);
        // multiplicities are ignored
        assert_eq!(vertex_connectivity(&families::scaled(&families::cycle(5), 3)), 2);
    }

    #[test]
    fn flow_matches_cut_enumeration_on_families() {
        for g in [
            families::complete(5),
            families::wheel(5),
            families::prism(3),
            families::cube(),
            families::complete_bipartite(2, 4),
            families::star(4),
            families::two_k4_bridged(),
        ] {
            assert_eq!(vertex_connectivity(&g), brute_connectivity(&g));
        }
    }

    #[test]
    fn contractible_edges() {
        let k5 = families::complete(5);
        assert!(is_contractible_edge(&k5, Edge(0, 1)).unwrap());
        let k4 = families::complete(4);
        assert!(!is_contractible_edge(&k4, Edge(0, 1)).unwrap());
        assert!(is_contractible_edge(&k4, Edge(0, 9)).is_err());
        // W_6: contracting a rim edge leaves the wheel W_5, still 3-connected;
        // contracting a spoke merges the hub into the rim and leaves a 2-cut
        let w = families::wheel(5);
        for i in 0..5 {
            let rim = Edge::new(1 + i, 1 + (i + 1) % 5);
            assert!(is_contractible_edge(&w, rim).unwrap());
            assert!(!is_contractible_edge(&w, Edge(0, 1 + i)).unwrap());
        }
    }

    #[test]
    fn minimality() {
        assert!(is_minimally_3_connected(&families::complete(4)));
        assert!(!is_minimally_3_connected(&families::complete(5)));
        assert!(is_minimally_3_connected(&families::wheel(5)));
        assert!(is_minimally_3_connected(&families::prism(3)));
        assert!(!is_minimally_3_connected(&families::cycle(5)));
        // a doubled edge can always be dropped
        let doubled = families::complete(4).add_edge(0, 1, 1).unwrap();
        assert!(!is_minimally_3_connected(&doubled));
    }

    #[test]
    fn halin_on_k4_skips_the_excluded_check() {
        let r = verify_halin_properties(&families::complete(4)).unwrap();
        assert_eq!(r.check(DEG3_HAS_CONTRACTIBLE_EDGE).unwrap().status, CheckStatus::Skipped);
        for p in [V3_NONEMPTY, HIGH_HIGH_EDGES_CONTRACTIBLE, CONTRACTION_PRESERVES_MINIMALITY, CYCLE_HAS_TWO_V3] {
            assert_eq!(r.check(p).unwrap().status, CheckStatus::Pass, "{p}");
        }
    }

    #[test]
    fn halin_on_wheel_and_prism() {
        for g in [families::wheel(5), families::prism(3), families::complete_bipartite(3, 4)] {
            let r = verify_halin_properties(&g).unwrap();
            assert!(r.all_pass(), "{r:?}");
            assert_eq!(r.checks.len(), 5);
        }
    }

    #[test]
    fn halin_rejects_non_minimal() {
        assert_eq!(
            verify_halin_properties(&families::complete(5)),
            Err(PreconditionError::NotMinimally3Connected)
        );
    }

    #[test]
    fn cycle_with_few_finds_witness() {
        // in K_5 minus nothing marked, any triangle works
        let c = cycle_with_few(&families::complete(5), &VertexSet::new()).unwrap();
        assert_eq!(c.first(), c.last());
        // in a wheel with every rim vertex marked, every cycle passes the rim
        let w = families::wheel(5);
        assert!(cycle_with_few(&w, &VertexSet::from([1, 2, 3, 4, 5])).is_none());
        // marking only the hub and one rim vertex leaves rim cycles exposed
        let c = cycle_with_few(&w, &VertexSet::from([0, 1])).unwrap();
        let marked_hits = c[..c.len() - 1].iter().filter(|&&v| v <= 1).count();
        assert!(marked_hits <= 1, "{c:?}");
    }

    fn assert_cycle(g: &MultiGraph, c: &[Vertex], t: &VertexSet) {
        assert_eq!(c.first(), c.last());
        let body = &c[..c.len() - 1];
        let distinct: VertexSet = body.iter().copied().collect();
        assert_eq!(distinct.len(), body.len());
        assert!(body.len() >= 3);
        for w in c.windows(2) {
            assert!(g.has_edge(w[0], w[1]));
        }
        assert!(t.iter().all(|v| distinct.contains(v)));
    }

    #[test]
    fn cycles_through_targets() {
        let k4 = families::complete(4);
        let t = VertexSet::from([0, 1, 3]);
        let c = cycle_through(&k4, &t).unwrap();
        assert_cycle(&k4, &c, &t);

        let p = families::prism(3);
        let t = VertexSet::from([0, 1, 2]);
        let c = cycle_through(&p, &t).unwrap();
        assert_cycle(&p, &c, &t);

        let pet = families::petersen();
        let t = VertexSet::from([0, 2, 6]);
        assert!(pet.is_independent(&t));
        let c = cycle_through(&pet, &t).unwrap();
        assert_cycle(&pet, &c, &t);

        assert_eq!(
            cycle_through(&k4, &VertexSet::from([0, 1, 2, 3])),
            Err(PreconditionError::TooManyTargets(4))
        );
        assert!(cycle_through(&families::cycle(5), &VertexSet::from([0])).is_err());
    }
}
