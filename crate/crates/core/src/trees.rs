//! Edge-disjoint spanning trees, m-tree-connected components and `Ω(G)`.
//!
//! Tree packing uses matroid-partition augmentation over edge instances. The
//! component partition is read off the union matroid: two vertices lie in a
//! common m-tree-connected set exactly when an extra edge between them would
//! not enlarge a maximum union of `m` forests.

use std::collections::VecDeque;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::PreconditionError;
use crate::graph::{Edge, MultiGraph, Vertex, VertexSet};

pub type Rational = Ratio<i64>;

/// `m` edge-disjoint spanning trees, each a list of edge instances. An
/// instance is `(pair, copy)` where `copy < multiplicity(pair)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreePack {
    pub m: usize,
    pub trees: Vec<Vec<(Edge, u32)>>,
}

impl TreePack {
    /// Checks that every tree spans `g`, is acyclic, and no instance repeats.
    pub fn validate(&self, g: &MultiGraph) -> bool {
        if self.trees.len() != self.m {
            return false;
        }
        let mut used = std::collections::BTreeSet::new();
        for tree in &self.trees {
            if tree.len() + 1 != g.n().max(1) {
                return false;
            }
            let mut dsu = Dsu::new(g.n());
            for &(e, copy) in tree {
                if copy >= g.multiplicity(e.0, e.1) || !used.insert((e, copy)) || !dsu.union(e.0, e.1) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; false if they were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// `m` forests packed greedily with augmenting swaps (Edmonds' matroid
/// partitioning specialised to graphic matroids).
pub(crate) struct ForestPacking {
    n: usize,
    m: usize,
    ends: Vec<(Vertex, Vertex)>,
    owner: Vec<Option<usize>>,
}

impl ForestPacking {
    pub(crate) fn new(n: usize, m: usize) -> Self {
        ForestPacking { n, m, ends: Vec::new(), owner: Vec::new() }
    }

    fn forest_adjacency(&self, f: usize) -> Vec<Vec<(Vertex, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.ends.iter().enumerate() {
            if self.owner[i] == Some(f) {
                adj[u].push((v, i));
                adj[v].push((u, i));
            }
        }
        adj
    }

    /// Edge indices on the forest path from `u` to `v`, or `None` when they
    /// lie in different trees of the forest.
    fn forest_path(adj: &[Vec<(Vertex, usize)>], u: Vertex, v: Vertex) -> Option<Vec<usize>> {
        if u == v {
            return Some(Vec::new());
        }
        let mut via = vec![None; adj.len()];
        let mut seen = vec![false; adj.len()];
        seen[u] = true;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some((x, e));
                    if y == v {
                        let mut path = Vec::new();
                        let mut cur = v;
                        while let Some((p, e)) = via[cur] {
                            path.push(e);
                            cur = p;
                        }
                        return Some(path);
                    }
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Shortest augmenting sequence inserting `(u, v)`; returns the chain of
    /// (edge, forest it moves into), or `None` when the packing is maximal
    /// with respect to this edge.
    fn augmenting_chain(&self, u: Vertex, v: Vertex) -> Option<Vec<(usize, usize)>> {
        let adjs: Vec<_> = (0..self.m).map(|f| self.forest_adjacency(f)).collect();
        // node NEW stands for the candidate edge
        let new = self.ends.len();
        let ends = |i: usize| if i == new { (u, v) } else { self.ends[i] };
        let owner = |i: usize| if i == new { None } else { self.owner[i] };
        let mut label: Vec<Option<(usize, usize)>> = vec![None; new + 1];
        let mut seen = vec![false; new + 1];
        seen[new] = true;
        let mut queue = VecDeque::from([new]);
        while let Some(e) = queue.pop_front() {
            let (a, b) = ends(e);
            for f in 0..self.m {
                if owner(e) == Some(f) {
                    continue;
                }
                match Self::forest_path(&adjs[f], a, b) {
                    None => {
                        // e fits into forest f; unwind the labels
                        let mut chain = vec![(e, f)];
                        let mut cur = e;
                        while let Some((prev, into)) = label[cur] {
                            chain.push((prev, into));
                            cur = prev;
                        }
                        return Some(chain);
                    }
                    Some(cycle) => {
                        for g in cycle {
                            if !seen[g] {
                                seen[g] = true;
                                // g leaves f so that e can enter f
                                label[g] = Some((e, f));
                                queue.push_back(g);
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Would adding `(u, v)` make the packing larger?
    pub(crate) fn can_grow_with(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.augmenting_chain(u, v).is_some()
    }

    /// Adds an edge; true if the packing grew.
    pub(crate) fn insert(&mut self, u: Vertex, v: Vertex) -> bool {
        let chain = self.augmenting_chain(u, v);
        self.ends.push((u, v));
        self.owner.push(None);
        match chain {
            None => false,
            Some(chain) => {
                // the candidate's slot is the index just pushed
                for (e, f) in chain {
                    self.owner[e] = Some(f);
                }
                true
            }
        }
    }

    pub(crate) fn size(&self) -> usize {
        self.owner.iter().filter(|o| o.is_some()).count()
    }
}

fn packing_for(g: &MultiGraph, m: usize) -> (ForestPacking, Vec<(Edge, u32)>) {
    let mut pack = ForestPacking::new(g.n(), m);
    let mut instances = Vec::new();
    for &(e, mult) in g.edges() {
        // at most m copies of a pair can ever be used by m forests
        for copy in 0..mult.min(m as u32) {
            pack.insert(e.0, e.1);
            instances.push((e, copy));
        }
    }
    (pack, instances)
}

/// `m` edge-disjoint spanning trees if they exist.
pub fn find_disjoint_spanning_trees(g: &MultiGraph, m: usize) -> Option<TreePack> {
    assert!(m >= 1, "m must be positive");
    let n = g.n();
    if n <= 1 {
        return Some(TreePack { m, trees: vec![Vec::new(); m] });
    }
    if g.edge_count() < m * (n - 1) {
        return None;
    }
    let (pack, instances) = packing_for(g, m);
    if pack.size() < m * (n - 1) {
        return None;
    }
    let mut trees = vec![Vec::new(); m];
    for (i, inst) in instances.into_iter().enumerate() {
        if let Some(f) = pack.owner[i] {
            trees[f].push(inst);
        }
    }
    Some(TreePack { m, trees })
}

pub const NASH_WILLIAMS_LIMIT: usize = 12;

/// Whether every partition `Q` of `V(G)` has at least `m(|Q|-1)` crossing
/// edges, by sweeping all set partitions.
pub fn nash_williams_check(g: &MultiGraph, m: usize) -> Result<bool, PreconditionError> {
    let n = g.n();
    if n > NASH_WILLIAMS_LIMIT {
        return Err(PreconditionError::TooLarge {
            what: "partition sweep (use find_disjoint_spanning_trees)",
            limit: NASH_WILLIAMS_LIMIT,
            got: n,
        });
    }
    if n <= 1 {
        return Ok(true);
    }
    let mut block = vec![0usize; n];
    Ok(partitions_ok(g, m, &mut block, 1, 1))
}

// restricted-growth enumeration: vertex 0 sits in block 0
fn partitions_ok(g: &MultiGraph, m: usize, block: &mut [usize], next: usize, blocks: usize) -> bool {
    if next == block.len() {
        let crossing: usize = g
            .edges()
            .iter()
            .filter(|(e, _)| block[e.0] != block[e.1])
            .map(|&(_, c)| c as usize)
            .sum();
        return crossing >= m * (blocks - 1);
    }
    for b in 0..=blocks {
        block[next] = b;
        let nb = if b == blocks { blocks + 1 } else { blocks };
        if !partitions_ok(g, m, block, next + 1, nb) {
            return false;
        }
    }
    true
}

/// `m(|A|-1)` independent edges inside `G[A]`?
pub fn is_tree_connected(g: &MultiGraph, m: usize) -> bool {
    find_disjoint_spanning_trees(g, m).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TcPartition {
    pub m: usize,
    #[serde(serialize_with = "parts_as_lists")]
    pub parts: Vec<VertexSet>,
    pub crossing: usize,
    #[serde(serialize_with = "omega_as_string")]
    pub omega: Option<Rational>,
}

fn parts_as_lists<S: Serializer>(parts: &[VertexSet], s: S) -> Result<S::Ok, S::Error> {
    let lists: Vec<&[Vertex]> = parts.iter().map(|p| p.as_slice()).collect();
    lists.serialize(s)
}

fn omega_as_string<S: Serializer>(omega: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match omega {
        Some(r) => s.serialize_str(&format_rational(r)),
        None => s.serialize_none(),
    }
}

/// `p/q` with `q` always present, e.g. `3/2`, `1/1`, `-1/2`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl TcPartition {
    fn from_parts(g: &MultiGraph, m: usize, mut parts: Vec<VertexSet>) -> TcPartition {
        parts.sort();
        let mut block = vec![usize::MAX; g.n()];
        for (i, p) in parts.iter().enumerate() {
            for v in p.iter() {
                block[v] = i;
            }
        }
        let crossing = g
            .edges()
            .iter()
            .filter(|(e, _)| block[e.0] != block[e.1])
            .map(|&(_, c)| c as usize)
            .sum();
        let omega = (m == 2).then(|| Rational::from_integer(parts.len() as i64) - Rational::new(crossing as i64, 2));
        TcPartition { m, parts, crossing, omega }
    }
}

/// The unique partition of `V(G)` into maximal m-tree-connected induced
/// subgraphs; single vertices count as m-tree-connected.
pub fn tree_connected_components(g: &MultiGraph, m: usize) -> TcPartition {
    assert!(m >= 1, "m must be positive");
    let n = g.n();
    let (pack, _) = packing_for(g, m);
    let mut dsu = Dsu::new(n);
    let mut reps: Vec<Vertex> = Vec::new();
    for v in 0..n {
        match reps.iter().find(|&&r| !pack.can_grow_with(r, v)) {
            Some(&r) => {
                dsu.union(r, v);
            }
            None => reps.push(v),
        }
    }
    let mut groups: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for v in 0..n {
        let r = dsu.find(v);
        groups[r].push(v);
    }
    let parts = groups.into_iter().filter(|p| !p.is_empty()).map(VertexSet::from).collect();
    TcPartition::from_parts(g, m, parts)
}

/// `Ω(G) = |P| - e_G(P)/2` over the 2-tree-connected components; `Ω` of the
/// empty graph is 0.
pub fn omega_value(g: &MultiGraph) -> Rational {
    tree_connected_components(g, 2).omega.expect("m = 2 populates omega")
}

/// Reference decomposition by fixpoint merging: start from singletons and
/// merge any group of parts whose union induces an m-tree-connected
/// subgraph, smallest groups first. Exponential in the number of parts.
pub fn tree_connected_components_by_merging(g: &MultiGraph, m: usize) -> TcPartition {
    let mut parts: Vec<VertexSet> = g.vertices().map(|v| VertexSet::from([v])).collect();
    'outer: loop {
        let k = parts.len();
        for size in 2..=k {
            for mask in 0u64..1 << k {
                if mask.count_ones() as usize != size {
                    continue;
                }
                let union: VertexSet = (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .flat_map(|i| parts[i].iter().collect::<Vec<_>>())
                    .collect();
                if is_tree_connected(&g.induced_subgraph(&union), m) {
                    let mut next: Vec<VertexSet> =
                        (0..k).filter(|i| mask >> i & 1 == 0).map(|i| parts[i].clone()).collect();
                    next.push(union);
                    parts = next;
                    continue 'outer;
                }
            }
        }
        break;
    }
    TcPartition::from_parts(g, m, parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn k4_packs_two_trees() {
        let k4 = families::complete(4);
        let pack = find_disjoint_spanning_trees(&k4, 2).unwrap();
        assert!(pack.validate(&k4));
        assert!(find_disjoint_spanning_trees(&k4, 3).is_none());
    }

    #[test]
    fn c4_has_no_two_trees_but_doubled_c4_does() {
        assert!(find_disjoint_spanning_trees(&families::cycle(4), 2).is_none());
        let d = families::scaled(&families::cycle(4), 2);
        let pack = find_disjoint_spanning_trees(&d, 2).unwrap();
        assert!(pack.validate(&d));
    }

    #[test]
    fn k6_packs_three_trees() {
        let k6 = families::complete(6);
        let pack = find_disjoint_spanning_trees(&k6, 3).unwrap();
        assert!(pack.validate(&k6));
    }

    #[test]
    fn nash_williams_examples() {
        assert!(nash_williams_check(&families::complete(4), 2).unwrap());
        assert!(!nash_williams_check(&families::path(5), 2).unwrap());
        assert!(!nash_williams_check(&families::star(3), 2).unwrap());
        assert!(nash_williams_check(&families::complete(6), 3).unwrap());
        assert!(!nash_williams_check(&families::complete(6), 4).unwrap());
        assert!(nash_williams_check(&families::complete(13), 2).is_err());
    }

    #[test]
    fn single_vertex_partition() {
        let p = tree_connected_components(&MultiGraph::empty(1), 2);
        assert_eq!(p.parts, vec![VertexSet::from([0])]);
        assert_eq!(p.crossing, 0);
        assert_eq!(p.omega, Some(Rational::from_integer(1)));
    }

    #[test]
    fn path_on_three_is_all_singletons() {
        let p = tree_connected_components(&families::path(3), 2);
        assert_eq!(p.parts.len(), 3);
        assert_eq!(p.crossing, 2);
        assert_eq!(p.omega, Some(Rational::from_integer(2)));
    }

    #[test]
    fn bridged_k4s_split_at_the_bridge() {
        let g = families::two_k4_bridged();
        let p = tree_connected_components(&g, 2);
        assert_eq!(p.parts, vec![VertexSet::from([0, 1, 2, 3]), VertexSet::from([4, 5, 6, 7])]);
        assert_eq!(p.crossing, 1);
        assert_eq!(p.omega, Some(Rational::new(3, 2)));
        assert_eq!(tree_connected_components_by_merging(&g, 2), p);
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_value(&families::complete(4)), Rational::from_integer(1));
        for n in 2..=8 {
            assert_eq!(omega_value(&families::path(n)), Rational::new(n as i64 + 1, 2));
        }
        assert_eq!(omega_value(&MultiGraph::empty(0)), Rational::from_integer(0));
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(&Rational::new(3, 2)), "3/2");
        assert_eq!(format_rational(&Rational::from_integer(1)), "1/1");
    }

    #[test]
    fn five_connected_minus_vertex_is_two_tree_connected() {
        for g in [families::complete(6), families::complete(7), families::icosahedron()] {
            for v in g.vertices() {
                let h = g.remove_vertices(&VertexSet::from([v]));
                assert_eq!(omega_value(&h), Rational::from_integer(1));
            }
        }
    }
}
