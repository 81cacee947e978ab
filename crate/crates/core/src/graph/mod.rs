//! Loopless multigraphs on dense vertex labels `0..n`.
//!
//! A [`MultiGraph`] never changes after construction; contraction, deletion
//! and induced subgraphs all return new values. Every vertex carries a tag
//! set naming the vertices of the original input it stands for, so minors
//! can always report where they came from.

pub mod io;

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::GraphError;

pub type Vertex = usize;

/// An unordered vertex pair, stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`. Panics if `v` is not an endpoint.
    pub fn other(&self, v: Vertex) -> Vertex {
        if self.0 == v {
            self.1
        } else {
            assert_eq!(self.1, v, "{v} is not an endpoint of {self}");
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

/// A canonically ordered set of vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_mask(mask: u64) -> Self {
        VertexSet((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    /// Bitmask form; only valid for vertices below 64.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &v| m | 1 << v)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(at) => {
                self.0.insert(at, v);
                true
            }
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut v: Vec<Vertex> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(a: [Vertex; N]) -> Self {
        a.into_iter().collect()
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Loopless multigraph with vertices `0..n`.
///
/// Edges are kept as a sorted list of distinct pairs, each with a positive
/// multiplicity. Parallel edges are distinct edge instances that share a
/// pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(Edge, u32)>,
    adj: Vec<Vec<(Vertex, u32)>>,
    tags: Vec<VertexSet>,
}

impl MultiGraph {
    /// Graph with `n` isolated vertices, vertex `i` tagged `{i}`.
    pub fn empty(n: usize) -> Self {
        MultiGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            tags: (0..n).map(|v| VertexSet::from([v])).collect(),
        }
    }

    /// Builds a graph from edge instances; repeated pairs add multiplicity.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::from_weighted_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1)))
    }

    pub fn from_weighted_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, u32)>,
    {
        let mut list = Vec::new();
        for (u, v, m) in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if m == 0 {
                return Err(GraphError::ZeroMultiplicity(Edge::new(u, v)));
            }
            list.push((Edge::new(u, v), m));
        }
        let tags = (0..n).map(|v| VertexSet::from([v])).collect();
        Ok(Self::assemble(n, list, tags))
    }

    /// Sorts and merges the pair list, then builds adjacency.
    fn assemble(n: usize, mut list: Vec<(Edge, u32)>, tags: Vec<VertexSet>) -> Self {
        list.sort_unstable();
        let mut edges: Vec<(Edge, u32)> = Vec::with_capacity(list.len());
        for (e, m) in list {
            match edges.last_mut() {
                Some((last, lm)) if *last == e => *lm += m,
                _ => edges.push((e, m)),
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(e, m) in &edges {
            adj[e.0].push((e.1, m));
            adj[e.1].push((e.0, m));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        MultiGraph { n, edges, adj, tags }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edge instances (multiplicities summed).
    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(|&(_, m)| m as usize).sum()
    }

    /// Distinct vertex pairs with their multiplicities, sorted.
    pub fn edges(&self) -> &[(Edge, u32)] {
        &self.edges
    }

    /// Every edge instance, parallel copies repeated, in sorted pair order.
    pub fn edge_instances(&self) -> Vec<Edge> {
        self.edges
            .iter()
            .flat_map(|&(e, m)| std::iter::repeat_n(e, m as usize))
            .collect()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> u32 {
        let e = Edge::new(u, v);
        self.edge_index(e).map_or(0, |i| self.edges[i].1)
    }

    /// Position of the pair `e` in [`MultiGraph::edges`].
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search_by(|(f, _)| f.cmp(&e)).ok()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.multiplicity(u, v) > 0
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].iter().map(|&(_, m)| m as usize).sum()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Distinct neighbours of `v` with edge multiplicities, sorted.
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, u32)] {
        &self.adj[v]
    }

    pub fn tags(&self, v: Vertex) -> &VertexSet {
        &self.tags[v]
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|&(_, m)| m == 1)
    }

    /// Same graph with every multiplicity collapsed to one.
    pub fn simplified(&self) -> MultiGraph {
        let list = self.edges.iter().map(|&(e, _)| (e, 1)).collect();
        Self::assemble(self.n, list, self.tags.clone())
    }

    /// Resets every tag to the singleton of its own vertex.
    pub fn with_fresh_tags(&self) -> MultiGraph {
        let mut g = self.clone();
        g.tags = (0..self.n).map(|v| VertexSet::from([v])).collect();
        g
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || count_components(self, &VertexSet::new()) == 1
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        edges_within(self, s) == 0
    }

    /// Two-colouring when the graph is bipartite; `colour[v]` is 0 or 1.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut colour = vec![u8::MAX; self.n];
        for s in self.vertices() {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &(w, _) in &self.adj[u] {
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[u];
                        stack.push(w);
                    } else if colour[w] == colour[u] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges.iter().all(|&(e, _)| {
            let (a, b) = (&self.adj[e.0], &self.adj[e.1]);
            !a.iter().any(|&(w, _)| b.binary_search_by(|&(x, _)| x.cmp(&w)).is_ok())
        })
    }

    /// Removes one instance of `e`.
    pub fn delete_edge(&self, e: Edge) -> Result<MultiGraph, GraphError> {
        let idx = self.edge_index(e).ok_or(GraphError::MissingEdge(e))?;
        let mut list = self.edges.clone();
        if list[idx].1 == 1 {
            list.remove(idx);
        } else {
            list[idx].1 -= 1;
        }
        Ok(Self::assemble(self.n, list, self.tags.clone()))
    }

    /// Adds `count` instances of the pair `{u, v}`.
    pub fn add_edge(&self, u: Vertex, v: Vertex, count: u32) -> Result<MultiGraph, GraphError> {
        let extra = MultiGraph::from_weighted_edges(self.n, [(u, v, count)])?;
        let mut list = self.edges.clone();
        list.extend(extra.edges);
        Ok(Self::assemble(self.n, list, self.tags.clone()))
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in order.
    /// Tags are carried over.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> MultiGraph {
        let mut map = vec![usize::MAX; self.n];
        for (i, v) in keep.iter().enumerate() {
            map[v] = i;
        }
        let list = self
            .edges
            .iter()
            .filter(|(e, _)| map[e.0] != usize::MAX && map[e.1] != usize::MAX)
            .map(|&(e, m)| (Edge::new(map[e.0], map[e.1]), m))
            .collect();
        let tags = keep.iter().map(|v| self.tags[v].clone()).collect();
        Self::assemble(keep.len(), list, tags)
    }

    /// `G \ removed`, relabelled in increasing vertex order.
    pub fn remove_vertices(&self, removed: &VertexSet) -> MultiGraph {
        let keep: VertexSet = self.vertices().filter(|&v| !removed.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Applies a vertex permutation: old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> MultiGraph {
        assert_eq!(perm.len(), self.n);
        let list = self
            .edges
            .iter()
            .map(|&(e, m)| (Edge::new(perm[e.0], perm[e.1]), m))
            .collect();
        let mut tags = vec![VertexSet::new(); self.n];
        for v in self.vertices() {
            tags[perm[v]] = self.tags[v].clone();
        }
        Self::assemble(self.n, list, tags)
    }

    /// Structural equality, ignoring provenance tags.
    pub fn same_structure(&self, other: &MultiGraph) -> bool {
        self.n == other.n && self.edges == other.edges
    }

    /// Short stable hash of the structure (tags excluded).
    pub fn structure_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.n as u64).to_le_bytes());
        for &(e, m) in &self.edges {
            h.update((e.0 as u64).to_le_bytes());
            h.update((e.1 as u64).to_le_bytes());
            h.update(m.to_le_bytes());
        }
        hex::encode(&h.finalize()[..8])
    }
}

/// Where each vertex of `G` lands after collapsing `a` into one vertex.
///
/// The merged vertex takes the slot of `min(a)`; the remaining vertices keep
/// their relative order.
pub fn contraction_map(n: usize, a: &VertexSet) -> Vec<Vertex> {
    let root = a.first().expect("contraction set must be non-empty");
    let mut map = vec![0; n];
    let mut next = 0;
    for v in 0..n {
        if a.contains(v) && v != root {
            continue;
        }
        map[v] = next;
        next += 1;
    }
    for v in a.iter() {
        map[v] = map[root];
    }
    map
}

/// `G/e`: merges the endpoints of `e`, drops the resulting loops and keeps
/// parallel edges as multiplicity.
pub fn contract_edge(g: &MultiGraph, e: Edge) -> Result<MultiGraph, GraphError> {
    if !g.has_edge(e.0, e.1) {
        return Err(GraphError::MissingEdge(e));
    }
    contract_vertex_set(g, &VertexSet::from([e.0, e.1]), false)
}

/// Collapses the connected vertex set `a` into one vertex.
///
/// With `simplify` every multiplicity in the result is reset to one.
pub fn contract_vertex_set(
    g: &MultiGraph,
    a: &VertexSet,
    simplify: bool,
) -> Result<MultiGraph, GraphError> {
    if a.is_empty() {
        return Err(GraphError::EmptyVertexSet);
    }
    if let Some(v) = a.iter().find(|&v| v >= g.n) {
        return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n });
    }
    if count_components(&g.induced_subgraph(a), &VertexSet::new()) != 1 {
        return Err(GraphError::DisconnectedSet(a.clone()));
    }
    let map = contraction_map(g.n, a);
    let n = g.n - a.len() + 1;
    let list = g
        .edges
        .iter()
        .filter(|(e, _)| map[e.0] != map[e.1])
        .map(|&(e, m)| (Edge::new(map[e.0], map[e.1]), if simplify { 1 } else { m }))
        .collect();
    let mut tags = vec![VertexSet::new(); n];
    for v in g.vertices() {
        tags[map[v]] = tags[map[v]].union(&g.tags[v]);
    }
    let mut out = MultiGraph::assemble(n, list, tags);
    if simplify {
        out = out.simplified();
    }
    Ok(out)
}

/// `ω(G \ removed)`; the empty graph has zero components.
pub fn count_components(g: &MultiGraph, removed: &VertexSet) -> usize {
    let mut seen: Vec<bool> = g.vertices().map(|v| removed.contains(v)).collect();
    let mut count = 0;
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &(w, _) in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Connected components of `G \ removed` as vertex sets of `G`.
pub fn components(g: &MultiGraph, removed: &VertexSet) -> Vec<VertexSet> {
    let mut seen: Vec<bool> = g.vertices().map(|v| removed.contains(v)).collect();
    let mut out = Vec::new();
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &(w, _) in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        out.push(VertexSet::from(comp));
    }
    out
}

/// `e_G(S)`: edges with both ends in `s`, counted with multiplicity.
pub fn edges_within(g: &MultiGraph, s: &VertexSet) -> usize {
    g.edges
        .iter()
        .filter(|(e, _)| s.contains(e.0) && s.contains(e.1))
        .map(|&(_, m)| m as usize)
        .sum()
}
