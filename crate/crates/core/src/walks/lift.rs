//! Pulling a walk of a contracted graph back to the original graph.

use thiserror::Error;

use super::certificate::{CertificateError, EulerianCertificate, WalkKind};
use crate::error::GraphError;
use crate::graph::{contract_vertex_set, contraction_map, Edge, MultiGraph, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("certificate host does not match the contracted graph")]
    HostMismatch,
    #[error("adding copies of {0} would exceed its usage limit")]
    MultiplicityExceeded(Edge),
    #[error("vertex {vertex} would reach degree {degree}, above {limit}")]
    DegreeBound { vertex: Vertex, degree: u32, limit: u32 },
    #[error("path endpoint {0} has no neighbour outside the path")]
    MissingNeighbor(Vertex),
    #[error("{0} is not an edge between consecutive path vertices")]
    NotAPath(Edge),
    #[error("path has the chord {0}")]
    Chord(Edge),
    #[error("path is empty")]
    EmptyPath,
    #[error("vertex {0} is not a neighbour of the contracted edge's endpoint")]
    NotANeighbor(Vertex),
    #[error("lifted certificate is invalid: {0}")]
    Invalid(#[from] CertificateError),
}

/// How to restore coverage when the contracted walk never uses an edge at
/// `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsolatedRepair {
    /// Two copies of `yz`.
    ContractedEdge,
    /// Two copies of `xy` for the given neighbour `x` of `y`.
    Neighbor(Vertex),
}

/// Lifts a walk certificate of `G/yz` to `G`.
///
/// Edges at the merged vertex are handed to `y` first, then to `z`. Then one
/// copy of `yz` is added when both `d_H(y)` and `d_H(z)` are odd and two
/// copies otherwise; when `y` received no edges, two copies of `yz`.
pub fn lift_walk_over_edge(
    g: &MultiGraph,
    y: Vertex,
    z: Vertex,
    c: &EulerianCertificate,
) -> Result<EulerianCertificate, LiftError> {
    lift_walk_over_edge_with(g, y, z, c, IsolatedRepair::ContractedEdge)
}

pub fn lift_walk_over_edge_with(
    g: &MultiGraph,
    y: Vertex,
    z: Vertex,
    c: &EulerianCertificate,
    repair: IsolatedRepair,
) -> Result<EulerianCertificate, LiftError> {
    if !g.has_edge(y, z) {
        return Err(GraphError::MissingEdge(Edge::new(y, z)).into());
    }
    let mut usage = pull_back(g, &[y, z], c)?;
    let deg = degrees(g, &usage);
    let (dy, dz) = (deg[y], deg[z]);
    if dy == 0 {
        match repair {
            IsolatedRepair::ContractedEdge => add(g, &mut usage, y, z, 2)?,
            IsolatedRepair::Neighbor(x) => {
                if x == y || !g.has_edge(x, y) {
                    return Err(LiftError::NotANeighbor(x));
                }
                add(g, &mut usage, x, y, 2)?
            }
        }
    } else if dy % 2 == 1 && dz % 2 == 1 {
        add(g, &mut usage, y, z, 1)?;
    } else {
        add(g, &mut usage, y, z, 2)?;
    }
    Ok(EulerianCertificate::new(g.clone(), WalkKind::Walk, usage)?)
}

/// Lifts a walk certificate of `G/P` to `G` for an induced path `P`,
/// keeping every visit count at most `k`.
///
/// With `j` the path vertex of largest `d_H`: if `d_H(x_j) <= 2k - 3`,
/// each path edge gets one or two copies, chosen by a parity sweep from
/// `x_0`. Otherwise the paths `y_1 x_0 .. x_{j-1}` and `x_{j+1} .. x_l y_2`
/// are added once and parity is repaired along `y_1 P y_2` from both ends
/// toward `x_j`.
pub fn lift_walk_over_path(
    g: &MultiGraph,
    path: &[Vertex],
    c: &EulerianCertificate,
    k: u32,
) -> Result<EulerianCertificate, LiftError> {
    let out = match path.len() {
        0 => return Err(LiftError::EmptyPath),
        1 => {
            if !c.host().same_structure(g) {
                return Err(LiftError::HostMismatch);
            }
            EulerianCertificate::new(g.clone(), WalkKind::Walk, c.usage().to_vec())?
        }
        2 => lift_walk_over_edge(g, path[0], path[1], c)?,
        _ => lift_long_path(g, path, c, k)?,
    };
    check_bound(&out, k)?;
    Ok(out)
}

fn lift_long_path(
    g: &MultiGraph,
    path: &[Vertex],
    c: &EulerianCertificate,
    k: u32,
) -> Result<EulerianCertificate, LiftError> {
    let on_path: VertexSet = path.iter().copied().collect();
    if on_path.len() != path.len() {
        return Err(LiftError::NotAPath(Edge::new(path[0], path[path.len() - 1])));
    }
    for w in path.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(LiftError::NotAPath(Edge::new(w[0], w[1])));
        }
    }
    for (i, &a) in path.iter().enumerate() {
        for &b in path.iter().skip(i + 2) {
            if g.has_edge(a, b) {
                return Err(LiftError::Chord(Edge::new(a, b)));
            }
        }
    }
    let l = path.len() - 1;
    let outside = |x: Vertex| g.neighbors(x).iter().map(|&(w, _)| w).find(|&w| !on_path.contains(w));
    let y1 = outside(path[0]).ok_or(LiftError::MissingNeighbor(path[0]))?;
    let y2 = outside(path[l]).ok_or(LiftError::MissingNeighbor(path[l]))?;

    let mut usage = pull_back(g, path, c)?;
    let mut deg = degrees(g, &usage);
    let j = (0..=l).max_by_key(|&i| (deg[path[i]], std::cmp::Reverse(i))).expect("non-empty path");

    let put = |usage: &mut Vec<u32>, deg: &mut Vec<u32>, a: Vertex, b: Vertex, n: u32| -> Result<(), LiftError> {
        add(g, usage, a, b, n)?;
        deg[a] += n;
        deg[b] += n;
        Ok(())
    };

    if deg[path[j]] + 3 <= 2 * k {
        for i in 0..l {
            let n = if deg[path[i]] % 2 == 1 { 1 } else { 2 };
            put(&mut usage, &mut deg, path[i], path[i + 1], n)?;
        }
    } else {
        // y1 P y2 as one vertex sequence; x_j sits at index j + 1
        let mut line = Vec::with_capacity(l + 3);
        line.push(y1);
        line.extend_from_slice(path);
        line.push(y2);
        let centre = j + 1;
        for i in 0..centre.saturating_sub(1) {
            put(&mut usage, &mut deg, line[i], line[i + 1], 1)?;
        }
        for i in centre + 1..line.len() - 1 {
            put(&mut usage, &mut deg, line[i], line[i + 1], 1)?;
        }
        for i in 0..centre {
            if deg[line[i]] % 2 == 1 {
                put(&mut usage, &mut deg, line[i], line[i + 1], 1)?;
            }
        }
        for i in (centre + 1..line.len()).rev() {
            if deg[line[i]] % 2 == 1 {
                put(&mut usage, &mut deg, line[i], line[i - 1], 1)?;
            }
        }
    }
    Ok(EulerianCertificate::new(g.clone(), WalkKind::Walk, usage)?)
}

fn check_bound(c: &EulerianCertificate, k: u32) -> Result<(), LiftError> {
    let deg = c.degrees();
    match deg.iter().enumerate().find(|(_, &d)| d > 2 * k) {
        Some((v, &d)) => Err(LiftError::DegreeBound { vertex: v, degree: d, limit: 2 * k }),
        None => Ok(()),
    }
}

/// Usage of `c` (a certificate of `G/merged`) re-expressed on `G`.
/// Crossings at the merged vertex go to the vertices of `merged` in the
/// order given.
fn pull_back(g: &MultiGraph, merged: &[Vertex], c: &EulerianCertificate) -> Result<Vec<u32>, LiftError> {
    let set: VertexSet = merged.iter().copied().collect();
    let h = contract_vertex_set(g, &set, false)?;
    if !h.same_structure(c.host()) {
        return Err(LiftError::HostMismatch);
    }
    let map = contraction_map(g.n(), &set);
    let p = map[merged[0]];
    let mut inverse = vec![usize::MAX; h.n()];
    for v in g.vertices().filter(|&v| !set.contains(v)) {
        inverse[map[v]] = v;
    }
    let per = WalkKind::Walk.per_instance();
    let mut usage = vec![0; g.edges().len()];
    for (&(e, _), &u) in h.edges().iter().zip(c.usage()) {
        if u == 0 {
            continue;
        }
        if !e.contains(p) {
            let i = g.edge_index(Edge::new(inverse[e.0], inverse[e.1])).expect("preimage edge exists");
            usage[i] += u;
            continue;
        }
        let other = inverse[e.other(p)];
        let mut left = u;
        for &x in merged {
            if let Some(i) = g.edge_index(Edge::new(x, other)) {
                let take = left.min(g.edges()[i].1 * per);
                usage[i] += take;
                left -= take;
            }
        }
        debug_assert_eq!(left, 0);
    }
    Ok(usage)
}

fn add(g: &MultiGraph, usage: &mut [u32], a: Vertex, b: Vertex, n: u32) -> Result<(), LiftError> {
    let e = Edge::new(a, b);
    let i = g.edge_index(e).ok_or(GraphError::MissingEdge(e))?;
    if usage[i] + n > g.edges()[i].1 * WalkKind::Walk.per_instance() {
        return Err(LiftError::MultiplicityExceeded(e));
    }
    usage[i] += n;
    Ok(())
}

fn degrees(g: &MultiGraph, usage: &[u32]) -> Vec<u32> {
    let mut deg = vec![0; g.n()];
    for (&(e, _), &u) in g.edges().iter().zip(usage) {
        deg[e.0] += u;
        deg[e.1] += u;
    }
    deg
}
