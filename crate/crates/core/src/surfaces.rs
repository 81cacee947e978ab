//! Signed rotation systems, face tracing and Euler-characteristic bounds.
//!
//! Edges are identified by instance id (their position in the input edge
//! list), so parallel edges can sit at different places in a rotation.

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Edge, MultiGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("rotation at vertex {vertex} lists {got} edge ends, degree is {expected}")]
    RotationSize { vertex: Vertex, expected: usize, got: usize },
    #[error("edge {edge} is not incident with vertex {vertex}")]
    NotIncident { vertex: Vertex, edge: usize },
    #[error("edge id {0} out of range")]
    UnknownEdge(usize),
    #[error("edge {edge} appears twice at vertex {vertex}")]
    Repeated { vertex: Vertex, edge: usize },
    #[error("edge {0} has a loop")]
    Loop(usize),
    #[error("sign of edge {0} must be +1 or -1")]
    BadSign(usize),
    #[error("rotation file line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("degree sum {got} exceeds {limit}; supply an embedding as a rotation file")]
    TooLarge { limit: usize, got: usize },
    #[error("no embedding reaches Euler characteristic {0}")]
    BelowFloor(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("the bound needs chi <= 0, got {0}")]
pub struct PositiveChi(pub i64);

/// Cyclic edge orders at every vertex plus a sign on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedRotationSystem {
    n: usize,
    edges: Vec<Edge>,
    rotation: Vec<Vec<usize>>,
    sign: Vec<i8>,
}

impl SignedRotationSystem {
    pub fn new(
        n: usize,
        edges: Vec<Edge>,
        rotation: Vec<Vec<usize>>,
        sign: Vec<i8>,
    ) -> Result<Self, EmbeddingError> {
        let mut degree = vec![0; n];
        for (id, e) in edges.iter().enumerate() {
            if e.0 == e.1 {
                return Err(EmbeddingError::Loop(id));
            }
            degree[e.0] += 1;
            degree[e.1] += 1;
        }
        for (id, &s) in sign.iter().enumerate() {
            if s != 1 && s != -1 {
                return Err(EmbeddingError::BadSign(id));
            }
        }
        if sign.len() != edges.len() {
            return Err(EmbeddingError::UnknownEdge(sign.len().min(edges.len())));
        }
        for (v, rot) in rotation.iter().enumerate() {
            if rot.len() != degree[v] {
                return Err(EmbeddingError::RotationSize { vertex: v, expected: degree[v], got: rot.len() });
            }
            let mut seen = vec![false; edges.len()];
            for &id in rot {
                let e = edges.get(id).ok_or(EmbeddingError::UnknownEdge(id))?;
                if !e.contains(v) {
                    return Err(EmbeddingError::NotIncident { vertex: v, edge: id });
                }
                if std::mem::replace(&mut seen[id], true) {
                    return Err(EmbeddingError::Repeated { vertex: v, edge: id });
                }
            }
        }
        if rotation.len() != n {
            return Err(EmbeddingError::RotationSize { vertex: rotation.len().min(n), expected: 0, got: 0 });
        }
        Ok(SignedRotationSystem { n, edges, rotation, sign })
    }

    /// All signs `+1`.
    pub fn orientable(n: usize, edges: Vec<Edge>, rotation: Vec<Vec<usize>>) -> Result<Self, EmbeddingError> {
        let m = edges.len();
        Self::new(n, edges, rotation, vec![1; m])
    }

    /// Rotation at each vertex given as an order of neighbours; only for
    /// simple graphs, with edge ids taken from `g.edge_instances()`.
    pub fn from_neighbor_orders(g: &MultiGraph, orders: &[Vec<Vertex>]) -> Result<Self, EmbeddingError> {
        let edges = g.edge_instances();
        let id = |u: Vertex, v: Vertex| edges.iter().position(|&e| e == Edge::new(u, v));
        let mut rotation = Vec::with_capacity(orders.len());
        for (v, order) in orders.iter().enumerate() {
            let mut rot = Vec::with_capacity(order.len());
            for &w in order {
                rot.push(id(v, w).ok_or(EmbeddingError::NotIncident { vertex: v, edge: usize::MAX })?);
            }
            rotation.push(rot);
        }
        Self::orientable(g.n(), edges, rotation)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn rotation(&self, v: Vertex) -> &[usize] {
        &self.rotation[v]
    }

    pub fn sign(&self, id: usize) -> i8 {
        self.sign[id]
    }

    pub fn host(&self) -> MultiGraph {
        MultiGraph::from_edges(self.n, self.edges.iter().map(|e| (e.0, e.1))).expect("validated on construction")
    }

    /// Local flip at `v`: reverses its rotation and negates the signs of its
    /// edges. Describes the same embedding.
    pub fn flip_vertex(&self, v: Vertex) -> Self {
        let mut out = self.clone();
        out.rotation[v].reverse();
        for (id, e) in self.edges.iter().enumerate() {
            if e.contains(v) {
                out.sign[id] = -out.sign[id];
            }
        }
        out
    }

    /// Renames vertex `v` to `perm[v]`; edge ids are kept.
    pub fn relabel(&self, perm: &[Vertex]) -> Self {
        let edges = self.edges.iter().map(|e| Edge::new(perm[e.0], perm[e.1])).collect();
        let mut rotation = vec![Vec::new(); self.n];
        for v in 0..self.n {
            rotation[perm[v]] = self.rotation[v].clone();
        }
        SignedRotationSystem { n: self.n, edges, rotation, sign: self.sign.clone() }
    }

    fn position_tables(&self) -> Vec<[usize; 2]> {
        // pos[id][side]: index of edge `id` in the rotation of its endpoint
        let mut pos = vec![[usize::MAX; 2]; self.edges.len()];
        for (v, rot) in self.rotation.iter().enumerate() {
            for (i, &id) in rot.iter().enumerate() {
                let side = usize::from(self.edges[id].0 != v);
                pos[id][side] = i;
            }
        }
        pos
    }
}

/// A face as the sequence of `(vertex, edge id)` pairs it leaves along.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face(pub Vec<(Vertex, usize)>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub faces: Vec<Face>,
    #[serde(rename = "F")]
    pub face_count: usize,
    pub chi: i64,
    pub orientable: bool,
}

/// Traces every face of the embedding.
///
/// A walker at `v` leaving along edge `e` with local orientation `s`
/// arrives at `w` with orientation `s * sign(e)` and continues with the
/// successor of `e` in the rotation at `w` (predecessor when the
/// orientation is negative). The same face walked backwards is marked as
/// used so each face is counted once.
pub fn face_trace(r: &SignedRotationSystem) -> EmbeddingReport {
    let m = r.edges.len();
    let orientable = is_orientable(r);
    if m == 0 {
        return EmbeddingReport { faces: vec![Face(Vec::new())], face_count: 1, chi: r.n as i64 + 1, orientable };
    }
    let pos = r.position_tables();
    // state index: (edge, side of departure, orientation)
    let index = |id: usize, side: usize, orient: i8| (id * 2 + side) * 2 + usize::from(orient < 0);
    let mut used = vec![false; 4 * m];
    let mut faces = Vec::new();
    for id in 0..m {
        for side in 0..2 {
            for orient in [1i8, -1] {
                if used[index(id, side, orient)] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut e, mut sd, mut o) = (id, side, orient);
                loop {
                    used[index(e, sd, o)] = true;
                    let edge = r.edges[e];
                    let v = if sd == 0 { edge.0 } else { edge.1 };
                    face.push((v, e));
                    let arrive = 1 - sd;
                    let o2 = o * r.sign[e];
                    // the reverse walk leaves the far end along e
                    used[index(e, arrive, -o2)] = true;
                    let w = if arrive == 0 { edge.0 } else { edge.1 };
                    let rot = &r.rotation[w];
                    let at = pos[e][arrive];
                    let next = if o2 > 0 { rot[(at + 1) % rot.len()] } else { rot[(at + rot.len() - 1) % rot.len()] };
                    let next_side = usize::from(r.edges[next].0 != w);
                    (e, sd, o) = (next, next_side, o2);
                    if (e, sd, o) == (id, side, orient) {
                        break;
                    }
                }
                faces.push(Face(face));
            }
        }
    }
    let face_count = faces.len();
    let chi = r.n as i64 - m as i64 + face_count as i64;
    EmbeddingReport { faces, face_count, chi, orientable }
}

/// Whether flips at vertices can make every sign `+1`.
pub fn is_orientable(r: &SignedRotationSystem) -> bool {
    let mut flip = vec![0i8; r.n];
    let mut adj: Vec<Vec<(Vertex, i8)>> = vec![Vec::new(); r.n];
    for (id, e) in r.edges.iter().enumerate() {
        adj[e.0].push((e.1, r.sign[id]));
        adj[e.1].push((e.0, r.sign[id]));
    }
    for s in 0..r.n {
        if flip[s] != 0 {
            continue;
        }
        flip[s] = 1;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &(w, sg) in &adj[u] {
                let want = flip[u] * sg;
                if flip[w] == 0 {
                    flip[w] = want;
                    stack.push(w);
                } else if flip[w] != want {
                    return false;
                }
            }
        }
    }
    true
}

/// `m <= 2n - 2chi` for triangle-free graphs, `m <= 3n - 3chi` otherwise.
pub fn edge_bound_check(n: i64, m: i64, chi: i64, triangle_free: bool) -> bool {
    if triangle_free {
        m <= 2 * n - 2 * chi
    } else {
        m <= 3 * n - 3 * chi
    }
}

/// `ceil((6 - 2chi) / 3)`.
pub fn walk_bound(chi: i64) -> Result<i64, PositiveChi> {
    if chi > 0 {
        return Err(PositiveChi(chi));
    }
    Ok(Integer::div_ceil(&(6 - 2 * chi), &3))
}

/// `ceil((6 - 3chi) / 4)`.
pub fn trail_bound(chi: i64) -> Result<i64, PositiveChi> {
    if chi > 0 {
        return Err(PositiveChi(chi));
    }
    Ok(Integer::div_ceil(&(6 - 3 * chi), &4))
}

/// `ceil((4 - chi) / 4)`.
pub fn conjecture_lower_bound(chi: i64) -> i64 {
    Integer::div_ceil(&(4 - chi), &4)
}

pub const BRUTEFORCE_DEGREE_LIMIT: usize = 24;

/// Largest Euler characteristic over all signed rotation systems of `g`,
/// with a rotation achieving it.
///
/// Orientable systems are searched first; when they cannot reach 1 the
/// search continues through sign patterns on the edges outside a spanning
/// tree (tree edges can always be made `+1` by vertex flips). Fails with
/// [`EmbeddingError::BelowFloor`] when nothing reaches `chi_floor`.
pub fn min_euler_genus_bruteforce(
    g: &MultiGraph,
    chi_floor: i64,
) -> Result<(i64, SignedRotationSystem), EmbeddingError> {
    let total: usize = g.vertices().map(|v| g.degree(v)).sum();
    if total > BRUTEFORCE_DEGREE_LIMIT {
        return Err(EmbeddingError::TooLarge { limit: BRUTEFORCE_DEGREE_LIMIT, got: total });
    }
    if !g.is_connected() {
        return Err(EmbeddingError::Disconnected);
    }
    let edges = g.edge_instances();
    let m = edges.len();
    let (n, e) = (g.n() as i64, m as i64);
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (id, ed) in edges.iter().enumerate() {
        incident[ed.0].push(id);
        incident[ed.1].push(id);
    }
    let choices: Vec<Vec<Vec<usize>>> = incident.iter().map(|ids| cyclic_orders(ids)).collect();
    let cotree = cotree_edges(g.n(), &edges);

    let mut best: Option<(i64, SignedRotationSystem)> = None;
    let consider = |sys: SignedRotationSystem, best: &mut Option<(i64, SignedRotationSystem)>| {
        let chi = n - e + face_trace(&sys).face_count as i64;
        if best.as_ref().is_none_or(|(b, _)| chi > *b) {
            *best = Some((chi, sys));
        }
        chi
    };
    let mut pick = vec![0usize; g.n()];
    'orientable: loop {
        let rotation = (0..g.n()).map(|v| choices[v][pick[v]].clone()).collect();
        let sys = SignedRotationSystem { n: g.n(), edges: edges.clone(), rotation, sign: vec![1; m] };
        if consider(sys, &mut best) == 2 {
            break 'orientable;
        }
        if !advance(&mut pick, &choices) {
            break;
        }
    }
    let reached = best.as_ref().map_or(i64::MIN, |(b, _)| *b);
    if reached < 1 && !cotree.is_empty() {
        let mut pick = vec![0usize; g.n()];
        'signed: loop {
            for pattern in 1u64..1 << cotree.len() {
                let mut sign = vec![1i8; m];
                for (i, &id) in cotree.iter().enumerate() {
                    if pattern >> i & 1 == 1 {
                        sign[id] = -1;
                    }
                }
                let rotation = (0..g.n()).map(|v| choices[v][pick[v]].clone()).collect();
                let sys = SignedRotationSystem { n: g.n(), edges: edges.clone(), rotation, sign };
                if consider(sys, &mut best) >= 1 {
                    break 'signed;
                }
            }
            if !advance(&mut pick, &choices) {
                break;
            }
        }
    }
    match best {
        Some((chi, sys)) if chi >= chi_floor => Ok((chi, sys)),
        _ => Err(EmbeddingError::BelowFloor(chi_floor)),
    }
}

fn advance(pick: &mut [usize], choices: &[Vec<Vec<usize>>]) -> bool {
    for v in 0..pick.len() {
        pick[v] += 1;
        if pick[v] < choices[v].len() {
            return true;
        }
        pick[v] = 0;
    }
    false
}

/// Every cyclic order of `ids`, each listed once with `ids[0]` first.
fn cyclic_orders(ids: &[usize]) -> Vec<Vec<usize>> {
    if ids.len() <= 1 {
        return vec![ids.to_vec()];
    }
    let mut out = Vec::new();
    let mut rest: Vec<usize> = ids[1..].to_vec();
    permute(&mut rest, 0, &mut |p| {
        let mut order = vec![ids[0]];
        order.extend_from_slice(p);
        out.push(order);
    });
    out
}

fn permute(a: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == a.len() {
        f(a);
        return;
    }
    for i in k..a.len() {
        a.swap(k, i);
        permute(a, k + 1, f);
        a.swap(k, i);
    }
}

fn cotree_edges(n: usize, edges: &[Edge]) -> Vec<usize> {
    let mut dsu = crate::trees::Dsu::new(n);
    (0..edges.len()).filter(|&id| !dsu.union(edges[id].0, edges[id].1)).collect()
}

/// Parses a rotation file against the host's edge list (ids are positions
/// in `edges`).
///
/// ```text
/// 0: 0 1 2
/// 1: 0 3 4
/// signs: 3:-1
/// ```
pub fn parse_rotation(text: &str, n: usize, edges: &[Edge]) -> Result<SignedRotationSystem, EmbeddingError> {
    let mut rotation: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut sign = vec![1i8; edges.len()];
    let syntax = |line: usize, reason: &str| EmbeddingError::Syntax { line, reason: reason.to_string() };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (head, rest) = body.split_once(':').ok_or_else(|| syntax(line, "missing ':'"))?;
        let head = head.trim();
        if head == "signs" {
            for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (id, s) = item.split_once(':').ok_or_else(|| syntax(line, "sign entries look like id:-1"))?;
                let id: usize = id.trim().parse().map_err(|_| syntax(line, "bad edge id"))?;
                let s: i8 = s.trim().parse().map_err(|_| syntax(line, "bad sign"))?;
                if id >= edges.len() {
                    return Err(EmbeddingError::UnknownEdge(id));
                }
                sign[id] = s;
            }
            continue;
        }
        let v: usize = head.parse().map_err(|_| syntax(line, "expected a vertex number"))?;
        if v >= n {
            return Err(syntax(line, "vertex out of range"));
        }
        let ids = rest
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| syntax(line, "bad edge id")))
            .collect::<Result<Vec<_>, _>>()?;
        if rotation[v].replace(ids).is_some() {
            return Err(syntax(line, "vertex listed twice"));
        }
    }
    let rotation = rotation.into_iter().map(|r| r.unwrap_or_default()).collect();
    SignedRotationSystem::new(n, edges.to_vec(), rotation, sign)
}

pub fn serialize_rotation(r: &SignedRotationSystem) -> String {
    let mut out = String::new();
    for (v, rot) in r.rotation.iter().enumerate() {
        let ids: Vec<String> = rot.iter().map(|id| id.to_string()).collect();
        out.push_str(&format!("{v}: {}\n", ids.join(" ")));
    }
    let neg: Vec<String> = (0..r.edges.len()).filter(|&id| r.sign[id] < 0).map(|id| format!("{id}:-1")).collect();
    if !neg.is_empty() {
        out.push_str(&format!("signs: {}\n", neg.join(",")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn k4_planar() -> SignedRotationSystem {
        // 0 outside, triangle 1 2 3 around it
        let orders = vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]];
        SignedRotationSystem::from_neighbor_orders(&families::complete(4), &orders).unwrap()
    }

    /// Vertex i of K_7 sees i+1, i+3, i+2, i+6, i+4, i+5 (mod 7) in order.
    pub(crate) fn k7_torus() -> SignedRotationSystem {
        let orders: Vec<Vec<Vertex>> =
            (0..7).map(|i| [1, 3, 2, 6, 4, 5].iter().map(|d| (i + d) % 7).collect()).collect();
        SignedRotationSystem::from_neighbor_orders(&families::complete(7), &orders).unwrap()
    }

    #[test]
    fn k4_planar_has_four_faces() {
        let rep = face_trace(&k4_planar());
        assert_eq!(rep.face_count, 4);
        assert_eq!(rep.chi, 2);
        assert!(rep.orientable);
        assert_eq!(rep.faces.iter().map(|f| f.0.len()).sum::<usize>(), 12);
    }

    #[test]
    fn k7_triangulates_the_torus() {
        let rep = face_trace(&k7_torus());
        assert_eq!(rep.face_count, 14);
        assert_eq!(rep.chi, 0);
        assert!(rep.faces.iter().all(|f| f.0.len() == 3));
    }

    /// Vertex i of K_5 sees i+1, i+2, i+4, i+3 (mod 5).
    pub(crate) fn k5_torus() -> SignedRotationSystem {
        let orders: Vec<Vec<Vertex>> = (0..5).map(|i| [1, 2, 4, 3].iter().map(|d| (i + d) % 5).collect()).collect();
        SignedRotationSystem::from_neighbor_orders(&families::complete(5), &orders).unwrap()
    }

    #[test]
    fn k5_on_the_torus() {
        let rep = face_trace(&k5_torus());
        assert_eq!((rep.face_count, rep.chi), (5, 0));
        assert!(rep.orientable);
        assert!(edge_bound_check(5, 10, rep.chi, false));
    }

    #[test]
    fn trees_have_one_face() {
        let g = families::star(4);
        let r = SignedRotationSystem::from_neighbor_orders(&g, &[vec![1, 2, 3, 4], vec![0], vec![0], vec![0], vec![0]])
            .unwrap();
        let rep = face_trace(&r);
        assert_eq!((rep.face_count, rep.chi), (1, 2));
        let flipped = r.flip_vertex(0);
        assert_eq!(face_trace(&flipped).chi, 2);
    }

    #[test]
    fn flips_and_relabelling_keep_chi() {
        let r = k7_torus();
        for v in 0..7 {
            let f = r.flip_vertex(v);
            assert!(!f.sign.iter().all(|&s| s == 1));
            assert!(is_orientable(&f));
            assert_eq!(face_trace(&f).chi, 0);
        }
        let perm = [3, 5, 0, 1, 6, 2, 4];
        assert_eq!(face_trace(&r.relabel(&perm)).chi, 0);
    }

    #[test]
    fn one_twisted_edge_on_k4() {
        let mut r = k4_planar();
        r.sign[0] = -1;
        let rep = face_trace(&r);
        assert!(!rep.orientable);
        assert!(rep.chi <= 1);
        assert_eq!(rep.faces.iter().map(|f| f.0.len()).sum::<usize>(), 12);
    }

    #[test]
    fn bound_arithmetic() {
        assert_eq!(walk_bound(0), Ok(2));
        assert_eq!(walk_bound(-46), Ok(33));
        assert_eq!(trail_bound(-2), Ok(3));
        assert_eq!(trail_bound(0), Ok(2));
        assert_eq!(conjecture_lower_bound(-4), 2);
        assert_eq!(conjecture_lower_bound(2), 1);
        assert_eq!(walk_bound(1), Err(PositiveChi(1)));
        assert_eq!(trail_bound(2), Err(PositiveChi(2)));
    }

    #[test]
    fn edge_bounds() {
        assert!(edge_bound_check(5, 10, 0, false));
        assert!(!edge_bound_check(6, 9, 2, true));
        assert!(edge_bound_check(7, 21, 0, false));
        assert!(!edge_bound_check(5, 10, 2, false));
    }

    #[test]
    fn brute_force_small_graphs() {
        assert_eq!(min_euler_genus_bruteforce(&families::complete(4), -10).unwrap().0, 2);
        let (chi, witness) = min_euler_genus_bruteforce(&families::complete(5), -10).unwrap();
        assert_eq!(chi, 1);
        assert_eq!(face_trace(&witness).chi, 1);
        let (chi, witness) = min_euler_genus_bruteforce(&families::complete_bipartite(3, 3), -10).unwrap();
        assert_eq!(chi, 1);
        assert_eq!(face_trace(&witness).chi, 1);
        assert!(!face_trace(&witness).orientable);
        assert_eq!(
            min_euler_genus_bruteforce(&families::complete_bipartite(3, 3), 2),
            Err(EmbeddingError::BelowFloor(2))
        );
        assert!(matches!(
            min_euler_genus_bruteforce(&families::complete(6), 0),
            Err(EmbeddingError::TooLarge { .. })
        ));
    }

    #[test]
    fn rotation_file_round_trip() {
        let mut r = k7_torus();
        r.sign[4] = -1;
        let text = serialize_rotation(&r);
        assert!(text.ends_with("signs: 4:-1\n"));
        assert_eq!(parse_rotation(&text, 7, r.edges()).unwrap(), r);
    }

    #[test]
    fn rotation_file_errors() {
        let edges = families::complete(3).edge_instances();
        assert!(matches!(parse_rotation("0 1 2\n", 3, &edges), Err(EmbeddingError::Syntax { line: 1, .. })));
        assert!(matches!(
            parse_rotation("0: 0 1\n1: 0 2\n2: 1\n", 3, &edges),
            Err(EmbeddingError::RotationSize { vertex: 2, .. })
        ));
        assert!(matches!(
            parse_rotation("0: 0 2\n1: 0 2\n2: 1 2\n", 3, &edges),
            Err(EmbeddingError::NotIncident { vertex: 0, edge: 2 })
        ));
        assert_eq!(parse_rotation("0: 0 1\n1: 0 2\n2: 1 2\nsigns: 9:-1\n", 3, &edges), Err(EmbeddingError::UnknownEdge(9)));
    }
}
