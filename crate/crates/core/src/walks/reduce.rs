//! Constructive reduction of a 3-connected graph to a bipartite minor.
//!
//! The graph is shrunk step by step (edge deletions that keep it
//! 3-connected, then contractions at adjacent low-degree or adjacent
//! high-degree vertices) until none applies. The smallest graph is solved
//! directly and its walk is lifted back through every step.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use super::certificate::{EulerianCertificate, WalkKind};
use super::lift::{lift_walk_over_edge, lift_walk_over_edge_with, lift_walk_over_path, IsolatedRepair};
use super::oracle::{find_bounded_walk, VisitCaps};
use crate::connectivity::{is_contractible_edge, is_k_connected};
use crate::error::GraphError;
use crate::graph::{contract_edge, contract_vertex_set, Edge, MultiGraph, Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Step {
    DeleteEdge { edge: Edge, before: String, after: String },
    /// Contracts `{y, z}`; `edge` lists `y` first.
    ContractEdge { edge: [Vertex; 2], before: String, after: String },
    ContractPath { path: Vec<Vertex>, before: String, after: String },
}

impl Step {
    pub fn apply(&self, g: &MultiGraph) -> Result<MultiGraph, GraphError> {
        match self {
            Step::DeleteEdge { edge, .. } => g.delete_edge(*edge),
            Step::ContractEdge { edge, .. } => contract_edge(g, Edge::new(edge[0], edge[1])),
            Step::ContractPath { path, .. } => contract_vertex_set(g, &path.iter().copied().collect(), false),
        }
    }

    pub fn hashes(&self) -> (&str, &str) {
        match self {
            Step::DeleteEdge { before, after, .. }
            | Step::ContractEdge { before, after, .. }
            | Step::ContractPath { before, after, .. } => (before, after),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ReductionTrace(Vec<Step>);

impl ReductionTrace {
    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Applies every step to `g`, checking the recorded hashes on the way.
    pub fn replay(&self, g: &MultiGraph) -> Result<MultiGraph, ReduceError> {
        let mut cur = g.clone();
        for (i, s) in self.0.iter().enumerate() {
            let (before, after) = s.hashes();
            if cur.structure_hash() != before {
                return Err(ReduceError::Replay(i));
            }
            cur = s.apply(&cur).map_err(|_| ReduceError::Replay(i))?;
            if cur.structure_hash() != after {
                return Err(ReduceError::Replay(i));
            }
        }
        Ok(cur)
    }
}

/// How the walk was carried back across one step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftMethod {
    /// The walk of `G - e` is a walk of `G`.
    Deletion,
    EdgeLift,
    /// Edge lift that repairs an untouched `y` through its low-degree
    /// neighbour instead of the contracted edge.
    EdgeLiftNeighbor,
    PathLift,
    /// No lift stayed within `k`; the level was solved directly.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteWitness {
    #[serde(skip)]
    pub r: MultiGraph,
    pub x: VertexSet,
    pub y: VertexSet,
    pub trace: ReductionTrace,
}

impl BipartiteWitness {
    /// Checks the degree pattern, 3-connectivity and that the trace takes
    /// `original` to `r`.
    pub fn validate(&self, original: &MultiGraph, k: u32) -> bool {
        let r = &self.r;
        let x: VertexSet = r.vertices().filter(|&v| r.degree(v) > k as usize).collect();
        let y: VertexSet = r.vertices().filter(|&v| r.degree(v) == 3).collect();
        x == self.x
            && y == self.y
            && x.len() + y.len() == r.n()
            && r.is_independent(&x)
            && r.is_independent(&y)
            && is_k_connected(r, 3)
            && self.trace.replay(original).is_ok_and(|h| h.same_structure(r))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionOutcome {
    Walk {
        certificate: EulerianCertificate,
        trace: ReductionTrace,
        /// `lifts[i]` undid `trace.steps()[i]`.
        lifts: Vec<LiftMethod>,
    },
    Witness(BipartiteWitness),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("k must be at least 3, got {0}")]
    KTooSmall(u32),
    #[error("graph is not 3-connected")]
    NotThreeConnected,
    #[error("level {0} of the reduction has no {1}-walk")]
    NoWalkAtLevel(usize, u32),
    #[error("trace does not replay at step {0}")]
    Replay(usize),
}

/// Reduces with the exact oracle as the base solver.
pub fn reduce_to_bipartite_witness(g: &MultiGraph, k: u32) -> Result<ReductionOutcome, ReduceError> {
    reduce_with_solver(g, k, &mut |h: &MultiGraph, k: u32| {
        find_bounded_walk(h, &VisitCaps::uniform(h.n(), k), WalkKind::Walk)
    })
}

/// As [`reduce_to_bipartite_witness`], with `solver` answering the base
/// case and any level whose lift fails.
pub fn reduce_with_solver(
    g: &MultiGraph,
    k: u32,
    solver: &mut dyn FnMut(&MultiGraph, u32) -> Option<EulerianCertificate>,
) -> Result<ReductionOutcome, ReduceError> {
    if k < 3 {
        return Err(ReduceError::KTooSmall(k));
    }
    if !is_k_connected(g, 3) {
        return Err(ReduceError::NotThreeConnected);
    }
    let mut levels: Vec<(MultiGraph, Move)> = Vec::new();
    let mut steps = Vec::new();
    let mut cur = g.clone();
    while cur.n() > 4 {
        let Some((mv, next)) = next_move(&cur, k) else { break };
        steps.push(mv.step(&cur, &next));
        levels.push((cur, mv));
        cur = next;
    }
    let trace = ReductionTrace(steps);
    let mut cert = match solver(&cur, k) {
        Some(c) => c.as_walk(),
        None => {
            let x: VertexSet = cur.vertices().filter(|&v| cur.degree(v) > k as usize).collect();
            let y: VertexSet = cur.vertices().filter(|&v| cur.degree(v) == 3).collect();
            if x.len() + y.len() == cur.n() && cur.is_independent(&x) && cur.is_independent(&y) {
                return Ok(ReductionOutcome::Witness(BipartiteWitness { r: cur, x, y, trace }));
            }
            return Err(ReduceError::NoWalkAtLevel(levels.len(), k));
        }
    };
    let mut lifts = vec![LiftMethod::Deletion; levels.len()];
    for (i, (graph, mv)) in levels.iter().enumerate().rev() {
        let (next, how) = lift_one(graph, mv, &cert, k);
        cert = match next {
            Some(c) => c,
            None => solver(graph, k).ok_or(ReduceError::NoWalkAtLevel(i, k))?.as_walk(),
        };
        lifts[i] = how;
    }
    Ok(ReductionOutcome::Walk { certificate: cert, trace, lifts })
}

#[derive(Clone, Debug)]
enum Move {
    Delete(Edge),
    /// Contract `yz`; `x` is the low-degree neighbour of `y` that triggered it.
    Contract { y: Vertex, z: Vertex, x: Vertex },
    Path(Vec<Vertex>),
}

impl Move {
    fn step(&self, before: &MultiGraph, after: &MultiGraph) -> Step {
        let (before, after) = (before.structure_hash(), after.structure_hash());
        match self {
            Move::Delete(e) => Step::DeleteEdge { edge: *e, before, after },
            Move::Contract { y, z, .. } => Step::ContractEdge { edge: [*y, *z], before, after },
            Move::Path(p) => Step::ContractPath { path: p.clone(), before, after },
        }
    }
}

fn lift_one(
    g: &MultiGraph,
    mv: &Move,
    c: &EulerianCertificate,
    k: u32,
) -> (Option<EulerianCertificate>, LiftMethod) {
    let within = |c: &EulerianCertificate| c.max_visits(None) <= k;
    match mv {
        Move::Delete(_) => {
            let usage = g.edges().iter().map(|&(e, _)| c.usage_of(e.0, e.1)).collect();
            let lifted = EulerianCertificate::new(g.clone(), WalkKind::Walk, usage).ok();
            (lifted, LiftMethod::Deletion)
        }
        Move::Contract { y, z, x } => {
            if let Ok(l) = lift_walk_over_edge(g, *y, *z, c) {
                if within(&l) {
                    return (Some(l), LiftMethod::EdgeLift);
                }
            }
            if let Ok(l) = lift_walk_over_edge_with(g, *y, *z, c, IsolatedRepair::Neighbor(*x)) {
                if within(&l) {
                    return (Some(l), LiftMethod::EdgeLiftNeighbor);
                }
            }
            (None, LiftMethod::Oracle)
        }
        Move::Path(p) => match lift_walk_over_path(g, p, c, k) {
            Ok(l) => (Some(l), LiftMethod::PathLift),
            Err(_) => (None, LiftMethod::Oracle),
        },
    }
}

fn next_move(g: &MultiGraph, k: u32) -> Option<(Move, MultiGraph)> {
    for &(e, _) in g.edges() {
        let h = g.delete_edge(e).expect("edge exists");
        if is_k_connected(&h, 3) {
            return Some((Move::Delete(e), h));
        }
    }
    let deg = |v: Vertex| g.degree(v);
    let low = |v: Vertex| (3..=k as usize).contains(&deg(v));
    for &(e, _) in g.edges() {
        if !(low(e.0) && low(e.1)) {
            continue;
        }
        for (y, x) in [(e.1, e.0), (e.0, e.1)] {
            for &(z, _) in g.neighbors(y) {
                if is_contractible_edge(g, Edge::new(y, z)).unwrap_or(false) {
                    let h = contract_edge(g, Edge::new(y, z)).expect("edge exists");
                    return Some((Move::Contract { y, z, x }, h));
                }
            }
        }
    }
    let high = |v: Vertex| deg(v) >= 4;
    for &(e, _) in g.edges() {
        if !(high(e.0) && high(e.1)) {
            continue;
        }
        let path = maximal_path(g, e, &high);
        let set: VertexSet = path.iter().copied().collect();
        if let Ok(h) = contract_vertex_set(g, &set, false) {
            if is_k_connected(&h, 3) {
                return Some((Move::Path(path), h));
            }
        }
    }
    None
}

/// Extends `e` greedily at both ends inside the subgraph induced by `keep`.
fn maximal_path(g: &MultiGraph, e: Edge, keep: &dyn Fn(Vertex) -> bool) -> Vec<Vertex> {
    let mut path = VecDeque::from([e.0, e.1]);
    let mut on = vec![false; g.n()];
    on[e.0] = true;
    on[e.1] = true;
    loop {
        let back = *path.back().expect("non-empty");
        let Some(w) = g.neighbors(back).iter().map(|&(w, _)| w).find(|&w| !on[w] && keep(w)) else { break };
        on[w] = true;
        path.push_back(w);
    }
    loop {
        let front = *path.front().expect("non-empty");
        let Some(w) = g.neighbors(front).iter().map(|&(w, _)| w).find(|&w| !on[w] && keep(w)) else { break };
        on[w] = true;
        path.push_front(w);
    }
    path.into()
}
