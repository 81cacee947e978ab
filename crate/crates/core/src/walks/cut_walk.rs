//! Walks that respect a 3-vertex cut: a cycle through the cut plus doubled
//! trees hung off it.

use std::collections::VecDeque;

use thiserror::Error;

use super::certificate::{EulerianCertificate, WalkKind};
use crate::connectivity::{cycle_through, is_k_connected};
use crate::error::PreconditionError;
use crate::graph::{components, Edge, MultiGraph, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CutWalkError {
    #[error(transparent)]
    Precondition(#[from] PreconditionError),
    #[error("cut must have exactly 3 vertices, got {0}")]
    WrongSize(usize),
    #[error("component {component} has only {neighbors} neighbours in the cut")]
    FewNeighbors { component: VertexSet, neighbors: usize },
    #[error("cut vertices exceed {k} visits: {loads:?}")]
    Overloaded { k: u32, loads: Vec<(Vertex, u32)> },
}

/// A spanning closed walk meeting each vertex of the independent 3-cut `s`
/// at most `k` times.
///
/// Starts from a cycle through `s`. Components of `G - s` the cycle meets
/// are finished with doubled BFS trees grown from the cycle; every other
/// component is joined, by a doubled edge, to its least-loaded neighbour in
/// `s` and covered by a doubled BFS tree.
pub fn construct_cut_walk(g: &MultiGraph, s: &VertexSet, k: u32) -> Result<EulerianCertificate, CutWalkError> {
    if s.len() != 3 {
        return Err(CutWalkError::WrongSize(s.len()));
    }
    if !g.is_independent(s) {
        return Err(PreconditionError::NotIndependent(s.clone()).into());
    }
    let comps = components(g, s);
    for c in &comps {
        let nbrs = s.iter().filter(|&x| g.neighbors(x).iter().any(|&(w, _)| c.contains(w))).count();
        if nbrs < 3 {
            return Err(CutWalkError::FewNeighbors { component: c.clone(), neighbors: nbrs });
        }
    }
    if !is_k_connected(g, 3) {
        return Err(PreconditionError::NotKConnected(3).into());
    }
    let cycle = cycle_through(g, s)?;
    let mut usage = vec![0u32; g.edges().len()];
    let mut covered = vec![false; g.n()];
    let bump = |usage: &mut Vec<u32>, a: Vertex, b: Vertex, n: u32| {
        usage[g.edge_index(Edge::new(a, b)).expect("walk edges exist")] += n;
    };
    for w in cycle.windows(2) {
        bump(&mut usage, w[0], w[1], 1);
    }
    for &v in &cycle {
        covered[v] = true;
    }
    let mut load: Vec<u32> = vec![0; g.n()];
    for x in s.iter() {
        load[x] = 1;
    }
    for c in &comps {
        let roots: Vec<Vertex> = c.iter().filter(|&v| covered[v]).collect();
        let roots = if roots.is_empty() {
            let (x, w) = s
                .iter()
                .flat_map(|x| g.neighbors(x).iter().filter(|&&(w, _)| c.contains(w)).map(move |&(w, _)| (x, w)))
                .min_by_key(|&(x, w)| (load[x], x, w))
                .expect("component has neighbours in the cut");
            bump(&mut usage, x, w, 2);
            load[x] += 1;
            covered[w] = true;
            vec![w]
        } else {
            roots
        };
        let mut queue: VecDeque<Vertex> = roots.into();
        while let Some(u) = queue.pop_front() {
            for &(w, _) in g.neighbors(u) {
                if c.contains(w) && !covered[w] {
                    covered[w] = true;
                    bump(&mut usage, u, w, 2);
                    queue.push_back(w);
                }
            }
        }
    }
    let loads: Vec<(Vertex, u32)> = s.iter().map(|x| (x, load[x])).collect();
    if loads.iter().any(|&(_, l)| l > k) {
        return Err(CutWalkError::Overloaded { k, loads });
    }
    let cert = EulerianCertificate::new(g.clone(), WalkKind::Walk, usage).expect("construction yields a closed walk");
    debug_assert!(s.iter().all(|x| cert.visits()[x] == load[x]));
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn k33_side_visited_at_most_twice() {
        let g = families::complete_bipartite(3, 3);
        let s = VertexSet::from([0, 1, 2]);
        let c = construct_cut_walk(&g, &s, 2).unwrap();
        assert!(c.max_visits(Some(&s)) <= 2);
    }

    #[test]
    fn k39_balances_attachments() {
        let g = families::complete_bipartite(3, 9);
        let s = VertexSet::from([0, 1, 2]);
        let c = construct_cut_walk(&g, &s, 3).unwrap();
        assert_eq!(s.iter().map(|x| c.visits()[x]).collect::<Vec<_>>(), vec![3, 3, 3]);
        assert!(matches!(construct_cut_walk(&g, &s, 2), Err(CutWalkError::Overloaded { k: 2, .. })));
    }

    #[test]
    fn component_with_two_cut_neighbours() {
        // vertex 6 sees only 0 and 1 of the cut {0, 1, 2}
        let mut e: Vec<(Vertex, Vertex)> = (0..3).flat_map(|x| (3..6).map(move |y| (x, y))).collect();
        e.extend([(0, 6), (1, 6)]);
        let g = MultiGraph::from_edges(7, e).unwrap();
        assert_eq!(
            construct_cut_walk(&g, &VertexSet::from([0, 1, 2]), 3),
            Err(CutWalkError::FewNeighbors { component: VertexSet::from([6]), neighbors: 2 })
        );
    }

    #[test]
    fn cut_must_be_independent_triple() {
        let g = families::complete(5);
        assert_eq!(construct_cut_walk(&g, &VertexSet::from([0, 1]), 3), Err(CutWalkError::WrongSize(2)));
        assert!(matches!(
            construct_cut_walk(&g, &VertexSet::from([0, 1, 2]), 3),
            Err(CutWalkError::Precondition(PreconditionError::NotIndependent(_)))
        ));
    }
}
