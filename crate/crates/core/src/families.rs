//! Named graphs used as fixtures throughout the crate.

use crate::graph::{MultiGraph, Vertex};

fn build(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> MultiGraph {
    MultiGraph::from_edges(n, edges).expect("family constructors produce valid edges")
}

pub fn complete(n: usize) -> MultiGraph {
    build(n, (0..n).flat_map(|j| (0..j).map(move |i| (i, j))))
}

pub fn path(n: usize) -> MultiGraph {
    build(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> MultiGraph {
    assert!(n >= 3);
    build(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> MultiGraph {
    build(leaves + 1, (1..=leaves).map(|i| (0, i)))
}

/// `K_{a,b}`; vertices `0..a` form the first side.
pub fn complete_bipartite(a: usize, b: usize) -> MultiGraph {
    build(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
}

/// Hub 0 joined to a rim cycle `1..=rim`.
pub fn wheel(rim: usize) -> MultiGraph {
    let spokes = (1..=rim).map(|i| (0, i));
    let rim_edges = (0..rim).map(|i| (1 + i, 1 + (i + 1) % rim));
    build(rim + 1, spokes.chain(rim_edges))
}

/// `C_k x K_2`: cycles `0..k` and `k..2k`, rungs `i -- k+i`.
pub fn prism(k: usize) -> MultiGraph {
    let a = (0..k).map(|i| (i, (i + 1) % k));
    let b = (0..k).map(|i| (k + i, k + (i + 1) % k));
    let rungs = (0..k).map(|i| (i, k + i));
    build(2 * k, a.chain(b).chain(rungs))
}

/// Cycle `0..2k` plus the `k` long diagonals.
pub fn mobius_ladder(k: usize) -> MultiGraph {
    let n = 2 * k;
    build(n, (0..n).map(|i| (i, (i + 1) % n)).chain((0..k).map(|i| (i, i + k))))
}

pub fn petersen() -> MultiGraph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, 5 + i));
    build(10, outer.chain(inner).chain(spokes))
}

pub fn cube() -> MultiGraph {
    let edges = (0..8usize).flat_map(|v| {
        (0..3).filter_map(move |b| {
            let w = v ^ (1 << b);
            (v < w).then_some((v, w))
        })
    });
    build(8, edges)
}

pub fn octahedron() -> MultiGraph {
    build(6, (0..6).flat_map(|j| (0..j).filter(move |&i| i + 3 != j).map(move |i| (i, j))))
}

pub fn icosahedron() -> MultiGraph {
    // north pole 0, upper ring 1..=5, lower ring 6..=10, south pole 11
    let mut e = Vec::new();
    for i in 0..5 {
        let (u, u2) = (1 + i, 1 + (i + 1) % 5);
        let (l, l2) = (6 + i, 6 + (i + 1) % 5);
        e.extend([(0, u), (u, u2), (l, l2), (l, 11), (u, l), (u2, l)]);
    }
    build(12, e)
}

/// Smallest non-Hamiltonian polyhedral graph (11 vertices, bipartite 5+6).
pub fn herschel() -> MultiGraph {
    build(
        11,
        [
            (0, 2), (0, 3), (0, 4), (0, 5),
            (1, 2), (1, 3), (1, 6), (1, 7),
            (2, 8), (3, 9), (4, 8), (4, 10),
            (5, 9), (5, 10), (6, 8), (6, 10),
            (7, 9), (7, 10),
        ],
    )
}

/// Two disjoint copies of `K_4` joined by the single edge `3 -- 4`.
pub fn two_k4_bridged() -> MultiGraph {
    let k = |o: usize| (0..4).flat_map(move |j| (0..j).map(move |i| (o + i, o + j)));
    build(8, k(0).chain(k(4)).chain([(3, 4)]))
}

/// Every edge of `g` repeated `factor` times.
pub fn scaled(g: &MultiGraph, factor: u32) -> MultiGraph {
    MultiGraph::from_weighted_edges(g.n(), g.edges().iter().map(|&(e, m)| (e.0, e.1, m * factor)))
        .expect("scaling keeps edges valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(wheel(5).edge_count(), 10);
        assert_eq!(prism(3).edge_count(), 9);
        assert_eq!(petersen().edge_count(), 15);
        assert_eq!(cube().edge_count(), 12);
        assert_eq!(octahedron().edge_count(), 12);
        assert_eq!(icosahedron().edge_count(), 30);
        assert!(icosahedron().vertices().all(|v| icosahedron().degree(v) == 5));
        assert_eq!(herschel().edge_count(), 18);
        assert!(herschel().bipartition().is_some());
        assert_eq!(mobius_ladder(4).edge_count(), 12);
    }
}
