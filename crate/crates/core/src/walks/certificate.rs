use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Edge, MultiGraph, Vertex, VertexSet};
use crate::trees::Dsu;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkKind {
    Walk,
    Trail,
}

impl WalkKind {
    /// How often a single edge instance may be crossed.
    pub fn per_instance(self) -> u32 {
        match self {
            WalkKind::Walk => 2,
            WalkKind::Trail => 1,
        }
    }
}

impl fmt::Display for WalkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WalkKind::Walk => "walk",
            WalkKind::Trail => "trail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("usage vector has {got} entries, host has {expected} edge classes")]
    WrongLength { expected: usize, got: usize },
    #[error("edge {edge} used {used} times, allowed {allowed}")]
    OverUsed { edge: Edge, used: u32, allowed: u32 },
    #[error("edge {0} is not in the host graph")]
    MissingEdge(Edge),
    #[error("vertex {0} has odd degree")]
    OddDegree(Vertex),
    #[error("vertex {0} is not covered")]
    Uncovered(Vertex),
    #[error("support is disconnected")]
    Disconnected,
    #[error("host graph has no vertices")]
    EmptyHost,
}

/// A spanning closed walk (or trail), stored as edge usage counts.
///
/// `usage[i]` is the number of crossings of the pair `host.edges()[i]`;
/// it may be as large as `per_instance * multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerianCertificate {
    host: MultiGraph,
    kind: WalkKind,
    usage: Vec<u32>,
}

impl EulerianCertificate {
    pub fn new(host: MultiGraph, kind: WalkKind, usage: Vec<u32>) -> Result<Self, CertificateError> {
        let c = EulerianCertificate { host, kind, usage };
        c.validate()?;
        Ok(c)
    }

    /// Builds from `(u, v, count)` triples; unlisted pairs are unused and
    /// repeated pairs accumulate.
    pub fn from_pairs<I>(host: MultiGraph, kind: WalkKind, pairs: I) -> Result<Self, CertificateError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, u32)>,
    {
        let mut usage = vec![0; host.edges().len()];
        for (u, v, c) in pairs {
            let e = Edge::new(u, v);
            let i = host.edge_index(e).ok_or(CertificateError::MissingEdge(e))?;
            usage[i] += c;
        }
        Self::new(host, kind, usage)
    }

    pub(crate) fn new_unchecked(host: MultiGraph, kind: WalkKind, usage: Vec<u32>) -> Self {
        debug_assert_eq!(usage.len(), host.edges().len());
        EulerianCertificate { host, kind, usage }
    }

    pub fn host(&self) -> &MultiGraph {
        &self.host
    }

    pub fn kind(&self) -> WalkKind {
        self.kind
    }

    /// Usage counts aligned with `host().edges()`.
    pub fn usage(&self) -> &[u32] {
        &self.usage
    }

    pub fn usage_of(&self, u: Vertex, v: Vertex) -> u32 {
        self.host.edge_index(Edge::new(u, v)).map_or(0, |i| self.usage[i])
    }

    pub fn degree(&self, v: Vertex) -> u32 {
        degrees(&self.host, &self.usage)[v]
    }

    pub fn degrees(&self) -> Vec<u32> {
        degrees(&self.host, &self.usage)
    }

    pub fn visits(&self) -> Vec<u32> {
        if self.host.n() == 1 {
            return vec![1];
        }
        self.degrees().into_iter().map(|d| d / 2).collect()
    }

    pub fn max_visits(&self, within: Option<&VertexSet>) -> u32 {
        let visits = self.visits();
        match within {
            Some(s) => s.iter().map(|v| visits[v]).max().unwrap_or(0),
            None => visits.into_iter().max().unwrap_or(0),
        }
    }

    /// Used pairs with their counts.
    pub fn support(&self) -> Vec<(Edge, u32)> {
        self.host
            .edges()
            .iter()
            .zip(&self.usage)
            .filter(|(_, &u)| u > 0)
            .map(|(&(e, _), &u)| (e, u))
            .collect()
    }

    /// Same crossings read as a walk. Every trail is a walk.
    pub fn as_walk(&self) -> EulerianCertificate {
        EulerianCertificate { kind: WalkKind::Walk, ..self.clone() }
    }

    /// Re-checks every invariant from scratch.
    pub fn validate(&self) -> Result<(), CertificateError> {
        let g = &self.host;
        if g.n() == 0 {
            return Err(CertificateError::EmptyHost);
        }
        if self.usage.len() != g.edges().len() {
            return Err(CertificateError::WrongLength { expected: g.edges().len(), got: self.usage.len() });
        }
        for (&(e, m), &u) in g.edges().iter().zip(&self.usage) {
            let allowed = m * self.kind.per_instance();
            if u > allowed {
                return Err(CertificateError::OverUsed { edge: e, used: u, allowed });
            }
        }
        if g.n() == 1 {
            return Ok(());
        }
        let deg = degrees(g, &self.usage);
        for v in g.vertices() {
            if deg[v] == 0 {
                return Err(CertificateError::Uncovered(v));
            }
            if deg[v] % 2 == 1 {
                return Err(CertificateError::OddDegree(v));
            }
        }
        let mut dsu = Dsu::new(g.n());
        let mut parts = g.n();
        for (e, _) in self.support() {
            if dsu.union(e.0, e.1) {
                parts -= 1;
            }
        }
        if parts != 1 {
            return Err(CertificateError::Disconnected);
        }
        Ok(())
    }

    /// Closed vertex sequence crossing each pair exactly `usage` times.
    ///
    /// Starts at vertex 0 and always leaves along the smallest neighbour
    /// with unused crossings, so the output is deterministic.
    pub fn to_traversal(&self) -> Vec<Vertex> {
        let g = &self.host;
        let mut remaining = self.usage.clone();
        let mut adj: Vec<Vec<(Vertex, usize)>> = vec![Vec::new(); g.n()];
        for (i, &(e, _)) in g.edges().iter().enumerate() {
            adj[e.0].push((e.1, i));
            adj[e.1].push((e.0, i));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let mut ptr = vec![0; g.n()];
        let mut stack = vec![0];
        let mut circuit = Vec::new();
        while let Some(&v) = stack.last() {
            while ptr[v] < adj[v].len() && remaining[adj[v][ptr[v]].1] == 0 {
                ptr[v] += 1;
            }
            if let Some(&(w, i)) = adj[v].get(ptr[v]) {
                remaining[i] -= 1;
                stack.push(w);
            } else {
                circuit.push(v);
                stack.pop();
            }
        }
        circuit.reverse();
        circuit
    }
}

fn degrees(g: &MultiGraph, usage: &[u32]) -> Vec<u32> {
    let mut deg = vec![0; g.n()];
    for (&(e, _), &u) in g.edges().iter().zip(usage) {
        deg[e.0] += u;
        deg[e.1] += u;
    }
    deg
}

impl Serialize for EulerianCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mult: Vec<[usize; 3]> = self.support().into_iter().map(|(e, u)| [e.0, e.1, u as usize]).collect();
        let mut st = s.serialize_struct("EulerianCertificate", 3)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("mult", &mult)?;
        st.serialize_field("visits", &self.visits())?;
        st.end()
    }
}
