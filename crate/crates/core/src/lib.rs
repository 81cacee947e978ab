//! Exact small-graph machinery for spanning closed walks and trails with
//! bounded vertex visits.
//!
//! The crate covers the multigraph model and its minors ([`graph`]),
//! connectivity and contractible edges ([`connectivity`]), edge-disjoint
//! spanning trees and the `Ω` invariant ([`trees`]), exact k-walk and k-trail
//! search with the lifting constructions built on it ([`walks`]), and
//! rotation-system embeddings with Euler characteristic bookkeeping
//! ([`surfaces`]).

pub mod connectivity;
pub mod error;
pub mod families;
pub mod graph;
pub mod surfaces;
pub mod trees;
pub mod walks;

pub use error::{GraphError, ParseError, PreconditionError};
pub use graph::{Edge, MultiGraph, Vertex, VertexSet};
