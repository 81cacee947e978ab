//! Spanning closed walks and trails with bounded visit counts.
//!
//! A closed walk is represented by the Eulerian multigraph it traces: each
//! vertex pair records how many times the walk crosses it. A vertex of
//! degree `2t` in that multigraph is visited `t` times.

mod certificate;
mod cut_walk;
mod hypothesis;
mod lift;
mod oracle;
mod reduce;

pub use certificate::{CertificateError, EulerianCertificate, WalkKind};
pub use cut_walk::{construct_cut_walk, CutWalkError};
pub use hypothesis::{
    check_trail_hypothesis, check_walk_hypothesis, HypothesisReport, Lemma, TRAIL_SWEEP_LIMIT, WALK_SWEEP_LIMIT,
};
pub use lift::{lift_walk_over_edge, lift_walk_over_edge_with, lift_walk_over_path, IsolatedRepair, LiftError};
pub use oracle::{
    find_bounded_walk, find_bounded_walk_within, min_certificate, min_trail_number, min_walk_number,
    Budget, Interrupted, MinSearch, VisitCaps,
};
pub use reduce::{
    reduce_to_bipartite_witness, reduce_with_solver, BipartiteWitness, LiftMethod, ReduceError,
    ReductionOutcome, ReductionTrace, Step,
};
