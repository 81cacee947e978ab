use std::cell::Cell;
use std::time::{Duration, Instant};

use kwalk::connectivity::{is_k_connected, is_minimally_3_connected, verify_halin_properties};
use kwalk::graph::components;
use kwalk::graph::io::{to_graph6, to_sparse6};
use kwalk::surfaces::{conjecture_lower_bound, edge_bound_check, face_trace, parse_rotation};
use kwalk::trees::{format_rational, tree_connected_components};
use kwalk::walks::{
    check_trail_hypothesis, check_walk_hypothesis, find_bounded_walk_within, min_certificate, reduce_with_solver,
    Budget, EulerianCertificate, Interrupted, MinSearch, ReduceError, ReductionOutcome, VisitCaps, WalkKind,
    TRAIL_SWEEP_LIMIT, WALK_SWEEP_LIMIT,
};
use kwalk::{families, Edge, MultiGraph, VertexSet};
use serde_json::{json, Value};

use crate::report::{Outcome, Record};

pub enum Task {
    MinWalk,
    MinTrail,
    Decompose { m: usize },
    Halin,
    WalkTheorem { chi: i64, k: u32 },
    TrailTheorem { chi: i64, k: u32 },
    Reduce { k: u32 },
    EmbedChi { rotation: String },
    LowerBound { chi: i64 },
}

impl Task {
    fn name(&self) -> &'static str {
        match self {
            Task::MinWalk => "min-walk",
            Task::MinTrail => "min-trail",
            Task::Decompose { .. } => "decompose",
            Task::Halin => "verify halin",
            Task::WalkTheorem { .. } => "verify walk-theorem",
            Task::TrailTheorem { .. } => "verify trail-theorem",
            Task::Reduce { .. } => "reduce",
            Task::EmbedChi { .. } => "embed chi",
            Task::LowerBound { .. } => "lower-bound",
        }
    }

    fn params(&self, max_k: u32) -> Value {
        match self {
            Task::MinWalk | Task::MinTrail => json!({ "max_k": max_k }),
            Task::Decompose { m } => json!({ "m": m }),
            Task::Halin | Task::EmbedChi { .. } => json!({}),
            Task::WalkTheorem { chi, k } | Task::TrailTheorem { chi, k } => json!({ "chi": chi, "k": k }),
            Task::Reduce { k } => json!({ "k": k }),
            Task::LowerBound { chi } => json!({ "chi": chi, "max_k": max_k }),
        }
    }
}

pub struct Job {
    pub source: String,
    pub graph: MultiGraph,
    pub edge_order: Vec<Edge>,
}

impl Job {
    pub fn lower_bound(chi: i64) -> Job {
        let b = (4 - chi) as usize;
        let graph = families::complete_bipartite(4, b);
        let edge_order = graph.edge_instances();
        Job { source: format!("K_{{4,{b}}}"), graph, edge_order }
    }
}

pub struct Settings {
    pub max_k: u32,
    pub timeout: Duration,
}

/// Input checks that must fail the whole run rather than one record.
pub fn precheck(task: &Task, job: &Job) -> Result<(), String> {
    let g = &job.graph;
    match task {
        Task::Decompose { m } if *m == 0 => Err("--m must be at least 1".into()),
        Task::TrailTheorem { .. } if g.n() > TRAIL_SWEEP_LIMIT => Err(format!(
            "{}: trail-theorem sweeps every vertex subset and is limited to {TRAIL_SWEEP_LIMIT} vertices, got {}",
            job.source,
            g.n()
        )),
        Task::WalkTheorem { k, .. } => {
            let x = high_degree(g, *k);
            if g.is_independent(&x) && x.len() > WALK_SWEEP_LIMIT {
                return Err(format!(
                    "{}: walk-theorem sweeps subsets of X and is limited to |X| = {WALK_SWEEP_LIMIT}, got {}",
                    job.source,
                    x.len()
                ));
            }
            Ok(())
        }
        Task::EmbedChi { rotation } => parse_rotation(rotation, g.n(), &job.edge_order)
            .map(|_| ())
            .map_err(|e| format!("rotation for {}: {e}", job.source)),
        _ => Ok(()),
    }
}

/// Vertices of degree at least `k + 1`.
fn high_degree(g: &MultiGraph, k: u32) -> VertexSet {
    g.vertices().filter(|&v| g.degree(v) > k as usize).collect()
}

fn encode(g: &MultiGraph) -> String {
    to_graph6(g).unwrap_or_else(|_| to_sparse6(g))
}

fn as_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("library types serialize")
}

struct Verdict {
    outcome: Outcome,
    reason: Option<String>,
    detail: String,
    witness: Value,
}

impl Verdict {
    fn new(outcome: Outcome, reason: Option<&str>, detail: String, witness: Value) -> Self {
        Verdict { outcome, reason: reason.map(str::to_owned), detail, witness }
    }

    fn skip(reason: &str) -> Self {
        Verdict::new(Outcome::Skip, Some(reason), String::new(), Value::Null)
    }
}

pub fn run(task: &Task, job: &Job, settings: &Settings, timings: bool) -> Record {
    let start = Instant::now();
    let budget = Budget::until(start + settings.timeout);
    let g = &job.graph;
    let v = match task {
        Task::MinWalk => min_number(g, WalkKind::Walk, settings.max_k, budget),
        Task::MinTrail => min_number(g, WalkKind::Trail, settings.max_k, budget),
        Task::Decompose { m } => decompose(g, *m),
        Task::Halin => halin(g),
        Task::WalkTheorem { chi, k } => walk_theorem(g, *chi, *k, budget),
        Task::TrailTheorem { chi, k } => trail_theorem(g, *chi, *k, budget),
        Task::Reduce { k } => reduce(g, *k, budget),
        Task::EmbedChi { rotation } => embed(job, rotation),
        Task::LowerBound { chi } => lower_bound(g, *chi, settings.max_k, budget),
    };
    Record {
        id: g.structure_hash(),
        source: job.source.clone(),
        command: task.name(),
        params: task.params(settings.max_k),
        outcome: v.outcome,
        reason: v.reason,
        detail: v.detail,
        witness: v.witness,
        wall_ms: timings.then(|| start.elapsed().as_millis() as u64),
    }
}

fn certificate_summary(c: &EulerianCertificate) -> String {
    format!("max visits {}", c.max_visits(None))
}

fn min_number(g: &MultiGraph, kind: WalkKind, max_k: u32, budget: Budget) -> Verdict {
    match min_certificate(g, kind, max_k, budget) {
        Ok(MinSearch::Found { k, certificate }) => Verdict::new(
            Outcome::Pass,
            None,
            format!("min_k={k}"),
            json!({ "min_k": k, "certificate": as_value(&certificate) }),
        ),
        Ok(MinSearch::AboveLimit(limit)) => {
            Verdict::new(Outcome::Skip, Some("above-max-k"), format!("min_k>{limit}"), Value::Null)
        }
        Ok(MinSearch::Absent) => {
            let reason = if !g.is_connected() {
                "disconnected"
            } else {
                match kind {
                    WalkKind::Walk => "no-spanning-closed-walk",
                    WalkKind::Trail => "no-spanning-closed-trail",
                }
            };
            let parts: Vec<Vec<usize>> =
                components(g, &VertexSet::new()).iter().map(|c| c.as_slice().to_vec()).collect();
            Verdict::new(
                Outcome::Fail,
                Some(reason),
                "min_k=none".into(),
                json!({ "min_k": null, "graph": encode(g), "components": parts }),
            )
        }
        Err(Interrupted) => Verdict::skip("timeout"),
    }
}

fn decompose(g: &MultiGraph, m: usize) -> Verdict {
    let p = tree_connected_components(g, m);
    let omega = p.omega.map(|o| format!(" omega={}", format_rational(&o))).unwrap_or_default();
    Verdict::new(Outcome::Pass, None, format!("parts={} crossing={}{omega}", p.parts.len(), p.crossing), as_value(&p))
}

fn halin(g: &MultiGraph) -> Verdict {
    if !is_minimally_3_connected(g) {
        return Verdict::skip("not-minimally-3-connected");
    }
    match verify_halin_properties(g) {
        Ok(rep) => {
            let failed: Vec<&str> =
                rep.checks.iter().filter(|c| c.witness.is_some()).map(|c| c.property).collect();
            if failed.is_empty() {
                Verdict::new(Outcome::Pass, None, "all properties hold".into(), as_value(&rep))
            } else {
                Verdict::new(Outcome::Fail, Some("property-failed"), failed.join(","), as_value(&rep))
            }
        }
        Err(e) => Verdict::new(Outcome::Skip, Some("precondition"), e.to_string(), Value::Null),
    }
}

/// Whether a simple graph with these counts can sit on a surface of
/// characteristic `chi` at all.
fn fits_surface(g: &MultiGraph, chi: i64) -> bool {
    let s = g.simplified();
    edge_bound_check(s.n() as i64, s.edge_count() as i64, chi, s.is_triangle_free())
}

fn confirm(
    g: &MultiGraph,
    kind: WalkKind,
    k: u32,
    budget: Budget,
    hypothesis: Value,
    hypothesis_holds: Option<bool>,
    note: Option<&str>,
) -> Verdict {
    match find_bounded_walk_within(g, &VisitCaps::uniform(g.n(), k), kind, budget) {
        Ok(Some(c)) => {
            let reason = match (note, hypothesis_holds) {
                (Some(n), _) => Some(n),
                (None, Some(false)) => Some("hypothesis-violated"),
                _ => None,
            };
            Verdict::new(
                Outcome::Pass,
                reason,
                format!("{kind} at k={k}, {}", certificate_summary(&c)),
                json!({ "certificate": as_value(&c), "hypothesis": hypothesis }),
            )
        }
        Ok(None) => {
            let reason = if hypothesis_holds == Some(true) { "hypothesis-holds-without-conclusion" } else { "no-certificate" };
            Verdict::new(
                Outcome::Fail,
                Some(reason),
                format!("no {kind} at k={k}"),
                json!({ "graph": encode(g), "hypothesis": hypothesis }),
            )
        }
        Err(Interrupted) => Verdict::skip("timeout"),
    }
}

fn walk_theorem(g: &MultiGraph, chi: i64, k: u32, budget: Budget) -> Verdict {
    if !is_k_connected(g, 3) {
        return Verdict::skip("not-3-connected");
    }
    if !fits_surface(g, chi) {
        return Verdict::skip("exceeds-euler-bound");
    }
    let x = high_degree(g, k);
    match check_walk_hypothesis(g, &x, k, false) {
        Ok(rep) => {
            let holds = rep.satisfied;
            confirm(g, WalkKind::Walk, k, budget, as_value(&rep), Some(holds), None)
        }
        Err(_) => confirm(g, WalkKind::Walk, k, budget, Value::Null, None, Some("X-not-independent")),
    }
}

fn trail_theorem(g: &MultiGraph, chi: i64, k: u32, budget: Budget) -> Verdict {
    if !is_k_connected(g, 5) {
        return Verdict::skip("not-5-connected");
    }
    if !fits_surface(g, chi) {
        return Verdict::skip("exceeds-euler-bound");
    }
    match check_trail_hypothesis(g, k) {
        Ok(rep) => {
            let holds = rep.satisfied;
            confirm(g, WalkKind::Trail, k, budget, as_value(&rep), Some(holds), None)
        }
        Err(e) => Verdict::new(Outcome::Skip, Some("precondition"), e.to_string(), Value::Null),
    }
}

fn reduce(g: &MultiGraph, k: u32, budget: Budget) -> Verdict {
    let interrupted = Cell::new(false);
    let mut solver = |h: &MultiGraph, k: u32| match find_bounded_walk_within(
        h,
        &VisitCaps::uniform(h.n(), k),
        WalkKind::Walk,
        budget,
    ) {
        Ok(found) => found,
        Err(Interrupted) => {
            interrupted.set(true);
            None
        }
    };
    let out = reduce_with_solver(g, k, &mut solver);
    if interrupted.get() {
        return Verdict::skip("timeout");
    }
    match out {
        Ok(ReductionOutcome::Walk { certificate, trace, lifts }) => Verdict::new(
            Outcome::Pass,
            None,
            format!("{} steps, {}", trace.len(), certificate_summary(&certificate)),
            json!({ "certificate": as_value(&certificate), "trace": as_value(&trace), "lifts": as_value(&lifts) }),
        ),
        Ok(ReductionOutcome::Witness(w)) => {
            let valid = w.validate(g, k);
            Verdict::new(
                if valid { Outcome::Pass } else { Outcome::Fail },
                Some("bipartite-witness"),
                format!("|X|={} |Y|={} after {} steps", w.x.len(), w.y.len(), w.trace.len()),
                json!({ "witness": as_value(&w), "reduced": encode(&w.r) }),
            )
        }
        Err(ReduceError::NotThreeConnected) => Verdict::skip("not-3-connected"),
        Err(e) => Verdict::new(Outcome::Fail, Some("reduction-failed"), e.to_string(), json!({ "graph": encode(g) })),
    }
}

fn embed(job: &Job, rotation: &str) -> Verdict {
    let r = parse_rotation(rotation, job.graph.n(), &job.edge_order).expect("checked before the run");
    let rep = face_trace(&r);
    let g = &job.graph;
    let mut w = as_value(&rep);
    w["edge_bound"] = json!(edge_bound_check(g.n() as i64, g.edge_count() as i64, rep.chi, g.is_triangle_free()));
    Verdict::new(Outcome::Pass, None, format!("chi={} F={}", rep.chi, rep.face_count), w)
}

fn lower_bound(g: &MultiGraph, chi: i64, max_k: u32, budget: Budget) -> Verdict {
    let bound = conjecture_lower_bound(chi);
    let found = |k: Value, cert: Value, ok: bool, reason: Option<&str>| {
        Verdict::new(
            if ok { Outcome::Pass } else { Outcome::Fail },
            reason,
            format!("min_trail={k} lower_bound={bound}"),
            json!({ "min_trail": k, "lower_bound": bound, "certificate": cert }),
        )
    };
    match min_certificate(g, WalkKind::Trail, max_k, budget) {
        Ok(MinSearch::Found { k, certificate }) => found(json!(k), as_value(&certificate), k as i64 >= bound, None),
        Ok(MinSearch::Absent) => found(Value::Null, Value::Null, true, Some("no-spanning-closed-trail")),
        Ok(MinSearch::AboveLimit(limit)) if limit as i64 >= bound => {
            found(json!(format!(">{limit}")), Value::Null, true, Some("above-max-k"))
        }
        Ok(MinSearch::AboveLimit(_)) => Verdict::skip("above-max-k"),
        Err(Interrupted) => Verdict::skip("timeout"),
    }
}
