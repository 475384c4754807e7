//! Condition (B): some boundary path `x` at `v` has `αx ≠ βx` whenever
//! `α ≠ β`.
//!
//! The checks use the shift form of the condition: `αx = βx` for some
//! `α ≠ β` exactly when `σ^p(x) = x` for a nonzero `p` supported on the
//! infinite coordinates of `x`. A finite boundary path is always a witness,
//! and so is every boundary path whose range lies on no cycle (a fixed shift
//! would close `x(0, p)` into a cycle at `r(x)`). For `k = 1` the decision is
//! exact. For `k ≥ 2` ultimately periodic candidates are accepted when no
//! shift up to the pumping bound `d(prefix) + 2·d(cycle)` fixes them, and a
//! vertex is reported violated only when every path from it is forced.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::degree::Degree;
use crate::kgraph::{reachable, EdgeId, KGraph, VertexId};
use crate::lattice::{is_regular, quotient_graph, LatticeError, VertexSet};
use crate::par::{self, Mode};
use crate::paths::{Path, UPPath};

pub const DEFAULT_DEPTH: u32 = 8;

/// Candidate budget per vertex for the ultimately periodic search.
const CANDIDATE_CAP: usize = 20_000;

/// `KPLAT_DEPTH` when set to a positive integer, else [`DEFAULT_DEPTH`].
pub fn default_depth() -> u32 {
    std::env::var("KPLAT_DEPTH")
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok())
        .filter(|&d| d > 0)
        .unwrap_or(DEFAULT_DEPTH)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BError {
    #[error("expected a 1-graph, found k = {0}")]
    NotOneGraph(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Finite(Path),
    Periodic(UPPath),
}

impl Witness {
    pub fn range(&self) -> VertexId {
        match self {
            Witness::Finite(p) => p.range(),
            Witness::Periodic(x) => x.range(),
        }
    }

    pub fn display(&self, g: &KGraph) -> String {
        match self {
            Witness::Finite(p) => g.path_name(p),
            Witness::Periodic(x) => x.display(g),
        }
    }

    /// `λ · self`, for `s(λ) = r(self)`.
    fn behind(&self, g: &KGraph, lambda: &Path) -> Witness {
        match self {
            Witness::Finite(p) => Witness::Finite(g.compose(lambda, p).expect("walk ends at the witness")),
            Witness::Periodic(x) => Witness::Periodic(
                UPPath::compose_with_boundary(g, lambda, x).expect("walk ends at the witness"),
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BStatus {
    Satisfied,
    Violated,
    Unknown,
}

impl fmt::Display for BStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BStatus::Satisfied => "satisfied",
            BStatus::Violated => "VIOLATED",
            BStatus::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BVerdict {
    Satisfied(Witness),
    /// Carries a description of the periodic obstruction.
    Violated(String),
    /// The search bound that was exhausted.
    Unknown { depth: u32 },
}

impl BVerdict {
    pub fn status(&self) -> BStatus {
        match self {
            BVerdict::Satisfied(_) => BStatus::Satisfied,
            BVerdict::Violated(_) => BStatus::Violated,
            BVerdict::Unknown { .. } => BStatus::Unknown,
        }
    }

    /// `satisfied`, `VIOLATED (exit-less cycle f)` or `unknown (depth 8)`.
    pub fn summary(&self) -> String {
        match self {
            BVerdict::Satisfied(_) => "satisfied".into(),
            BVerdict::Violated(why) => format!("VIOLATED ({why})"),
            BVerdict::Unknown { depth } => format!("unknown (depth {depth})"),
        }
    }
}

/// `d(prefix) + 2·d(cycle)`.
pub fn pumping_bound(x: &UPPath) -> Degree {
    x.prefix().degree() + &x.cycle().degree().scale(2)
}

/// No shift `σ^p` with `0 < p <= bound` (in every coordinate) fixes `x`.
pub fn is_aperiodic_witness(g: &KGraph, x: &UPPath, bound: u32) -> bool {
    aperiodic_within(g, x, &Degree::uniform(g.k(), bound))
}

fn aperiodic_within(g: &KGraph, x: &UPPath, bound: &Degree) -> bool {
    let finite: Vec<usize> = (0..g.k()).filter(|i| !x.infinite_coords().contains(i)).collect();
    let mut b = bound.coords().to_vec();
    for i in finite {
        b[i] = 0;
    }
    Degree::from_vec(b)
        .box_below()
        .into_iter()
        .filter(|p| !p.is_zero())
        .all(|p| match x.shift(g, &p) {
            Ok(y) => !y.equivalent(g, x),
            Err(_) => true,
        })
}

fn out_degree(g: &KGraph, v: VertexId) -> usize {
    g.all_edges_from(v).count()
}

/// Shortest edge walk from `v` to a vertex satisfying `target`.
fn bfs_walk(g: &KGraph, v: VertexId, target: impl Fn(VertexId) -> bool) -> Option<Vec<EdgeId>> {
    let mut parent: HashMap<VertexId, Option<EdgeId>> = HashMap::from([(v, None)]);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        if target(u) {
            let mut word = Vec::new();
            let mut at = u;
            while let Some(Some(e)) = parent.get(&at) {
                word.push(*e);
                at = g.edge(*e).range;
            }
            word.reverse();
            return Some(word);
        }
        for e in g.all_edges_from(u) {
            let s = g.edge(e).source;
            parent.entry(s).or_insert_with(|| {
                queue.push_back(s);
                Some(e)
            });
        }
    }
    None
}

fn walk_path(g: &KGraph, v: VertexId, word: &[EdgeId]) -> Path {
    if word.is_empty() {
        g.vertex_path(v)
    } else {
        g.path_from_edges(word).expect("walks compose")
    }
}

/// A shortest cycle through `v`, as an edge word starting at `v`.
fn shortest_cycle(g: &KGraph, v: VertexId) -> Option<Vec<EdgeId>> {
    g.all_edges_from(v)
        .filter_map(|e| {
            let rest = bfs_walk(g, g.edge(e).source, |u| u == v)?;
            Some(std::iter::once(e).chain(rest).collect::<Vec<_>>())
        })
        .min_by_key(Vec::len)
}

fn on_cycle(g: &KGraph, v: VertexId) -> bool {
    reachable(g, g.all_edges_from(v).map(|e| g.edge(e).source)).contains(&v)
}

/// Follow the first edge out of each vertex until a vertex repeats; returns
/// the lead-in and the closed part. Requires that no source is met.
fn greedy_lasso(g: &KGraph, start: VertexId) -> (Vec<EdgeId>, Vec<EdgeId>) {
    let mut seen: HashMap<VertexId, usize> = HashMap::new();
    let mut word = Vec::new();
    let mut at = start;
    loop {
        if let Some(&i) = seen.get(&at) {
            let cycle = word.split_off(i);
            return (word, cycle);
        }
        seen.insert(at, word.len());
        let e = g.all_edges_from(at).next().expect("no source on the walk");
        word.push(e);
        at = g.edge(e).source;
    }
}

fn edge_names(g: &KGraph, word: &[EdgeId]) -> String {
    word.iter().map(|&e| g.edge(e).name.as_str()).collect::<Vec<_>>().join(".")
}

/// Exact check for 1-graphs: `v` violates (B) exactly when it lies on a cycle
/// whose vertices each emit a single edge.
pub fn check_vertex_b_1graph(g: &KGraph, v: VertexId) -> Result<BVerdict, BError> {
    if g.k() != 1 {
        return Err(BError::NotOneGraph(g.k()));
    }
    let cycle = shortest_cycle(g, v);
    if let Some(c) = &cycle {
        if c.iter().all(|&e| out_degree(g, g.edge(e).range) == 1) {
            return Ok(BVerdict::Violated(format!("exit-less cycle {}", edge_names(g, c))));
        }
    }
    if let Some(word) = bfs_walk(g, v, |u| out_degree(g, u) == 0) {
        return Ok(BVerdict::Satisfied(Witness::Finite(walk_path(g, v, &word))));
    }
    let Some(c) = cycle else {
        let (lead, closed) = greedy_lasso(g, v);
        let x = UPPath::new(g, walk_path(g, v, &lead), walk_path(g, g.edge(closed[0]).range, &closed))
            .expect("lasso is a valid ultimately periodic path");
        return Ok(BVerdict::Satisfied(Witness::Periodic(x)));
    };
    // leave the cycle through an exit, then wind `c` in front until the
    // result stops being periodic
    let j = c
        .iter()
        .position(|&e| out_degree(g, g.edge(e).range) > 1)
        .expect("a cycle that is not exit-less has an exit");
    let u = g.edge(c[j]).range;
    let exit = g.all_edges_from(u).find(|&e| e != c[j]).unwrap();
    let (lead, closed) = greedy_lasso(g, g.edge(exit).source);
    let mut base: Vec<EdgeId> = c[..j].to_vec();
    base.push(exit);
    base.extend(lead);
    let tail = walk_path(g, g.edge(closed[0]).range, &closed);
    for winds in 0..=2 * g.vertex_count() + 2 {
        let mut word = Vec::new();
        for _ in 0..winds {
            word.extend_from_slice(&c);
        }
        word.extend_from_slice(&base);
        let x = UPPath::new(g, walk_path(g, v, &word), tail.clone()).expect("valid lasso");
        let bound = x.prefix().degree().get(0) + x.cycle().degree().get(0);
        if is_aperiodic_witness(g, &x, bound) {
            return Ok(BVerdict::Satisfied(Witness::Periodic(x)));
        }
    }
    unreachable!("winding the cycle in front eventually breaks periodicity")
}

/// Every vertex of `T(v)` emits at most one edge of each color, and the
/// colors present are the same everywhere. Then paths of a given degree are
/// unique, every boundary path `x` at `v` has the same degree, and a cycle
/// `c` at `v` gives `cx = x`.
fn forced_cycle(g: &KGraph, v: VertexId) -> Option<Vec<EdgeId>> {
    let reach = reachable(g, [v]);
    let colors = |u: VertexId| -> Vec<bool> { (0..g.k()).map(|i| !g.is_source_in(u, i)).collect() };
    let pattern = colors(v);
    let forced = reach
        .iter()
        .all(|&u| colors(u) == pattern && (0..g.k()).all(|i| g.edges_from(u, i).len() <= 1));
    if forced {
        shortest_cycle(g, v)
    } else {
        None
    }
}

fn finite_witness(g: &KGraph, v: VertexId) -> Option<Path> {
    let absolute_source = |u: VertexId| out_degree(g, u) == 0;
    let word = bfs_walk(g, v, absolute_source)?;
    let p = walk_path(g, v, &word);
    if g.is_finite_boundary(&p) {
        return Some(p);
    }
    // only reachable without local convexity
    if !g.reaches_cycle(v) {
        return g.finite_boundary_paths(v).ok()?.into_iter().next();
    }
    None
}

/// Paths from `v` grouped by total length `0..=max_len`.
fn paths_by_length(g: &KGraph, v: VertexId, max_len: u32) -> Vec<Vec<Path>> {
    let k = g.k();
    (0..=max_len)
        .map(|t| {
            compositions(k, t)
                .into_iter()
                .flat_map(|n| g.paths_of_degree(v, &Degree::from_vec(n)))
                .collect()
        })
        .collect()
}

fn compositions(k: usize, t: u32) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![vec![t]];
    }
    (0..=t)
        .flat_map(|first| {
            compositions(k - 1, t - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

struct Search<'g> {
    g: &'g KGraph,
    reach: HashMap<VertexId, BTreeSet<VertexId>>,
    closed: HashMap<VertexId, Vec<Vec<Path>>>,
}

impl<'g> Search<'g> {
    fn new(g: &'g KGraph) -> Self {
        Search { g, reach: HashMap::new(), closed: HashMap::new() }
    }

    fn reach(&mut self, u: VertexId) -> &BTreeSet<VertexId> {
        let g = self.g;
        self.reach.entry(u).or_insert_with(|| reachable(g, [u]))
    }

    /// Cycles at `w` by total length.
    fn cycles(&mut self, w: VertexId, max_len: u32) -> &Vec<Vec<Path>> {
        let g = self.g;
        self.closed.entry(w).or_insert_with(|| {
            paths_by_length(g, w, max_len)
                .into_iter()
                .map(|ps| ps.into_iter().filter(|p| p.source() == w && !p.is_vertex()).collect())
                .collect()
        })
    }

    /// `x` is a boundary path when each finite coordinate `i` has every vertex
    /// reachable from `x(d_i e_i)` a source in color `i`.
    fn certified_boundary(&mut self, x: &UPPath) -> bool {
        let g = self.g;
        let k = g.k();
        for (i, fin) in x.degree().into_iter().enumerate() {
            let Some(di) = fin else { continue };
            let mut n = Degree::zero(k);
            if di > 0 {
                n = Degree::unit(k, i).scale(di);
            }
            let u = match x.initial(g, &n) {
                Ok(p) => p.source(),
                Err(_) => return false,
            };
            if !self.reach(u).iter().all(|&w| g.is_source_in(w, i)) {
                return false;
            }
        }
        true
    }

    fn periodic_witness(&mut self, v: VertexId, depth: u32, shift_test: bool) -> Option<UPPath> {
        let g = self.g;
        let prefixes = paths_by_length(g, v, depth.saturating_sub(1));
        let mut tried = HashSet::new();
        for total in 1..=depth {
            for (plen, group) in prefixes.iter().enumerate().take(total as usize) {
                let clen = total as usize - plen;
                for p in group {
                    let cycles = self.cycles(p.source(), depth)[clen].clone();
                    for c in cycles {
                        if tried.len() >= CANDIDATE_CAP {
                            return None;
                        }
                        let Ok(x) = UPPath::new(g, p.clone(), c) else { continue };
                        if !tried.insert(x.clone()) || !self.certified_boundary(&x) {
                            continue;
                        }
                        if !shift_test || aperiodic_within(g, &x, &pumping_bound(&x)) {
                            return Some(x);
                        }
                    }
                }
            }
        }
        None
    }
}

/// Per-vertex report for a whole graph.
#[derive(Clone, Debug)]
pub struct GraphBReport {
    pub verdicts: Vec<(VertexId, BVerdict)>,
    pub aggregate: BStatus,
}

impl GraphBReport {
    pub fn verdict(&self, v: VertexId) -> Option<&BVerdict> {
        self.verdicts.iter().find(|(u, _)| *u == v).map(|(_, b)| b)
    }

    fn from_verdicts(verdicts: Vec<(VertexId, BVerdict)>) -> Self {
        let statuses: Vec<BStatus> = verdicts.iter().map(|(_, b)| b.status()).collect();
        let aggregate = if statuses.contains(&BStatus::Violated) {
            BStatus::Violated
        } else if statuses.iter().all(|s| *s == BStatus::Satisfied) {
            BStatus::Satisfied
        } else {
            BStatus::Unknown
        };
        GraphBReport { verdicts, aggregate }
    }

    /// `a: satisfied; b: VIOLATED (exit-less cycle f)`
    pub fn summary(&self, g: &KGraph) -> String {
        self.verdicts
            .iter()
            .map(|(v, b)| format!("{}: {}", g.vertex_name(*v), b.summary()))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Verdicts for `targets`, which must be closed under reachability.
fn resolve(g: &KGraph, targets: &[VertexId], depth: u32, mode: Mode) -> HashMap<VertexId, BVerdict> {
    if g.k() == 1 {
        return par::map(mode, targets, |&v| (v, check_vertex_b_1graph(g, v).expect("k = 1")))
            .into_iter()
            .collect();
    }
    // cheap verdicts first: forced violations, finite witnesses, and any
    // boundary path at a vertex on no cycle
    let cheap = par::map(mode, targets, |&v| {
        if let Some(c) = forced_cycle(g, v) {
            return (v, Some(BVerdict::Violated(format!("forced periodic path, cycle {}", edge_names(g, &c)))));
        }
        if let Some(p) = finite_witness(g, v) {
            return (v, Some(BVerdict::Satisfied(Witness::Finite(p))));
        }
        if !on_cycle(g, v) {
            if let Some(x) = Search::new(g).periodic_witness(v, depth, false) {
                return (v, Some(BVerdict::Satisfied(Witness::Periodic(x))));
            }
        }
        (v, None)
    });
    let mut out: HashMap<VertexId, BVerdict> = cheap.into_iter().filter_map(|(v, b)| Some((v, b?))).collect();
    propagate(g, targets, &mut out);
    let open: Vec<VertexId> = targets.iter().copied().filter(|v| !out.contains_key(v)).collect();
    let found = par::map(mode, &open, |&v| (v, Search::new(g).periodic_witness(v, depth, true)));
    for (v, x) in found {
        if let Some(x) = x {
            out.insert(v, BVerdict::Satisfied(Witness::Periodic(x)));
        }
    }
    propagate(g, targets, &mut out);
    for &v in targets {
        out.entry(v).or_insert(BVerdict::Unknown { depth });
    }
    out
}

/// A vertex that reaches a satisfied vertex `w` along `λ` is satisfied by
/// `λx_w`.
fn propagate(g: &KGraph, targets: &[VertexId], out: &mut HashMap<VertexId, BVerdict>) {
    for &v in targets {
        if out.contains_key(&v) {
            continue;
        }
        let satisfied = |u: VertexId| matches!(out.get(&u), Some(BVerdict::Satisfied(_)));
        if let Some(word) = bfs_walk(g, v, satisfied) {
            let w = if word.is_empty() { v } else { g.edge(*word.last().unwrap()).source };
            let BVerdict::Satisfied(x) = &out[&w] else { unreachable!() };
            let x = x.behind(g, &walk_path(g, v, &word));
            out.insert(v, BVerdict::Satisfied(x));
        }
    }
}

/// Condition (B) at one vertex; exact for `k = 1`, a bounded semidecision
/// otherwise.
pub fn check_vertex_b(g: &KGraph, v: VertexId, depth: u32) -> BVerdict {
    let targets: Vec<VertexId> = reachable(g, [v]).into_iter().collect();
    resolve(g, &targets, depth, Mode::default()).remove(&v).unwrap()
}

pub fn check_graph_b(g: &KGraph, depth: u32) -> GraphBReport {
    check_graph_b_with(g, depth, Mode::default())
}

pub fn check_graph_b_with(g: &KGraph, depth: u32, mode: Mode) -> GraphBReport {
    let targets: Vec<VertexId> = g.vertices().collect();
    let mut map = resolve(g, &targets, depth, mode);
    GraphBReport::from_verdicts(targets.into_iter().map(|v| (v, map.remove(&v).unwrap())).collect())
}

/// Condition (B) on `Λ∖H` for a regular `H` of a graph satisfying (B).
#[derive(Clone, Debug)]
pub struct Theorem5Check {
    pub quotient: KGraph,
    pub report: GraphBReport,
    /// Quotient vertices found violating (B).
    pub violations: Vec<String>,
    pub unknown: Vec<String>,
}

pub fn theorem5_check(g: &KGraph, h: &VertexSet, depth: u32) -> Result<Theorem5Check, BError> {
    if check_graph_b(g, depth).aggregate != BStatus::Satisfied {
        return Err(BError::PreconditionFailed("the graph is not verified to satisfy Condition (B)".into()));
    }
    if !is_regular(g, h)? {
        return Err(BError::PreconditionFailed(format!("{} is not regular", h.display(g))));
    }
    let quotient = quotient_graph(g, h)?;
    let report = check_graph_b(&quotient, depth);
    let named = |s: BStatus| -> Vec<String> {
        report
            .verdicts
            .iter()
            .filter(|(_, b)| b.status() == s)
            .map(|(v, _)| quotient.vertex_name(*v).to_owned())
            .collect()
    };
    let violations = named(BStatus::Violated);
    let unknown = named(BStatus::Unknown);
    Ok(Theorem5Check { quotient, report, violations, unknown })
}
