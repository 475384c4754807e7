//! Finite k-graphs presented as a k-colored skeleton plus commuting squares.
//!
//! A path runs from its range to its source: `λμ` is defined when
//! `r(μ) = s(λ)`. An edge `e` therefore leaves the vertex `r(e)` and arrives at
//! `s(e)`. The factorization property is encoded by a table of squares
//! `f·g = g'·f'` for every two-colored path; for `k >= 3` the table must also
//! satisfy the cube condition so that square moves give a well-defined normal
//! form on longer paths.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::degree::Degree;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EdgeId(pub usize);

/// An edge record as it appears in a skeleton. Colors are 1-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeSpec {
    pub id: String,
    pub range: String,
    pub source: String,
    pub color: usize,
}

/// Vertices and colored edges of a k-graph, before square data is attached.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Skeleton {
    pub k: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

/// One commuting square `f·g = gp·fp`, where `f` and `fp` share a color, as do
/// `g` and `gp`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SquareSpec {
    pub f: String,
    pub g: String,
    pub gp: String,
    pub fp: String,
}

impl SquareSpec {
    pub fn new(f: &str, g: &str, gp: &str, fp: &str) -> Self {
        SquareSpec {
            f: f.to_owned(),
            g: g.to_owned(),
            gp: gp.to_owned(),
            fp: fp.to_owned(),
        }
    }
}

impl fmt::Display for SquareSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{} = {}.{}", self.f, self.g, self.gp, self.fp)
    }
}

/// The factorization data: one entry per commuting square, in either
/// orientation.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FactorizationTable {
    pub squares: Vec<SquareSpec>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("k must be at least 1")]
    ZeroRank,
    #[error("duplicate {kind} identifier `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("unknown {kind} `{id}`")]
    BadReference { kind: &'static str, id: String },
    #[error("edge `{edge}` has color {color}, expected a color in 1..={k}")]
    BadColor { edge: String, color: usize, k: usize },
    #[error("square {square} is malformed: {reason}")]
    MalformedSquare { square: String, reason: String },
    #[error("composable pair {first}.{second} has no commuting square")]
    MissingSquare { first: String, second: String },
    #[error("square data is not a bijection at {first}.{second}")]
    NonBijective { first: String, second: String },
    #[error("cube condition fails on {path}")]
    CubeViolation { path: String },
    #[error("rank mismatch: {left} vs {right}")]
    KMismatch { left: usize, right: usize },
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub name: String,
    pub range: VertexId,
    pub source: VertexId,
    /// Zero-based color.
    pub color: usize,
}

/// A validated finite k-graph. Immutable after construction.
#[derive(Clone, Debug)]
pub struct KGraph {
    k: usize,
    vertex_names: Vec<String>,
    vertex_index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, EdgeId>,
    /// Both orientations of every square: `(a, b) -> (b', a')` with
    /// `ab = b'a'`, colors of `a, a'` equal, colors of `b, b'` equal.
    swap: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    /// `out[v][c]`: edges of color `c` with range `v`, sorted.
    out: Vec<Vec<Vec<EdgeId>>>,
    /// `into[v]`: edges with source `v`, sorted.
    into: Vec<Vec<EdgeId>>,
}

/// Validate a skeleton and square table, producing a [`KGraph`].
pub fn build_kgraph(skeleton: Skeleton, squares: FactorizationTable) -> Result<KGraph, GraphError> {
    if skeleton.k == 0 {
        return Err(GraphError::ZeroRank);
    }
    let k = skeleton.k;

    let mut vertex_names = skeleton.vertices;
    vertex_names.sort();
    for pair in vertex_names.windows(2) {
        if pair[0] == pair[1] {
            return Err(GraphError::DuplicateId {
                kind: "vertex",
                id: pair[0].clone(),
            });
        }
    }
    let vertex_index: HashMap<String, VertexId> = vertex_names
        .iter()
        .enumerate()
        .map(|(i, name)| (name.clone(), VertexId(i)))
        .collect();

    let mut specs = skeleton.edges;
    specs.sort_by(|a, b| a.id.cmp(&b.id));
    let mut edges = Vec::with_capacity(specs.len());
    for (i, spec) in specs.iter().enumerate() {
        if i > 0 && specs[i - 1].id == spec.id {
            return Err(GraphError::DuplicateId {
                kind: "edge",
                id: spec.id.clone(),
            });
        }
        let lookup = |name: &str| {
            vertex_index
                .get(name)
                .copied()
                .ok_or_else(|| GraphError::BadReference {
                    kind: "vertex",
                    id: name.to_owned(),
                })
        };
        if spec.color == 0 || spec.color > k {
            return Err(GraphError::BadColor {
                edge: spec.id.clone(),
                color: spec.color,
                k,
            });
        }
        edges.push(Edge {
            name: spec.id.clone(),
            range: lookup(&spec.range)?,
            source: lookup(&spec.source)?,
            color: spec.color - 1,
        });
    }
    let edge_index: HashMap<String, EdgeId> = edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.name.clone(), EdgeId(i)))
        .collect();

    let mut out = vec![vec![Vec::new(); k]; vertex_names.len()];
    let mut into = vec![Vec::new(); vertex_names.len()];
    for (i, e) in edges.iter().enumerate() {
        out[e.range.0][e.color].push(EdgeId(i));
        into[e.source.0].push(EdgeId(i));
    }

    let mut graph = KGraph {
        k,
        vertex_names,
        vertex_index,
        edges,
        edge_index,
        swap: HashMap::new(),
        out,
        into,
    };
    for sq in &squares.squares {
        graph.insert_square(sq)?;
    }
    graph.check_totality()?;
    if k >= 3 {
        graph.check_cubes()?;
    }
    Ok(graph)
}

impl KGraph {
    fn insert_square(&mut self, sq: &SquareSpec) -> Result<(), GraphError> {
        let id = |name: &str| {
            self.edge_index
                .get(name)
                .copied()
                .ok_or_else(|| GraphError::BadReference {
                    kind: "edge",
                    id: name.to_owned(),
                })
        };
        let (f, g, gp, fp) = (id(&sq.f)?, id(&sq.g)?, id(&sq.gp)?, id(&sq.fp)?);
        let malformed = |reason: &str| GraphError::MalformedSquare {
            square: sq.to_string(),
            reason: reason.to_owned(),
        };
        let (ef, eg, egp, efp) = (self.edge(f), self.edge(g), self.edge(gp), self.edge(fp));
        if ef.color != efp.color || eg.color != egp.color {
            return Err(malformed("opposite sides must share a color"));
        }
        if ef.color == eg.color {
            return Err(malformed("a square needs two distinct colors"));
        }
        if ef.source != eg.range || egp.source != efp.range {
            return Err(malformed("sides are not composable"));
        }
        if ef.range != egp.range || eg.source != efp.source {
            return Err(malformed("range and source are not preserved"));
        }
        for (from, to) in [((f, g), (gp, fp)), ((gp, fp), (f, g))] {
            match self.swap.get(&from) {
                Some(existing) if *existing != to => {
                    return Err(GraphError::NonBijective {
                        first: self.edge(from.0).name.clone(),
                        second: self.edge(from.1).name.clone(),
                    })
                }
                _ => {}
            }
        }
        self.swap.insert((f, g), (gp, fp));
        self.swap.insert((gp, fp), (f, g));
        Ok(())
    }

    fn check_totality(&self) -> Result<(), GraphError> {
        for (i, a) in self.edges.iter().enumerate() {
            for c in (0..self.k).filter(|&c| c != a.color) {
                for &b in &self.out[a.source.0][c] {
                    if !self.swap.contains_key(&(EdgeId(i), b)) {
                        return Err(GraphError::MissingSquare {
                            first: a.name.clone(),
                            second: self.edge(b).name.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_cubes(&self) -> Result<(), GraphError> {
        for (i, ea) in self.edges.iter().enumerate() {
            let a = EdgeId(i);
            for cb in ea.color + 1..self.k {
                for &b in &self.out[ea.source.0][cb] {
                    let eb = self.edge(b);
                    for cc in cb + 1..self.k {
                        for &c in &self.out[eb.source.0][cc] {
                            // abc -> b1 a1 c -> b1 c1 a2 -> c2 b2 a2
                            let (b1, a1) = self.swap[&(a, b)];
                            let (c1, a2) = self.swap[&(a1, c)];
                            let (c2, b2) = self.swap[&(b1, c1)];
                            // abc -> a c1' b1' -> c2' a1' b1' -> c2' b2' a2'
                            let (c1q, b1q) = self.swap[&(b, c)];
                            let (c2q, a1q) = self.swap[&(a, c1q)];
                            let (b2q, a2q) = self.swap[&(a1q, b1q)];
                            if (c2, b2, a2) != (c2q, b2q, a2q) {
                                return Err(GraphError::CubeViolation {
                                    path: format!(
                                        "{}.{}.{}",
                                        ea.name,
                                        eb.name,
                                        self.edge(c).name
                                    ),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    /// Edges of zero-based color `color` leaving `v`, i.e. `vΛ^{e_color}`.
    pub fn edges_from(&self, v: VertexId, color: usize) -> &[EdgeId] {
        &self.out[v.0][color]
    }

    /// All edges with range `v`, over every color.
    pub fn all_edges_from(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.out[v.0].iter().flatten().copied()
    }

    /// Edges whose source is `v`.
    pub fn edges_into(&self, v: VertexId) -> &[EdgeId] {
        &self.into[v.0]
    }

    /// Apply the commuting square to the two-colored path `ab`.
    pub fn swap(&self, a: EdgeId, b: EdgeId) -> Option<(EdgeId, EdgeId)> {
        self.swap.get(&(a, b)).copied()
    }

    pub fn edge_degree(&self, e: EdgeId) -> Degree {
        Degree::unit(self.k, self.edge(e).color)
    }

    /// `v` has no edges of color `c`, so `vΛ^{≤e_c} = {v}`.
    pub fn is_source_in(&self, v: VertexId, color: usize) -> bool {
        self.out[v.0][color].is_empty()
    }

    pub fn skeleton(&self) -> Skeleton {
        Skeleton {
            k: self.k,
            vertices: self.vertex_names.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    id: e.name.clone(),
                    range: self.vertex_name(e.range).to_owned(),
                    source: self.vertex_name(e.source).to_owned(),
                    color: e.color + 1,
                })
                .collect(),
        }
    }

    /// Each square once, oriented so that `f` has the smaller color, sorted.
    pub fn squares(&self) -> FactorizationTable {
        let mut squares: Vec<SquareSpec> = self
            .swap
            .iter()
            .filter(|((a, b), _)| self.edge(*a).color < self.edge(*b).color)
            .map(|((f, g), (gp, fp))| {
                SquareSpec::new(
                    &self.edge(*f).name,
                    &self.edge(*g).name,
                    &self.edge(*gp).name,
                    &self.edge(*fp).name,
                )
            })
            .collect();
        squares.sort();
        FactorizationTable { squares }
    }

    pub fn square_count(&self) -> usize {
        self.swap.len() / 2
    }

    /// Rebuild on a subset of vertices, keeping edges with both endpoints
    /// inside and every square whose four edges all survive.
    pub(crate) fn induced(&self, keep: impl Fn(VertexId) -> bool) -> Result<KGraph, GraphError> {
        let mut skel = self.skeleton();
        skel.vertices.retain(|name| keep(self.vertex_id(name).unwrap()));
        let kept_edge = |e: &Edge| keep(e.range) && keep(e.source);
        skel.edges
            .retain(|spec| kept_edge(self.edge(self.edge_id(&spec.id).unwrap())));
        let mut table = self.squares();
        table.squares.retain(|sq| {
            [&sq.f, &sq.g, &sq.gp, &sq.fp]
                .iter()
                .all(|name| kept_edge(self.edge(self.edge_id(name).unwrap())))
        });
        build_kgraph(skel, table)
    }
}

/// One failure of local convexity: `vertex` has an edge `edge` of color
/// `first` and some edge of color `second`, but `s(edge)` has no edge of color
/// `second`. Colors are 1-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConvexityWitness {
    pub vertex: String,
    pub first: usize,
    pub second: usize,
    pub edge: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ConvexityReport {
    pub violations: Vec<ConvexityWitness>,
}

impl ConvexityReport {
    pub fn is_convex(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_local_convexity(g: &KGraph) -> ConvexityReport {
    let mut violations = Vec::new();
    for v in g.vertices() {
        for i in 0..g.k() {
            for j in (0..g.k()).filter(|&j| j != i) {
                if g.edges_from(v, j).is_empty() {
                    continue;
                }
                for &e in g.edges_from(v, i) {
                    if g.is_source_in(g.edge(e).source, j) {
                        violations.push(ConvexityWitness {
                            vertex: g.vertex_name(v).to_owned(),
                            first: i + 1,
                            second: j + 1,
                            edge: g.edge(e).name.clone(),
                        });
                    }
                }
            }
        }
    }
    ConvexityReport { violations }
}

fn omega_vertex_name(p: &[u32]) -> String {
    let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("v{}", coords.join("_"))
}

fn omega_edge_name(color: usize, p: &[u32]) -> String {
    let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("e{}_{}", color + 1, coords.join("_"))
}

/// The k-graph `Ω_{k,m}` with vertices `{p : p <= m}` and one morphism
/// `(p, q)` for each `p <= q <= m`.
///
/// Vertex `p` is named `v<p_1>_<p_2>...`; the edge `(p, p + e_i)` is named
/// `e<i>_<p_1>_<p_2>...` with `i` 1-based.
pub fn omega_graph(k: usize, m: &Degree) -> KGraph {
    assert_eq!(m.k(), k, "degree length must equal k");
    let points = m.box_below();
    let mut skel = Skeleton {
        k,
        vertices: points.iter().map(|p| omega_vertex_name(p.coords())).collect(),
        edges: Vec::new(),
    };
    let step = |p: &Degree, i: usize| -> Option<Degree> {
        let q = p + &Degree::unit(k, i);
        q.le(m).then_some(q)
    };
    for p in &points {
        for i in 0..k {
            if let Some(q) = step(p, i) {
                skel.edges.push(EdgeSpec {
                    id: omega_edge_name(i, p.coords()),
                    range: omega_vertex_name(p.coords()),
                    source: omega_vertex_name(q.coords()),
                    color: i + 1,
                });
            }
        }
    }
    let mut table = FactorizationTable::default();
    for p in &points {
        for i in 0..k {
            for j in i + 1..k {
                let (Some(pi), Some(pj)) = (step(p, i), step(p, j)) else {
                    continue;
                };
                if step(&pi, j).is_none() {
                    continue;
                }
                table.squares.push(SquareSpec::new(
                    &omega_edge_name(i, p.coords()),
                    &omega_edge_name(j, pi.coords()),
                    &omega_edge_name(j, p.coords()),
                    &omega_edge_name(i, pj.coords()),
                ));
            }
        }
    }
    build_kgraph(skel, table).expect("omega graphs are valid by construction")
}

/// Disjoint union; identifiers from `a` get the prefix `l:` and those from `b`
/// the prefix `r:`.
pub fn disjoint_union(a: &KGraph, b: &KGraph) -> Result<KGraph, GraphError> {
    if a.k() != b.k() {
        return Err(GraphError::KMismatch {
            left: a.k(),
            right: b.k(),
        });
    }
    let mut skel = Skeleton {
        k: a.k(),
        ..Default::default()
    };
    let mut table = FactorizationTable::default();
    for (g, prefix) in [(a, "l:"), (b, "r:")] {
        let p = |s: &str| format!("{prefix}{s}");
        let part = g.skeleton();
        skel.vertices.extend(part.vertices.iter().map(|v| p(v)));
        skel.edges.extend(part.edges.iter().map(|e| EdgeSpec {
            id: p(&e.id),
            range: p(&e.range),
            source: p(&e.source),
            color: e.color,
        }));
        table.squares.extend(
            g.squares()
                .squares
                .iter()
                .map(|sq| SquareSpec::new(&p(&sq.f), &p(&sq.g), &p(&sq.gp), &p(&sq.fp))),
        );
    }
    build_kgraph(skel, table)
}

/// Cartesian product `a × b` as a `(k_a + k_b)`-graph.
///
/// The vertex `(x, y)` is named `x:y`. A color-`i` edge `e` of `a` at `y`
/// becomes `e/y`; a color-`j` edge `f` of `b` at `x` becomes `x+f` with color
/// `k_a + j`.
pub fn cartesian_product(a: &KGraph, b: &KGraph) -> Result<KGraph, GraphError> {
    let ka = a.k();
    let vname = |x: VertexId, y: VertexId| format!("{}:{}", a.vertex_name(x), b.vertex_name(y));
    let aname = |e: EdgeId, y: VertexId| format!("{}/{}", a.edge(e).name, b.vertex_name(y));
    let bname = |x: VertexId, f: EdgeId| format!("{}+{}", a.vertex_name(x), b.edge(f).name);

    let mut skel = Skeleton {
        k: ka + b.k(),
        ..Default::default()
    };
    for x in a.vertices() {
        for y in b.vertices() {
            skel.vertices.push(vname(x, y));
        }
    }
    for e in a.edge_ids() {
        let ed = a.edge(e);
        for y in b.vertices() {
            skel.edges.push(EdgeSpec {
                id: aname(e, y),
                range: vname(ed.range, y),
                source: vname(ed.source, y),
                color: ed.color + 1,
            });
        }
    }
    for f in b.edge_ids() {
        let fd = b.edge(f);
        for x in a.vertices() {
            skel.edges.push(EdgeSpec {
                id: bname(x, f),
                range: vname(x, fd.range),
                source: vname(x, fd.source),
                color: ka + fd.color + 1,
            });
        }
    }

    let mut table = FactorizationTable::default();
    for sq in a.squares().squares {
        for y in b.vertices() {
            let n = |s: &str| aname(a.edge_id(s).unwrap(), y);
            table.squares.push(SquareSpec::new(&n(&sq.f), &n(&sq.g), &n(&sq.gp), &n(&sq.fp)));
        }
    }
    for sq in b.squares().squares {
        for x in a.vertices() {
            let n = |s: &str| bname(x, b.edge_id(s).unwrap());
            table.squares.push(SquareSpec::new(&n(&sq.f), &n(&sq.g), &n(&sq.gp), &n(&sq.fp)));
        }
    }
    // (e at r(f)) then (f at s(e))  =  (f at r(e)) then (e at s(f))
    for e in a.edge_ids() {
        let ed = a.edge(e);
        for f in b.edge_ids() {
            let fd = b.edge(f);
            table.squares.push(SquareSpec::new(
                &aname(e, fd.range),
                &bname(ed.source, f),
                &bname(ed.range, f),
                &aname(e, fd.source),
            ));
        }
    }
    build_kgraph(skel, table)
}

/// Names of the vertices reachable along edges from any vertex in `start`.
pub(crate) fn reachable(g: &KGraph, start: impl IntoIterator<Item = VertexId>) -> BTreeSet<VertexId> {
    let mut seen = BTreeSet::new();
    let mut stack: Vec<VertexId> = start.into_iter().collect();
    while let Some(v) = stack.pop() {
        if seen.insert(v) {
            stack.extend(g.all_edges_from(v).map(|e| g.edge(e).source));
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1_skeleton() -> Skeleton {
        Skeleton {
            k: 1,
            vertices: vec!["a".into(), "b".into()],
            edges: vec![
                EdgeSpec { id: "g".into(), range: "a".into(), source: "a".into(), color: 1 },
                EdgeSpec { id: "e".into(), range: "a".into(), source: "b".into(), color: 1 },
                EdgeSpec { id: "f".into(), range: "b".into(), source: "b".into(), color: 1 },
            ],
        }
    }

    #[test]
    fn one_graph_needs_no_squares() {
        let g = build_kgraph(g1_skeleton(), FactorizationTable::default()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.square_count()), (2, 3, 0));
        assert!(check_local_convexity(&g).is_convex());
    }

    #[test]
    fn omega_square_present_and_required() {
        let omega = omega_graph(2, &Degree::uniform(2, 1));
        assert_eq!((omega.vertex_count(), omega.edge_count(), omega.square_count()), (4, 4, 1));
        assert!(check_local_convexity(&omega).is_convex());
        let err = build_kgraph(omega.skeleton(), FactorizationTable::default()).unwrap_err();
        assert!(matches!(err, GraphError::MissingSquare { .. }));
    }

    #[test]
    fn conflicting_squares_are_not_bijective() {
        // one vertex, two color-1 loops, two color-2 loops
        let skel = Skeleton {
            k: 2,
            vertices: vec!["v".into()],
            edges: ["x", "y", "z", "w"]
                .iter()
                .enumerate()
                .map(|(i, id)| EdgeSpec {
                    id: (*id).into(),
                    range: "v".into(),
                    source: "v".into(),
                    color: 1 + i / 2,
                })
                .collect(),
        };
        let sq = |f, g, gp, fp| SquareSpec::new(f, g, gp, fp);
        let good = FactorizationTable {
            squares: vec![
                sq("x", "z", "z", "x"),
                sq("x", "w", "w", "x"),
                sq("y", "z", "z", "y"),
                sq("y", "w", "w", "y"),
            ],
        };
        assert!(build_kgraph(skel.clone(), good.clone()).is_ok());
        let mut bad = good;
        bad.squares[1] = sq("x", "w", "z", "x");
        assert!(matches!(
            build_kgraph(skel, bad),
            Err(GraphError::NonBijective { .. })
        ));
    }

    #[test]
    fn malformed_and_dangling_squares() {
        let omega = omega_graph(2, &Degree::uniform(2, 1));
        let mut table = omega.squares();
        table.squares[0].gp = "nope".into();
        assert!(matches!(
            build_kgraph(omega.skeleton(), table),
            Err(GraphError::BadReference { kind: "edge", .. })
        ));
        let mut table = omega.squares();
        let sq = &mut table.squares[0];
        std::mem::swap(&mut sq.f, &mut sq.g);
        assert!(matches!(
            build_kgraph(omega.skeleton(), table),
            Err(GraphError::MalformedSquare { .. })
        ));
    }

    #[test]
    fn bad_skeletons_rejected() {
        let mut s = g1_skeleton();
        s.edges[0].color = 2;
        assert!(matches!(
            build_kgraph(s, FactorizationTable::default()),
            Err(GraphError::BadColor { .. })
        ));
        let mut s = g1_skeleton();
        s.edges[1].source = "c".into();
        assert!(matches!(
            build_kgraph(s, FactorizationTable::default()),
            Err(GraphError::BadReference { kind: "vertex", .. })
        ));
        let mut s = g1_skeleton();
        s.k = 0;
        assert_eq!(
            build_kgraph(s, FactorizationTable::default()).unwrap_err(),
            GraphError::ZeroRank
        );
    }

    #[test]
    fn omega_degenerate_and_line() {
        let point = omega_graph(2, &Degree::zero(2));
        assert_eq!((point.vertex_count(), point.edge_count()), (1, 0));
        let line = omega_graph(1, &Degree::from_vec(vec![2]));
        assert_eq!((line.vertex_count(), line.edge_count()), (3, 2));
    }

    #[test]
    fn non_convex_witness() {
        // v has a color-1 edge to u (no color-2 edges at u) and a color-2 loop
        // would need squares; use a color-2 edge to w instead.
        let skel = Skeleton {
            k: 2,
            vertices: vec!["v".into(), "u".into(), "w".into()],
            edges: vec![
                EdgeSpec { id: "a".into(), range: "v".into(), source: "u".into(), color: 1 },
                EdgeSpec { id: "b".into(), range: "v".into(), source: "w".into(), color: 2 },
            ],
        };
        let g = build_kgraph(skel, FactorizationTable::default()).unwrap();
        let report = check_local_convexity(&g);
        assert!(!report.is_convex());
        assert!(report.violations.contains(&ConvexityWitness {
            vertex: "v".into(),
            first: 1,
            second: 2,
            edge: "a".into(),
        }));
    }

    #[test]
    fn unions_and_products() {
        let omega = omega_graph(2, &Degree::uniform(2, 1));
        let u = disjoint_union(&omega, &omega).unwrap();
        assert_eq!(u.vertex_count(), 8);
        let line = omega_graph(1, &Degree::from_vec(vec![1]));
        assert!(matches!(disjoint_union(&line, &omega), Err(GraphError::KMismatch { .. })));
        let sq = cartesian_product(&line, &line).unwrap();
        assert_eq!((sq.k(), sq.vertex_count(), sq.edge_count(), sq.square_count()), (2, 4, 4, 1));
    }
}
