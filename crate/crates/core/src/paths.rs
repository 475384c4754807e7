//! Path arithmetic in a k-graph: canonical forms, composition, factorization,
//! enumeration of `vΛ^n` and `vΛ^{≤n}`, finite boundary paths, and ultimately
//! periodic boundary paths.
//!
//! Every morphism is stored in its color-sorted normal form: all color-1
//! edges first, then color-2, and so on. Two edge sequences related by square
//! moves have the same normal form, so morphism equality is structural
//! equality.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::degree::Degree;
use crate::kgraph::{EdgeId, KGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("paths are not composable: {0}")]
    NotComposable(String),
    #[error("invalid segments: {0}")]
    BadSegments(String),
    #[error("shift by {shift} exceeds a finite coordinate of {degree}")]
    ShiftBeyondEnd { shift: String, degree: String },
    #[error("a cycle is reachable from `{0}`; boundary paths from it are infinite")]
    CycleReachable(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("unknown edge or vertex `{0}`")]
    Unknown(String),
}

/// A morphism of a k-graph in color-sorted normal form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Path {
    range: VertexId,
    source: VertexId,
    edges: Vec<EdgeId>,
    degree: Degree,
}

impl Path {
    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }
}

impl KGraph {
    pub fn vertex_path(&self, v: VertexId) -> Path {
        Path {
            range: v,
            source: v,
            edges: Vec::new(),
            degree: Degree::zero(self.k()),
        }
    }

    pub fn edge_path(&self, e: EdgeId) -> Path {
        let edge = self.edge(e);
        Path {
            range: edge.range,
            source: edge.source,
            edges: vec![e],
            degree: self.edge_degree(e),
        }
    }

    /// Sort a composable edge word into color order by square moves.
    fn normalize(&self, word: &mut [EdgeId]) {
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..word.len().saturating_sub(1) {
                if self.edge(word[i]).color > self.edge(word[i + 1]).color {
                    let (a, b) = self
                        .swap(word[i], word[i + 1])
                        .expect("validated graphs have every square");
                    word[i] = a;
                    word[i + 1] = b;
                    changed = true;
                }
            }
        }
    }

    /// Rearrange a composable word so its color sequence equals `colors`.
    fn reorder(&self, word: &mut [EdgeId], colors: &[usize]) {
        debug_assert_eq!(word.len(), colors.len());
        for (p, &want) in colors.iter().enumerate() {
            let q = (p..word.len())
                .find(|&q| self.edge(word[q]).color == want)
                .expect("color multiset must match");
            for r in (p..q).rev() {
                let (a, b) = self
                    .swap(word[r], word[r + 1])
                    .expect("validated graphs have every square");
                word[r] = a;
                word[r + 1] = b;
            }
        }
    }

    fn degree_of_word(&self, word: &[EdgeId]) -> Degree {
        let mut d = vec![0; self.k()];
        for &e in word {
            d[self.edge(e).color] += 1;
        }
        Degree::from_vec(d)
    }

    /// Build a path from a composable edge word, in any color order.
    pub fn path_from_edges(&self, word: &[EdgeId]) -> Result<Path, PathError> {
        let Some((&first, _)) = word.split_first() else {
            return Err(PathError::BadSegments("empty edge word".into()));
        };
        for pair in word.windows(2) {
            if self.edge(pair[0]).source != self.edge(pair[1]).range {
                return Err(PathError::NotComposable(format!(
                    "{}.{}",
                    self.edge(pair[0]).name,
                    self.edge(pair[1]).name
                )));
            }
        }
        let mut edges = word.to_vec();
        self.normalize(&mut edges);
        Ok(Path {
            range: self.edge(first).range,
            source: self.edge(*word.last().unwrap()).source,
            degree: self.degree_of_word(&edges),
            edges,
        })
    }

    /// Parse a path literal: edge names joined by `.`, or a single vertex name.
    pub fn path_from_names(&self, literal: &str) -> Result<Path, PathError> {
        let parts: Vec<&str> = literal.split('.').map(str::trim).collect();
        if parts.len() == 1 {
            if let Some(v) = self.vertex_id(parts[0]) {
                return Ok(self.vertex_path(v));
            }
        }
        let word = parts
            .iter()
            .map(|p| self.edge_id(p).ok_or_else(|| PathError::Unknown((*p).to_owned())))
            .collect::<Result<Vec<_>, _>>()?;
        self.path_from_edges(&word).map_err(|err| match err {
            PathError::NotComposable(_) => PathError::NotComposable(literal.to_owned()),
            other => other,
        })
    }

    /// Edge names joined by `.`; a vertex path prints as its vertex name.
    pub fn path_name(&self, p: &Path) -> String {
        if p.is_vertex() {
            return self.vertex_name(p.range).to_owned();
        }
        p.edges
            .iter()
            .map(|&e| self.edge(e).name.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    /// `ab`, defined when `r(b) = s(a)`.
    pub fn compose(&self, a: &Path, b: &Path) -> Result<Path, PathError> {
        if a.source != b.range {
            return Err(PathError::NotComposable(format!(
                "s({}) = {} but r({}) = {}",
                self.path_name(a),
                self.vertex_name(a.source),
                self.path_name(b),
                self.vertex_name(b.range)
            )));
        }
        let mut edges = a.edges.clone();
        edges.extend_from_slice(&b.edges);
        self.normalize(&mut edges);
        Ok(Path {
            range: a.range,
            source: b.source,
            edges,
            degree: &a.degree + &b.degree,
        })
    }

    fn sorted_block(&self, d: &Degree) -> Vec<usize> {
        (0..self.k())
            .flat_map(|c| std::iter::repeat_n(c, d.get(c) as usize))
            .collect()
    }

    /// The unique factor `a(l, m)` of degree `m - l`.
    pub fn segment(&self, a: &Path, l: &Degree, m: &Degree) -> Result<Path, PathError> {
        let bad = || {
            PathError::BadSegments(format!(
                "need {l} <= {m} <= {} for {}",
                a.degree,
                self.path_name(a)
            ))
        };
        if !(l.le(m) && m.le(&a.degree)) {
            return Err(bad());
        }
        let mid = m.checked_sub(l).ok_or_else(bad)?;
        let rest = a.degree.checked_sub(m).ok_or_else(bad)?;
        if l.is_zero() && rest.is_zero() {
            return Ok(a.clone());
        }
        let mut colors = self.sorted_block(l);
        colors.extend(self.sorted_block(&mid));
        colors.extend(self.sorted_block(&rest));
        let mut word = a.edges.clone();
        self.reorder(&mut word, &colors);
        let start = l.total() as usize;
        let end = m.total() as usize;
        let vertex_at = |i: usize| {
            if i == 0 {
                a.range
            } else {
                self.edge(word[i - 1]).source
            }
        };
        if start == end {
            return Ok(self.vertex_path(vertex_at(start)));
        }
        // each block is already color-sorted
        Ok(Path {
            range: vertex_at(start),
            source: vertex_at(end),
            edges: word[start..end].to_vec(),
            degree: mid,
        })
    }

    /// `a = a(0,l) a(l,m) a(m,n)` with `n = d(a)`.
    pub fn factor(
        &self,
        a: &Path,
        l: &Degree,
        m: &Degree,
        n: &Degree,
    ) -> Result<(Path, Path, Path), PathError> {
        if n != &a.degree {
            return Err(PathError::BadSegments(format!(
                "{n} is not the degree {} of {}",
                a.degree,
                self.path_name(a)
            )));
        }
        let zero = Degree::zero(self.k());
        Ok((
            self.segment(a, &zero, l)?,
            self.segment(a, l, m)?,
            self.segment(a, m, n)?,
        ))
    }

    /// The vertex `a(p) = s(a(0, p))`.
    pub fn vertex_at(&self, a: &Path, p: &Degree) -> Result<VertexId, PathError> {
        Ok(self.segment(a, &Degree::zero(self.k()), p)?.source)
    }

    /// `vΛ^n`: every path of degree exactly `n` with range `v`.
    pub fn paths_of_degree(&self, v: VertexId, n: &Degree) -> Vec<Path> {
        let mut out = Vec::new();
        let mut word = Vec::new();
        self.walk_colors(v, n.coords(), 0, &mut word, &mut |g, word, end| {
            out.push(g.finish(v, end, word));
        }, true);
        out
    }

    /// Every path of degree `<= n` with range `v`.
    pub fn paths_upto(&self, v: VertexId, n: &Degree) -> Vec<Path> {
        let mut out = Vec::new();
        let mut word = Vec::new();
        self.walk_colors(v, n.coords(), 0, &mut word, &mut |g, word, end| {
            out.push(g.finish(v, end, word));
        }, false);
        out
    }

    fn finish(&self, range: VertexId, source: VertexId, word: &[EdgeId]) -> Path {
        Path {
            range,
            source,
            edges: word.to_vec(),
            degree: self.degree_of_word(word),
        }
    }

    /// Depth-first over color-sorted words; when `exact` only words using all
    /// of `bounds` are reported.
    fn walk_colors(
        &self,
        at: VertexId,
        bounds: &[u32],
        color: usize,
        word: &mut Vec<EdgeId>,
        emit: &mut dyn FnMut(&KGraph, &[EdgeId], VertexId),
        exact: bool,
    ) {
        if color == bounds.len() {
            emit(self, word, at);
            return;
        }
        self.walk_one_color(at, bounds, color, bounds[color], word, emit, exact);
    }

    #[allow(clippy::too_many_arguments)]
    fn walk_one_color(
        &self,
        at: VertexId,
        bounds: &[u32],
        color: usize,
        remaining: u32,
        word: &mut Vec<EdgeId>,
        emit: &mut dyn FnMut(&KGraph, &[EdgeId], VertexId),
        exact: bool,
    ) {
        if !exact || remaining == 0 {
            self.walk_colors(at, bounds, color + 1, word, emit, exact);
        }
        if remaining == 0 {
            return;
        }
        for &e in self.edges_from(at, color) {
            word.push(e);
            self.walk_one_color(self.edge(e).source, bounds, color, remaining - 1, word, emit, exact);
            word.pop();
        }
    }

    /// Membership in `Λ^{≤n}`: `d(λ) <= n` and `d(λ)_i < n_i` forces
    /// `s(λ)Λ^{e_i} = ∅`.
    pub fn is_in_leq(&self, p: &Path, n: &Degree) -> bool {
        p.degree.le(n)
            && (0..self.k()).all(|i| p.degree.get(i) == n.get(i) || self.is_source_in(p.source, i))
    }

    /// `vΛ^{≤n}`; never empty.
    pub fn paths_leq(&self, v: VertexId, n: &Degree) -> Vec<Path> {
        self.paths_upto(v, n)
            .into_iter()
            .filter(|p| self.is_in_leq(p, n))
            .collect()
    }

    /// A finite path is a boundary path when, viewed as a morphism
    /// `Ω_{k,d(λ)} → Λ`, every vertex on the face `p_i = d(λ)_i` is a source
    /// in color `i`.
    pub fn is_finite_boundary(&self, p: &Path) -> bool {
        for q in p.degree.box_below() {
            let on_face: Vec<usize> = (0..self.k()).filter(|&i| q.get(i) == p.degree.get(i)).collect();
            if on_face.is_empty() {
                continue;
            }
            let w = self.vertex_at(p, &q).expect("q <= d(p)");
            if on_face.iter().any(|&i| !self.is_source_in(w, i)) {
                return false;
            }
        }
        true
    }

    /// The vertices reachable from `v` carry no cycle.
    pub fn reaches_cycle(&self, v: VertexId) -> bool {
        // iterative three-color DFS over the skeleton
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        let mut mark = vec![Mark::New; self.vertex_count()];
        let mut stack: Vec<(VertexId, Vec<VertexId>)> = Vec::new();
        let successors =
            |u: VertexId| -> Vec<VertexId> { self.all_edges_from(u).map(|e| self.edge(e).source).collect() };
        mark[v.0] = Mark::Open;
        stack.push((v, successors(v)));
        while let Some((_, next)) = stack.last_mut() {
            match next.pop() {
                Some(w) => match mark[w.0] {
                    Mark::Open => return true,
                    Mark::Done => {}
                    Mark::New => {
                        mark[w.0] = Mark::Open;
                        let succ = successors(w);
                        stack.push((w, succ));
                    }
                },
                None => {
                    let (u, _) = stack.pop().unwrap();
                    mark[u.0] = Mark::Done;
                }
            }
        }
        false
    }

    /// All finite boundary paths with range `v`; requires that no cycle is
    /// reachable from `v`.
    pub fn finite_boundary_paths(&self, v: VertexId) -> Result<Vec<Path>, PathError> {
        if self.reaches_cycle(v) {
            return Err(PathError::CycleReachable(self.vertex_name(v).to_owned()));
        }
        let reach = crate::kgraph::reachable(self, [v]).len() as u32;
        let bound = Degree::uniform(self.k(), reach.saturating_sub(1));
        Ok(self
            .paths_upto(v, &bound)
            .into_iter()
            .filter(|p| self.is_finite_boundary(p))
            .collect())
    }

    /// `c^n` for a path with `r(c) = s(c)`.
    pub fn power(&self, c: &Path, n: u32) -> Path {
        let mut out = self.vertex_path(c.range);
        for _ in 0..n {
            out = self.compose(&out, c).expect("cycle composes with itself");
        }
        out
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "path{:?}", self.edges.iter().map(|e| e.0).collect::<Vec<_>>())
    }
}

/// The boundary path `prefix · cycle^∞`.
///
/// Only constructed through [`UPPath::new`], which canonicalizes the
/// representation: the cycle is reduced to its primitive root and any common
/// tail of prefix and cycle is rolled into the cycle. For `k = 1` equal
/// boundary paths therefore have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct UPPath {
    prefix: Path,
    cycle: Path,
}

impl UPPath {
    pub fn new(g: &KGraph, prefix: Path, cycle: Path) -> Result<UPPath, PathError> {
        if cycle.range != cycle.source || cycle.is_vertex() {
            return Err(PathError::NotACycle(g.path_name(&cycle)));
        }
        if prefix.source != cycle.range {
            return Err(PathError::NotComposable(format!(
                "{} then {}",
                g.path_name(&prefix),
                g.path_name(&cycle)
            )));
        }
        let mut x = UPPath { prefix, cycle };
        x.canonicalize(g);
        Ok(x)
    }

    pub fn prefix(&self) -> &Path {
        &self.prefix
    }

    pub fn cycle(&self) -> &Path {
        &self.cycle
    }

    pub fn range(&self) -> VertexId {
        self.prefix.range
    }

    /// `d_∞(x)`: `None` stands for an infinite coordinate.
    pub fn degree(&self) -> Vec<Option<u32>> {
        (0..self.prefix.degree.k())
            .map(|i| (self.cycle.degree.get(i) == 0).then(|| self.prefix.degree.get(i)))
            .collect()
    }

    /// Coordinates where `x` is infinite.
    pub fn infinite_coords(&self) -> Vec<usize> {
        (0..self.cycle.degree.k()).filter(|&i| self.cycle.degree.get(i) > 0).collect()
    }

    fn canonicalize(&mut self, g: &KGraph) {
        self.reduce_cycle(g);
        let k = g.k();
        loop {
            let mut rolled = false;
            for i in 0..k {
                if self.prefix.degree.get(i) == 0 || self.cycle.degree.get(i) == 0 {
                    continue;
                }
                let ei = Degree::unit(k, i);
                let pd = self.prefix.degree.checked_sub(&ei).unwrap();
                let cd = self.cycle.degree.checked_sub(&ei).unwrap();
                let ptail = g.segment(&self.prefix, &pd, &self.prefix.degree).unwrap();
                let ctail = g.segment(&self.cycle, &cd, &self.cycle.degree).unwrap();
                if ptail != ctail {
                    continue;
                }
                let zero = Degree::zero(k);
                let phead = g.segment(&self.prefix, &zero, &pd).unwrap();
                let chead = g.segment(&self.cycle, &zero, &cd).unwrap();
                self.prefix = phead;
                self.cycle = g.compose(&ctail, &chead).unwrap();
                rolled = true;
            }
            if !rolled {
                break;
            }
        }
    }

    /// Replace `c = r^t` by its root `r` for the largest such `t`.
    fn reduce_cycle(&mut self, g: &KGraph) {
        let d = &self.cycle.degree;
        let gcd = d.coords().iter().fold(0u32, |acc, &c| gcd(acc, c));
        for t in (2..=gcd).rev() {
            if gcd % t != 0 {
                continue;
            }
            let root_degree = Degree::from_vec(d.coords().iter().map(|c| c / t).collect());
            let root = g.segment(&self.cycle, &Degree::zero(g.k()), &root_degree).unwrap();
            if root.source == root.range && g.power(&root, t) == self.cycle {
                self.cycle = root;
                return;
            }
        }
    }

    /// `x(0, n)`, for `n` within the degree of `x`.
    pub fn initial(&self, g: &KGraph, n: &Degree) -> Result<Path, PathError> {
        self.segment(g, &Degree::zero(g.k()), n)
    }

    /// `x(p, q)` for `p <= q <= d_∞(x)`.
    pub fn segment(&self, g: &KGraph, p: &Degree, q: &Degree) -> Result<Path, PathError> {
        let (long, _) = self.unroll_past(g, q)?;
        g.segment(&long, p, q)
    }

    /// `prefix · cycle^j` for the least `j` whose degree dominates `n`.
    fn unroll_past(&self, g: &KGraph, n: &Degree) -> Result<(Path, u32), PathError> {
        let mut j = 0u32;
        for (i, fin) in self.degree().into_iter().enumerate() {
            match fin {
                Some(limit) if n.get(i) > limit => {
                    return Err(PathError::ShiftBeyondEnd {
                        shift: n.to_string(),
                        degree: fmt_inf(&self.degree()),
                    })
                }
                Some(_) => {}
                None => {
                    let need = n.get(i).saturating_sub(self.prefix.degree.get(i));
                    let step = self.cycle.degree.get(i);
                    j = j.max(need.div_ceil(step));
                }
            }
        }
        let long = g.compose(&self.prefix, &g.power(&self.cycle, j)).unwrap();
        Ok((long, j))
    }

    /// `σ^p(x) = x(p, ∞)`.
    pub fn shift(&self, g: &KGraph, p: &Degree) -> Result<UPPath, PathError> {
        let (long, _) = self.unroll_past(g, p)?;
        let rest = g.segment(&long, p, &long.degree.clone())?;
        UPPath::new(g, rest, self.cycle.clone())
    }

    /// Whether two representations describe the same infinite path. The
    /// derived `==` compares representations; for `k = 1` the canonical form
    /// makes the two agree.
    ///
    /// With `M` past both prefixes and `a`, `b` the cycle degrees, the tails
    /// `σ^M` are `σ^a`- and `σ^b`-invariant, and agreement on
    /// `x(0, M + a + b)` forces equality.
    pub fn equivalent(&self, g: &KGraph, other: &UPPath) -> bool {
        if self.range() != other.range() || self.degree() != other.degree() {
            return false;
        }
        let n: Vec<u32> = self
            .degree()
            .iter()
            .enumerate()
            .map(|(i, fin)| match fin {
                Some(d) => *d,
                None => {
                    self.prefix.degree.get(i).max(other.prefix.degree.get(i))
                        + self.cycle.degree.get(i)
                        + other.cycle.degree.get(i)
                }
            })
            .collect();
        let n = Degree::from_vec(n);
        self.initial(g, &n).ok() == other.initial(g, &n).ok()
    }

    /// `a · x`.
    pub fn compose_with_boundary(g: &KGraph, a: &Path, x: &UPPath) -> Result<UPPath, PathError> {
        let prefix = g.compose(a, &x.prefix)?;
        UPPath::new(g, prefix, x.cycle.clone())
    }

    pub fn display(&self, g: &KGraph) -> String {
        if self.prefix.is_vertex() {
            format!("({})^inf", g.path_name(&self.cycle))
        } else {
            format!("{}.({})^inf", g.path_name(&self.prefix), g.path_name(&self.cycle))
        }
    }
}

fn fmt_inf(d: &[Option<u32>]) -> String {
    let parts: Vec<String> = d
        .iter()
        .map(|c| c.map_or_else(|| "inf".to_owned(), |v| v.to_string()))
        .collect();
    format!("({})", parts.join(","))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Distinct vertices of a path, in walk order of its normal form.
pub fn vertices_on(g: &KGraph, p: &Path) -> BTreeSet<VertexId> {
    let mut out = BTreeSet::from([p.range()]);
    out.extend(p.edges().iter().map(|&e| g.edge(e).source));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::kgraph::omega_graph;

    fn d(v: &[u32]) -> Degree {
        Degree::from_vec(v.to_vec())
    }

    #[test]
    fn compose_identity_and_mismatch() {
        let g = fixtures::g1();
        let e = g.path_from_names("e").unwrap();
        let a = g.vertex_path(g.vertex_id("a").unwrap());
        assert_eq!(g.compose(&a, &e).unwrap(), e);
        let f = g.path_from_names("f").unwrap();
        let gl = g.path_from_names("g").unwrap();
        assert!(matches!(g.compose(&f, &gl), Err(PathError::NotComposable(_))));
        assert!(matches!(g.path_from_names("f.e"), Err(PathError::NotComposable(_))));
    }

    #[test]
    fn omega_square_normal_form() {
        let omega = omega_graph(2, &d(&[1, 1]));
        let via_h = omega.path_from_names("e1_0_0.e2_1_0").unwrap();
        let via_v = omega.path_from_names("e2_0_0.e1_0_1").unwrap();
        assert_eq!(via_h, via_v);
        assert_eq!(via_h.degree(), &d(&[1, 1]));
        let (first, mid, last) = omega.factor(&via_h, &d(&[0, 0]), &d(&[1, 0]), &d(&[1, 1])).unwrap();
        assert!(first.is_vertex());
        assert_eq!(omega.path_name(&mid), "e1_0_0");
        assert_eq!(omega.path_name(&last), "e2_1_0");
        let (_, m2, l2) = omega.factor(&via_h, &d(&[0, 0]), &d(&[0, 1]), &d(&[1, 1])).unwrap();
        assert_eq!(omega.path_name(&m2), "e2_0_0");
        assert_eq!(omega.path_name(&l2), "e1_0_1");
        assert!(matches!(
            omega.factor(&via_h, &d(&[1, 0]), &d(&[0, 1]), &d(&[1, 1])),
            Err(PathError::BadSegments(_))
        ));
        assert!(matches!(
            omega.factor(&via_h, &d(&[0, 0]), &d(&[0, 0]), &d(&[1, 0])),
            Err(PathError::BadSegments(_))
        ));
    }

    #[test]
    fn trivial_factorization() {
        let g = fixtures::g1();
        let p = g.path_from_names("g.e.f").unwrap();
        let (a, b, c) = g.factor(&p, &d(&[0]), &d(&[0]), &d(&[3])).unwrap();
        assert!(a.is_vertex() && b.is_vertex() && a.range() == p.range());
        assert_eq!(c, p);
    }

    #[test]
    fn enumerations() {
        let omega = omega_graph(2, &d(&[1, 1]));
        let origin = omega.vertex_id("v0_0").unwrap();
        let top = omega.vertex_id("v1_1").unwrap();
        assert_eq!(omega.paths_of_degree(origin, &d(&[1, 1])).len(), 1);
        assert_eq!(omega.paths_of_degree(origin, &d(&[0, 0])), vec![omega.vertex_path(origin)]);
        let leq = omega.paths_leq(origin, &d(&[1, 1]));
        assert_eq!(leq.len(), 1);
        assert_eq!(leq[0].degree(), &d(&[1, 1]));
        assert_eq!(omega.paths_leq(top, &d(&[2, 1])), vec![omega.vertex_path(top)]);

        let g2 = fixtures::g2();
        let v = g2.vertex_id("v").unwrap();
        assert_eq!(g2.paths_of_degree(v, &d(&[2])).len(), 4);

        let g1 = fixtures::g1();
        let a = g1.vertex_id("a").unwrap();
        let names: Vec<String> = g1.paths_leq(a, &d(&[1])).iter().map(|p| g1.path_name(p)).collect();
        assert_eq!(names, vec!["e", "g"]);
    }

    #[test]
    fn finite_boundary() {
        let omega = omega_graph(2, &d(&[1, 1]));
        let origin = omega.vertex_id("v0_0").unwrap();
        let fb = omega.finite_boundary_paths(origin).unwrap();
        assert_eq!(fb.len(), 1);
        assert_eq!(fb[0].degree(), &d(&[1, 1]));
        let top = omega.vertex_id("v1_1").unwrap();
        assert_eq!(omega.finite_boundary_paths(top).unwrap(), vec![omega.vertex_path(top)]);
        let g2 = fixtures::g2();
        assert!(matches!(
            g2.finite_boundary_paths(g2.vertex_id("v").unwrap()),
            Err(PathError::CycleReachable(_))
        ));
    }

    #[test]
    fn up_paths_shift_and_compose() {
        let g = fixtures::g1();
        let b = g.vertex_path(g.vertex_id("b").unwrap());
        let f = g.path_from_names("f").unwrap();
        let e = g.path_from_names("e").unwrap();
        let f_inf = UPPath::new(&g, b.clone(), f.clone()).unwrap();
        assert_eq!(f_inf.shift(&g, &d(&[0])).unwrap(), f_inf);
        assert_eq!(f_inf.shift(&g, &d(&[1])).unwrap(), f_inf);
        let ef = UPPath::compose_with_boundary(&g, &e, &f_inf).unwrap();
        assert_eq!(ef.prefix(), &e);
        assert_eq!(ef.degree(), vec![None]);
        assert_eq!(ef.shift(&g, &d(&[1])).unwrap(), f_inf);
        assert_ne!(ef.shift(&g, &d(&[1])).unwrap(), ef);
        assert!(matches!(
            UPPath::compose_with_boundary(&g, &f, &UPPath::new(&g, g.vertex_path(g.vertex_id("a").unwrap()), g.path_from_names("g").unwrap()).unwrap()),
            Err(PathError::NotComposable(_))
        ));
        // id · x = x
        assert_eq!(UPPath::compose_with_boundary(&g, &b, &f_inf).unwrap(), f_inf);
    }

    #[test]
    fn up_path_canonical_form() {
        let g2 = fixtures::g2();
        let p = |s: &str| g2.path_from_names(s).unwrap();
        // x.(y.x)^inf = (x.y)^inf
        assert_eq!(
            UPPath::new(&g2, p("x"), p("y.x")).unwrap(),
            UPPath::new(&g2, p("v"), p("x.y")).unwrap()
        );
        // (x.x)^inf = x^inf
        assert_eq!(UPPath::new(&g2, p("v"), p("x.x")).unwrap().cycle(), &p("x"));
        // x.(y.x.x)^inf = (x.y.x)^inf
        assert_eq!(UPPath::new(&g2, p("x"), p("y.x.x")).unwrap().cycle(), &p("x.y.x"));
        let w = UPPath::new(&g2, p("x"), p("x.y")).unwrap();
        assert!(!w.prefix().is_vertex());
        assert_eq!(w.display(&g2), "x.(x.y)^inf");
        assert!(matches!(UPPath::new(&g2, p("v"), p("v")), Err(PathError::NotACycle(_))));
    }

    #[test]
    fn shift_beyond_finite_coordinate() {
        // torus-like: color-1 loop only in direction 1, prefix has color-2 part
        let line = omega_graph(1, &d(&[1]));
        let g2 = fixtures::g2();
        let prod = crate::kgraph::cartesian_product(&g2, &line).unwrap();
        let start = prod.vertex_id("v:v0").unwrap();
        let up = prod.path_from_names("v+e1_0").unwrap();
        let cyc = prod.path_from_names("x/v1").unwrap();
        let x = UPPath::new(&prod, up, cyc).unwrap();
        assert_eq!(x.range(), start);
        assert_eq!(x.degree(), vec![None, Some(1)]);
        assert!(x.shift(&prod, &d(&[3, 1])).is_ok());
        assert!(matches!(x.shift(&prod, &d(&[0, 2])), Err(PathError::ShiftBeyondEnd { .. })));
        let seg = x.initial(&prod, &d(&[2, 1])).unwrap();
        assert_eq!(seg.degree(), &d(&[2, 1]));
    }
}
