//! A faithful matrix representation of `KP_Q(Λ)` for graphs with no reachable
//! cycle, acting on the span of the finite boundary paths.
//!
//! `s_λ` sends `x` to `λx` when `r(x) = s(λ)`, `s_{λ*}` is its transpose, and
//! `p_v` keeps the `x` with `r(x) = v`.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use super::linalg::{rank, SparseMatrix};
use super::{Coeff, KPElement, KPError};
use crate::degree::Degree;
use crate::kgraph::{KGraph, VertexId};
use crate::lattice::VertexSet;
use crate::paths::Path;

pub struct RepOracle {
    g: KGraph,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    paths: Vec<Path>,
}

/// Requires that no vertex reaches a cycle; checks the Kumjian-Pask relations
/// on the constructed matrices.
pub fn build_rep_oracle(g: &KGraph) -> Result<RepOracle, KPError> {
    for v in g.vertices() {
        if g.reaches_cycle(v) {
            return Err(KPError::HasCycle(g.vertex_name(v).to_owned()));
        }
    }
    let mut basis = Vec::new();
    let mut paths = Vec::new();
    let bound = Degree::uniform(g.k(), g.vertex_count().saturating_sub(1) as u32);
    for v in g.vertices() {
        basis.extend(g.finite_boundary_paths(v).expect("acyclic"));
        paths.extend(g.paths_upto(v, &bound));
    }
    basis.sort();
    paths.sort();
    let index = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let oracle = RepOracle { g: g.clone(), basis, index, paths };
    oracle.validate()?;
    Ok(oracle)
}

impl RepOracle {
    pub fn graph(&self) -> &KGraph {
        &self.g
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Every path of the graph.
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    fn n(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of `s_α s_{β*}`: `βy ↦ αy`.
    pub fn monomial_image(&self, a: &Path, b: &Path) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.n());
        self.accumulate(&mut m, a, b, &Coeff::one());
        m
    }

    fn accumulate(&self, m: &mut SparseMatrix, a: &Path, b: &Path, c: &Coeff) {
        let g = &self.g;
        for (col, x) in self.basis.iter().enumerate() {
            if x.range() != b.range() || !b.degree().le(x.degree()) {
                continue;
            }
            if g.segment(x, &Degree::zero(g.k()), b.degree()).unwrap() != *b {
                continue;
            }
            let y = g.segment(x, b.degree(), x.degree()).unwrap();
            let ay = g.compose(a, &y).expect("s(α) = s(β) = r(y)");
            let row = self.index[&ay];
            m.add_at(row, col, c);
        }
    }

    pub fn image(&self, x: &KPElement) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.n());
        for (a, b, c) in x.terms() {
            self.accumulate(&mut m, a, b, c);
        }
        m
    }

    pub fn is_zero(&self, x: &KPElement) -> bool {
        self.image(x).is_zero()
    }

    fn p(&self, v: VertexId) -> SparseMatrix {
        let id = self.g.vertex_path(v);
        self.monomial_image(&id, &id)
    }

    fn s(&self, l: &Path) -> SparseMatrix {
        self.monomial_image(l, &self.g.vertex_path(l.source()))
    }

    fn validate(&self) -> Result<(), KPError> {
        let g = &self.g;
        let fail = |what: String| Err(KPError::OracleInvalid(what));
        let mut total = SparseMatrix::zeros(self.n());
        for v in g.vertices() {
            let pv = self.p(v);
            total = total.add(&pv);
            for w in g.vertices() {
                let expect = if v == w { pv.clone() } else { SparseMatrix::zeros(self.n()) };
                if pv.mul(&self.p(w)) != expect {
                    return fail(format!("p_{} p_{}", g.vertex_name(v), g.vertex_name(w)));
                }
            }
        }
        if total != SparseMatrix::identity(self.n()) {
            return fail("vertex projections do not sum to the identity".into());
        }
        for e in g.edge_ids() {
            let l = g.edge_path(e);
            let s = self.s(&l);
            if self.p(l.range()).mul(&s) != s || s.mul(&self.p(l.source())) != s {
                return fail(format!("p s = s = s p for {}", g.edge(e).name));
            }
        }
        for v in g.vertices() {
            let pv = self.p(v);
            for i in 0..g.k() {
                let level = g.paths_leq(v, &Degree::unit(g.k(), i));
                let mut sum = SparseMatrix::zeros(self.n());
                for l in &level {
                    let sl = self.s(l);
                    sum = sum.add(&sl.mul(&sl.transpose()));
                    for m in &level {
                        let lhs = sl.transpose().mul(&self.s(m));
                        let rhs = if l == m { self.p(l.source()) } else { SparseMatrix::zeros(self.n()) };
                        if lhs != rhs {
                            return fail(format!("s_{}* s_{}", g.path_name(l), g.path_name(m)));
                        }
                    }
                }
                if sum != pv {
                    return fail(format!("p_{} at level e_{}", g.vertex_name(v), i + 1));
                }
            }
        }
        Ok(())
    }

    /// All `(α, β)` with `s(α) = s(β)` satisfying `keep(s(α))`.
    fn spanning_pairs(&self, keep: impl Fn(VertexId) -> bool) -> Vec<(&Path, &Path)> {
        let mut by_source: BTreeMap<VertexId, Vec<&Path>> = BTreeMap::new();
        for p in &self.paths {
            by_source.entry(p.source()).or_default().push(p);
        }
        by_source
            .iter()
            .filter(|(w, _)| keep(**w))
            .flat_map(|(_, ps)| ps.iter().flat_map(move |a| ps.iter().map(move |b| (*a, *b))))
            .collect()
    }

    /// `dim KP_Q(Λ)`.
    pub fn algebra_dimension(&self) -> usize {
        rank(self.spanning_pairs(|_| true).into_iter().map(|(a, b)| self.monomial_image(a, b).flatten()))
    }

    /// `dim I(H)`, with `I(H)` spanned by `s_α s_{β*}` for `s(α) ∈ H`.
    pub fn ideal_dimension(&self, h: &VertexSet) -> usize {
        rank(
            self.spanning_pairs(|w| h.contains(w))
                .into_iter()
                .map(|(a, b)| self.monomial_image(a, b).flatten()),
        )
    }

    /// The vertices `v` with `p_v X = X p_v = 0` for every `X` in `I(H)`.
    pub fn annihilator_vertices(&self, h: &VertexSet) -> VertexSet {
        let images: Vec<SparseMatrix> = self
            .spanning_pairs(|w| h.contains(w))
            .into_iter()
            .map(|(a, b)| self.monomial_image(a, b))
            .collect();
        let g = &self.g;
        let ann = g.vertices().filter(|&v| {
            let pv = self.p(v);
            images.iter().all(|m| pv.mul(m).is_zero() && m.mul(&pv).is_zero())
        });
        VertexSet::from_ids(g, ann)
    }
}
