//! Hereditary and saturated vertex sets, the lattice they form, and the
//! operations behind graded and regular ideals: `T(w)`, `H̄`, perp,
//! double-perp, quotient and restriction graphs.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::kgraph::{check_local_convexity, GraphError, KGraph, VertexId};
use crate::par::{self, Mode};

pub const DEFAULT_ENUMERATION_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("graph has {vertices} vertices; lattice enumeration is capped at {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("{0} is not saturated hereditary")]
    NotSH(String),
    #[error("{0} is not hereditary")]
    NotHereditary(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A set of vertices of a fixed graph, with its hereditary and saturated
/// flags computed on construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexSet {
    bits: FixedBitSet,
    hereditary: bool,
    saturated: bool,
}

impl VertexSet {
    pub fn from_bits(g: &KGraph, bits: FixedBitSet) -> Self {
        assert_eq!(bits.len(), g.vertex_count(), "bitset sized for another graph");
        let hereditary = hereditary_bits(g, &bits);
        let saturated = saturation_candidate(g, &bits).is_none();
        VertexSet { bits, hereditary, saturated }
    }

    pub fn from_ids(g: &KGraph, ids: impl IntoIterator<Item = VertexId>) -> Self {
        let mut bits = FixedBitSet::with_capacity(g.vertex_count());
        for v in ids {
            bits.insert(v.0);
        }
        Self::from_bits(g, bits)
    }

    /// Looks up vertices by name; `None` if any name is unknown.
    pub fn from_names<S: AsRef<str>>(g: &KGraph, names: &[S]) -> Option<Self> {
        let ids = names
            .iter()
            .map(|n| g.vertex_id(n.as_ref()))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_ids(g, ids))
    }

    pub fn empty(g: &KGraph) -> Self {
        Self::from_bits(g, FixedBitSet::with_capacity(g.vertex_count()))
    }

    pub fn full(g: &KGraph) -> Self {
        let mut bits = FixedBitSet::with_capacity(g.vertex_count());
        bits.insert_range(..);
        Self::from_bits(g, bits)
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.bits.contains(v.0)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.bits.ones().map(VertexId)
    }

    pub fn is_hereditary(&self) -> bool {
        self.hereditary
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn is_sh(&self) -> bool {
        self.hereditary && self.saturated
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, g: &KGraph, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self::from_bits(g, bits)
    }

    pub fn complement(&self, g: &KGraph) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Self::from_bits(g, bits)
    }

    pub fn names<'g>(&self, g: &'g KGraph) -> Vec<&'g str> {
        self.iter().map(|v| g.vertex_name(v)).collect()
    }

    /// `{a,b}`
    pub fn display<'a>(&'a self, g: &'a KGraph) -> impl fmt::Display + 'a {
        DisplaySet { set: self, g }
    }
}

struct DisplaySet<'a> {
    set: &'a VertexSet,
    g: &'a KGraph,
}

impl fmt::Display for DisplaySet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.set.names(self.g).join(","))
    }
}

fn hereditary_bits(g: &KGraph, bits: &FixedBitSet) -> bool {
    bits.ones()
        .all(|v| g.all_edges_from(VertexId(v)).all(|e| bits.contains(g.edge(e).source.0)))
}

/// Some `v ∉ H` with `s(vΛ^{≤e_i}) ⊆ H` for a color `i`. A source in color
/// `i` has `vΛ^{≤e_i} = {v}` and so never qualifies from outside `H`.
fn saturation_candidate(g: &KGraph, bits: &FixedBitSet) -> Option<VertexId> {
    g.vertices().find(|&v| !bits.contains(v.0) && saturates(g, bits, v))
}

fn saturates(g: &KGraph, bits: &FixedBitSet, v: VertexId) -> bool {
    (0..g.k()).any(|i| {
        let out = g.edges_from(v, i);
        !out.is_empty() && out.iter().all(|&e| bits.contains(g.edge(e).source.0))
    })
}

pub fn is_hereditary(h: &VertexSet) -> bool {
    h.is_hereditary()
}

pub fn is_saturated(h: &VertexSet) -> bool {
    h.is_saturated()
}

fn close_bits(g: &KGraph, bits: &mut FixedBitSet) {
    loop {
        // hereditary fixpoint
        let mut stack: Vec<usize> = bits.ones().collect();
        while let Some(v) = stack.pop() {
            for e in g.all_edges_from(VertexId(v)) {
                let s = g.edge(e).source.0;
                if !bits.put(s) {
                    stack.push(s);
                }
            }
        }
        // saturation fixpoint; stop once nothing new is forced
        let mut grew = false;
        let mut changed = true;
        while changed {
            changed = false;
            for v in g.vertices() {
                if !bits.contains(v.0) && saturates(g, bits, v) {
                    bits.insert(v.0);
                    changed = true;
                    grew = true;
                }
            }
        }
        if !grew {
            return;
        }
    }
}

/// The least saturated hereditary set containing `s`.
pub fn sh_closure(g: &KGraph, s: impl IntoIterator<Item = VertexId>) -> VertexSet {
    let mut bits = FixedBitSet::with_capacity(g.vertex_count());
    for v in s {
        bits.insert(v.0);
    }
    close_bits(g, &mut bits);
    VertexSet::from_bits(g, bits)
}

/// `T(w)`: every `s(λ)` with `r(λ) = w`, including `w`.
pub fn tree_t(g: &KGraph, w: VertexId) -> VertexSet {
    VertexSet::from_ids(g, crate::kgraph::reachable(g, [w]))
}

/// `H̄ = {r(λ) : s(λ) ∈ H}`, the vertices that can reach `H`.
pub fn bar_closure(g: &KGraph, h: &VertexSet) -> VertexSet {
    let mut bits = h.bits.clone();
    let mut stack: Vec<usize> = bits.ones().collect();
    while let Some(v) = stack.pop() {
        for &e in g.edges_into(VertexId(v)) {
            let r = g.edge(e).range.0;
            if !bits.put(r) {
                stack.push(r);
            }
        }
    }
    VertexSet::from_bits(g, bits)
}

fn require_sh(g: &KGraph, h: &VertexSet) -> Result<(), LatticeError> {
    if h.is_sh() {
        Ok(())
    } else {
        Err(LatticeError::NotSH(h.display(g).to_string()))
    }
}

/// `{v : vΛH = ∅}`, the vertex set of `I(H)^⊥`.
pub fn perp(g: &KGraph, h: &VertexSet) -> Result<VertexSet, LatticeError> {
    require_sh(g, h)?;
    Ok(bar_closure(g, h).complement(g))
}

/// `{w : T(w) ⊆ H̄}`, the vertex set of `I(H)^⊥⊥`.
pub fn double_perp(g: &KGraph, h: &VertexSet) -> Result<VertexSet, LatticeError> {
    require_sh(g, h)?;
    let bar = bar_closure(g, h);
    let out = VertexSet::from_ids(g, g.vertices().filter(|&w| tree_t(g, w).is_subset(&bar)));
    debug_assert!(out.is_sh(), "double perp produced a non-saturated-hereditary set");
    Ok(out)
}

pub fn is_regular(g: &KGraph, h: &VertexSet) -> Result<bool, LatticeError> {
    Ok(&double_perp(g, h)? == h)
}

/// `Λ∖H`: the vertices outside `H` with every edge and square among them.
pub fn quotient_graph(g: &KGraph, h: &VertexSet) -> Result<KGraph, LatticeError> {
    require_sh(g, h)?;
    let q = g.induced(|v| !h.contains(v))?;
    assert!(
        !check_local_convexity(g).is_convex() || check_local_convexity(&q).is_convex(),
        "quotient of a locally convex graph lost local convexity"
    );
    Ok(q)
}

/// `Λ(H)`: the vertices of `H` with the edges whose range lies in `H`.
pub fn restriction_graph(
    g: &KGraph,
    h: &VertexSet,
    require_hereditary: bool,
) -> Result<KGraph, LatticeError> {
    if require_hereditary && !h.is_hereditary() {
        return Err(LatticeError::NotHereditary(h.display(g).to_string()));
    }
    Ok(g.induced(|v| h.contains(v))?)
}

/// Every saturated hereditary set of a graph, ordered by size and then by
/// members, with the covering relation and lattice operations.
#[derive(Clone, Debug)]
pub struct ShLattice {
    sets: Vec<VertexSet>,
    index: HashMap<FixedBitSet, usize>,
    hasse: Vec<(usize, usize)>,
}

impl ShLattice {
    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn index_of(&self, h: &VertexSet) -> Option<usize> {
        self.index.get(&h.bits).copied()
    }

    /// Covering pairs `(lower, upper)`.
    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn meet(&self, g: &KGraph, a: usize, b: usize) -> usize {
        let m = self.sets[a].intersection(g, &self.sets[b]);
        self.index_of(&m).expect("intersection of saturated hereditary sets is one")
    }

    pub fn join(&self, g: &KGraph, a: usize, b: usize) -> usize {
        let j = sh_closure(g, self.sets[a].iter().chain(self.sets[b].iter()));
        self.index_of(&j).expect("closure lands in the lattice")
    }

    pub fn meet_table(&self, g: &KGraph) -> Vec<Vec<usize>> {
        (0..self.len()).map(|a| (0..self.len()).map(|b| self.meet(g, a, b)).collect()).collect()
    }

    pub fn join_table(&self, g: &KGraph) -> Vec<Vec<usize>> {
        (0..self.len()).map(|a| (0..self.len()).map(|b| self.join(g, a, b)).collect()).collect()
    }
}

pub fn enumerate_sh_lattice(g: &KGraph) -> Result<ShLattice, LatticeError> {
    enumerate_sh_lattice_with(g, DEFAULT_ENUMERATION_CAP, Mode::default())
}

/// Breadth-first search from `∅` through `cl(X ∪ {v})`; every saturated
/// hereditary set is reached this way, and the covers of `X` are the minimal
/// such closures.
pub fn enumerate_sh_lattice_with(g: &KGraph, cap: usize, mode: Mode) -> Result<ShLattice, LatticeError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(LatticeError::TooLarge { vertices: n, cap });
    }
    let start = sh_closure(g, std::iter::empty()).bits;
    let mut found: HashMap<FixedBitSet, Vec<FixedBitSet>> = HashMap::new();
    let mut frontier = vec![start.clone()];
    let mut queued: std::collections::HashSet<FixedBitSet> = [start].into_iter().collect();
    let mut queue = VecDeque::new();
    while !frontier.is_empty() {
        let expanded = par::map(mode, &frontier, |x| {
            let mut next: Vec<FixedBitSet> = (0..n)
                .filter(|&v| !x.contains(v))
                .map(|v| {
                    let mut b = x.clone();
                    b.insert(v);
                    close_bits(g, &mut b);
                    b
                })
                .collect();
            next.sort();
            next.dedup();
            let covers: Vec<FixedBitSet> = next
                .iter()
                .filter(|y| !next.iter().any(|z| z != *y && z.is_subset(y)))
                .cloned()
                .collect();
            (x.clone(), covers)
        });
        for (x, covers) in expanded {
            for y in &covers {
                if queued.insert(y.clone()) {
                    queue.push_back(y.clone());
                }
            }
            found.insert(x, covers);
        }
        frontier = queue.drain(..).collect();
    }
    let mut keys: Vec<FixedBitSet> = found.keys().cloned().collect();
    keys.sort_by(|a, b| {
        a.count_ones(..)
            .cmp(&b.count_ones(..))
            .then_with(|| a.ones().collect::<Vec<_>>().cmp(&b.ones().collect::<Vec<_>>()))
    });
    let index: HashMap<FixedBitSet, usize> = keys.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let mut hasse: Vec<(usize, usize)> = found
        .iter()
        .flat_map(|(x, covers)| covers.iter().map(|y| (index[x], index[y])))
        .collect();
    hasse.sort();
    let sets = keys.into_iter().map(|b| VertexSet::from_bits(g, b)).collect();
    Ok(ShLattice { sets, index, hasse })
}
