//! Exact arithmetic in the Kumjian-Pask algebra `KP_Q(Λ)` of a finite
//! locally convex k-graph.
//!
//! Elements are finite sums `Σ c s_α s_{β*}` with `s(α) = s(β)`. Products
//! use `s_{β*} s_μ = Σ s_γ s_{δ*}` over `βγ = μδ ∈ Λ^{≤ d(β) ∨ d(μ)}`.
//!
//! Zero tests are exact. Within one grade `t`, every term is pushed to the
//! common level `N = ∨ d(α)` by inserting `p_{s(α)} = Σ_{γ ∈ s(α)Λ^{≤q}} s_γ s_{γ*}`
//! with `q = N - d(α)`. The resulting `α` all lie in `Λ^{≤N}` and the `β` in
//! `Λ^{≤N-t}`, so multiplying by `s_{μ*}` on the left and `s_ν` on the right
//! isolates each coefficient against `p_{s(μ)} ≠ 0`.

pub mod linalg;
pub mod oracle;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::degree::{Degree, DegreeZ};
use crate::kgraph::{check_local_convexity, KGraph, VertexId};
use crate::lattice::{sh_closure, VertexSet};
use crate::paths::{Path, PathError};

pub use oracle::{build_rep_oracle, RepOracle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KPError {
    #[error("graph is not locally convex (vertex {0})")]
    NotLocallyConvex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("level {level} is below the degree {needed} of a term")]
    LevelTooSmall { level: String, needed: String },
    #[error("{0} is not saturated hereditary")]
    NotSH(String),
    #[error("a cycle is reachable from vertex {0}")]
    HasCycle(String),
    #[error("representation check failed: {0}")]
    OracleInvalid(String),
}

pub type Coeff = BigRational;

pub fn coeff(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// `Σ c_{αβ} s_α s_{β*}` with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct KPElement {
    terms: BTreeMap<(Path, Path), Coeff>,
}

impl KPElement {
    pub fn zero() -> Self {
        KPElement::default()
    }

    /// Collects like terms and drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = ((Path, Path), Coeff)>) -> Self {
        let mut out = KPElement::zero();
        for ((a, b), c) in terms {
            out.add_term(a, b, c);
        }
        out
    }

    fn add_term(&mut self, a: Path, b: Path, c: Coeff) {
        debug_assert_eq!(a.source(), b.source(), "terms need s(α) = s(β)");
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Path, &Coeff)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No stored terms. This is syntactic; use [`Algebra::is_zero`] for the
    /// value.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, a: &Path, b: &Path) -> Coeff {
        self.terms.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn scale(&self, c: &Coeff) -> KPElement {
        KPElement::from_terms(self.terms.iter().map(|(k, v)| (k.clone(), v * c)))
    }

    /// `(s_α s_{β*})* = s_β s_{α*}`.
    pub fn star(&self) -> KPElement {
        KPElement::from_terms(self.terms.iter().map(|((a, b), c)| ((b.clone(), a.clone()), c.clone())))
    }

    /// Terms of degree `d(α) - d(β)`.
    pub fn graded_parts(&self) -> BTreeMap<DegreeZ, KPElement> {
        let mut out: BTreeMap<DegreeZ, KPElement> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            let t = &a.degree().signed() - &b.degree().signed();
            out.entry(t).or_default().add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.graded_parts().len() <= 1
    }

    /// Parseable text such as `2*s(e)*sstar(f) - p(a)`; `0` when empty.
    pub fn display(&self, g: &KGraph) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !mag.is_one() {
                write!(out, "{mag}*").unwrap();
            }
            out.push_str(&monomial(g, a, b));
        }
        out
    }
}

fn monomial(g: &KGraph, a: &Path, b: &Path) -> String {
    match (a.is_vertex(), b.is_vertex()) {
        (true, true) => format!("p({})", g.vertex_name(a.range())),
        (false, true) => format!("s({})", g.path_name(a)),
        (true, false) => format!("sstar({})", g.path_name(b)),
        (false, false) => format!("s({})*sstar({})", g.path_name(a), g.path_name(b)),
    }
}

impl Add for &KPElement {
    type Output = KPElement;
    fn add(self, rhs: &KPElement) -> KPElement {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }
}

impl Sub for &KPElement {
    type Output = KPElement;
    fn sub(self, rhs: &KPElement) -> KPElement {
        self + &(-rhs)
    }
}

impl Neg for &KPElement {
    type Output = KPElement;
    fn neg(self) -> KPElement {
        KPElement { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }
}

type LeqCache = Mutex<HashMap<(VertexId, Degree), Arc<Vec<Path>>>>;

/// Arithmetic context for one graph.
pub struct Algebra<'g> {
    g: &'g KGraph,
    leq_cache: LeqCache,
}

impl<'g> Algebra<'g> {
    pub fn new(g: &'g KGraph) -> Result<Self, KPError> {
        let report = check_local_convexity(g);
        if let Some(w) = report.violations.first() {
            return Err(KPError::NotLocallyConvex(w.vertex.clone()));
        }
        Ok(Algebra { g, leq_cache: Mutex::new(HashMap::new()) })
    }

    pub fn graph(&self) -> &'g KGraph {
        self.g
    }

    /// `vΛ^{≤n}`, memoized.
    pub fn leq(&self, v: VertexId, n: &Degree) -> Arc<Vec<Path>> {
        let key = (v, n.clone());
        if let Some(hit) = self.leq_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let paths = Arc::new(self.g.paths_leq(v, n));
        self.leq_cache.lock().unwrap().insert(key, paths.clone());
        paths
    }

    pub fn gen_p(&self, v: VertexId) -> KPElement {
        let id = self.g.vertex_path(v);
        KPElement::from_terms([((id.clone(), id), coeff(1))])
    }

    pub fn gen_s(&self, l: &Path) -> KPElement {
        KPElement::from_terms([((l.clone(), self.g.vertex_path(l.source())), coeff(1))])
    }

    pub fn gen_sstar(&self, l: &Path) -> KPElement {
        KPElement::from_terms([((self.g.vertex_path(l.source()), l.clone()), coeff(1))])
    }

    /// `s_α s_{β*}`.
    pub fn monomial(&self, a: &Path, b: &Path) -> Result<KPElement, KPError> {
        if a.source() != b.source() {
            return Err(KPError::Path(PathError::NotComposable(format!(
                "s({}) != s({})",
                self.g.path_name(a),
                self.g.path_name(b)
            ))));
        }
        Ok(KPElement::from_terms([((a.clone(), b.clone()), coeff(1))]))
    }

    pub fn p_named(&self, name: &str) -> Result<KPElement, KPError> {
        let v = self.g.vertex_id(name).ok_or_else(|| KPError::UnknownVertex(name.to_owned()))?;
        Ok(self.gen_p(v))
    }

    pub fn s_named(&self, literal: &str) -> Result<KPElement, KPError> {
        Ok(self.gen_s(&self.g.path_from_names(literal)?))
    }

    pub fn sstar_named(&self, literal: &str) -> Result<KPElement, KPError> {
        Ok(self.gen_sstar(&self.g.path_from_names(literal)?))
    }

    /// `s_{β*} s_μ` as a list of `(γ, δ)` with `βγ = μδ ∈ Λ^{≤ d(β) ∨ d(μ)}`.
    pub fn ghost_times_path(&self, b: &Path, m: &Path) -> Vec<(Path, Path)> {
        if b.range() != m.range() {
            return Vec::new();
        }
        let g = self.g;
        let n = b.degree().join(m.degree());
        let q = n.checked_sub(b.degree()).unwrap();
        let mut out = Vec::new();
        for gamma in self.leq(b.source(), &q).iter() {
            let bg = g.compose(b, gamma).expect("γ starts at s(β)");
            if !m.degree().le(bg.degree()) {
                continue;
            }
            if g.segment(&bg, &Degree::zero(g.k()), m.degree()).unwrap() != *m {
                continue;
            }
            let delta = g.segment(&bg, m.degree(), bg.degree()).unwrap();
            out.push((gamma.clone(), delta));
        }
        out
    }

    pub fn multiply(&self, x: &KPElement, y: &KPElement) -> KPElement {
        let g = self.g;
        let mut out = KPElement::zero();
        for ((a, b), c1) in &x.terms {
            for ((m, n), c2) in &y.terms {
                let c = c1 * c2;
                for (gamma, delta) in self.ghost_times_path(b, m) {
                    let ag = g.compose(a, &gamma).unwrap();
                    let nd = g.compose(n, &delta).unwrap();
                    out.add_term(ag, nd, c.clone());
                }
            }
        }
        out
    }

    /// Left-to-right product of several elements.
    pub fn product(&self, factors: &[&KPElement]) -> KPElement {
        let Some((first, rest)) = factors.split_first() else {
            return self.one();
        };
        rest.iter().fold((*first).clone(), |acc, f| self.multiply(&acc, f))
    }

    /// `Σ_v p_v`, the unit of the (finite) algebra.
    pub fn one(&self) -> KPElement {
        let mut out = KPElement::zero();
        for v in self.g.vertices() {
            out = &out + &self.gen_p(v);
        }
        out
    }

    pub fn star(&self, x: &KPElement) -> KPElement {
        x.star()
    }

    pub fn graded_parts(&self, x: &KPElement) -> BTreeMap<DegreeZ, KPElement> {
        x.graded_parts()
    }

    fn insert_projection(&self, out: &mut KPElement, a: &Path, b: &Path, q: &Degree, c: &Coeff) {
        for gamma in self.leq(a.source(), q).iter() {
            let ag = self.g.compose(a, gamma).unwrap();
            let bg = self.g.compose(b, gamma).unwrap();
            out.add_term(ag, bg, c.clone());
        }
    }

    /// Rewrite each term at level `n`:
    /// `s_α s_{β*} = Σ_{γ ∈ s(α)Λ^{≤ n - d(α)∨d(β)}} s_{αγ} s_{(βγ)*}`.
    pub fn expand_to_level(&self, x: &KPElement, n: &Degree) -> Result<KPElement, KPError> {
        let mut out = KPElement::zero();
        for ((a, b), c) in &x.terms {
            let top = a.degree().join(b.degree());
            let q = n.checked_sub(&top).ok_or_else(|| KPError::LevelTooSmall {
                level: n.to_string(),
                needed: top.to_string(),
            })?;
            self.insert_projection(&mut out, a, b, &q, c);
        }
        Ok(out)
    }

    /// Each grade pushed to the least common level of its `α`; see the module
    /// docs. Two elements are equal exactly when their difference has an
    /// empty normal form.
    pub fn normal_form(&self, x: &KPElement) -> KPElement {
        let mut out = KPElement::zero();
        for part in x.graded_parts().into_values() {
            let level = part
                .terms
                .keys()
                .map(|(a, _)| a.degree().clone())
                .reduce(|l, d| l.join(&d))
                .expect("graded parts are nonempty");
            for ((a, b), c) in &part.terms {
                let q = level.checked_sub(a.degree()).unwrap();
                self.insert_projection(&mut out, a, b, &q, c);
            }
        }
        out
    }

    pub fn is_zero(&self, x: &KPElement) -> bool {
        self.normal_form(x).is_empty()
    }

    pub fn equals(&self, x: &KPElement, y: &KPElement) -> bool {
        self.is_zero(&(x - y))
    }

    /// `x ∈ I(H)`: every term of the normal form has `s(α) ∈ H`. Terms with
    /// source outside `H` live in `Λ∖H` at the same levels and stay
    /// independent in `KP(Λ)/I(H) ≅ KP(Λ∖H)`.
    pub fn ideal_membership(&self, x: &KPElement, h: &VertexSet) -> Result<bool, KPError> {
        if !h.is_sh() {
            return Err(KPError::NotSH(h.display(self.g).to_string()));
        }
        Ok(self.normal_form(x).terms().all(|(a, _, _)| h.contains(a.source())))
    }

    /// `Some((c, v))` when `x = c·p_v` with `c ≠ 0`.
    pub fn as_vertex_multiple(&self, x: &KPElement) -> Option<(Coeff, VertexId)> {
        let nf = self.normal_form(x);
        let (a, _, c) = nf.terms().next()?;
        let v = a.range();
        let guess = self.gen_p(v).scale(c);
        self.equals(x, &guess).then(|| (c.clone(), v))
    }

    /// `H(J)` for the ideal `J` generated by `generators`, found by
    /// sandwiching generators between `s_{(αγ)*}` and `s_{βγ}` for terms
    /// `s_α s_{β*}` and short `γ`, closing, and repeating on what remains
    /// outside `I(H)`. Exact when the generators are vertex projections;
    /// otherwise a subset of `H(J)`.
    pub fn vertex_set_of_ideal(&self, generators: &[KPElement]) -> VertexSet {
        let g = self.g;
        let cap = Degree::uniform(g.k(), 2.min(2 * g.vertex_count() as u32));
        let mut h = VertexSet::empty(g);
        let mut gens: Vec<KPElement> = generators.iter().map(|x| self.normal_form(x)).collect();
        loop {
            let mut found: Vec<VertexId> = h.iter().collect();
            for x in &gens {
                if let Some((_, v)) = self.as_vertex_multiple(x) {
                    found.push(v);
                }
                for (a, b, _) in x.terms() {
                    for gamma in g.paths_upto(a.source(), &cap) {
                        let left = self.gen_sstar(&g.compose(a, &gamma).unwrap());
                        let right = self.gen_s(&g.compose(b, &gamma).unwrap());
                        let r = self.product(&[&left, x, &right]);
                        if let Some((_, v)) = self.as_vertex_multiple(&r) {
                            found.push(v);
                        }
                    }
                }
            }
            let next = sh_closure(g, found);
            if next == h {
                return h;
            }
            h = next;
            // drop what is already in I(H)
            gens = gens
                .iter()
                .map(|x| {
                    KPElement::from_terms(
                        x.terms()
                            .filter(|(a, _, _)| !h.contains(a.source()))
                            .map(|(a, b, c)| ((a.clone(), b.clone()), c.clone())),
                    )
                })
                .filter(|x| !x.is_empty())
                .collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::kgraph::omega_graph;

    fn omega() -> KGraph {
        omega_graph(2, &Degree::uniform(2, 1))
    }

    #[test]
    fn generator_relations() {
        let g = fixtures::g1();
        let alg = Algebra::new(&g).unwrap();
        let (a, b) = (alg.p_named("a").unwrap(), alg.p_named("b").unwrap());
        assert!(alg.multiply(&a, &b).is_empty());
        assert_eq!(alg.multiply(&a, &a), a);
        let e = alg.s_named("e").unwrap();
        let es = alg.sstar_named("e").unwrap();
        assert_eq!(alg.multiply(&es, &e), b);
        let gg = alg.s_named("g").unwrap();
        let gs = alg.sstar_named("g").unwrap();
        assert_eq!(alg.multiply(&gs, &gg), a);
        let kp4 = &alg.multiply(&gg, &gs) + &alg.multiply(&e, &es);
        assert!(alg.equals(&kp4, &a));
        assert!(!alg.equals(&alg.multiply(&gg, &gs), &a));
    }

    #[test]
    fn distinct_edges_are_orthogonal() {
        let g = fixtures::g2();
        let alg = Algebra::new(&g).unwrap();
        assert!(alg.multiply(&alg.sstar_named("x").unwrap(), &alg.s_named("y").unwrap()).is_empty());
    }

    #[test]
    fn omega_corner() {
        let g = omega();
        let alg = Algebra::new(&g).unwrap();
        let p00 = alg.p_named("v0_0").unwrap();
        assert_eq!(alg.multiply(&p00, &p00), p00);
        let sq = g.path_from_names("e1_0_0.e2_1_0").unwrap();
        let diff = &p00 - &alg.multiply(&alg.gen_s(&sq), &alg.gen_sstar(&sq));
        assert!(alg.is_zero(&diff));
        assert!(!alg.is_zero(&p00));
    }

    #[test]
    fn expansion() {
        let g = fixtures::g1();
        let alg = Algebra::new(&g).unwrap();
        let a = alg.p_named("a").unwrap();
        let x = alg.expand_to_level(&a, &Degree::unit(1, 0)).unwrap();
        assert_eq!(x.display(&g), "s(g)*sstar(g) + s(e)*sstar(e)");
        assert_eq!(alg.expand_to_level(&a, &Degree::zero(1)).unwrap(), a);
        let e = alg.s_named("e").unwrap();
        assert!(matches!(alg.expand_to_level(&e, &Degree::zero(1)), Err(KPError::LevelTooSmall { .. })));
    }

    #[test]
    fn star_is_an_anti_automorphism() {
        let g = fixtures::g1();
        let alg = Algebra::new(&g).unwrap();
        let e = alg.s_named("e").unwrap();
        assert_eq!(e.star(), alg.sstar_named("e").unwrap());
        let x = &alg.s_named("g.e").unwrap() + &alg.sstar_named("e").unwrap().scale(&coeff(3));
        let y = &alg.s_named("e.f").unwrap() - &alg.p_named("a").unwrap();
        assert_eq!(x.star().star(), x);
        assert!(alg.equals(&alg.multiply(&x, &y).star(), &alg.multiply(&y.star(), &x.star())));
    }

    #[test]
    fn grading() {
        let g = fixtures::g1();
        let alg = Algebra::new(&g).unwrap();
        let parts = alg.graded_parts(&alg.p_named("a").unwrap());
        assert_eq!(parts.keys().cloned().collect::<Vec<_>>(), vec![DegreeZ::zero(1)]);
        let parts = alg.s_named("e").unwrap().graded_parts();
        assert_eq!(parts.keys().cloned().collect::<Vec<_>>(), vec![DegreeZ::from_vec(vec![1])]);
    }

    #[test]
    fn membership() {
        let g = fixtures::g1();
        let alg = Algebra::new(&g).unwrap();
        let hb = VertexSet::from_names(&g, &["b"]).unwrap();
        assert!(alg.ideal_membership(&alg.p_named("b").unwrap(), &hb).unwrap());
        assert!(!alg.ideal_membership(&alg.p_named("a").unwrap(), &hb).unwrap());
        assert!(alg.ideal_membership(&alg.s_named("e").unwrap(), &hb).unwrap());
        // p_a - s_g s_g* = s_e s_e*
        let x = &alg.p_named("a").unwrap() - &alg.multiply(&alg.s_named("g").unwrap(), &alg.sstar_named("g").unwrap());
        assert!(alg.ideal_membership(&x, &hb).unwrap());
        let om = omega();
        let not_sh = VertexSet::from_names(&om, &["v1_1"]).unwrap();
        let alg = Algebra::new(&om).unwrap();
        assert!(matches!(alg.ideal_membership(&alg.one(), &not_sh), Err(KPError::NotSH(_))));
    }

    #[test]
    fn ideal_vertex_sets() {
        let g = fixtures::g1();
        let alg = Algebra::new(&g).unwrap();
        let hb = alg.vertex_set_of_ideal(&[alg.p_named("b").unwrap()]);
        assert_eq!(hb.names(&g), vec!["b"]);
        let he = alg.vertex_set_of_ideal(&[alg.s_named("e").unwrap()]);
        assert!(he.contains(g.vertex_id("b").unwrap()));
        assert!(alg.vertex_set_of_ideal(&[]).is_empty());
        let om = omega();
        let alg = Algebra::new(&om).unwrap();
        assert_eq!(alg.vertex_set_of_ideal(&[alg.p_named("v1_1").unwrap()]), VertexSet::full(&om));
    }

    #[test]
    fn rejects_non_convex() {
        let doc = "kgraph 1 k=2\nvertex u\nvertex w\nvertex z\nedge x u w 1\nedge y u z 2\n";
        let g = crate::io::parse_kgraph(doc).unwrap();
        assert!(matches!(Algebra::new(&g), Err(KPError::NotLocallyConvex(_))));
    }
}
