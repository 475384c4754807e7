//! Seeded random k-graphs, the fuzz corpus, and random algebra elements.
//!
//! A rank-k graph is a cartesian product of k random 1-graphs, after which
//! pairs of squares with a common boundary have their far sides exchanged.
//! For k = 2 any exchange is again a valid factorization; for k ≥ 3 each one
//! is re-validated and undone if the cube condition breaks.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::degree::Degree;
use crate::kgraph::{
    build_kgraph, cartesian_product, check_local_convexity, EdgeSpec, FactorizationTable, KGraph, Skeleton,
    SquareSpec, VertexId,
};
use crate::kp::{Algebra, Coeff, KPElement};
use crate::paths::Path;

/// Shape parameters. `density` is the chance of an edge for each ordered pair
/// of vertices, loops included, and must lie in `[0, 1]`.
#[derive(Clone, Copy, Debug)]
pub struct GenParams {
    pub k: usize,
    pub vertices: usize,
    pub density: f64,
    pub acyclic: bool,
}

/// Deterministic in `seed`. `vertices ≥ 1` bounds the vertex count; for
/// `k ≥ 2` the factor sizes multiply to at most `vertices`.
pub fn random_kgraph(k: usize, vertices: usize, density: f64, seed: u64) -> KGraph {
    generate(&GenParams { k, vertices, density, acyclic: false }, seed)
}

/// As [`random_kgraph`], with every factor a DAG, so the product has no
/// cycles and the matrix oracle applies.
pub fn random_acyclic_kgraph(k: usize, vertices: usize, density: f64, seed: u64) -> KGraph {
    generate(&GenParams { k, vertices, density, acyclic: true }, seed)
}

pub fn generate(p: &GenParams, seed: u64) -> KGraph {
    assert!(p.k >= 1 && p.vertices >= 1, "need k ≥ 1 and at least one vertex");
    assert!((0.0..=1.0).contains(&p.density), "density must lie in [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let g = attempt(p, &mut rng);
        // products of 1-graphs are always convex; kept as a filter anyway
        if check_local_convexity(&g).is_convex() {
            return g;
        }
    }
}

fn attempt(p: &GenParams, rng: &mut ChaCha8Rng) -> KGraph {
    if p.k == 1 {
        return random_1graph(p.vertices, p.density, p.acyclic, rng);
    }
    let mut budget = p.vertices;
    let mut g: Option<KGraph> = None;
    for _ in 0..p.k {
        let n = rng.gen_range(1..=budget);
        budget /= n;
        let f = random_1graph(n, p.density, p.acyclic, rng);
        g = Some(match g {
            None => f,
            Some(acc) => cartesian_product(&acc, &f).expect("products of valid graphs are valid"),
        });
    }
    let mut g = g.unwrap();
    for _ in 0..2 * p.k {
        if let Some(next) = reshuffle(&g, rng) {
            g = next;
        }
    }
    g
}

fn random_1graph(n: usize, density: f64, acyclic: bool, rng: &mut ChaCha8Rng) -> KGraph {
    let mut skel = Skeleton { k: 1, ..Default::default() };
    skel.vertices = (0..n).map(|i| format!("v{i}")).collect();
    let mut push = |r: usize, s: usize| {
        let id = format!("e{}", skel.edges.len());
        skel.edges.push(EdgeSpec { id, range: format!("v{r}"), source: format!("v{s}"), color: 1 });
    };
    for r in 0..n {
        for s in 0..n {
            if acyclic && s <= r {
                continue;
            }
            if rng.gen_bool(density) {
                push(r, s);
                // occasional parallel edge
                if rng.gen_bool(density / 4.0) {
                    push(r, s);
                }
            }
        }
    }
    build_kgraph(skel, FactorizationTable::default()).expect("1-graphs need no squares")
}

/// Exchange the far sides of two squares with the same corners and colors.
/// `None` when no such pair exists or the result fails validation.
fn reshuffle(g: &KGraph, rng: &mut ChaCha8Rng) -> Option<KGraph> {
    let mut groups: BTreeMap<(VertexId, VertexId, usize, usize), Vec<SquareSpec>> = BTreeMap::new();
    for sq in g.squares().squares {
        let color = |name: &str| g.edge(g.edge_id(name).unwrap()).color;
        let sq = if color(&sq.f) < color(&sq.g) { sq } else { SquareSpec::new(&sq.gp, &sq.fp, &sq.f, &sq.g) };
        let f = g.edge(g.edge_id(&sq.f).unwrap());
        let s = g.edge(g.edge_id(&sq.g).unwrap()).source;
        groups.entry((f.range, s, f.color, color(&sq.g))).or_default().push(sq);
    }
    let candidates: Vec<&Vec<SquareSpec>> = groups.values().filter(|v| v.len() >= 2).collect();
    let group = candidates.choose(rng)?;
    let picked: Vec<&SquareSpec> = group.choose_multiple(rng, 2).collect();
    let (a, b) = (picked[0].clone(), picked[1].clone());
    let mut squares: Vec<SquareSpec> = groups.into_values().flatten().filter(|s| *s != a && *s != b).collect();
    squares.push(SquareSpec::new(&a.f, &a.g, &b.gp, &b.fp));
    squares.push(SquareSpec::new(&b.f, &b.g, &a.gp, &a.fp));
    build_kgraph(g.skeleton(), FactorizationTable { squares }).ok()
}

#[derive(Clone, Debug)]
pub struct CorpusGraph {
    /// `k1-017` and so on; the suffix indexes within the rank.
    pub tag: String,
    pub params: GenParams,
    pub seed: u64,
    pub graph: KGraph,
}

impl CorpusGraph {
    pub fn is_acyclic(&self) -> bool {
        self.params.acyclic
    }
}

/// Corpus sizes and vertex caps per rank.
#[derive(Clone, Debug)]
pub struct CorpusConfig {
    pub seed: u64,
    /// `(k, count, max vertices)`.
    pub ranks: Vec<(usize, usize, usize)>,
    /// Every `acyclic_every`-th graph is drawn acyclic.
    pub acyclic_every: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { seed: 2024, ranks: vec![(1, 200, 8), (2, 50, 6), (3, 10, 4)], acyclic_every: 4 }
    }
}

pub fn build_corpus(cfg: &CorpusConfig) -> Vec<CorpusGraph> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for &(k, count, max_vertices) in &cfg.ranks {
        for i in 0..count {
            let params = GenParams {
                k,
                vertices: rng.gen_range(1..=max_vertices),
                density: rng.gen_range(0.1..0.4),
                acyclic: cfg.acyclic_every > 0 && i % cfg.acyclic_every == cfg.acyclic_every - 1,
            };
            let seed = rng.gen();
            out.push(CorpusGraph { tag: format!("k{k}-{i:03}"), params, seed, graph: generate(&params, seed) });
        }
    }
    out
}

/// Draws monomials `c·s_α s_{β*}` with `d(α), d(β) ≤ bound`.
pub struct ElementSampler {
    by_source: Vec<Vec<Path>>,
    sources: Vec<VertexId>,
}

impl ElementSampler {
    pub fn new(g: &KGraph, bound: &Degree) -> Self {
        let mut by_source = vec![Vec::new(); g.vertex_count()];
        for v in g.vertices() {
            for p in g.paths_upto(v, bound) {
                by_source[p.source().0].push(p);
            }
        }
        let sources = g.vertices().filter(|v| !by_source[v.0].is_empty()).collect();
        ElementSampler { by_source, sources }
    }

    pub fn monomial(&self, rng: &mut impl Rng) -> (Path, Path) {
        let w = *self.sources.choose(rng).expect("every vertex is a path");
        let ps = &self.by_source[w.0];
        (ps.choose(rng).unwrap().clone(), ps.choose(rng).unwrap().clone())
    }

    /// A sum of up to `max_terms` monomials with small nonzero rational
    /// coefficients.
    pub fn element(&self, rng: &mut impl Rng, max_terms: usize) -> KPElement {
        let n = rng.gen_range(1..=max_terms);
        KPElement::from_terms((0..n).map(|_| (self.monomial(rng), random_coeff(rng))))
    }

    /// Half the time a plain random element; otherwise one that is zero in
    /// the algebra, built as a random element minus a re-expansion of
    /// itself, sometimes perturbed by one monomial.
    pub fn zero_biased(&self, alg: &Algebra, rng: &mut impl Rng, max_terms: usize) -> KPElement {
        let x = self.element(rng, max_terms);
        if rng.gen_bool(0.5) {
            return x;
        }
        let top = x.terms().fold(Degree::zero(alg.graph().k()), |d, (a, b, _)| d.join(a.degree()).join(b.degree()));
        let bump = Degree::unit(top.k(), rng.gen_range(0..top.k()));
        let y = alg.expand_to_level(&x, &(&top + &bump)).unwrap();
        let z = &x - &y;
        if rng.gen_bool(0.3) {
            &z + &self.element(rng, 1)
        } else {
            z
        }
    }
}

fn random_coeff(rng: &mut impl Rng) -> Coeff {
    let mut num: i64 = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        num = -num;
    }
    let den = if rng.gen_bool(0.2) { 2 } else { 1 };
    Coeff::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::serialize_kgraph;

    #[test]
    fn seed_determinism() {
        for k in 1..=3 {
            let a = random_kgraph(k, 6, 0.4, 11);
            let b = random_kgraph(k, 6, 0.4, 11);
            assert_eq!(serialize_kgraph(&a), serialize_kgraph(&b));
            assert_eq!(a.k(), k);
        }
    }

    #[test]
    fn higher_rank_outputs_are_valid_and_convex() {
        for seed in 0..40 {
            for k in [2, 3] {
                let g = random_kgraph(k, 6, 0.5, seed);
                assert!(g.vertex_count() <= 6);
                assert!(check_local_convexity(&g).is_convex());
                let again = crate::io::parse_kgraph(&serialize_kgraph(&g)).unwrap();
                assert_eq!(serialize_kgraph(&again), serialize_kgraph(&g));
            }
        }
    }

    #[test]
    fn reshuffles_change_some_tables() {
        let changed = (0..20).any(|seed| {
            let p = GenParams { k: 2, vertices: 4, density: 0.6, acyclic: false };
            let g = generate(&p, seed);
            // product squares keep the factor edge on opposite sides; a
            // shuffle pairs different ones
            let differ = |a: &str, b: &str| a.contains('/') && a.split('/').next() != b.split('/').next();
            g.squares().squares.iter().any(|sq| differ(&sq.f, &sq.fp) || differ(&sq.g, &sq.gp))
        });
        assert!(changed);
    }

    #[test]
    fn acyclic_variant_has_no_cycles() {
        for seed in 0..20 {
            let g = random_acyclic_kgraph(2, 6, 0.6, seed);
            assert!(g.vertices().all(|v| !g.reaches_cycle(v)));
        }
    }

    #[test]
    fn corpus_shape() {
        let c = build_corpus(&CorpusConfig::default());
        assert_eq!(c.len(), 260);
        assert_eq!(c.iter().filter(|c| c.graph.k() == 2).count(), 50);
        assert!(c.iter().filter(|c| c.graph.k() == 3).all(|c| c.graph.vertex_count() <= 4));
        assert!(c.iter().filter(|c| c.is_acyclic()).count() >= 60);
    }

    #[test]
    fn zero_biased_elements_are_often_zero() {
        let g = random_kgraph(1, 4, 0.5, 3);
        let alg = Algebra::new(&g).unwrap();
        let s = ElementSampler::new(&g, &Degree::uniform(1, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let zeros = (0..100).filter(|_| alg.is_zero(&s.zero_biased(&alg, &mut rng, 3))).count();
        assert!(zeros > 10 && zeros < 90, "{zeros}");
    }
}
