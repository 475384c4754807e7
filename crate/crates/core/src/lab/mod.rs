//! Harnesses that check the lattice, regularity, Condition (B) and quotient
//! results on concrete graphs, producing [`TheoremReport`]s.

pub mod random;

use std::fmt;

use thiserror::Error;

use crate::condition_b::{check_graph_b, BError, BStatus};
use crate::io::{parse_kgraph, serialize_kgraph, FormatError};
use crate::kgraph::KGraph;
use crate::kp::oracle::build_rep_oracle;
use crate::kp::{Algebra, KPElement, KPError};
use crate::lattice::{
    bar_closure, double_perp, enumerate_sh_lattice, is_regular, perp, quotient_graph, tree_t, LatticeError, VertexSet,
};
use crate::paths::Path;

pub use random::{
    build_corpus, generate, random_acyclic_kgraph, random_kgraph, CorpusConfig, CorpusGraph, ElementSampler, GenParams,
};

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Algebra(#[from] KPError),
    #[error(transparent)]
    ConditionB(#[from] BError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReportStatus {
    Pass,
    Fail,
    Partial,
}

impl fmt::Display for ReportStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportStatus::Pass => "pass",
            ReportStatus::Fail => "fail",
            ReportStatus::Partial => "partial",
        })
    }
}

/// One failed instance: what broke, the inputs, and the graph document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub message: String,
    pub inputs: String,
    pub reproducer: String,
}

impl Failure {
    pub fn graph(&self) -> Result<KGraph, FormatError> {
        parse_kgraph(&self.reproducer)
    }
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub theorem: String,
    pub graph: String,
    pub instances: usize,
    /// Instances that could be neither confirmed nor refuted.
    pub undecided: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl TheoremReport {
    fn new(theorem: &str, g: &KGraph) -> Self {
        TheoremReport {
            theorem: theorem.to_owned(),
            graph: describe(g),
            instances: 0,
            undecided: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn status(&self) -> ReportStatus {
        if !self.failures.is_empty() {
            ReportStatus::Fail
        } else if self.undecided > 0 {
            ReportStatus::Partial
        } else {
            ReportStatus::Pass
        }
    }

    fn check(&mut self, g: &KGraph, ok: bool, inputs: impl Into<String>, message: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(Failure { message: message(), inputs: inputs.into(), reproducer: serialize_kgraph(g) });
        }
    }

    /// Line-oriented text form; a failure's reproducer is indented under
    /// its `reproducer` line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "theorem {}\ngraph {}\ninstances {}\nundecided {}\nstatus {}\n",
            self.theorem,
            self.graph,
            self.instances,
            self.undecided,
            self.status()
        );
        for n in &self.notes {
            out += &format!("note {n}\n");
        }
        for f in &self.failures {
            out += &format!("failure {}\ninputs {}\nreproducer\n", f.message, f.inputs);
            for line in f.reproducer.lines() {
                out += &format!("  {line}\n");
            }
        }
        out
    }
}

pub fn describe(g: &KGraph) -> String {
    format!(
        "k={} vertices={} edges={} squares={}",
        g.k(),
        g.vertex_count(),
        g.edge_count(),
        g.square_count()
    )
}

/// `{v : p_v ∈ I(H)}` by the engine's membership test.
fn vertices_in_ideal(alg: &Algebra, h: &VertexSet) -> Result<VertexSet, KPError> {
    let g = alg.graph();
    let mut keep = Vec::new();
    for v in g.vertices() {
        if alg.ideal_membership(&alg.gen_p(v), h)? {
            keep.push(v);
        }
    }
    Ok(VertexSet::from_ids(g, keep))
}

/// `H ↦ I(H)` is a lattice isomorphism onto the basic graded ideals:
/// `H(I(H)) = H`, inclusions match in both directions, and meets and joins
/// correspond.
pub fn verify_lattice_iso(g: &KGraph) -> Result<TheoremReport, LabError> {
    let lat = enumerate_sh_lattice(g)?;
    let alg = Algebra::new(g)?;
    let mut rep = TheoremReport::new("1", g);
    let sets = lat.sets();
    let back: Vec<VertexSet> = sets.iter().map(|h| vertices_in_ideal(&alg, h)).collect::<Result<_, _>>()?;
    for (h, hh) in sets.iter().zip(&back) {
        rep.instances += 1;
        rep.check(g, h == hh, h.display(g).to_string(), || format!("H(I(H)) = {}", hh.display(g)));
    }
    for (i, hi) in sets.iter().enumerate() {
        for (j, hj) in sets.iter().enumerate() {
            let pair = || format!("{} {}", hi.display(g), hj.display(g));
            // I(H_i) ⊆ I(H_j) iff every generator p_v, v ∈ H_i, lies in I(H_j)
            let contained = hi.iter().all(|v| back[j].contains(v));
            rep.check(g, contained == hi.is_subset(hj), pair(), || {
                format!("ideal inclusion {contained} disagrees with set inclusion")
            });
            if i >= j {
                continue;
            }
            let meet = back[i].intersection(g, &back[j]);
            rep.check(g, meet == sets[lat.meet(g, i, j)], pair(), || {
                format!("H(I ∩ I') = {} is not the meet", meet.display(g))
            });
            let gens: Vec<KPElement> = hi.iter().chain(hj.iter()).map(|v| alg.gen_p(v)).collect();
            let join = alg.vertex_set_of_ideal(&gens);
            rep.check(g, join == sets[lat.join(g, i, j)], pair(), || {
                format!("H(I + I') = {} is not the join", join.display(g))
            });
        }
    }
    Ok(rep)
}

/// `perp` and `double_perp` against their path-level descriptions, the
/// closure identities, and the regular sets; on graphs without cycles also
/// against the matrix annihilator.
pub fn verify_thm3(g: &KGraph) -> Result<TheoremReport, LabError> {
    let lat = enumerate_sh_lattice(g)?;
    let mut rep = TheoremReport::new("3", g);
    let oracle = if g.vertices().all(|v| !g.reaches_cycle(v)) { Some(build_rep_oracle(g)?) } else { None };
    let mut perps = Vec::new();
    for h in lat.sets() {
        rep.instances += 1;
        let input = h.display(g).to_string();
        let p = perp(g, h)?;
        let dp = double_perp(g, h)?;
        let bar = bar_closure(g, h);
        let no_path_into_h = VertexSet::from_ids(g, g.vertices().filter(|&v| tree_t(g, v).intersection(g, h).is_empty()));
        rep.check(g, p == no_path_into_h, input.clone(), || {
            format!("perp {} differs from {{v : vΛH = ∅}}", p.display(g))
        });
        rep.check(g, p == bar.complement(g), input.clone(), || format!("perp {} is not the complement of bar", p.display(g)));
        let t_inside = VertexSet::from_ids(g, g.vertices().filter(|&w| tree_t(g, w).is_subset(&bar)));
        rep.check(g, dp == t_inside, input.clone(), || format!("double perp {} differs from {{w : T(w) ⊆ bar}}", dp.display(g)));
        rep.check(g, p.is_sh() && dp.is_sh(), input.clone(), || "perp sets are not saturated hereditary".into());
        rep.check(g, dp == perp(g, &p)?, input.clone(), || "double perp is not perp of perp".into());
        rep.check(g, h.is_subset(&dp), input.clone(), || "H is not inside its double perp".into());
        rep.check(g, double_perp(g, &p)? == p, input.clone(), || "perp is not regular".into());
        rep.check(g, is_regular(g, h)? == (dp == *h), input.clone(), || "regularity disagrees with double perp".into());
        if let Some(o) = &oracle {
            let ann = o.annihilator_vertices(h);
            rep.check(g, ann == p, input.clone(), || format!("annihilator vertices {} differ from perp", ann.display(g)));
        }
        perps.push(p);
    }
    for (i, a) in lat.sets().iter().enumerate() {
        for (j, b) in lat.sets().iter().enumerate() {
            if a.is_subset(b) {
                rep.check(g, perps[j].is_subset(&perps[i]), format!("{} {}", a.display(g), b.display(g)), || {
                    "perp is not antitone".into()
                });
            }
        }
    }
    if oracle.is_some() {
        rep.notes.push("annihilators cross-checked against the matrix representation".into());
    }
    Ok(rep)
}

/// Quotients of a graph satisfying (B) by regular sets satisfy (B).
pub fn verify_thm5(g: &KGraph, depth: u32) -> Result<TheoremReport, LabError> {
    let base = check_graph_b(g, depth);
    if base.aggregate != BStatus::Satisfied {
        return Err(BError::PreconditionFailed(format!("Condition (B) is {} on the graph", base.aggregate)).into());
    }
    let lat = enumerate_sh_lattice(g)?;
    let mut rep = TheoremReport::new("5", g);
    for h in lat.sets() {
        if !is_regular(g, h)? {
            continue;
        }
        rep.instances += 1;
        let q = quotient_graph(g, h)?;
        let report = check_graph_b(&q, depth);
        let bad: Vec<&str> = report
            .verdicts
            .iter()
            .filter(|(_, b)| b.status() == BStatus::Violated)
            .map(|(v, _)| q.vertex_name(*v))
            .collect();
        rep.check(g, bad.is_empty(), h.display(g).to_string(), || {
            format!("quotient violates (B) at {}", bad.join(","))
        });
        if bad.is_empty() && report.aggregate == BStatus::Unknown {
            rep.undecided += 1;
            rep.notes.push(format!("{}: unknown at depth {depth}", h.display(g)));
        }
    }
    Ok(rep)
}

/// Carry a path of `Λ∖H` into `Λ` by names.
fn lift(g: &KGraph, q: &KGraph, p: &Path) -> Path {
    if p.is_vertex() {
        return g.vertex_path(g.vertex_id(q.vertex_name(p.range())).unwrap());
    }
    let word: Vec<_> = p.edges().iter().map(|&e| g.edge_id(&q.edge(e).name).unwrap()).collect();
    g.path_from_edges(&word).expect("quotient paths are paths of the graph")
}

fn lift_element(g: &KGraph, q: &KGraph, x: &KPElement) -> KPElement {
    KPElement::from_terms(x.terms().map(|(a, b, c)| ((lift(g, q, a), lift(g, q, b)), c.clone())))
}

/// `KP(Λ∖H) ≅ KP(Λ)/I(H)` on a graph with no cycles: dimensions by matrix
/// rank, and products of generators of `Λ∖H` agree modulo `I(H)`.
pub fn verify_quotient_iso(g: &KGraph, h: &VertexSet) -> Result<TheoremReport, LabError> {
    let q = quotient_graph(g, h)?;
    let mut rep = TheoremReport::new("quotient", g);
    let input = h.display(g).to_string();
    let o = build_rep_oracle(g)?;
    let oq = build_rep_oracle(&q)?;
    let (whole, ideal, quot) = (o.algebra_dimension(), o.ideal_dimension(h), oq.algebra_dimension());
    rep.instances += 1;
    rep.check(g, whole == quot + ideal, input.clone(), || {
        format!("dim KP(Λ) = {whole}, dim I(H) = {ideal}, dim KP(Λ∖H) = {quot}")
    });
    rep.notes.push(format!("dimensions {whole} = {quot} + {ideal}"));

    let (alg, aq) = (Algebra::new(g)?, Algebra::new(&q)?);
    let mut gens: Vec<KPElement> = q.vertices().map(|v| aq.gen_p(v)).collect();
    for e in q.edge_ids() {
        let l = q.edge_path(e);
        gens.push(aq.gen_s(&l));
        gens.push(aq.gen_sstar(&l));
    }
    for x in &gens {
        for y in &gens {
            rep.instances += 1;
            let there = lift_element(g, &q, &aq.multiply(x, y));
            let here = alg.multiply(&lift_element(g, &q, x), &lift_element(g, &q, y));
            let ok = alg.ideal_membership(&(&there - &here), h)?;
            rep.check(g, ok, format!("{input} {} {}", x.display(&q), y.display(&q)), || {
                "generator product not preserved modulo I(H)".into()
            });
        }
    }
    Ok(rep)
}

/// Test ideals: each vertex projection and edge, `p_v - s_e s_{e*}`, and
/// `p_v + s_e` for loops `e`.
fn test_ideals(alg: &Algebra) -> Vec<(String, Vec<KPElement>)> {
    let g = alg.graph();
    let mut out: Vec<(String, Vec<KPElement>)> = Vec::new();
    for v in g.vertices() {
        out.push((format!("<p({})>", g.vertex_name(v)), vec![alg.gen_p(v)]));
    }
    for e in g.edge_ids() {
        let l = g.edge_path(e);
        let name = &g.edge(e).name;
        let v = l.range();
        let (p, s) = (alg.gen_p(v), alg.gen_s(&l));
        out.push((format!("<s({name})>"), vec![s.clone()]));
        let ss = alg.multiply(&s, &alg.gen_sstar(&l));
        out.push((format!("<p({}) - s({name})*sstar({name})>", g.vertex_name(v)), vec![&p - &ss]));
        if l.source() == v {
            out.push((format!("<p({}) + s({name})>", g.vertex_name(v)), vec![&p + &s]));
        }
    }
    out
}

/// For finitely generated `J`: `H(J)` is bracketed between the sandwich
/// closure (a subset) and the least `K` with `J ⊆ I(K)` (a superset). When
/// they meet, `I(H(J))` is confirmed the largest basic graded ideal in `J`,
/// and `J = I(H(J))`; instances where they do not meet are undecided.
pub fn verify_thm31_33(g: &KGraph, depth: u32) -> Result<TheoremReport, LabError> {
    let lat = enumerate_sh_lattice(g)?;
    let alg = Algebra::new(g)?;
    let mut rep = TheoremReport::new("31/33", g);
    for (name, gens) in test_ideals(&alg) {
        rep.instances += 1;
        let lower = alg.vertex_set_of_ideal(&gens);
        let mut upper = VertexSet::full(g);
        for k in lat.sets() {
            let mut inside = true;
            for x in &gens {
                inside &= alg.ideal_membership(x, k)?;
            }
            if inside {
                upper = upper.intersection(g, k);
            }
        }
        rep.check(g, lower.is_subset(&upper), name.clone(), || {
            format!("lower bound {} exceeds upper bound {}", lower.display(g), upper.display(g))
        });
        if lower != upper {
            rep.undecided += 1;
            rep.notes.push(format!("{name}: H(J) between {} and {}", lower.display(g), upper.display(g)));
            continue;
        }
        let b = check_graph_b(&quotient_graph(g, &lower)?, depth).aggregate;
        let extra = if b == BStatus::Satisfied { ", quotient satisfies (B), J = I(H(J))" } else { "" };
        rep.notes.push(format!("{name}: H(J) = {}{extra}", lower.display(g)));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::io::parse_kgraph;

    fn set(g: &KGraph, names: &[&str]) -> VertexSet {
        VertexSet::from_names(g, names).unwrap()
    }

    #[test]
    fn lattice_iso_examples() {
        for (g, n) in [
            (fixtures::omega_2_11(), 2),
            (fixtures::g1(), 3),
            (parse_kgraph("kgraph 1 k=1\nvertex u\nvertex w\n").unwrap(), 4),
        ] {
            let r = verify_lattice_iso(&g).unwrap();
            assert_eq!(r.status(), ReportStatus::Pass, "{}", r.to_text());
            assert_eq!(r.instances, n);
        }
    }

    #[test]
    fn thm3_examples() {
        for g in [fixtures::g1(), fixtures::g5(), fixtures::omega_2_11(), fixtures::g2()] {
            let r = verify_thm3(&g).unwrap();
            assert_eq!(r.status(), ReportStatus::Pass, "{}", r.to_text());
        }
        let r = verify_thm3(&fixtures::omega_2_11()).unwrap();
        assert!(r.notes.iter().any(|n| n.contains("annihilators")));
    }

    #[test]
    fn thm5_examples() {
        let r = verify_thm5(&fixtures::g5(), 8).unwrap();
        assert_eq!(r.status(), ReportStatus::Pass, "{}", r.to_text());
        assert!(r.instances >= 2);
        assert!(matches!(
            verify_thm5(&fixtures::g1(), 8),
            Err(LabError::ConditionB(BError::PreconditionFailed(_)))
        ));
    }

    #[test]
    fn quotient_iso_examples() {
        let g = fixtures::omega_2_11();
        let r = verify_quotient_iso(&g, &VertexSet::full(&g)).unwrap();
        assert_eq!(r.status(), ReportStatus::Pass);
        assert!(r.notes[0].contains("16 = 0 + 16"));
        let r = verify_quotient_iso(&g, &VertexSet::empty(&g)).unwrap();
        assert!(r.notes[0].contains("16 = 16 + 0"));
        // an edgeless vertex beside a→b→c gives a proper sh set
        let g = parse_kgraph("kgraph 1 k=1\nvertex a\nvertex b\nvertex c\nvertex z\nedge e a b 1\nedge f b c 1\n").unwrap();
        let h = set(&g, &["a", "b", "c"]);
        let r = verify_quotient_iso(&g, &h).unwrap();
        assert_eq!(r.status(), ReportStatus::Pass, "{}", r.to_text());
        assert!(r.notes[0].contains("10 = 1 + 9"), "{:?}", r.notes);
        assert!(matches!(verify_quotient_iso(&fixtures::g1(), &set(&fixtures::g1(), &["b"])), Err(LabError::Algebra(_))));
        assert!(matches!(verify_quotient_iso(&g, &set(&g, &["a"])), Err(LabError::Lattice(_))));
    }

    #[test]
    fn thm31_33_examples() {
        let g = fixtures::g1();
        let r = verify_thm31_33(&g, 8).unwrap();
        assert_ne!(r.status(), ReportStatus::Fail, "{}", r.to_text());
        assert!(r.notes.iter().any(|n| n == "<p(b)>: H(J) = {b}"), "{:?}", r.notes);
        assert!(r.notes.iter().any(|n| n.starts_with("<s(e)>: H(J) = {b}")), "{:?}", r.notes);
        // 1 + f at the exit-less cycle is not basic
        assert!(r.notes.iter().any(|n| n == "<p(b) + s(f)>: H(J) between {} and {b}"), "{:?}", r.notes);
        assert_eq!(r.status(), ReportStatus::Partial);

        let g = fixtures::omega_2_11();
        let r = verify_thm31_33(&g, 8).unwrap();
        assert_eq!(r.status(), ReportStatus::Pass, "{}", r.to_text());
        assert!(r.notes.iter().all(|n| n.contains("H(J) = {")));

        let r = verify_thm31_33(&fixtures::g2(), 8).unwrap();
        assert_eq!(r.status(), ReportStatus::Pass, "{}", r.to_text());
    }

    #[test]
    fn report_text_and_reproducer() {
        let g = fixtures::g1();
        let mut r = TheoremReport::new("3", &g);
        r.instances = 1;
        r.check(&g, false, "{b}", || "example".into());
        let text = r.to_text();
        assert!(text.starts_with("theorem 3\ngraph k=1 vertices=2 edges=3 squares=0\ninstances 1\nundecided 0\nstatus fail\n"));
        assert!(text.contains("failure example\ninputs {b}\nreproducer\n  kgraph 1 k=1\n"));
        let back = r.failures[0].graph().unwrap();
        assert_eq!(serialize_kgraph(&back), serialize_kgraph(&g));
        let h = VertexSet::from_names(&back, &["b"]).unwrap();
        assert!(!is_regular(&back, &h).unwrap());
    }
}
