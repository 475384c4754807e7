use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kplat::condition_b::{check_graph_b_with, BStatus};
use kplat::io::{parse_kgraph, serialize_kgraph};
use kplat::kp::Algebra;
use kplat::lab::{generate, verify_lattice_iso, verify_thm3, ElementSampler, GenParams, ReportStatus};
use kplat::lattice::{
    bar_closure, double_perp, enumerate_sh_lattice, enumerate_sh_lattice_with, perp, sh_closure, DEFAULT_ENUMERATION_CAP,
};
use kplat::par::Mode;
use kplat::{Degree, KGraph};

fn graph() -> impl Strategy<Value = KGraph> {
    (1usize..=3, 1usize..=6, 0.05f64..0.6, any::<bool>(), any::<u64>()).prop_map(|(k, n, density, acyclic, seed)| {
        let vertices = if k == 3 { n.min(4) } else { n };
        generate(&GenParams { k, vertices, density, acyclic }, seed)
    })
}

fn one_or_two_graph() -> impl Strategy<Value = KGraph> {
    (1usize..=2, 1usize..=4, 0.1f64..0.5, any::<u64>())
        .prop_map(|(k, vertices, density, seed)| generate(&GenParams { k, vertices, density, acyclic: false }, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn documents_round_trip(g in graph()) {
        let text = serialize_kgraph(&g);
        let back = parse_kgraph(&text).unwrap();
        prop_assert_eq!(serialize_kgraph(&back), text);
    }

    #[test]
    fn factorization_splits_and_rejoins(g in graph()) {
        let top = Degree::uniform(g.k(), 2);
        for v in g.vertices() {
            for p in g.paths_upto(v, &top) {
                for m in p.degree().box_below() {
                    let zero = Degree::zero(g.k());
                    let head = g.segment(&p, &zero, &m).unwrap();
                    let tail = g.segment(&p, &m, p.degree()).unwrap();
                    prop_assert_eq!(g.compose(&head, &tail).unwrap(), p.clone());
                }
            }
        }
    }

    #[test]
    fn lattice_is_closed_and_ordered(g in graph()) {
        let lat = enumerate_sh_lattice(&g).unwrap();
        for h in lat.sets() {
            prop_assert!(h.is_sh());
            prop_assert_eq!(&sh_closure(&g, h.iter()), h);
        }
        for (i, j) in lat.hasse_edges() {
            prop_assert!(lat.sets()[*i].is_subset(&lat.sets()[*j]));
        }
        let seq = enumerate_sh_lattice_with(&g, DEFAULT_ENUMERATION_CAP, Mode::Sequential).unwrap();
        prop_assert_eq!(seq.sets(), lat.sets());
    }

    #[test]
    fn perp_identities(g in graph()) {
        let lat = enumerate_sh_lattice(&g).unwrap();
        for a in lat.sets() {
            let pa = perp(&g, a).unwrap();
            prop_assert_eq!(&pa, &bar_closure(&g, a).complement(&g));
            prop_assert_eq!(perp(&g, &double_perp(&g, a).unwrap()).unwrap(), pa.clone());
            for b in lat.sets().iter().filter(|b| a.is_subset(b)) {
                prop_assert!(perp(&g, b).unwrap().is_subset(&pa));
            }
        }
    }

    #[test]
    fn theorem_reports_pass(g in one_or_two_graph()) {
        let r = verify_lattice_iso(&g).unwrap();
        prop_assert_eq!(r.status(), ReportStatus::Pass, "{}", r.to_text());
        let r = verify_thm3(&g).unwrap();
        prop_assert_eq!(r.status(), ReportStatus::Pass, "{}", r.to_text());
    }

    #[test]
    fn condition_b_modes_agree(g in one_or_two_graph()) {
        let a = check_graph_b_with(&g, 4, Mode::Sequential);
        let b = check_graph_b_with(&g, 4, Mode::Parallel);
        prop_assert_eq!(a.summary(&g), b.summary(&g));
        if g.k() == 1 {
            prop_assert!(a.aggregate != BStatus::Unknown);
        }
    }

    #[test]
    fn algebra_laws(g in one_or_two_graph(), seed in any::<u64>()) {
        let alg = Algebra::new(&g).unwrap();
        let s = ElementSampler::new(&g, &Degree::uniform(g.k(), 1));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let (a, b, c) = (s.element(&mut rng, 2), s.element(&mut rng, 2), s.element(&mut rng, 2));
            let ab = alg.multiply(&a, &b);
            // associativity
            prop_assert!(alg.equals(&alg.multiply(&ab, &c), &alg.multiply(&a, &alg.multiply(&b, &c))));
            // distributivity
            let lhs = alg.multiply(&a, &(&b + &c));
            prop_assert!(alg.equals(&lhs, &(&ab + &alg.multiply(&a, &c))));
            // (ab)* = b* a*
            prop_assert!(alg.equals(&alg.star(&ab), &alg.multiply(&alg.star(&b), &alg.star(&a))));
            // the unit
            prop_assert!(alg.equals(&alg.multiply(&alg.one(), &a), &a));
            // normal forms are stable
            let nf = alg.normal_form(&a);
            prop_assert_eq!(alg.normal_form(&nf), nf.clone());
            let up = Degree::uniform(g.k(), 2);
            prop_assert!(alg.equals(&alg.expand_to_level(&a, &up).unwrap(), &a));
        }
    }

    #[test]
    fn ideals_absorb_products(g in one_or_two_graph(), seed in any::<u64>()) {
        let alg = Algebra::new(&g).unwrap();
        let lat = enumerate_sh_lattice(&g).unwrap();
        let s = ElementSampler::new(&g, &Degree::uniform(g.k(), 1));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for h in lat.sets() {
            for _ in 0..4 {
                let (x, y) = (s.element(&mut rng, 2), s.element(&mut rng, 2));
                if alg.ideal_membership(&x, h).unwrap() {
                    prop_assert!(alg.ideal_membership(&alg.multiply(&x, &y), h).unwrap());
                    prop_assert!(alg.ideal_membership(&alg.multiply(&y, &x), h).unwrap());
                }
                for v in h.iter() {
                    let z = alg.product(&[&x, &alg.gen_p(v), &y]);
                    prop_assert!(alg.ideal_membership(&z, h).unwrap());
                }
            }
        }
    }
}
