//! Graph products: normal forms, the vertex actions, enumeration and the
//! composite system.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::*;
use hrg::graphprod::{
    composite_system, enumerate_group, gp_inverse, gp_multiply, is_normal, move_chain_to_normal, mu_prepend,
    mu_prepend_with_order, normal_words, normalize, normalize_with_order, GPWord, GraphOfGroups, NormalWord, Syllable,
    VertexOrder, VertexSystems,
};
use hrg::groups::IDENTITY;
use hrg::hrs::verify_system;

fn small_products() -> Vec<(String, GraphOfGroups)> {
    let mut out = two_vertex_products();
    out.push(("K3".into(), k3_z2()));
    out.push(("P3".into(), p3_z2_z3_z2()));
    out.push(("K2(S3,Z2)".into(), k2_s3_z2().0));
    out.push((
        "P4".into(),
        graph(vec![("a", z(2, "p")), ("b", z(3, "q")), ("c", z(2, "r")), ("d", z(2, "s"))], &[(0, 1), (1, 2), (2, 3)]),
    ));
    out.push((
        "C4".into(),
        graph(
            vec![("a", z(2, "p")), ("b", z(2, "q")), ("c", z(2, "r")), ("d", z(2, "s"))],
            &[(0, 1), (1, 2), (2, 3), (3, 0)],
        ),
    ));
    out
}

fn word_from(gp: &GraphOfGroups, picks: &[(usize, usize)]) -> GPWord {
    let syllables = picks
        .iter()
        .map(|&(v, k)| {
            let v = v % gp.vertex_count();
            Syllable::new(v, 1 + k % (gp.group(v).order() - 1))
        })
        .collect();
    GPWord::new(gp, syllables).unwrap()
}

fn picks(max: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((any::<usize>(), any::<usize>()), 0..max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn mu_is_an_action(which in 0usize..11, p in picks(7), v in any::<usize>(), a in any::<usize>(), b in any::<usize>()) {
        let (_, gp) = &small_products()[which];
        let x = normalize(gp, &word_from(gp, &p));
        let v = v % gp.vertex_count();
        let grp = gp.group(v);
        let (g, h) = (a % grp.order(), b % grp.order());
        prop_assert_eq!(mu_prepend(gp, v, IDENTITY, &x), x.clone());
        let lhs = mu_prepend(gp, v, g, &mu_prepend(gp, v, h, &x));
        prop_assert_eq!(lhs, mu_prepend(gp, v, grp.mul(g, h), &x));
        let y = mu_prepend(gp, v, g, &x);
        prop_assert!(is_normal(gp, &gp.default_order(), y.word()));
    }

    #[test]
    fn adjacent_vertex_actions_commute(which in 0usize..11, p in picks(7), a in any::<usize>(), b in any::<usize>()) {
        let (_, gp) = &small_products()[which];
        let x = normalize(gp, &word_from(gp, &p));
        for u in 0..gp.vertex_count() {
            for v in 0..gp.vertex_count() {
                if !gp.adjacent(u, v) {
                    continue;
                }
                let g = a % gp.group(u).order();
                let h = b % gp.group(v).order();
                prop_assert_eq!(
                    mu_prepend(gp, u, g, &mu_prepend(gp, v, h, &x)),
                    mu_prepend(gp, v, h, &mu_prepend(gp, u, g, &x))
                );
            }
        }
    }

    #[test]
    fn normalize_is_idempotent_and_respects_products(which in 0usize..11, p in picks(8), q in picks(8)) {
        let (_, gp) = &small_products()[which];
        let (w1, w2) = (word_from(gp, &p), word_from(gp, &q));
        let (x, y) = (normalize(gp, &w1), normalize(gp, &w2));
        prop_assert!(is_normal(gp, &gp.default_order(), x.word()));
        prop_assert_eq!(normalize(gp, x.word()), x.clone());
        prop_assert_eq!(gp_multiply(gp, &x, &y), normalize(gp, &w1.concat(&w2)));
        prop_assert!(gp_multiply(gp, &x, &gp_inverse(gp, &x)).is_empty());
        prop_assert!(gp_multiply(gp, &gp_inverse(gp, &x), &x).is_empty());
    }

    #[test]
    fn multiplication_is_associative(which in 0usize..11, p in picks(5), q in picks(5), r in picks(5)) {
        let (_, gp) = &small_products()[which];
        let (x, y, z) = (normalize(gp, &word_from(gp, &p)), normalize(gp, &word_from(gp, &q)), normalize(gp, &word_from(gp, &r)));
        prop_assert_eq!(
            gp_multiply(gp, &gp_multiply(gp, &x, &y), &z),
            gp_multiply(gp, &x, &gp_multiply(gp, &y, &z))
        );
        prop_assert_eq!(gp_multiply(gp, &NormalWord::identity(), &x), x.clone());
        prop_assert_eq!(gp_multiply(gp, &x, &NormalWord::identity()), x);
    }

    #[test]
    fn move_chains_reach_the_normal_form(which in 0usize..11, p in picks(9)) {
        let (_, gp) = &small_products()[which];
        let w = word_from(gp, &p);
        let chain = move_chain_to_normal(gp, &gp.default_order(), &w);
        prop_assert_eq!(chain.first().unwrap(), &w);
        let nf = normalize(gp, &w);
        prop_assert_eq!(chain.last().unwrap(), nf.word());
        for pair in chain.windows(2) {
            prop_assert!(pair[1].len() <= pair[0].len());
            prop_assert!(hrg::graphprod::elementary_neighbors(gp, &pair[0], 0).contains(&pair[1]));
        }
        if nf.len() == w.len() {
            // Reduced input: swaps only.
            for pair in chain.windows(2) {
                prop_assert_eq!(pair[0].len(), pair[1].len());
                let a: BTreeSet<_> = pair[0].syllables().iter().collect();
                let b: BTreeSet<_> = pair[1].syllables().iter().collect();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn rotated_orders_give_the_same_element(which in 0usize..11, p in picks(8), first in any::<usize>()) {
        let (_, gp) = &small_products()[which];
        let w = word_from(gp, &p);
        let order = VertexOrder::rotated(gp.vertex_count(), first % gp.vertex_count());
        let rotated = normalize_with_order(gp, &order, &w);
        prop_assert!(is_normal(gp, &order, rotated.word()));
        prop_assert_eq!(rotated.len(), normalize(gp, &w).len());
        prop_assert_eq!(normalize(gp, rotated.word()), normalize(gp, &w));
        prop_assert_eq!(
            mu_prepend_with_order(gp, &order, 0, IDENTITY, &rotated),
            rotated
        );
    }
}

#[test]
fn normalize_is_constant_on_move_classes() {
    for (name, gp) in two_vertex_products() {
        for class in move_classes(&gp, 4) {
            let nf = normalize(&gp, &class[0]);
            let shortest = class.iter().map(GPWord::len).min().unwrap();
            assert_eq!(shortest, nf.len(), "{name}");
            assert!(class.contains(nf.word()), "{name}");
            for w in &class {
                assert_eq!(normalize(&gp, w), nf, "{name}");
            }
        }
    }
}

#[test]
fn normal_words_are_normal_forms() {
    for (name, gp) in small_products() {
        let order = gp.default_order();
        let words = normal_words(&gp, &order, 5);
        let distinct: BTreeSet<&NormalWord> = words.iter().collect();
        assert_eq!(distinct.len(), words.len(), "{name}");
        for x in &words {
            assert_eq!(&normalize(&gp, x.word()), x, "{name}");
        }
        // Every word of length at most 3 normalizes into the generated set.
        for w in all_words(&gp, 3) {
            assert!(distinct.contains(&normalize(&gp, &w)), "{name}");
        }
    }
}

#[test]
fn complete_graph_products_have_product_order() {
    let cases = vec![
        (k2_z2_z3(), 6),
        (k3_z2(), 8),
        (k2_s3_z2().0, 12),
        (graph(vec![("u", z(3, "a")), ("v", z(3, "b")), ("w", z(2, "c"))], &[(0, 1), (0, 2), (1, 2)]), 18),
    ];
    for (gp, order) in cases {
        let e = enumerate_group(&gp, 1000).unwrap();
        assert_eq!(e.group.order(), order);
        assert_eq!(e.normal_forms.len(), order);
        let distinct: BTreeSet<&NormalWord> = e.normal_forms.iter().collect();
        assert_eq!(distinct.len(), order);
        for (i, x) in e.normal_forms.iter().enumerate() {
            assert_eq!(e.element_of(x), Some(i));
        }
    }
}

#[test]
fn single_vertex_product_is_the_vertex_group() {
    for g in [z(5, "x"), hrg::FiniteGroup::symmetric(4, None, 100).unwrap()] {
        let gp = graph(vec![("u", g.clone())], &[]);
        let e = enumerate_group(&gp, 1000).unwrap();
        assert_eq!(e.group.order(), g.order());
        let phi = &e.embeddings[0];
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(phi[g.mul(a, b)], e.group.mul(phi[a], phi[b]));
            }
        }
        assert_eq!(phi.iter().collect::<BTreeSet<_>>().len(), g.order());
    }
}

#[test]
fn infinite_products_hit_the_cap() {
    for gp in [p3_z2_z3_z2(), free_z2_z3(), graph(vec![("u", z(2, "a")), ("v", z(2, "b"))], &[])] {
        assert!(matches!(
            enumerate_group(&gp, 200),
            Err(hrg::graphprod::GraphProductError::InfiniteOrCapExceeded { cap: 200 })
        ));
    }
}

#[test]
fn enumeration_layers_are_sorted() {
    let e = enumerate_group(&k2_s3_z2().0, 100).unwrap();
    for pair in e.normal_forms.windows(2) {
        assert!((pair[0].len(), pair[0].syllables()) < (pair[1].len(), pair[1].syllables()));
    }
}

fn composite_cases() -> Vec<(String, GraphOfGroups, VertexSystems)> {
    let mut out = Vec::new();
    for (name, gp) in [("K2(Z2,Z3)", k2_z2_z3()), ("K3(Z2,Z2,Z2)", k3_z2())] {
        let systems = VertexSystems::trivial(&gp);
        out.push((name.to_string(), gp, systems));
    }
    let (gp, systems) = k2_s3_z2();
    out.push(("K2(S3,Z2)".into(), gp, systems));
    // Z3 x Z3 with its factor system at one vertex of an edge with Z2.
    let z3z3 = hrg::FiniteGroup::direct_product(&[z(3, "x"), z(3, "y")], 100).unwrap();
    let sigma = vec![generated(&z3z3, &["x"]), generated(&z3z3, &["y"])];
    let gp = graph(vec![("u", z3z3), ("v", z(2, "a"))], &[(0, 1)]);
    let systems = VertexSystems::new(&gp, vec![(0, sigma)]).unwrap();
    out.push(("K2(Z3xZ3,Z2)".into(), gp, systems));
    out
}

#[test]
fn composite_systems_are_hyperreflection_systems() {
    for (name, gp, systems) in composite_cases() {
        let c = composite_system(&gp, &systems, 1000).unwrap();
        assert!(verify_system(&c.system).pass, "{name}");
        checks_member_images(&c);
    }
}

fn checks_member_images(c: &hrg::graphprod::CompositeSystem) {
    for (k, &(v, _)) in c.origins.iter().enumerate() {
        assert!(c.system.sigma()[k].is_subset(&c.product.vertex_subgroups[v]));
    }
}

#[test]
fn minimum_weight_representatives_match_chambers() {
    for (name, gp, systems) in composite_cases() {
        let c = composite_system(&gp, &systems, 1000).unwrap();
        check_min_weight_chambers(&gp, &systems, &c).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn chamber_predicate_on_infinite_products() {
    for gp in [free_z2_z3(), p3_z2_z3_z2()] {
        let systems = VertexSystems::trivial(&gp);
        let words = normal_words(&gp, &gp.default_order(), 5);
        check_chamber_predicate(&gp, &systems, &words).unwrap();
    }
}

#[test]
fn chambers_are_complement_components() {
    // The chamber label names the component of g in the wall's complement.
    for (name, gp, systems) in composite_cases() {
        let c = composite_system(&gp, &systems, 1000).unwrap();
        for (k, &(v, i)) in c.origins.iter().enumerate() {
            let report = hrg::hrs::is_hyperreflection(&c.system, k).unwrap();
            for g in c.product.group.elements() {
                let label = hrg::graphprod::chamber_of(&gp, &systems, v, i, &c.product.normal_forms[g]).unwrap();
                let image = c.product.embeddings[v][label];
                let component = report.components.block_of(g);
                let expected = report.action_map.iter().find(|(s, _)| *s == image).unwrap().1;
                assert_eq!(component, expected, "{name}");
            }
        }
    }
}
