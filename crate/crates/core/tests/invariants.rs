mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::*;
use pisgenus::certcheck::check_certificate;
use pisgenus::classify::{predict, rule_hits, GenusClass};
use pisgenus::genus::{genus_bounds, trace_faces, Budget, RotationSystem};
use pisgenus::graph::LabeledGraph;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn faces_use_every_dart_once((n, edges, rot) in arb_rotation(8)) {
        let g = LabeledGraph::from_edges(n, edges.iter().copied());
        let t = trace_faces(&g, &RotationSystem::new(rot.clone())).unwrap();
        let total: usize = t.faces.iter().map(Vec::len).sum();
        prop_assert_eq!(total, 2 * edges.len());
        let darts: BTreeSet<(usize, usize)> = t.faces.iter().flatten().copied().collect();
        prop_assert_eq!(darts.len(), 2 * edges.len());
        prop_assert_eq!(t.face_count(), face_lengths(&rot).len());
    }

    #[test]
    fn euler_characteristic_is_even((n, edges, rot) in arb_rotation(8)) {
        let g = LabeledGraph::from_edges(n, edges.iter().copied());
        let t = trace_faces(&g, &RotationSystem::new(rot.clone())).unwrap();
        let mut comp: Vec<usize> = (0..n).collect();
        fn root(c: &mut [usize], v: usize) -> usize {
            if c[v] == v { v } else { let r = root(c, c[v]); c[v] = r; r }
        }
        for &(u, v) in &edges {
            let (a, b) = (root(&mut comp, u), root(&mut comp, v));
            comp[a] = b;
        }
        let components = (0..n).filter(|&v| root(&mut comp, v) == v).count();
        let isolated = (0..n).filter(|&v| rot[v].is_empty()).count();
        prop_assert_eq!(t.components, components);
        // an isolated vertex is a sphere with one face
        let defect = 2 * components as i64 - n as i64 + edges.len() as i64 - (t.face_count() + isolated) as i64;
        prop_assert!(defect >= 0 && defect % 2 == 0, "defect {}", defect);
        prop_assert_eq!(t.genus() as i64, defect / 2);
    }

    #[test]
    fn predict_is_total_and_order_free(profiles in arb_profiles(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let class = predict(&profiles).unwrap();
        prop_assert!(GenusClass::ALL.contains(&class));
        let mut shuffled = profiles.clone();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(predict(&shuffled).unwrap(), class);
        if profiles.len() >= 4 {
            prop_assert_eq!(class, GenusClass::AtLeastThree);
        }
    }

    #[test]
    fn at_most_one_class_applies(profiles in arb_profiles()) {
        let classes: BTreeSet<GenusClass> = rule_hits(&profiles).into_iter().map(|(c, _)| c).collect();
        prop_assert!(classes.len() <= 1, "{:?}", rule_hits(&profiles));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solver_is_exact_on_small_graphs((n, edges) in arb_graph(6)) {
        let g = LabeledGraph::from_edges(n, edges.iter().copied());
        prop_assume!(g.is_connected() && !edges.is_empty());
        let b = genus_bounds(&g, &Budget::default()).unwrap();
        let want = brute_genus(n, &edges);
        prop_assert_eq!((b.lower, b.upper), (want, Some(want)));
        let cert = serde_json::to_value(&b).unwrap();
        let r = check_certificate(&g, &cert).unwrap();
        prop_assert_eq!((r.lower, r.upper), (want, Some(want)));
    }

    #[test]
    fn graph_json_round_trip((n, edges) in arb_graph(10)) {
        let g = LabeledGraph::from_edges(n, edges.iter().copied());
        let back = LabeledGraph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.labels(), g.labels());
    }
}

#[test]
fn class_conditions_are_mutually_exclusive() {
    let all = all_profiles();
    let mut checked = 0usize;
    for a in &all {
        for b in &all {
            let classes: BTreeSet<GenusClass> =
                rule_hits(&[a.clone(), b.clone()]).into_iter().map(|(c, _)| c).collect();
            assert!(classes.len() <= 1, "{a:?} {b:?}");
            checked += 1;
            for c in &all {
                let classes: BTreeSet<GenusClass> =
                    rule_hits(&[a.clone(), b.clone(), c.clone()]).into_iter().map(|(c, _)| c).collect();
                assert!(classes.len() <= 1, "{a:?} {b:?} {c:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 10_000);
}
