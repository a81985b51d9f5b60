mod common;

use common::*;
use pisgenus::genus::{genus_bounds, kmn_genus, kn_genus, rotation_genus, trace_faces, Budget, RotationSystem};
use pisgenus::graph::LabeledGraph;

fn exact(n: usize, edges: &[(usize, usize)]) -> (usize, Option<usize>) {
    let g = LabeledGraph::from_edges(n, edges.iter().copied());
    let b = genus_bounds(&g, &Budget::default()).unwrap();
    (b.lower, b.upper)
}

#[test]
fn solver_matches_brute_force_on_small_graphs() {
    let petersen: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)])
        .collect();
    let cases: Vec<(&str, usize, Vec<(usize, usize)>)> = vec![
        ("K4", 4, complete_edges(4)),
        ("K5", 5, complete_edges(5)),
        ("K3,3", 6, bipartite_edges(3, 3)),
        ("K3,4", 7, bipartite_edges(3, 4)),
        ("Petersen", 10, petersen),
    ];
    for (name, n, edges) in cases {
        let want = brute_genus(n, &edges);
        assert_eq!(exact(n, &edges), (want, Some(want)), "{name}");
    }
}

#[test]
fn formulas_match_brute_force() {
    assert_eq!(brute_genus(5, &complete_edges(5)), kn_genus(5));
    assert_eq!(brute_genus(6, &bipartite_edges(3, 3)), kmn_genus(3, 3));
    assert_eq!(brute_genus(7, &bipartite_edges(3, 4)), kmn_genus(3, 4));
}

#[test]
fn face_tracing_agrees_with_oracle() {
    let g = LabeledGraph::complete(5);
    let rot: Vec<Vec<usize>> = (0..5).map(|v| g.neighbors(v).collect()).collect();
    let lib = trace_faces(&g, &RotationSystem::new(rot.clone())).unwrap();
    let mut a: Vec<usize> = lib.faces.iter().map(Vec::len).collect();
    let mut b = face_lengths(&rot);
    a.sort_unstable();
    b.sort_unstable();
    assert_eq!(a, b);
    assert_eq!(rotation_genus(&g, &RotationSystem::new(rot)).unwrap(), (2 + 10 - 5 - b.len()) / 2);
}

#[test]
fn disconnected_and_bridged_graphs() {
    // two K5 joined by a bridge, and two disjoint K3,3
    let mut edges = complete_edges(5);
    edges.extend(complete_edges(5).into_iter().map(|(u, v)| (u + 5, v + 5)));
    edges.push((0, 5));
    assert_eq!(exact(10, &edges), (2, Some(2)));
    let mut edges = bipartite_edges(3, 3);
    edges.extend(bipartite_edges(3, 3).into_iter().map(|(u, v)| (u + 6, v + 6)));
    assert_eq!(exact(12, &edges), (2, Some(2)));
}
