use towerlab::graph::{are_isomorphic, find_graph_isomorphism, graph_automorphism_group, unit_graph, ColoredGraph, UNIT_COUNT};
use towerlab::find_isomorphism;
use towerlab::named::dihedral;

#[test]
fn units_are_pairwise_non_isomorphic() {
    for i in 0..UNIT_COUNT {
        for j in i + 1..UNIT_COUNT {
            assert!(!are_isomorphic(&unit_graph(i).unwrap(), &unit_graph(j).unwrap()).unwrap(), "{i} {j}");
        }
    }
}

#[test]
fn relabelled_graphs_are_isomorphic() {
    let petersen_outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    let mut edges = petersen_outer.clone();
    edges.extend((0..5).map(|i| (i, i + 5)));
    edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    let p = ColoredGraph::uncolored(10, &edges).unwrap();
    let relabel = [3, 7, 1, 9, 0, 5, 2, 8, 6, 4];
    let moved: Vec<_> = edges.iter().map(|&(u, v)| (relabel[u], relabel[v])).collect();
    let q = ColoredGraph::uncolored(10, &moved).unwrap();
    let m = find_graph_isomorphism(&p, &q).unwrap().unwrap();
    assert!(p.edges().iter().all(|&(u, v)| q.adjacent(m[u], m[v])));

    let a = graph_automorphism_group(&p).unwrap();
    assert_eq!(a.group.order(), 120);
    assert_eq!(a.group.center().order(), 1);
}

#[test]
fn colors_separate_otherwise_isomorphic_graphs() {
    let a = ColoredGraph::new(3, vec![0, 1, 0], &[(0, 1), (1, 2)]).unwrap();
    let b = ColoredGraph::new(3, vec![1, 0, 0], &[(0, 1), (1, 2)]).unwrap();
    assert!(!are_isomorphic(&a, &b).unwrap());
}

#[test]
fn cycle_automorphisms_are_dihedral() {
    for n in 3..=8 {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = graph_automorphism_group(&ColoredGraph::uncolored(n, &e).unwrap()).unwrap();
        g.group.validate().unwrap();
        let d = dihedral(2 * n).unwrap();
        assert!(find_isomorphism(&g.group, &d).is_some(), "C{n}");
    }
}
