#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use towerlab::graph::{unit_graph, ColoredGraph, UNIT_COUNT};
use towerlab::FiniteGroup;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Every automorphism, found by walking all bijections element by element
/// and cutting a branch as soon as an assigned product disagrees.
pub fn brute_force_automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
    fn walk(g: &FiniteGroup, map: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let k = map.len();
        let n = g.order();
        if k == n {
            out.push(map.clone());
            return;
        }
        for y in 0..n {
            if used[y] {
                continue;
            }
            map.push(y);
            let ok = (0..=k).all(|a| {
                (0..=k).all(|b| {
                    let ab = g.mul(a, b);
                    ab > k || map[ab] == g.mul(map[a], map[b])
                })
            });
            if ok {
                used[y] = true;
                walk(g, map, used, out);
                used[y] = false;
            }
            map.pop();
        }
    }
    let mut out = Vec::new();
    walk(g, &mut Vec::new(), &mut vec![false; g.order()], &mut out);
    out
}

pub fn brute_force_graph_automorphisms(g: &ColoredGraph) -> Vec<Vec<usize>> {
    permutations(g.vertex_count())
        .into_iter()
        .filter(|p| g.is_automorphism(p))
        .collect()
}

fn dense(colors: Vec<usize>) -> Vec<usize> {
    let mut seen: Vec<usize> = colors.clone();
    seen.sort_unstable();
    seen.dedup();
    colors.iter().map(|c| seen.binary_search(c).unwrap()).collect()
}

/// Small graphs: paths, cycles, complete and bipartite graphs, the unit
/// library, and seeded random colored graphs.
pub fn graph_corpus() -> Vec<ColoredGraph> {
    let mut out = Vec::new();
    for n in 1..=7 {
        let path: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        out.push(ColoredGraph::uncolored(n, &path).unwrap());
        if n >= 3 {
            let cycle: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            out.push(ColoredGraph::uncolored(n, &cycle).unwrap());
        }
        let complete: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        out.push(ColoredGraph::uncolored(n, &complete).unwrap());
        out.push(ColoredGraph::uncolored(n, &[]).unwrap());
    }
    let k33: Vec<_> = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
    out.push(ColoredGraph::uncolored(6, &k33).unwrap());
    let star: Vec<_> = (1..7).map(|i| (0, i)).collect();
    out.push(ColoredGraph::new(7, vec![0, 1, 1, 1, 2, 2, 2], &star).unwrap());
    let prism = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)];
    out.push(ColoredGraph::uncolored(6, &prism).unwrap());
    out.extend((0..UNIT_COUNT).map(|i| unit_graph(i).unwrap()));

    let mut rng = StdRng::seed_from_u64(0x70_77e5);
    for _ in 0..60 {
        let n = rng.gen_range(2..=7);
        let p = rng.gen_range(0.2..0.7);
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let palette = rng.gen_range(1..=3);
        let colors = dense((0..n).map(|_| rng.gen_range(0..palette)).collect());
        out.push(ColoredGraph::new(n, colors, &edges).unwrap());
    }
    out
}
