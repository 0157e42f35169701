use std::sync::OnceLock;

use proptest::prelude::*;

use towerlab::automorphism::AutGroup;
use towerlab::tower::limit_colimit;
use towerlab::{automorphism_group, construct_named, find_isomorphism, run_tower, Budget, FiniteGroup, Homomorphism, Ordinal};

const SPECS: [&str; 12] = [
    "S3", "D8", "Q8", "C2xC2", "A4", "D10", "C4xC2", "C3xC3", "Dic12", "D12", "S4", "C5:C4",
];

fn auts() -> &'static [AutGroup] {
    static AUTS: OnceLock<Vec<AutGroup>> = OnceLock::new();
    AUTS.get_or_init(|| {
        SPECS
            .iter()
            .map(|s| automorphism_group(&construct_named(s).unwrap()).unwrap())
            .collect()
    })
}

fn aut_and_pick() -> impl Strategy<Value = (usize, usize, usize)> {
    (0..SPECS.len()).prop_flat_map(|i| {
        let a = &auts()[i];
        (Just(i), 0..a.order(), 0..a.base.order())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn naturality((i, theta, g) in aut_and_pick()) {
        let a = &auts()[i];
        let aut = &a.group;
        let lhs = aut.mul(aut.mul(theta, a.inner(g)), aut.inv(theta));
        prop_assert_eq!(lhs, a.inner(a.realization[theta][g]));

        // the same law on the base elements directly
        let t = &a.realization[theta];
        let t_inv = &a.realization[aut.inv(theta)];
        for x in 0..a.base.order() {
            let direct = t[a.base.conj(g, t_inv[x])];
            prop_assert_eq!(direct, a.base.conj(t[g], x));
        }
    }
}

fn relabel(g: &FiniteGroup, perm: &[usize]) -> Vec<Vec<usize>> {
    // table of the group transported along `perm`, with the identity kept at 0
    let n = g.order();
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    (0..n)
        .map(|x| (0..n).map(|y| perm[g.mul(inv[x], inv[y])]).collect())
        .collect()
}

fn naive_associative(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn transported_tables_are_groups(spec in prop::sample::select(&SPECS[..]), seed in any::<u64>()) {
        let g = construct_named(spec).unwrap();
        let n = g.order();
        let mut perm: Vec<usize> = (1..n).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        perm.insert(0, 0);
        let h = FiniteGroup::from_cayley_table(n, relabel(&g, &perm), None).unwrap();
        prop_assert!(find_isomorphism(&g, &h).is_some());
    }

    #[test]
    fn associativity_check_agrees_with_naive(spec in prop::sample::select(&SPECS[..]), pick in any::<prop::sample::Index>()) {
        // swapping the two symbols of an intercalate away from the identity
        // row and column keeps a Latin square, usually a non-associative one
        let g = construct_named(spec).unwrap();
        let n = g.order();
        let mut quads = Vec::new();
        for x in 1..n {
            for y in x + 1..n {
                for u in 1..n {
                    for v in u + 1..n {
                        if g.mul(x, u) == g.mul(y, v) && g.mul(x, v) == g.mul(y, u) {
                            quads.push((x, y, u, v));
                        }
                    }
                }
            }
        }
        prop_assume!(!quads.is_empty());
        let (x, y, u, v) = quads[pick.index(quads.len())];
        let mut t = g.table_rows();
        let (p, q) = (t[x][u], t[x][v]);
        t[x][u] = q;
        t[y][v] = q;
        t[x][v] = p;
        t[y][u] = p;
        let accepted = FiniteGroup::from_cayley_table(n, t.clone(), None).is_ok();
        prop_assert_eq!(accepted, naive_associative(&t));
    }
}

#[test]
fn maps_compose_along_runs() {
    for spec in ["D8", "C4xC2", "C3xC3", "D12", "S3xC3", "C15", "Q8"] {
        let run = run_tower(&construct_named(spec).unwrap(), Budget::default());
        let pos = run.positions();
        for (i, &a) in pos.iter().enumerate() {
            for (j, &b) in pos.iter().enumerate().skip(i + 1) {
                let ab = run.compose_maps(a, b).unwrap();
                assert!(ab.verify(run.stage(a).unwrap(), run.stage(b).unwrap()), "{spec} {a} {b}");
                for &c in &pos[j + 1..] {
                    let direct = run.compose_maps(a, c).unwrap();
                    assert_eq!(direct, ab.then(&run.compose_maps(b, c).unwrap()), "{spec} {a} {b} {c}");
                }
            }
        }
    }
}

#[test]
fn limit_projections_are_compatible_surjections() {
    for spec in ["D8", "C4xC2", "C3xC3", "D12", "S4xC2", "Dic20"] {
        let run = run_tower(&construct_named(spec).unwrap(), Budget::default());
        let block = &run.blocks[0];
        let c = block.colimit.as_ref().unwrap();
        let start = block.period.as_ref().unwrap().start;
        for (i, proj) in c.projections.iter().enumerate() {
            assert!(proj.verify(&block.stages[i], &c.group));
            if i >= start {
                assert_eq!(proj.image_set().len(), c.group.order(), "{spec} stage {i}");
            }
            if i + 1 < c.projections.len() {
                assert_eq!(*proj, block.succ_maps[i].then(&c.projections[i + 1]));
            }
        }
        assert_eq!(run.stage(Ordinal::OMEGA), Some(&c.group));
    }
}

#[test]
fn limit_does_not_depend_on_the_period_witness() {
    for spec in ["D8", "C4xC2", "D12", "C3xC3"] {
        let run = run_tower(&construct_named(spec).unwrap(), Budget::default());
        let block = &run.blocks[0];
        let period = block.period.as_ref().unwrap();
        let base = limit_colimit(block, period);
        let a = automorphism_group(&block.stages[period.start]).unwrap();
        for images in &a.realization {
            let alpha = Homomorphism {
                source_order: images.len(),
                target_order: images.len(),
                image: images.clone(),
            };
            let mut other = period.clone();
            other.witness = alpha.then(&period.witness);
            let c = limit_colimit(block, &other);
            assert_eq!(c.group.order(), base.group.order(), "{spec}");
            assert!(find_isomorphism(&c.group, &base.group).is_some(), "{spec}");
        }
    }
}

#[test]
fn normalizers_contain_centralizers() {
    for e in towerlab::catalog::catalog_list(24).unwrap() {
        let g = &e.group;
        for x in 0..g.order() {
            let s = g.subgroup_generated(&[x]);
            let n = g.normalizer_in(&s).unwrap();
            let c = g.centralizer_in(&s).unwrap();
            assert!(s.is_subset_of(&n) && c.is_subset_of(&n), "{} {x}", e.spec);
        }
    }
}
