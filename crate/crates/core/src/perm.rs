//! Permutation groups on a small point set.
//!
//! [`PermGroup`] keeps a stabilizer chain built by Schreier–Sims over a
//! fixed full base `0, 1, …, degree-1`, which gives exact orders and
//! membership. [`normalizer_in_classes`] computes the normalizer of a group
//! inside the class-preserving permutations of its points by backtracking
//! with pair-invariant pruning.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::limits;

/// A permutation stored as its image list: `p[x]` is the image of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn from_images(images: &[usize]) -> Self {
        debug_assert!(is_permutation(images));
        Perm(images.iter().map(|&x| x as u8).collect())
    }

    /// Swaps the points of `a` with the points of `b`, position by position.
    pub fn swapping(n: usize, a: &[usize], b: &[usize]) -> Self {
        let mut p = Self::identity(n);
        for (&x, &y) in a.iter().zip(b) {
            p.0[x] = y as u8;
            p.0[y] = x as u8;
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize).collect()
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    /// `σ g σ⁻¹` with `self = σ`, as maps: `x -> σ(g(σ⁻¹(x)))`.
    pub fn conjugate(&self, g: &Perm) -> Perm {
        self.inverse().then(g).then(self)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }
}

pub fn is_permutation(images: &[usize]) -> bool {
    let mut seen = vec![false; images.len()];
    images.iter().all(|&x| x < images.len() && !std::mem::replace(&mut seen[x], true))
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// `transversal[p]` maps the base point to `p`, for `p` in the orbit.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Perm::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            transversal,
            orbit: vec![base],
        }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Perm::identity(degree));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let q = self.orbit[i];
            i += 1;
            for s in &self.gens {
                let r = s.apply(q);
                if self.transversal[r].is_none() {
                    let u = self.transversal[q].as_ref().expect("orbit point").then(s);
                    self.transversal[r] = Some(u);
                    self.orbit.push(r);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new())
    }

    pub fn new(degree: usize, gens: Vec<Perm>) -> Self {
        let mut g = PermGroup {
            degree,
            gens: Vec::new(),
            levels: (0..degree).map(|b| Level::new(b, degree)).collect(),
        };
        for s in gens {
            g.add_generator(s);
        }
        g
    }

    /// Full symmetric group on each class of points.
    pub fn class_preserving(classes: &[usize]) -> Self {
        let n = classes.len();
        let mut gens = Vec::new();
        let mut seen = HashSet::new();
        for &c in classes {
            if !seen.insert(c) {
                continue;
            }
            let pts: Vec<usize> = (0..n).filter(|&p| classes[p] == c).collect();
            if pts.len() < 2 {
                continue;
            }
            gens.push(Perm::swapping(n, &pts[..1], &pts[1..2]));
            let mut cycle = Perm::identity(n).images();
            for w in 0..pts.len() {
                cycle[pts[w]] = pts[(w + 1) % pts.len()];
            }
            gens.push(Perm::from_images(&cycle));
        }
        Self::new(n, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let (residue, _) = self.strip(g.clone(), 0);
        residue.is_identity()
    }

    /// Adds a generator; returns false if it was already a member.
    pub fn add_generator(&mut self, g: Perm) -> bool {
        assert_eq!(g.degree(), self.degree, "degree mismatch");
        if self.contains(&g) {
            return false;
        }
        self.gens.push(g.clone());
        self.extend_level(0, g);
        true
    }

    fn strip(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let p = g.apply(level.base);
            match &level.transversal[p] {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    /// `g` fixes the first `i` base points.
    fn extend_level(&mut self, i: usize, g: Perm) {
        self.levels[i].gens.push(g);
        self.levels[i].rebuild_orbit();
        let level = self.levels[i].clone();
        for &q in &level.orbit {
            for s in &level.gens {
                let uq = level.transversal[q].as_ref().expect("orbit point");
                let r = s.apply(q);
                let ur = level.transversal[r].as_ref().expect("orbit closed");
                let schreier = uq.then(s).then(&ur.inverse());
                let (residue, _) = self.strip(schreier, i + 1);
                if !residue.is_identity() {
                    self.extend_level(i + 1, residue);
                }
            }
        }
    }

    /// Orbit of the base point `i` under the pointwise stabilizer of the
    /// points `0..i`.
    pub fn stabilizer_orbit(&self, i: usize) -> &[usize] {
        &self.levels[i].orbit
    }

    /// Orbit of `p` under the whole group.
    pub fn orbit(&self, p: usize) -> Vec<usize> {
        orbit_under(&self.gens, self.degree, p)
    }

    /// Every element, for small groups.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &p in &level.orbit {
                let u = level.transversal[p].as_ref().expect("orbit point");
                for g in &out {
                    next.push(g.then(u));
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// The group as a Cayley table over its sorted element list, which puts
    /// the identity at index 0. `table[i][j]` applies `j` first.
    pub fn to_table(&self) -> Result<(FiniteGroup, Vec<Perm>)> {
        let order = self.order();
        if order > limits::MAX_TABLE_ORDER as u128 {
            return Err(Error::CapExceeded {
                what: "permutation group table",
                order: usize::try_from(order).unwrap_or(usize::MAX),
                cap: limits::MAX_TABLE_ORDER,
            });
        }
        let elems = self.elements();
        let m = elems.len();
        let mut flat = Vec::with_capacity(m * m);
        for a in &elems {
            for b in &elems {
                let k = elems.binary_search(&b.then(a)).expect("closed");
                flat.push(k as u32);
            }
        }
        Ok((FiniteGroup::from_flat_unchecked(m, flat, None), elems))
    }

    /// Whether `σ H σ⁻¹ = H` for `σ = sigma`.
    pub fn is_normalized_by(&self, sigma: &Perm) -> bool {
        self.gens.iter().all(|g| self.contains(&sigma.conjugate(g)))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && other.gens.iter().all(|g| self.contains(g))
    }

    /// Pointwise stabilizer of `p`, as a group on the same points.
    pub fn stabilizer(&self, p: usize) -> PermGroup {
        // rebuild with p first in the base by relabeling points
        let n = self.degree;
        let mut order: Vec<usize> = vec![p];
        order.extend((0..n).filter(|&x| x != p));
        let mut to = vec![0; n];
        for (i, &x) in order.iter().enumerate() {
            to[x] = i;
        }
        let relabel = Perm::from_images(&to);
        let moved: Vec<Perm> = self.gens.iter().map(|g| relabel.conjugate(g)).collect();
        let chain = PermGroup::new(n, moved);
        let back = relabel.inverse();
        let stab_gens = chain.levels[1..]
            .iter()
            .flat_map(|l| l.gens.iter())
            .map(|g| back.conjugate(g))
            .collect();
        PermGroup::new(n, stab_gens)
    }
}

fn orbit_under(gens: &[Perm], degree: usize, p: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[p] = true;
    let mut orbit = vec![p];
    let mut i = 0;
    while i < orbit.len() {
        let q = orbit[i];
        i += 1;
        for s in gens {
            let r = s.apply(q);
            if !seen[r] {
                seen[r] = true;
                orbit.push(r);
            }
        }
    }
    orbit.sort_unstable();
    orbit
}

/// Conjugation-invariant labels used to prune the normalizer search.
struct Invariants {
    point: Vec<(usize, usize, usize)>,
    pair: Vec<Vec<(usize, usize, bool)>>,
}

impl Invariants {
    fn of(h: &PermGroup, classes: &[usize]) -> Self {
        let n = h.degree();
        let orbit_id: Vec<usize> = (0..n).map(|p| h.orbit(p)[0]).collect();
        let orbit_len: Vec<usize> = (0..n).map(|p| h.orbit(p).len()).collect();
        let stabs: Vec<PermGroup> = (0..n).map(|p| h.stabilizer(p)).collect();
        // suborbit_len[p][q] = |H_p · q|
        let suborbit_len: Vec<Vec<usize>> = stabs
            .iter()
            .map(|s| (0..n).map(|q| s.orbit(q).len()).collect())
            .collect();
        let point = (0..n)
            .map(|p| (classes[p], orbit_len[p], suborbit_len[p].iter().filter(|&&l| l == 1).count()))
            .collect();
        let pair = (0..n)
            .map(|p| {
                (0..n)
                    .map(|q| (suborbit_len[p][q], suborbit_len[q][p], orbit_id[p] == orbit_id[q]))
                    .collect()
            })
            .collect();
        Invariants { point, pair }
    }
}

/// Normalizer of `h` in the group of all permutations that preserve
/// `classes` (point `p` may only go to points of class `classes[p]`).
///
/// Works base point by base point from the bottom of the chain: once the
/// stabilizer of the first `d+1` points is known, each new orbit of point
/// `d` needs just one witness, found by a first-hit backtrack.
pub fn normalizer_in_classes(h: &PermGroup, classes: &[usize]) -> PermGroup {
    let n = h.degree();
    assert_eq!(classes.len(), n);
    let inv = Invariants::of(h, classes);
    let mut found = PermGroup::new(n, h.generators().to_vec());
    for d in (0..n).rev() {
        for t in d + 1..n {
            if inv.point[t] != inv.point[d] {
                continue;
            }
            if found.stabilizer_orbit(d).contains(&t) {
                continue;
            }
            if (0..d).any(|q| inv.pair[q][d] != inv.pair[q][t]) {
                continue;
            }
            let mut sigma: Vec<usize> = (0..d).collect();
            sigma.push(t);
            let mut used = vec![false; n];
            for &x in &sigma {
                used[x] = true;
            }
            if let Some(w) = extend_to_normalizer(h, &inv, &mut sigma, &mut used) {
                found.add_generator(w);
            }
        }
    }
    found
}

fn extend_to_normalizer(h: &PermGroup, inv: &Invariants, sigma: &mut Vec<usize>, used: &mut [bool]) -> Option<Perm> {
    let n = h.degree();
    let p = sigma.len();
    if p == n {
        let cand = Perm::from_images(sigma);
        return h.is_normalized_by(&cand).then_some(cand);
    }
    for t in 0..n {
        if used[t] || inv.point[t] != inv.point[p] {
            continue;
        }
        if (0..p).any(|q| inv.pair[q][p] != inv.pair[sigma[q]][t]) {
            continue;
        }
        sigma.push(t);
        used[t] = true;
        let hit = extend_to_normalizer(h, inv, sigma, used);
        used[t] = false;
        sigma.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// Normalizer by scanning every class-preserving permutation.
#[cfg(test)]
pub(crate) fn normalizer_by_scan(h: &PermGroup, classes: &[usize]) -> PermGroup {
    let ambient = PermGroup::class_preserving(classes);
    let mut out = PermGroup::trivial(h.degree());
    for sigma in ambient.elements() {
        if h.is_normalized_by(&sigma) {
            out.add_generator(sigma);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize, pts: &[usize]) -> Perm {
        let mut img: Vec<usize> = (0..n).collect();
        for w in 0..pts.len() {
            img[pts[w]] = pts[(w + 1) % pts.len()];
        }
        Perm::from_images(&img)
    }

    #[test]
    fn symmetric_orders() {
        for n in 1..=7 {
            let g = PermGroup::class_preserving(&vec![0; n]);
            assert_eq!(g.order(), (1..=n as u128).product::<u128>());
        }
    }

    #[test]
    fn dihedral_square() {
        // D8 acting on the corners of a square
        let g = PermGroup::new(4, vec![cycle(4, &[0, 1, 2, 3]), Perm::swapping(4, &[0], &[2])]);
        assert_eq!(g.order(), 8);
        assert!(g.contains(&cycle(4, &[0, 2])));
        assert!(!g.contains(&cycle(4, &[0, 1])));
        assert_eq!(g.elements().len(), 8);
    }

    #[test]
    fn stabilizer_order() {
        let g = PermGroup::class_preserving(&[0; 5]);
        assert_eq!(g.stabilizer(3).order(), 24);
        assert_eq!(g.stabilizer(3).orbit(3), vec![3]);
    }

    #[test]
    fn table_is_a_group() {
        let g = PermGroup::new(4, vec![cycle(4, &[0, 1, 2, 3]), Perm::swapping(4, &[0], &[2])]);
        let (t, elems) = g.to_table().unwrap();
        t.validate().unwrap();
        assert!(elems[0].is_identity());
        assert_eq!(t.center().order(), 2);
    }

    #[test]
    fn class_preserving_product() {
        let g = PermGroup::class_preserving(&[0, 1, 0, 1, 1, 2]);
        assert_eq!(g.order(), 2 * 6);
    }

    #[test]
    fn normalizer_matches_scan_on_small_cases() {
        let cases: Vec<(Vec<usize>, Vec<Perm>)> = vec![
            (vec![0; 4], vec![Perm::swapping(4, &[0], &[1])]),
            (vec![0; 4], vec![cycle(4, &[0, 1, 2, 3])]),
            (vec![0; 5], vec![cycle(5, &[0, 1, 2])]),
            (vec![0, 0, 0, 1, 1, 1], vec![cycle(6, &[0, 1, 2]), Perm::swapping(6, &[3], &[4])]),
            (vec![0; 6], vec![Perm::swapping(6, &[0, 1], &[2, 3])]),
            (vec![0; 6], vec![]),
        ];
        for (classes, gens) in cases {
            let h = PermGroup::new(classes.len(), gens);
            let fast = normalizer_in_classes(&h, &classes);
            let slow = normalizer_by_scan(&h, &classes);
            assert!(fast.same_group(&slow), "{classes:?}: {} vs {}", fast.order(), slow.order());
        }
    }
}
