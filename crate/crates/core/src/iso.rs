//! Isomorphism search by backtracking over images of a generating set.
//!
//! Images are tried in ascending index order, so the first witness found is
//! reproducible. Candidate images must match the element order of the
//! generator they stand in for, and each partial assignment is checked to
//! extend to an injective homomorphism on the subgroup it covers before the
//! next generator is tried.

use crate::group::{FiniteGroup, Homomorphism};

pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Homomorphism> {
    if g.order() != h.order() {
        return None;
    }
    if g.fingerprint() != h.fingerprint() {
        return None;
    }
    let gens = g.minimal_generating_set();
    let mut found = None;
    IsoSearch::new(g, h, &gens).run(&mut |image| {
        found = Some(image.to_vec());
        false
    });
    found.map(|image| Homomorphism::new(g, h, image))
}

/// Every isomorphism `g -> h` determined by images of `gens`, in search
/// order. `visit` returns `false` to stop early.
pub(crate) struct IsoSearch<'a> {
    src: &'a FiniteGroup,
    dst: &'a FiniteGroup,
    gens: &'a [usize],
    candidates: Vec<Vec<usize>>,
}

impl<'a> IsoSearch<'a> {
    pub(crate) fn new(src: &'a FiniteGroup, dst: &'a FiniteGroup, gens: &'a [usize]) -> Self {
        let dst_orders = dst.element_orders();
        let candidates = gens
            .iter()
            .map(|&g| {
                let o = src.element_order(g);
                (0..dst.order()).filter(|&x| dst_orders[x] == o).collect()
            })
            .collect();
        IsoSearch {
            src,
            dst,
            gens,
            candidates,
        }
    }

    /// Runs the search. `visit` receives each full image table.
    pub(crate) fn run(&self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        if self.src.order() != self.dst.order() {
            return;
        }
        let mut images = Vec::with_capacity(self.gens.len());
        let mut map = vec![usize::MAX; self.src.order()];
        self.extend(&images, &mut map);
        self.descend(&mut images, &mut map, visit);
    }

    fn descend(&self, images: &mut Vec<usize>, map: &mut [usize], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let depth = images.len();
        if depth == self.gens.len() {
            return visit(map);
        }
        for &cand in &self.candidates[depth] {
            images.push(cand);
            if self.extend(images, map) && !self.descend(images, map, visit) {
                images.pop();
                return false;
            }
            images.pop();
        }
        true
    }

    /// Rebuilds `map` on the subgroup generated by the first
    /// `images.len()` generators. Returns false if the assignment is not an
    /// injective homomorphism there.
    fn extend(&self, images: &[usize], map: &mut [usize]) -> bool {
        let k = images.len();
        let gens = &self.gens[..k];
        map.iter_mut().for_each(|m| *m = usize::MAX);
        let mut used = vec![false; self.dst.order()];
        map[0] = 0;
        used[0] = true;
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for (t, &g) in gens.iter().enumerate() {
                let y = self.src.mul(x, g);
                let fy = self.dst.mul(map[x], images[t]);
                if map[y] == usize::MAX {
                    if used[fy] {
                        return false;
                    }
                    used[fy] = true;
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::construct_named;

    #[test]
    fn identity_when_equal() {
        for spec in ["T", "C5", "S3", "D8", "Q8"] {
            let g = construct_named(spec).unwrap();
            let iso = find_isomorphism(&g, &g).unwrap();
            assert_eq!(iso, Homomorphism::identity(&g), "{spec}");
        }
    }

    #[test]
    fn c4_and_klein_differ() {
        let c4 = construct_named("C4").unwrap();
        let v4 = construct_named("C2xC2").unwrap();
        assert!(find_isomorphism(&c4, &v4).is_none());
    }

    #[test]
    fn d8_and_q8_differ() {
        let d8 = construct_named("D8").unwrap();
        let q8 = construct_named("Q8").unwrap();
        assert!(find_isomorphism(&d8, &q8).is_none());
    }

    #[test]
    fn witnesses_are_bijective_homs() {
        let pairs = [("C6", "C2xC3"), ("D12", "S3xC2"), ("Dic8", "Q8"), ("D6", "S3"), ("D4", "C2xC2")];
        for (a, b) in pairs {
            let g = construct_named(a).unwrap();
            let h = construct_named(b).unwrap();
            let iso = find_isomorphism(&g, &h).unwrap_or_else(|| panic!("{a} ~ {b}"));
            assert!(iso.verify(&g, &h));
            assert!(iso.is_bijective());
        }
    }
}
