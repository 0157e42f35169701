//! `Aut(G)` as a concrete group, the natural map `G -> Aut(G)`, and the
//! completeness test.
//!
//! Automorphisms are enumerated by backtracking over images of a minimal
//! generating set. The resulting list is sorted by image table, which puts
//! the identity first, and numbered in that order. Products follow
//! `table[i][j] = realization[i] ∘ realization[j]` (apply `j` first).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupFile, Homomorphism, Subgroup};
use crate::iso::IsoSearch;
use crate::limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGroup {
    pub group: FiniteGroup,
    /// `realization[i][x]` is the image of base element `x` under automorphism `i`.
    pub realization: Vec<Vec<usize>>,
    pub base: FiniteGroup,
    base_gens: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutGroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub realization: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Completeness {
    pub complete: bool,
    pub center_order: usize,
    pub aut_order: usize,
    pub inner_order: usize,
    /// `|Aut(G)| / |Inn(G)|`
    pub outer_index: usize,
}

pub fn automorphism_group(g: &FiniteGroup) -> Result<AutGroup> {
    automorphism_group_with_cap(g, limits::MAX_AUT_BASE_ORDER)
}

pub fn automorphism_group_with_cap(g: &FiniteGroup, cap: usize) -> Result<AutGroup> {
    if g.order() > cap {
        return Err(Error::CapExceeded {
            what: "automorphism base group",
            order: g.order(),
            cap,
        });
    }
    let gens = g.minimal_generating_set();
    let mut autos: Vec<Vec<usize>> = Vec::new();
    let mut overflow = false;
    IsoSearch::new(g, g, &gens).run(&mut |image| {
        if autos.len() == limits::MAX_TABLE_ORDER {
            overflow = true;
            return false;
        }
        autos.push(image.to_vec());
        true
    });
    if overflow {
        return Err(Error::CapExceeded {
            what: "automorphism group",
            order: autos.len() + 1,
            cap: limits::MAX_TABLE_ORDER,
        });
    }
    autos.sort_unstable();
    debug_assert!(autos[0].iter().enumerate().all(|(i, &x)| i == x));

    let key = |a: &[usize]| -> Vec<usize> { gens.iter().map(|&x| a[x]).collect() };
    let index: HashMap<Vec<usize>, usize> = autos.iter().enumerate().map(|(i, a)| (key(a), i)).collect();
    let m = autos.len();
    let mut flat = Vec::with_capacity(m * m);
    let mut scratch = vec![0; gens.len()];
    for a in &autos {
        for b in &autos {
            for (t, &x) in gens.iter().enumerate() {
                scratch[t] = a[b[x]];
            }
            flat.push(index[&scratch] as u32);
        }
    }
    Ok(AutGroup {
        group: FiniteGroup::from_flat_unchecked(m, flat, None),
        realization: autos,
        base: g.clone(),
        base_gens: gens,
        index,
    })
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Index of the automorphism with the given image table, if it is one.
    pub fn index_of(&self, images: &[usize]) -> Option<usize> {
        let key: Vec<usize> = self.base_gens.iter().map(|&x| images[x]).collect();
        let i = *self.index.get(&key)?;
        (self.realization[i] == images).then_some(i)
    }

    /// Index of the inner automorphism `h -> g h g^-1`.
    pub fn inner(&self, g: usize) -> usize {
        let key: Vec<usize> = self.base_gens.iter().map(|&x| self.base.conj(g, x)).collect();
        self.index[&key]
    }

    /// `Inn(G)` as a subgroup of `Aut(G)`.
    pub fn inner_subgroup(&self) -> Subgroup {
        let members = inner_homomorphism(self).image_set();
        self.group.subgroup(members).expect("image of a homomorphism is a subgroup")
    }

    pub fn to_file(&self) -> AutGroupFile {
        let GroupFile { order, table, names } = self.group.to_file();
        AutGroupFile {
            order,
            table,
            names,
            realization: self.realization.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("aut group serializes")
    }
}

/// The natural map `g -> i_g` from the base group into `Aut`.
pub fn inner_homomorphism(a: &AutGroup) -> Homomorphism {
    let image = (0..a.base.order()).map(|g| a.inner(g)).collect();
    Homomorphism::new(&a.base, &a.group, image)
}

pub fn is_complete(g: &FiniteGroup) -> Result<Completeness> {
    is_complete_with_cap(g, limits::MAX_AUT_BASE_ORDER)
}

pub fn is_complete_with_cap(g: &FiniteGroup, cap: usize) -> Result<Completeness> {
    let a = automorphism_group_with_cap(g, cap)?;
    Ok(completeness_of(&a))
}

pub fn completeness_of(a: &AutGroup) -> Completeness {
    let center_order = a.base.center().order();
    let inner_order = a.base.order() / center_order;
    Completeness {
        complete: center_order == 1 && inner_order == a.order(),
        center_order,
        aut_order: a.order(),
        inner_order,
        outer_index: a.order() / inner_order,
    }
}
