//! Finite groups stored as Cayley tables.
//!
//! Every group keeps its identity at index 0. Elements are plain indices and
//! `mul(a, b)` reads `table[a][b]`.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    names: Option<Vec<String>>,
}

/// A subgroup of some parent group, held as a sorted member list.
///
/// The parent is not stored; operations take it explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

/// A map between two groups given by its image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    pub source_order: usize,
    pub target_order: usize,
    pub image: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    pub center_order: usize,
    pub element_orders: Vec<usize>,
    pub class_sizes: Vec<usize>,
}

/// On-disk group representation. Key order is fixed by field order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates and builds a group from a raw table.
    pub fn from_cayley_table(
        order: usize,
        table: Vec<Vec<usize>>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::Shape("order must be positive".into()));
        }
        if order > limits::MAX_TABLE_ORDER {
            return Err(Error::CapExceeded {
                what: "cayley table",
                order,
                cap: limits::MAX_TABLE_ORDER,
            });
        }
        if table.len() != order {
            return Err(Error::Shape(format!(
                "expected {order} rows, found {}",
                table.len()
            )));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= order {
                    return Err(Error::Shape(format!("entry {x} in row {i} out of range")));
                }
                flat.push(x as u32);
            }
        }
        if let Some(n) = &names {
            if n.len() != order {
                return Err(Error::Shape(format!(
                    "{} names for {order} elements",
                    n.len()
                )));
            }
        }
        for j in 0..order {
            if flat[j] as usize != j || flat[j * order] as usize != j {
                return Err(Error::IdentityNotAtZero);
            }
        }
        check_latin(order, &flat)?;
        let inverses = inverses_of(order, &flat);
        let g = FiniteGroup {
            order,
            table: flat,
            inverses,
            names,
        };
        g.check_associative()?;
        Ok(g)
    }

    /// Builds a group from a table that is known to be a valid group table.
    pub(crate) fn from_flat_unchecked(order: usize, flat: Vec<u32>, names: Option<Vec<String>>) -> Self {
        debug_assert_eq!(flat.len(), order * order);
        let inverses = inverses_of(order, &flat);
        FiniteGroup {
            order,
            table: flat,
            inverses,
            names,
        }
    }

    /// Builds a group from a multiplication closure over `0..order`.
    pub(crate) fn from_fn(order: usize, names: Option<Vec<String>>, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut flat = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                flat.push(mul(i, j) as u32);
            }
        }
        Self::from_flat_unchecked(order, flat, names)
    }

    pub fn trivial() -> Self {
        Self::from_flat_unchecked(1, vec![0], Some(vec!["e".into()]))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `g * h * g^-1`
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, i: usize) -> String {
        match &self.names {
            Some(n) => n[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&x| x as usize).collect())
            .collect()
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile {
            order: self.order,
            table: self.table_rows(),
            names: self.names.clone(),
        }
    }

    pub fn from_file(file: GroupFile) -> Result<Self> {
        Self::from_cayley_table(file.order, file.table, file.names)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("group serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(s)?)
    }

    /// Re-checks every structural invariant of the table.
    pub fn validate(&self) -> Result<()> {
        for j in 0..self.order {
            if self.mul(0, j) != j || self.mul(j, 0) != j {
                return Err(Error::IdentityNotAtZero);
            }
        }
        check_latin(self.order, &self.table)?;
        self.check_associative()
    }

    /// Light's test: it is enough to check `(x*y)*c == x*(y*c)` for `c`
    /// ranging over a generating set of the loop.
    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let gens = greedy_generators(n, 0..n, |a, b| self.mul(a, b));
        for &c in &gens {
            for x in 0..n {
                for y in 0..n {
                    if self.mul(self.mul(x, y), c) != self.mul(x, self.mul(y, c)) {
                        return Err(Error::NotAssociative(x, y, c));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|a| self.element_order(a)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order).collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: vec![0] }
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer_of_set(&(0..self.order).collect::<Vec<_>>())
    }

    fn centralizer_of_set(&self, set: &[usize]) -> Subgroup {
        let members = (0..self.order)
            .filter(|&g| set.iter().all(|&h| self.mul(g, h) == self.mul(h, g)))
            .collect();
        Subgroup { members }
    }

    pub fn centralizer_in(&self, s: &Subgroup) -> Result<Subgroup> {
        self.check_subgroup(s)?;
        let gens = self.small_generating_set(s.members());
        Ok(self.centralizer_of_set(&gens))
    }

    pub fn normalizer_in(&self, s: &Subgroup) -> Result<Subgroup> {
        self.check_subgroup(s)?;
        let mut inside = vec![false; self.order];
        for &m in s.members() {
            inside[m] = true;
        }
        let gens = self.small_generating_set(s.members());
        let members = (0..self.order)
            .filter(|&g| gens.iter().all(|&h| inside[self.conj(g, h)]))
            .collect();
        Ok(Subgroup { members })
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut members = vec![0];
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup { members }
    }

    /// Checks that `members` is a valid subgroup of `self`.
    pub fn subgroup(&self, members: impl IntoIterator<Item = usize>) -> Result<Subgroup> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        let s = Subgroup { members };
        self.check_subgroup(&s)?;
        Ok(s)
    }

    pub fn check_subgroup(&self, s: &Subgroup) -> Result<()> {
        if s.members.iter().any(|&m| m >= self.order) {
            return Err(Error::NotSubgroup("member index out of range".into()));
        }
        if s.members.first() != Some(&0) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        let mut inside = vec![false; self.order];
        for &m in &s.members {
            inside[m] = true;
        }
        for &a in &s.members {
            for &b in &s.members {
                if !inside[self.mul(a, b)] {
                    return Err(Error::NotSubgroup(format!("{a}*{b} not in set")));
                }
            }
        }
        Ok(())
    }

    /// A short generating set for a subgroup, built greedily in ascending
    /// order. Not necessarily minimal.
    pub(crate) fn small_generating_set(&self, members: &[usize]) -> Vec<usize> {
        greedy_generators(self.order, members.iter().copied(), |a, b| self.mul(a, b))
    }

    /// Conjugacy classes, each sorted, listed by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|g| self.conj(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut element_orders = self.element_orders();
        element_orders.sort_unstable();
        let mut class_sizes: Vec<usize> = self.conjugacy_classes().iter().map(Vec::len).collect();
        class_sizes.sort_unstable();
        Fingerprint {
            order: self.order,
            abelian: self.is_abelian(),
            center_order: self.center().order(),
            element_orders,
            class_sizes,
        }
    }

    /// A generating set of minimum size, found by exhaustive search over
    /// ascending index combinations. The first hit in that order is returned.
    pub fn minimal_generating_set(&self) -> Vec<usize> {
        if self.order == 1 {
            return Vec::new();
        }
        let orders = self.element_orders();
        // an element of full order generates alone
        if let Some(g) = (1..self.order).find(|&g| orders[g] == self.order) {
            return vec![g];
        }
        let mut size = 2;
        loop {
            let mut chosen = Vec::with_capacity(size);
            let mut closure = Closure::new(self);
            if self.search_gens(size, 1, &mut chosen, &mut closure) {
                return chosen;
            }
            size += 1;
        }
    }

    fn search_gens(&self, size: usize, from: usize, chosen: &mut Vec<usize>, closure: &mut Closure) -> bool {
        if chosen.len() == size {
            return closure.len() == self.order;
        }
        for g in from..self.order {
            if closure.contains(g) {
                continue;
            }
            if self.order - g < size - chosen.len() {
                break;
            }
            let mark = closure.len();
            chosen.push(g);
            closure.add_generator(self, g, chosen);
            if self.search_gens(size, g + 1, chosen, closure) {
                return true;
            }
            closure.truncate(mark);
            chosen.pop();
        }
        false
    }
}

/// Incrementally maintained subgroup closure with undo.
struct Closure {
    inside: Vec<bool>,
    members: Vec<usize>,
}

impl Closure {
    fn new(g: &FiniteGroup) -> Self {
        let mut inside = vec![false; g.order()];
        inside[0] = true;
        Closure {
            inside,
            members: vec![0],
        }
    }

    fn len(&self) -> usize {
        self.members.len()
    }

    fn contains(&self, x: usize) -> bool {
        self.inside[x]
    }

    fn truncate(&mut self, len: usize) {
        for &m in &self.members[len..] {
            self.inside[m] = false;
        }
        self.members.truncate(len);
    }

    fn add_generator(&mut self, g: &FiniteGroup, new: usize, gens: &[usize]) {
        let old = self.members.len();
        for idx in 0..old {
            let y = g.mul(self.members[idx], new);
            if !self.inside[y] {
                self.inside[y] = true;
                self.members.push(y);
            }
        }
        let mut i = old;
        while i < self.members.len() {
            let x = self.members[i];
            for &s in gens {
                let y = g.mul(x, s);
                if !self.inside[y] {
                    self.inside[y] = true;
                    self.members.push(y);
                }
            }
            i += 1;
        }
    }
}

/// Walks `candidates` in order, keeping each one not yet reachable from the
/// identity by right multiplication with the generators kept so far.
fn greedy_generators(
    order: usize,
    candidates: impl Iterator<Item = usize>,
    mul: impl Fn(usize, usize) -> usize,
) -> Vec<usize> {
    let mut seen = vec![false; order];
    seen[0] = true;
    let mut gens = Vec::new();
    for c in candidates {
        if seen[c] {
            continue;
        }
        gens.push(c);
        seen.iter_mut().for_each(|s| *s = false);
        seen[0] = true;
        let mut reached = vec![0usize];
        let mut i = 0;
        while i < reached.len() {
            let x = reached[i];
            for &g in &gens {
                let y = mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    reached.push(y);
                }
            }
            i += 1;
        }
    }
    gens
}

fn check_latin(order: usize, flat: &[u32]) -> Result<()> {
    let mut seen = vec![usize::MAX; order];
    for i in 0..order {
        for j in 0..order {
            let x = flat[i * order + j] as usize;
            if seen[x] == i {
                return Err(Error::NotLatinSquare(format!("row {i} repeats {x}")));
            }
            seen[x] = i;
        }
    }
    let mut seen = vec![usize::MAX; order];
    for j in 0..order {
        for i in 0..order {
            let x = flat[i * order + j] as usize;
            if seen[x] == j {
                return Err(Error::NotLatinSquare(format!("column {j} repeats {x}")));
            }
            seen[x] = j;
        }
    }
    Ok(())
}

fn inverses_of(order: usize, flat: &[u32]) -> Vec<u32> {
    (0..order)
        .map(|i| {
            (0..order)
                .find(|&j| flat[i * order + j] == 0)
                .expect("latin row contains the identity") as u32
        })
        .collect()
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        let gens = g.small_generating_set(&self.members);
        (0..g.order()).all(|x| gens.iter().all(|&h| self.contains(g.conj(x, h))))
    }

    /// The subgroup as a group in its own right: members renumbered in
    /// ascending order, so the identity stays at 0.
    pub fn as_group(&self, parent: &FiniteGroup) -> FiniteGroup {
        let mut index = BTreeMap::new();
        for (k, &m) in self.members.iter().enumerate() {
            index.insert(m, k);
        }
        let names = parent
            .names()
            .map(|n| self.members.iter().map(|&m| n[m].clone()).collect());
        FiniteGroup::from_fn(self.members.len(), names, |a, b| {
            index[&parent.mul(self.members[a], self.members[b])]
        })
    }
}

impl Homomorphism {
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, image: Vec<usize>) -> Self {
        Homomorphism {
            source_order: source.order(),
            target_order: target.order(),
            image,
        }
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Self::new(g, g, (0..g.order()).collect())
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// Checks the structure-preservation law against both tables.
    pub fn verify(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        if self.image.len() != source.order()
            || self.source_order != source.order()
            || self.target_order != target.order()
            || self.image.first() != Some(&0)
            || self.image.iter().any(|&x| x >= target.order())
        {
            return false;
        }
        (0..source.order()).all(|i| {
            (0..source.order()).all(|j| self.image[source.mul(i, j)] == target.mul(self.image[i], self.image[j]))
        })
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source_order).filter(|&x| self.image[x] == 0).collect()
    }

    pub fn image_set(&self) -> Vec<usize> {
        let mut v = self.image.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_injective(&self) -> bool {
        self.image_set().len() == self.source_order
    }

    pub fn is_bijective(&self) -> bool {
        self.source_order == self.target_order && self.is_injective()
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &Homomorphism) -> Homomorphism {
        assert_eq!(self.target_order, other.source_order, "composing mismatched maps");
        Homomorphism {
            source_order: self.source_order,
            target_order: other.target_order,
            image: self.image.iter().map(|&x| other.image[x]).collect(),
        }
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Homomorphism {
        assert!(self.is_bijective(), "inverting a non-bijective map");
        let mut inv = vec![0; self.source_order];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Homomorphism {
            source_order: self.target_order,
            target_order: self.source_order,
            image: inv,
        }
    }
}
