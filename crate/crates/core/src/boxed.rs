//! The boxed wreath construction and its normalizer tower.
//!
//! A [`BoxTree`] of depth α lays out unit slots as two bare slots followed,
//! for each level k = 2..=α, by a complete binary pairing tree with 2^(k-1)
//! leaves: `o o [oo] [[oo][oo]] …`, 2^α slots in all. Slots are numbered
//! component by component, left to right. The graph is the disjoint union
//! of one rigid unit per slot, so its automorphisms permute slots holding
//! the same unit freely. `W` is generated by the box swaps whose two halves
//! hold matching units, and the tower is the normalizer tower of `W` inside
//! the slot action of the graph's automorphism group.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, ColoredGraph};
use crate::limits;
use crate::perm::{normalizer_in_classes, Perm, PermGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoxNode {
    Slot(usize),
    Pair(Box<BoxNode>, Box<BoxNode>),
}

impl BoxNode {
    /// Complete binary tree of the given depth, numbering leaves from `next`.
    fn complete(depth: usize, next: &mut usize) -> Self {
        if depth == 0 {
            *next += 1;
            return BoxNode::Slot(*next - 1);
        }
        let left = Self::complete(depth - 1, next);
        let right = Self::complete(depth - 1, next);
        BoxNode::Pair(Box::new(left), Box::new(right))
    }

    pub fn slots(&self) -> Vec<usize> {
        match self {
            BoxNode::Slot(s) => vec![*s],
            BoxNode::Pair(l, r) => {
                let mut v = l.slots();
                v.extend(r.slots());
                v
            }
        }
    }

    fn boxes<'a>(&'a self, out: &mut Vec<(&'a BoxNode, &'a BoxNode)>) {
        if let BoxNode::Pair(l, r) = self {
            out.push((l, r));
            l.boxes(out);
            r.boxes(out);
        }
    }

    fn render(&self, classes: &[usize], out: &mut String) {
        match self {
            BoxNode::Slot(s) => out.push(class_char(classes[*s])),
            BoxNode::Pair(l, r) => {
                out.push('[');
                l.render(classes, out);
                r.render(classes, out);
                out.push(']');
            }
        }
    }
}

fn class_char(c: usize) -> char {
    std::char::from_digit(c as u32, 36).unwrap_or('?')
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// 0 and 1 for the two bare slots, k for the tree with 2^(k-1) leaves.
    pub level: usize,
    pub root: BoxNode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxTree {
    depth: usize,
    components: Vec<Component>,
}

impl BoxTree {
    pub fn new(depth: usize) -> Result<Self> {
        if depth == 0 || depth >= usize::BITS as usize || 1usize << depth > limits::MAX_SLOTS {
            return Err(Error::OutOfRange {
                what: "box tree depth",
                value: depth,
                limit: limits::MAX_SLOTS.ilog2() as usize,
            });
        }
        let mut next = 0;
        let mut components = vec![
            Component {
                level: 0,
                root: BoxNode::complete(0, &mut next),
            },
            Component {
                level: 1,
                root: BoxNode::complete(0, &mut next),
            },
        ];
        for k in 2..=depth {
            components.push(Component {
                level: k,
                root: BoxNode::complete(k - 1, &mut next),
            });
        }
        Ok(BoxTree { depth, components })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn slot_count(&self) -> usize {
        1 << self.depth
    }

    /// Level of the component holding each slot.
    pub fn slot_levels(&self) -> Vec<usize> {
        let mut levels = vec![0; self.slot_count()];
        for c in &self.components {
            for s in c.root.slots() {
                levels[s] = c.level;
            }
        }
        levels
    }
}

/// How slots are split into isomorphism classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassPattern {
    /// Every slot holds the same unit.
    AllOne,
    /// Every slot holds its own unit.
    PerSlot,
    /// Levels `0..=β` share class 0; each deeper level gets its own class.
    UpTo(usize),
}

impl ClassPattern {
    /// Accepts `all-one`, `per-slot`, `per-level` (same as `upto:0`) and
    /// `upto:<β>`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "all-one" => Ok(ClassPattern::AllOne),
            "per-slot" => Ok(ClassPattern::PerSlot),
            "per-level" => Ok(ClassPattern::UpTo(0)),
            _ => s
                .strip_prefix("upto:")
                .and_then(|b| b.parse().ok())
                .map(ClassPattern::UpTo)
                .ok_or_else(|| Error::InvalidAssignment(format!("unknown class pattern `{s}`"))),
        }
    }

    pub fn classes(&self, tree: &BoxTree) -> Result<Vec<usize>> {
        let n = tree.slot_count();
        match *self {
            ClassPattern::AllOne => Ok(vec![0; n]),
            ClassPattern::PerSlot => Ok((0..n).collect()),
            ClassPattern::UpTo(b) if b > tree.depth() => Err(Error::InvalidAssignment(format!(
                "upto:{b} exceeds depth {}",
                tree.depth()
            ))),
            ClassPattern::UpTo(b) => Ok(tree
                .slot_levels()
                .into_iter()
                .map(|l| l.saturating_sub(b))
                .collect()),
        }
    }
}

/// Slot classes and one unit graph per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoAssignment {
    classes: Vec<usize>,
    units: Vec<ColoredGraph>,
}

impl IsoAssignment {
    /// Checks that every unit is connected and rigid and that units of
    /// different classes are not isomorphic. Units may outnumber the classes
    /// in use; a wall can draw on the spare ones.
    pub fn new(classes: Vec<usize>, units: Vec<ColoredGraph>) -> Result<Self> {
        if let Some(&c) = classes.iter().find(|&&c| c >= units.len()) {
            return Err(Error::InvalidAssignment(format!(
                "class {c} has no unit graph ({} given)",
                units.len()
            )));
        }
        for (c, u) in units.iter().enumerate() {
            if !u.is_connected() {
                return Err(Error::InvalidAssignment(format!("unit graph for class {c} is disconnected")));
            }
            if !graph::is_rigid(u)? {
                return Err(Error::NonRigidUnit(c));
            }
        }
        for i in 0..units.len() {
            for j in i + 1..units.len() {
                if graph::are_isomorphic(&units[i], &units[j])? {
                    return Err(Error::IsomorphicUnits(i, j));
                }
            }
        }
        Ok(IsoAssignment { classes, units })
    }

    /// Uses the shipped unit graphs, one per class, for at least
    /// `min_classes` classes.
    pub fn from_library(classes: Vec<usize>, min_classes: usize) -> Result<Self> {
        let count = classes.iter().map(|&c| c + 1).max().unwrap_or(0).max(min_classes);
        if count > graph::UNIT_COUNT {
            return Err(Error::OutOfRange {
                what: "unit classes",
                value: count,
                limit: graph::UNIT_COUNT,
            });
        }
        let units = (0..count).map(|i| graph::unit_graph(i).expect("in range")).collect();
        Self::new(classes, units)
    }

    pub fn from_pattern(tree: &BoxTree, pattern: ClassPattern, min_classes: usize) -> Result<Self> {
        Self::from_library(pattern.classes(tree)?, min_classes)
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn units(&self) -> &[ColoredGraph] {
        &self.units
    }
}

/// Extra fully boxed rows of one class appended after the main slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Wall {
    pub class: usize,
    pub rows: usize,
    pub row_depth: usize,
}

impl Wall {
    pub fn none() -> Self {
        Wall {
            class: 0,
            rows: 0,
            row_depth: 0,
        }
    }

    /// Two rows shaped `[[▯▯][▯▯]]`.
    pub fn standard(class: usize) -> Self {
        Wall {
            class,
            rows: 2,
            row_depth: 2,
        }
    }

    fn slot_count(&self) -> usize {
        self.rows << self.row_depth
    }
}

#[derive(Clone, Debug)]
pub struct BoxedBuild {
    pub tree: BoxTree,
    pub wall_rows: Vec<BoxNode>,
    pub slot_classes: Vec<usize>,
    /// Slot `s` owns vertices `slot_offsets[s]..slot_offsets[s + 1]`.
    pub slot_offsets: Vec<usize>,
    pub graph: ColoredGraph,
    pub ambient: PermGroup,
    pub w: PermGroup,
}

pub fn build_boxed(tree: &BoxTree, assign: &IsoAssignment) -> Result<BoxedBuild> {
    build_wall(tree, assign, Wall::none())
}

pub fn build_wall(tree: &BoxTree, assign: &IsoAssignment, wall: Wall) -> Result<BoxedBuild> {
    let main = tree.slot_count();
    if assign.classes.len() != main {
        return Err(Error::InvalidAssignment(format!(
            "assignment covers {} slots, tree has {main}",
            assign.classes.len()
        )));
    }
    if wall.rows > 0 && wall.class >= assign.units.len() {
        return Err(Error::InvalidAssignment(format!("wall class {} has no unit graph", wall.class)));
    }
    let total = main + wall.slot_count();
    if total > limits::MAX_SLOTS {
        return Err(Error::CapExceeded {
            what: "slot count",
            order: total,
            cap: limits::MAX_SLOTS,
        });
    }
    let mut next = main;
    let wall_rows: Vec<BoxNode> = (0..wall.rows).map(|_| BoxNode::complete(wall.row_depth, &mut next)).collect();
    let mut slot_classes = assign.classes.clone();
    slot_classes.resize(total, wall.class);

    let parts: Vec<&ColoredGraph> = slot_classes.iter().map(|&c| &assign.units[c]).collect();
    let mut slot_offsets = vec![0];
    for p in &parts {
        slot_offsets.push(slot_offsets.last().expect("non-empty") + p.vertex_count());
    }
    let graph = ColoredGraph::disjoint_union(&parts)?;

    let mut boxes = Vec::new();
    for c in &tree.components {
        c.root.boxes(&mut boxes);
    }
    for r in &wall_rows {
        r.boxes(&mut boxes);
    }
    let class_seq = |n: &BoxNode| -> Vec<usize> { n.slots().iter().map(|&s| slot_classes[s]).collect() };
    let gens: Vec<Perm> = boxes
        .iter()
        .filter(|(l, r)| class_seq(l) == class_seq(r))
        .map(|(l, r)| Perm::swapping(total, &l.slots(), &r.slots()))
        .collect();

    Ok(BoxedBuild {
        tree: tree.clone(),
        wall_rows,
        ambient: PermGroup::class_preserving(&slot_classes),
        w: PermGroup::new(total, gens),
        slot_classes,
        slot_offsets,
        graph,
    })
}

impl BoxedBuild {
    pub fn slot_count(&self) -> usize {
        self.slot_classes.len()
    }

    /// Slot classes drawn in the box layout, e.g. `0 0 [00] [[11][11]]`,
    /// with wall rows after a `|`.
    pub fn layout(&self) -> String {
        let mut parts: Vec<String> = self
            .tree
            .components
            .iter()
            .map(|c| {
                let mut s = String::new();
                c.root.render(&self.slot_classes, &mut s);
                s
            })
            .collect();
        if !self.wall_rows.is_empty() {
            parts.push("|".into());
            for r in &self.wall_rows {
                let mut s = String::new();
                r.render(&self.slot_classes, &mut s);
                parts.push(s);
            }
        }
        parts.join(" ")
    }

    /// Slots grouped by class, classes in order of first appearance.
    pub fn class_partition(&self) -> Vec<Vec<usize>> {
        let mut order: Vec<usize> = Vec::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (s, &c) in self.slot_classes.iter().enumerate() {
            match order.iter().position(|&x| x == c) {
                Some(i) => out[i].push(s),
                None => {
                    order.push(c);
                    out.push(vec![s]);
                }
            }
        }
        out
    }

    /// The permutation of slots induced by a vertex automorphism.
    pub fn slot_permutation(&self, vertex_map: &[usize]) -> Result<Perm> {
        let n = self.slot_count();
        let slot_of = |v: usize| self.slot_offsets.partition_point(|&o| o <= v) - 1;
        let mut images = vec![0; n];
        for (s, image) in images.iter_mut().enumerate() {
            let range = self.slot_offsets[s]..self.slot_offsets[s + 1];
            let t = slot_of(vertex_map[range.start]);
            if range.clone().any(|v| slot_of(vertex_map[v]) != t) {
                return Err(Error::InvalidGraph(format!("automorphism splits slot {s}")));
            }
            *image = t;
        }
        if !crate::perm::is_permutation(&images) {
            return Err(Error::InvalidGraph("automorphism merges slots".into()));
        }
        Ok(Perm::from_images(&images))
    }

    /// Image of the graph's automorphism group acting on slots, found by
    /// enumerating every graph automorphism.
    pub fn slot_action_from_graph(&self) -> Result<PermGroup> {
        let autos = graph::graph_automorphisms(&self.graph)?;
        let mut g = PermGroup::trivial(self.slot_count());
        for a in &autos {
            g.add_generator(self.slot_permutation(a)?);
        }
        Ok(g)
    }
}

#[derive(Clone, Debug)]
pub struct BoxedTower {
    pub stages: Vec<PermGroup>,
    pub height: usize,
}

impl BoxedTower {
    pub fn stage_orders(&self) -> Vec<u64> {
        self.stages.iter().map(|s| s.order() as u64).collect()
    }
}

/// Normalizer tower of `W` in the ambient slot group.
pub fn boxed_tower(build: &BoxedBuild) -> BoxedTower {
    let mut stages = vec![build.w.clone()];
    loop {
        let top = stages.last().expect("non-empty");
        let next = normalizer_in_classes(top, &build.slot_classes);
        if next.order() == top.order() {
            break;
        }
        stages.push(next);
    }
    let height = stages.len() - 1;
    BoxedTower { stages, height }
}

pub fn boxed_tower_height(tree: &BoxTree, assign: &IsoAssignment) -> Result<usize> {
    Ok(boxed_tower(&build_boxed(tree, assign)?).height)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxedReport {
    pub depth: usize,
    pub slot_count: usize,
    pub wall_slots: usize,
    pub layout: String,
    pub classes: Vec<Vec<usize>>,
    pub vertices: usize,
    pub ambient_order: u64,
    pub w_order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage_orders: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<usize>,
}

impl BoxedReport {
    pub fn new(build: &BoxedBuild, tower: Option<&BoxedTower>) -> Self {
        BoxedReport {
            depth: build.tree.depth(),
            slot_count: build.slot_count(),
            wall_slots: build.slot_count() - build.tree.slot_count(),
            layout: build.layout(),
            classes: build.class_partition(),
            vertices: build.graph.vertex_count(),
            ambient_order: build.ambient.order() as u64,
            w_order: build.w.order() as u64,
            stage_orders: tower.map(BoxedTower::stage_orders),
            height: tower.map(|t| t.height),
        }
    }
}
