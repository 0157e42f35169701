//! Vertex-colored graphs, their automorphisms, and isomorphism tests.
//!
//! The search individualizes one vertex at a time and refines the coloring
//! to an equitable one after each step. Refined colors are ranks of
//! (color, sorted neighbour colors) signatures, so two graphs related by an
//! isomorphism get matching colorings along matching branches.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    colors: Vec<usize>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

/// On-disk form: `{"vertices": n, "colors": [...], "edges": [[u, v], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    #[serde(default)]
    pub colors: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
}

impl ColoredGraph {
    /// An empty `colors` list means every vertex has color 0.
    pub fn new(vertices: usize, colors: Vec<usize>, edges: &[(usize, usize)]) -> Result<Self> {
        let colors = if colors.is_empty() { vec![0; vertices] } else { colors };
        if colors.len() != vertices {
            return Err(Error::InvalidGraph(format!(
                "{} colors for {vertices} vertices",
                colors.len()
            )));
        }
        let mut present = colors.clone();
        present.sort_unstable();
        present.dedup();
        if present.iter().enumerate().any(|(i, &c)| i != c) {
            return Err(Error::InvalidGraph("color ids must be dense from 0".into()));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        norm.dedup();
        let mut adj = vec![Vec::new(); vertices];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(ColoredGraph {
            colors,
            edges: norm,
            adj,
        })
    }

    pub fn uncolored(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(vertices, Vec::new(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Vertices of `parts[i]` are renumbered to follow those of `parts[..i]`.
    pub fn disjoint_union(parts: &[&ColoredGraph]) -> Result<Self> {
        let mut colors = Vec::new();
        let mut edges = Vec::new();
        for p in parts {
            let off = colors.len();
            colors.extend_from_slice(&p.colors);
            edges.extend(p.edges.iter().map(|&(u, v)| (u + off, v + off)));
        }
        let n = colors.len();
        Self::new(n, colors, &edges)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !std::mem::replace(&mut seen[w], true) {
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        map.len() == self.vertex_count()
            && crate::perm::is_permutation(map)
            && (0..map.len()).all(|v| self.colors[v] == self.colors[map[v]])
            && self.edges.iter().all(|&(u, v)| self.adjacent(map[u], map[v]))
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.vertex_count(),
            colors: self.colors.clone(),
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_file(f: GraphFile) -> Result<Self> {
        let edges: Vec<(usize, usize)> = f.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::new(f.vertices, f.colors, &edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(s)?)
    }
}

/// Refines `colors` in place until the partition is equitable.
fn refine(g: &ColoredGraph, colors: &mut [usize]) {
    let mut cells = count_distinct(colors);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..g.vertex_count())
            .map(|v| {
                let mut nb: Vec<usize> = g.adj[v].iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        for (v, s) in sigs.iter().enumerate() {
            colors[v] = distinct.binary_search(s).expect("present");
        }
        if distinct.len() == cells {
            return;
        }
        cells = distinct.len();
    }
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Gives `v` a color of its own, just below the rest of its cell.
fn individualize(colors: &[usize], v: usize) -> Vec<usize> {
    let mut out: Vec<usize> = colors.iter().map(|&c| 2 * c + 1).collect();
    out[v] -= 1;
    out
}

fn histogram(colors: &[usize]) -> Vec<usize> {
    let mut h = colors.to_vec();
    h.sort_unstable();
    h
}

fn check_size(g: &ColoredGraph) -> Result<()> {
    if g.vertex_count() > limits::MAX_GRAPH_VERTICES {
        return Err(Error::CapExceeded {
            what: "graph",
            order: g.vertex_count(),
            cap: limits::MAX_GRAPH_VERTICES,
        });
    }
    Ok(())
}

/// Enumerates isomorphisms `a -> b`; `visit` returns false to stop.
fn search(a: &ColoredGraph, b: &ColoredGraph, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<()> {
    check_size(a)?;
    check_size(b)?;
    if a.vertex_count() != b.vertex_count() || a.edges.len() != b.edges.len() {
        return Ok(());
    }
    let mut ca = a.colors.clone();
    let mut cb = b.colors.clone();
    refine(a, &mut ca);
    refine(b, &mut cb);
    descend(a, b, ca, cb, visit);
    Ok(())
}

fn descend(
    a: &ColoredGraph,
    b: &ColoredGraph,
    ca: Vec<usize>,
    cb: Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let ha = histogram(&ca);
    if ha != histogram(&cb) {
        return true;
    }
    let target = ha.windows(2).find(|w| w[0] == w[1]).map(|w| w[0]);
    let Some(cell) = target else {
        let mut at = vec![0; ca.len()];
        for (w, &c) in cb.iter().enumerate() {
            at[c] = w;
        }
        let map: Vec<usize> = ca.iter().map(|&c| at[c]).collect();
        if a.edges.iter().all(|&(u, v)| b.adjacent(map[u], map[v])) {
            return visit(&map);
        }
        return true;
    };
    let v = ca.iter().position(|&c| c == cell).expect("cell is non-empty");
    let mut na = individualize(&ca, v);
    refine(a, &mut na);
    for w in (0..cb.len()).filter(|&w| cb[w] == cell) {
        let mut nb = individualize(&cb, w);
        refine(b, &mut nb);
        if !descend(a, b, na.clone(), nb, visit) {
            return false;
        }
    }
    true
}

/// Every automorphism as a vertex map, sorted, identity first.
pub fn graph_automorphisms(g: &ColoredGraph) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut over = false;
    search(g, g, &mut |m| {
        if out.len() == limits::MAX_GRAPH_AUTOMORPHISMS {
            over = true;
            return false;
        }
        out.push(m.to_vec());
        true
    })?;
    if over {
        return Err(Error::CapExceeded {
            what: "graph automorphism group",
            order: out.len() + 1,
            cap: limits::MAX_GRAPH_AUTOMORPHISMS,
        });
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphAutGroup {
    pub group: FiniteGroup,
    /// `action[i]` is the vertex map of element `i`.
    pub action: Vec<Vec<usize>>,
}

/// Element `i` acts as `action[i]`; `table[i][j]` applies `j` first.
pub fn graph_automorphism_group(g: &ColoredGraph) -> Result<GraphAutGroup> {
    let action = graph_automorphisms(g)?;
    let m = action.len();
    if m > limits::MAX_TABLE_ORDER {
        return Err(Error::CapExceeded {
            what: "graph automorphism table",
            order: m,
            cap: limits::MAX_TABLE_ORDER,
        });
    }
    let mut flat = Vec::with_capacity(m * m);
    for x in &action {
        for y in &action {
            let comp: Vec<usize> = y.iter().map(|&v| x[v]).collect();
            let k = action.binary_search(&comp).expect("closed under composition");
            flat.push(k as u32);
        }
    }
    Ok(GraphAutGroup {
        group: FiniteGroup::from_flat_unchecked(m, flat, None),
        action,
    })
}

pub fn is_rigid(g: &ColoredGraph) -> Result<bool> {
    let mut rigid = true;
    search(g, g, &mut |m| {
        if m.iter().enumerate().any(|(i, &x)| i != x) {
            rigid = false;
            return false;
        }
        true
    })?;
    Ok(rigid)
}

pub fn find_graph_isomorphism(a: &ColoredGraph, b: &ColoredGraph) -> Result<Option<Vec<usize>>> {
    let mut found = None;
    search(a, b, &mut |m| {
        found = Some(m.to_vec());
        false
    })?;
    Ok(found)
}

pub fn are_isomorphic(a: &ColoredGraph, b: &ColoredGraph) -> Result<bool> {
    Ok(find_graph_isomorphism(a, b)?.is_some())
}

const UNIT_EDGES: [(usize, &[(usize, usize)]); 13] = [
    (6, &[(0, 1), (1, 5), (2, 3), (2, 4), (2, 5), (4, 5)]),
    (6, &[(0, 2), (0, 4), (0, 5), (1, 2), (1, 3), (2, 3), (3, 5)]),
    (6, &[(0, 3), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5), (2, 5), (3, 5)]),
    (6, &[(0, 1), (0, 2), (0, 4), (1, 2), (1, 3), (1, 4), (4, 5)]),
    (6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 4), (2, 5), (4, 5)]),
    (6, &[(0, 1), (0, 2), (0, 3), (0, 5), (1, 4), (1, 5), (2, 4)]),
    (6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (3, 4), (3, 5), (4, 5)]),
    (7, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 5), (3, 6), (4, 5), (4, 6), (5, 6)]),
    (7, &[(0, 2), (0, 3), (1, 3), (1, 5), (1, 6), (2, 3), (2, 5), (2, 6), (3, 6), (4, 5), (4, 6)]),
    (7, &[(0, 1), (0, 2), (0, 6), (1, 5), (2, 3), (2, 4), (2, 6), (4, 6)]),
    (7, &[(0, 2), (0, 5), (1, 2), (1, 3), (1, 5), (2, 4), (2, 5), (3, 5), (4, 6)]),
    (7, &[(0, 5), (0, 6), (1, 4), (2, 4), (2, 6), (3, 6)]),
    (7, &[(0, 1), (0, 3), (0, 5), (0, 6), (1, 3), (1, 5), (2, 4), (3, 6), (4, 6)]),
];

/// How many distinct unit graphs [`unit_graph`] can hand out.
pub const UNIT_COUNT: usize = UNIT_EDGES.len();

/// Connected asymmetric graphs on 6 and 7 vertices, pairwise
/// non-isomorphic. Unit 0 is the default.
pub fn unit_graph(i: usize) -> Option<ColoredGraph> {
    let (n, edges) = UNIT_EDGES.get(i)?;
    Some(ColoredGraph::uncolored(*n, edges).expect("unit graphs are well formed"))
}
