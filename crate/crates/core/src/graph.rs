//! Simple undirected graphs on dense ids, generators, and certificate
//! validators.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::nodeset::NodeSet;

/// A simple undirected graph with nodes `0..n`.
///
/// Adjacency is one [`NodeSet`] per node, so membership is a bit test and
/// two neighborhoods compare with a word-wise equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<NodeSet>,
    edges: usize,
}

impl Graph {
    /// Edgeless graph on `n` nodes.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: (0..n).map(|_| NodeSet::new(n)).collect(),
            edges: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}`. Returns `Ok(false)` when the edge already exists.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::NodeOutOfRange { node: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop { node: u });
        }
        if !self.adj[u].insert(v) {
            return Ok(false);
        }
        self.adj[v].insert(u);
        self.edges += 1;
        Ok(true)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &NodeSet {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.edges == n * n.saturating_sub(1) / 2
    }

    /// Subgraph induced by `nodes`; node `i` of the result is `nodes[i]`.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in nodes.iter().enumerate() {
            index[v] = i;
        }
        let mut h = Graph::new(nodes.len());
        for (i, &v) in nodes.iter().enumerate() {
            for u in self.adj[v].iter() {
                let j = index[u];
                if j != usize::MAX && i < j {
                    h.add_edge(i, j).expect("induced edge is valid");
                }
            }
        }
        h
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for u in self.adj[v].iter() {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Named graph families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    CompleteBipartite(usize, usize),
    /// G(n, p) with a ChaCha8 stream seeded by `seed`.
    Random { n: usize, p: f64, seed: u64 },
}

pub fn generate(kind: Family) -> Result<Graph> {
    let bad = |msg: &str| Err(Error::InvalidParameter(msg.into()));
    match kind {
        Family::Complete(n) => {
            if n == 0 {
                return bad("complete graph needs n >= 1");
            }
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    g.add_edge(u, v)?;
                }
            }
            Ok(g)
        }
        Family::Cycle(n) => {
            if n < 3 {
                return bad("a simple cycle needs n >= 3");
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Family::Path(n) => {
            if n == 0 {
                return bad("path needs n >= 1");
            }
            Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
        }
        Family::CompleteBipartite(a, b) => {
            if a + b == 0 {
                return bad("complete bipartite graph needs at least one node");
            }
            Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
        }
        Family::Random { n, p, seed } => {
            if n == 0 {
                return bad("random graph needs n >= 1");
            }
            if !(0.0..=1.0).contains(&p) {
                return bad("edge probability must lie in [0, 1]");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v)?;
                    }
                }
            }
            Ok(g)
        }
    }
}

/// Node → set of colors. A proper coloring has singleton sets; a
/// multicoloring may give a node several colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringAssignment {
    colors: Vec<Vec<usize>>,
}

impl ColoringAssignment {
    /// Each entry is sorted and deduplicated on construction.
    pub fn new(mut colors: Vec<Vec<usize>>) -> Self {
        for c in &mut colors {
            c.sort_unstable();
            c.dedup();
        }
        ColoringAssignment { colors }
    }

    /// One color per node.
    pub fn from_single(colors: &[usize]) -> Self {
        ColoringAssignment {
            colors: colors.iter().map(|&c| vec![c]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors_of(&self, v: usize) -> &[usize] {
        &self.colors[v]
    }

    pub fn as_slices(&self) -> &[Vec<usize>] {
        &self.colors
    }

    /// The single color of `v`, if it has exactly one.
    pub fn single(&self, v: usize) -> Option<usize> {
        match self.colors[v].as_slice() {
            [c] => Some(*c),
            _ => None,
        }
    }

    /// Number of distinct colors used.
    pub fn color_count(&self) -> usize {
        let mut all: Vec<usize> = self.colors.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    }

    /// Color → nodes carrying it.
    pub fn classes(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, cs) in self.colors.iter().enumerate() {
            for &c in cs {
                out.entry(c).or_default().push(v);
            }
        }
        out
    }
}

/// Every node outside `d` has a neighbor in `d`.
pub fn is_dominating_set(g: &Graph, d: &NodeSet) -> bool {
    (0..g.n()).all(|v| d.contains(v) || g.neighbors(v).intersects(d))
}

/// Every edge has an endpoint in `c`.
pub fn is_vertex_cover(g: &Graph, c: &NodeSet) -> bool {
    g.edges().all(|(u, v)| c.contains(u) || c.contains(v))
}

/// Adjacent nodes have disjoint color sets.
pub fn is_proper_coloring(g: &Graph, a: &ColoringAssignment) -> bool {
    if a.len() != g.n() {
        return false;
    }
    g.edges().all(|(u, v)| {
        let (cu, cv) = (a.colors_of(u), a.colors_of(v));
        !cu.iter().any(|c| cv.binary_search(c).is_ok())
    })
}

/// Proper, one color per node, exactly `k` nonempty classes, and every class
/// of size `⌊n/k⌋` or `⌈n/k⌉`.
pub fn is_equitable_coloring(g: &Graph, a: &ColoringAssignment, k: usize) -> bool {
    equitable_violation(g, a, k).is_none()
}

/// Explains why `a` is not an equitable `k`-coloring of `g`.
pub fn equitable_violation(g: &Graph, a: &ColoringAssignment, k: usize) -> Option<alloc::string::String> {
    let n = g.n();
    if k == 0 {
        return Some("k must be positive".into());
    }
    if a.len() != n {
        return Some(format!("assignment covers {} nodes, graph has {n}", a.len()));
    }
    if let Some(v) = (0..n).find(|&v| a.single(v).is_none()) {
        return Some(format!("node {v} does not carry exactly one color"));
    }
    if !is_proper_coloring(g, a) {
        return Some("coloring is not proper".into());
    }
    let classes = a.classes();
    if classes.len() != k {
        return Some(format!("{} color classes used, expected {k}", classes.len()));
    }
    let (lo, hi) = (n / k, n.div_ceil(k));
    for (c, members) in &classes {
        if members.len() < lo || members.len() > hi {
            return Some(format!("class {c} has {} nodes, allowed {lo}..={hi}", members.len()));
        }
    }
    None
}
