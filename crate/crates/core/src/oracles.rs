//! Brute-force ground truth. Nothing here shares solving code with the
//! parameterized solvers; only `Graph` and the validators are common.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gadgets::BinPackingInstance;
use crate::graph::{ColoringAssignment, Graph};
use crate::nodeset::NodeSet;

pub const DS_GUARD: usize = 20;
pub const VC_GUARD: usize = 20;
pub const CHROMATIC_GUARD: usize = 18;
pub const MULTICOLOR_GUARD: u64 = 18;
pub const EQUITABLE_GUARD: usize = 12;
pub const BINPACKING_GUARD: usize = 16;

/// Upper limit on backtracking steps for the search-based oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_nodes_explored: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_nodes_explored: 1_000_000_000,
        }
    }
}

fn guard(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        return Err(Error::CapExceeded { what, size, cap });
    }
    Ok(())
}

struct Counter {
    used: u64,
    limit: u64,
}

impl Counter {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded { explored: self.used - 1 });
        }
        Ok(())
    }
}

/// Lexicographic `size`-subsets of `0..n`, stopping at the first accepted.
fn first_subset(n: usize, size: usize, mut accept: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if accept(&idx) {
            return Some(idx);
        }
        let mut i = size;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - size + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| (0..g.n()).filter(|&u| g.has_edge(u, v)).fold(0u32, |m, u| m | 1 << u))
        .collect()
}

/// Minimum dominating set by trying all subsets in increasing size.
pub fn bf_dominating_set(g: &Graph) -> Result<NodeSet> {
    let n = g.n();
    guard("dominating-set oracle input", n, DS_GUARD)?;
    let closed: Vec<u32> = masks(g).iter().enumerate().map(|(v, m)| m | 1 << v).collect();
    let full = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    for size in 0..=n {
        let hit = first_subset(n, size, |s| s.iter().fold(0u32, |m, &v| m | closed[v]) == full);
        if let Some(s) = hit {
            return Ok(NodeSet::from_ids(n, s));
        }
    }
    unreachable!("the whole node set dominates")
}

/// Minimum vertex cover by trying all subsets in increasing size.
pub fn bf_vertex_cover(g: &Graph) -> Result<NodeSet> {
    let n = g.n();
    guard("vertex-cover oracle input", n, VC_GUARD)?;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for size in 0..=n {
        let hit = first_subset(n, size, |s| {
            let m = s.iter().fold(0u32, |m, &v| m | 1 << v);
            edges.iter().all(|&(u, v)| m >> u & 1 == 1 || m >> v & 1 == 1)
        });
        if let Some(s) = hit {
            return Ok(NodeSet::from_ids(n, s));
        }
    }
    unreachable!("the whole node set covers")
}

pub fn bf_chromatic(g: &Graph) -> Result<(usize, ColoringAssignment)> {
    bf_chromatic_with(g, &OracleBudget::default())
}

/// Chromatic number by backtracking with increasing `k`. Nodes are taken by
/// decreasing degree and a node may open at most one new color.
pub fn bf_chromatic_with(g: &Graph, budget: &OracleBudget) -> Result<(usize, ColoringAssignment)> {
    let n = g.n();
    guard("chromatic oracle input", n, CHROMATIC_GUARD)?;
    if n == 0 {
        return Ok((0, ColoringAssignment::new(Vec::new())));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(g.degree(v)), v));
    let mut counter = Counter {
        used: 0,
        limit: budget.max_nodes_explored,
    };
    for k in 1..=n {
        let mut color = vec![usize::MAX; n];
        if color_rec(g, &order, 0, k, 0, &mut color, &mut counter)? {
            return Ok((k, ColoringAssignment::from_single(&color)));
        }
    }
    unreachable!("n colors always suffice")
}

fn color_rec(
    g: &Graph,
    order: &[usize],
    at: usize,
    k: usize,
    opened: usize,
    color: &mut [usize],
    counter: &mut Counter,
) -> Result<bool> {
    if at == order.len() {
        return Ok(true);
    }
    let v = order[at];
    for c in 0..k.min(opened + 1) {
        counter.tick()?;
        if g.neighbors(v).iter().any(|u| color[u] == c) {
            continue;
        }
        color[v] = c;
        if color_rec(g, order, at + 1, k, opened.max(c + 1), color, counter)? {
            return Ok(true);
        }
        color[v] = usize::MAX;
    }
    Ok(false)
}

pub fn bf_multicolor(g: &Graph, w: &[u64]) -> Result<(usize, ColoringAssignment)> {
    bf_multicolor_with(g, w, &OracleBudget::default())
}

/// Minimum multicoloring through the blow-up graph: node `v` becomes a
/// clique of `w(v)` copies and copies of adjacent nodes are all joined. A
/// proper coloring of the blow-up gives `v` the distinct colors of its
/// copies, and adjacent originals get disjoint sets because every pair of
/// their copies is an edge. Conversely a multicoloring hands its colors out
/// to the copies one each. So both minima agree.
pub fn bf_multicolor_with(g: &Graph, w: &[u64], budget: &OracleBudget) -> Result<(usize, ColoringAssignment)> {
    if w.len() != g.n() {
        return Err(Error::InvalidParameter(format!("{} weights for {} nodes", w.len(), g.n())));
    }
    let total: u64 = w.iter().sum();
    guard("multicolor oracle total weight", total as usize, MULTICOLOR_GUARD as usize)?;
    let mut owner = Vec::new();
    for (v, &k) in w.iter().enumerate() {
        owner.extend(core::iter::repeat_n(v, k as usize));
    }
    let mut blow = Graph::new(owner.len());
    for a in 0..owner.len() {
        for b in a + 1..owner.len() {
            if owner[a] == owner[b] || g.has_edge(owner[a], owner[b]) {
                blow.add_edge(a, b)?;
            }
        }
    }
    let (k, c) = bf_chromatic_with(&blow, budget)?;
    let mut sets = vec![Vec::new(); g.n()];
    for (a, &v) in owner.iter().enumerate() {
        sets[v].push(c.single(a).expect("one color per copy"));
    }
    Ok((k, ColoringAssignment::new(sets)))
}

pub fn bf_equitable(g: &Graph, k: usize) -> Result<Option<ColoringAssignment>> {
    bf_equitable_with(g, k, &OracleBudget::default())
}

/// Equitable `k`-coloring by backtracking over nodes in id order with
/// per-class capacity budgets.
pub fn bf_equitable_with(g: &Graph, k: usize, budget: &OracleBudget) -> Result<Option<ColoringAssignment>> {
    let n = g.n();
    guard("equitable oracle input", n, EQUITABLE_GUARD)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if k > n {
        return Ok(None);
    }
    let mut st = EqState {
        g,
        k,
        lo: n / k,
        hi: n.div_ceil(k),
        big_left: n % k,
        count: vec![0; k],
        color: vec![usize::MAX; n],
        counter: Counter {
            used: 0,
            limit: budget.max_nodes_explored,
        },
    };
    Ok(if st.rec(0, 0)? {
        Some(ColoringAssignment::from_single(&st.color))
    } else {
        None
    })
}

struct EqState<'a> {
    g: &'a Graph,
    k: usize,
    lo: usize,
    hi: usize,
    /// Classes that may still reach the larger size.
    big_left: usize,
    count: Vec<usize>,
    color: Vec<usize>,
    counter: Counter,
}

impl EqState<'_> {
    fn rec(&mut self, v: usize, opened: usize) -> Result<bool> {
        let n = self.g.n();
        if v == n {
            return Ok(self.count.iter().all(|&c| c >= self.lo && c > 0));
        }
        let deficit: usize = self.count.iter().map(|&c| self.lo.saturating_sub(c)).sum();
        if deficit > n - v {
            return Ok(false);
        }
        for c in 0..self.k.min(opened + 1) {
            self.counter.tick()?;
            let grows_big = self.count[c] + 1 == self.hi && self.hi > self.lo;
            if self.count[c] + 1 > self.hi || (grows_big && self.big_left == 0) {
                continue;
            }
            if self.g.neighbors(v).iter().any(|u| self.color[u] == c) {
                continue;
            }
            self.color[v] = c;
            self.count[c] += 1;
            if grows_big {
                self.big_left -= 1;
            }
            if self.rec(v + 1, opened.max(c + 1))? {
                return Ok(true);
            }
            if grows_big {
                self.big_left += 1;
            }
            self.count[c] -= 1;
            self.color[v] = usize::MAX;
        }
        Ok(false)
    }
}

pub fn bf_binpacking(inst: &BinPackingInstance) -> Result<Option<Vec<Vec<usize>>>> {
    bf_binpacking_with(inst, &OracleBudget::default())
}

/// Exact packing of all items into `k` bins of sum `B`, as item-index bins.
/// An item only ever opens the first empty bin.
pub fn bf_binpacking_with(inst: &BinPackingInstance, budget: &OracleBudget) -> Result<Option<Vec<Vec<usize>>>> {
    let l = inst.items.len();
    guard("bin-packing oracle item count", l, BINPACKING_GUARD)?;
    if inst.k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if inst.items.iter().sum::<usize>() != inst.k * inst.capacity {
        return Ok(None);
    }
    let mut load = vec![0usize; inst.k];
    let mut bin = vec![usize::MAX; l];
    let mut counter = Counter {
        used: 0,
        limit: budget.max_nodes_explored,
    };
    if !pack_rec(inst, 0, &mut load, &mut bin, &mut counter)? {
        return Ok(None);
    }
    let mut bins = vec![Vec::new(); inst.k];
    for (j, &b) in bin.iter().enumerate() {
        bins[b].push(j);
    }
    Ok(Some(bins))
}

fn pack_rec(
    inst: &BinPackingInstance,
    j: usize,
    load: &mut [usize],
    bin: &mut [usize],
    counter: &mut Counter,
) -> Result<bool> {
    if j == inst.items.len() {
        return Ok(load.iter().all(|&s| s == inst.capacity));
    }
    let a = inst.items[j];
    for b in 0..inst.k {
        counter.tick()?;
        if load[b] + a > inst.capacity {
            continue;
        }
        let was_empty = load[b] == 0;
        load[b] += a;
        bin[j] = b;
        if pack_rec(inst, j + 1, load, bin, counter)? {
            return Ok(true);
        }
        load[b] -= a;
        if was_empty {
            break;
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, is_dominating_set, is_equitable_coloring, is_proper_coloring, is_vertex_cover, Family};

    #[test]
    fn dominating_examples() {
        let c5 = generate(Family::Cycle(5)).unwrap();
        let d = bf_dominating_set(&c5).unwrap();
        assert_eq!(d.len(), 2);
        assert!(is_dominating_set(&c5, &d));
        assert_eq!(bf_dominating_set(&generate(Family::Complete(6)).unwrap()).unwrap().len(), 1);
        assert_eq!(bf_dominating_set(&Graph::new(4)).unwrap().len(), 4);
        assert!(bf_dominating_set(&Graph::new(21)).unwrap_err().is_refusal());
    }

    #[test]
    fn cover_examples() {
        let c4 = generate(Family::Cycle(4)).unwrap();
        let c = bf_vertex_cover(&c4).unwrap();
        assert_eq!(c.len(), 2);
        assert!(is_vertex_cover(&c4, &c));
        assert_eq!(bf_vertex_cover(&generate(Family::Complete(4)).unwrap()).unwrap().len(), 3);
        assert!(bf_vertex_cover(&Graph::new(5)).unwrap().is_empty());
    }

    #[test]
    fn chromatic_examples() {
        let c5 = generate(Family::Cycle(5)).unwrap();
        let (k, c) = bf_chromatic(&c5).unwrap();
        assert_eq!(k, 3);
        assert!(is_proper_coloring(&c5, &c));
        assert_eq!(bf_chromatic(&generate(Family::CompleteBipartite(2, 3)).unwrap()).unwrap().0, 2);
        assert_eq!(bf_chromatic(&generate(Family::Complete(5)).unwrap()).unwrap().0, 5);
    }

    #[test]
    fn multicolor_examples() {
        let k2 = generate(Family::Complete(2)).unwrap();
        assert_eq!(bf_multicolor(&k2, &[2, 3]).unwrap().0, 5);
        assert_eq!(bf_multicolor(&Graph::new(2), &[2, 3]).unwrap().0, 3);
        let p3 = generate(Family::Path(3)).unwrap();
        let (k, c) = bf_multicolor(&p3, &[1, 2, 1]).unwrap();
        assert_eq!(k, 3);
        assert!(is_proper_coloring(&p3, &c));
        assert_eq!(c.colors_of(1).len(), 2);
    }

    #[test]
    fn equitable_examples() {
        let c4 = generate(Family::Cycle(4)).unwrap();
        let c = bf_equitable(&c4, 2).unwrap().unwrap();
        assert!(is_equitable_coloring(&c4, &c, 2));
        let star = generate(Family::CompleteBipartite(1, 3)).unwrap();
        assert!(bf_equitable(&star, 2).unwrap().is_none());
        assert!(bf_equitable(&generate(Family::Complete(4)).unwrap(), 3).unwrap().is_none());
        assert!(bf_equitable(&Graph::new(13), 2).unwrap_err().is_refusal());
    }

    #[test]
    fn binpacking_examples() {
        let inst = |items: &[usize], k, capacity| BinPackingInstance {
            items: items.to_vec(),
            k,
            capacity,
        };
        let got = bf_binpacking(&inst(&[2, 2, 1, 3], 2, 4)).unwrap().unwrap();
        assert_eq!(got, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(bf_binpacking(&inst(&[1, 3], 2, 2)).unwrap(), None);
        assert_eq!(bf_binpacking(&inst(&[5], 1, 5)).unwrap(), Some(vec![vec![0]]));
    }

    #[test]
    fn budget_is_a_refusal() {
        let k = generate(Family::Complete(8)).unwrap();
        let tiny = OracleBudget { max_nodes_explored: 5 };
        assert!(matches!(bf_chromatic_with(&k, &tiny), Err(Error::BudgetExceeded { .. })));
    }
}
