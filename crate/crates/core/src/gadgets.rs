//! Hardness gadgets for equitable coloring and the expansion generator.
//!
//! The reduction graph for a bin-packing instance `(A, k, B)` is two
//! `(k, ℓ, B)`-chains, one `(a_j, k)`-flower per item and one `(B, k)`-flower,
//! with every flower node joined to every chain node. It has an equitable
//! `(k+3)`-coloring exactly when the items pack into `k` bins of sum `B`.
//!
//! Colors are 0-based throughout: bins use `0..k`, the capacity flower's
//! center uses `k`, and the chains use `k+1` and `k+2`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{equitable_violation, ColoringAssignment, Graph};
use crate::typepart::{is_base_graph, type_sequence};

fn bad<T>(msg: String) -> Result<T> {
    Err(Error::InvalidParameter(msg))
}

/// A center joined to `a + 1` disjoint `k`-cliques. Node 0 is the center.
pub fn flower(a: usize, k: usize) -> Result<Graph> {
    if a == 0 || k == 0 {
        return bad(format!("flower needs a >= 1 and k >= 1, got a={a}, k={k}"));
    }
    let mut g = Graph::new(1 + (a + 1) * k);
    add_flower(&mut g, 0, a, k);
    Ok(g)
}

fn add_flower(g: &mut Graph, center: usize, a: usize, k: usize) {
    for c in 0..=a {
        let start = center + 1 + c * k;
        for u in start..start + k {
            g.add_edge(center, u).expect("flower edge");
            for v in u + 1..start + k {
                g.add_edge(u, v).expect("flower edge");
            }
        }
    }
}

/// Layers `S_1..S_k` of size `B` and `S_{k+1}` of size `ℓ+1`, consecutive
/// layers completely joined.
pub fn chain(k: usize, l: usize, b: usize) -> Result<Graph> {
    if k == 0 || l == 0 || b == 0 {
        return bad(format!("chain needs k, l, B >= 1, got k={k}, l={l}, B={b}"));
    }
    let mut g = Graph::new(k * b + l + 1);
    add_chain(&mut g, 0, k, l, b);
    Ok(g)
}

/// Node ranges of the chain layers starting at `offset`.
fn chain_layers(offset: usize, k: usize, l: usize, b: usize) -> Vec<core::ops::Range<usize>> {
    let mut out = Vec::with_capacity(k + 1);
    let mut at = offset;
    for i in 0..=k {
        let size = if i < k { b } else { l + 1 };
        out.push(at..at + size);
        at += size;
    }
    out
}

fn add_chain(g: &mut Graph, offset: usize, k: usize, l: usize, b: usize) {
    let layers = chain_layers(offset, k, l, b);
    for pair in layers.windows(2) {
        for u in pair[0].clone() {
            for v in pair[1].clone() {
                g.add_edge(u, v).expect("chain edge");
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinPackingInstance {
    pub items: Vec<usize>,
    pub k: usize,
    pub capacity: usize,
}

impl BinPackingInstance {
    pub fn total(&self) -> usize {
        self.items.iter().sum()
    }

    /// Items sum to exactly `k·B`.
    pub fn is_exact(&self) -> bool {
        self.total() == self.k * self.capacity
    }

    /// Checks that `bins` is a partition of the item indices into `k` bins
    /// each summing to `B`.
    pub fn check_packing(&self, bins: &[Vec<usize>]) -> Result<()> {
        if bins.len() != self.k {
            return Err(Error::InvalidCertificate(format!("{} bins given, expected {}", bins.len(), self.k)));
        }
        let mut seen = vec![false; self.items.len()];
        for (i, bin) in bins.iter().enumerate() {
            for &j in bin {
                if j >= self.items.len() || core::mem::replace(&mut seen[j], true) {
                    return Err(Error::InvalidCertificate(format!("item {j} missing or repeated")));
                }
            }
            let sum: usize = bin.iter().map(|&j| self.items[j]).sum();
            if sum != self.capacity {
                return Err(Error::InvalidCertificate(format!("bin {i} sums to {sum}, capacity is {}", self.capacity)));
            }
        }
        if let Some(j) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidCertificate(format!("item {j} is not packed")));
        }
        Ok(())
    }
}

/// Pads with unit items up to total `k·B`.
pub fn normalize_exact(items: &[usize], k: usize, capacity: usize) -> Result<BinPackingInstance> {
    if k == 0 || capacity == 0 || items.iter().any(|&a| a == 0 || a > capacity) {
        return bad("need k, B >= 1 and every item in 1..=B".into());
    }
    let total: usize = items.iter().sum();
    if total > k * capacity {
        return bad(format!("items sum to {total}, more than k*B = {}", k * capacity));
    }
    let mut items = items.to_vec();
    items.resize(items.len() + (k * capacity - total), 1);
    Ok(BinPackingInstance { items, k, capacity })
}

/// What each node of a reduction graph stands for. Layers, cliques and
/// positions are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Chain1 { layer: usize },
    Chain2 { layer: usize },
    CapacityCenter,
    CapacityClique { clique: usize, pos: usize },
    ItemCenter { item: usize },
    ItemClique { item: usize, clique: usize, pos: usize },
}

impl Role {
    pub fn is_chain(&self) -> bool {
        matches!(self, Role::Chain1 { .. } | Role::Chain2 { .. })
    }
}

#[derive(Debug, Clone)]
pub struct ReductionGraph {
    pub graph: Graph,
    pub roles: Vec<Role>,
    pub instance: BinPackingInstance,
}

impl ReductionGraph {
    pub fn capacity_center(&self) -> usize {
        self.roles.iter().position(|r| *r == Role::CapacityCenter).expect("capacity center")
    }

    pub fn item_center(&self, item: usize) -> usize {
        self.roles
            .iter()
            .position(|r| *r == Role::ItemCenter { item })
            .expect("item center")
    }
}

/// `(k+3)(Bk + ℓ + 1)`, the node count when the instance is exact.
pub fn expected_node_count(inst: &BinPackingInstance) -> usize {
    (inst.k + 3) * (inst.capacity * inst.k + inst.items.len() + 1)
}

/// The construction itself, without the exactness requirement. Node order:
/// first chain, second chain, capacity flower, then item flowers in order;
/// each flower lists its center first.
pub fn build_reduction_graph(inst: &BinPackingInstance) -> Result<ReductionGraph> {
    let (k, b, l) = (inst.k, inst.capacity, inst.items.len());
    if k == 0 || b == 0 || l == 0 || inst.items.contains(&0) {
        return bad("need k, B >= 1 and a nonempty list of positive items".into());
    }
    let chain_len = k * b + l + 1;
    let n = 2 * chain_len + 1 + (b + 1) * k + inst.items.iter().map(|a| 1 + (a + 1) * k).sum::<usize>();
    let mut g = Graph::new(n);
    let mut roles = Vec::with_capacity(n);
    for (c, offset) in [0, chain_len].into_iter().enumerate() {
        add_chain(&mut g, offset, k, l, b);
        for (layer, range) in chain_layers(offset, k, l, b).into_iter().enumerate() {
            for _ in range {
                roles.push(if c == 0 { Role::Chain1 { layer } } else { Role::Chain2 { layer } });
            }
        }
    }
    let mut at = 2 * chain_len;
    add_flower(&mut g, at, b, k);
    roles.push(Role::CapacityCenter);
    for clique in 0..=b {
        for pos in 0..k {
            roles.push(Role::CapacityClique { clique, pos });
        }
    }
    at += 1 + (b + 1) * k;
    for (item, &a) in inst.items.iter().enumerate() {
        add_flower(&mut g, at, a, k);
        roles.push(Role::ItemCenter { item });
        for clique in 0..=a {
            for pos in 0..k {
                roles.push(Role::ItemClique { item, clique, pos });
            }
        }
        at += 1 + (a + 1) * k;
    }
    debug_assert_eq!(at, n);
    for u in 2 * chain_len..n {
        for v in 0..2 * chain_len {
            g.add_edge(u, v)?;
        }
    }
    Ok(ReductionGraph {
        graph: g,
        roles,
        instance: inst.clone(),
    })
}

/// The reduction for exact instances with `k >= 2`.
pub fn reduce_binpacking_to_eqc(inst: &BinPackingInstance) -> Result<ReductionGraph> {
    if inst.k < 2 {
        return bad(format!("the reduction needs k >= 2, got {}", inst.k));
    }
    if !inst.is_exact() {
        return bad(format!(
            "items sum to {}, not k*B = {}; pad the instance with normalize_exact first",
            inst.total(),
            inst.k * inst.capacity
        ));
    }
    let r = build_reduction_graph(inst)?;
    debug_assert_eq!(r.graph.n(), expected_node_count(inst));
    Ok(r)
}

/// Equitable `(k+3)`-coloring built from a packing given as item-index bins.
pub fn coloring_from_packing(r: &ReductionGraph, bins: &[Vec<usize>]) -> Result<ColoringAssignment> {
    let inst = &r.instance;
    inst.check_packing(bins)?;
    let k = inst.k;
    let mut bin_of = vec![0; inst.items.len()];
    for (i, bin) in bins.iter().enumerate() {
        for &j in bin {
            bin_of[j] = i;
        }
    }
    let colors: Vec<usize> = r
        .roles
        .iter()
        .map(|role| match *role {
            Role::Chain1 { layer } => k + 2 - layer % 2,
            Role::Chain2 { layer } => k + 1 + layer % 2,
            Role::CapacityCenter => k,
            Role::CapacityClique { pos, .. } => pos,
            Role::ItemCenter { item } => bin_of[item],
            // the k colors of 0..=k other than the center's, in order
            Role::ItemClique { item, pos, .. } => {
                if pos < bin_of[item] {
                    pos
                } else {
                    pos + 1
                }
            }
        })
        .collect();
    let a = ColoringAssignment::from_single(&colors);
    if let Some(why) = equitable_violation(&r.graph, &a, k + 3) {
        return Err(Error::InvariantViolated(format!("constructed coloring: {why}")));
    }
    Ok(a)
}

/// Reads a packing off an equitable `(k+3)`-coloring: bins are the color
/// classes of the item centers once the chain colors and the capacity
/// center's color are set aside.
pub fn packing_from_coloring(r: &ReductionGraph, a: &ColoringAssignment) -> Result<Vec<Vec<usize>>> {
    let inst = &r.instance;
    let k = inst.k;
    if let Some(why) = equitable_violation(&r.graph, a, k + 3) {
        return Err(Error::InvalidCertificate(why));
    }
    let color = |v: usize| a.single(v).expect("validated single colors");
    let mut chain_colors: Vec<usize> = (0..r.graph.n()).filter(|&v| r.roles[v].is_chain()).map(color).collect();
    chain_colors.sort_unstable();
    chain_colors.dedup();
    if chain_colors.len() != 2 {
        return Err(Error::InvariantViolated(format!(
            "chains use {} colors, expected exactly 2",
            chain_colors.len()
        )));
    }
    if (0..r.graph.n()).any(|v| !r.roles[v].is_chain() && chain_colors.contains(&color(v))) {
        return Err(Error::InvariantViolated("a flower node shares a chain color".into()));
    }
    let z = color(r.capacity_center());
    let centers: Vec<usize> = (0..inst.items.len()).map(|j| color(r.item_center(j))).collect();
    if let Some(j) = centers.iter().position(|&c| c == z) {
        return Err(Error::InvariantViolated(format!(
            "item {j}'s center shares the capacity center's color"
        )));
    }
    let bin_colors: Vec<usize> = a
        .classes()
        .into_keys()
        .filter(|c| *c != z && !chain_colors.contains(c))
        .collect();
    let mut bins = vec![Vec::new(); bin_colors.len()];
    for (j, c) in centers.iter().enumerate() {
        let i = bin_colors.binary_search(c).expect("center color is a bin color");
        bins[i].push(j);
    }
    inst.check_packing(&bins)
        .map_err(|e| Error::InvariantViolated(format!("extracted packing is invalid: {e}")))?;
    Ok(bins)
}

/// How many copies each node becomes at one expansion step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    Fixed(usize),
    /// Uniform in `lo..=hi`, drawn per node and level.
    Uniform { lo: usize, hi: usize },
}

/// Builds `H^(0)` from a connected base graph `H^(d)`: for `i = d..1`,
/// every node of `H^(i)` becomes an independent set when `d − i` is even
/// and a clique when it is odd, and edges become complete joins.
pub fn expand(base: &Graph, d: usize, mult: Multiplicity, seed: u64) -> Result<Graph> {
    if d == 0 {
        return bad("expansion depth must be at least 1".into());
    }
    match mult {
        Multiplicity::Fixed(m) if m < 2 => return bad(format!("multiplicity {m} is below 2")),
        Multiplicity::Uniform { lo, hi } if lo < 2 || lo > hi => {
            return bad(format!("multiplicity range {lo}..={hi} must start at 2 or more"))
        }
        _ => {}
    }
    if base.n() == 0 || !base.is_connected() || !is_base_graph(base) {
        return bad("expansion needs a nonempty connected base graph".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = base.clone();
    for step in 0..d {
        let clique = step % 2 == 1;
        let sizes: Vec<usize> = (0..cur.n())
            .map(|_| match mult {
                Multiplicity::Fixed(m) => m,
                Multiplicity::Uniform { lo, hi } => rng.gen_range(lo..=hi),
            })
            .collect();
        let mut start = Vec::with_capacity(cur.n() + 1);
        start.push(0);
        for &s in &sizes {
            start.push(start.last().unwrap() + s);
        }
        let mut next = Graph::new(start[cur.n()]);
        for x in 0..cur.n() {
            if clique {
                for u in start[x]..start[x + 1] {
                    for v in u + 1..start[x + 1] {
                        next.add_edge(u, v)?;
                    }
                }
            }
        }
        for (x, y) in cur.edges() {
            for u in start[x]..start[x + 1] {
                for v in start[y]..start[y + 1] {
                    next.add_edge(u, v)?;
                }
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// Measured against expected structure of a reduction graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub node_count: usize,
    pub expected_node_count: usize,
    pub itp: usize,
    pub expected_itp: usize,
    pub nd: usize,
    /// Size of the first quotient when every gadget piece collapses to one
    /// node: `2(k+1) + (B+2) + Σ(a_j + 2)`.
    pub expected_nd: usize,
    pub sizes: Vec<usize>,
}

impl ReductionReport {
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut cmp = |what: &str, got: usize, want: usize| {
            if got != want {
                out.push(format!("{what}: measured {got}, expected {want}"));
            }
        };
        cmp("node count", self.node_count, self.expected_node_count);
        cmp("itp", self.itp, self.expected_itp);
        cmp("nd", self.nd, self.expected_nd);
        out
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

pub fn verify_reduction_invariants(r: &ReductionGraph) -> ReductionReport {
    let inst = &r.instance;
    let seq = type_sequence(&r.graph);
    ReductionReport {
        node_count: r.graph.n(),
        expected_node_count: expected_node_count(inst),
        itp: seq.itp(),
        expected_itp: 2 * inst.k + 3,
        nd: seq.nd(),
        expected_nd: 2 * (inst.k + 1) + inst.capacity + 2 + inst.items.iter().map(|a| a + 2).sum::<usize>(),
        sizes: seq.sizes(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, is_equitable_coloring, Family};
    use crate::typepart::{itp, nd, type_partition};

    fn inst(items: &[usize], k: usize, b: usize) -> BinPackingInstance {
        BinPackingInstance {
            items: items.to_vec(),
            k,
            capacity: b,
        }
    }

    #[test]
    fn flower_examples() {
        assert_eq!(flower(4, 3).unwrap().n(), 16);
        let f = flower(1, 1).unwrap();
        assert_eq!((f.n(), f.edge_count()), (3, 2));
        let f = flower(2, 2).unwrap();
        assert_eq!((f.n(), f.degree(0)), (7, 6));
        assert!(flower(0, 2).is_err());
    }

    #[test]
    fn chain_examples() {
        assert_eq!(chain(3, 5, 4).unwrap().n(), 18);
        let c = chain(1, 1, 1).unwrap();
        assert_eq!((c.n(), c.edge_count()), (3, 2));
        let c = chain(2, 2, 3).unwrap();
        assert_eq!((c.n(), c.edge_count()), (9, 18));
    }

    #[test]
    fn closed_form_counts() {
        for a in 1..=6 {
            for k in 1..=6 {
                let f = flower(a, k).unwrap();
                assert_eq!(f.n(), 1 + (a + 1) * k);
                assert_eq!(f.edge_count(), (a + 1) * (k + k * (k - 1) / 2));
            }
        }
        for k in 1..=6 {
            for l in 1..=6 {
                for b in 1..=6 {
                    let c = chain(k, l, b).unwrap();
                    assert_eq!(c.n(), k * b + l + 1);
                    assert_eq!(c.edge_count(), (k - 1) * b * b + b * (l + 1));
                }
            }
        }
    }

    #[test]
    fn reduction_sizes() {
        assert_eq!(reduce_binpacking_to_eqc(&inst(&[1, 1, 2], 2, 2)).unwrap().graph.n(), 40);
        assert_eq!(reduce_binpacking_to_eqc(&inst(&[1, 1], 2, 1)).unwrap().graph.n(), 25);
        assert!(reduce_binpacking_to_eqc(&inst(&[2, 1, 2, 3], 3, 4)).is_err());
        assert!(reduce_binpacking_to_eqc(&inst(&[3], 1, 3)).is_err());
    }

    #[test]
    fn non_exact_instance_is_smaller_than_the_formula() {
        let r = build_reduction_graph(&inst(&[2, 1, 2, 3], 3, 4)).unwrap();
        assert_eq!(r.graph.n(), 90);
        assert_eq!(expected_node_count(&r.instance), 102);
        let rep = verify_reduction_invariants(&r);
        assert_eq!((rep.itp, rep.nd), (9, 30));
    }

    #[test]
    fn two_bins_collapse_further() {
        // with k = 2 the chain's outer layers are twins of each other
        let r = reduce_binpacking_to_eqc(&inst(&[1, 1, 2], 2, 2)).unwrap();
        let rep = verify_reduction_invariants(&r);
        assert_eq!(rep.sizes, vec![40, 18, 10, 5, 2, 1]);
        assert_eq!(rep.expected_nd, 20);
    }

    #[test]
    fn invariants_hold_for_three_bins_and_more() {
        for (items, k, b) in [(&[1, 2, 3][..], 3, 2), (&[1, 1, 1, 1][..], 4, 1), (&[2, 2, 1, 1, 3, 3][..], 3, 4)] {
            let r = reduce_binpacking_to_eqc(&inst(items, k, b)).unwrap();
            let rep = verify_reduction_invariants(&r);
            assert!(rep.passed(), "{:?}", rep.failures());
        }
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_exact(&[2, 2], 2, 3).unwrap().items, vec![2, 2, 1, 1]);
        assert_eq!(normalize_exact(&[1, 1, 2], 2, 2).unwrap().items, vec![1, 1, 2]);
        assert_eq!(normalize_exact(&[3], 1, 3).unwrap().items, vec![3]);
        assert!(normalize_exact(&[3, 3], 1, 3).is_err());
    }

    #[test]
    fn packing_round_trip() {
        let r = reduce_binpacking_to_eqc(&inst(&[1, 1, 2], 2, 2)).unwrap();
        let bins = vec![vec![2], vec![0, 1]];
        let c = coloring_from_packing(&r, &bins).unwrap();
        assert!(is_equitable_coloring(&r.graph, &c, 5));
        assert!(c.classes().values().all(|m| m.len() == 8));
        assert_eq!(packing_from_coloring(&r, &c).unwrap(), bins);

        let r = reduce_binpacking_to_eqc(&inst(&[1, 1], 2, 1)).unwrap();
        let c = coloring_from_packing(&r, &[vec![0], vec![1]]).unwrap();
        assert!(c.classes().values().all(|m| m.len() == 5));
    }

    #[test]
    fn extraction_ignores_color_names() {
        let r = reduce_binpacking_to_eqc(&inst(&[1, 1, 2], 2, 2)).unwrap();
        let bins = vec![vec![2], vec![0, 1]];
        let c = coloring_from_packing(&r, &bins).unwrap();
        let perm = [3, 0, 4, 2, 1];
        let renamed: Vec<usize> = (0..r.graph.n()).map(|v| perm[c.single(v).unwrap()]).collect();
        let mut got = packing_from_coloring(&r, &ColoringAssignment::from_single(&renamed)).unwrap();
        got.sort();
        let mut want = bins;
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn rejects_bad_inputs() {
        let r = reduce_binpacking_to_eqc(&inst(&[1, 1, 2], 2, 2)).unwrap();
        assert!(matches!(
            coloring_from_packing(&r, &[vec![0], vec![1, 2]]),
            Err(Error::InvalidCertificate(_))
        ));
        let all_zero = ColoringAssignment::from_single(&vec![0; r.graph.n()]);
        assert!(matches!(packing_from_coloring(&r, &all_zero), Err(Error::InvalidCertificate(_))));
    }

    #[test]
    fn expansion_examples() {
        let c5 = generate(Family::Cycle(5)).unwrap();
        let g = expand(&c5, 1, Multiplicity::Fixed(2), 0).unwrap();
        assert_eq!((g.n(), itp(&g)), (10, 5));
        let g = expand(&c5, 2, Multiplicity::Fixed(2), 0).unwrap();
        assert_eq!(g.n(), 20);
        assert!(nd(&g) >= 10);
        let p4 = generate(Family::Path(4)).unwrap();
        let g = expand(&p4, 1, Multiplicity::Fixed(2), 0).unwrap();
        assert_eq!((g.n(), itp(&g)), (8, 4));
    }

    #[test]
    fn expansion_recovers_the_sequence() {
        let p6 = generate(Family::Path(6)).unwrap();
        let g = expand(&p6, 3, Multiplicity::Uniform { lo: 2, hi: 4 }, 11).unwrap();
        let seq = type_sequence(&g);
        assert_eq!((seq.depth(), seq.itp()), (3, 6));
        assert_eq!(expand(&p6, 3, Multiplicity::Uniform { lo: 2, hi: 4 }, 11).unwrap(), g);
        assert_eq!(type_partition(&g).len(), seq.level(1).graph.n());
    }

    #[test]
    fn expansion_rejects_bad_bases() {
        let c4 = generate(Family::Cycle(4)).unwrap();
        assert!(expand(&c4, 1, Multiplicity::Fixed(2), 0).is_err());
        let mut two_paths = Graph::new(8);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7)] {
            two_paths.add_edge(u, v).unwrap();
        }
        assert!(expand(&two_paths, 1, Multiplicity::Fixed(2), 0).is_err());
        let p4 = generate(Family::Path(4)).unwrap();
        assert!(expand(&p4, 1, Multiplicity::Fixed(1), 0).is_err());
    }
}
