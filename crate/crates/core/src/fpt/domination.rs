//! Minimum dominating set through semi-total domination (Q-stds).
//!
//! A Q-stds of `H` is a set `D` such that every node of `Q` has a neighbor
//! in `D` and every other node is in `D` or has a neighbor in `D`. With
//! `Q = ∅` it is a dominating set.
//!
//! The demand passed to the quotient is: `x ∈ Q′` iff `V_x` is independent,
//! or `V_x` is a clique contained in `Q`. A selected clique class that is
//! not wholly demanded is represented by its lowest-id undemanded member,
//! which then dominates the demanded rest of the class. The recursion stops
//! at the first base graph or complete graph of the sequence.

use alloc::format;
use alloc::vec::Vec;

use super::{FptConfig, Solved};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::nodeset::NodeSet;
use crate::subsets::ByPopcount;
use crate::typepart::{type_sequence, ClassKind, TypePartition, TypeSequence};

pub fn is_qstds(h: &Graph, q: &NodeSet, d: &NodeSet) -> bool {
    (0..h.n()).all(|v| {
        let dominated = h.neighbors(v).intersects(d);
        if q.contains(v) {
            dominated
        } else {
            dominated || d.contains(v)
        }
    })
}

/// Demand set of the quotient graph.
pub fn ds_demand_lift(p: &TypePartition, q: &NodeSet) -> NodeSet {
    let mut out = NodeSet::new(p.len());
    for (x, class) in p.classes().iter().enumerate() {
        let demanded = match class.kind {
            ClassKind::Independent => true,
            ClassKind::Clique => class.members.iter().all(|&v| q.contains(v)),
        };
        if demanded {
            out.insert(x);
        }
    }
    out
}

/// One node per selected class: the lowest-id member, except that a clique
/// class with undemanded members uses its lowest-id undemanded member.
pub fn ds_solution_lift(p: &TypePartition, d_quot: &NodeSet, q: &NodeSet) -> NodeSet {
    let mut out = NodeSet::new(p.node_count());
    for x in d_quot.iter() {
        let class = p.class(x);
        let rep = match class.kind {
            ClassKind::Clique => class
                .members
                .iter()
                .copied()
                .find(|&v| !q.contains(v))
                .unwrap_or(class.members[0]),
            ClassKind::Independent => class.members[0],
        };
        out.insert(rep);
    }
    out
}

pub fn dominating_set(g: &Graph) -> Result<NodeSet> {
    dominating_set_with(g, &FptConfig::default()).map(|s| s.value)
}

pub fn dominating_set_with(g: &Graph, cfg: &FptConfig) -> Result<Solved<NodeSet>> {
    stds_with(g, &NodeSet::new(g.n()), cfg)?
        .ok_or_else(|| Error::InvariantViolated("plain domination reported infeasible".into()))
}

/// Minimum Q-stds, or `None` when a node of `Q` has no neighbor at all.
pub fn stds(h: &Graph, q: &NodeSet) -> Result<Option<NodeSet>> {
    Ok(stds_with(h, q, &FptConfig::default())?.map(|s| s.value))
}

pub fn stds_with(h: &Graph, q: &NodeSet, cfg: &FptConfig) -> Result<Option<Solved<NodeSet>>> {
    let n = h.n();
    let mut out = Solved {
        value: NodeSet::new(n),
        depth: 0,
        base_size: 0,
        checks: 0,
    };
    for comp in h.components() {
        if comp.len() == 1 {
            let v = comp[0];
            if q.contains(v) {
                return Ok(None);
            }
            out.value.insert(v);
            out.base_size = out.base_size.max(1);
            continue;
        }
        let sub = h.induced_subgraph(&comp);
        let sub_q = NodeSet::from_ids(comp.len(), (0..comp.len()).filter(|&i| q.contains(comp[i])));
        let seq = type_sequence(&sub);
        let (d, depth, base) = match recurse(&seq, 0, sub_q, cfg, &mut out.checks)? {
            Some(r) => r,
            None => {
                return Err(Error::InvariantViolated(format!(
                    "connected component of {} nodes reported infeasible",
                    comp.len()
                )))
            }
        };
        for i in d.iter() {
            out.value.insert(comp[i]);
        }
        out.depth = out.depth.max(depth);
        out.base_size = out.base_size.max(base);
    }
    Ok(Some(out))
}

fn recurse(
    seq: &TypeSequence,
    i: usize,
    q: NodeSet,
    cfg: &FptConfig,
    checks: &mut usize,
) -> Result<Option<(NodeSet, usize, usize)>> {
    let level = seq.level(i);
    let h = &level.graph;
    if i == seq.depth() || h.is_complete() {
        return Ok(brute_force(h, &q, cfg.base_cap)?.map(|d| (d, i, h.n())));
    }
    let p = &level.partition;
    let q_quot = ds_demand_lift(p, &q);
    let Some((d_quot, depth, base)) = recurse(seq, i + 1, q_quot, cfg, checks)? else {
        return Ok(None);
    };
    let d = ds_solution_lift(p, &d_quot, &q);
    for (x, class) in p.classes().iter().enumerate() {
        let hits = class.members.iter().filter(|&&v| d.contains(v)).count();
        if hits > 1 {
            return Err(Error::InvariantViolated(format!(
                "level {i}: {hits} selected nodes in type class {x}"
            )));
        }
    }
    if !is_qstds(h, &q, &d) {
        return Err(Error::InvariantViolated(format!("level {i}: lifted set is not a Q-stds")));
    }
    *checks += 1;
    Ok(Some((d, depth, base)))
}

/// First minimum Q-stds in popcount order.
fn brute_force(h: &Graph, q: &NodeSet, cap: usize) -> Result<Option<NodeSet>> {
    let n = h.n();
    if n > cap.min(63) {
        return Err(Error::CapExceeded {
            what: "dominating-set base graph",
            size: n,
            cap: cap.min(63),
        });
    }
    let nb: Vec<u64> = (0..n).map(|v| h.neighbors(v).iter().fold(0u64, |m, u| m | 1 << u)).collect();
    if q.iter().any(|v| nb[v] == 0) {
        return Ok(None);
    }
    let ok = |m: u64| {
        (0..n).all(|v| nb[v] & m != 0 || (!q.contains(v) && m >> v & 1 == 1))
    };
    Ok(ByPopcount::new(n)
        .find(|&m| ok(m))
        .map(|m| NodeSet::from_ids(n, (0..n).filter(|&v| m >> v & 1 == 1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, is_dominating_set, Family};
    use crate::typepart::type_partition;
    use alloc::vec;

    #[test]
    fn examples() {
        let star = generate(Family::CompleteBipartite(1, 5)).unwrap();
        assert_eq!(dominating_set(&star).unwrap().to_vec(), vec![0]);
        let c4 = generate(Family::Cycle(4)).unwrap();
        let d = dominating_set(&c4).unwrap();
        assert_eq!(d.to_vec(), vec![0, 1]);
        let c5 = generate(Family::Cycle(5)).unwrap();
        let d = dominating_set(&c5).unwrap();
        assert_eq!(d.len(), 2);
        assert!(is_dominating_set(&c5, &d));
    }

    #[test]
    fn stds_examples() {
        let k2 = generate(Family::Complete(2)).unwrap();
        assert_eq!(stds(&k2, &NodeSet::from_ids(2, [0])).unwrap().unwrap().to_vec(), vec![1]);
        assert_eq!(stds(&k2, &NodeSet::full(2)).unwrap().unwrap().len(), 2);
        assert_eq!(stds(&Graph::new(1), &NodeSet::full(1)).unwrap(), None);
    }

    #[test]
    fn demand_lift_examples() {
        let c4 = generate(Family::Cycle(4)).unwrap();
        let p = type_partition(&c4);
        assert_eq!(ds_demand_lift(&p, &NodeSet::new(4)).to_vec(), vec![0, 1]);
        let k3 = generate(Family::Complete(3)).unwrap();
        let p = type_partition(&k3);
        assert!(ds_demand_lift(&p, &NodeSet::new(3)).is_empty());
        // a partly demanded clique class can still dominate itself
        assert!(ds_demand_lift(&p, &NodeSet::from_ids(3, [1])).is_empty());
        assert_eq!(ds_demand_lift(&p, &NodeSet::full(3)).to_vec(), vec![0]);
    }

    #[test]
    fn solution_lift_examples() {
        let c4 = generate(Family::Cycle(4)).unwrap();
        let p = type_partition(&c4);
        let none = NodeSet::new(4);
        assert_eq!(ds_solution_lift(&p, &NodeSet::full(2), &none).to_vec(), vec![0, 1]);
        assert!(ds_solution_lift(&p, &NodeSet::new(2), &none).is_empty());
        let k3 = generate(Family::Complete(3)).unwrap();
        let p = type_partition(&k3);
        let lifted = ds_solution_lift(&p, &NodeSet::full(1), &NodeSet::from_ids(3, [0]));
        assert_eq!(lifted.to_vec(), vec![1]);
    }

    #[test]
    fn clique_classes_joined_through_a_universal_layer() {
        // A={0,1} independent, b=2, C={3,4} and D={5,6} cliques; A and b
        // see everything, C and D are not adjacent. {b} dominates alone.
        let mut g = Graph::new(7);
        for u in [0, 1, 2] {
            for v in 0..7 {
                if u != v && !(u < 2 && v < 2) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g.add_edge(3, 4).unwrap();
        g.add_edge(5, 6).unwrap();
        let d = dominating_set(&g).unwrap();
        assert_eq!(d.len(), 1);
        assert!(is_dominating_set(&g, &d));
    }

    #[test]
    fn disconnected_with_isolated_nodes() {
        let mut g = Graph::new(6);
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 2).unwrap();
        g.add_edge(4, 5).unwrap();
        let d = dominating_set(&g).unwrap();
        assert_eq!(d.len(), 3);
        assert!(is_dominating_set(&g, &d));
        let q = NodeSet::from_ids(6, [3]);
        assert_eq!(stds(&g, &q).unwrap(), None);
    }

    #[test]
    fn depth_stops_at_complete_level() {
        let c4 = generate(Family::Cycle(4)).unwrap();
        let s = dominating_set_with(&c4, &FptConfig::default()).unwrap();
        assert_eq!((s.depth, s.base_size), (1, 2));
    }

    #[test]
    fn base_cap_refuses() {
        let c = generate(Family::Cycle(12)).unwrap();
        let cfg = FptConfig {
            base_cap: 8,
            ..FptConfig::default()
        };
        assert!(matches!(dominating_set_with(&c, &cfg), Err(Error::CapExceeded { .. })));
    }
}
