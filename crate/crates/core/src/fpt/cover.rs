//! Minimum vertex cover through the two-weight problem (2-WVC): find a
//! cover `C` minimizing `Σ_{v∈C} s(v) + Σ_{v∉C} w(v)` where `w ≤ s`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{FptConfig, Solved};
use crate::error::{Error, Result};
use crate::graph::{is_vertex_cover, Graph};
use crate::nodeset::NodeSet;
use crate::subsets::ByPopcount;
use crate::typepart::{type_sequence, ClassKind, TypePartition};

/// Cost `w(v)` when `v` stays out of the cover, `s(v)` when it is in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VcWeights {
    pub w: Vec<u64>,
    pub s: Vec<u64>,
}

impl VcWeights {
    /// `w = 0`, `s = 1`: plain minimum vertex cover.
    pub fn unit(n: usize) -> Self {
        VcWeights {
            w: vec![0; n],
            s: vec![1; n],
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.w.len() != n || self.s.len() != n {
            return Err(Error::InvalidParameter(format!("weights must cover all {n} nodes")));
        }
        if let Some(v) = (0..n).find(|&v| self.w[v] > self.s[v]) {
            return Err(Error::InvalidParameter(format!("w({v}) exceeds s({v})")));
        }
        Ok(())
    }
}

pub fn vc_cost(weights: &VcWeights, c: &NodeSet) -> u64 {
    (0..weights.w.len())
        .map(|v| if c.contains(v) { weights.s[v] } else { weights.w[v] })
        .sum()
}

/// The member a clique class leaves out when its metavertex is uncovered:
/// largest `s − w`, ties to the lowest id.
fn left_out(members: &[usize], weights: &VcWeights) -> usize {
    let mut best = members[0];
    for &v in &members[1..] {
        if weights.s[v] - weights.w[v] > weights.s[best] - weights.w[best] {
            best = v;
        }
    }
    best
}

pub fn lift_vc_weights(p: &TypePartition, weights: &VcWeights) -> VcWeights {
    let mut w = Vec::with_capacity(p.len());
    let mut s = Vec::with_capacity(p.len());
    for class in p.classes() {
        let s_sum: u64 = class.members.iter().map(|&v| weights.s[v]).sum();
        let w_x = match class.kind {
            ClassKind::Clique => {
                let v = left_out(&class.members, weights);
                s_sum - weights.s[v] + weights.w[v]
            }
            ClassKind::Independent => class.members.iter().map(|&v| weights.w[v]).sum(),
        };
        w.push(w_x);
        s.push(s_sum);
    }
    VcWeights { w, s }
}

pub fn vertex_cover(g: &Graph) -> Result<NodeSet> {
    vertex_cover_with(g, &FptConfig::default()).map(|s| s.value)
}

pub fn vertex_cover_with(g: &Graph, cfg: &FptConfig) -> Result<Solved<NodeSet>> {
    let s = wvc2_with(g, &VcWeights::unit(g.n()), cfg)?;
    Ok(Solved {
        value: s.value.0,
        depth: s.depth,
        base_size: s.base_size,
        checks: s.checks,
    })
}

pub fn wvc2(h: &Graph, weights: &VcWeights) -> Result<(NodeSet, u64)> {
    wvc2_with(h, weights, &FptConfig::default()).map(|s| s.value)
}

pub fn wvc2_with(h: &Graph, weights: &VcWeights, cfg: &FptConfig) -> Result<Solved<(NodeSet, u64)>> {
    weights.check(h.n())?;
    let seq = type_sequence(h);
    let d = seq.depth();
    let mut per_level = vec![weights.clone()];
    for i in 0..d {
        let next = lift_vc_weights(&seq.level(i).partition, &per_level[i]);
        per_level.push(next);
    }
    let (mut cover, mut cost) = base_case(seq.base(), &per_level[d], cfg.base_cap)?;
    let mut checks = 0;
    for i in (0..d).rev() {
        let level = seq.level(i);
        let wt = &per_level[i];
        let mut lifted = NodeSet::new(level.graph.n());
        for (x, class) in level.partition.classes().iter().enumerate() {
            if cover.contains(x) {
                for &v in &class.members {
                    lifted.insert(v);
                }
            } else if class.kind == ClassKind::Clique {
                let out = left_out(&class.members, wt);
                for &v in class.members.iter().filter(|&&v| v != out) {
                    lifted.insert(v);
                }
            }
        }
        let lifted_cost = vc_cost(wt, &lifted);
        if lifted_cost != cost {
            return Err(Error::InvariantViolated(format!(
                "level {i}: cost {lifted_cost} differs from quotient cost {cost}"
            )));
        }
        if !is_vertex_cover(&level.graph, &lifted) {
            return Err(Error::InvariantViolated(format!("level {i}: lifted set is not a cover")));
        }
        checks += 1;
        cover = lifted;
        cost = lifted_cost;
    }
    Ok(Solved {
        value: (cover, cost),
        depth: d,
        base_size: seq.base().n(),
        checks,
    })
}

/// First cheapest cover in popcount order.
fn base_case(h: &Graph, weights: &VcWeights, cap: usize) -> Result<(NodeSet, u64)> {
    let n = h.n();
    if n > cap.min(63) {
        return Err(Error::CapExceeded {
            what: "vertex-cover base graph",
            size: n,
            cap: cap.min(63),
        });
    }
    let edges: Vec<u64> = h.edges().map(|(u, v)| 1 << u | 1 << v).collect();
    let cost = |m: u64| -> u64 {
        (0..n)
            .map(|v| if m >> v & 1 == 1 { weights.s[v] } else { weights.w[v] })
            .sum()
    };
    let mut best: Option<(u64, u64)> = None;
    for m in ByPopcount::new(n) {
        if edges.iter().any(|&e| e & m == 0) {
            continue;
        }
        let c = cost(m);
        if best.is_none_or(|(b, _)| c < b) {
            best = Some((c, m));
        }
    }
    let (c, m) = best.expect("the full node set is a cover");
    Ok((NodeSet::from_ids(n, (0..n).filter(|&v| m >> v & 1 == 1)), c))
}
