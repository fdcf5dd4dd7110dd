//! Equitable coloring parameterized by neighborhood diversity.
//!
//! Every color class of an equitable coloring is an independent set of `G`
//! and therefore lives inside the classes of some independent set `I` of
//! the type graph. Variables `z_I` count the colors whose class lives in
//! `I`, and `z_{I,i}` count the nodes of type class `i` taken by those
//! colors. When `k ∤ n` there are two color sizes, `⌈n/k⌉` for `n mod k`
//! colors and `⌊n/k⌋` for the rest; each size gets its own copy of the
//! variables ("tier").

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{equitable_violation, ColoringAssignment, Graph};
use crate::ilp::{solve_feasible, IlpModel, IlpOutcome, Relation, SolverConfig};
use crate::nodeset::NodeSet;
use crate::typepart::{type_graph, type_partition, ClassKind, TypePartition};

pub const DEFAULT_ND_CAP: usize = 20;

/// All nonempty independent sets of `h`, by size and then lexicographically.
pub fn enumerate_independent_sets(h: &Graph, cap: usize) -> Result<Vec<NodeSet>> {
    let n = h.n();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "type graph (neighborhood diversity)",
            size: n,
            cap,
        });
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend(h, 0, &mut chosen, &mut out);
    out.sort_by_key(NodeSet::len);
    Ok(out)
}

fn extend(h: &Graph, from: usize, chosen: &mut Vec<usize>, out: &mut Vec<NodeSet>) {
    for v in from..h.n() {
        if chosen.iter().any(|&u| h.has_edge(u, v)) {
            continue;
        }
        chosen.push(v);
        out.push(NodeSet::from_ids(h.n(), chosen.iter().copied()));
        extend(h, v + 1, chosen, out);
        chosen.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqcInstance {
    pub graph: Graph,
    pub k: usize,
}

/// `count` colors of class size `size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tier {
    pub size: usize,
    pub count: usize,
}

pub fn tiers(n: usize, k: usize) -> Vec<Tier> {
    let (lo, extra) = (n / k, n % k);
    let mut out = Vec::new();
    if extra > 0 {
        out.push(Tier {
            size: lo + 1,
            count: extra,
        });
    }
    out.push(Tier {
        size: lo,
        count: k - extra,
    });
    out
}

#[derive(Debug, Clone)]
pub struct EqcSystem {
    pub partition: TypePartition,
    pub type_graph: Graph,
    pub independent_sets: Vec<NodeSet>,
    /// Larger size first when there are two.
    pub tiers: Vec<Tier>,
    pub model: IlpModel,
    /// `set_var[t][I]` is the index of `z_I` in tier `t`.
    pub set_var: Vec<Vec<usize>>,
    /// `class_var[t][I]` lists `(i, index of z_{I,i})` for `i ∈ I` ascending.
    pub class_var: Vec<Vec<Vec<(usize, usize)>>>,
}

pub fn build_system(inst: &EqcInstance, nd_cap: usize) -> Result<EqcSystem> {
    let (g, k) = (&inst.graph, inst.k);
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("k = {k} must lie in 1..={n}")));
    }
    let partition = type_partition(g);
    let h = type_graph(g, &partition);
    let sets = enumerate_independent_sets(&h, nd_cap)?;
    let tiers = tiers(n, k);
    let mut model = IlpModel::new();
    let tag = |t: usize| if tiers.len() == 2 && t == 0 { "L" } else if tiers.len() == 2 { "S" } else { "" };

    let mut set_var: Vec<Vec<usize>> = Vec::new();
    for (t, tier) in tiers.iter().enumerate() {
        let vars: Vec<usize> = (0..sets.len())
            .map(|s| model.add_var(format!("z{}_{s}", tag(t)), 0, tier.count as i64))
            .collect();
        set_var.push(vars);
    }
    let mut class_var = Vec::new();
    for (t, _) in tiers.iter().enumerate() {
        let mut per_set = Vec::new();
        for (s, set) in sets.iter().enumerate() {
            let vars: Vec<(usize, usize)> = set
                .iter()
                .map(|i| {
                    let cap = partition.class(i).len() as i64;
                    (i, model.add_var(format!("z{}_{s}_{i}", tag(t)), 0, cap))
                })
                .collect();
            per_set.push(vars);
        }
        class_var.push(per_set);
    }

    // 1: each tier uses exactly its number of colors
    for (t, tier) in tiers.iter().enumerate() {
        model.add_constraint(set_var[t].iter().map(|&j| (j, 1)).collect(), Relation::Eq, tier.count as i64);
    }
    // 2: every node of every class is colored
    for i in 0..partition.len() {
        let terms: Vec<(usize, i64)> = class_var
            .iter()
            .flatten()
            .flatten()
            .filter(|&&(c, _)| c == i)
            .map(|&(_, j)| (j, 1))
            .collect();
        model.add_constraint(terms, Relation::Eq, partition.class(i).len() as i64);
    }
    // 3: colors of a set hold exactly the tier size each
    for (t, tier) in tiers.iter().enumerate() {
        for s in 0..sets.len() {
            let mut terms: Vec<(usize, i64)> = class_var[t][s].iter().map(|&(_, j)| (j, 1)).collect();
            terms.push((set_var[t][s], -(tier.size as i64)));
            model.add_constraint(terms, Relation::Eq, 0);
        }
    }
    // 4: a clique class contributes at most one node per color
    for t in 0..tiers.len() {
        for s in 0..sets.len() {
            for &(i, j) in &class_var[t][s] {
                if partition.class(i).kind == ClassKind::Clique {
                    model.add_constraint(vec![(set_var[t][s], 1), (j, -1)], Relation::Ge, 0);
                }
            }
        }
    }
    Ok(EqcSystem {
        partition,
        type_graph: h,
        independent_sets: sets,
        tiers,
        model,
        set_var,
        class_var,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EqcConfig {
    pub nd_cap: usize,
    pub ilp: SolverConfig,
}

impl Default for EqcConfig {
    fn default() -> Self {
        EqcConfig {
            nd_cap: DEFAULT_ND_CAP,
            ilp: SolverConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqcOutcome {
    /// An equitable `k`-coloring, or `None` when none exists.
    pub coloring: Option<ColoringAssignment>,
    pub nd: usize,
    pub independent_set_count: usize,
    pub ilp_vars: usize,
    pub nodes_explored: u64,
}

pub fn solve_eqc(inst: &EqcInstance) -> Result<EqcOutcome> {
    solve_eqc_with(inst, &EqcConfig::default())
}

pub fn solve_eqc_with(inst: &EqcInstance, cfg: &EqcConfig) -> Result<EqcOutcome> {
    let sys = build_system(inst, cfg.nd_cap)?;
    let outcome = solve_feasible(&sys.model, &cfg.ilp)?;
    let coloring = match &outcome {
        IlpOutcome::Solved(sol) => Some(reconstruct(&sys, &sol.values, inst)?),
        IlpOutcome::Infeasible { .. } => None,
    };
    Ok(EqcOutcome {
        coloring,
        nd: sys.partition.len(),
        independent_set_count: sys.independent_sets.len(),
        ilp_vars: sys.model.var_count(),
        nodes_explored: outcome.nodes_explored(),
    })
}

/// Turns a feasible assignment into a coloring by cycling each set's fresh
/// colors and drawing the lowest-id uncolored nodes class by class.
pub fn reconstruct(sys: &EqcSystem, values: &[i64], inst: &EqcInstance) -> Result<ColoringAssignment> {
    let p = &sys.partition;
    let mut taken = vec![0usize; p.len()];
    let mut color = vec![usize::MAX; p.node_count()];
    let mut next = 0usize;
    for (t, tier) in sys.tiers.iter().enumerate() {
        for s in 0..sys.independent_sets.len() {
            let z = values[sys.set_var[t][s]] as usize;
            if z == 0 {
                continue;
            }
            let fresh = next;
            next += z;
            let mut pos = 0usize;
            for &(i, j) in &sys.class_var[t][s] {
                let want = values[j] as usize;
                let members = &p.class(i).members;
                for &v in &members[taken[i]..taken[i] + want] {
                    color[v] = fresh + pos % z;
                    pos += 1;
                }
                taken[i] += want;
            }
            if pos != z * tier.size {
                return Err(Error::InvariantViolated(format!(
                    "set {s} drew {pos} nodes for {z} colors of size {}",
                    tier.size
                )));
            }
        }
    }
    if let Some(v) = color.iter().position(|&c| c == usize::MAX) {
        return Err(Error::InvariantViolated(format!("node {v} left uncolored")));
    }
    for (x, class) in p.classes().iter().enumerate() {
        if class.kind != ClassKind::Clique {
            continue;
        }
        let mut seen: Vec<usize> = class.members.iter().map(|&v| color[v]).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvariantViolated(format!("clique class {x} repeats a color")));
        }
    }
    let a = ColoringAssignment::from_single(&color);
    if let Some(why) = equitable_violation(&inst.graph, &a, inst.k) {
        return Err(Error::InvariantViolated(format!("reconstructed coloring: {why}")));
    }
    Ok(a)
}

/// Decision for every `k` in `kmin..=kmax`.
pub fn eqc_feasible_range(g: &Graph, kmin: usize, kmax: usize, cfg: &EqcConfig) -> Result<Vec<(usize, bool)>> {
    if kmin == 0 || kmin > kmax || kmax > g.n() {
        return Err(Error::InvalidParameter(format!(
            "range {kmin}..={kmax} must satisfy 1 <= kmin <= kmax <= {}",
            g.n()
        )));
    }
    (kmin..=kmax)
        .map(|k| {
            let inst = EqcInstance { graph: g.clone(), k };
            solve_eqc_with(&inst, cfg).map(|o| (k, o.coloring.is_some()))
        })
        .collect()
}
