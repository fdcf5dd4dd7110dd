//! Minimum coloring through weighted multicoloring.
//!
//! Weights move down the sequence as the class sum (clique classes) or the
//! class maximum (independent classes). The base graph is solved with the
//! integer program
//!
//! ```text
//! minimize Σ_I z_I   subject to   Σ_{I ∋ u} z_I = w(u)   for every node u
//! ```
//!
//! over all nonempty independent sets `I`. Each `I` receives `z_I` fresh
//! colors, all of which go to every node of `I`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{FptConfig, Solved};
use crate::eqc::enumerate_independent_sets;
use crate::error::{Error, Result};
use crate::graph::{is_proper_coloring, ColoringAssignment, Graph};
use crate::ilp::{solve_min, IlpModel, IlpOutcome, Relation};
use crate::typepart::{type_sequence, ClassKind, TypePartition, TypeSequence};

/// Number of colors each node demands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticolorWeights {
    pub w: Vec<u64>,
}

impl MulticolorWeights {
    pub fn unit(n: usize) -> Self {
        MulticolorWeights { w: vec![1; n] }
    }
}

/// Weights of the quotient: sum over clique classes, max over independent ones.
pub fn lift_multicolor_weights(p: &TypePartition, w: &MulticolorWeights) -> MulticolorWeights {
    let w = p
        .classes()
        .iter()
        .map(|c| {
            let it = c.members.iter().map(|&v| w.w[v]);
            match c.kind {
                ClassKind::Clique => it.sum(),
                ClassKind::Independent => it.max().unwrap_or(0),
            }
        })
        .collect();
    MulticolorWeights { w }
}

pub fn multicoloring(h: &Graph, w: &MulticolorWeights) -> Result<ColoringAssignment> {
    multicoloring_with(h, w, &FptConfig::default()).map(|s| s.value)
}

pub fn multicoloring_with(h: &Graph, w: &MulticolorWeights, cfg: &FptConfig) -> Result<Solved<ColoringAssignment>> {
    if w.w.len() != h.n() {
        return Err(Error::InvalidParameter(format!(
            "{} weights for a graph with {} nodes",
            w.w.len(),
            h.n()
        )));
    }
    let seq = type_sequence(h);
    solve_on_sequence(&seq, w, cfg)
}

/// Proper coloring with the minimum number of colors, one per node.
pub fn coloring(g: &Graph) -> Result<ColoringAssignment> {
    coloring_with(g, &FptConfig::default()).map(|s| s.value)
}

pub fn coloring_with(g: &Graph, cfg: &FptConfig) -> Result<Solved<ColoringAssignment>> {
    multicoloring_with(g, &MulticolorWeights::unit(g.n()), cfg)
}

fn solve_on_sequence(seq: &TypeSequence, w: &MulticolorWeights, cfg: &FptConfig) -> Result<Solved<ColoringAssignment>> {
    let d = seq.depth();
    let mut weights = vec![w.clone()];
    for i in 0..d {
        let next = lift_multicolor_weights(&seq.level(i).partition, &weights[i]);
        weights.push(next);
    }
    let base = seq.base();
    let mut colors = base_case(base, &weights[d], cfg)?;
    let mut checks = 0;
    for i in (0..d).rev() {
        let level = seq.level(i);
        colors = coloring_lift(&level.partition, &colors, &weights[i])?;
        let sizes_ok = (0..level.graph.n()).all(|v| colors.colors_of(v).len() as u64 == weights[i].w[v]);
        if !sizes_ok || !is_proper_coloring(&level.graph, &colors) {
            return Err(Error::InvariantViolated(format!("level {i}: lifted multicoloring is not valid")));
        }
        checks += 1;
    }
    Ok(Solved {
        value: colors,
        depth: d,
        base_size: base.n(),
        checks,
    })
}

fn base_case(h: &Graph, w: &MulticolorWeights, cfg: &FptConfig) -> Result<ColoringAssignment> {
    let sets = enumerate_independent_sets(h, cfg.coloring_base_cap)?;
    let top = w.w.iter().copied().max().unwrap_or(0) as i64;
    let mut model = IlpModel::new();
    for (k, _) in sets.iter().enumerate() {
        model.add_var(format!("z{k}"), 0, top);
    }
    for u in 0..h.n() {
        let terms = sets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.contains(u))
            .map(|(k, _)| (k, 1))
            .collect();
        model.add_constraint(terms, Relation::Eq, w.w[u] as i64);
    }
    model.set_objective((0..sets.len()).map(|k| (k, 1)).collect());
    let sol = match solve_min(&model, &cfg.ilp)? {
        IlpOutcome::Solved(s) => s,
        IlpOutcome::Infeasible { .. } => {
            return Err(Error::InvariantViolated("multicoloring program has no solution".into()))
        }
    };
    let mut colors = vec![Vec::new(); h.n()];
    let mut next = 0usize;
    for (set, &z) in sets.iter().zip(&sol.values) {
        let fresh = next..next + z as usize;
        next += z as usize;
        for u in set.iter() {
            colors[u].extend(fresh.clone());
        }
    }
    Ok(ColoringAssignment::new(colors))
}

/// Distributes each metavertex's colors over its class: consecutive blocks
/// for a clique class, prefixes for an independent class.
pub fn coloring_lift(p: &TypePartition, c_quot: &ColoringAssignment, w: &MulticolorWeights) -> Result<ColoringAssignment> {
    let mut colors = vec![Vec::new(); p.node_count()];
    for (x, class) in p.classes().iter().enumerate() {
        let pool = c_quot.colors_of(x);
        let demand: Vec<usize> = class.members.iter().map(|&v| w.w[v] as usize).collect();
        let expected = match class.kind {
            ClassKind::Clique => demand.iter().sum(),
            ClassKind::Independent => demand.iter().copied().max().unwrap_or(0),
        };
        if pool.len() != expected {
            return Err(Error::InvariantViolated(format!(
                "metavertex {x} carries {} colors, its class needs {expected}",
                pool.len()
            )));
        }
        match class.kind {
            ClassKind::Clique => {
                let mut at = 0;
                for (&v, &k) in class.members.iter().zip(&demand) {
                    colors[v] = pool[at..at + k].to_vec();
                    at += k;
                }
            }
            ClassKind::Independent => {
                for (&v, &k) in class.members.iter().zip(&demand) {
                    colors[v] = pool[..k].to_vec();
                }
                let widest = &pool[..expected];
                let contained = class
                    .members
                    .iter()
                    .all(|&v| colors[v].iter().all(|c| widest.binary_search(c).is_ok()));
                if !contained {
                    return Err(Error::InvariantViolated(format!(
                        "independent class {x}: color sets are not nested"
                    )));
                }
            }
        }
    }
    Ok(ColoringAssignment::new(colors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::typepart::type_partition;

    fn mw(w: &[u64]) -> MulticolorWeights {
        MulticolorWeights { w: w.to_vec() }
    }

    #[test]
    fn multicoloring_examples() {
        let k2 = generate(Family::Complete(2)).unwrap();
        let c = multicoloring(&k2, &mw(&[2, 3])).unwrap();
        assert_eq!(c.color_count(), 5);
        let e2 = Graph::new(2);
        let c = multicoloring(&e2, &mw(&[2, 3])).unwrap();
        assert_eq!(c.color_count(), 3);
        let c4 = generate(Family::Cycle(4)).unwrap();
        let s = multicoloring_with(&c4, &MulticolorWeights::unit(4), &FptConfig::default()).unwrap();
        assert_eq!(s.value.color_count(), 2);
        assert_eq!((s.depth, s.base_size), (2, 1));
    }

    #[test]
    fn coloring_examples() {
        let k4 = generate(Family::Complete(4)).unwrap();
        assert_eq!(coloring(&k4).unwrap().color_count(), 4);
        let c5 = generate(Family::Cycle(5)).unwrap();
        let c = coloring(&c5).unwrap();
        assert_eq!(c.color_count(), 3);
        assert!(is_proper_coloring(&c5, &c));
        let kb = generate(Family::CompleteBipartite(3, 3)).unwrap();
        assert_eq!(coloring(&kb).unwrap().color_count(), 2);
    }

    #[test]
    fn colors_are_consecutive_from_zero() {
        let p = generate(Family::Path(5)).unwrap();
        let c = multicoloring(&p, &mw(&[1, 2, 3, 1, 2])).unwrap();
        let used: Vec<usize> = c.classes().keys().copied().collect();
        assert_eq!(used, (0..c.color_count()).collect::<Vec<_>>());
    }

    #[test]
    fn lift_examples() {
        let k2 = generate(Family::Complete(2)).unwrap();
        let p = type_partition(&k2);
        let quot = ColoringAssignment::new(vec![vec![5, 6, 7]]);
        let c = coloring_lift(&p, &quot, &mw(&[1, 2])).unwrap();
        assert_eq!(c.as_slices(), &[vec![5], vec![6, 7]]);

        let e2 = Graph::new(2);
        let p = type_partition(&e2);
        let quot = ColoringAssignment::new(vec![vec![5, 6]]);
        let c = coloring_lift(&p, &quot, &mw(&[1, 2])).unwrap();
        assert_eq!(c.as_slices(), &[vec![5], vec![5, 6]]);

        let one = Graph::new(1);
        let p = type_partition(&one);
        let quot = ColoringAssignment::new(vec![vec![1, 2, 3]]);
        let c = coloring_lift(&p, &quot, &mw(&[3])).unwrap();
        assert_eq!(c.as_slices(), &[vec![1, 2, 3]]);
    }

    #[test]
    fn lift_rejects_wrong_pool_size() {
        let k2 = generate(Family::Complete(2)).unwrap();
        let p = type_partition(&k2);
        let quot = ColoringAssignment::new(vec![vec![5, 6]]);
        assert!(matches!(coloring_lift(&p, &quot, &mw(&[1, 2])), Err(Error::InvariantViolated(_))));
    }

    #[test]
    fn zero_weights() {
        let k3 = generate(Family::Complete(3)).unwrap();
        let c = multicoloring(&k3, &mw(&[0, 2, 0])).unwrap();
        assert_eq!(c.color_count(), 2);
        assert!(c.colors_of(0).is_empty());
    }

    #[test]
    fn wrong_weight_length() {
        let k3 = generate(Family::Complete(3)).unwrap();
        assert!(matches!(multicoloring(&k3, &mw(&[1])), Err(Error::InvalidParameter(_))));
    }
}
