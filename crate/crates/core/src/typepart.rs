//! Type partitions, type graphs and the type graph sequence.
//!
//! Two nodes `u`, `v` have the same type when `N(u) \ {v} = N(v) \ {u}`.
//! Same-type nodes are either false twins (equal open neighborhoods, hence
//! non-adjacent) or true twins (equal closed neighborhoods), so the classes
//! are found by grouping nodes on both keys and merging groups that share
//! either one.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::nodeset::NodeSet;

/// Whether a type class induces a clique or an independent set.
/// Singleton classes count as cliques.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Clique,
    Independent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeClass {
    /// Sorted member ids.
    pub members: Vec<usize>,
    pub kind: ClassKind,
}

impl TypeClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_clique(&self) -> bool {
        self.kind == ClassKind::Clique
    }
}

/// The coarsest partition of a graph into type classes, ordered by smallest
/// member. Class `x` becomes node `x` of the type graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypePartition {
    classes: Vec<TypeClass>,
    class_of: Vec<usize>,
}

impl TypePartition {
    pub fn classes(&self) -> &[TypeClass] {
        &self.classes
    }

    pub fn class(&self, x: usize) -> &TypeClass {
        &self.classes[x]
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    /// Number of classes, i.e. the neighborhood diversity.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of partitioned nodes.
    pub fn node_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.classes.len() == self.class_of.len()
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}

pub fn type_partition(g: &Graph) -> TypePartition {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut open: BTreeMap<&NodeSet, usize> = BTreeMap::new();
    let mut closed: BTreeMap<NodeSet, usize> = BTreeMap::new();
    for v in 0..n {
        let nb = g.neighbors(v);
        match open.get(nb) {
            Some(&u) => union(&mut parent, u, v),
            None => {
                open.insert(nb, v);
            }
        }
        let mut key = nb.clone();
        key.insert(v);
        match closed.get(&key) {
            Some(&u) => union(&mut parent, u, v),
            None => {
                closed.insert(key, v);
            }
        }
    }

    // roots are class minima since union keeps the smaller id
    let mut class_of = alloc::vec![usize::MAX; n];
    let mut classes: Vec<TypeClass> = Vec::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        if r == v {
            class_of[v] = classes.len();
            classes.push(TypeClass {
                members: alloc::vec![v],
                kind: ClassKind::Clique,
            });
        } else {
            let x = class_of[r];
            class_of[v] = x;
            classes[x].members.push(v);
        }
    }
    for c in &mut classes {
        if c.members.len() > 1 && !g.has_edge(c.members[0], c.members[1]) {
            c.kind = ClassKind::Independent;
        }
    }
    TypePartition { classes, class_of }
}

/// Quotient graph: one node per class, `x ~ y` iff the classes are
/// completely joined. Node ids equal class indices.
pub fn type_graph(g: &Graph, p: &TypePartition) -> Graph {
    let t = p.len();
    let mut h = Graph::new(t);
    for x in 0..t {
        let rep = p.classes[x].members[0];
        for u in g.neighbors(rep).iter() {
            let y = p.class_of[u];
            if y > x {
                h.add_edge(x, y).expect("quotient edge is valid");
            }
        }
    }
    h
}

/// Checks the all-or-nothing edge rule between every pair of classes and
/// the clique/independent kind of every class.
pub fn check_quotient(g: &Graph, p: &TypePartition) -> Result<()> {
    for (x, cx) in p.classes.iter().enumerate() {
        let want_inside = cx.kind == ClassKind::Clique;
        for (i, &u) in cx.members.iter().enumerate() {
            for &v in &cx.members[i + 1..] {
                if g.has_edge(u, v) != want_inside {
                    return Err(Error::InvariantViolated(format!(
                        "class {x} is not a uniform {:?}",
                        cx.kind
                    )));
                }
            }
        }
        for y in x + 1..p.len() {
            let cy = &p.classes[y];
            let joined = g.has_edge(cx.members[0], cy.members[0]);
            for &u in &cx.members {
                for &v in &cy.members {
                    if g.has_edge(u, v) != joined {
                        return Err(Error::InvariantViolated(format!(
                            "classes {x} and {y} are partially joined"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn nd(g: &Graph) -> usize {
    type_partition(g).len()
}

pub fn is_base_graph(g: &Graph) -> bool {
    type_partition(g).is_discrete()
}

pub fn itp(g: &Graph) -> usize {
    type_sequence(g).base().n()
}

/// One graph of the type graph sequence with its type partition.
#[derive(Debug, Clone)]
pub struct Level {
    pub graph: Graph,
    pub partition: TypePartition,
}

/// `H(0) = G, H(1), …, H(d)` where each graph is the type graph of the
/// previous one and `H(d)` is the first base graph.
#[derive(Debug, Clone)]
pub struct TypeSequence {
    levels: Vec<Level>,
}

impl TypeSequence {
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &Level {
        &self.levels[i]
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn base(&self) -> &Graph {
        &self.levels[self.depth()].graph
    }

    pub fn itp(&self) -> usize {
        self.base().n()
    }

    /// Class count of the input graph.
    pub fn nd(&self) -> usize {
        self.levels[0].partition.len()
    }

    /// Node counts `|V(H(i))|` for every level.
    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.graph.n()).collect()
    }
}

pub fn type_sequence(g: &Graph) -> TypeSequence {
    let mut levels = Vec::new();
    let mut cur = g.clone();
    loop {
        let partition = type_partition(&cur);
        debug_assert!(check_quotient(&cur, &partition).is_ok());
        if partition.is_discrete() {
            levels.push(Level {
                graph: cur,
                partition,
            });
            return TypeSequence { levels };
        }
        let next = type_graph(&cur, &partition);
        levels.push(Level {
            graph: cur,
            partition,
        });
        cur = next;
    }
}
