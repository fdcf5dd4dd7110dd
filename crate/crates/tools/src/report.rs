//! JSON payloads written by the `itp` command.

use itp_core::gadgets::{BinPackingInstance, ReductionGraph, Role};
use itp_core::typepart::{type_graph, ClassKind, TypeSequence};
use itp_core::{ColoringAssignment, NodeSet};
use serde::{Deserialize, Serialize};

/// Envelope for every command's output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    /// SHA-256 of the input graph file, hex encoded.
    pub input_digest: Option<String>,
    pub version: String,
    pub warnings: Vec<String>,
    pub results: serde_json::Value,
    pub elapsed_ms: u64,
}

/// A node set or a coloring. Readers accept either key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Certificate {
    Nodes { nodes: Vec<usize> },
    Colors { colors: Vec<Vec<usize>> },
}

impl Certificate {
    pub fn from_set(s: &NodeSet) -> Self {
        Certificate::Nodes { nodes: s.to_vec() }
    }

    pub fn from_coloring(c: &ColoringAssignment) -> Self {
        Certificate::Colors {
            colors: c.as_slices().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReport {
    pub problem: String,
    pub value: usize,
    pub certificate: Certificate,
    pub valid: bool,
    pub itp: usize,
    pub nd: usize,
    /// Quotient steps the solver took before its base case.
    pub levels: usize,
    pub base_size: usize,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EqcReport {
    pub problem: String,
    pub k: usize,
    pub feasible: bool,
    pub certificate: Option<Certificate>,
    pub valid: Option<bool>,
    pub nd: usize,
    pub independent_set_count: usize,
    pub ilp_vars: usize,
    pub ilp_nodes_explored: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleReport {
    pub problem: String,
    /// Optimum size, color count, or 1/0 for an equitable yes/no.
    pub value: usize,
    pub certificate: Option<Certificate>,
    pub valid: Option<bool>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub problem: String,
    pub valid: bool,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassReport {
    pub members: Vec<usize>,
    pub kind: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelReport {
    pub n: usize,
    pub cliques: usize,
    pub independent: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<ClassReport>>,
    /// Edges of the next level's graph.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_edges: Option<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SequenceReport {
    pub n: usize,
    pub edges: usize,
    pub nd: usize,
    pub itp: usize,
    pub depth: usize,
    pub sizes: Vec<usize>,
    pub levels: Vec<LevelReport>,
}

fn kind_name(k: ClassKind) -> String {
    match k {
        ClassKind::Clique => "clique".into(),
        ClassKind::Independent => "independent".into(),
    }
}

impl SequenceReport {
    pub fn new(seq: &TypeSequence, full: bool) -> Self {
        let g = &seq.level(0).graph;
        let levels = seq
            .levels()
            .iter()
            .map(|l| {
                let classes = l.partition.classes();
                let cliques = classes.iter().filter(|c| c.is_clique()).count();
                LevelReport {
                    n: l.graph.n(),
                    cliques,
                    independent: classes.len() - cliques,
                    classes: full.then(|| {
                        classes
                            .iter()
                            .map(|c| ClassReport {
                                members: c.members.clone(),
                                kind: kind_name(c.kind),
                            })
                            .collect()
                    }),
                    quotient_edges: full.then(|| type_graph(&l.graph, &l.partition).edges().collect()),
                }
            })
            .collect();
        SequenceReport {
            n: g.n(),
            edges: g.edge_count(),
            nd: seq.nd(),
            itp: seq.itp(),
            depth: seq.depth(),
            sizes: seq.sizes(),
            levels,
        }
    }
}

/// `{"items": [...], "k": .., "B": ..}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub items: Vec<usize>,
    pub k: usize,
    #[serde(rename = "B")]
    pub capacity: usize,
}

impl From<InstanceFile> for BinPackingInstance {
    fn from(f: InstanceFile) -> Self {
        BinPackingInstance {
            items: f.items,
            k: f.k,
            capacity: f.capacity,
        }
    }
}

impl From<&BinPackingInstance> for InstanceFile {
    fn from(b: &BinPackingInstance) -> Self {
        InstanceFile {
            items: b.items.clone(),
            k: b.k,
            capacity: b.capacity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum RoleEntry {
    Chain1 { layer: usize },
    Chain2 { layer: usize },
    CapacityCenter,
    CapacityClique { clique: usize, pos: usize },
    ItemCenter { item: usize },
    ItemClique { item: usize, clique: usize, pos: usize },
}

impl From<Role> for RoleEntry {
    fn from(r: Role) -> Self {
        match r {
            Role::Chain1 { layer } => RoleEntry::Chain1 { layer },
            Role::Chain2 { layer } => RoleEntry::Chain2 { layer },
            Role::CapacityCenter => RoleEntry::CapacityCenter,
            Role::CapacityClique { clique, pos } => RoleEntry::CapacityClique { clique, pos },
            Role::ItemCenter { item } => RoleEntry::ItemCenter { item },
            Role::ItemClique { item, clique, pos } => RoleEntry::ItemClique { item, clique, pos },
        }
    }
}

/// Role map written next to a generated reduction graph; entry `i` is node `i`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RolesFile {
    pub instance: InstanceFile,
    pub roles: Vec<RoleEntry>,
}

impl RolesFile {
    pub fn new(r: &ReductionGraph) -> Self {
        RolesFile {
            instance: (&r.instance).into(),
            roles: r.roles.iter().map(|&x| x.into()).collect(),
        }
    }
}
