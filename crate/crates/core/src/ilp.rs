//! Exact solver for small integer programs over bounded variables.
//!
//! Depth-first branch and bound: after every branching decision each
//! touched constraint is propagated to bounds consistency, and during
//! minimization the objective is kept as an extra `≤ incumbent − 1` row.
//! Model sizes here are governed by the graph parameter, not by `n`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Var {
    pub name: String,
    pub lo: i64,
    pub hi: i64,
}

/// `Σ coef·x (relation) rhs`, with sparse `(variable, coefficient)` terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub terms: Vec<(usize, i64)>,
    pub relation: Relation,
    pub rhs: i64,
}

impl Constraint {
    fn activity(&self, values: &[i64]) -> i128 {
        self.terms.iter().map(|&(j, a)| a as i128 * values[j] as i128).sum()
    }

    pub fn is_satisfied(&self, values: &[i64]) -> bool {
        let act = self.activity(values);
        let rhs = self.rhs as i128;
        match self.relation {
            Relation::Eq => act == rhs,
            Relation::Le => act <= rhs,
            Relation::Ge => act >= rhs,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IlpModel {
    vars: Vec<Var>,
    constraints: Vec<Constraint>,
    objective: Option<Vec<(usize, i64)>>,
}

impl IlpModel {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a variable with inclusive bounds; returns its index.
    pub fn add_var(&mut self, name: impl Into<String>, lo: i64, hi: i64) -> usize {
        assert!(lo <= hi, "empty domain [{lo}, {hi}]");
        self.vars.push(Var {
            name: name.into(),
            lo,
            hi,
        });
        self.vars.len() - 1
    }

    pub fn add_constraint(&mut self, terms: Vec<(usize, i64)>, relation: Relation, rhs: i64) {
        assert!(terms.iter().all(|&(j, _)| j < self.vars.len()), "term refers to an undeclared variable");
        self.constraints.push(Constraint { terms, relation, rhs });
    }

    /// Minimize `Σ coef·x`.
    pub fn set_objective(&mut self, terms: Vec<(usize, i64)>) {
        assert!(terms.iter().all(|&(j, _)| j < self.vars.len()));
        self.objective = Some(terms);
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> Option<&[(usize, i64)]> {
        self.objective.as_deref()
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    /// Bounds and every constraint hold for `values`.
    pub fn is_feasible(&self, values: &[i64]) -> bool {
        values.len() == self.vars.len()
            && self.vars.iter().zip(values).all(|(v, &x)| v.lo <= x && x <= v.hi)
            && self.constraints.iter().all(|c| c.is_satisfied(values))
    }

    pub fn objective_value(&self, values: &[i64]) -> Option<i64> {
        self.objective
            .as_ref()
            .map(|t| t.iter().map(|&(j, a)| a * values[j]).sum())
    }
}

/// LP-style listing for inspection.
impl fmt::Display for IlpModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term_list = |f: &mut fmt::Formatter<'_>, terms: &[(usize, i64)]| -> fmt::Result {
            if terms.is_empty() {
                return write!(f, "0");
            }
            for (i, &(j, a)) in terms.iter().enumerate() {
                let sign = if a < 0 { "-" } else if i > 0 { "+" } else { "" };
                let sep = if i > 0 { " " } else { "" };
                let mag = a.unsigned_abs();
                if mag == 1 {
                    write!(f, "{sep}{sign}{}{}", if i > 0 { " " } else { "" }, self.vars[j].name)?;
                } else {
                    write!(f, "{sep}{sign}{}{} {}", if i > 0 { " " } else { "" }, mag, self.vars[j].name)?;
                }
            }
            Ok(())
        };
        match &self.objective {
            Some(t) => {
                write!(f, "minimize\n  ")?;
                term_list(f, t)?;
                writeln!(f)?;
            }
            None => writeln!(f, "feasibility")?,
        }
        writeln!(f, "subject to")?;
        for c in &self.constraints {
            write!(f, "  ")?;
            term_list(f, &c.terms)?;
            let rel = match c.relation {
                Relation::Eq => "=",
                Relation::Le => "<=",
                Relation::Ge => ">=",
            };
            writeln!(f, " {rel} {}", c.rhs)?;
        }
        writeln!(f, "bounds")?;
        for v in &self.vars {
            writeln!(f, "  {} <= {} <= {}", v.lo, v.name, v.hi)?;
        }
        write!(f, "end")
    }
}

/// Which unfixed variable the search branches on next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branching {
    /// Lowest declaration index.
    Declaration,
    /// Smallest remaining domain, ties to the lowest index.
    SmallestDomain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Maximum number of search nodes (branching decisions) before giving up.
    pub node_budget: u64,
    pub branching: Branching,
}

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            branching: Branching::Declaration,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpSolution {
    pub values: Vec<i64>,
    pub objective: Option<i64>,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IlpOutcome {
    Solved(IlpSolution),
    Infeasible { nodes_explored: u64 },
}

impl IlpOutcome {
    pub fn solution(&self) -> Option<&IlpSolution> {
        match self {
            IlpOutcome::Solved(s) => Some(s),
            IlpOutcome::Infeasible { .. } => None,
        }
    }

    pub fn nodes_explored(&self) -> u64 {
        match self {
            IlpOutcome::Solved(s) => s.nodes_explored,
            IlpOutcome::Infeasible { nodes_explored } => *nodes_explored,
        }
    }
}

/// First assignment found in branching order, or `Infeasible`.
pub fn solve_feasible(model: &IlpModel, config: &SolverConfig) -> Result<IlpOutcome> {
    Search::new(model, config, false).run()
}

/// An assignment of minimum objective value; the earliest optimum in
/// branching order wins ties.
pub fn solve_min(model: &IlpModel, config: &SolverConfig) -> Result<IlpOutcome> {
    if model.objective.is_none() {
        return Err(Error::InvalidParameter("solve_min needs an objective".into()));
    }
    Search::new(model, config, true).run()
}

struct Row {
    terms: Vec<(usize, i64)>,
    relation: Relation,
    rhs: i64,
}

struct Search<'a> {
    model: &'a IlpModel,
    config: &'a SolverConfig,
    rows: Vec<Row>,
    occurs: Vec<Vec<usize>>,
    objective_row: Option<usize>,
    best: Option<Vec<i64>>,
    nodes: u64,
    queue: Vec<usize>,
    queued: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(model: &'a IlpModel, config: &'a SolverConfig, minimize: bool) -> Self {
        let mut rows: Vec<Row> = model
            .constraints
            .iter()
            .map(|c| Row {
                terms: c.terms.clone(),
                relation: c.relation,
                rhs: c.rhs,
            })
            .collect();
        let objective_row = if minimize {
            rows.push(Row {
                terms: model.objective.clone().unwrap_or_default(),
                relation: Relation::Le,
                rhs: i64::MAX,
            });
            Some(rows.len() - 1)
        } else {
            None
        };
        let mut occurs = vec![Vec::new(); model.vars.len()];
        for (r, row) in rows.iter().enumerate() {
            for &(j, a) in &row.terms {
                if a != 0 && occurs[j].last() != Some(&r) {
                    occurs[j].push(r);
                }
            }
        }
        let queued = vec![false; rows.len()];
        Search {
            model,
            config,
            rows,
            occurs,
            objective_row,
            best: None,
            nodes: 0,
            queue: Vec::new(),
            queued,
        }
    }

    fn run(mut self) -> Result<IlpOutcome> {
        let mut lb: Vec<i64> = self.model.vars.iter().map(|v| v.lo).collect();
        let mut ub: Vec<i64> = self.model.vars.iter().map(|v| v.hi).collect();
        let all: Vec<usize> = (0..self.rows.len()).collect();
        if self.propagate(&mut lb, &mut ub, &all) {
            self.dfs(lb, ub)?;
        }
        let nodes_explored = self.nodes;
        Ok(match self.best {
            Some(values) => {
                debug_assert!(self.model.is_feasible(&values));
                let objective = self.model.objective_value(&values);
                IlpOutcome::Solved(IlpSolution {
                    values,
                    objective,
                    nodes_explored,
                })
            }
            None => IlpOutcome::Infeasible { nodes_explored },
        })
    }

    /// Returns true when the search should stop (feasibility mode found a
    /// solution).
    fn dfs(&mut self, lb: Vec<i64>, ub: Vec<i64>) -> Result<bool> {
        let Some(j) = self.pick(&lb, &ub) else {
            let values = lb;
            match self.objective_row {
                None => {
                    self.best = Some(values);
                    return Ok(true);
                }
                Some(r) => {
                    let obj = self.model.objective_value(&values).unwrap_or(0);
                    self.rows[r].rhs = obj - 1;
                    self.best = Some(values);
                    return Ok(false);
                }
            }
        };
        for value in lb[j]..=ub[j] {
            self.nodes += 1;
            if self.nodes > self.config.node_budget {
                return Err(Error::BudgetExceeded { explored: self.nodes - 1 });
            }
            let (mut clb, mut cub) = (lb.clone(), ub.clone());
            clb[j] = value;
            cub[j] = value;
            let mut seed = self.occurs[j].clone();
            if let Some(r) = self.objective_row {
                seed.push(r);
            }
            if self.propagate(&mut clb, &mut cub, &seed) && self.dfs(clb, cub)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn pick(&self, lb: &[i64], ub: &[i64]) -> Option<usize> {
        match self.config.branching {
            Branching::Declaration => (0..lb.len()).find(|&j| lb[j] < ub[j]),
            Branching::SmallestDomain => (0..lb.len())
                .filter(|&j| lb[j] < ub[j])
                .min_by_key(|&j| (ub[j] - lb[j], j)),
        }
    }

    /// Bounds propagation to a fixpoint. Returns false on a wipe-out.
    fn propagate(&mut self, lb: &mut [i64], ub: &mut [i64], seed: &[usize]) -> bool {
        self.queue.clear();
        for &r in seed {
            if !self.queued[r] {
                self.queued[r] = true;
                self.queue.push(r);
            }
        }
        let mut ok = true;
        while let Some(r) = self.queue.pop() {
            self.queued[r] = false;
            if !ok {
                continue;
            }
            ok = self.revise(r, lb, ub);
        }
        ok
    }

    fn revise(&mut self, r: usize, lb: &mut [i64], ub: &mut [i64]) -> bool {
        let row = &self.rows[r];
        let mut min_act: i128 = 0;
        let mut max_act: i128 = 0;
        for &(j, a) in &row.terms {
            let (lo, hi) = (lb[j] as i128 * a as i128, ub[j] as i128 * a as i128);
            if a >= 0 {
                min_act += lo;
                max_act += hi;
            } else {
                min_act += hi;
                max_act += lo;
            }
        }
        let rhs = row.rhs as i128;
        let upper = matches!(row.relation, Relation::Le | Relation::Eq);
        let lower = matches!(row.relation, Relation::Ge | Relation::Eq);
        if (upper && min_act > rhs) || (lower && max_act < rhs) {
            return false;
        }
        let mut changed: Vec<usize> = Vec::new();
        for &(j, a) in &row.terms {
            if a == 0 {
                continue;
            }
            let a128 = a as i128;
            if upper {
                let slack = rhs - min_act;
                if a > 0 {
                    let new_ub = lb[j] as i128 + slack / a128;
                    if new_ub < ub[j] as i128 {
                        ub[j] = new_ub as i64;
                        changed.push(j);
                    }
                } else {
                    let new_lb = ub[j] as i128 - slack / (-a128);
                    if new_lb > lb[j] as i128 {
                        lb[j] = new_lb as i64;
                        changed.push(j);
                    }
                }
            }
            if lower {
                let slack = max_act - rhs;
                if a > 0 {
                    let new_lb = ub[j] as i128 - slack / a128;
                    if new_lb > lb[j] as i128 {
                        lb[j] = new_lb as i64;
                        changed.push(j);
                    }
                } else {
                    let new_ub = lb[j] as i128 + slack / (-a128);
                    if new_ub < ub[j] as i128 {
                        ub[j] = new_ub as i64;
                        changed.push(j);
                    }
                }
            }
            if lb[j] > ub[j] {
                return false;
            }
        }
        // bounds moved inside this row invalidate its own activities too
        for j in changed {
            for &q in &self.occurs[j] {
                if !self.queued[q] {
                    self.queued[q] = true;
                    self.queue.push(q);
                }
            }
            if let Some(o) = self.objective_row {
                if !self.queued[o] && self.rows[o].terms.iter().any(|&(k, _)| k == j) {
                    self.queued[o] = true;
                    self.queue.push(o);
                }
            }
        }
        true
    }
}

/// Formats a solution as `name = value` lines.
pub fn describe_solution(model: &IlpModel, values: &[i64]) -> String {
    let mut out = String::new();
    for (v, x) in model.vars.iter().zip(values) {
        out.push_str(&format!("{} = {}\n", v.name, x));
    }
    out
}
