//! Weighted partial MaxSAT instances and the solvers that consume them.

mod builtin;
#[cfg(feature = "process")]
mod external;
mod wcnf;

pub use builtin::{solve_builtin, SolverStats};
#[cfg(feature = "process")]
pub use external::{parse_solver_output, solve_external, ExternalError, SolverOutput};
pub use wcnf::{emit_wcnf, parse_wcnf, WcnfError};

use std::fmt;
use std::ops::Not;
use std::time::Duration;

/// Propositional variable, numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn pos(self) -> Lit {
        Lit(self.0 as i32)
    }

    pub fn neg(self) -> Lit {
        Lit(-(self.0 as i32))
    }

    pub fn lit(self, positive: bool) -> Lit {
        if positive {
            self.pos()
        } else {
            self.neg()
        }
    }
}

/// Signed DIMACS-style literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(pub i32);

impl Lit {
    pub fn var(self) -> Var {
        Var(self.0.unsigned_abs())
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// Dense index: `2 * var + negated`.
    pub(crate) fn code(self) -> usize {
        2 * self.var().index() + usize::from(self.0 < 0)
    }
}

impl Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A disjunction of literals over distinct variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause(Vec<Lit>);

impl Clause {
    /// Removes repeated literals. Returns `None` for tautologies and for the
    /// empty clause.
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Option<Clause> {
        let mut out: Vec<Lit> = Vec::new();
        for l in lits {
            if out.contains(&!l) {
                return None;
            }
            if !out.contains(&l) {
                out.push(l);
            }
        }
        if out.is_empty() {
            None
        } else {
            Some(Clause(out))
        }
    }

    pub fn unit(l: Lit) -> Clause {
        Clause(vec![l])
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn satisfied_by(&self, m: &Model) -> bool {
        self.0.iter().any(|&l| m.lit(l))
    }
}

/// What a variable stands for in a routing encoding.
///
/// Slot indices are 1-based for two-qubit gates; slot 0 holds the map in
/// force before any SWAP is inserted. Swap position `i` runs from 1 to `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarTag {
    Map {
        q: usize,
        p: usize,
        k: usize,
    },
    /// `(p, p2)` is a graph edge, or `(0, 0)` for the no-op.
    Swap {
        p: usize,
        p2: usize,
        k: usize,
        i: usize,
    },
    /// Tseitin, cardinality or relaxation helper.
    Aux,
}

/// Bijection between variable ids and their meaning.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VarTable {
    tags: Vec<VarTag>,
}

impl VarTable {
    pub fn push(&mut self, tag: VarTag) -> Var {
        self.tags.push(tag);
        Var(self.tags.len() as u32)
    }

    pub fn tag(&self, v: Var) -> Option<VarTag> {
        self.tags.get(v.index().checked_sub(1)?).copied()
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, VarTag)> + '_ {
        self.tags.iter().enumerate().map(|(i, &t)| (Var(i as u32 + 1), t))
    }
}

/// Hard clauses plus weighted soft clauses. The objective is to satisfy all
/// hard clauses while minimising the total weight of falsified soft ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MaxSatInstance {
    pub num_vars: usize,
    pub hard: Vec<Clause>,
    pub soft: Vec<(Clause, u64)>,
    pub var_table: VarTable,
}

impl MaxSatInstance {
    pub fn new(num_vars: usize) -> Self {
        MaxSatInstance {
            num_vars,
            ..Default::default()
        }
    }

    pub fn new_var(&mut self) -> Var {
        self.num_vars += 1;
        Var(self.num_vars as u32)
    }

    pub fn add_hard(&mut self, lits: impl IntoIterator<Item = Lit>) {
        if let Some(c) = Clause::new(lits) {
            self.hard.push(c);
        }
    }

    pub fn add_soft(&mut self, lits: impl IntoIterator<Item = Lit>, weight: u64) {
        if weight == 0 {
            return;
        }
        if let Some(c) = Clause::new(lits) {
            self.soft.push((c, weight));
        }
    }

    pub fn total_soft_weight(&self) -> u64 {
        self.soft.iter().map(|(_, w)| w).sum()
    }

    /// Index of the first hard clause `m` falsifies.
    pub fn violated_hard(&self, m: &Model) -> Option<usize> {
        self.hard.iter().position(|c| !c.satisfied_by(m))
    }

    pub fn falsified_weight(&self, m: &Model) -> u64 {
        self.soft
            .iter()
            .filter(|(c, _)| !c.satisfied_by(m))
            .map(|(_, w)| w)
            .sum()
    }

    pub fn stats(&self) -> InstanceStats {
        InstanceStats {
            vars: self.num_vars,
            hard_count: self.hard.len(),
            soft_count: self.soft.len(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct InstanceStats {
    pub vars: usize,
    pub hard_count: usize,
    pub soft_count: usize,
}

/// Total assignment to variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Model {
    values: Vec<bool>,
}

impl Model {
    /// `values[i]` is the value of variable `i + 1`.
    pub fn new(values: Vec<bool>) -> Self {
        Model { values }
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, v: Var) -> bool {
        v.index() >= 1 && self.values.get(v.index() - 1).copied().unwrap_or(false)
    }

    pub fn lit(&self, l: Lit) -> bool {
        self.value(l.var()) == l.is_positive()
    }

    pub fn true_vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| Var(i as u32 + 1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SolveStatus {
    Optimal,
    SatisfiableBound,
    HardUnsat,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub model: Option<Model>,
    /// Weight of falsified soft clauses under `model`.
    pub falsified_weight: Option<u64>,
    pub elapsed: Duration,
    /// Falsified weight of each successive incumbent.
    pub trace: Vec<u64>,
}

impl SolveOutcome {
    pub fn has_model(&self) -> bool {
        self.model.is_some()
    }
}

/// Limits on a solver run. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub time: Option<Duration>,
    /// Cap on branching decisions; deterministic, unlike `time`.
    pub decisions: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn time(d: Duration) -> Self {
        Budget {
            time: Some(d),
            decisions: None,
        }
    }

    pub fn decisions(n: u64) -> Self {
        Budget {
            time: None,
            decisions: Some(n),
        }
    }
}
