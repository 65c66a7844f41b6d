//! Solving strategies: the whole circuit at once, consecutive slices with
//! backtracking, or one repeated block with matching boundary maps.

mod cyclic;
mod oracle;
mod sliced;

pub use cyclic::solve_cyclic;
pub use oracle::{brute_force_oracle, brute_force_oracle_pinned, OracleError, OracleResult};
pub use sliced::{solve_best, solve_sliced, BestReport, SizeRun};

use std::time::Duration;

use log::debug;
use thiserror::Error;
use web_time::Instant;

use crate::arch::ConnectivityGraph;
use crate::circuit::Circuit;
use crate::encoder::{decode_slots, encode_pairs, AmoEncoding, DecodeError, EncodeError, EncodeOptions, Weighting};
use crate::maxsat::{solve_builtin, Budget, InstanceStats, SolveStatus};
use crate::routing::{QubitMap, RoutingSolution, RoutingStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Global,
    Sliced,
    Cyclic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    Builtin,
    /// Command template with a `{wcnf}` placeholder for the instance file.
    External(String),
}

/// How the time budget is shared between slice sizes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum BudgetSplit {
    /// Each size gets `budget / sizes`.
    #[default]
    Even,
    /// Sizes run in order, each with whatever time is left.
    Sequential,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DriverConfig {
    pub strategy: Strategy,
    pub slice_sizes: Vec<usize>,
    /// SWAPs per slot.
    pub n: usize,
    /// Total wall-clock budget; `None` runs to completion.
    pub budget: Option<Duration>,
    /// Cap on solver decisions per MaxSAT call. Unlike `budget` this is
    /// reproducible from run to run.
    pub decisions: Option<u64>,
    pub backend: Backend,
    pub max_backtracks_per_slice: usize,
    pub weighted: Option<Weighting>,
    pub budget_split: BudgetSplit,
    /// Cyclic strategy: two-qubit gates in one block of a pre-unrolled
    /// circuit. `None` treats the whole circuit as a single block.
    pub cyclic_block_slots: Option<usize>,
    /// Cyclic strategy: solve the block in slices of this size first.
    pub cyclic_slice_size: Option<usize>,
    pub amo: AmoEncoding,
}

impl Default for DriverConfig {
    fn default() -> Self {
        DriverConfig {
            strategy: Strategy::Global,
            slice_sizes: vec![10, 25, 50, 100],
            n: 1,
            budget: None,
            decisions: None,
            backend: Backend::Builtin,
            max_backtracks_per_slice: 10,
            weighted: None,
            budget_split: BudgetSplit::Even,
            cyclic_block_slots: None,
            cyclic_slice_size: None,
            amo: AmoEncoding::Pairwise,
        }
    }
}

#[derive(Debug, Error)]
pub enum DriverError {
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error("internal error decoding a solver model: {0}")]
    Decode(#[from] DecodeError),
    #[error("no routing exists with {n} swap(s) per slot{}; try a larger n (at most the graph diameter)",
        .slice.map(|s| format!(" (slice {s})")).unwrap_or_default())]
    HardUnsat { n: usize, slice: Option<usize> },
    #[error("slice {slice} ran out of backtracks after {tries} attempts; try a larger n or slice size")]
    BacktrackExhausted { slice: usize, tries: usize },
    #[error("no solution found within the budget")]
    Unknown,
    #[error("external solver: {0}")]
    Backend(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("every slice size failed: {}", .0.iter().map(|(s, e)| format!("size {s}: {e}")).collect::<Vec<_>>().join("; "))]
    AllFailed(Vec<(usize, DriverError)>),
}

impl DriverError {
    /// Unsatisfiable, or ran out of backtracking options (for every slice
    /// size, when several were tried).
    pub fn is_unsat(&self) -> bool {
        match self {
            DriverError::HardUnsat { .. } | DriverError::BacktrackExhausted { .. } => true,
            DriverError::AllFailed(all) => all.iter().all(|(_, e)| e.is_unsat()),
            _ => false,
        }
    }
}

/// Routes `c` onto `g` with the configured strategy.
pub fn solve(c: &Circuit, g: &ConnectivityGraph, cfg: &DriverConfig) -> Result<RoutingSolution, DriverError> {
    match cfg.strategy {
        Strategy::Global => solve_global(c, g, cfg),
        Strategy::Sliced => solve_best(c, g, cfg).map(|(sol, _)| sol),
        Strategy::Cyclic => {
            let (block, cycles) = match cfg.cyclic_block_slots {
                None => (c.clone(), 1),
                Some(k) => c.split_cyclic(k).ok_or_else(|| {
                    DriverError::Config(format!("circuit is not a repetition of identical {k}-slot blocks"))
                })?,
            };
            solve_cyclic(&block, cycles, g, cfg)
        }
    }
}

/// Encodes and solves the whole circuit in one MaxSAT call.
pub fn solve_global(c: &Circuit, g: &ConnectivityGraph, cfg: &DriverConfig) -> Result<RoutingSolution, DriverError> {
    let start = Instant::now();
    check_fits(c, g)?;
    if c.num_slots() == 0 {
        return Ok(trivial(c));
    }
    let compact = Compaction::new(c, true);
    let opt = cfg.encode_options();
    let solved = solve_pairs(
        compact.width(),
        &compact.pairs(c),
        g,
        cfg,
        &opt,
        Deadline::new(cfg.budget, start),
    )?;
    let mut sol = compact.expand(&solved.sol, g);
    sol.status = solved.status;
    sol.stats.slice_solve_ms = vec![solved.elapsed_ms];
    sol.stats.instance = Some(solved.instance);
    sol.stats.objective = Some(solved.objective);
    Ok(sol)
}

impl DriverConfig {
    fn encode_options(&self) -> EncodeOptions {
        EncodeOptions {
            n: self.n,
            weighted: self.weighted.clone(),
            amo: self.amo,
            ..Default::default()
        }
    }
}

fn check_fits(c: &Circuit, g: &ConnectivityGraph) -> Result<(), DriverError> {
    if c.num_logical() > g.num_physical() {
        return Err(EncodeError::TooManyQubits {
            logical: c.num_logical(),
            physical: g.num_physical(),
        }
        .into());
    }
    Ok(())
}

fn trivial(c: &Circuit) -> RoutingSolution {
    RoutingSolution::from_swaps(QubitMap::identity(c.num_logical()), Vec::new(), RoutingStatus::Optimal)
}

/// Wall-clock cutoff shared by the calls of one strategy run.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Deadline(Option<Instant>);

impl Deadline {
    pub(crate) fn new(budget: Option<Duration>, start: Instant) -> Self {
        Deadline(budget.map(|b| start + b))
    }

    fn remaining(self) -> Option<Duration> {
        self.0.map(|d| d.saturating_duration_since(Instant::now()))
    }
}

/// One decoded MaxSAT call over compacted qubits.
pub(crate) struct Solved {
    pub sol: RoutingSolution,
    pub status: RoutingStatus,
    pub objective: u64,
    pub instance: InstanceStats,
    pub elapsed_ms: f64,
}

pub(crate) fn solve_pairs(
    num_qubits: usize,
    pairs: &[(usize, usize)],
    g: &ConnectivityGraph,
    cfg: &DriverConfig,
    opt: &EncodeOptions,
    deadline: Deadline,
) -> Result<Solved, DriverError> {
    let inst = encode_pairs(num_qubits, pairs, g, opt)?;
    let budget = Budget {
        time: deadline.remaining(),
        decisions: cfg.decisions,
    };
    let outcome = match &cfg.backend {
        Backend::Builtin => solve_builtin(&inst, budget),
        Backend::External(cmd) => run_external(&inst, cmd, budget)?,
    };
    debug!(
        "{} slots, {} vars, {} hard: {:?} in {:?}",
        pairs.len(),
        inst.num_vars,
        inst.hard.len(),
        outcome.status,
        outcome.elapsed
    );
    let status = match outcome.status {
        SolveStatus::Optimal => RoutingStatus::Optimal,
        SolveStatus::SatisfiableBound => RoutingStatus::BestEffort,
        SolveStatus::HardUnsat => return Err(DriverError::HardUnsat { n: opt.n, slice: None }),
        SolveStatus::Unknown => return Err(DriverError::Unknown),
    };
    let model = outcome.model.as_ref().ok_or(DriverError::Unknown)?;
    let mut sol = decode_slots(model, &inst, num_qubits, pairs.len(), g, opt.n)?;
    sol.status = status;
    Ok(Solved {
        sol,
        status,
        objective: outcome.falsified_weight.unwrap_or_default(),
        instance: inst.stats(),
        elapsed_ms: outcome.elapsed.as_secs_f64() * 1000.0,
    })
}

#[cfg(feature = "process")]
fn run_external(
    inst: &crate::maxsat::MaxSatInstance,
    cmd: &str,
    budget: Budget,
) -> Result<crate::maxsat::SolveOutcome, DriverError> {
    crate::maxsat::solve_external(inst, cmd, budget).map_err(|e| DriverError::Backend(e.to_string()))
}

#[cfg(not(feature = "process"))]
fn run_external(
    _inst: &crate::maxsat::MaxSatInstance,
    _cmd: &str,
    _budget: Budget,
) -> Result<crate::maxsat::SolveOutcome, DriverError> {
    Err(DriverError::Backend("this build cannot run external processes".into()))
}

/// Renumbers the logical qubits that take part in two-qubit gates to
/// `0..width`, so qubits with only one-qubit gates stay out of the encoding.
pub(crate) struct Compaction {
    num_logical: usize,
    /// compact index -> logical qubit
    active: Vec<usize>,
    /// logical qubit -> compact index
    index: Vec<Option<usize>>,
}

impl Compaction {
    /// With `enabled` false every logical qubit is kept.
    pub(crate) fn new(c: &Circuit, enabled: bool) -> Self {
        let active = if enabled {
            c.interacting_qubits()
        } else {
            (0..c.num_logical()).collect()
        };
        let mut index = vec![None; c.num_logical()];
        for (i, &q) in active.iter().enumerate() {
            index[q] = Some(i);
        }
        Compaction {
            num_logical: c.num_logical(),
            active,
            index,
        }
    }

    pub(crate) fn width(&self) -> usize {
        self.active.len()
    }

    pub(crate) fn pairs(&self, c: &Circuit) -> Vec<(usize, usize)> {
        c.slot_pairs()
            .into_iter()
            .map(|(a, b)| (self.index[a].expect("active"), self.index[b].expect("active")))
            .collect()
    }

    /// Lifts a compact solution to every logical qubit. Qubits left out of
    /// the encoding start on the lowest free physical qubits and then ride
    /// along with the SWAPs.
    pub(crate) fn expand(&self, sol: &RoutingSolution, g: &ConnectivityGraph) -> RoutingSolution {
        let mut used = vec![false; g.num_physical()];
        for &p in sol.initial_map.as_slice() {
            used[p] = true;
        }
        let mut free = (0..g.num_physical()).filter(|&p| !used[p]);
        let initial: Vec<usize> = (0..self.num_logical)
            .map(|q| match self.index[q] {
                Some(i) => sol.initial_map.get(i),
                None => free.next().expect("enough physical qubits"),
            })
            .collect();
        let mut full = RoutingSolution::from_swaps(QubitMap::from_raw(initial), sol.swaps.clone(), sol.status);
        full.stats = sol.stats.clone();
        full
    }
}

/// Stats shared by the sliced and cyclic paths.
pub(crate) fn sum_instances(a: Option<InstanceStats>, b: InstanceStats) -> InstanceStats {
    match a {
        None => b,
        Some(a) => InstanceStats {
            vars: a.vars + b.vars,
            hard_count: a.hard_count + b.hard_count,
            soft_count: a.soft_count + b.soft_count,
        },
    }
}
