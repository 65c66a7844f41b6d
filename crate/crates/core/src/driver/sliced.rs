use log::{info, warn};
use web_time::Instant;

use super::{check_fits, solve_pairs, trivial, BudgetSplit, Compaction, Deadline, DriverConfig, DriverError, Solved};
use crate::arch::ConnectivityGraph;
use crate::circuit::Circuit;
use crate::routing::{QubitMap, RoutingSolution, RoutingStats, RoutingStatus};

/// Result of slice-by-slice solving over compacted qubits.
pub(crate) struct SlicedRun {
    pub slices: Vec<Solved>,
    pub stats: RoutingStats,
}

impl SlicedRun {
    /// Concatenates the per-slice routings. Each slice after the first
    /// starts from its predecessor's final map, so the swaps simply chain.
    pub(crate) fn joined(&self) -> RoutingSolution {
        let initial = self.slices[0].sol.initial_map.clone();
        let swaps = self.slices.iter().flat_map(|s| s.sol.swaps.iter().cloned()).collect();
        let mut sol = RoutingSolution::from_swaps(initial, swaps, RoutingStatus::BestEffort);
        sol.stats = self.stats.clone();
        sol
    }
}

/// Solves `pairs` in chunks of `slice_size`, pinning each chunk's initial
/// map to the previous chunk's final map. When a chunk is unsatisfiable the
/// previous chunk's final map is blocked and that chunk is solved again,
/// reaching further back if it runs out of alternatives too.
pub(crate) fn run_slices(
    width: usize,
    pairs: &[(usize, usize)],
    g: &ConnectivityGraph,
    cfg: &DriverConfig,
    slice_size: usize,
    deadline: Deadline,
) -> Result<SlicedRun, DriverError> {
    if slice_size == 0 {
        return Err(DriverError::Config("slice size must be at least 1".into()));
    }
    let chunks: Vec<&[(usize, usize)]> = pairs.chunks(slice_size).collect();
    let mut blocked: Vec<Vec<QubitMap>> = vec![Vec::new(); chunks.len()];
    let mut tries = vec![0usize; chunks.len()];
    let mut solve_ms = vec![0.0; chunks.len()];
    let mut done: Vec<Solved> = Vec::with_capacity(chunks.len());
    let mut stats = RoutingStats::default();
    // Set while re-solving a slice because a later one was unsatisfiable.
    let mut retrying = false;
    let mut i = 0;
    while i < chunks.len() {
        let mut opt = cfg.encode_options();
        opt.pinned_initial = done.last().map(|s: &Solved| s.sol.final_map().clone());
        opt.blocked_final_maps = blocked[i].clone();
        let started = Instant::now();
        let result = solve_pairs(width, chunks[i], g, cfg, &opt, deadline);
        solve_ms[i] += started.elapsed().as_secs_f64() * 1000.0;
        match result {
            Ok(s) => {
                done.push(s);
                i += 1;
                retrying = false;
            }
            Err(DriverError::HardUnsat { n, .. }) => {
                if i == 0 {
                    return Err(DriverError::HardUnsat { n, slice: Some(0) });
                }
                let prev = i - 1;
                tries[prev] += 1;
                if tries[prev] > cfg.max_backtracks_per_slice {
                    return Err(DriverError::BacktrackExhausted {
                        slice: prev,
                        tries: tries[prev] - 1,
                    });
                }
                stats.backtracks += 1;
                if retrying {
                    stats.deep_backtracks += 1;
                }
                let last = done.pop().expect("previous slice solved");
                info!("slice {i} unsatisfiable; blocking the final map of slice {prev}");
                blocked[prev].push(last.sol.final_map().clone());
                // Alternatives below were relative to the old pin.
                for k in i..chunks.len() {
                    blocked[k].clear();
                    tries[k] = 0;
                }
                i = prev;
                retrying = true;
            }
            Err(e) => return Err(e),
        }
    }
    if stats.deep_backtracks > 0 {
        stats.notes.push(format!(
            "backtracking reached past the previous slice {} time(s)",
            stats.deep_backtracks
        ));
    }
    stats.slice_solve_ms = solve_ms;
    for s in &done {
        stats.instance = Some(super::sum_instances(stats.instance, s.instance));
        stats.objective = Some(stats.objective.unwrap_or(0) + s.objective);
    }
    Ok(SlicedRun { slices: done, stats })
}

/// Routes `c` slice by slice. The result is never marked optimal: each
/// slice is optimal given its predecessor, which says nothing about the
/// whole circuit.
pub fn solve_sliced(
    c: &Circuit,
    g: &ConnectivityGraph,
    cfg: &DriverConfig,
    slice_size: usize,
) -> Result<RoutingSolution, DriverError> {
    sliced_with_deadline(c, g, cfg, slice_size, Deadline::new(cfg.budget, Instant::now()))
}

fn sliced_with_deadline(
    c: &Circuit,
    g: &ConnectivityGraph,
    cfg: &DriverConfig,
    slice_size: usize,
    deadline: Deadline,
) -> Result<RoutingSolution, DriverError> {
    check_fits(c, g)?;
    if c.num_slots() == 0 {
        return Ok(trivial(c));
    }
    let compact = Compaction::new(c, true);
    let run = run_slices(compact.width(), &compact.pairs(c), g, cfg, slice_size, deadline)?;
    let mut sol = compact.expand(&run.joined(), g);
    sol.status = RoutingStatus::BestEffort;
    Ok(sol)
}

/// Outcome of one slice size inside [`solve_best`].
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SizeRun {
    pub slice_size: usize,
    pub swap_count: Option<usize>,
    pub gates_added: Option<usize>,
    pub backtracks: usize,
    pub elapsed_ms: f64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BestReport {
    pub selected: usize,
    pub runs: Vec<SizeRun>,
}

/// Runs [`solve_sliced`] once per configured slice size and keeps the
/// cheapest result; ties go to the smaller slice size.
pub fn solve_best(
    c: &Circuit,
    g: &ConnectivityGraph,
    cfg: &DriverConfig,
) -> Result<(RoutingSolution, BestReport), DriverError> {
    if cfg.slice_sizes.is_empty() {
        return Err(DriverError::Config("no slice sizes configured".into()));
    }
    let start = Instant::now();
    let mut sizes = cfg.slice_sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();
    let share = cfg.budget.map(|b| b / sizes.len() as u32);
    let mut runs = Vec::new();
    let mut failures = Vec::new();
    let mut best: Option<(RoutingSolution, usize)> = None;
    for (idx, &size) in sizes.iter().enumerate() {
        let began = Instant::now();
        let deadline = match (cfg.budget_split, share) {
            (_, None) => Deadline(None),
            (BudgetSplit::Even, Some(d)) => Deadline::new(Some(d), began),
            (BudgetSplit::Sequential, Some(_)) => Deadline::new(cfg.budget, start),
        };
        let result = sliced_with_deadline(c, g, cfg, size, deadline);
        let elapsed_ms = began.elapsed().as_secs_f64() * 1000.0;
        match result {
            Ok(sol) => {
                runs.push(SizeRun {
                    slice_size: size,
                    swap_count: Some(sol.swap_count),
                    gates_added: Some(sol.gates_added),
                    backtracks: sol.stats.backtracks,
                    elapsed_ms,
                    error: None,
                });
                if best.as_ref().is_none_or(|(b, _)| sol.gates_added < b.gates_added) {
                    best = Some((sol, idx));
                }
            }
            Err(e) => {
                warn!("slice size {size}: {e}");
                runs.push(SizeRun {
                    slice_size: size,
                    swap_count: None,
                    gates_added: None,
                    backtracks: 0,
                    elapsed_ms,
                    error: Some(e.to_string()),
                });
                failures.push((size, e));
            }
        }
        if cfg.budget_split == BudgetSplit::Sequential
            && cfg.budget.is_some_and(|b| start.elapsed() >= b)
            && best.is_some()
        {
            break;
        }
    }
    let Some((mut sol, idx)) = best else {
        return Err(DriverError::AllFailed(failures));
    };
    for (size, e) in &failures {
        sol.stats.notes.push(format!("slice size {size} failed: {e}"));
    }
    let report = BestReport {
        selected: sizes[idx],
        runs,
    };
    Ok((sol, report))
}
