use log::info;
use web_time::Instant;

use super::sliced::run_slices;
use super::{check_fits, solve_pairs, trivial, Compaction, Deadline, DriverConfig, DriverError};
use crate::arch::ConnectivityGraph;
use crate::circuit::Circuit;
use crate::routing::{RoutingSolution, RoutingStats, RoutingStatus};

/// Routes `cycles` back-to-back copies of `block` by solving the block once
/// with its final map tied to its initial map, then repeating its SWAP
/// schedule. The result covers the unrolled circuit
/// (`block.repeat(cycles)`).
///
/// With `cfg.cyclic_slice_size` set, the block is first solved in slices
/// and only the last slice is re-solved to return to the starting map; if
/// that is impossible the whole block is encoded at once.
pub fn solve_cyclic(
    block: &Circuit,
    cycles: usize,
    g: &ConnectivityGraph,
    cfg: &DriverConfig,
) -> Result<RoutingSolution, DriverError> {
    if cycles == 0 {
        return Err(DriverError::Config("at least one cycle is required".into()));
    }
    check_fits(block, g)?;
    if block.num_slots() == 0 {
        return Ok(trivial(block));
    }
    let deadline = Deadline::new(cfg.budget, Instant::now());
    // Every qubit is encoded: a qubit left to ride along with the SWAPs could
    // end the block somewhere else.
    let compact = Compaction::new(block, false);
    let pairs = compact.pairs(block);

    let mut notes = Vec::new();
    let mut one = None;
    if let Some(size) = cfg.cyclic_slice_size.filter(|&s| s < pairs.len()) {
        match sliced_block(compact.width(), &pairs, g, cfg, size, deadline) {
            Ok(sol) => one = Some(sol),
            Err(e) => {
                info!("sliced cyclic block failed ({e}); encoding the whole block");
                notes.push(format!(
                    "sliced block could not close the cycle ({e}); solved the whole block instead"
                ));
            }
        }
    }
    let one = match one {
        Some(sol) => sol,
        None => {
            let mut opt = cfg.encode_options();
            opt.cyclic = true;
            let solved = solve_pairs(compact.width(), &pairs, g, cfg, &opt, deadline)?;
            let mut sol = solved.sol;
            sol.stats = RoutingStats {
                slice_solve_ms: vec![solved.elapsed_ms],
                instance: Some(solved.instance),
                objective: Some(solved.objective),
                ..Default::default()
            };
            sol
        }
    };
    debug_assert_eq!(one.final_map(), &one.initial_map);

    let swaps: Vec<Vec<(usize, usize)>> = (0..cycles).flat_map(|_| one.swaps.iter().cloned()).collect();
    let mut sol = compact.expand(
        &RoutingSolution::from_swaps(one.initial_map.clone(), swaps, RoutingStatus::BestEffort),
        g,
    );
    sol.stats = one.stats.clone();
    if let Some(o) = sol.stats.objective.as_mut() {
        *o *= cycles as u64;
    }
    sol.stats.notes.extend(notes);
    sol.stats.notes.push(format!(
        "{cycles} cycle(s) of a {}-slot block, {} swap(s) per block",
        one.num_slots(),
        one.swap_count
    ));
    Ok(sol)
}

fn sliced_block(
    width: usize,
    pairs: &[(usize, usize)],
    g: &ConnectivityGraph,
    cfg: &DriverConfig,
    size: usize,
    deadline: Deadline,
) -> Result<RoutingSolution, DriverError> {
    let run = run_slices(width, pairs, g, cfg, size, deadline)?;
    let start = run.slices[0].sol.initial_map.clone();
    let last = run.slices.len() - 1;
    let tail_from = last * size;
    let mut opt = cfg.encode_options();
    opt.pinned_final = Some(start.clone());
    opt.pinned_initial = if last == 0 {
        None
    } else {
        Some(run.slices[last - 1].sol.final_map().clone())
    };
    let tail = solve_pairs(width, &pairs[tail_from..], g, cfg, &opt, deadline)?;
    let mut swaps: Vec<Vec<(usize, usize)>> = run.slices[..last]
        .iter()
        .flat_map(|s| s.sol.swaps.iter().cloned())
        .collect();
    swaps.extend(tail.sol.swaps.iter().cloned());
    let replaced = run.slices[last].objective;
    let mut sol = RoutingSolution::from_swaps(start, swaps, RoutingStatus::BestEffort);
    sol.stats = run.stats;
    sol.stats.objective = sol.stats.objective.map(|o| o - replaced + tail.objective);
    sol.stats.slice_solve_ms.push(tail.elapsed_ms);
    sol.stats
        .notes
        .push("block solved in slices; last slice re-solved to return to the initial map".into());
    Ok(sol)
}
