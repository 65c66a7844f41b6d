//! Exhaustive minimum-SWAP search, used to check the encoder's optima.
//!
//! Shares nothing with the encoder: states are explicit qubit maps and
//! transitions are breadth-first searches over SWAP sequences.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::arch::ConnectivityGraph;
use crate::circuit::Circuit;
use crate::routing::{QubitMap, RoutingSolution, RoutingStatus};

/// Default bound on `maps × (edges + 1)^n`.
pub const DEFAULT_CEILING: u64 = 20_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("search space of {0} exceeds the ceiling")]
    TooLarge(u64),
    #[error("more logical than physical qubits")]
    TooManyQubits,
    #[error("no routing with at most {0} swap(s) per slot")]
    Infeasible(usize),
    #[error("pinned map is invalid for this circuit and graph")]
    BadPin,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub min_swaps: usize,
    pub witness: RoutingSolution,
}

/// Minimum number of SWAPs over every initial map and every choice of at
/// most `max_swaps_per_slot` SWAPs before each two-qubit gate.
pub fn brute_force_oracle(
    c: &Circuit,
    g: &ConnectivityGraph,
    max_swaps_per_slot: usize,
) -> Result<OracleResult, OracleError> {
    brute_force_oracle_pinned(c, g, max_swaps_per_slot, None, DEFAULT_CEILING)
}

/// As [`brute_force_oracle`], optionally with a fixed initial map. The
/// witness is the first optimum in lexicographic order of (initial map,
/// map after slot 1, map after slot 2, ...).
pub fn brute_force_oracle_pinned(
    c: &Circuit,
    g: &ConnectivityGraph,
    max_swaps_per_slot: usize,
    pinned: Option<&QubitMap>,
    ceiling: u64,
) -> Result<OracleResult, OracleError> {
    let nq = c.num_logical();
    let np = g.num_physical();
    if nq > np {
        return Err(OracleError::TooManyQubits);
    }
    if let Some(m) = pinned {
        if m.len() != nq || m.check(np).is_err() {
            return Err(OracleError::BadPin);
        }
    }
    let num_states = (np - nq + 1..=np).map(|x| x as u64).product::<u64>();
    let branching = (g.edges().len() as u64 + 1).saturating_pow(max_swaps_per_slot as u32);
    let size = num_states.saturating_mul(branching);
    if size > ceiling {
        return Err(OracleError::TooLarge(size));
    }

    let states = injective_maps(nq, np);
    let index: HashMap<&[usize], usize> = states.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let pairs = c.slot_pairs();
    let k_total = pairs.len();
    let fits = |s: usize, k: usize| {
        let (a, b) = pairs[k];
        g.contains(states[s][a], states[s][b])
    };

    // Reachable maps within the per-slot SWAP limit, with one shortest
    // SWAP sequence each, found by BFS over edges in sorted order.
    let moves: Vec<Vec<Move>> = (0..states.len())
        .map(|s| reachable(&states, &index, s, g, max_swaps_per_slot))
        .collect();

    const INF: usize = usize::MAX;
    // cost[k][s]: fewest SWAPs for slots k.. given the map at slot k is s.
    let mut cost = vec![vec![INF; states.len()]; k_total + 1];
    cost[k_total].fill(0);
    for k in (0..k_total).rev() {
        for s in 0..states.len() {
            if !fits(s, k) {
                continue;
            }
            cost[k][s] = if k + 1 == k_total {
                0
            } else {
                moves[s]
                    .iter()
                    .filter(|(t, _)| cost[k + 1][*t] != INF)
                    .map(|(t, path)| path.len() + cost[k + 1][*t])
                    .min()
                    .unwrap_or(INF)
            };
        }
    }
    // Best total from a given initial map (slot-0 map, before any SWAP).
    let from_start = |s0: usize| -> usize {
        if k_total == 0 {
            return 0;
        }
        moves[s0]
            .iter()
            .filter(|(t, _)| cost[0][*t] != INF)
            .map(|(t, path)| path.len() + cost[0][*t])
            .min()
            .unwrap_or(INF)
    };
    let starts: Vec<usize> = match pinned {
        Some(m) => vec![index[m.as_slice()]],
        None => (0..states.len()).collect(),
    };
    let (best, s0) = starts
        .iter()
        .map(|&s| (from_start(s), s))
        .min_by_key(|&(c, s)| (c, s))
        .expect("at least one start");
    if best == INF {
        return Err(OracleError::Infeasible(max_swaps_per_slot));
    }

    // Walk forward, taking the smallest next map consistent with the optimum.
    let mut swaps = Vec::with_capacity(k_total);
    let mut cur = s0;
    let mut left = best;
    for k in 0..k_total {
        let (t, path) = moves[cur]
            .iter()
            .filter(|(t, path)| cost[k][*t] != INF && path.len() + cost[k][*t] == left)
            .min_by_key(|(t, _)| *t)
            .expect("an optimal step exists");
        left -= path.len();
        swaps.push(path.clone());
        cur = *t;
    }
    let witness = RoutingSolution::from_swaps(QubitMap::from_raw(states[s0].clone()), swaps, RoutingStatus::Optimal);
    Ok(OracleResult {
        min_swaps: best,
        witness,
    })
}

/// A reachable map and one shortest SWAP sequence to it.
type Move = (usize, Vec<(usize, usize)>);

/// Every injective map of `nq` logical qubits into `np` physical ones, in
/// lexicographic order.
fn injective_maps(nq: usize, np: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], nq: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == nq {
            out.push(cur.clone());
            return;
        }
        for p in 0..used.len() {
            if !used[p] {
                used[p] = true;
                cur.push(p);
                go(cur, used, nq, out);
                cur.pop();
                used[p] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; np], nq, &mut out);
    out
}

fn reachable(
    states: &[Vec<usize>],
    index: &HashMap<&[usize], usize>,
    from: usize,
    g: &ConnectivityGraph,
    limit: usize,
) -> Vec<Move> {
    let mut seen: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    seen.insert(from, Vec::new());
    let mut queue = VecDeque::from([from]);
    while let Some(s) = queue.pop_front() {
        let path = seen[&s].clone();
        if path.len() == limit {
            continue;
        }
        for &(a, b) in g.edges() {
            let next: Vec<usize> = states[s]
                .iter()
                .map(|&p| {
                    if p == a {
                        b
                    } else if p == b {
                        a
                    } else {
                        p
                    }
                })
                .collect();
            let t = index[next.as_slice()];
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(t) {
                let mut longer = path.clone();
                longer.push((a, b));
                e.insert(longer);
                queue.push_back(t);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by_key(|(t, _)| *t);
    out
}
