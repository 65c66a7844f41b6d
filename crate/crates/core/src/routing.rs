//! Qubit maps and routing solutions, and turning a solution into a circuit
//! over physical qubits.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::maxsat::InstanceStats;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("logical qubit {q} maps to physical {p}, outside 0..{num_physical}")]
    OutOfRange { q: usize, p: usize, num_physical: usize },
    #[error("physical qubit {p} is assigned twice")]
    NotInjective { p: usize },
    #[error("map covers {got} logical qubits, expected {want}")]
    WrongSize { got: usize, want: usize },
}

/// Injective map from logical qubits `0..len` to physical qubits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QubitMap(Vec<usize>);

impl QubitMap {
    pub fn new(phys: Vec<usize>, num_physical: usize) -> Result<Self, MapError> {
        let m = QubitMap(phys);
        m.check(num_physical)?;
        Ok(m)
    }

    /// Logical qubit `q` on physical qubit `q`.
    pub fn identity(n: usize) -> Self {
        QubitMap((0..n).collect())
    }

    /// No validation; callers that accept untrusted maps must [`check`](Self::check).
    pub fn from_raw(phys: Vec<usize>) -> Self {
        QubitMap(phys)
    }

    pub fn check(&self, num_physical: usize) -> Result<(), MapError> {
        let mut seen = vec![false; num_physical];
        for (q, &p) in self.0.iter().enumerate() {
            if p >= num_physical {
                return Err(MapError::OutOfRange { q, p, num_physical });
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(MapError::NotInjective { p });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, q: usize) -> usize {
        self.0[q]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Logical qubit on physical `p`, if any.
    pub fn logical_at(&self, p: usize) -> Option<usize> {
        self.0.iter().position(|&x| x == p)
    }

    /// The map after exchanging the contents of physical `a` and `b`.
    pub fn swapped(&self, a: usize, b: usize) -> QubitMap {
        QubitMap(
            self.0
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
                .collect(),
        )
    }

    pub fn apply_swaps(&self, swaps: &[(usize, usize)]) -> QubitMap {
        swaps.iter().fold(self.clone(), |m, &(a, b)| m.swapped(a, b))
    }
}

impl fmt::Display for QubitMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().enumerate().map(|(q, p)| format!("q{q}->p{p}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoutingStatus {
    Optimal,
    BestEffort,
}

/// Solver-side bookkeeping attached to a solution.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RoutingStats {
    pub slice_solve_ms: Vec<f64>,
    pub backtracks: usize,
    /// Backtracks that had to reach more than one slice back.
    pub deep_backtracks: usize,
    pub instance: Option<InstanceStats>,
    pub objective: Option<u64>,
    pub notes: Vec<String>,
}

/// An initial map plus the SWAPs inserted before each slot.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutingSolution {
    pub initial_map: QubitMap,
    /// SWAPs (physical edges) inserted before each slot, in order.
    pub swaps: Vec<Vec<(usize, usize)>>,
    /// Map in force at each slot, after that slot's SWAPs.
    pub map_sequence: Vec<QubitMap>,
    pub swap_count: usize,
    pub gates_added: usize,
    pub status: RoutingStatus,
    pub stats: RoutingStats,
}

impl RoutingSolution {
    /// Builds the map sequence by replaying `swaps` from `initial_map`.
    pub fn from_swaps(initial_map: QubitMap, swaps: Vec<Vec<(usize, usize)>>, status: RoutingStatus) -> Self {
        let mut map_sequence = Vec::with_capacity(swaps.len());
        let mut cur = initial_map.clone();
        for s in &swaps {
            cur = cur.apply_swaps(s);
            map_sequence.push(cur.clone());
        }
        let swap_count = swaps.iter().map(Vec::len).sum();
        RoutingSolution {
            initial_map,
            swaps,
            map_sequence,
            swap_count,
            gates_added: 3 * swap_count,
            status,
            stats: RoutingStats::default(),
        }
    }

    pub fn num_slots(&self) -> usize {
        self.swaps.len()
    }

    /// Map after the last slot (the initial map for an empty circuit).
    pub fn final_map(&self) -> &QubitMap {
        self.map_sequence.last().unwrap_or(&self.initial_map)
    }
}

/// Emits `source` on physical qubits: the SWAPs of each slot go right before
/// that slot's gate, and every gate acts on wherever its logical operands
/// currently sit.
pub fn route_circuit(source: &Circuit, sol: &RoutingSolution, num_physical: usize) -> Circuit {
    let mut live = sol.initial_map.clone();
    let mut gates = Vec::with_capacity(source.gates().len() + sol.swap_count);
    let mut slot = 0;
    for g in source.gates() {
        if g.is_two_qubit() {
            for &(a, b) in &sol.swaps[slot] {
                gates.push(Gate::swap(a, b));
                live = live.swapped(a, b);
            }
            slot += 1;
        }
        gates.push(g.relabel(|q| live.get(q)));
    }
    Circuit::new(num_physical, gates).expect("maps stay within the device")
}
