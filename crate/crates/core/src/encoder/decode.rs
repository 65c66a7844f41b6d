use thiserror::Error;

use super::EncodeOptions;
use crate::arch::ConnectivityGraph;
use crate::circuit::Circuit;
use crate::maxsat::{MaxSatInstance, Model, VarTag};
use crate::routing::{MapError, QubitMap, RoutingSolution, RoutingStatus};

#[derive(Debug, Error)]
pub enum DecodeError {
    #[error("model violates hard clause #{0}")]
    HardViolated(usize),
    #[error("logical qubit {q} has no physical qubit at slot {k}")]
    Unassigned { q: usize, k: usize },
    #[error("logical qubit {q} sits on two physical qubits at slot {k}")]
    MultiplyAssigned { q: usize, k: usize },
    #[error("map at slot {k}: {source}")]
    BadMap {
        k: usize,
        #[source]
        source: MapError,
    },
    #[error("slot {k} has {found} swap choices at position {i}")]
    SwapChoice { k: usize, i: usize, found: usize },
    #[error("swap ({0}, {1}) is not a graph edge")]
    NotAnEdge(usize, usize),
    #[error("map at slot {k} does not follow from the previous map and its swaps")]
    Inconsistent { k: usize },
}

/// Reads a routing off a model of `encode(c, g, opt)`.
pub fn decode(
    m: &Model,
    inst: &MaxSatInstance,
    c: &Circuit,
    g: &ConnectivityGraph,
    opt: &EncodeOptions,
) -> Result<RoutingSolution, DecodeError> {
    decode_slots(m, inst, c.num_logical(), c.num_slots(), g, opt.n)
}

/// Like [`decode`] for an instance of `num_qubits` qubits and `num_slots`
/// slots. The result is marked optimal; callers downgrade it as needed.
pub fn decode_slots(
    m: &Model,
    inst: &MaxSatInstance,
    num_qubits: usize,
    num_slots: usize,
    g: &ConnectivityGraph,
    n: usize,
) -> Result<RoutingSolution, DecodeError> {
    if let Some(i) = inst.violated_hard(m) {
        return Err(DecodeError::HardViolated(i));
    }
    let np = g.num_physical();
    let mut maps = vec![vec![None::<usize>; num_qubits]; num_slots + 1];
    let mut choices: Vec<Vec<Vec<(usize, usize)>>> = vec![vec![Vec::new(); n]; num_slots];
    for v in m.true_vars() {
        match inst.var_table.tag(v) {
            Some(VarTag::Map { q, p, k }) if k <= num_slots && q < num_qubits => {
                if maps[k][q].replace(p).is_some() {
                    return Err(DecodeError::MultiplyAssigned { q, k });
                }
            }
            Some(VarTag::Swap { p, p2, k, i }) if (1..=num_slots).contains(&k) && (1..=n).contains(&i) => {
                choices[k - 1][i - 1].push((p, p2));
            }
            _ => {}
        }
    }
    let mut seq = Vec::with_capacity(num_slots + 1);
    for (k, row) in maps.into_iter().enumerate() {
        let phys = row
            .into_iter()
            .enumerate()
            .map(|(q, p)| p.ok_or(DecodeError::Unassigned { q, k }))
            .collect::<Result<Vec<_>, _>>()?;
        seq.push(QubitMap::new(phys, np).map_err(|source| DecodeError::BadMap { k, source })?);
    }
    let mut swaps = Vec::with_capacity(num_slots);
    for (k0, slot) in choices.into_iter().enumerate() {
        let mut real = Vec::new();
        for (i0, found) in slot.into_iter().enumerate() {
            if found.len() != 1 {
                return Err(DecodeError::SwapChoice {
                    k: k0 + 1,
                    i: i0 + 1,
                    found: found.len(),
                });
            }
            let (a, b) = found[0];
            if (a, b) == (0, 0) {
                continue;
            }
            if !g.contains(a, b) {
                return Err(DecodeError::NotAnEdge(a, b));
            }
            real.push((a, b));
        }
        swaps.push(real);
    }
    let initial = seq[0].clone();
    let sol = RoutingSolution::from_swaps(initial, swaps, RoutingStatus::Optimal);
    for (k, (got, want)) in sol.map_sequence.iter().zip(&seq[1..]).enumerate() {
        if got != want {
            return Err(DecodeError::Inconsistent { k: k + 1 });
        }
    }
    Ok(sol)
}
