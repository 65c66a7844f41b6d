//! Independent check of routed circuits and routing solutions.
//!
//! The routed circuit is replayed against the source: a live map from
//! logical to physical qubits starts at the initial map and changes only at
//! routing SWAPs. Every other gate must be the next source gate with its
//! operands mapped, and two-qubit gates must sit on graph edges.

use std::fmt;

use crate::arch::ConnectivityGraph;
use crate::circuit::{Circuit, Gate};
use crate::routing::{QubitMap, RoutingSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    NonEdgeSwap,
    NonEdgeGate,
    ReorderedGate,
    MissingGate,
    ExtraGate,
    NonInjectiveMap,
    /// A gate that is not the expected one and fits no simpler explanation.
    GateMismatch,
    QubitOutOfRange,
    MapSequence,
    SwapCount,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::NonEdgeSwap => "swap on non-edge",
            ViolationKind::NonEdgeGate => "two-qubit gate on non-edge",
            ViolationKind::ReorderedGate => "gates out of order",
            ViolationKind::MissingGate => "missing gate",
            ViolationKind::ExtraGate => "extra gate",
            ViolationKind::NonInjectiveMap => "non-injective map",
            ViolationKind::GateMismatch => "gate mismatch",
            ViolationKind::QubitOutOfRange => "qubit out of range",
            ViolationKind::MapSequence => "inconsistent map sequence",
            ViolationKind::SwapCount => "wrong swap accounting",
        })
    }
}

/// The first problem found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Index into the routed circuit's gate list.
    pub routed_index: Option<usize>,
    /// Index into the source circuit's gate list.
    pub source_index: Option<usize>,
    /// Slot, for solution-level checks.
    pub slot: Option<usize>,
    pub detail: String,
}

impl Violation {
    fn new(kind: ViolationKind, detail: impl Into<String>) -> Self {
        Violation {
            kind,
            routed_index: None,
            source_index: None,
            slot: None,
            detail: detail.into(),
        }
    }

    fn at(mut self, routed: usize, source: usize) -> Self {
        self.routed_index = Some(routed);
        self.source_index = Some(source);
        self
    }

    fn in_slot(mut self, k: usize) -> Self {
        self.slot = Some(k);
        self
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(r) = self.routed_index {
            write!(f, " at routed gate {r}")?;
        }
        if let Some(k) = self.slot {
            write!(f, " at slot {k}")?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

impl std::error::Error for Violation {}

pub type Verdict = Result<(), Violation>;

fn check_initial(m: &QubitMap, num_logical: usize, g: &ConnectivityGraph) -> Verdict {
    if m.len() != num_logical {
        return Err(Violation::new(
            ViolationKind::NonInjectiveMap,
            format!("initial map covers {} of {num_logical} logical qubits", m.len()),
        ));
    }
    let mut seen = vec![false; g.num_physical()];
    for (q, &p) in m.as_slice().iter().enumerate() {
        if p >= g.num_physical() {
            return Err(Violation::new(
                ViolationKind::QubitOutOfRange,
                format!("q{q} is placed on p{p}, outside the device"),
            ));
        }
        if std::mem::replace(&mut seen[p], true) {
            return Err(Violation::new(
                ViolationKind::NonInjectiveMap,
                format!("p{p} holds two logical qubits"),
            ));
        }
    }
    Ok(())
}

struct Replay<'a> {
    source: &'a [Gate],
    routed: &'a [Gate],
    g: &'a ConnectivityGraph,
}

fn exchange(live: &mut [usize], a: usize, b: usize) {
    for p in live.iter_mut() {
        if *p == a {
            *p = b;
        } else if *p == b {
            *p = a;
        }
    }
}

fn mapped(gate: &Gate, live: &[usize]) -> Option<Vec<usize>> {
    gate.operands.iter().map(|&q| live.get(q).copied()).collect()
}

fn same_gate(src: &Gate, live: &[usize], routed: &Gate) -> bool {
    src.name == routed.name && src.params == routed.params && mapped(src, live).as_deref() == Some(&routed.operands[..])
}

impl Replay<'_> {
    /// Replays from routed gate `r` and source gate `s`. With `classify`
    /// set, a mismatch is explained by testing simple hypotheses against
    /// the rest of the circuit.
    fn run(&self, mut r: usize, mut s: usize, mut live: Vec<usize>, classify: bool) -> Verdict {
        loop {
            let Some(gate) = self.routed.get(r) else {
                return match self.source.get(s) {
                    None => Ok(()),
                    Some(missing) => Err(Violation::new(
                        ViolationKind::MissingGate,
                        format!("source gate `{missing}` never appears"),
                    )
                    .at(r, s)),
                };
            };
            if let Some(&p) = gate.operands.iter().find(|&&p| p >= self.g.num_physical()) {
                return Err(Violation::new(ViolationKind::QubitOutOfRange, format!("p{p} in `{gate}`")).at(r, s));
            }
            if gate.name == "swap" && gate.operands.len() == 2 {
                let (a, b) = (gate.operands[0], gate.operands[1]);
                if !self.g.contains(a, b) {
                    return Err(Violation::new(ViolationKind::NonEdgeSwap, format!("`{gate}`")).at(r, s));
                }
                // A swap that is also the next source gate could be either.
                if self.source.get(s).is_some_and(|src| same_gate(src, &live, gate))
                    && self.run(r + 1, s + 1, live.clone(), false).is_ok()
                {
                    return Ok(());
                }
                exchange(&mut live, a, b);
                r += 1;
                continue;
            }
            let Some(src) = self.source.get(s) else {
                return Err(
                    Violation::new(ViolationKind::ExtraGate, format!("`{gate}` after the last source gate")).at(r, s),
                );
            };
            if same_gate(src, &live, gate) {
                if gate.operands.len() == 2 && !self.g.contains(gate.operands[0], gate.operands[1]) {
                    return Err(Violation::new(ViolationKind::NonEdgeGate, format!("`{gate}`")).at(r, s));
                }
                r += 1;
                s += 1;
                continue;
            }
            return Err(self.explain(r, s, &live, classify));
        }
    }

    fn explain(&self, r: usize, s: usize, live: &[usize], classify: bool) -> Violation {
        let gate = &self.routed[r];
        let expected = &self.source[s];
        let plain = Violation::new(
            ViolationKind::GateMismatch,
            format!(
                "found `{gate}`, expected source gate `{expected}` on {:?}",
                mapped(expected, live).unwrap_or_default()
            ),
        )
        .at(r, s);
        if !classify {
            return plain;
        }
        let try_with = |source: &[Gate], routed: &[Gate]| {
            Replay {
                source,
                routed,
                g: self.g,
            }
            .run(r, s, live.to_vec(), false)
            .is_ok()
        };
        if s + 1 < self.source.len() {
            let mut swapped = self.source.to_vec();
            swapped.swap(s, s + 1);
            if try_with(&swapped, self.routed) {
                return Violation::new(
                    ViolationKind::ReorderedGate,
                    format!("`{gate}` comes before source gate `{expected}`"),
                )
                .at(r, s);
            }
        }
        let mut without = self.source.to_vec();
        without.remove(s);
        if try_with(&without, self.routed) {
            return Violation::new(
                ViolationKind::MissingGate,
                format!("source gate `{expected}` was skipped"),
            )
            .at(r, s);
        }
        let mut fewer = self.routed.to_vec();
        fewer.remove(r);
        if try_with(self.source, &fewer) {
            return Violation::new(ViolationKind::ExtraGate, format!("`{gate}` is not in the source")).at(r, s);
        }
        plain
    }
}

/// Checks that `routed` performs `source` on `g` when logical qubit `q`
/// starts on physical qubit `initial_map[q]`. Routing SWAPs must appear as
/// `swap` gates.
pub fn verify(source: &Circuit, routed: &Circuit, initial_map: &QubitMap, g: &ConnectivityGraph) -> Verdict {
    check_initial(initial_map, source.num_logical(), g)?;
    Replay {
        source: source.gates(),
        routed: routed.gates(),
        g,
    }
    .run(0, 0, initial_map.as_slice().to_vec(), true)
}

/// Structural check of a solution: replays its SWAPs from the initial map
/// and checks edges, slot-gate adjacency, injectivity, the recorded map
/// sequence and the cost fields.
pub fn verify_solution(source: &Circuit, sol: &RoutingSolution, g: &ConnectivityGraph) -> Verdict {
    check_initial(&sol.initial_map, source.num_logical(), g)?;
    let slots = source.num_slots();
    if sol.swaps.len() != slots || sol.map_sequence.len() != slots {
        return Err(Violation::new(
            ViolationKind::MapSequence,
            format!(
                "{} swap lists and {} maps for {slots} slots",
                sol.swaps.len(),
                sol.map_sequence.len()
            ),
        ));
    }
    let mut live = sol.initial_map.as_slice().to_vec();
    let mut first_drift = None;
    for (k, swaps) in sol.swaps.iter().enumerate() {
        for &(a, b) in swaps {
            if !g.contains(a, b) {
                return Err(Violation::new(ViolationKind::NonEdgeSwap, format!("swap p{a},p{b}")).in_slot(k));
            }
            exchange(&mut live, a, b);
        }
        check_initial(&sol.map_sequence[k], source.num_logical(), g).map_err(|v| v.in_slot(k))?;
        let (qa, qb) = source.slot_pair(k);
        if !g.contains(live[qa], live[qb]) {
            return Err(Violation::new(
                ViolationKind::NonEdgeGate,
                format!("q{qa},q{qb} sit on p{},p{}", live[qa], live[qb]),
            )
            .in_slot(k));
        }
        if first_drift.is_none() && sol.map_sequence[k].as_slice() != live.as_slice() {
            first_drift = Some(k);
        }
    }
    if let Some(k) = first_drift {
        return Err(
            Violation::new(ViolationKind::MapSequence, "recorded map differs from the replayed one").in_slot(k),
        );
    }
    let count: usize = sol.swaps.iter().map(Vec::len).sum();
    if sol.swap_count != count || sol.gates_added != 3 * count {
        return Err(Violation::new(
            ViolationKind::SwapCount,
            format!(
                "{count} swaps listed, swap_count {} and gates_added {}",
                sol.swap_count, sol.gates_added
            ),
        ));
    }
    Ok(())
}
