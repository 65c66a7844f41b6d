//! Circuits over logical qubits, at the level of detail routing needs.
//!
//! A [`Circuit`] is an ordered list of one- and two-qubit [`Gate`]s. The
//! positions of the two-qubit gates are its *slots*: the places where the
//! router may insert SWAPs and where the qubit map is allowed to change.

mod qaoa;
mod qasm;
mod slice;

pub use qaoa::{generate_qaoa_maxcut, random_cubic_graph};
pub use qasm::{emit_qasm, parse_qasm, QasmError};
pub use slice::{slice_circuit, Slice};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("gate `{name}` has {count} operands; only 1 or 2 are supported")]
    Arity { name: String, count: usize },
    #[error("gate `{name}` uses qubit {qubit} twice")]
    DuplicateOperand { name: String, qubit: usize },
    #[error("gate `{name}` uses qubit {qubit} but the circuit has {num_logical}")]
    OperandOutOfRange {
        name: String,
        qubit: usize,
        num_logical: usize,
    },
    #[error("QAOA generation needs an even qubit count >= 4, got {0}")]
    QaoaSize(usize),
    #[error("QAOA generation needs at least one cycle")]
    QaoaCycles,
}

/// One gate application. Parameters are kept as the text they were written
/// with and never interpreted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    pub name: String,
    pub params: Vec<String>,
    pub operands: Vec<usize>,
}

impl Gate {
    pub fn new(name: impl Into<String>, params: Vec<String>, operands: Vec<usize>) -> Self {
        Gate {
            name: name.into(),
            params,
            operands,
        }
    }

    pub fn one(name: &str, q: usize) -> Self {
        Gate::new(name, Vec::new(), vec![q])
    }

    pub fn two(name: &str, a: usize, b: usize) -> Self {
        Gate::new(name, Vec::new(), vec![a, b])
    }

    pub fn cx(a: usize, b: usize) -> Self {
        Gate::two("cx", a, b)
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Gate::two("swap", a, b)
    }

    pub fn is_two_qubit(&self) -> bool {
        self.operands.len() == 2
    }

    /// Operand pair of a two-qubit gate.
    pub fn pair(&self) -> Option<(usize, usize)> {
        match self.operands.as_slice() {
            &[a, b] => Some((a, b)),
            _ => None,
        }
    }

    /// Same gate with every operand passed through `f`.
    pub fn relabel(&self, mut f: impl FnMut(usize) -> usize) -> Gate {
        Gate {
            name: self.name.clone(),
            params: self.params.clone(),
            operands: self.operands.iter().map(|&q| f(q)).collect(),
        }
    }

    fn check(&self, num_logical: usize) -> Result<(), CircuitError> {
        if self.operands.is_empty() || self.operands.len() > 2 {
            return Err(CircuitError::Arity {
                name: self.name.clone(),
                count: self.operands.len(),
            });
        }
        if let Some((a, b)) = self.pair() {
            if a == b {
                return Err(CircuitError::DuplicateOperand {
                    name: self.name.clone(),
                    qubit: a,
                });
            }
        }
        if let Some(&q) = self.operands.iter().find(|&&q| q >= num_logical) {
            return Err(CircuitError::OperandOutOfRange {
                name: self.name.clone(),
                qubit: q,
                num_logical,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.params.is_empty() {
            write!(f, "({})", self.params.join(","))?;
        }
        let ops: Vec<String> = self.operands.iter().map(|q| format!("q{q}")).collect();
        write!(f, " {}", ops.join(","))
    }
}

/// An ordered gate sequence over `num_logical` qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    num_logical: usize,
    gates: Vec<Gate>,
    slots: Vec<usize>,
}

impl Circuit {
    pub fn new(num_logical: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        for g in &gates {
            g.check(num_logical)?;
        }
        let slots = gates
            .iter()
            .enumerate()
            .filter(|(_, g)| g.is_two_qubit())
            .map(|(i, _)| i)
            .collect();
        Ok(Circuit {
            num_logical,
            gates,
            slots,
        })
    }

    /// Circuit made only of `cx` gates on the given pairs.
    pub fn from_pairs(num_logical: usize, pairs: &[(usize, usize)]) -> Result<Self, CircuitError> {
        Circuit::new(num_logical, pairs.iter().map(|&(a, b)| Gate::cx(a, b)).collect())
    }

    pub fn num_logical(&self) -> usize {
        self.num_logical
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Indices into [`gates`](Self::gates) of the two-qubit gates, in order.
    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    pub fn num_slots(&self) -> usize {
        self.slots.len()
    }

    /// Operand pair of the two-qubit gate at slot `k` (0-based).
    pub fn slot_pair(&self, k: usize) -> (usize, usize) {
        self.gates[self.slots[k]].pair().expect("slot indexes a two-qubit gate")
    }

    pub fn slot_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.slots.len()).map(|k| self.slot_pair(k)).collect()
    }

    /// Logical qubits touched by at least one two-qubit gate, ascending.
    pub fn interacting_qubits(&self) -> Vec<usize> {
        let mut used = vec![false; self.num_logical];
        for (a, b) in self.slot_pairs() {
            used[a] = true;
            used[b] = true;
        }
        (0..self.num_logical).filter(|&q| used[q]).collect()
    }

    /// The circuit repeated `times` times.
    pub fn repeat(&self, times: usize) -> Circuit {
        let mut gates = Vec::with_capacity(self.gates.len() * times);
        for _ in 0..times {
            gates.extend(self.gates.iter().cloned());
        }
        Circuit::new(self.num_logical, gates).expect("repetition keeps gates valid")
    }

    /// Splits the circuit into `copies` consecutive blocks of `block_slots`
    /// slots each, provided every block has the same two-qubit pattern
    /// (gate names and operands; parameters and one-qubit gates may differ).
    /// Returns the first block.
    pub fn split_cyclic(&self, block_slots: usize) -> Option<(Circuit, usize)> {
        let total = self.num_slots();
        if block_slots == 0 || total == 0 || !total.is_multiple_of(block_slots) {
            return None;
        }
        let copies = total / block_slots;
        let key = |k: usize| {
            let g = &self.gates[self.slots[k]];
            (g.name.as_str(), g.pair())
        };
        for k in block_slots..total {
            if key(k) != key(k % block_slots) {
                return None;
            }
        }
        let end = if copies == 1 {
            self.gates.len()
        } else {
            self.slots[block_slots - 1] + 1
        };
        let block = Circuit::new(self.num_logical, self.gates[..end].to_vec()).ok()?;
        Some((block, copies))
    }
}
