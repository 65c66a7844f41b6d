use std::ops::Range;

use super::{Circuit, Gate};

/// A contiguous piece of a circuit covering a run of its slots.
///
/// One-qubit gates belong to the slice of the next two-qubit gate after
/// them; one-qubit gates after the last two-qubit gate belong to the last
/// slice.
#[derive(Debug, Clone)]
pub struct Slice<'a> {
    parent: &'a Circuit,
    slot_range: Range<usize>,
    gate_range: (usize, usize),
}

impl<'a> Slice<'a> {
    pub fn parent(&self) -> &'a Circuit {
        self.parent
    }

    /// Half-open range over the parent's slots.
    pub fn slot_range(&self) -> Range<usize> {
        self.slot_range.clone()
    }

    pub fn num_slots(&self) -> usize {
        self.slot_range.len()
    }

    pub fn gates(&self) -> &'a [Gate] {
        &self.parent.gates()[self.gate_range.0..self.gate_range.1]
    }

    /// The slice as a standalone circuit over the parent's qubits.
    pub fn to_circuit(&self) -> Circuit {
        Circuit::new(self.parent.num_logical(), self.gates().to_vec()).expect("a slice of a valid circuit is valid")
    }
}

/// Cuts `c` into slices of `slice_size` slots (the last may be shorter).
pub fn slice_circuit(c: &Circuit, slice_size: usize) -> Vec<Slice<'_>> {
    assert!(slice_size >= 1, "slice size must be positive");
    let slots = c.slots();
    let mut out = Vec::new();
    let mut lo = 0;
    let mut gate_start = 0;
    while lo < slots.len() {
        let hi = (lo + slice_size).min(slots.len());
        let gate_end = if hi == slots.len() {
            c.gates().len()
        } else {
            slots[hi - 1] + 1
        };
        out.push(Slice {
            parent: c,
            slot_range: lo..hi,
            gate_range: (gate_start, gate_end),
        });
        gate_start = gate_end;
        lo = hi;
    }
    out
}
