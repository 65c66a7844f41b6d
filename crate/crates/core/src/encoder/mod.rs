//! The MaxSAT encoding of qubit mapping and routing.
//!
//! For a circuit with `K` slots the encoding has
//!
//! * map variables `map(q, p, k)` for `k` in `0..=K` (slot 0 is the map
//!   before any SWAP),
//! * swap variables `swap(e, k, i)` for every slot `k` in `1..=K`, every
//!   position `i` in `1..=n` and every edge `e` of the graph plus a no-op,
//!
//! and these constraint families:
//!
//! * every map is a total injective function,
//! * each slot's gate operands sit on an edge,
//! * exactly one choice per SWAP position,
//! * the chosen SWAP sequence carries the map of slot `k - 1` to slot `k`,
//! * soft: each SWAP position should be the no-op (or, in weighted mode,
//!   minimise `-ln` of the product of gate and SWAP fidelities).

mod cardinality;
mod decode;

pub use cardinality::AmoEncoding;
pub use decode::{decode, decode_slots, DecodeError};

use log::warn;
use thiserror::Error;

use crate::arch::{ConnectivityGraph, NoiseModel};
use crate::circuit::Circuit;
use crate::maxsat::{InstanceStats, Lit, MaxSatInstance, Var, VarTag};
use crate::routing::{MapError, QubitMap};
use cardinality::{at_most_one, exactly_one};

#[derive(Debug, Error)]
pub enum EncodeError {
    #[error("circuit uses {logical} logical qubits but the device has {physical}")]
    TooManyQubits { logical: usize, physical: usize },
    #[error("circuit has no two-qubit gates to route")]
    NoSlots,
    #[error("swaps per slot must be at least 1")]
    ZeroSwaps,
    #[error("{n} swaps per slot exceeds the graph diameter {diameter}")]
    SwapsAboveDiameter { n: usize, diameter: usize },
    #[error("a cyclic encoding cannot also pin the initial map")]
    CyclicWithPin,
    #[error("{what} map: {source}")]
    BadMap {
        what: &'static str,
        #[source]
        source: MapError,
    },
    #[error("weighted mode needs a noise model covering every edge")]
    NoiseCoverage,
}

/// Soft-clause weights derived from fidelities: `round(scale * -ln f)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Weighting {
    pub noise: NoiseModel,
    pub scale: f64,
}

impl Weighting {
    pub fn new(noise: NoiseModel) -> Self {
        Weighting { noise, scale: 1000.0 }
    }
}

pub fn fidelity_weight(fidelity: f64, scale: f64) -> u64 {
    (scale * -fidelity.ln()).round().max(0.0) as u64
}

#[derive(Debug, Clone, PartialEq)]
pub struct EncodeOptions {
    /// SWAPs allowed before each slot.
    pub n: usize,
    pub weighted: Option<Weighting>,
    /// Fixes the slot-0 map.
    pub pinned_initial: Option<QubitMap>,
    /// Fixes the map at the last slot.
    pub pinned_final: Option<QubitMap>,
    /// Requires the final map to equal the slot-0 map.
    pub cyclic: bool,
    /// Final maps the solution must avoid.
    pub blocked_final_maps: Vec<QubitMap>,
    /// Each entry lists variables (by tag) that may not all be true at once.
    pub blocked_assignments: Vec<Vec<VarTag>>,
    pub amo: AmoEncoding,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        EncodeOptions {
            n: 1,
            weighted: None,
            pinned_initial: None,
            pinned_final: None,
            cyclic: false,
            blocked_final_maps: Vec::new(),
            blocked_assignments: Vec::new(),
            amo: AmoEncoding::Pairwise,
        }
    }
}

impl EncodeOptions {
    pub fn with_n(n: usize) -> Self {
        EncodeOptions {
            n,
            ..Default::default()
        }
    }
}

/// The effect of a SWAP sequence on one physical qubit: apply each
/// transposition left to right. `(p, p)` pairs are no-ops.
pub fn pi(swaps: &[(usize, usize)], p: usize) -> usize {
    swaps.iter().fold(p, |x, &(a, b)| {
        if x == a {
            b
        } else if x == b {
            a
        } else {
            x
        }
    })
}

/// Variable layout of one encoding.
struct Layout {
    num_qubits: usize,
    num_physical: usize,
    n: usize,
    /// No-op first, then the graph edges.
    choices: Vec<(usize, usize)>,
    /// `map[k][q][p]`
    map: Vec<Vec<Vec<Var>>>,
    /// `swap[k - 1][i - 1][e]`
    swap: Vec<Vec<Vec<Var>>>,
}

impl Layout {
    fn map_var(&self, q: usize, p: usize, k: usize) -> Var {
        self.map[k][q][p]
    }
}

fn tagged(inst: &mut MaxSatInstance, tag: VarTag) -> Var {
    let v = inst.new_var();
    let t = inst.var_table.push(tag);
    debug_assert_eq!(v, t);
    v
}

fn check_map(m: &QubitMap, qubits: usize, g: &ConnectivityGraph, what: &'static str) -> Result<(), EncodeError> {
    if m.len() != qubits {
        return Err(EncodeError::BadMap {
            what,
            source: MapError::WrongSize {
                got: m.len(),
                want: qubits,
            },
        });
    }
    m.check(g.num_physical())
        .map_err(|source| EncodeError::BadMap { what, source })
}

/// Encodes routing `c` onto `g`.
pub fn encode(c: &Circuit, g: &ConnectivityGraph, opt: &EncodeOptions) -> Result<MaxSatInstance, EncodeError> {
    encode_pairs(c.num_logical(), &c.slot_pairs(), g, opt)
}

/// Encodes a bare sequence of two-qubit interactions over `num_qubits`.
pub fn encode_pairs(
    num_qubits: usize,
    pairs: &[(usize, usize)],
    g: &ConnectivityGraph,
    opt: &EncodeOptions,
) -> Result<MaxSatInstance, EncodeError> {
    let num_physical = g.num_physical();
    if num_qubits > num_physical {
        return Err(EncodeError::TooManyQubits {
            logical: num_qubits,
            physical: num_physical,
        });
    }
    if pairs.is_empty() {
        return Err(EncodeError::NoSlots);
    }
    if opt.n == 0 {
        return Err(EncodeError::ZeroSwaps);
    }
    let diameter = g.diameter();
    if opt.n > diameter.max(1) {
        return Err(EncodeError::SwapsAboveDiameter { n: opt.n, diameter });
    }
    if opt.n > 2 {
        warn!("{} swaps per slot: the swap-effect clauses grow as (|E|+1)^n", opt.n);
    }
    if opt.cyclic && opt.pinned_initial.is_some() {
        return Err(EncodeError::CyclicWithPin);
    }
    if let Some(m) = &opt.pinned_initial {
        check_map(m, num_qubits, g, "pinned initial")?;
    }
    if let Some(m) = &opt.pinned_final {
        check_map(m, num_qubits, g, "pinned final")?;
    }
    for m in &opt.blocked_final_maps {
        check_map(m, num_qubits, g, "blocked")?;
    }
    if let Some(w) = &opt.weighted {
        if !w.noise.covers(g) {
            return Err(EncodeError::NoiseCoverage);
        }
    }

    let num_slots = pairs.len();
    let mut inst = MaxSatInstance::new(0);
    let mut choices = vec![(0, 0)];
    choices.extend_from_slice(g.edges());
    let mut layout = Layout {
        num_qubits,
        num_physical,
        n: opt.n,
        choices,
        map: Vec::with_capacity(num_slots + 1),
        swap: Vec::with_capacity(num_slots),
    };

    // Variables are numbered slot by slot (swaps before the map they produce)
    // so that a solver branching in id order fixes each slot's SWAPs and then
    // finds the next map by propagation.
    let map_block = |inst: &mut MaxSatInstance, k: usize| -> Vec<Vec<Var>> {
        (0..num_qubits)
            .map(|q| {
                (0..num_physical)
                    .map(|p| tagged(inst, VarTag::Map { q, p, k }))
                    .collect()
            })
            .collect()
    };
    let m0 = map_block(&mut inst, 0);
    layout.map.push(m0);
    add_injectivity(&mut inst, &layout, 0, opt.amo);
    for (slot, &(qa, qb)) in pairs.iter().enumerate() {
        let k = slot + 1;
        let swaps: Vec<Vec<Var>> = (1..=opt.n)
            .map(|i| {
                layout
                    .choices
                    .iter()
                    .map(|&(p, p2)| tagged(&mut inst, VarTag::Swap { p, p2, k, i }))
                    .collect()
            })
            .collect();
        layout.swap.push(swaps);
        let mk = map_block(&mut inst, k);
        layout.map.push(mk);

        add_injectivity(&mut inst, &layout, k, opt.amo);
        add_gate(&mut inst, &layout, g, k, qa, qb);
        for i in 0..opt.n {
            exactly_one(&mut inst, &layout.swap[k - 1][i], opt.amo);
        }
        add_swap_effect(&mut inst, &layout, k);
    }

    add_boundaries(&mut inst, &layout, opt);

    match &opt.weighted {
        None => {
            for k in 1..=num_slots {
                for i in 0..opt.n {
                    inst.add_soft([layout.swap[k - 1][i][0].pos()], 1);
                }
            }
        }
        Some(w) => add_weighted_soft(&mut inst, &layout, g, pairs, w),
    }
    Ok(inst)
}

fn add_injectivity(inst: &mut MaxSatInstance, l: &Layout, k: usize, amo: AmoEncoding) {
    for q in 0..l.num_qubits {
        exactly_one(inst, &l.map[k][q], amo);
    }
    for p in 0..l.num_physical {
        let column: Vec<Var> = (0..l.num_qubits).map(|q| l.map_var(q, p, k)).collect();
        at_most_one(inst, &column, amo);
    }
}

/// The gate at slot `k` sits on some edge, in either orientation, via one
/// Tseitin helper per oriented edge.
fn add_gate(inst: &mut MaxSatInstance, l: &Layout, g: &ConnectivityGraph, k: usize, qa: usize, qb: usize) {
    let mut helpers = Vec::with_capacity(2 * g.edges().len());
    for &(a, b) in g.edges() {
        for (pa, pb) in [(a, b), (b, a)] {
            let t = tagged(inst, VarTag::Aux);
            inst.add_hard([t.neg(), l.map_var(qa, pa, k).pos()]);
            inst.add_hard([t.neg(), l.map_var(qb, pb, k).pos()]);
            helpers.push(t.pos());
        }
    }
    inst.add_hard(helpers);
}

/// For every sequence of `n` choices at slot `k`: if that sequence is
/// selected, `map(q, p, k-1) <-> map(q, pi(S, p), k)` for all `q, p`.
fn add_swap_effect(inst: &mut MaxSatInstance, l: &Layout, k: usize) {
    let width = l.choices.len();
    let mut seq = vec![0usize; l.n];
    loop {
        let pairs: Vec<(usize, usize)> = seq.iter().map(|&e| l.choices[e]).collect();
        let guard: Vec<Lit> = seq
            .iter()
            .enumerate()
            .map(|(i, &e)| l.swap[k - 1][i][e].neg())
            .collect();
        for p in 0..l.num_physical {
            let dest = pi(&pairs, p);
            for q in 0..l.num_qubits {
                let before = l.map_var(q, p, k - 1);
                let after = l.map_var(q, dest, k);
                inst.add_hard(guard.iter().copied().chain([before.neg(), after.pos()]));
                inst.add_hard(guard.iter().copied().chain([before.pos(), after.neg()]));
            }
        }
        // Next sequence in lexicographic order.
        let mut i = l.n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            seq[i] += 1;
            if seq[i] < width {
                break;
            }
            seq[i] = 0;
        }
    }
}

fn add_boundaries(inst: &mut MaxSatInstance, l: &Layout, opt: &EncodeOptions) {
    let last = l.map.len() - 1;
    if let Some(m) = &opt.pinned_initial {
        for q in 0..l.num_qubits {
            inst.add_hard([l.map_var(q, m.get(q), 0).pos()]);
        }
    }
    if let Some(m) = &opt.pinned_final {
        for q in 0..l.num_qubits {
            inst.add_hard([l.map_var(q, m.get(q), last).pos()]);
        }
    }
    if opt.cyclic {
        for q in 0..l.num_qubits {
            for p in 0..l.num_physical {
                let first = l.map_var(q, p, 0);
                let end = l.map_var(q, p, last);
                inst.add_hard([first.neg(), end.pos()]);
                inst.add_hard([first.pos(), end.neg()]);
            }
        }
    }
    for m in &opt.blocked_final_maps {
        inst.add_hard((0..l.num_qubits).map(|q| l.map_var(q, m.get(q), last).neg()));
    }
    for tags in &opt.blocked_assignments {
        let lits: Vec<Lit> = tags.iter().filter_map(|&t| lookup(l, t)).map(|v| v.neg()).collect();
        if lits.len() == tags.len() && !lits.is_empty() {
            inst.add_hard(lits);
        }
    }
}

fn lookup(l: &Layout, tag: VarTag) -> Option<Var> {
    match tag {
        VarTag::Map { q, p, k } => l.map.get(k)?.get(q)?.get(p).copied(),
        VarTag::Swap { p, p2, k, i } => {
            let e = l.choices.iter().position(|&c| c == (p, p2))?;
            l.swap.get(k.checked_sub(1)?)?.get(i.checked_sub(1)?)?.get(e).copied()
        }
        VarTag::Aux => None,
    }
}

fn add_weighted_soft(
    inst: &mut MaxSatInstance,
    l: &Layout,
    g: &ConnectivityGraph,
    pairs: &[(usize, usize)],
    w: &Weighting,
) {
    for (slot, &(qa, qb)) in pairs.iter().enumerate() {
        let k = slot + 1;
        for i in 0..l.n {
            for (e, &(a, b)) in l.choices.iter().enumerate().skip(1) {
                let f = w.noise.swap_fidelity(a, b).expect("coverage checked");
                inst.add_soft([l.swap[k - 1][i][e].neg()], fidelity_weight(f, w.scale));
            }
        }
        for &(a, b) in g.edges() {
            let f = w.noise.cx_fidelity(a, b).expect("coverage checked");
            let weight = fidelity_weight(f, w.scale);
            for (pa, pb) in [(a, b), (b, a)] {
                inst.add_soft([l.map_var(qa, pa, k).neg(), l.map_var(qb, pb, k).neg()], weight);
            }
        }
    }
}

/// Clause and variable counts of an instance.
pub fn instance_stats(inst: &MaxSatInstance) -> InstanceStats {
    inst.stats()
}

#[cfg(test)]
mod tests;
