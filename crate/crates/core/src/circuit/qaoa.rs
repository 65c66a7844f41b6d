use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Circuit, CircuitError, Gate};

/// A random 3-regular simple graph on `n` vertices from the pairing model:
/// shuffle three stubs per vertex, pair them up, and retry whenever the
/// pairing has a loop or a repeated edge. Edges come back sorted.
pub fn random_cubic_graph(n: usize, seed: u64) -> Result<Vec<(usize, usize)>, CircuitError> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(CircuitError::QaoaSize(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| [v, v, v]).collect();
    loop {
        stubs.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = stubs.chunks(2).map(|p| (p[0].min(p[1]), p[0].max(p[1]))).collect();
        if edges.iter().any(|&(a, b)| a == b) {
            continue;
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        return Ok(edges);
    }
}

/// QAOA max-cut circuit on a seeded random 3-regular graph: `cycles` copies
/// of a cost layer (`cx; rz; cx` per edge) followed by an `rx` mixer layer.
pub fn generate_qaoa_maxcut(num_qubits: usize, cycles: usize, graph_seed: u64) -> Result<Circuit, CircuitError> {
    if cycles == 0 {
        return Err(CircuitError::QaoaCycles);
    }
    let edges = random_cubic_graph(num_qubits, graph_seed)?;
    let mut angles = ChaCha8Rng::seed_from_u64(graph_seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut gates = Vec::new();
    for _ in 0..cycles {
        let gamma: f64 = angles.gen_range(0.0..std::f64::consts::PI);
        let beta: f64 = angles.gen_range(0.0..std::f64::consts::PI);
        for &(i, j) in &edges {
            gates.push(Gate::cx(i, j));
            gates.push(Gate::new("rz", vec![format!("{:.6}", 2.0 * gamma)], vec![j]));
            gates.push(Gate::cx(i, j));
        }
        for q in 0..num_qubits {
            gates.push(Gate::new("rx", vec![format!("{:.6}", 2.0 * beta)], vec![q]));
        }
    }
    Circuit::new(num_qubits, gates)
}
