//! WebAssembly bindings for the browser demo in `www/`.

use std::time::Duration;

use serde_json::json;
use wasm_bindgen::prelude::*;

use satroute::arch::load_arch;
use satroute::circuit::{emit_qasm, generate_qaoa_maxcut, parse_qasm};
use satroute::driver::{self, DriverConfig, Strategy};
use satroute::routing::route_circuit;
use satroute::verifier::{verify, verify_solution};

/// Routes `qasm` onto the named architecture and returns a JSON summary
/// with the routed circuit under `"routed"`.
pub fn route(
    qasm: &str,
    arch: &str,
    strategy: &str,
    slice_size: usize,
    n: usize,
    budget_ms: u32,
) -> Result<String, String> {
    let c = parse_qasm(qasm).map_err(|e| e.to_string())?;
    let g = load_arch(arch).map_err(|e| e.to_string())?;
    let strategy = match strategy {
        "global" => Strategy::Global,
        "sliced" => Strategy::Sliced,
        "cyclic" => Strategy::Cyclic,
        s => return Err(format!("unknown strategy `{s}`")),
    };
    let cfg = DriverConfig {
        strategy,
        slice_sizes: vec![slice_size.max(1)],
        n,
        budget: (budget_ms > 0).then(|| Duration::from_millis(budget_ms.into())),
        ..Default::default()
    };
    let sol = driver::solve(&c, &g, &cfg).map_err(|e| e.to_string())?;
    let routed = route_circuit(&c, &sol, g.num_physical());
    verify_solution(&c, &sol, &g)
        .and_then(|()| verify(&c, &routed, &sol.initial_map, &g))
        .map_err(|v| format!("routed circuit failed verification: {v}"))?;
    Ok(json!({
        "swap_count": sol.swap_count,
        "gates_added": sol.gates_added,
        "status": sol.status,
        "initial_map": sol.initial_map,
        "slots": c.num_slots(),
        "routed": emit_qasm(&routed, false),
    })
    .to_string())
}

/// JSON description of a built-in architecture.
pub fn graph(arch: &str) -> Result<String, String> {
    let g = load_arch(arch).map_err(|e| e.to_string())?;
    Ok(json!({
        "num_physical": g.num_physical(),
        "edges": g.edges(),
        "diameter": g.diameter(),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn route_qasm(
    qasm: &str,
    arch: &str,
    strategy: &str,
    slice_size: usize,
    n: usize,
    budget_ms: u32,
) -> Result<String, JsValue> {
    route(qasm, arch, strategy, slice_size, n, budget_ms).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn arch_graph(arch: &str) -> Result<String, JsValue> {
    graph(arch).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn qaoa_qasm(qubits: usize, cycles: usize, seed: u32) -> Result<String, JsValue> {
    generate_qaoa_maxcut(qubits, cycles, seed.into())
        .map(|c| emit_qasm(&c, false))
        .map_err(|e| JsValue::from_str(&e.to_string()))
}
