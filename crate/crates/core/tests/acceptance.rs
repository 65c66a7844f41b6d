//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use web_time::Instant;

use satroute::arch::{load_arch, ConnectivityGraph, NoiseModel};
use satroute::circuit::{emit_qasm, generate_qaoa_maxcut, parse_qasm, Circuit, Gate};
use satroute::driver::{brute_force_oracle, solve_cyclic, solve_global, solve_sliced, DriverConfig, Strategy};
use satroute::encoder::{encode, EncodeOptions, Weighting};
use satroute::maxsat::{
    emit_wcnf, parse_wcnf, solve_builtin, solve_external, Budget, MaxSatInstance, SolveStatus, Var,
};
use satroute::routing::route_circuit;
use satroute::verifier::{verify, verify_solution, ViolationKind};
use satroute::{QubitMap, RoutingSolution, RoutingStatus};

const ARCHS: [&str; 4] = ["line:3", "line:4", "cycle:4", "star:4"];

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Random circuit of `gates` two-qubit gates on `nq` qubits, every qubit
/// drawn from the full range.
fn random_pairs(rng: &mut ChaCha8Rng, nq: usize, gates: usize) -> Vec<(usize, usize)> {
    (0..gates)
        .map(|_| {
            let a = rng.gen_range(0..nq);
            let mut b = rng.gen_range(0..nq - 1);
            if b >= a {
                b += 1;
            }
            (a, b)
        })
        .collect()
}

/// One oracle-sized instance: (arch name, circuit).
fn oracle_instance(rng: &mut ChaCha8Rng, archs: &[&str], max_gates: usize) -> (String, Circuit) {
    let arch = *archs.choose(rng).unwrap();
    let np = load_arch(arch).unwrap().num_physical();
    let nq = rng.gen_range(2..=np.min(4));
    let gates = rng.gen_range(1..=max_gates);
    let c = Circuit::from_pairs(nq, &random_pairs(rng, nq, gates)).unwrap();
    (arch.to_string(), c)
}

/// Mixes one-qubit gates with distinct parameters between the CNOTs.
fn decorate(rng: &mut ChaCha8Rng, c: &Circuit) -> Circuit {
    let mut gates = Vec::new();
    for (i, g) in c.gates().iter().enumerate() {
        gates.push(g.clone());
        if rng.gen_bool(0.7) {
            let q = g.operands[rng.gen_range(0..2)];
            gates.push(Gate::new("rz", vec![format!("0.{}", i + 1)], vec![q]));
        }
    }
    Circuit::new(c.num_logical(), gates).unwrap()
}

fn cfg_n(n: usize) -> DriverConfig {
    DriverConfig {
        n,
        ..Default::default()
    }
}

fn both_verify(c: &Circuit, sol: &RoutingSolution, g: &ConnectivityGraph) -> Result<(), String> {
    verify_solution(c, sol, g).map_err(|v| format!("verify_solution: {v}"))?;
    let routed = route_circuit(c, sol, g.num_physical());
    verify(c, &routed, &sol.initial_map, g).map_err(|v| format!("verify: {v}"))
}

fn oracle_optimality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    for i in 0..200 {
        let (arch, c) = oracle_instance(&mut rng, &ARCHS, 5);
        let g = load_arch(&arch).unwrap();
        let n = g.diameter();
        let oracle = brute_force_oracle(&c, &g, n).map_err(|e| format!("#{i}: oracle: {e}"))?;
        let sol = solve_global(&c, &g, &cfg_n(n)).map_err(|e| format!("#{i}: {e}"))?;
        check(sol.status == RoutingStatus::Optimal, format!("#{i}: not optimal"))?;
        check(
            sol.swap_count == oracle.min_swaps,
            format!(
                "#{i} on {arch}: {:?} gave {} swaps, oracle {}",
                c.slot_pairs(),
                sol.swap_count,
                oracle.min_swaps
            ),
        )?;
        both_verify(&c, &sol, &g).map_err(|e| format!("#{i}: {e}"))?;
    }
    Ok(format!(
        "200 instances match the oracle in {:.1}s",
        start.elapsed().as_secs_f64()
    ))
}

fn running_example() -> Outcome {
    let g = load_arch("line:4").unwrap();
    let c = Circuit::from_pairs(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    let oracle = brute_force_oracle(&c, &g, 1).map_err(|e| e.to_string())?;
    check(oracle.min_swaps == 1, format!("oracle says {}", oracle.min_swaps))?;
    let sol = solve_global(&c, &g, &cfg_n(1)).map_err(|e| e.to_string())?;
    check(
        (sol.swap_count, sol.gates_added) == (1, 3),
        format!("swap_count {}, gates_added {}", sol.swap_count, sol.gates_added),
    )?;
    both_verify(&c, &sol, &g)?;
    Ok("1 swap, 3 gates added".into())
}

fn maxsat_examples() -> Outcome {
    // Hard: ¬a ∨ b. Soft: b, and a ∧ ¬b through selector s (s → a, s → ¬b).
    let (a, b, s) = (Var(1), Var(2), Var(3));
    let mut inst = MaxSatInstance::new(3);
    inst.add_hard([a.neg(), b.pos()]);
    inst.add_hard([s.neg(), a.pos()]);
    inst.add_hard([s.neg(), b.neg()]);
    inst.add_soft([b.pos()], 1);
    inst.add_soft([s.pos()], 1);
    let out = solve_builtin(&inst, Budget::unlimited());
    check(out.status == SolveStatus::Optimal, format!("status {:?}", out.status))?;
    let satisfied = inst.total_soft_weight() - out.falsified_weight.unwrap();
    check(satisfied == 1, format!("{satisfied} soft formulas satisfied"))?;
    let stated = satroute::maxsat::Model::new(vec![false, true, false]);
    check(
        inst.violated_hard(&stated).is_none(),
        "a=false, b=true violates a hard clause",
    )?;
    check(inst.falsified_weight(&stated) == 1, "a=false, b=true is not optimal")?;

    let mut w = MaxSatInstance::new(2);
    w.add_hard([a.pos(), b.pos()]);
    w.add_soft([a.neg()], 5);
    w.add_soft([b.neg()], 1);
    let out = solve_builtin(&w, Budget::unlimited());
    let m = out.model.ok_or("no model")?;
    check(!m.value(a) && m.value(b), "weighted example model differs")?;
    let satisfied = w.total_soft_weight() - out.falsified_weight.unwrap();
    check(satisfied == 5, format!("satisfied weight {satisfied}"))?;
    Ok("one soft formula with a=false, b=true; weighted optimum 5".into())
}

fn slicing_dominance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut strict, mut runs) = (0, 0);
    for i in 0..50 {
        let (arch, c) = oracle_instance(&mut rng, &["line:4", "cycle:4", "star:4"], 6);
        let g = load_arch(&arch).unwrap();
        let n = g.diameter();
        let global = solve_global(&c, &g, &cfg_n(n)).map_err(|e| format!("#{i}: {e}"))?;
        let oracle = brute_force_oracle(&c, &g, n).map_err(|e| format!("#{i}: {e}"))?;
        check(
            global.swap_count == oracle.min_swaps,
            format!("#{i}: global is not optimal"),
        )?;
        for size in [1, 2, 3] {
            let cfg = DriverConfig {
                strategy: Strategy::Sliced,
                ..cfg_n(n)
            };
            let sol = solve_sliced(&c, &g, &cfg, size).map_err(|e| format!("#{i} size {size}: {e}"))?;
            check(
                sol.swap_count >= global.swap_count,
                format!(
                    "#{i} size {size}: sliced {} < global {}",
                    sol.swap_count, global.swap_count
                ),
            )?;
            both_verify(&c, &sol, &g).map_err(|e| format!("#{i} size {size}: {e}"))?;
            runs += 1;
            if sol.swap_count > global.swap_count {
                strict += 1;
            }
        }
    }
    check(strict > 0, "no run where slicing costs more than the global optimum")?;
    Ok(format!(
        "{runs} sliced runs dominate the global optimum, {strict} strictly"
    ))
}

fn cyclic_stitching() -> Outcome {
    let mut lines = Vec::new();
    for (qubits, arch, slice) in [(4, "cycle:4", None), (6, "grid:2x3", Some(6))] {
        let g = load_arch(arch).unwrap();
        let block = generate_qaoa_maxcut(qubits, 1, 7).map_err(|e| e.to_string())?;
        let cfg = DriverConfig {
            strategy: Strategy::Cyclic,
            cyclic_slice_size: slice,
            ..cfg_n(1)
        };
        let one = solve_cyclic(&block, 1, &g, &cfg).map_err(|e| format!("{qubits} qubits: {e}"))?;
        let per_block = one.swap_count;
        for cycles in [2, 4] {
            let c = block.repeat(cycles);
            let sol = solve_cyclic(&block, cycles, &g, &cfg).map_err(|e| format!("{qubits}x{cycles}: {e}"))?;
            let k = block.num_slots();
            for j in 1..=cycles {
                check(
                    boundary_map(&sol, j * k) == sol.initial_map,
                    format!("{qubits}x{cycles}: map after copy {j} differs from the initial map"),
                )?;
            }
            check(
                sol.swap_count == cycles * per_block,
                format!(
                    "{qubits}x{cycles}: {} swaps, expected {cycles} x {per_block}",
                    sol.swap_count
                ),
            )?;
            both_verify(&c, &sol, &g).map_err(|e| format!("{qubits}x{cycles}: {e}"))?;
        }
        lines.push(format!("{qubits}q on {arch}: {per_block}/block"));
    }
    Ok(lines.join(", "))
}

/// Map in force when copy boundary `slot` is reached: the map of the next
/// slot with its own SWAPs undone, or the final map after the last copy.
fn boundary_map(sol: &RoutingSolution, slot: usize) -> QubitMap {
    if slot == sol.num_slots() {
        return sol.final_map().clone();
    }
    let own: Vec<_> = sol.swaps[slot].iter().rev().copied().collect();
    sol.map_sequence[slot].apply_swaps(&own)
}

/// A corpus of valid routed outputs on decorated random circuits.
struct Case {
    source: Circuit,
    g: ConnectivityGraph,
    sol: RoutingSolution,
}

fn valid_cases(count: usize) -> Result<Vec<Case>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut out = Vec::new();
    while out.len() < count {
        let (arch, c) = oracle_instance(&mut rng, &["line:3", "line:4", "star:4", "cycle:4"], 5);
        let source = decorate(&mut rng, &c);
        let g = load_arch(&arch).unwrap();
        let sol = solve_global(&source, &g, &cfg_n(g.diameter())).map_err(|e| e.to_string())?;
        out.push(Case { source, g, sol });
    }
    Ok(out)
}

fn non_edge(g: &ConnectivityGraph, rng: &mut ChaCha8Rng) -> Option<(usize, usize)> {
    let np = g.num_physical();
    let mut all: Vec<_> = (0..np)
        .flat_map(|a| (a + 1..np).map(move |b| (a, b)))
        .filter(|&(a, b)| !g.contains(a, b))
        .collect();
    all.shuffle(rng);
    all.first().copied()
}

fn gates_of(c: &Circuit) -> Vec<Gate> {
    c.gates().to_vec()
}

fn rebuild(np: usize, gates: Vec<Gate>) -> Circuit {
    Circuit::new(np, gates).unwrap()
}

fn fault_injection() -> Outcome {
    let cases = valid_cases(200)?;
    for (i, case) in cases.iter().enumerate() {
        both_verify(&case.source, &case.sol, &case.g).map_err(|e| format!("valid output #{i} rejected: {e}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let mut counts = [0usize; 6];
    let kinds = [
        ViolationKind::NonEdgeSwap,
        ViolationKind::NonEdgeGate,
        ViolationKind::ReorderedGate,
        ViolationKind::MissingGate,
        ViolationKind::ExtraGate,
        ViolationKind::NonInjectiveMap,
    ];
    for (i, case) in cases.iter().enumerate() {
        let np = case.g.num_physical();
        let routed = route_circuit(&case.source, &case.sol, np);
        let base = gates_of(&routed);
        let init = &case.sol.initial_map;
        let expect = |kind: ViolationKind, got: Result<(), satroute::verifier::Violation>| match got {
            Err(v) if v.kind == kind => Ok(()),
            Err(v) => Err(format!("case #{i}: {kind:?} mutant reported as {:?} ({v})", v.kind)),
            Ok(()) => Err(format!("case #{i}: {kind:?} mutant accepted")),
        };

        if let Some((a, b)) = non_edge(&case.g, &mut rng) {
            let mut g2 = base.clone();
            g2.insert(rng.gen_range(0..=g2.len()), Gate::swap(a, b));
            expect(kinds[0], verify(&case.source, &rebuild(np, g2), init, &case.g))?;
            counts[0] += 1;
        }

        // An optimal solution needs every one of its SWAPs.
        if case.sol.status == RoutingStatus::Optimal && case.sol.swap_count > 0 {
            let mut swaps = case.sol.swaps.clone();
            let slots: Vec<usize> = (0..swaps.len()).filter(|&k| !swaps[k].is_empty()).collect();
            let k = *slots.choose(&mut rng).unwrap();
            let j = rng.gen_range(0..swaps[k].len());
            swaps[k].remove(j);
            let tampered = RoutingSolution::from_swaps(init.clone(), swaps, RoutingStatus::Optimal);
            let r2 = route_circuit(&case.source, &tampered, np);
            expect(kinds[1], verify(&case.source, &r2, init, &case.g))?;
            expect(kinds[1], verify_solution(&case.source, &tampered, &case.g))?;
            counts[1] += 1;
        }

        let pairs: Vec<usize> = (0..base.len().saturating_sub(1))
            .filter(|&r| base[r].name != "swap" && base[r + 1].name != "swap" && base[r] != base[r + 1])
            .collect();
        if let Some(&r) = pairs.choose(&mut rng) {
            let mut g2 = base.clone();
            g2.swap(r, r + 1);
            expect(kinds[2], verify(&case.source, &rebuild(np, g2), init, &case.g))?;
            counts[2] += 1;
        }

        let real: Vec<usize> = (0..base.len()).filter(|&r| base[r].name != "swap").collect();
        if let Some(&r) = real.choose(&mut rng) {
            let mut g2 = base.clone();
            g2.remove(r);
            expect(kinds[3], verify(&case.source, &rebuild(np, g2), init, &case.g))?;
            counts[3] += 1;
        }

        let mut g2 = base.clone();
        let (ea, eb) = *case.g.edges().choose(&mut rng).unwrap();
        let extra = if rng.gen_bool(0.5) {
            Gate::one("x", rng.gen_range(0..np))
        } else {
            Gate::two("cz", ea, eb)
        };
        g2.insert(rng.gen_range(0..=g2.len()), extra);
        expect(kinds[4], verify(&case.source, &rebuild(np, g2), init, &case.g))?;
        counts[4] += 1;

        let mut bad = case.sol.clone();
        let k = rng.gen_range(0..bad.map_sequence.len());
        let mut m = bad.map_sequence[k].clone().into_vec();
        let (qa, qb) = case.source.slot_pair(k);
        m[qb] = m[qa];
        bad.map_sequence[k] = QubitMap::from_raw(m);
        expect(kinds[5], verify_solution(&case.source, &bad, &case.g))?;
        counts[5] += 1;
    }
    for (kind, n) in kinds.iter().zip(counts) {
        check(n >= 20, format!("only {n} {kind:?} mutants"))?;
    }
    Ok(format!(
        "{} valid outputs accepted; mutants rejected per class {counts:?}",
        cases.len()
    ))
}

fn encoding_scaling() -> Outcome {
    let g = load_arch("line:6").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pairs = random_pairs(&mut rng, 6, 40);
    let sizes = [10usize, 20, 40];
    let counts: Vec<f64> = sizes
        .iter()
        .map(|&k| {
            let c = Circuit::from_pairs(6, &pairs[..k]).unwrap();
            encode(&c, &g, &EncodeOptions::default()).unwrap().hard.len() as f64
        })
        .collect();
    let xs: Vec<f64> = sizes.iter().map(|&k| k as f64).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / 3.0, counts.iter().sum::<f64>() / 3.0);
    let slope = xs.iter().zip(&counts).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    let icpt = my - slope * mx;
    let worst = xs
        .iter()
        .zip(&counts)
        .map(|(x, y)| ((slope * x + icpt) - y).abs() / y)
        .fold(0.0, f64::max);
    check(worst < 0.05, format!("relative residual {worst:.4}"))?;
    for w in counts.windows(2) {
        let ratio = w[1] / w[0];
        check((1.5..=2.5).contains(&ratio), format!("doubling ratio {ratio:.3}"))?;
    }
    Ok(format!(
        "hard clauses {counts:?}, fit {slope:.1}*K + {icpt:.1}, max residual {:.2}%",
        worst * 100.0
    ))
}

fn wcnf_interop() -> Outcome {
    let external = std::env::var("SATROUTE_EXTERNAL_SOLVER")
        .unwrap_or_else(|_| format!("{} solve-wcnf {{wcnf}}", env!("CARGO_BIN_EXE_satroute")));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..50 {
        let (arch, c) = oracle_instance(&mut rng, &ARCHS, 4);
        let g = load_arch(&arch).unwrap();
        let mut opt = EncodeOptions::with_n(1.max(g.diameter() / 2));
        if i % 2 == 1 {
            let noise = NoiseModel::uniform(&g, rng.gen_range(0.9..0.999)).unwrap();
            opt.weighted = Some(Weighting::new(noise));
        }
        let inst = encode(&c, &g, &opt).map_err(|e| format!("#{i}: {e}"))?;
        let text = emit_wcnf(&inst);
        let back = parse_wcnf(&text).map_err(|e| format!("#{i}: {e}"))?;
        let direct = solve_builtin(&inst, Budget::unlimited());
        let parsed = solve_builtin(&back, Budget::unlimited());
        check(
            direct.status == SolveStatus::Optimal && parsed.status == SolveStatus::Optimal,
            format!("#{i}: statuses {:?} / {:?}", direct.status, parsed.status),
        )?;
        check(
            direct.falsified_weight == parsed.falsified_weight,
            format!(
                "#{i}: {:?} vs {:?} after round trip",
                direct.falsified_weight, parsed.falsified_weight
            ),
        )?;
        let ext = solve_external(&inst, &external, Budget::unlimited()).map_err(|e| format!("#{i}: external: {e}"))?;
        let m = ext.model.ok_or(format!("#{i}: external solver returned no model"))?;
        check(
            inst.violated_hard(&m).is_none(),
            format!("#{i}: external model violates a hard clause"),
        )?;
        check(
            Some(inst.falsified_weight(&m)) == direct.falsified_weight,
            format!(
                "#{i}: external optimum {} vs builtin {:?}",
                inst.falsified_weight(&m),
                direct.falsified_weight
            ),
        )?;
    }
    let which = if std::env::var("SATROUTE_EXTERNAL_SOLVER").is_ok() {
        "configured external solver"
    } else {
        "stand-in subprocess solver"
    };
    Ok(format!("50 round trips preserve the optimum; {which} agrees"))
}

fn anytime_contract() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let input = dir.path().join("medium.qasm");
    let source = generate_qaoa_maxcut(8, 2, 9).map_err(|e| e.to_string())?;
    std::fs::write(&input, emit_qasm(&source, false)).map_err(|e| e.to_string())?;
    let g = load_arch("grid:2x4").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut unknown, mut solved) = (0, 0);
    for i in 0..50 {
        let budget_ms = rng.gen_range(1..=300);
        let out = dir.path().join(format!("r{i}.qasm"));
        let strategy = if i % 2 == 0 { "global" } else { "sliced" };
        let st = Command::new(env!("CARGO_BIN_EXE_satroute"))
            .args([
                "map",
                "--arch",
                "grid:2x4",
                "--strategy",
                strategy,
                "--slice-size",
                "4,8",
            ])
            .arg("--input")
            .arg(&input)
            .arg("--budget")
            .arg(format!("{}", budget_ms as f64 / 1000.0))
            .arg("--output")
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        match st.status.code() {
            Some(2) => {
                check(!out.exists(), format!("run {i}: exit 2 but a circuit was written"))?;
                unknown += 1;
            }
            Some(0) => {
                let text = std::fs::read_to_string(&out).map_err(|e| e.to_string())?;
                let routed = parse_qasm(&text).map_err(|e| e.to_string())?;
                let init: Vec<usize> = text
                    .lines()
                    .next()
                    .and_then(|l| l.strip_prefix("// initial-map "))
                    .ok_or(format!("run {i}: no initial map comment"))?
                    .split(',')
                    .map(|t| t.parse().unwrap())
                    .collect();
                verify(&source, &routed, &QubitMap::from_raw(init), &g)
                    .map_err(|v| format!("run {i} ({budget_ms} ms): emitted circuit fails: {v}"))?;
                solved += 1;
            }
            code => {
                return Err(format!(
                    "run {i} ({budget_ms} ms, {strategy}): exit {code:?}: {}",
                    String::from_utf8_lossy(&st.stderr)
                ))
            }
        }
    }
    Ok(format!("{solved} verifying results, {unknown} exit-2 cutoffs"))
}

fn weighted_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..200 {
        let (arch, c) = oracle_instance(&mut rng, &ARCHS, 5);
        let g = load_arch(&arch).unwrap();
        let n = g.diameter();
        let plain = solve_global(&c, &g, &cfg_n(n)).map_err(|e| format!("#{i}: {e}"))?;
        let noise = NoiseModel::uniform(&g, 0.99).unwrap();
        let cfg = DriverConfig {
            weighted: Some(Weighting::new(noise)),
            ..cfg_n(n)
        };
        let weighted = solve_global(&c, &g, &cfg).map_err(|e| format!("#{i} weighted: {e}"))?;
        check(
            weighted.swap_count == plain.swap_count,
            format!(
                "#{i}: weighted {} vs unweighted {}",
                weighted.swap_count, plain.swap_count
            ),
        )?;
        both_verify(&c, &weighted, &g).map_err(|e| format!("#{i}: {e}"))?;
    }
    Ok("200 oracle instances: weighted swap count equals unweighted".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("oracle optimality", oracle_optimality),
        ("running example", running_example),
        ("maxsat micro-examples", maxsat_examples),
        ("slicing dominance", slicing_dominance),
        ("cyclic stitching", cyclic_stitching),
        ("verifier fault injection", fault_injection),
        ("encoding-size scaling", encoding_scaling),
        ("wcnf interop", wcnf_interop),
        ("anytime contract", anytime_contract),
        ("weighted argmin invariance", weighted_invariance),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{secs:.1}s]", i + 1),
            Err(msg) => {
                println!("FAIL {:>2} {name}: {msg} [{secs:.1}s]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
