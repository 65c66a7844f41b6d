use super::*;
use crate::arch::load_arch;
use crate::maxsat::{solve_builtin, Budget, SolveStatus};
use crate::routing::QubitMap;

fn optimum(inst: &MaxSatInstance) -> (SolveStatus, Option<u64>) {
    let out = solve_builtin(inst, Budget::unlimited());
    (out.status, out.falsified_weight)
}

fn solve_and_decode(c: &Circuit, g: &ConnectivityGraph, opt: &EncodeOptions) -> crate::routing::RoutingSolution {
    let inst = encode(c, g, opt).unwrap();
    let out = solve_builtin(&inst, Budget::unlimited());
    assert_eq!(out.status, SolveStatus::Optimal);
    decode(out.model.as_ref().unwrap(), &inst, c, g, opt).unwrap()
}

#[test]
fn pi_applies_transpositions_in_order() {
    assert_eq!(pi(&[(3, 5)], 3), 5);
    assert_eq!(pi(&[(3, 5), (5, 7)], 3), 7);
    assert_eq!(pi(&[(0, 0)], 4), 4);
    assert_eq!(pi(&[(1, 2), (0, 0), (1, 2)], 1), 1);
}

#[test]
fn single_slot_counts_match_hand_enumeration() {
    // line:2, two qubits, one slot, n = 1.
    // vars: 4 (slot-0 map) + 2 (noop, edge) + 4 (slot-1 map) + 2 (gate helpers) = 12
    // hard: injectivity 2 * (2 * 2 + 2) = 12, gate 2 * 2 + 1 = 5,
    //       one swap 1 + 1 = 2, swap effect 2 sequences * 2 p * 2 q * 2 = 16
    let g = load_arch("line:2").unwrap();
    let c = Circuit::from_pairs(2, &[(0, 1)]).unwrap();
    let inst = encode(&c, &g, &EncodeOptions::default()).unwrap();
    assert_eq!(
        instance_stats(&inst),
        InstanceStats {
            vars: 12,
            hard_count: 35,
            soft_count: 1
        }
    );
    assert_eq!(optimum(&inst), (SolveStatus::Optimal, Some(0)));
}

#[test]
fn var_table_is_dense_and_tags_swaps_on_edges_only() {
    let g = load_arch("line:3").unwrap();
    let c = Circuit::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
    let inst = encode(&c, &g, &EncodeOptions::default()).unwrap();
    assert_eq!(inst.var_table.len(), inst.num_vars);
    for (_, tag) in inst.var_table.iter() {
        if let VarTag::Swap { p, p2, .. } = tag {
            assert!((p, p2) == (0, 0) || g.contains(p, p2));
        }
    }
    let max_lit = inst
        .hard
        .iter()
        .chain(inst.soft.iter().map(|(c, _)| c))
        .flat_map(|c| c.lits())
        .map(|l| l.var().index())
        .max()
        .unwrap();
    assert!(max_lit <= inst.num_vars);
}

#[test]
fn line4_star_pattern_needs_one_swap() {
    let g = load_arch("line:4").unwrap();
    let c = Circuit::from_pairs(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    let inst = encode(&c, &g, &EncodeOptions::default()).unwrap();
    assert_eq!(optimum(&inst), (SolveStatus::Optimal, Some(1)));
    let sol = solve_and_decode(&c, &g, &EncodeOptions::default());
    assert_eq!(sol.swap_count, 1);
}

#[test]
fn pinned_line3_needs_one_swap() {
    let g = load_arch("line:3").unwrap();
    let c = Circuit::from_pairs(3, &[(0, 1), (0, 2)]).unwrap();
    let opt = EncodeOptions {
        pinned_initial: Some(QubitMap::identity(3)),
        ..Default::default()
    };
    let inst = encode(&c, &g, &opt).unwrap();
    assert_eq!(optimum(&inst), (SolveStatus::Optimal, Some(1)));
    let sol = solve_and_decode(&c, &g, &opt);
    assert_eq!(sol.initial_map, QubitMap::identity(3));
    // Unpinned, q0 can start in the middle.
    let free = encode(&c, &g, &EncodeOptions::default()).unwrap();
    assert_eq!(optimum(&free).1, Some(0));
}

#[test]
fn decoded_maps_follow_the_swaps() {
    let g = load_arch("line:4").unwrap();
    let c = Circuit::from_pairs(4, &[(0, 1), (2, 3), (0, 3), (1, 2), (0, 2)]).unwrap();
    let sol = solve_and_decode(&c, &g, &EncodeOptions::default());
    let mut cur = sol.initial_map.clone();
    for (k, s) in sol.swaps.iter().enumerate() {
        cur = cur.apply_swaps(s);
        assert_eq!(cur, sol.map_sequence[k]);
        let (a, b) = c.slot_pair(k);
        assert!(g.contains(cur.get(a), cur.get(b)));
    }
}

#[test]
fn two_swaps_per_slot() {
    let g = load_arch("line:4").unwrap();
    let c = Circuit::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
    let opt = EncodeOptions::with_n(2);
    let sol = solve_and_decode(&c, &g, &opt);
    assert!(sol.swaps.iter().all(|s| s.len() <= 2));
}

#[test]
fn rejects_bad_options() {
    let g = load_arch("line:3").unwrap();
    let c = Circuit::from_pairs(4, &[(0, 1)]).unwrap();
    assert!(matches!(
        encode(&c, &g, &EncodeOptions::default()),
        Err(EncodeError::TooManyQubits { .. })
    ));
    let c = Circuit::from_pairs(2, &[(0, 1)]).unwrap();
    assert!(matches!(
        encode(&c, &g, &EncodeOptions::with_n(0)),
        Err(EncodeError::ZeroSwaps)
    ));
    assert!(matches!(
        encode(&c, &g, &EncodeOptions::with_n(3)),
        Err(EncodeError::SwapsAboveDiameter { .. })
    ));
    let pinned = |m: Vec<usize>| EncodeOptions {
        pinned_initial: Some(QubitMap::from_raw(m)),
        ..Default::default()
    };
    assert!(matches!(
        encode(&c, &g, &pinned(vec![1, 1])),
        Err(EncodeError::BadMap { .. })
    ));
    assert!(matches!(
        encode(&c, &g, &pinned(vec![0, 5])),
        Err(EncodeError::BadMap { .. })
    ));
    assert!(matches!(
        encode(&c, &g, &pinned(vec![0])),
        Err(EncodeError::BadMap { .. })
    ));
    let both = EncodeOptions {
        cyclic: true,
        ..pinned(vec![0, 1])
    };
    assert!(matches!(encode(&c, &g, &both), Err(EncodeError::CyclicWithPin)));
    let only_one_qubit_gates = Circuit::new(2, vec![crate::circuit::Gate::one("h", 0)]).unwrap();
    assert!(matches!(
        encode(&only_one_qubit_gates, &g, &EncodeOptions::default()),
        Err(EncodeError::NoSlots)
    ));
    let other = load_arch("line:2").unwrap();
    let weighted = EncodeOptions {
        weighted: Some(Weighting::new(NoiseModel::uniform(&other, 0.99).unwrap())),
        ..Default::default()
    };
    assert!(matches!(encode(&c, &g, &weighted), Err(EncodeError::NoiseCoverage)));
}

#[test]
fn hard_clause_count_scales_with_slots() {
    let g = load_arch("grid:2x3").unwrap();
    let pairs = [(0, 1), (2, 3), (1, 4), (0, 5), (3, 4), (2, 5)];
    let mut doubled = pairs.to_vec();
    doubled.extend_from_slice(&pairs);
    let a = encode_pairs(6, &pairs, &g, &EncodeOptions::default()).unwrap();
    let b = encode_pairs(6, &doubled, &g, &EncodeOptions::default()).unwrap();
    let ratio = b.hard.len() as f64 / a.hard.len() as f64;
    assert!((1.5..=2.5).contains(&ratio), "{ratio}");
}

#[test]
fn weighted_mode_soft_clause_count() {
    let g = load_arch("line:3").unwrap();
    let c = Circuit::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let k = c.num_slots();
    let edges = g.edges().len();
    for n in 1..=2 {
        let plain = encode(&c, &g, &EncodeOptions::with_n(n)).unwrap();
        let weighted = EncodeOptions {
            weighted: Some(Weighting::new(NoiseModel::uniform(&g, 0.99).unwrap())),
            ..EncodeOptions::with_n(n)
        };
        let w = encode(&c, &g, &weighted).unwrap();
        assert_eq!(plain.soft.len(), k * n);
        // Each no-op unit is replaced by one unit per real edge, and every
        // slot gains one clause per oriented edge for the gate.
        assert_eq!(w.soft.len() - plain.soft.len(), k * n * (edges - 1) + 2 * edges * k);
    }
}

#[test]
fn weight_law() {
    assert_eq!(fidelity_weight(1.0, 1000.0), 0);
    assert_eq!(fidelity_weight(0.99, 1000.0), 10);
    assert_eq!(fidelity_weight(0.970299, 1000.0), 30);
}

#[test]
fn uniform_weights_keep_the_argmin() {
    // With every fidelity equal the weighted objective is
    // swaps * w_swap + slots * w_cx, so the minimising routings coincide.
    let g = load_arch("line:4").unwrap();
    let c = Circuit::from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 3)]).unwrap();
    let plain = encode(&c, &g, &EncodeOptions::default()).unwrap();
    let weighted_opt = EncodeOptions {
        weighted: Some(Weighting::new(NoiseModel::uniform(&g, 0.99).unwrap())),
        ..Default::default()
    };
    let weighted = encode(&c, &g, &weighted_opt).unwrap();
    let (_, best_plain) = optimum(&plain);
    let out = solve_builtin(&weighted, Budget::unlimited());
    assert_eq!(out.status, SolveStatus::Optimal);
    let model = out.model.unwrap();
    let swaps = plain.falsified_weight(&model);
    assert_eq!(Some(swaps), best_plain);
    let w_swap = fidelity_weight(0.99f64.powi(3), 1000.0);
    let w_cx = fidelity_weight(0.99, 1000.0);
    assert_eq!(out.falsified_weight, Some(swaps * w_swap + c.num_slots() as u64 * w_cx));
}

#[test]
fn blocking_a_final_map_excludes_only_that_map() {
    let g = load_arch("line:3").unwrap();
    let c = Circuit::from_pairs(3, &[(0, 1), (0, 2)]).unwrap();
    let pin = QubitMap::identity(3);
    let base = EncodeOptions {
        pinned_initial: Some(pin.clone()),
        ..Default::default()
    };
    let first = solve_and_decode(&c, &g, &base);
    let blocked = EncodeOptions {
        blocked_final_maps: vec![first.final_map().clone()],
        ..base.clone()
    };
    let second = solve_and_decode(&c, &g, &blocked);
    assert_ne!(second.final_map(), first.final_map());
    assert_eq!(second.swap_count, 1);
    // Blocking every reachable one-swap final map forces more swaps or unsat.
    let mut all = EncodeOptions { ..base };
    let mut seen = Vec::new();
    loop {
        all.blocked_final_maps = seen.clone();
        let inst = encode(&c, &g, &all).unwrap();
        let out = solve_builtin(&inst, Budget::unlimited());
        if out.status == SolveStatus::HardUnsat {
            break;
        }
        let sol = decode(out.model.as_ref().unwrap(), &inst, &c, &g, &all).unwrap();
        assert!(!seen.contains(sol.final_map()));
        seen.push(sol.final_map().clone());
        assert!(seen.len() <= 6);
    }
    // q0 must end next to q2, with q0 and q1 adjacent at slot 1: the reachable
    // final maps are exactly the injective maps meeting both gates in turn.
    assert!(!seen.is_empty());
}

#[test]
fn cyclic_boundary_returns_to_the_start() {
    let g = load_arch("line:3").unwrap();
    let c = Circuit::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let opt = EncodeOptions {
        cyclic: true,
        ..Default::default()
    };
    let sol = solve_and_decode(&c, &g, &opt);
    assert_eq!(sol.final_map(), &sol.initial_map);
    assert!(sol.swap_count >= 2);
}

#[test]
fn pinned_final_map() {
    let g = load_arch("line:3").unwrap();
    let c = Circuit::from_pairs(3, &[(0, 1)]).unwrap();
    let opt = EncodeOptions {
        pinned_initial: Some(QubitMap::identity(3)),
        pinned_final: Some(QubitMap::from_raw(vec![0, 2, 1])),
        ..Default::default()
    };
    let inst = encode(&c, &g, &opt).unwrap();
    let out = solve_builtin(&inst, Budget::unlimited());
    // The single slot's swap must both move q1 to p2 and keep q0, q1 adjacent.
    assert_eq!(out.status, SolveStatus::HardUnsat);
}

#[test]
fn product_encoding_gives_the_same_optimum() {
    let g = load_arch("grid:2x3").unwrap();
    let c = Circuit::from_pairs(6, &[(0, 1), (0, 2), (0, 3), (4, 5), (1, 5)]).unwrap();
    let pair = encode(&c, &g, &EncodeOptions::default()).unwrap();
    let prod = encode(
        &c,
        &g,
        &EncodeOptions {
            amo: AmoEncoding::Product,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(optimum(&pair), optimum(&prod));
}

#[test]
fn full_model_blocking() {
    let g = load_arch("line:2").unwrap();
    let c = Circuit::from_pairs(2, &[(0, 1)]).unwrap();
    let opt = EncodeOptions {
        blocked_assignments: vec![vec![
            VarTag::Map { q: 0, p: 0, k: 0 },
            VarTag::Swap {
                p: 0,
                p2: 0,
                k: 1,
                i: 1,
            },
        ]],
        ..Default::default()
    };
    let inst = encode(&c, &g, &opt).unwrap();
    let out = solve_builtin(&inst, Budget::unlimited());
    let sol = decode(out.model.as_ref().unwrap(), &inst, &c, &g, &opt).unwrap();
    assert_eq!(sol.swap_count, 0);
    assert_eq!(sol.initial_map.as_slice(), &[1, 0]);
}
