//! Exact branch-and-bound MaxSAT by DPLL search with unit propagation.
//!
//! Soft clauses are reduced to per-literal penalties: a unit soft clause
//! `{l}` charges its weight when `l` becomes false, and a longer soft clause
//! `C` gets a fresh selector `s` with the hard clause `¬s ∨ C` and a penalty
//! on `s` being false. The running penalty of the partial assignment is the
//! lower bound; any branch whose bound reaches the incumbent is cut.
//!
//! Branching is on the lowest unassigned variable, true first, so runs are
//! reproducible.

use web_time::Instant;

use super::{Budget, Lit, MaxSatInstance, Model, SolveOutcome, SolveStatus, Var};

/// Counters from one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
}

const UNASSIGNED: i8 = 0;

struct Search {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<u32>>,
    units: Vec<Lit>,
    /// Penalty charged when the variable is assigned true / false.
    pen_true: Vec<u64>,
    pen_false: Vec<u64>,
    value: Vec<i8>,
    trail: Vec<Lit>,
    qhead: usize,
    /// (trail length at decision, decision var, second branch already taken)
    levels: Vec<(usize, Var, bool)>,
    cost: u64,
    base_cost: u64,
    next_hint: usize,
    stats: SolverStats,
}

impl Search {
    fn new(inst: &MaxSatInstance) -> Self {
        let mut num_vars = inst.num_vars;
        let mut long: Vec<Vec<Lit>> = Vec::new();
        let mut units = Vec::new();
        for c in &inst.hard {
            if c.len() == 1 {
                units.push(c.lits()[0]);
            } else {
                long.push(c.lits().to_vec());
            }
        }
        let mut soft_units: Vec<(Lit, u64)> = Vec::new();
        for (c, w) in &inst.soft {
            if c.len() == 1 {
                soft_units.push((c.lits()[0], *w));
            } else {
                num_vars += 1;
                let s = Var(num_vars as u32);
                let mut relaxed = vec![s.neg()];
                relaxed.extend_from_slice(c.lits());
                long.push(relaxed);
                soft_units.push((s.pos(), *w));
            }
        }
        let mut pen_true = vec![0u64; num_vars + 1];
        let mut pen_false = vec![0u64; num_vars + 1];
        let mut base_cost = 0;
        for (l, w) in soft_units {
            let v = l.var().index();
            if l.is_positive() {
                pen_false[v] += w;
            } else {
                pen_true[v] += w;
            }
        }
        // A variable penalised either way always pays the smaller amount.
        for v in 1..=num_vars {
            let both = pen_true[v].min(pen_false[v]);
            base_cost += both;
            pen_true[v] -= both;
            pen_false[v] -= both;
        }
        let mut watches = vec![Vec::new(); 2 * (num_vars + 1)];
        for (i, c) in long.iter().enumerate() {
            watches[c[0].code()].push(i as u32);
            watches[c[1].code()].push(i as u32);
        }
        Search {
            num_vars,
            clauses: long,
            watches,
            units,
            pen_true,
            pen_false,
            value: vec![UNASSIGNED; num_vars + 1],
            trail: Vec::new(),
            qhead: 0,
            levels: Vec::new(),
            cost: base_cost,
            base_cost,
            next_hint: 1,
            stats: SolverStats::default(),
        }
    }

    fn lit_value(&self, l: Lit) -> i8 {
        let v = self.value[l.var().index()];
        if l.is_positive() {
            v
        } else {
            -v
        }
    }

    /// Assigns `l` true. Returns false if it is already false.
    fn enqueue(&mut self, l: Lit) -> bool {
        match self.lit_value(l) {
            1 => true,
            -1 => false,
            _ => {
                let v = l.var().index();
                self.value[v] = if l.is_positive() { 1 } else { -1 };
                self.cost += if l.is_positive() {
                    self.pen_true[v]
                } else {
                    self.pen_false[v]
                };
                self.trail.push(l);
                true
            }
        }
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let l = self.trail.pop().unwrap();
            let v = l.var().index();
            self.cost -= if l.is_positive() {
                self.pen_true[v]
            } else {
                self.pen_false[v]
            };
            self.value[v] = UNASSIGNED;
            if v < self.next_hint {
                self.next_hint = v;
            }
        }
        self.qhead = self.qhead.min(len);
    }

    /// Two-watched-literal unit propagation. Returns false on conflict.
    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.code()]);
            let mut keep = 0;
            let mut i = 0;
            let mut ok = true;
            while i < ws.len() {
                let ci = ws[i] as usize;
                i += 1;
                let clause = &mut self.clauses[ci];
                if clause[0] == false_lit {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                let first_val = {
                    let v = self.value[first.var().index()];
                    if first.is_positive() {
                        v
                    } else {
                        -v
                    }
                };
                if first_val == 1 {
                    ws[keep] = ci as u32;
                    keep += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..clause.len() {
                    let l = clause[k];
                    let v = self.value[l.var().index()];
                    let lv = if l.is_positive() { v } else { -v };
                    if lv != -1 {
                        clause.swap(1, k);
                        let new_watch = clause[1].code();
                        self.watches[new_watch].push(ci as u32);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[keep] = ci as u32;
                keep += 1;
                if first_val == -1 {
                    while i < ws.len() {
                        ws[keep] = ws[i];
                        keep += 1;
                        i += 1;
                    }
                    ok = false;
                } else {
                    self.stats.propagations += 1;
                    self.enqueue(first);
                }
            }
            ws.truncate(keep);
            self.watches[false_lit.code()] = ws;
            if !ok {
                self.stats.conflicts += 1;
                return false;
            }
        }
        true
    }

    fn next_unassigned(&mut self) -> Option<Var> {
        while self.next_hint <= self.num_vars {
            if self.value[self.next_hint] == UNASSIGNED {
                return Some(Var(self.next_hint as u32));
            }
            self.next_hint += 1;
        }
        None
    }

    /// Undoes decisions until one with an untried branch is found and takes
    /// that branch. Returns false once the search space is exhausted.
    fn backtrack(&mut self) -> bool {
        while let Some((start, var, flipped)) = self.levels.pop() {
            self.undo_to(start);
            if !flipped {
                self.levels.push((start, var, true));
                self.enqueue(var.neg());
                return true;
            }
        }
        false
    }
}

/// Solves `inst` exactly unless the budget runs out first, in which case the
/// best model found so far (if any) is returned with status
/// [`SolveStatus::SatisfiableBound`].
pub fn solve_builtin(inst: &MaxSatInstance, budget: Budget) -> SolveOutcome {
    solve_builtin_with_stats(inst, budget).0
}

pub(crate) fn solve_builtin_with_stats(inst: &MaxSatInstance, budget: Budget) -> (SolveOutcome, SolverStats) {
    let start = Instant::now();
    let deadline = budget.time.map(|d| start + d);
    let mut s = Search::new(inst);
    let mut best: Option<(u64, Vec<i8>)> = None;
    let mut trace = Vec::new();
    let mut interrupted = false;

    let units = std::mem::take(&mut s.units);
    let mut root_ok = units.iter().all(|&l| s.enqueue(l));
    if root_ok {
        root_ok = s.propagate();
    }

    if root_ok {
        let mut ticks: u64 = 0;
        loop {
            ticks += 1;
            if ticks.is_multiple_of(256) {
                if let Some(d) = deadline {
                    if Instant::now() >= d {
                        interrupted = true;
                        break;
                    }
                }
            }
            if budget.decisions.is_some_and(|cap| s.stats.decisions >= cap) {
                interrupted = true;
                break;
            }
            let ok = s.propagate();
            let pruned = ok && best.as_ref().is_some_and(|(b, _)| s.cost >= *b);
            if !ok || pruned {
                if !s.backtrack() {
                    break;
                }
                continue;
            }
            match s.next_unassigned() {
                Some(v) => {
                    s.stats.decisions += 1;
                    s.levels.push((s.trail.len(), v, false));
                    s.enqueue(v.pos());
                }
                None => {
                    trace.push(s.cost);
                    best = Some((s.cost, s.value.clone()));
                    if s.cost == s.base_cost || !s.backtrack() {
                        break;
                    }
                }
            }
        }
    }

    let elapsed = start.elapsed();
    let (status, model) = match (best, interrupted) {
        (Some((_, values)), int) => {
            let model = Model::new(values[1..=inst.num_vars].iter().map(|&v| v == 1).collect());
            let status = if int {
                SolveStatus::SatisfiableBound
            } else {
                SolveStatus::Optimal
            };
            (status, Some(model))
        }
        (None, true) => (SolveStatus::Unknown, None),
        (None, false) => (SolveStatus::HardUnsat, None),
    };
    let falsified_weight = model.as_ref().map(|m| inst.falsified_weight(m));
    (
        SolveOutcome {
            status,
            model,
            falsified_weight,
            elapsed,
            trace,
        },
        s.stats,
    )
}
