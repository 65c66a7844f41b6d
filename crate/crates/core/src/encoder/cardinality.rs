use crate::maxsat::{Lit, MaxSatInstance, Var, VarTag};

/// How at-most-one constraints are written.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum AmoEncoding {
    /// One binary clause per pair: quadratic, no helper variables.
    #[default]
    Pairwise,
    /// Chen's two-product encoding: about `2n + 4√n` clauses and `2√n`
    /// helpers, applied recursively.
    Product,
}

pub(crate) fn at_least_one(inst: &mut MaxSatInstance, vars: &[Var]) {
    inst.add_hard(vars.iter().map(|v| v.pos()));
}

pub(crate) fn at_most_one(inst: &mut MaxSatInstance, vars: &[Var], enc: AmoEncoding) {
    match enc {
        AmoEncoding::Pairwise => pairwise(inst, vars),
        AmoEncoding::Product => product(inst, vars),
    }
}

pub(crate) fn exactly_one(inst: &mut MaxSatInstance, vars: &[Var], enc: AmoEncoding) {
    at_least_one(inst, vars);
    at_most_one(inst, vars, enc);
}

fn pairwise(inst: &mut MaxSatInstance, vars: &[Var]) {
    for (i, a) in vars.iter().enumerate() {
        for b in &vars[i + 1..] {
            inst.add_hard([a.neg(), b.neg()]);
        }
    }
}

fn fresh(inst: &mut MaxSatInstance) -> Var {
    let v = inst.new_var();
    let t = inst.var_table.push(VarTag::Aux);
    debug_assert_eq!(v, t);
    v
}

fn product(inst: &mut MaxSatInstance, vars: &[Var]) {
    if vars.len() <= 5 {
        pairwise(inst, vars);
        return;
    }
    let rows = (vars.len() as f64).sqrt().ceil() as usize;
    let cols = vars.len().div_ceil(rows);
    let row_vars: Vec<Var> = (0..rows).map(|_| fresh(inst)).collect();
    let col_vars: Vec<Var> = (0..cols).map(|_| fresh(inst)).collect();
    for (j, x) in vars.iter().enumerate() {
        let neg: Lit = x.neg();
        inst.add_hard([neg, row_vars[j / cols].pos()]);
        inst.add_hard([neg, col_vars[j % cols].pos()]);
    }
    product(inst, &row_vars);
    product(inst, &col_vars);
}
