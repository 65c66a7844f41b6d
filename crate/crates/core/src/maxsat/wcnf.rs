//! Weighted DIMACS (WCNF). The writer produces the classic
//! `p wcnf <vars> <clauses> <top>` form; the reader also accepts the newer
//! header-less form where hard clauses start with `h`.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Clause, Lit, MaxSatInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("wcnf line {line}: {message}")]
pub struct WcnfError {
    pub line: usize,
    pub message: String,
}

/// Hard clauses first, then soft, each in construction order. Hard clauses
/// carry weight `top = 1 + Σ soft weights`.
pub fn emit_wcnf(inst: &MaxSatInstance) -> String {
    let top = inst.total_soft_weight() + 1;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "p wcnf {} {} {}",
        inst.num_vars,
        inst.hard.len() + inst.soft.len(),
        top
    );
    let mut line = |w: u64, c: &Clause| {
        let _ = write!(out, "{w}");
        for l in c.lits() {
            let _ = write!(out, " {l}");
        }
        out.push_str(" 0\n");
    };
    for c in &inst.hard {
        line(top, c);
    }
    for (c, w) in &inst.soft {
        line(*w, c);
    }
    out
}

fn lits_of<'a>(
    fields: impl Iterator<Item = &'a str>,
    line: usize,
    num_vars: &mut usize,
    fixed: bool,
) -> Result<Vec<Lit>, WcnfError> {
    let err = |message: String| WcnfError { line, message };
    let mut lits = Vec::new();
    let mut terminated = false;
    for f in fields {
        if terminated {
            return Err(err("literal after terminating 0".into()));
        }
        let x: i32 = f.parse().map_err(|_| err(format!("bad literal `{f}`")))?;
        if x == 0 {
            terminated = true;
            continue;
        }
        let v = x.unsigned_abs() as usize;
        if v > *num_vars {
            if fixed {
                return Err(err(format!("variable {v} exceeds declared count {num_vars}")));
            }
            *num_vars = v;
        }
        lits.push(Lit(x));
    }
    if !terminated {
        return Err(err("clause is missing its terminating 0".into()));
    }
    if lits.is_empty() {
        return Err(err("empty clause".into()));
    }
    Ok(lits)
}

/// Parses either WCNF dialect into an instance with an empty variable table.
/// Clauses that simplify to tautologies are dropped.
pub fn parse_wcnf(text: &str) -> Result<MaxSatInstance, WcnfError> {
    let mut header: Option<(usize, u64)> = None;
    let mut inst = MaxSatInstance::new(0);
    let mut declared_clauses = None;
    let mut seen_clause = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: &str| WcnfError {
            line,
            message: message.to_string(),
        };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let first = fields.next().unwrap();
        if first == "p" {
            if header.is_some() || seen_clause {
                return Err(err("unexpected header"));
            }
            let rest: Vec<&str> = fields.collect();
            let parse = |s: &str| s.parse::<u64>().map_err(|_| err("bad header number"));
            match rest.as_slice() {
                ["wcnf", v, c, top] => {
                    header = Some((parse(v)? as usize, parse(top)?));
                    declared_clauses = Some(parse(c)? as usize);
                }
                ["wcnf", v, c] => {
                    header = Some((parse(v)? as usize, u64::MAX));
                    declared_clauses = Some(parse(c)? as usize);
                }
                _ => return Err(err("expected `p wcnf <vars> <clauses> [top]`")),
            }
            inst.num_vars = header.unwrap().0;
            continue;
        }
        seen_clause = true;
        let fixed = header.is_some();
        if first == "h" {
            if fixed {
                return Err(err("`h` clause in a file with a `p` header"));
            }
            let lits = lits_of(fields, line, &mut inst.num_vars, false)?;
            inst.add_hard(lits);
            continue;
        }
        let w: u64 = first.parse().map_err(|_| err("bad clause weight"))?;
        if w == 0 {
            return Err(err("zero clause weight"));
        }
        let lits = lits_of(fields, line, &mut inst.num_vars, fixed)?;
        match header {
            Some((_, top)) if w >= top => inst.add_hard(lits),
            _ => inst.add_soft(lits, w),
        }
    }
    if let Some(n) = declared_clauses {
        let found = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('c') && !l.starts_with('p'))
            .count();
        if found != n {
            return Err(WcnfError {
                line: 0,
                message: format!("header declares {n} clauses, found {found}"),
            });
        }
    }
    Ok(inst)
}
