//! A reader and writer for the subset of OpenQASM 2.0 found in routing
//! benchmarks: register declarations, `cx`, `swap` and named one-qubit gates.

use std::fmt::Write as _;

use log::warn;
use thiserror::Error;

use super::{Circuit, Gate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct QasmError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn err(self, message: impl Into<String>) -> QasmError {
        QasmError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

/// Statement text with comments removed, plus the position of each char.
struct Statement {
    chars: Vec<(char, Pos)>,
    end: Pos,
}

fn split_statements(text: &str) -> Result<Vec<Statement>, QasmError> {
    let mut out = Vec::new();
    let mut cur: Vec<(char, Pos)> = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    let mut in_comment = false;
    let mut in_string = false;
    while let Some(c) = chars.next() {
        let pos = Pos { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
            in_comment = false;
        } else {
            column += 1;
        }
        if in_comment {
            continue;
        }
        if !in_string && c == '/' && chars.peek() == Some(&'/') {
            in_comment = true;
            continue;
        }
        if c == '"' {
            in_string = !in_string;
        }
        if c == ';' && !in_string {
            out.push(Statement {
                chars: std::mem::take(&mut cur),
                end: pos,
            });
            continue;
        }
        cur.push((c, pos));
    }
    if let Some(&(_, pos)) = cur.iter().find(|(c, _)| !c.is_whitespace()) {
        return Err(pos.err("statement is missing its terminating ';'"));
    }
    Ok(out)
}

struct Cursor<'a> {
    chars: &'a [(char, Pos)],
    at: usize,
    end: Pos,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.at < self.chars.len() && self.chars[self.at].0.is_whitespace() {
            self.at += 1;
        }
    }

    fn pos(&mut self) -> Pos {
        self.skip_ws();
        self.chars.get(self.at).map_or(self.end, |c| c.1)
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).map(|c| c.0)
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: char) -> Result<(), QasmError> {
        let pos = self.pos();
        if self.eat(want) {
            Ok(())
        } else {
            Err(pos.err(format!("expected '{want}'")))
        }
    }

    fn ident(&mut self) -> Result<String, QasmError> {
        let pos = self.pos();
        let start = self.at;
        while let Some(&(c, _)) = self.chars.get(self.at) {
            let ok = if self.at == start {
                c.is_ascii_alphabetic() || c == '_'
            } else {
                c.is_ascii_alphanumeric() || c == '_'
            };
            if !ok {
                break;
            }
            self.at += 1;
        }
        if self.at == start {
            return Err(pos.err("expected an identifier"));
        }
        Ok(self.chars[start..self.at].iter().map(|c| c.0).collect())
    }

    fn uint(&mut self) -> Result<usize, QasmError> {
        let pos = self.pos();
        let start = self.at;
        while self.chars.get(self.at).is_some_and(|c| c.0.is_ascii_digit()) {
            self.at += 1;
        }
        let s: String = self.chars[start..self.at].iter().map(|c| c.0).collect();
        s.parse().map_err(|_| pos.err("expected an unsigned integer"))
    }

    /// Comma-separated parameter expressions up to the matching ')'.
    fn params(&mut self) -> Result<Vec<String>, QasmError> {
        let open = self.pos();
        let mut depth = 0usize;
        let mut current = String::new();
        let mut out = Vec::new();
        loop {
            let Some(&(c, _)) = self.chars.get(self.at) else {
                return Err(open.err("unclosed parameter list"));
            };
            self.at += 1;
            match c {
                '(' => {
                    depth += 1;
                    current.push(c);
                }
                ')' if depth == 0 => {
                    let p: String = current.split_whitespace().collect();
                    if !p.is_empty() || !out.is_empty() {
                        out.push(p);
                    }
                    break;
                }
                ')' => {
                    depth -= 1;
                    current.push(c);
                }
                ',' if depth == 0 => {
                    out.push(current.split_whitespace().collect());
                    current.clear();
                }
                _ => current.push(c),
            }
        }
        if out.iter().any(String::is_empty) {
            return Err(open.err("empty gate parameter"));
        }
        Ok(out)
    }

    fn rest(&self) -> String {
        self.chars[self.at..].iter().map(|c| c.0).collect()
    }
}

struct Register {
    name: String,
    offset: usize,
    size: usize,
}

fn operand(cur: &mut Cursor, regs: &[Register]) -> Result<usize, QasmError> {
    let pos = cur.pos();
    let name = cur.ident()?;
    let reg = regs
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| pos.err(format!("unknown quantum register `{name}`")))?;
    if !cur.eat('[') {
        return Err(pos.err(format!(
            "whole-register operand `{name}` is not supported; index a single qubit"
        )));
    }
    let ipos = cur.pos();
    let idx = cur.uint()?;
    cur.expect(']')?;
    if idx >= reg.size {
        return Err(ipos.err(format!("qubit index {idx} out of range for `{name}[{}]`", reg.size)));
    }
    Ok(reg.offset + idx)
}

/// Parses OpenQASM 2.0 text. Quantum registers are flattened in declaration
/// order. `barrier`, `measure` and `creg` statements are dropped.
pub fn parse_qasm(text: &str) -> Result<Circuit, QasmError> {
    let mut regs: Vec<Register> = Vec::new();
    let mut num_logical = 0;
    let mut gates = Vec::new();
    let mut dropped = 0usize;

    for st in split_statements(text)? {
        let mut cur = Cursor {
            chars: &st.chars,
            at: 0,
            end: st.end,
        };
        if cur.at_end() {
            continue;
        }
        let head_pos = cur.pos();
        let head = cur.ident()?;
        match head.as_str() {
            "OPENQASM" => {
                let version = cur.rest();
                if !version.trim().starts_with('2') {
                    return Err(head_pos.err(format!("unsupported OpenQASM version `{}`", version.trim())));
                }
            }
            "include" => {}
            "qreg" => {
                let name = cur.ident()?;
                cur.expect('[')?;
                let size = cur.uint()?;
                cur.expect(']')?;
                if regs.iter().any(|r| r.name == name) {
                    return Err(head_pos.err(format!("register `{name}` declared twice")));
                }
                regs.push(Register {
                    name,
                    offset: num_logical,
                    size,
                });
                num_logical += size;
            }
            "creg" | "barrier" | "measure" => dropped += 1,
            "gate" | "opaque" | "if" | "reset" => {
                return Err(head_pos.err(format!("`{head}` statements are not supported")));
            }
            _ => {
                let params = if cur.eat('(') { cur.params()? } else { Vec::new() };
                let mut operands = vec![operand(&mut cur, &regs)?];
                while cur.eat(',') {
                    operands.push(operand(&mut cur, &regs)?);
                }
                if !cur.at_end() {
                    let pos = cur.pos();
                    return Err(pos.err(format!("unexpected `{}`", cur.rest().trim())));
                }
                match operands.as_slice() {
                    [_] => {}
                    [a, b] if a == b => {
                        return Err(head_pos.err(format!("gate `{head}` has duplicate operands (qubit {a})")));
                    }
                    [_, _] => {}
                    _ => {
                        return Err(head_pos.err(format!(
                            "gate `{head}` has {} operands; at most 2 are supported",
                            operands.len()
                        )));
                    }
                }
                gates.push(Gate::new(head, params, operands));
            }
        }
    }
    if dropped > 0 {
        warn!("dropped {dropped} creg/barrier/measure statement(s)");
    }
    Ok(Circuit::new(num_logical, gates).expect("parser validated every gate"))
}

/// Writes `c` as OpenQASM 2.0 over a single register `q`. With
/// `decompose_swaps`, each `swap a,b` becomes three `cx` gates.
pub fn emit_qasm(c: &Circuit, decompose_swaps: bool) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", c.num_logical());
    for g in c.gates() {
        if decompose_swaps && g.name == "swap" && g.params.is_empty() {
            if let Some((a, b)) = g.pair() {
                let _ = writeln!(out, "cx q[{a}],q[{b}];");
                let _ = writeln!(out, "cx q[{b}],q[{a}];");
                let _ = writeln!(out, "cx q[{a}],q[{b}];");
                continue;
            }
        }
        out.push_str(&g.name);
        if !g.params.is_empty() {
            let _ = write!(out, "({})", g.params.join(","));
        }
        let ops: Vec<String> = g.operands.iter().map(|q| format!("q[{q}]")).collect();
        let _ = writeln!(out, " {};", ops.join(","));
    }
    out
}
