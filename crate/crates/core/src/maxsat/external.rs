//! Running a MaxSAT-evaluation style solver as a child process.

use std::io::Read;
use std::process::{Command, Stdio};
use std::sync::{mpsc, Arc, Mutex};
use std::time::Duration;

use log::debug;
use thiserror::Error;
use wait_timeout::ChildExt;
use web_time::Instant;

use super::{emit_wcnf, Budget, MaxSatInstance, Model, SolveOutcome, SolveStatus};

/// Placeholder in the command template replaced by the WCNF file path.
pub const WCNF_PLACEHOLDER: &str = "{wcnf}";

#[derive(Debug, Error)]
pub enum ExternalError {
    #[error("solver command template is empty")]
    EmptyCommand,
    #[error("solver command template has no {WCNF_PLACEHOLDER} placeholder")]
    NoPlaceholder,
    #[error("could not run solver: {0}")]
    Io(#[from] std::io::Error),
    #[error("solver failed ({status}) without reporting a result")]
    ProcessFailure { status: String },
    #[error("unparseable solver output: {0}")]
    Unparseable(String),
    #[error("solver returned a model violating hard clause #{0}")]
    Integrity(usize),
}

/// What a solver printed: its `s` status word(s), last `o` value and model.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolverOutput {
    pub status: Option<String>,
    pub cost: Option<u64>,
    pub model: Option<Model>,
}

/// Reads `s`, `o` and `v` lines. `v` lines may list signed literals
/// (possibly over several lines) or a single 0/1 string of length
/// `num_vars`. Unlisted variables default to false.
pub fn parse_solver_output(text: &str, num_vars: usize) -> Result<SolverOutput, ExternalError> {
    let mut out = SolverOutput::default();
    let mut values: Option<Vec<bool>> = None;
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            out.status = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("o ") {
            out.cost = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| ExternalError::Unparseable(line.to_string()))?,
            );
        } else if let Some(rest) = line.strip_prefix("v ").or(if line == "v" { Some("") } else { None }) {
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            let vals = values.get_or_insert_with(|| vec![false; num_vars]);
            let bitstring =
                tokens.len() == 1 && tokens[0].len() == num_vars && tokens[0].chars().all(|c| c == '0' || c == '1');
            if bitstring {
                for (i, c) in tokens[0].chars().enumerate() {
                    vals[i] = c == '1';
                }
                continue;
            }
            for t in tokens {
                let x: i64 = t.parse().map_err(|_| ExternalError::Unparseable(line.to_string()))?;
                if x == 0 {
                    continue;
                }
                let v = x.unsigned_abs() as usize;
                if v > num_vars {
                    return Err(ExternalError::Unparseable(format!(
                        "model mentions variable {v} > {num_vars}"
                    )));
                }
                vals[v - 1] = x > 0;
            }
        }
    }
    out.model = values.map(Model::new);
    Ok(out)
}

fn outcome_from(
    inst: &MaxSatInstance,
    parsed: SolverOutput,
    timed_out: bool,
    elapsed: Duration,
) -> Result<SolveOutcome, ExternalError> {
    if let Some(m) = &parsed.model {
        if let Some(i) = inst.violated_hard(m) {
            return Err(ExternalError::Integrity(i));
        }
    }
    let status = match (parsed.status.as_deref(), parsed.model.is_some()) {
        (Some("UNSATISFIABLE"), _) => SolveStatus::HardUnsat,
        (Some("OPTIMUM FOUND"), true) if !timed_out => SolveStatus::Optimal,
        (Some("OPTIMUM FOUND"), false) => {
            return Err(ExternalError::Unparseable("OPTIMUM FOUND without a model".into()))
        }
        (_, true) => SolveStatus::SatisfiableBound,
        (_, false) => SolveStatus::Unknown,
    };
    let falsified_weight = parsed.model.as_ref().map(|m| inst.falsified_weight(m));
    let trace = falsified_weight.into_iter().collect();
    Ok(SolveOutcome {
        status,
        model: if status == SolveStatus::HardUnsat {
            None
        } else {
            parsed.model
        },
        falsified_weight: if status == SolveStatus::HardUnsat {
            None
        } else {
            falsified_weight
        },
        elapsed,
        trace,
    })
}

/// Writes `inst` to a temporary WCNF file, runs `solver_cmd` (whitespace
/// separated, with `{wcnf}` standing for the file path) and maps its output
/// to an outcome. A run cut off by the time budget still yields its last
/// reported model.
pub fn solve_external(inst: &MaxSatInstance, solver_cmd: &str, budget: Budget) -> Result<SolveOutcome, ExternalError> {
    if !solver_cmd.contains(WCNF_PLACEHOLDER) {
        return Err(ExternalError::NoPlaceholder);
    }
    let mut file = tempfile::Builder::new().suffix(".wcnf").tempfile()?;
    std::io::Write::write_all(&mut file, emit_wcnf(inst).as_bytes())?;
    let path = file.path().to_string_lossy().into_owned();
    let mut parts = solver_cmd
        .split_whitespace()
        .map(|p| p.replace(WCNF_PLACEHOLDER, &path));
    let program = parts.next().ok_or(ExternalError::EmptyCommand)?;
    debug!("running external solver: {solver_cmd}");

    let start = Instant::now();
    let mut child = Command::new(program)
        .args(parts)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()?;
    let mut stdout = child.stdout.take().expect("stdout is piped");
    // Output is collected incrementally: after a kill, helper processes the
    // solver spawned may keep the pipe open, so the reader is not joined.
    let collected = Arc::new(Mutex::new(Vec::<u8>::new()));
    let (done_tx, done_rx) = mpsc::channel();
    {
        let collected = Arc::clone(&collected);
        std::thread::spawn(move || {
            let mut chunk = [0u8; 8192];
            while let Ok(k) = stdout.read(&mut chunk) {
                if k == 0 {
                    break;
                }
                collected
                    .lock()
                    .unwrap_or_else(|e| e.into_inner())
                    .extend_from_slice(&chunk[..k]);
            }
            let _ = done_tx.send(());
        });
    }
    let (exit, timed_out) = match budget.time {
        Some(limit) => match child.wait_timeout(limit)? {
            Some(status) => (Some(status), false),
            None => {
                // SIGKILL; anytime solvers that flush per improvement still
                // leave their last model on stdout.
                let _ = child.kill();
                let _ = child.wait();
                (None, true)
            }
        },
        None => (Some(child.wait()?), false),
    };
    let grace = if timed_out {
        Duration::from_millis(250)
    } else {
        Duration::from_secs(5)
    };
    let _ = done_rx.recv_timeout(grace);
    let bytes = collected.lock().unwrap_or_else(|e| e.into_inner()).clone();
    let text = String::from_utf8_lossy(&bytes).into_owned();
    let elapsed = start.elapsed();
    let parsed = parse_solver_output(&text, inst.num_vars)?;
    if parsed.status.is_none() && parsed.model.is_none() && !timed_out {
        let status = exit.map(|s| s.to_string()).unwrap_or_default();
        if exit.is_some_and(|s| !s.success()) {
            return Err(ExternalError::ProcessFailure { status });
        }
        return Err(ExternalError::Unparseable("no status or model lines".into()));
    }
    outcome_from(inst, parsed, timed_out, elapsed)
}
