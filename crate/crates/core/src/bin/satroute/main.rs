//! `satroute`: map and route OpenQASM circuits onto a device graph.

mod stats;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use web_time::Instant;

use satroute::arch::{load_arch, load_noise, ConnectivityGraph};
use satroute::circuit::{emit_qasm, generate_qaoa_maxcut, parse_qasm, Circuit};
use satroute::driver::{self, Backend, BudgetSplit, DriverConfig, DriverError, Strategy};
use satroute::encoder::{encode, EncodeOptions, Weighting};
use satroute::maxsat::{emit_wcnf, parse_wcnf, solve_builtin, Budget, SolveStatus};
use satroute::routing::route_circuit;
use satroute::verifier::{verify, verify_solution};
use satroute::{QubitMap, RoutingStatus};
use stats::StatsRecord;

const EXIT_USAGE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_UNSAT: u8 = 3;
const EXIT_INVALID: u8 = 4;

/// Comment line carrying the initial map in emitted QASM.
const MAP_COMMENT: &str = "// initial-map ";

#[derive(Parser)]
#[command(name = "satroute", version, about = "Optimal qubit mapping and routing via MaxSAT")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Route a circuit and write the routed QASM.
    Map(MapArgs),
    /// Check a routed circuit against its source.
    Verify(VerifyArgs),
    /// Write the MaxSAT instance for a circuit as WCNF.
    EmitWcnf(EmitArgs),
    /// Generate a QAOA max-cut circuit on a random 3-regular graph.
    GenQaoa(QaoaArgs),
    /// Print a device graph as an edge list.
    Arch {
        /// Built-in name (tokyo, line:5, grid:2x3, ...) or edge-list file.
        name: String,
    },
    /// Solve a WCNF file with the built-in solver, printing s/o/v lines.
    SolveWcnf {
        file: PathBuf,
        /// Seconds before reporting the best model found.
        #[arg(long)]
        budget: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Global,
    Sliced,
    Cyclic,
}

#[derive(Clone, Copy, ValueEnum)]
enum SplitArg {
    Even,
    Sequential,
}

#[derive(Args)]
struct MapArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    arch: String,
    #[arg(long, value_enum, default_value = "global")]
    strategy: StrategyArg,
    /// Comma-separated slice sizes for the sliced strategy.
    #[arg(long, value_delimiter = ',', default_value = "10,25,50,100")]
    slice_size: Vec<usize>,
    /// SWAPs allowed before each two-qubit gate.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Total time budget in seconds.
    #[arg(long)]
    budget: Option<f64>,
    #[arg(long, value_enum, default_value = "even")]
    budget_split: SplitArg,
    /// Cap on solver decisions per MaxSAT call (reproducible budget).
    #[arg(long)]
    decisions: Option<u64>,
    /// `builtin`, or `cmd:<template>` with `{wcnf}` for the instance path.
    #[arg(long, default_value = "builtin")]
    solver: String,
    /// JSON noise file; switches to the fidelity-weighted objective.
    #[arg(long)]
    noise: Option<PathBuf>,
    #[arg(long, default_value_t = 1000.0)]
    weight_scale: f64,
    /// Two-qubit gates per block of a pre-unrolled cyclic circuit.
    #[arg(long)]
    cyclic_block_slots: Option<usize>,
    /// Solve the cyclic block in slices of this size first.
    #[arg(long)]
    cyclic_slice_size: Option<usize>,
    #[arg(long, default_value_t = 10)]
    max_backtracks: usize,
    /// Emit each SWAP as three CNOTs.
    #[arg(long)]
    decompose_swaps: bool,
    /// Routed QASM path (standard output if absent).
    #[arg(long)]
    output: Option<PathBuf>,
    /// JSON stats path.
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    source: PathBuf,
    #[arg(long)]
    routed: PathBuf,
    #[arg(long)]
    arch: String,
    /// Comma-separated physical qubit of each logical qubit. Defaults to the
    /// `// initial-map` comment written by `map`.
    #[arg(long, value_delimiter = ',')]
    initial_map: Option<Vec<usize>>,
}

#[derive(Args)]
struct EmitArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    arch: String,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long)]
    noise: Option<PathBuf>,
    #[arg(long, default_value_t = 1000.0)]
    weight_scale: f64,
    /// Require the final map to equal the initial one.
    #[arg(long)]
    cyclic: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct QaoaArgs {
    #[arg(long)]
    qubits: usize,
    #[arg(long, default_value_t = 1)]
    cycles: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Errors carrying their exit status.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: EXIT_USAGE,
            error: e.into(),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Map(a) => run_map(a),
        Command::Verify(a) => run_verify(a),
        Command::EmitWcnf(a) => run_emit(a).map_err(Failure::from),
        Command::GenQaoa(a) => run_qaoa(a).map_err(Failure::from),
        Command::Arch { name } => run_arch(&name).map_err(Failure::from),
        Command::SolveWcnf { file, budget } => run_solve_wcnf(&file, budget).map_err(Failure::from),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_circuit(path: &Path) -> Result<Circuit> {
    parse_qasm(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn weighting(noise: Option<&Path>, scale: f64, g: &ConnectivityGraph) -> Result<Option<Weighting>> {
    let Some(path) = noise else {
        return Ok(None);
    };
    if !(scale > 0.0 && scale.is_finite()) {
        bail!("weight scale must be positive");
    }
    let model = load_noise(path, g).with_context(|| format!("loading noise model {}", path.display()))?;
    Ok(Some(Weighting { noise: model, scale }))
}

fn driver_failure(e: DriverError) -> Failure {
    let code = match &e {
        DriverError::Unknown => EXIT_UNKNOWN,
        e if e.is_unsat() => EXIT_UNSAT,
        DriverError::AllFailed(all) if all.iter().any(|(_, e)| matches!(e, DriverError::Unknown)) => EXIT_UNKNOWN,
        _ => EXIT_USAGE,
    };
    Failure { code, error: e.into() }
}

fn run_map(a: MapArgs) -> Result<(), Failure> {
    let start = Instant::now();
    let source = read_circuit(&a.input)?;
    let g = load_arch(&a.arch)?;
    let weighted = weighting(a.noise.as_deref(), a.weight_scale, &g)?;
    let backend = match a.solver.as_str() {
        "builtin" => Backend::Builtin,
        s => match s.strip_prefix("cmd:") {
            Some(cmd) => Backend::External(cmd.to_string()),
            None => return Err(anyhow::anyhow!("--solver must be `builtin` or `cmd:<template>`").into()),
        },
    };
    let budget = match a.budget {
        Some(s) if !(s.is_finite() && s >= 0.0) => return Err(anyhow::anyhow!("--budget must be non-negative").into()),
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let strategy = match a.strategy {
        StrategyArg::Global => Strategy::Global,
        StrategyArg::Sliced => Strategy::Sliced,
        StrategyArg::Cyclic => Strategy::Cyclic,
    };
    let cfg = DriverConfig {
        strategy,
        slice_sizes: a.slice_size.clone(),
        n: a.n,
        budget,
        decisions: a.decisions,
        backend: backend.clone(),
        max_backtracks_per_slice: a.max_backtracks,
        weighted: weighted.clone(),
        budget_split: match a.budget_split {
            SplitArg::Even => BudgetSplit::Even,
            SplitArg::Sequential => BudgetSplit::Sequential,
        },
        cyclic_block_slots: a.cyclic_block_slots,
        cyclic_slice_size: a.cyclic_slice_size,
        ..Default::default()
    };

    let mut record = StatsRecord {
        input: a.input.display().to_string(),
        arch: a.arch.clone(),
        strategy: format!("{:?}", strategy).to_lowercase(),
        slice_sizes: if strategy == Strategy::Sliced {
            a.slice_size.clone()
        } else {
            Vec::new()
        },
        n: a.n,
        backend: match &backend {
            Backend::Builtin => "builtin".into(),
            Backend::External(cmd) => cmd.clone(),
        },
        swap_count: 0,
        gates_added: 0,
        slice_solve_ms: Vec::new(),
        backtracks: 0,
        deep_backtracks: 0,
        status: RoutingStatus::BestEffort,
        elapsed_ms: 0.0,
        instance: None,
        objective: None,
        initial_map: QubitMap::identity(0),
        selected: None,
        runs: Vec::new(),
        notes: Vec::new(),
    };
    let sol = if strategy == Strategy::Sliced {
        let (sol, report) = driver::solve_best(&source, &g, &cfg).map_err(driver_failure)?;
        record.selected = Some(report.selected);
        record.runs = report.runs;
        sol
    } else {
        driver::solve(&source, &g, &cfg).map_err(driver_failure)?
    };
    record.fill(&sol, weighted.is_some());

    // Nothing is written unless the result replays cleanly.
    let routed = route_circuit(&source, &sol, g.num_physical());
    let checked = verify_solution(&source, &sol, &g).and_then(|()| verify(&source, &routed, &sol.initial_map, &g));
    if let Err(v) = checked {
        return Err(Failure {
            code: EXIT_INVALID,
            error: anyhow::anyhow!("routed circuit failed verification: {v}"),
        });
    }
    let map_text: Vec<String> = sol.initial_map.as_slice().iter().map(|p| p.to_string()).collect();
    let qasm = format!(
        "{MAP_COMMENT}{}\n{}",
        map_text.join(","),
        emit_qasm(&routed, a.decompose_swaps)
    );
    record.elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    let stats_json = serde_json::to_string_pretty(&record).map_err(anyhow::Error::from)? + "\n";
    write_or_print(a.output.as_deref(), &qasm)?;
    if let Some(p) = &a.stats {
        fs::write(p, stats_json).with_context(|| format!("writing {}", p.display()))?;
    }
    eprintln!(
        "{} swap(s), {} gate(s) added, {}",
        sol.swap_count,
        sol.gates_added,
        match sol.status {
            RoutingStatus::Optimal => "optimal",
            RoutingStatus::BestEffort => "best effort",
        }
    );
    Ok(())
}

fn run_verify(a: VerifyArgs) -> Result<(), Failure> {
    let source = read_circuit(&a.source)?;
    let routed_text = read(&a.routed)?;
    let routed = parse_qasm(&routed_text).with_context(|| format!("parsing {}", a.routed.display()))?;
    let g = load_arch(&a.arch)?;
    let initial = match a.initial_map {
        Some(m) => m,
        None => {
            let line = routed_text
                .lines()
                .find_map(|l| l.trim().strip_prefix(MAP_COMMENT.trim_end()))
                .context("no --initial-map given and no `// initial-map` comment in the routed file")?;
            line.split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .context("malformed `// initial-map` comment")?
        }
    };
    match verify(&source, &routed, &QubitMap::from_raw(initial), &g) {
        Ok(()) => {
            println!("ok");
            Ok(())
        }
        Err(v) => {
            println!("violation: {v}");
            Err(Failure {
                code: EXIT_INVALID,
                error: anyhow::anyhow!("{}", v.kind),
            })
        }
    }
}

fn run_emit(a: EmitArgs) -> Result<()> {
    let c = read_circuit(&a.input)?;
    let g = load_arch(&a.arch)?;
    let opt = EncodeOptions {
        n: a.n,
        weighted: weighting(a.noise.as_deref(), a.weight_scale, &g)?,
        cyclic: a.cyclic,
        ..Default::default()
    };
    let inst = encode(&c, &g, &opt)?;
    let s = inst.stats();
    eprintln!("{} vars, {} hard, {} soft", s.vars, s.hard_count, s.soft_count);
    write_or_print(a.output.as_deref(), &emit_wcnf(&inst))
}

fn run_qaoa(a: QaoaArgs) -> Result<()> {
    let c = generate_qaoa_maxcut(a.qubits, a.cycles, a.seed)?;
    write_or_print(a.output.as_deref(), &emit_qasm(&c, false))
}

fn run_arch(name: &str) -> Result<()> {
    let g = load_arch(name)?;
    let mut out = format!(
        "# {name}: {} qubits, {} edges, diameter {}\nn {}\n",
        g.num_physical(),
        g.edges().len(),
        g.diameter(),
        g.num_physical()
    );
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    print!("{out}");
    Ok(())
}

fn run_solve_wcnf(file: &Path, budget: Option<f64>) -> Result<()> {
    let inst = parse_wcnf(&read(file)?)?;
    let budget = match budget {
        Some(s) => Budget::time(Duration::from_secs_f64(s.max(0.0))),
        None => Budget::unlimited(),
    };
    let out = solve_builtin(&inst, budget);
    for w in &out.trace {
        println!("o {w}");
    }
    let status = match out.status {
        SolveStatus::Optimal => "OPTIMUM FOUND",
        SolveStatus::SatisfiableBound => "SATISFIABLE",
        SolveStatus::HardUnsat => "UNSATISFIABLE",
        SolveStatus::Unknown => "UNKNOWN",
    };
    println!("s {status}");
    if let Some(m) = &out.model {
        let bits: String = (1..=inst.num_vars)
            .map(|v| {
                if m.value(satroute::maxsat::Var(v as u32)) {
                    '1'
                } else {
                    '0'
                }
            })
            .collect();
        println!("v {bits}");
    }
    Ok(())
}
