use serde::Serialize;

use satroute::driver::SizeRun;
use satroute::maxsat::InstanceStats;
use satroute::{QubitMap, RoutingSolution, RoutingStatus};

/// One JSON document per `map` run.
#[derive(Debug, Serialize)]
pub struct StatsRecord {
    pub input: String,
    pub arch: String,
    pub strategy: String,
    pub slice_sizes: Vec<usize>,
    pub n: usize,
    pub backend: String,
    pub swap_count: usize,
    pub gates_added: usize,
    pub slice_solve_ms: Vec<f64>,
    pub backtracks: usize,
    pub deep_backtracks: usize,
    pub status: RoutingStatus,
    pub elapsed_ms: f64,
    pub instance: Option<InstanceStats>,
    /// Weighted objective (sum of falsified soft weights), weighted mode only.
    pub objective: Option<u64>,
    pub initial_map: QubitMap,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selected: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub runs: Vec<SizeRun>,
    pub notes: Vec<String>,
}

impl StatsRecord {
    pub fn fill(&mut self, sol: &RoutingSolution, weighted: bool) {
        self.swap_count = sol.swap_count;
        self.gates_added = sol.gates_added;
        self.slice_solve_ms = sol.stats.slice_solve_ms.clone();
        self.backtracks = sol.stats.backtracks;
        self.deep_backtracks = sol.stats.deep_backtracks;
        self.status = sol.status;
        self.instance = sol.stats.instance;
        self.objective = if weighted { sol.stats.objective } else { None };
        self.initial_map = sol.initial_map.clone();
        self.notes = sol.stats.notes.clone();
    }
}
