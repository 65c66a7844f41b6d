//! Device connectivity graphs and per-edge noise data.

mod builtin;
mod noise;

pub use builtin::{load_arch, parse_edge_list, TOKYO, TOKYO_MINUS, TOKYO_PLUS};
pub use noise::{load_noise, parse_noise, NoiseModel, NoiseRecord};

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ArchError {
    #[error("unknown architecture `{0}`")]
    UnknownName(String),
    #[error("bad architecture parameter in `{0}`")]
    BadParameter(String),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("self-loop on physical qubit {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) references a qubit outside 0..{2}")]
    OutOfRange(usize, usize, usize),
    #[error("connectivity graph is disconnected")]
    Disconnected,
    #[error("noise file: {0}")]
    Noise(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Undirected connectivity graph over physical qubits `0..num_physical`.
/// Edges are stored as `(min, max)` in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityGraph {
    num_physical: usize,
    edges: Vec<(usize, usize)>,
    adjacent: Vec<bool>,
}

impl ConnectivityGraph {
    pub fn new(num_physical: usize, edges: &[(usize, usize)]) -> Result<Self, ArchError> {
        let mut adjacent = vec![false; num_physical * num_physical];
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= num_physical || v >= num_physical {
                return Err(ArchError::OutOfRange(u, v, num_physical));
            }
            if u == v {
                return Err(ArchError::SelfLoop(u));
            }
            let (a, b) = (u.min(v), u.max(v));
            if adjacent[a * num_physical + b] {
                return Err(ArchError::DuplicateEdge(a, b));
            }
            adjacent[a * num_physical + b] = true;
            adjacent[b * num_physical + a] = true;
            canon.push((a, b));
        }
        canon.sort_unstable();
        let g = ConnectivityGraph {
            num_physical,
            edges: canon,
            adjacent,
        };
        if num_physical > 1 && g.distances_from(0).iter().any(Option::is_none) {
            return Err(ArchError::Disconnected);
        }
        Ok(g)
    }

    pub fn num_physical(&self) -> usize {
        self.num_physical
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        u < self.num_physical && v < self.num_physical && self.adjacent[u * self.num_physical + v]
    }

    pub fn neighbors(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_physical).filter(move |&r| self.contains(p, r))
    }

    pub fn degree(&self, p: usize) -> usize {
        self.neighbors(p).count()
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.num_physical];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Longest shortest path over all vertex pairs.
    pub fn diameter(&self) -> usize {
        (0..self.num_physical)
            .flat_map(|s| self.distances_from(s))
            .map(|d| d.expect("graph is connected"))
            .max()
            .unwrap_or(0)
    }

    pub fn average_degree(&self) -> f64 {
        if self.num_physical == 0 {
            return 0.0;
        }
        2.0 * self.edges.len() as f64 / self.num_physical as f64
    }
}
