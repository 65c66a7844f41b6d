use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ArchError, ConnectivityGraph};

/// One record of a noise file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseRecord {
    pub edge: [usize; 2],
    pub cx: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub swap: Option<f64>,
}

/// Two-qubit gate and SWAP fidelities for every edge of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseModel {
    fidelities: BTreeMap<(usize, usize), (f64, f64)>,
}

fn canon(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

fn check_fidelity(f: f64, what: &str, u: usize, v: usize) -> Result<f64, ArchError> {
    if f > 0.0 && f <= 1.0 {
        Ok(f)
    } else {
        Err(ArchError::Noise(format!(
            "{what} fidelity {f} on edge ({u}, {v}) is outside (0, 1]"
        )))
    }
}

impl NoiseModel {
    /// Builds a model covering every edge of `g`. A missing SWAP fidelity
    /// defaults to the cube of the CX fidelity.
    pub fn from_records(records: &[NoiseRecord], g: &ConnectivityGraph) -> Result<Self, ArchError> {
        let mut fidelities = BTreeMap::new();
        for r in records {
            let [u, v] = r.edge;
            if !g.contains(u, v) {
                return Err(ArchError::Noise(format!("edge ({u}, {v}) is not in the graph")));
            }
            let cx = check_fidelity(r.cx, "cx", u, v)?;
            let swap = match r.swap {
                Some(s) => check_fidelity(s, "swap", u, v)?,
                None => cx.powi(3),
            };
            if fidelities.insert(canon(u, v), (cx, swap)).is_some() {
                return Err(ArchError::Noise(format!("edge ({u}, {v}) listed twice")));
            }
        }
        if let Some(&(u, v)) = g.edges().iter().find(|e| !fidelities.contains_key(e)) {
            return Err(ArchError::Noise(format!("edge ({u}, {v}) has no fidelity")));
        }
        Ok(NoiseModel { fidelities })
    }

    /// Every edge gets the same CX fidelity.
    pub fn uniform(g: &ConnectivityGraph, cx: f64) -> Result<Self, ArchError> {
        let records: Vec<NoiseRecord> = g
            .edges()
            .iter()
            .map(|&(u, v)| NoiseRecord {
                edge: [u, v],
                cx,
                swap: None,
            })
            .collect();
        NoiseModel::from_records(&records, g)
    }

    pub fn cx_fidelity(&self, u: usize, v: usize) -> Option<f64> {
        self.fidelities.get(&canon(u, v)).map(|f| f.0)
    }

    pub fn swap_fidelity(&self, u: usize, v: usize) -> Option<f64> {
        self.fidelities.get(&canon(u, v)).map(|f| f.1)
    }

    /// True when every edge of `g` has an entry.
    pub fn covers(&self, g: &ConnectivityGraph) -> bool {
        g.edges().iter().all(|e| self.fidelities.contains_key(e))
    }

    pub fn records(&self) -> Vec<NoiseRecord> {
        self.fidelities
            .iter()
            .map(|(&(u, v), &(cx, swap))| NoiseRecord {
                edge: [u, v],
                cx,
                swap: Some(swap),
            })
            .collect()
    }
}

/// Parses a JSON array of `{"edge": [u, v], "cx": f, "swap": f}` records.
pub fn parse_noise(text: &str, g: &ConnectivityGraph) -> Result<NoiseModel, ArchError> {
    let records: Vec<NoiseRecord> = serde_json::from_str(text).map_err(|e| ArchError::Noise(e.to_string()))?;
    NoiseModel::from_records(&records, g)
}

pub fn load_noise(path: impl AsRef<Path>, g: &ConnectivityGraph) -> Result<NoiseModel, ArchError> {
    parse_noise(&std::fs::read_to_string(path)?, g)
}
