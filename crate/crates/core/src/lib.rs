//! Optimal qubit mapping and routing by reduction to weighted MaxSAT.
//!
//! A circuit's two-qubit gates must act on physically connected qubits.
//! [`encoder`] turns that requirement, plus the cost of inserted SWAPs,
//! into a MaxSAT instance; [`maxsat`] solves it (built in, or through an
//! external solver); [`driver`] chooses between whole-circuit, sliced and
//! cyclic solving; [`verifier`] replays the result independently.

pub mod arch;
pub mod circuit;
pub mod driver;
pub mod encoder;
pub mod maxsat;
pub mod routing;
pub mod verifier;

pub use arch::{load_arch, ConnectivityGraph, NoiseModel};
pub use circuit::{parse_qasm, Circuit, Gate};
pub use routing::{QubitMap, RoutingSolution, RoutingStatus};
