//! Problem instances: graphs, MaxCut encoding and the exhaustive oracle.

mod brute;
mod graph;
mod maxcut;

pub use brute::{brute_force, BruteForceResult};
pub use graph::{erdos_renyi, Graph};
pub use maxcut::maxcut_ising;
