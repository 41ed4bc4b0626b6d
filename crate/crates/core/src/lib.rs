//! Statevector simulation and QAOA training for combinatorial problems
//! encoded as (higher-order) Ising Hamiltonians.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix the scalar to `f64`, which is what the tolerances in the
//! test suites assume.

pub mod error;
pub mod gradients;
pub mod grover;
pub mod hamiltonian;
pub mod optimizers;
pub mod problems;
pub mod qaoa;
pub mod scalar;
pub mod sim;
pub mod spectral;

pub use error::{Error, Result};
pub use gradients::{GradientMethod, GradientReport};
pub use grover::FeasibleSet;
pub use hamiltonian::{BinaryPolynomial, IsingModel, Pauli, PauliString};
pub use optimizers::{OptimizerConfig, OptimizerMethod, Trajectory};
pub use problems::{maxcut_ising, Graph};
pub use qaoa::{CostOptions, MixerKind, MixerSpec, QaoaParams, QaoaProblem, Schedule};
pub use scalar::Real;
pub use sim::{Gate1Q, GateKind, ShotCounts, Statevector};
pub use spectral::{DenseHamiltonian, GapSchedule};

pub type Statevector64 = Statevector<f64>;
pub type Statevector32 = Statevector<f32>;
pub type IsingModel64 = IsingModel<f64>;
pub type BinaryPolynomial64 = BinaryPolynomial<f64>;
pub type QaoaParams64 = QaoaParams<f64>;
pub type QaoaProblem64 = QaoaProblem<f64>;
pub type MixerSpec64 = MixerSpec<f64>;
pub type OptimizerConfig64 = OptimizerConfig<f64>;
