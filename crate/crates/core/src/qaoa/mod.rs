//! Layered QAOA: parameters, linear-ramp schedules, cost and mixer unitaries
//! and the full evolution.
//!
//! One layer applies `exp(-iγ_k H_C)` and then `exp(-iβ_k H_M)` with the
//! transverse-field mixer `H_M = -Γ Σ X_i`, i.e. `RX(-2βΓ)` on every qubit.

mod ansatz;
mod evolve;

pub(crate) use ansatz::{Ansatz, Param};
pub use evolve::{
    apply_cost_unitary, apply_mixer_unitary, cost_expectation, init_plus_state, initial_state, qaoa_evolve,
    sampled_cost_expectation, trotterized_aqc,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grover::FeasibleSet;
use crate::hamiltonian::IsingModel;
use crate::scalar::Real;

/// Default circuit depth.
pub const DEFAULT_P: usize = 10;
/// Default total annealing time for the linear-ramp initialization.
pub const DEFAULT_TOTAL_TIME: f64 = 7.5;

/// Per-layer angles `(γ_1..γ_p, β_1..β_p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QaoaParams<R> {
    gammas: Vec<R>,
    betas: Vec<R>,
}

#[derive(Serialize, Deserialize)]
struct ParamsJson {
    gammas: Vec<f64>,
    betas: Vec<f64>,
}

impl<R: Real> QaoaParams<R> {
    pub fn new(gammas: Vec<R>, betas: Vec<R>) -> Result<Self> {
        if gammas.is_empty() || gammas.len() != betas.len() {
            return Err(Error::InvalidArgument(format!(
                "need p >= 1 gammas and betas of equal length, got {} and {}",
                gammas.len(),
                betas.len()
            )));
        }
        if gammas.iter().chain(&betas).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("QAOA angles must be finite".into()));
        }
        Ok(Self { gammas, betas })
    }

    pub fn zeros(p: usize) -> Result<Self> {
        Self::new(vec![R::zero(); p], vec![R::zero(); p])
    }

    pub fn p(&self) -> usize {
        self.gammas.len()
    }

    pub fn gammas(&self) -> &[R] {
        &self.gammas
    }

    pub fn betas(&self) -> &[R] {
        &self.betas
    }

    /// `[γ_1..γ_p, β_1..β_p]`.
    pub fn to_flat(&self) -> Vec<R> {
        self.gammas.iter().chain(&self.betas).copied().collect()
    }

    pub fn from_flat(flat: &[R]) -> Result<Self> {
        if !flat.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("odd flat parameter length {}", flat.len())));
        }
        let (g, b) = flat.split_at(flat.len() / 2);
        Self::new(g.to_vec(), b.to_vec())
    }

    pub(crate) fn get(&self, param: Param) -> R {
        match param {
            Param::Gamma(l) => self.gammas[l],
            Param::Beta(l) => self.betas[l],
        }
    }

    pub(crate) fn get_mut(&mut self, param: Param) -> &mut R {
        match param {
            Param::Gamma(l) => &mut self.gammas[l],
            Param::Beta(l) => &mut self.betas[l],
        }
    }

    /// `{"gammas": [...], "betas": [...]}`.
    pub fn to_json(&self) -> String {
        let file = ParamsJson {
            gammas: self.gammas.iter().map(|v| v.as_f64()).collect(),
            betas: self.betas.iter().map(|v| v.as_f64()).collect(),
        };
        serde_json::to_string_pretty(&file).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: ParamsJson = serde_json::from_str(s)?;
        Self::new(file.gammas.into_iter().map(R::lit).collect(), file.betas.into_iter().map(R::lit).collect())
    }
}

/// Discretized linear schedule `s(t_k) = k/p`, `k = 0..p-1`, step `δ = T/p`.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule<R> {
    pub total_time: R,
    pub p: usize,
    pub s_values: Vec<R>,
    pub delta: R,
}

impl<R: Real> Schedule<R> {
    pub fn linear(p: usize, total_time: R) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidArgument("schedule needs p >= 1 steps".into()));
        }
        if !(total_time > R::zero()) || !total_time.is_finite() {
            return Err(Error::InvalidArgument(format!("total time must be positive, got {total_time}")));
        }
        let pr = R::lit(p as f64);
        Ok(Self { total_time, p, s_values: (0..p).map(|k| R::lit(k as f64) / pr).collect(), delta: total_time / pr })
    }

    /// `γ_k = s_k δ`, `β_k = (1 - s_k) δ`.
    pub fn params(&self) -> QaoaParams<R> {
        let gammas = self.s_values.iter().map(|&s| s * self.delta).collect();
        let betas = self.s_values.iter().map(|&s| (R::one() - s) * self.delta).collect();
        QaoaParams::new(gammas, betas).expect("p >= 1 and finite")
    }
}

/// Linear-ramp initialization: `γ_k = (k/p)(T/p)`, `β_k = (1 - k/p)(T/p)`.
pub fn linear_ramp_params<R: Real>(p: usize, total_time: R) -> Result<QaoaParams<R>> {
    Ok(Schedule::linear(p, total_time)?.params())
}

#[derive(Debug, Clone, PartialEq)]
pub enum MixerKind {
    /// `H_M = -Γ Σ X_i`, ground state `|+>^n`.
    TransverseField,
    /// `H_M = Γ |F><F|`, started from `|F>`.
    Grover(FeasibleSet),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixerSpec<R> {
    pub kind: MixerKind,
    /// Γ, default 1.
    pub strength: R,
}

impl<R: Real> MixerSpec<R> {
    pub fn transverse_field() -> Self {
        Self { kind: MixerKind::TransverseField, strength: R::one() }
    }

    pub fn grover(feasible: FeasibleSet) -> Self {
        Self { kind: MixerKind::Grover(feasible), strength: R::one() }
    }

    pub fn with_strength(mut self, strength: R) -> Self {
        self.strength = strength;
        self
    }

    pub fn is_grover(&self) -> bool {
        matches!(self.kind, MixerKind::Grover(_))
    }
}

/// Flags for [`apply_cost_unitary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostOptions {
    /// Apply the offset as a global phase.
    pub include_offset: bool,
    /// Skip the `|γ| · bound < π` check.
    pub allow_phase_wrap: bool,
}

impl Default for CostOptions {
    fn default() -> Self {
        Self { include_offset: true, allow_phase_wrap: false }
    }
}

/// A cost model paired with the factor its dynamics are divided by.
///
/// Evolution uses `model / scale`; expectations are reported against the
/// unscaled diagonal.
#[derive(Debug, Clone)]
pub struct QaoaProblem<R> {
    model: IsingModel<R>,
    scale: R,
    dynamics: IsingModel<R>,
    report_diagonal: Vec<R>,
    pub options: CostOptions,
}

impl<R: Real> QaoaProblem<R> {
    /// Unscaled problem (`scale = 1`).
    pub fn new(model: IsingModel<R>) -> Result<Self> {
        let report_diagonal = model.diagonal()?;
        Ok(Self { dynamics: model.clone(), model, scale: R::one(), report_diagonal, options: CostOptions::default() })
    }

    /// Divides the dynamics by `bound` (e.g. the edge count for MaxCut).
    pub fn rescaled(model: IsingModel<R>, bound: R) -> Result<Self> {
        let mut problem = Self::new(model)?;
        problem.dynamics = problem.model.rescale(bound)?;
        problem.scale = bound;
        Ok(problem)
    }

    /// Rescales by [`IsingModel::eigenvalue_bound`]; a zero bound leaves the
    /// model unscaled.
    pub fn auto_rescaled(model: IsingModel<R>) -> Result<Self> {
        let bound = model.eigenvalue_bound();
        if bound > R::zero() {
            Self::rescaled(model, bound)
        } else {
            Self::new(model)
        }
    }

    pub fn with_options(mut self, options: CostOptions) -> Self {
        self.options = options;
        self
    }

    pub fn n(&self) -> usize {
        self.model.n()
    }

    pub fn model(&self) -> &IsingModel<R> {
        &self.model
    }

    pub fn scale(&self) -> R {
        self.scale
    }

    /// The model the circuits actually evolve under.
    pub fn dynamics_model(&self) -> &IsingModel<R> {
        &self.dynamics
    }

    /// Unscaled cost of every basis state.
    pub fn cost_diagonal(&self) -> &[R] {
        &self.report_diagonal
    }
}
