//! Gradient descent and Adam over [`QaoaParams`], with the cost trajectory.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::gradients::{finite_difference_on, per_gate_on, GradientMethod, DEFAULT_FD_EPSILON};
use crate::qaoa::{Ansatz, MixerSpec, QaoaParams, QaoaProblem};
use crate::scalar::Real;

/// Steps run by [`OptimizerConfig::default`].
pub const DEFAULT_MAX_STEPS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimizerMethod {
    GradientDescent,
    Adam,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig<R> {
    pub method: OptimizerMethod,
    pub learning_rate: R,
    pub adam_beta1: R,
    pub adam_beta2: R,
    pub adam_eps: R,
    pub max_steps: usize,
    /// Per-gate shift or finite differences.
    pub gradient_method: GradientMethod,
    /// Recorded for reproducibility; both gradient routes are deterministic.
    pub seed: u64,
}

impl<R: Real> Default for OptimizerConfig<R> {
    fn default() -> Self {
        Self {
            method: OptimizerMethod::Adam,
            learning_rate: R::lit(0.01),
            adam_beta1: R::lit(0.9),
            adam_beta2: R::lit(0.999),
            adam_eps: R::lit(1e-8),
            max_steps: DEFAULT_MAX_STEPS,
            gradient_method: GradientMethod::PerGateShift,
            seed: 0,
        }
    }
}

impl<R: Real> OptimizerConfig<R> {
    pub fn gradient_descent(learning_rate: R, max_steps: usize) -> Self {
        Self { method: OptimizerMethod::GradientDescent, learning_rate, max_steps, ..Self::default() }
    }

    pub fn adam(learning_rate: R, max_steps: usize) -> Self {
        Self { learning_rate, max_steps, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |b: R| b >= R::zero() && b < R::one();
        if !(self.learning_rate > R::zero()) || !self.learning_rate.is_finite() {
            return Err(Error::InvalidArgument(format!("learning rate must be positive, got {}", self.learning_rate)));
        }
        if !unit(self.adam_beta1) || !unit(self.adam_beta2) {
            return Err(Error::InvalidArgument("Adam decay rates must lie in [0, 1)".into()));
        }
        if !(self.adam_eps >= R::zero()) {
            return Err(Error::InvalidArgument("Adam epsilon must be non-negative".into()));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidArgument("max_steps must be at least 1".into()));
        }
        if self.gradient_method == GradientMethod::LayerShift {
            return Err(Error::InvalidArgument(
                "layer-shift gradients are not exact for QAOA layers; use per-gate-shift or finite-difference".into(),
            ));
        }
        Ok(())
    }
}

fn check_shape<R: Real>(params: &QaoaParams<R>, grad: &[R]) -> Result<()> {
    if grad.len() != 2 * params.p() {
        return Err(Error::DimensionMismatch { expected: 2 * params.p(), got: grad.len() });
    }
    Ok(())
}

/// `θ ← θ - η ∇C` with `grad` in [`QaoaParams::to_flat`] order.
pub fn gd_step<R: Real>(params: &QaoaParams<R>, grad: &[R], learning_rate: R) -> Result<QaoaParams<R>> {
    check_shape(params, grad)?;
    let flat: Vec<R> = params.to_flat().iter().zip(grad).map(|(&t, &g)| t - learning_rate * g).collect();
    QaoaParams::from_flat(&flat)
}

/// First and second moments plus the step counter.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState<R> {
    pub m: Vec<R>,
    pub v: Vec<R>,
    pub t: u64,
}

impl<R: Real> AdamState<R> {
    pub fn new(len: usize) -> Self {
        Self { m: vec![R::zero(); len], v: vec![R::zero(); len], t: 0 }
    }
}

/// One bias-corrected Adam update.
pub fn adam_step<R: Real>(
    state: &AdamState<R>,
    params: &QaoaParams<R>,
    grad: &[R],
    config: &OptimizerConfig<R>,
) -> Result<(AdamState<R>, QaoaParams<R>)> {
    check_shape(params, grad)?;
    if state.m.len() != grad.len() || state.v.len() != grad.len() {
        return Err(Error::DimensionMismatch { expected: grad.len(), got: state.m.len() });
    }
    let (b1, b2) = (config.adam_beta1, config.adam_beta2);
    let t = state.t + 1;
    let c1 = R::one() - b1.powi(t as i32);
    let c2 = R::one() - b2.powi(t as i32);
    let mut next = AdamState { m: state.m.clone(), v: state.v.clone(), t };
    let mut flat = params.to_flat();
    for (i, &g) in grad.iter().enumerate() {
        next.m[i] = b1 * next.m[i] + (R::one() - b1) * g;
        next.v[i] = b2 * next.v[i] + (R::one() - b2) * g * g;
        let m_hat = next.m[i] / c1;
        let v_hat = next.v[i] / c2;
        flat[i] -= config.learning_rate * m_hat / (v_hat.sqrt() + config.adam_eps);
    }
    Ok((next, QaoaParams::from_flat(&flat)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<R> {
    /// Cost before each step.
    pub costs: Vec<R>,
    pub params_final: QaoaParams<R>,
    pub steps_run: usize,
}

impl<R: Real> Trajectory<R> {
    /// CSV with header `step,cost`, steps counted from 0.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,cost\n");
        for (k, c) in self.costs.iter().enumerate() {
            writeln!(out, "{k},{}", c.as_f64()).expect("writing to a String");
        }
        out
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn final_cost(&self) -> Option<R> {
        self.costs.last().copied()
    }
}

/// Runs `config.max_steps` optimizer steps from `init`, with no early stopping.
///
/// Angles are never wrapped and the cost unitary's phase-wrap guard is not
/// applied during training: the optimizer is free to leave the safe range.
pub fn minimize<R: Real>(
    problem: &QaoaProblem<R>,
    init: &QaoaParams<R>,
    spec: &MixerSpec<R>,
    config: &OptimizerConfig<R>,
) -> Result<Trajectory<R>> {
    config.validate()?;
    if spec.is_grover() && config.gradient_method == GradientMethod::PerGateShift {
        return Err(Error::UnsupportedGradient { method: GradientMethod::PerGateShift.name() });
    }
    let ansatz = Ansatz::new(problem, spec, init.p())?;
    let mut params = init.clone();
    let mut adam = AdamState::new(2 * init.p());
    let mut costs = Vec::with_capacity(config.max_steps);
    for _ in 0..config.max_steps {
        costs.push(ansatz.expectation(&params));
        let grad = match config.gradient_method {
            GradientMethod::FiniteDifference => finite_difference_on(&ansatz, &params, R::lit(DEFAULT_FD_EPSILON)),
            _ => per_gate_on(&ansatz, &params),
        }
        .to_flat();
        params = match config.method {
            OptimizerMethod::GradientDescent => gd_step(&params, &grad, config.learning_rate)?,
            OptimizerMethod::Adam => {
                let (next, p) = adam_step(&adam, &params, &grad, config)?;
                adam = next;
                p
            }
        };
    }
    Ok(Trajectory { steps_run: costs.len(), costs, params_final: params })
}
