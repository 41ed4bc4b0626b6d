//! Gradients of the QAOA cost expectation.
//!
//! Three routes are provided:
//!
//! * **per-gate shift** (canonical): every gate sharing a layer parameter is
//!   shifted by ±π/2 on its own angle and the results are summed with the
//!   chain-rule factor of that gate. Exact for any cost Hamiltonian.
//! * **layer shift**: the two-point rule applied to the layer parameter
//!   directly. Exact only when the whole layer is generated by an operator with
//!   two eigenvalues ±1/2 (e.g. a single `Z` field); kept as a comparison method.
//! * **finite difference**: central differences, the verification oracle and
//!   the only route supported through the Grover mixer.

use crate::error::{Error, Result};
use crate::qaoa::{Ansatz, MixerSpec, Param, QaoaParams, QaoaProblem};
use crate::scalar::Real;

/// Prefactor `r` of the two-point shift rule.
pub const SHIFT_PREFACTOR: f64 = 0.5;
/// Shift `s` of the two-point shift rule.
pub const SHIFT_ANGLE: f64 = std::f64::consts::FRAC_PI_2;
/// Default step for [`finite_difference`].
pub const DEFAULT_FD_EPSILON: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradientMethod {
    PerGateShift,
    LayerShift,
    FiniteDifference,
}

impl GradientMethod {
    pub fn name(self) -> &'static str {
        match self {
            GradientMethod::PerGateShift => "per-gate-shift",
            GradientMethod::LayerShift => "layer-shift",
            GradientMethod::FiniteDifference => "finite-difference",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradientReport<R> {
    pub grad_gammas: Vec<R>,
    pub grad_betas: Vec<R>,
    /// Circuit executions spent.
    pub evaluations: usize,
    pub method: GradientMethod,
}

impl<R: Real> GradientReport<R> {
    /// `[∂γ_1..∂γ_p, ∂β_1..∂β_p]`, matching [`QaoaParams::to_flat`].
    pub fn to_flat(&self) -> Vec<R> {
        self.grad_gammas.iter().chain(&self.grad_betas).copied().collect()
    }

    /// Largest absolute component-wise difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> R {
        self.to_flat().iter().zip(other.to_flat()).map(|(a, b)| (*a - b).abs()).fold(R::zero(), R::max)
    }
}

/// `½ [c(θ + π/2) - c(θ - π/2)]`.
pub fn shift_rule_single<R: Real>(cost: impl Fn(R) -> R, theta: R) -> R {
    let s = R::lit(SHIFT_ANGLE);
    R::lit(SHIFT_PREFACTOR) * (cost(theta + s) - cost(theta - s))
}

fn reject_grover<R: Real>(spec: &MixerSpec<R>, method: GradientMethod) -> Result<()> {
    if spec.is_grover() {
        return Err(Error::UnsupportedGradient { method: method.name() });
    }
    Ok(())
}

/// Exact gradient by shifting each parameterized gate separately.
///
/// Uses `2 ×` (number of parameterized gates) circuit evaluations; global
/// phase gates are not counted since they cannot change the expectation.
pub fn qaoa_gradient_per_gate<R: Real>(
    problem: &QaoaProblem<R>,
    params: &QaoaParams<R>,
    spec: &MixerSpec<R>,
) -> Result<GradientReport<R>> {
    reject_grover(spec, GradientMethod::PerGateShift)?;
    Ok(per_gate_on(&Ansatz::new(problem, spec, params.p())?, params))
}

pub(crate) fn per_gate_on<R: Real>(ansatz: &Ansatz<'_, R>, params: &QaoaParams<R>) -> GradientReport<R> {
    let shifted = ansatz.shifted_expectations(params, R::lit(SHIFT_ANGLE), |g| g.is_shiftable());
    let mut grad = QaoaParams::zeros(params.p()).expect("p >= 1");
    let half = R::lit(SHIFT_PREFACTOR);
    for &(j, plus, minus) in &shifted {
        let gate = &ansatz.gates()[j];
        *grad.get_mut(gate.param) += gate.factor * half * (plus - minus);
    }
    GradientReport {
        grad_gammas: grad.gammas().to_vec(),
        grad_betas: grad.betas().to_vec(),
        evaluations: 2 * shifted.len(),
        method: GradientMethod::PerGateShift,
    }
}

fn per_parameter<R: Real>(
    params: &QaoaParams<R>,
    method: GradientMethod,
    mut derivative: impl FnMut(Param) -> R,
) -> GradientReport<R> {
    let p = params.p();
    let grad_gammas = (0..p).map(|l| derivative(Param::Gamma(l))).collect();
    let grad_betas = (0..p).map(|l| derivative(Param::Beta(l))).collect();
    GradientReport { grad_gammas, grad_betas, evaluations: 4 * p, method }
}

/// The two-point rule applied to whole layer parameters:
/// `½ [C(θ_l + π/2) - C(θ_l - π/2)]` with all other parameters fixed.
pub fn qaoa_gradient_layer_shift<R: Real>(
    problem: &QaoaProblem<R>,
    params: &QaoaParams<R>,
    spec: &MixerSpec<R>,
) -> Result<GradientReport<R>> {
    reject_grover(spec, GradientMethod::LayerShift)?;
    let ansatz = Ansatz::new(problem, spec, params.p())?;
    Ok(per_parameter(params, GradientMethod::LayerShift, |param| {
        let curve = |theta: R| {
            let mut shifted = params.clone();
            *shifted.get_mut(param) = theta;
            ansatz.expectation(&shifted)
        };
        shift_rule_single(curve, params.get(param))
    }))
}

/// Central differences `(C(θ + ε) - C(θ - ε)) / 2ε` per parameter.
pub fn finite_difference<R: Real>(
    problem: &QaoaProblem<R>,
    params: &QaoaParams<R>,
    spec: &MixerSpec<R>,
    epsilon: R,
) -> Result<GradientReport<R>> {
    if !(epsilon > R::zero()) {
        return Err(Error::InvalidArgument(format!("finite-difference step must be positive, got {epsilon}")));
    }
    Ok(finite_difference_on(&Ansatz::new(problem, spec, params.p())?, params, epsilon))
}

pub(crate) fn finite_difference_on<R: Real>(
    ansatz: &Ansatz<'_, R>,
    params: &QaoaParams<R>,
    epsilon: R,
) -> GradientReport<R> {
    per_parameter(params, GradientMethod::FiniteDifference, |param| {
        let curve = |theta: R| {
            let mut shifted = params.clone();
            *shifted.get_mut(param) = theta;
            ansatz.expectation(&shifted)
        };
        central_difference(curve, params.get(param), epsilon)
    })
}

/// `(f(θ + ε) - f(θ - ε)) / 2ε`.
pub fn central_difference<R: Real>(f: impl Fn(R) -> R, theta: R, epsilon: R) -> R {
    (f(theta + epsilon) - f(theta - epsilon)) / (R::lit(2.0) * epsilon)
}

/// Dispatches on `method`; finite differences use [`DEFAULT_FD_EPSILON`].
pub fn qaoa_gradient<R: Real>(
    problem: &QaoaProblem<R>,
    params: &QaoaParams<R>,
    spec: &MixerSpec<R>,
    method: GradientMethod,
) -> Result<GradientReport<R>> {
    match method {
        GradientMethod::PerGateShift => qaoa_gradient_per_gate(problem, params, spec),
        GradientMethod::LayerShift => qaoa_gradient_layer_shift(problem, params, spec),
        GradientMethod::FiniteDifference => finite_difference(problem, params, spec, R::lit(DEFAULT_FD_EPSILON)),
    }
}
