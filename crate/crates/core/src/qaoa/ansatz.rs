//! QAOA circuit flattened into parameterized gates, each with angle
//! `factor · θ` for one layer parameter θ. Used by the gradient routines to
//! shift gates individually.

use super::{evolve::initial_state, MixerKind, MixerSpec, QaoaParams, QaoaProblem};
use crate::error::Result;
use crate::grover::apply_grover_mixer;
use crate::scalar::Real;
use crate::sim::{Gate1Q, Statevector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Param {
    Gamma(usize),
    Beta(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum GateOp {
    /// `RZ(angle)` on a qubit.
    Rz(usize),
    /// `exp(-i angle/2 Z..Z)` on a qubit mask.
    Parity(usize),
    /// `RX(angle)` on a qubit.
    Rx(usize),
    /// `e^{i angle}` on the whole state.
    GlobalPhase,
    /// `exp(-i angle |F><F|)`.
    Grover,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct ParamGate<R> {
    pub op: GateOp,
    pub param: Param,
    pub factor: R,
}

impl<R: Real> ParamGate<R> {
    /// Generated by a Pauli word with the `exp(-iθP/2)` normalization, so the
    /// two-term shift rule applies to it.
    pub fn is_shiftable(&self) -> bool {
        matches!(self.op, GateOp::Rz(_) | GateOp::Parity(_) | GateOp::Rx(_))
    }
}

pub(crate) struct Ansatz<'a, R> {
    problem: &'a QaoaProblem<R>,
    spec: &'a MixerSpec<R>,
    gates: Vec<ParamGate<R>>,
    initial: Statevector<R>,
}

impl<'a, R: Real> Ansatz<'a, R> {
    pub fn new(problem: &'a QaoaProblem<R>, spec: &'a MixerSpec<R>, p: usize) -> Result<Self> {
        let two = R::lit(2.0);
        let model = problem.dynamics_model();
        let mut gates = Vec::new();
        for layer in 0..p {
            let gamma = Param::Gamma(layer);
            for (set, c) in model.terms() {
                let op = match set {
                    [q] => GateOp::Rz(*q),
                    _ => GateOp::Parity(set.iter().fold(0, |m, &q| m | 1 << q)),
                };
                gates.push(ParamGate { op, param: gamma, factor: two * c });
            }
            if problem.options.include_offset && model.offset() != R::zero() {
                gates.push(ParamGate { op: GateOp::GlobalPhase, param: gamma, factor: -model.offset() });
            }
            let beta = Param::Beta(layer);
            match spec.kind {
                MixerKind::TransverseField => {
                    for q in 0..problem.n() {
                        gates.push(ParamGate { op: GateOp::Rx(q), param: beta, factor: -two * spec.strength });
                    }
                }
                MixerKind::Grover(_) => {
                    gates.push(ParamGate { op: GateOp::Grover, param: beta, factor: spec.strength });
                }
            }
        }
        let initial = initial_state(problem.n(), spec)?;
        Ok(Self { problem, spec, gates, initial })
    }

    pub fn gates(&self) -> &[ParamGate<R>] {
        &self.gates
    }

    fn apply(&self, state: &mut Statevector<R>, gate: &ParamGate<R>, angle: R) {
        match gate.op {
            GateOp::Rz(q) => state.apply_1q(Gate1Q::rz(q, angle)).expect("qubit in range"),
            GateOp::Rx(q) => state.apply_1q(Gate1Q::rx(q, angle)).expect("qubit in range"),
            GateOp::Parity(mask) => state.apply_parity_phase_mask(mask, angle),
            GateOp::GlobalPhase => state.apply_global_phase(angle),
            GateOp::Grover => {
                let MixerKind::Grover(f) = &self.spec.kind else { unreachable!("Grover gate without a feasible set") };
                apply_grover_mixer(state, f, angle).expect("dimensions checked at construction");
            }
        }
    }

    fn run_from(&self, mut state: Statevector<R>, start: usize, params: &QaoaParams<R>) -> Statevector<R> {
        for gate in &self.gates[start..] {
            self.apply(&mut state, gate, gate.factor * params.get(gate.param));
        }
        state
    }

    pub fn state(&self, params: &QaoaParams<R>) -> Statevector<R> {
        self.run_from(self.initial.clone(), 0, params)
    }

    fn expectation_of(&self, state: &Statevector<R>) -> R {
        state.expectation_diagonal(self.problem.cost_diagonal()).expect("diagonal matches problem size")
    }

    pub fn expectation(&self, params: &QaoaParams<R>) -> R {
        self.expectation_of(&self.state(params))
    }

    /// For every gate index `j` selected by `filter`, the expectations with
    /// gate `j`'s angle shifted by `+shift` and `-shift`, in gate order.
    ///
    /// States before each gate are cached from one forward pass, so each
    /// shifted evaluation only replays the suffix of the circuit.
    pub fn shifted_expectations(
        &self,
        params: &QaoaParams<R>,
        shift: R,
        filter: impl Fn(&ParamGate<R>) -> bool,
    ) -> Vec<(usize, R, R)> {
        let mut prefix = Vec::with_capacity(self.gates.len());
        let mut state = self.initial.clone();
        for gate in &self.gates {
            prefix.push(state.clone());
            self.apply(&mut state, gate, gate.factor * params.get(gate.param));
        }
        self.gates
            .iter()
            .enumerate()
            .filter(|(_, g)| filter(g))
            .map(|(j, gate)| {
                let angle = gate.factor * params.get(gate.param);
                let eval = |delta: R| {
                    let mut s = prefix[j].clone();
                    self.apply(&mut s, gate, angle + delta);
                    self.expectation_of(&self.run_from(s, j + 1, params))
                };
                let plus = eval(shift);
                let minus = eval(-shift);
                (j, plus, minus)
            })
            .collect()
    }
}
