use num_complex::Complex;

use super::{CostOptions, MixerKind, MixerSpec, QaoaParams, QaoaProblem};
use crate::error::{Error, Result};
use crate::grover::apply_grover_mixer;
use crate::hamiltonian::IsingModel;
use crate::scalar::Real;
use crate::sim::{Gate1Q, Statevector};

/// `|+>^n`, every amplitude `2^{-n/2}`.
pub fn init_plus_state<R: Real>(n: usize) -> Result<Statevector<R>> {
    let mut state = Statevector::new(n)?;
    let amp = Complex::new(R::one() / R::lit(state.dim() as f64).sqrt(), R::zero());
    state.amplitudes_mut().fill(amp);
    Ok(state)
}

/// Ground state of the mixer: `|+>^n` for the transverse field, `|F>` for
/// the Grover mixer.
pub fn initial_state<R: Real>(n: usize, spec: &MixerSpec<R>) -> Result<Statevector<R>> {
    match &spec.kind {
        MixerKind::TransverseField => init_plus_state(n),
        MixerKind::Grover(f) => {
            if f.n() != n {
                return Err(Error::DimensionMismatch { expected: n, got: f.n() });
            }
            f.uniform_state()
        }
    }
}

/// `exp(-iγ H_C)` built term by term: `RZ(2γh_i)` for fields, a parity phase
/// of angle `2γJ_S` for every coupling, and `e^{-iγ·offset}` as a global
/// phase. The terms commute, so their order does not matter.
///
/// Unless `options.allow_phase_wrap` is set, `|γ| · eigenvalue_bound` must
/// stay below π so distinct costs cannot alias to the same phase.
pub fn apply_cost_unitary<R: Real>(
    state: &mut Statevector<R>,
    ising: &IsingModel<R>,
    gamma: R,
    options: CostOptions,
) -> Result<()> {
    if ising.n() != state.n() {
        return Err(Error::DimensionMismatch { expected: state.n(), got: ising.n() });
    }
    if !options.allow_phase_wrap {
        let product = gamma.abs() * ising.eigenvalue_bound();
        if product >= R::PI() {
            return Err(Error::PhaseWrap { product: product.as_f64() });
        }
    }
    let two_gamma = gamma * R::lit(2.0);
    for (set, c) in ising.terms() {
        if let [q] = set {
            state.apply_1q(Gate1Q::rz(*q, two_gamma * c))?;
        } else {
            state.apply_parity_phase(set, two_gamma * c)?;
        }
    }
    if options.include_offset {
        state.apply_global_phase(-gamma * ising.offset());
    }
    Ok(())
}

/// `exp(-iβ H_M)`: `RX(-2βΓ)` on each qubit for the transverse field, the
/// rank-one Grover update otherwise.
pub fn apply_mixer_unitary<R: Real>(state: &mut Statevector<R>, spec: &MixerSpec<R>, beta: R) -> Result<()> {
    match &spec.kind {
        MixerKind::TransverseField => {
            let theta = -R::lit(2.0) * beta * spec.strength;
            (0..state.n()).try_for_each(|q| state.apply_1q(Gate1Q::rx(q, theta)))
        }
        MixerKind::Grover(f) => apply_grover_mixer(state, f, beta * spec.strength),
    }
}

/// `Π_k exp(-iβ_k H_M) exp(-iγ_k H_C) |ψ_0>`, layers in ascending `k`, cost
/// before mixer within a layer.
pub fn qaoa_evolve<R: Real>(
    problem: &QaoaProblem<R>,
    params: &QaoaParams<R>,
    spec: &MixerSpec<R>,
) -> Result<Statevector<R>> {
    let mut state = initial_state(problem.n(), spec)?;
    for (&gamma, &beta) in params.gammas().iter().zip(params.betas()) {
        apply_cost_unitary(&mut state, problem.dynamics_model(), gamma, problem.options)?;
        apply_mixer_unitary(&mut state, spec, beta)?;
    }
    Ok(state)
}

/// `<ψ_p| H_C |ψ_p>` against the unscaled cost diagonal.
pub fn cost_expectation<R: Real>(problem: &QaoaProblem<R>, params: &QaoaParams<R>, spec: &MixerSpec<R>) -> Result<R> {
    qaoa_evolve(problem, params, spec)?.expectation_diagonal(problem.cost_diagonal())
}

/// Shot-noise estimate of [`cost_expectation`]: the mean unscaled cost over
/// `shots` samples of the evolved state.
pub fn sampled_cost_expectation<R: Real>(
    problem: &QaoaProblem<R>,
    params: &QaoaParams<R>,
    spec: &MixerSpec<R>,
    shots: u64,
    seed: u64,
) -> Result<R> {
    let counts = qaoa_evolve(problem, params, spec)?.sample(shots, seed)?;
    let diag = problem.cost_diagonal();
    let total: R = counts.counts.iter().map(|(&x, &c)| diag[x] * R::lit(c as f64)).sum();
    Ok(total / R::lit(shots as f64))
}

/// First-order Trotterized adiabatic evolution over total time `T` in `p`
/// steps: [`qaoa_evolve`] with the linear-ramp parameters.
pub fn trotterized_aqc<R: Real>(
    problem: &QaoaProblem<R>,
    p: usize,
    total_time: R,
    spec: &MixerSpec<R>,
) -> Result<Statevector<R>> {
    let params = super::linear_ramp_params(p, total_time)?;
    qaoa_evolve(problem, &params, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{maxcut_ising, Graph};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    type C = Complex<f64>;

    fn close(a: &Statevector<f64>, b: &Statevector<f64>, tol: f64) -> bool {
        a.amplitudes().iter().zip(b.amplitudes()).all(|(x, y)| (x - y).norm() < tol)
    }

    #[test]
    fn plus_states() {
        let s = init_plus_state::<f64>(1).unwrap();
        assert!(s.amplitudes().iter().all(|a| (a - C::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15));
        let s = init_plus_state::<f64>(2).unwrap();
        assert!(s.amplitudes().iter().all(|a| *a == C::new(0.5, 0.0)));
        // <-Σ X_i> = -n in |+>^n: the mixer generator's diagonal in the
        // Hadamard basis is -(n - 2·popcount).
        let n = 3;
        let s = init_plus_state::<f64>(n).unwrap();
        let mut hs = s.clone();
        for q in 0..n {
            hs.apply_1q(Gate1Q::h(q)).unwrap();
        }
        let diag: Vec<f64> = (0..8usize).map(|x| -(n as f64 - 2.0 * x.count_ones() as f64)).collect();
        assert!((hs.expectation_diagonal(&diag).unwrap() + n as f64).abs() < 1e-12);
    }

    #[test]
    fn cost_unitary_examples() {
        let m = IsingModel::new(1).with_term(&[0], 1.0).unwrap();
        let mut s = init_plus_state::<f64>(1).unwrap();
        let before = s.clone();
        apply_cost_unitary(&mut s, &m, 0.0, CostOptions::default()).unwrap();
        assert!(close(&s, &before, 1e-15));

        let gamma = 0.37;
        apply_cost_unitary(&mut s, &m, gamma, CostOptions::default()).unwrap();
        let h = FRAC_1_SQRT_2;
        assert!((s.amplitude(0) - C::from_polar(h, -gamma)).norm() < 1e-15);
        assert!((s.amplitude(1) - C::from_polar(h, gamma)).norm() < 1e-15);

        let wrong = IsingModel::new(2).with_term(&[0], 1.0).unwrap();
        assert!(apply_cost_unitary(&mut s, &wrong, gamma, CostOptions::default()).is_err());
    }

    #[test]
    fn phase_wrap_guard() {
        // Diagonal {0, 2π}.
        let m = IsingModel::new(1).with_term(&[], PI).unwrap().with_term(&[0], -PI).unwrap();
        let mut s = init_plus_state::<f64>(1).unwrap();
        assert!(matches!(apply_cost_unitary(&mut s, &m, 1.0, CostOptions::default()), Err(Error::PhaseWrap { .. })));
        let opts = CostOptions { allow_phase_wrap: true, ..CostOptions::default() };
        let before = s.clone();
        apply_cost_unitary(&mut s, &m, 1.0, opts).unwrap();
        assert!(close(&s, &before, 1e-12));
    }

    #[test]
    fn mixer_examples() {
        let spec = MixerSpec::<f64>::transverse_field();
        let mut s = Statevector::<f64>::new(1).unwrap();
        apply_mixer_unitary(&mut s, &spec, 0.0).unwrap();
        assert_eq!(s, Statevector::new(1).unwrap());

        apply_mixer_unitary(&mut s, &spec, PI / 2.0).unwrap();
        assert!((s.amplitude(1) - C::new(0.0, 1.0)).norm() < 1e-15);
        assert!(s.amplitude(0).norm() < 1e-15);

        // |+>^n is an eigenstate of every X_i: only a global phase appears.
        let plus = init_plus_state::<f64>(3).unwrap();
        let mut mixed = plus.clone();
        apply_mixer_unitary(&mut mixed, &spec, 0.81).unwrap();
        let overlap = plus.inner_product(&mixed).unwrap();
        assert!((overlap.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn evolve_with_zero_angles_is_initial_state() {
        let problem = QaoaProblem::new(maxcut_ising::<f64>(&Graph::cycle(4))).unwrap();
        let spec = MixerSpec::transverse_field();
        for p in 1..4 {
            let s = qaoa_evolve(&problem, &QaoaParams::zeros(p).unwrap(), &spec).unwrap();
            assert_eq!(s, init_plus_state(4).unwrap());
        }
    }

    #[test]
    fn sampled_expectation_converges() {
        let problem = QaoaProblem::new(maxcut_ising::<f64>(&Graph::cycle(4))).unwrap();
        let params = QaoaParams::new(vec![0.4], vec![0.3]).unwrap();
        let spec = MixerSpec::transverse_field();
        let exact = cost_expectation(&problem, &params, &spec).unwrap();
        let est = sampled_cost_expectation(&problem, &params, &spec, 40_000, 3).unwrap();
        // Costs lie in [-4, 0], so the standard error is at most 2/200.
        assert!((est - exact).abs() < 0.05, "{est} vs {exact}");
        assert_eq!(est, sampled_cost_expectation(&problem, &params, &spec, 40_000, 3).unwrap());
    }

    #[test]
    fn zero_angle_expectation_is_mean_cost() {
        let problem = QaoaProblem::new(maxcut_ising::<f64>(&Graph::cycle(4))).unwrap();
        let e = cost_expectation(&problem, &QaoaParams::zeros(1).unwrap(), &MixerSpec::transverse_field()).unwrap();
        assert!((e + 2.0).abs() < 1e-12);
    }

    #[test]
    fn single_coarse_step_keeps_plus_state() {
        let problem = QaoaProblem::new(maxcut_ising::<f64>(&Graph::cycle(4))).unwrap();
        let s = trotterized_aqc(&problem, 1, 1.7, &MixerSpec::transverse_field()).unwrap();
        let overlap = init_plus_state::<f64>(4).unwrap().inner_product(&s).unwrap();
        assert!((overlap.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rescaled_problem_reports_unscaled_costs() {
        let model = maxcut_ising::<f64>(&Graph::cycle(4));
        let problem = QaoaProblem::rescaled(model.clone(), 4.0).unwrap();
        assert_eq!(problem.cost_diagonal()[0b0101], -4.0);
        assert_eq!(problem.dynamics_model().diagonal().unwrap()[0b0101], -1.0);
        let auto = QaoaProblem::auto_rescaled(model).unwrap();
        assert_eq!(auto.scale(), 4.0);
        let flat = QaoaProblem::auto_rescaled(IsingModel::<f64>::new(2)).unwrap();
        assert_eq!(flat.scale(), 1.0);
    }
}
