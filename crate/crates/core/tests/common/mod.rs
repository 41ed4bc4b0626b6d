#![allow(dead_code)]

use num_complex::Complex64;
use qforge::{IsingModel, Statevector};
use rand::seq::index::sample;
use rand::Rng;

/// Random model on `n` qubits with terms up to `max_order`, coefficients in
/// [-1, 1] and a random offset.
pub fn random_ising(rng: &mut impl Rng, n: usize, max_order: usize) -> IsingModel<f64> {
    let mut model = IsingModel::new(n);
    model.add_term(&[], rng.gen_range(-1.0..1.0)).unwrap();
    let terms = rng.gen_range(1..=2 * n);
    for _ in 0..terms {
        let order = rng.gen_range(1..=max_order.min(n));
        let qubits = sample(rng, n, order).into_vec();
        model.add_term(&qubits, rng.gen_range(-1.0..1.0)).unwrap();
    }
    model
}

/// Energy of basis index `x` computed straight from the term list.
pub fn brute_energy(model: &IsingModel<f64>, x: usize) -> f64 {
    model.offset()
        + model
            .terms()
            .map(|(set, c)| {
                let sign: f64 = set.iter().map(|&i| if x >> i & 1 == 1 { -1.0 } else { 1.0 }).product();
                c * sign
            })
            .sum::<f64>()
}

pub fn random_state(rng: &mut impl Rng, n: usize) -> Statevector<f64> {
    let amps: Vec<Complex64> =
        (0..1usize << n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    Statevector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

pub fn max_amp_diff(a: &Statevector<f64>, b: &Statevector<f64>) -> f64 {
    a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Indices sorted by probability, highest first; ties by index.
pub fn ranked(probs: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..probs.len()).collect();
    idx.sort_by(|&a, &b| probs[b].partial_cmp(&probs[a]).unwrap().then(a.cmp(&b)));
    idx
}
