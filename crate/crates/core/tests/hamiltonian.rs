mod common;

use common::{brute_energy, random_ising};
use num_complex::Complex64;
use proptest::prelude::*;
use qforge::hamiltonian::{pauli_decompose, pauli_reconstruct, Pauli};
use qforge::problems::{brute_force, maxcut_ising, Graph};
use qforge::{BinaryPolynomial, IsingModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random polynomial with dyadic coefficients k/8, so every expansion step is
/// exact in binary floating point.
fn poly_strategy() -> impl Strategy<Value = BinaryPolynomial<f64>> {
    (1usize..=10)
        .prop_flat_map(|n| {
            let term = (prop::collection::btree_set(0..n, 0..=4.min(n)), -16i32..=16);
            (Just(n), prop::collection::vec(term, 0..12))
        })
        .prop_map(|(n, terms)| {
            let mut p = BinaryPolynomial::new(n);
            for (set, k) in terms {
                let idx: Vec<usize> = set.into_iter().collect();
                p.add_term(&idx, k as f64 / 8.0).unwrap();
            }
            p
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binary_to_ising_round_trip(poly in poly_strategy()) {
        let ising = poly.to_ising();
        let diag = ising.diagonal().unwrap();
        for (x, &e) in diag.iter().enumerate() {
            prop_assert_eq!(e, poly.eval(x));
        }
    }

    #[test]
    fn ising_text_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=7);
        let model = random_ising(&mut rng, n, 4);
        let back = IsingModel::<f64>::from_text(&model.to_text()).unwrap();
        prop_assert_eq!(back, model);
    }

    #[test]
    fn rescale_preserves_optima(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=6);
        let model = random_ising(&mut rng, n, 3);
        let bound = model.eigenvalue_bound();
        let scaled = model.rescale(bound).unwrap();
        let diag = model.diagonal().unwrap();
        let sdiag = scaled.diagonal().unwrap();
        prop_assert!(sdiag.iter().all(|v| v.abs() <= 1.0 + 1e-12));
        let arg = |d: &[f64], better: fn(f64, f64) -> bool| {
            (0..d.len()).fold(0, |best, x| if better(d[x], d[best]) { x } else { best })
        };
        prop_assert_eq!(arg(&diag, |a, b| a < b), arg(&sdiag, |a, b| a < b));
        prop_assert_eq!(arg(&diag, |a, b| a > b), arg(&sdiag, |a, b| a > b));
    }

    #[test]
    fn pauli_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4);
        let dim = 1 << n;
        let mut h = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for i in 0..dim {
            h[i][i] = Complex64::new(rng.gen_range(-2.0..2.0), 0.0);
            for j in i + 1..dim {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                h[i][j] = z;
                h[j][i] = z.conj();
            }
        }
        let back = pauli_reconstruct(&pauli_decompose(&h).unwrap(), n).unwrap();
        for i in 0..dim {
            for j in 0..dim {
                prop_assert!((h[i][j] - back[i][j]).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn substitution_examples() {
    let ising = BinaryPolynomial::new(1).with_term(&[0], 1.0).unwrap().to_ising();
    assert_eq!((ising.offset(), ising.field(0)), (0.5, -0.5));
    let ising = BinaryPolynomial::new(2).with_term(&[0, 1], 1.0).unwrap().to_ising();
    assert_eq!(ising.offset(), 0.25);
    assert_eq!(ising.fields(), vec![-0.25, -0.25]);
    assert_eq!(ising.coupling(&[0, 1]), 0.25);
    let ising = BinaryPolynomial::new(3).with_term(&[0, 1, 2], 1.0).unwrap().to_ising();
    assert_eq!(ising.coupling(&[0, 1, 2]), -0.125);
    assert_eq!(ising.order(), 3);
}

#[test]
fn energies_match_diagonal() {
    let model = IsingModel::new(2).with_term(&[0, 1], -1.0).unwrap();
    assert_eq!(model.energy(&[1, 1]).unwrap(), -1.0);
    assert_eq!(IsingModel::new(3).with_term(&[], 3.5).unwrap().energy(&[1, -1, 1]).unwrap(), 3.5);
    assert!(model.energy(&[1]).is_err());

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let model = random_ising(&mut rng, 4, 4);
    let diag = model.diagonal().unwrap();
    for x in 0..16usize {
        let spins: Vec<i8> = (0..4).map(|i| if x >> i & 1 == 1 { -1 } else { 1 }).collect();
        assert!((model.energy(&spins).unwrap() - diag[x]).abs() < 1e-14);
        assert!((brute_energy(&model, x) - diag[x]).abs() < 1e-14);
    }
}

#[test]
fn diagonal_examples() {
    assert_eq!(IsingModel::new(1).with_term(&[0], 1.0).unwrap().diagonal().unwrap(), vec![1.0, -1.0]);
    assert_eq!(IsingModel::new(2).with_term(&[0, 1], 1.0).unwrap().diagonal().unwrap(), vec![1.0, -1.0, -1.0, 1.0]);
    let c4 = maxcut_ising::<f64>(&Graph::cycle(4));
    let diag = c4.diagonal().unwrap();
    assert_eq!(diag[0b0101], -4.0);
    assert!(diag.iter().all(|d| d.fract() == 0.0));
    assert_eq!(c4.rescale(4.0).unwrap().diagonal().unwrap()[0b0101], -1.0);
}

#[test]
fn bounds() {
    let model = IsingModel::new(2)
        .with_term(&[0], 1.0)
        .unwrap()
        .with_term(&[1], -2.0)
        .unwrap()
        .with_term(&[0, 1], 3.0)
        .unwrap();
    assert_eq!(model.eigenvalue_bound(), 6.0);
    assert_eq!(IsingModel::<f64>::new(3).eigenvalue_bound(), 0.0);
    let c4 = maxcut_ising::<f64>(&Graph::cycle(4));
    assert_eq!(c4.eigenvalue_bound(), 4.0);
    assert_eq!(-brute_force(&c4).unwrap().best_value, 4.0);
    assert!(model.rescale(0.0).is_err());
    assert!(model.rescale(-1.0).is_err());
}

#[test]
fn pauli_examples() {
    let z = vec![
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)],
    ];
    let strings = pauli_decompose(&z).unwrap();
    assert_eq!(strings.len(), 1);
    assert_eq!((strings[0].ops[0], strings[0].coefficient), (Pauli::Z, 1.0));

    let id = vec![
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ];
    let strings = pauli_decompose(&id).unwrap();
    assert_eq!(strings.len(), 1);
    assert_eq!((strings[0].label(), strings[0].coefficient), ("I".to_string(), 1.0));

    let not_hermitian = vec![
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
    ];
    assert!(pauli_decompose(&not_hermitian).is_err());
}

#[test]
fn ising_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.txt");
    let model = IsingModel::new(3)
        .with_term(&[], -0.5)
        .unwrap()
        .with_term(&[0, 2], 0.25)
        .unwrap()
        .with_term(&[0, 1, 2], 1.5)
        .unwrap();
    model.save(&path).unwrap();
    assert_eq!(IsingModel::<f64>::load(&path).unwrap(), model);

    let err = IsingModel::<f64>::from_text("n=2\n1.0 0 1\nabc 0\n").unwrap_err();
    assert!(err.to_string().contains("line 3"), "{err}");
}
