use crate::error::Result;
use crate::hamiltonian::IsingModel;
use crate::scalar::Real;

/// Exact minimum of a cost diagonal and every basis index attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceResult<R> {
    pub best_value: R,
    pub argmin_set: Vec<usize>,
    pub evaluated: usize,
}

/// Enumerates all `2^n` assignments of `ising`.
pub fn brute_force<R: Real>(ising: &IsingModel<R>) -> Result<BruteForceResult<R>> {
    let diag = ising.diagonal()?;
    let best = diag.iter().copied().fold(R::infinity(), R::min);
    let argmin_set = diag.iter().enumerate().filter(|(_, &d)| d == best).map(|(x, _)| x).collect();
    Ok(BruteForceResult { best_value: best, argmin_set, evaluated: diag.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{erdos_renyi, maxcut_ising, Graph};

    #[test]
    fn c4_optima() {
        let r = brute_force(&maxcut_ising::<f64>(&Graph::cycle(4))).unwrap();
        assert_eq!(r.best_value, -4.0);
        assert_eq!(r.argmin_set, vec![0b0101, 0b1010]);
        assert_eq!(r.evaluated, 16);
    }

    #[test]
    fn constant_and_single_spin() {
        let zero = IsingModel::<f64>::new(3).with_term(&[], 1.5).unwrap();
        let r = brute_force(&zero).unwrap();
        assert_eq!(r.best_value, 1.5);
        assert_eq!(r.argmin_set, (0..8).collect::<Vec<_>>());

        let h = IsingModel::<f64>::new(1).with_term(&[0], 1.0).unwrap();
        let r = brute_force(&h).unwrap();
        assert_eq!((r.best_value, r.argmin_set), (-1.0, vec![1]));
    }

    #[test]
    fn maxcut_optima_closed_under_complement() {
        for seed in 0..15 {
            let g = erdos_renyi(6, 0.5, seed).unwrap();
            let r = brute_force(&maxcut_ising::<f64>(&g)).unwrap();
            for &x in &r.argmin_set {
                assert!(r.argmin_set.contains(&(!x & 63)));
            }
        }
    }
}
