use super::Graph;
use crate::hamiltonian::IsingModel;
use crate::scalar::Real;

/// Minimization form of MaxCut: `Σ_edges ½(Z_i Z_j - 1)`, whose diagonal is
/// `-cut(x)`. Use [`Graph::cut_diagonal`] for the `+cut` reporting view.
pub fn maxcut_ising<R: Real>(graph: &Graph) -> IsingModel<R> {
    let half = R::lit(0.5);
    let mut model = IsingModel::new(graph.n_vertices());
    for (i, j) in graph.edges() {
        model.add_term(&[], -half).expect("offset");
        model.add_term(&[i, j], half).expect("graph edges are valid");
    }
    model
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::erdos_renyi;

    #[test]
    fn single_edge() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let diag = maxcut_ising::<f64>(&g).diagonal().unwrap();
        assert_eq!(diag, vec![0.0, -1.0, -1.0, 0.0]);
    }

    #[test]
    fn c4_coefficients() {
        let m = maxcut_ising::<f64>(&Graph::cycle(4));
        assert_eq!(m.offset(), -2.0);
        assert_eq!(m.coupling(&[0, 3]), 0.5);
        assert_eq!(m.eigenvalue_bound(), 4.0);
        let diag = m.diagonal().unwrap();
        assert_eq!(diag[0b0101], -4.0);
        assert_eq!(diag[0b1010], -4.0);
    }

    #[test]
    fn diagonal_is_negated_cut() {
        for seed in 0..20 {
            let g = erdos_renyi(1 + (seed as usize % 6), 0.5, seed).unwrap();
            let diag = maxcut_ising::<f64>(&g).diagonal().unwrap();
            for (x, d) in diag.iter().enumerate() {
                assert_eq!(*d, -(g.cut_of_index(x) as f64));
                assert_eq!(d.fract(), 0.0);
            }
        }
    }

    #[test]
    fn empty_graph_is_zero_model() {
        let m = maxcut_ising::<f64>(&Graph::new(3));
        assert!(m.is_constant());
        assert_eq!(m.offset(), 0.0);
    }
}
