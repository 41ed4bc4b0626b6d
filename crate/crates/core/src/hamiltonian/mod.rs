//! Cost-function algebra: binary polynomials, Ising models of arbitrary order
//! and Pauli-string decomposition of small Hermitian matrices.

mod ising;
mod pauli;
mod polynomial;

pub use ising::IsingModel;
pub use pauli::{pauli_decompose, pauli_reconstruct, Pauli, PauliString, MAX_PAULI_QUBITS};
pub use polynomial::BinaryPolynomial;

use crate::error::{Error, Result};

/// Sorts `indices` and rejects duplicates or indices `>= n`.
pub(crate) fn canonical_indices(indices: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateQubit(w[0]));
        }
    }
    if let Some(&last) = sorted.last() {
        if last >= n {
            return Err(Error::QubitOutOfRange { index: last, n });
        }
    }
    Ok(sorted)
}
