use num_complex::Complex;

use super::{check_capacity, max_qubits, Gate1Q, GateKind};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `2^n` complex amplitudes over the computational basis.
///
/// A statevector has a single writer; gate methods take `&mut self`.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector<R> {
    n: usize,
    amps: Vec<Complex<R>>,
}

impl<R: Real> Statevector<R> {
    /// `|0...0>` on `n` qubits, bounded by [`max_qubits`].
    pub fn new(n: usize) -> Result<Self> {
        Self::with_cap(n, max_qubits())
    }

    pub fn with_cap(n: usize, cap: usize) -> Result<Self> {
        Self::basis_with_cap(n, 0, cap)
    }

    /// Computational basis state `|index>`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        Self::basis_with_cap(n, index, max_qubits())
    }

    fn basis_with_cap(n: usize, index: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewQubits { min: 1, got: 0 });
        }
        check_capacity("statevector", n, cap)?;
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::DimensionMismatch { expected: dim, got: index });
        }
        let mut amps = vec![Complex::new(R::zero(), R::zero()); dim];
        amps[index] = Complex::new(R::one(), R::zero());
        Ok(Self { n, amps })
    }

    /// Wraps raw amplitudes. The length must be a power of two (at least 2);
    /// normalization is the caller's business.
    pub fn from_amplitudes(amps: Vec<Complex<R>>) -> Result<Self> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidArgument(format!("amplitude count {dim} is not a power of two >= 2")));
        }
        let n = dim.trailing_zeros() as usize;
        check_capacity("statevector", n, max_qubits())?;
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<R>] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex<R>] {
        &mut self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex<R> {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> R {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::QubitOutOfRange { index: q, n: self.n });
        }
        Ok(())
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if other != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other });
        }
        Ok(())
    }

    pub fn apply_1q(&mut self, gate: Gate1Q<R>) -> Result<()> {
        self.check_qubit(gate.qubit)?;
        let bit = 1usize << gate.qubit;
        match gate.kind {
            // Diagonal gates skip the pair mixing.
            GateKind::Rz | GateKind::Phase => {
                let [[d0, _], [_, d1]] = gate.matrix();
                for (x, a) in self.amps.iter_mut().enumerate() {
                    *a *= if x & bit == 0 { d0 } else { d1 };
                }
            }
            GateKind::PauliX => {
                for_each_pair(self.amps.len(), bit, |i0, i1| self.amps.swap(i0, i1));
            }
            GateKind::Hadamard | GateKind::Rx => {
                let [[m00, m01], [m10, m11]] = gate.matrix();
                let amps = &mut self.amps;
                for_each_pair(amps.len(), bit, |i0, i1| {
                    let (a0, a1) = (amps[i0], amps[i1]);
                    amps[i0] = m00 * a0 + m01 * a1;
                    amps[i1] = m10 * a0 + m11 * a1;
                });
            }
        }
        Ok(())
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::DuplicateQubit(control));
        }
        let (cbit, tbit) = (1usize << control, 1usize << target);
        for_each_pair(self.amps.len(), tbit, |i0, i1| {
            if i0 & cbit != 0 {
                self.amps.swap(i0, i1);
            }
        });
        Ok(())
    }

    /// Multiplies every basis state whose `controls` and `target` bits are all
    /// set by `e^{iφ}`.
    pub fn apply_controlled_phase(&mut self, controls: &[usize], target: usize, phi: R) -> Result<()> {
        let mask = self.qubit_mask(controls.iter().copied().chain(std::iter::once(target)))?;
        let phase = Complex::from_polar(R::one(), phi);
        for (x, a) in self.amps.iter_mut().enumerate() {
            if x & mask == mask {
                *a *= phase;
            }
        }
        Ok(())
    }

    /// `exp(-i θ/2 Z⊗...⊗Z)` on `qubits`: each basis state picks up
    /// `e^{-iθ/2}` for even parity of the selected bits and `e^{+iθ/2}` for odd.
    pub fn apply_parity_phase(&mut self, qubits: &[usize], theta: R) -> Result<()> {
        let mask = self.qubit_mask(qubits.iter().copied())?;
        self.apply_parity_phase_mask(mask, theta);
        Ok(())
    }

    pub(crate) fn apply_parity_phase_mask(&mut self, mask: usize, theta: R) {
        let half = theta / R::lit(2.0);
        let even = Complex::from_polar(R::one(), -half);
        let odd = Complex::from_polar(R::one(), half);
        for (x, a) in self.amps.iter_mut().enumerate() {
            *a *= if (x & mask).count_ones().is_multiple_of(2) { even } else { odd };
        }
    }

    /// The same rotation as [`Self::apply_parity_phase`], built from gates: a
    /// CNOT ladder accumulating parity onto the last qubit, `RZ(θ)` there, and
    /// the ladder undone.
    pub fn apply_parity_phase_circuit(&mut self, qubits: &[usize], theta: R) -> Result<()> {
        self.qubit_mask(qubits.iter().copied())?;
        let mut sorted = qubits.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            self.apply_cnot(w[0], w[1])?;
        }
        self.apply_1q(Gate1Q::rz(*sorted.last().expect("non-empty"), theta))?;
        for w in sorted.windows(2).rev() {
            self.apply_cnot(w[0], w[1])?;
        }
        Ok(())
    }

    /// Multiplies amplitude `x` by `e^{-i t diag[x]}`.
    pub fn apply_diagonal_phase(&mut self, diag: &[R], t: R) -> Result<()> {
        self.check_dim(diag.len())?;
        for (a, &d) in self.amps.iter_mut().zip(diag) {
            *a *= Complex::from_polar(R::one(), -t * d);
        }
        Ok(())
    }

    /// Multiplies the whole state by `e^{iφ}`.
    pub fn apply_global_phase(&mut self, phi: R) {
        let phase = Complex::from_polar(R::one(), phi);
        for a in &mut self.amps {
            *a *= phase;
        }
    }

    pub fn probabilities(&self) -> Vec<R> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `Σ_x |ψ(x)|² diag[x]`.
    pub fn expectation_diagonal(&self, diag: &[R]) -> Result<R> {
        self.check_dim(diag.len())?;
        Ok(self.amps.iter().zip(diag).map(|(a, &d)| a.norm_sqr() * d).sum())
    }

    /// `<self|other>`, conjugating `self`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex<R>> {
        self.check_dim(other.dim())?;
        Ok(self.amps.iter().zip(&other.amps).fold(Complex::new(R::zero(), R::zero()), |acc, (a, b)| acc + a.conj() * b))
    }

    /// Bitmask of distinct, in-range qubits.
    pub(crate) fn qubit_mask(&self, qubits: impl IntoIterator<Item = usize>) -> Result<usize> {
        let mut mask = 0usize;
        for q in qubits {
            self.check_qubit(q)?;
            if mask & (1 << q) != 0 {
                return Err(Error::DuplicateQubit(q));
            }
            mask |= 1 << q;
        }
        if mask == 0 {
            return Err(Error::EmptyQubitSet);
        }
        Ok(mask)
    }
}

/// Calls `f(i0, i1)` for every index pair differing only in `bit`, `i0` having
/// the bit clear.
#[inline]
fn for_each_pair(dim: usize, bit: usize, mut f: impl FnMut(usize, usize)) {
    for hi in (0..dim).step_by(bit << 1) {
        for i0 in hi..hi + bit {
            f(i0, i0 | bit);
        }
    }
}
