use num_complex::Complex;

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    Hadamard,
    PauliX,
    /// `exp(-i θ X / 2)`
    Rx,
    /// `exp(-i θ Z / 2)`
    Rz,
    /// `|0> -> |0>`, `|1> -> e^{iφ}|1>`
    Phase,
}

/// Single-qubit gate. The angle is ignored for `Hadamard` and `PauliX`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate1Q<R> {
    pub kind: GateKind,
    pub angle: R,
    pub qubit: usize,
}

impl<R: Real> Gate1Q<R> {
    pub fn h(qubit: usize) -> Self {
        Self { kind: GateKind::Hadamard, angle: R::zero(), qubit }
    }

    pub fn x(qubit: usize) -> Self {
        Self { kind: GateKind::PauliX, angle: R::zero(), qubit }
    }

    pub fn rx(qubit: usize, theta: R) -> Self {
        Self { kind: GateKind::Rx, angle: theta, qubit }
    }

    pub fn rz(qubit: usize, theta: R) -> Self {
        Self { kind: GateKind::Rz, angle: theta, qubit }
    }

    pub fn phase(qubit: usize, phi: R) -> Self {
        Self { kind: GateKind::Phase, angle: phi, qubit }
    }

    /// Row-major 2x2 unitary in the `{|0>, |1>}` basis.
    pub fn matrix(&self) -> [[Complex<R>; 2]; 2] {
        let zero = Complex::new(R::zero(), R::zero());
        let one = Complex::new(R::one(), R::zero());
        let half = self.angle / R::lit(2.0);
        match self.kind {
            GateKind::Hadamard => {
                let s = Complex::new(R::FRAC_1_SQRT_2(), R::zero());
                [[s, s], [s, -s]]
            }
            GateKind::PauliX => [[zero, one], [one, zero]],
            GateKind::Rx => {
                let c = Complex::new(half.cos(), R::zero());
                let s = Complex::new(R::zero(), -half.sin());
                [[c, s], [s, c]]
            }
            GateKind::Rz => [[Complex::from_polar(R::one(), -half), zero], [zero, Complex::from_polar(R::one(), half)]],
            GateKind::Phase => [[one, zero], [zero, Complex::from_polar(R::one(), self.angle)]],
        }
    }
}
