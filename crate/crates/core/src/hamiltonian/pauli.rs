use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sim::check_capacity;

/// Decomposition is `4^n · 2^n`; six qubits is the practical limit.
pub const MAX_PAULI_QUBITS: usize = 6;

const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_masks(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// `coefficient · P_{n-1} ⊗ ... ⊗ P_0`, with `ops[q]` acting on qubit `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString<R> {
    pub ops: Vec<Pauli>,
    pub coefficient: R,
}

impl<R: Real> PauliString<R> {
    /// Parses a label like `"IZZI"` (qubit 0 last).
    pub fn from_label(label: &str, coefficient: R) -> Result<Self> {
        let ops = label
            .chars()
            .rev()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::InvalidArgument(format!("unknown Pauli letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { ops, coefficient })
    }

    pub fn n(&self) -> usize {
        self.ops.len()
    }

    pub fn label(&self) -> String {
        self.ops.iter().rev().map(|p| p.letter()).collect()
    }

    /// Bit-flip and phase-flip masks; `Y` sets both.
    fn masks(&self) -> (usize, usize) {
        self.ops.iter().enumerate().fold((0, 0), |(xm, zm), (q, p)| match p {
            Pauli::I => (xm, zm),
            Pauli::X => (xm | 1 << q, zm),
            Pauli::Z => (xm, zm | 1 << q),
            Pauli::Y => (xm | 1 << q, zm | 1 << q),
        })
    }
}

impl<R: Real> fmt::Display for PauliString<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.coefficient, self.label())
    }
}

/// `<z ⊕ xmask| P |z>` for the string with the given masks:
/// `P = i^{#Y} X^{xmask} Z^{zmask}` so `P|z> = i^{#Y} (-1)^{|z ∧ zmask|} |z ⊕ xmask>`.
fn column_phase<R: Real>(xmask: usize, zmask: usize, z: usize) -> Complex<R> {
    let ys = (xmask & zmask).count_ones() + 2 * (z & zmask).count_ones();
    match ys % 4 {
        0 => Complex::new(R::one(), R::zero()),
        1 => Complex::new(R::zero(), R::one()),
        2 => Complex::new(-R::one(), R::zero()),
        _ => Complex::new(R::zero(), -R::one()),
    }
}

fn check_square<R>(h: &[Vec<Complex<R>>]) -> Result<usize> {
    let dim = h.len();
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("matrix dimension {dim} is not a power of two >= 2")));
    }
    if let Some(row) = h.iter().find(|r| r.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: row.len() });
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Expands a Hermitian matrix as `Σ_k h_k P_k` with `h_k = tr(P_k H) / 2^n`.
///
/// Strings whose coefficient is zero (below `1e-14` relative to the largest
/// entry) are omitted; order is by bit-flip mask, then phase-flip mask.
pub fn pauli_decompose<R: Real>(h: &[Vec<Complex<R>>]) -> Result<Vec<PauliString<R>>> {
    let n = check_square(h)?;
    check_capacity("Pauli decomposition", n, MAX_PAULI_QUBITS)?;
    let dim = 1usize << n;
    let tol = R::lit(HERMITIAN_TOL);
    let mut scale = R::zero();
    for r in 0..dim {
        for c in 0..dim {
            let dev = (h[r][c] - h[c][r].conj()).norm();
            if dev > tol {
                return Err(Error::NotHermitian { row: r, col: c, deviation: dev.as_f64() });
            }
            scale = scale.max(h[r][c].norm());
        }
    }
    let cutoff = R::lit(1e-14) * scale.max(R::one());
    let norm = R::lit(dim as f64);
    let mut out = Vec::new();
    for xmask in 0..dim {
        for zmask in 0..dim {
            // tr(P H) = Σ_z <z|P H|z> = Σ_z P[z][z ⊕ x] H[z ⊕ x][z]
            let trace = (0..dim).fold(Complex::new(R::zero(), R::zero()), |acc, z| {
                let w = z ^ xmask;
                acc + column_phase::<R>(xmask, zmask, w) * h[w][z]
            });
            let coeff = trace.re / norm;
            if coeff.abs() > cutoff {
                let ops = (0..n).map(|q| Pauli::from_masks(xmask >> q & 1 == 1, zmask >> q & 1 == 1)).collect();
                out.push(PauliString { ops, coefficient: coeff });
            }
        }
    }
    Ok(out)
}

/// Dense `Σ_k h_k P_k` on `n` qubits.
pub fn pauli_reconstruct<R: Real>(strings: &[PauliString<R>], n: usize) -> Result<Vec<Vec<Complex<R>>>> {
    check_capacity("Pauli reconstruction", n, MAX_PAULI_QUBITS)?;
    let dim = 1usize << n;
    let mut m = vec![vec![Complex::new(R::zero(), R::zero()); dim]; dim];
    for s in strings {
        if s.n() != n {
            return Err(Error::DimensionMismatch { expected: n, got: s.n() });
        }
        let (xmask, zmask) = s.masks();
        for z in 0..dim {
            m[z ^ xmask][z] += column_phase::<R>(xmask, zmask, z) * s.coefficient;
        }
    }
    Ok(m)
}
