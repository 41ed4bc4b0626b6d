//! Exact diagonalization of the interpolated Hamiltonian
//! `H(s) = (1 - s)(-Γ Σ X_i) + s H_C` for small systems: dense assembly, a
//! cyclic Jacobi eigensolver, spectral-gap schedules and an exact step-wise
//! evolution used as the Trotter-free reference.
//!
//! Every matrix here is real symmetric (the models have no `Y` terms), so the
//! eigensolver is real.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hamiltonian::IsingModel;
use crate::scalar::Real;
use crate::sim::{check_capacity, Statevector};

/// Largest qubit count [`assemble`] accepts.
pub const MAX_DENSE_QUBITS: usize = 12;
/// Largest qubit count [`exact_step_evolution`] accepts.
pub const MAX_EXACT_EVOLUTION_QUBITS: usize = 10;
/// Jacobi stops once the off-diagonal Frobenius norm falls below this.
pub const JACOBI_THRESHOLD: f64 = 1e-10;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues within this distance of `E_0` span the ground space.
pub const GROUND_SPACE_WINDOW: f64 = 1e-8;

const SYMMETRY_TOL: f64 = 1e-12;

/// Row-major real symmetric `2^n × 2^n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseHamiltonian<R> {
    n: usize,
    data: Vec<R>,
}

impl<R: Real> DenseHamiltonian<R> {
    /// Wraps a row-major matrix, checking size and symmetry.
    pub fn from_row_major(n: usize, data: Vec<R>) -> Result<Self> {
        check_capacity("dense Hamiltonian", n, MAX_DENSE_QUBITS)?;
        let dim = 1usize << n;
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, got: data.len() });
        }
        let h = Self { n, data };
        for i in 0..dim {
            for j in i + 1..dim {
                let dev = (h.get(i, j) - h.get(j, i)).abs().as_f64();
                if dev > SYMMETRY_TOL {
                    return Err(Error::NotHermitian { row: i, col: j, deviation: dev });
                }
            }
        }
        Ok(h)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn get(&self, row: usize, col: usize) -> R {
        self.data[row * self.dim() + col]
    }

    pub fn as_row_major(&self) -> &[R] {
        &self.data
    }

    pub fn trace(&self) -> R {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    /// `H ψ` for a complex vector.
    pub fn apply(&self, psi: &[Complex<R>]) -> Vec<Complex<R>> {
        let dim = self.dim();
        (0..dim)
            .map(|i| {
                let row = &self.data[i * dim..(i + 1) * dim];
                row.iter().zip(psi).fold(Complex::new(R::zero(), R::zero()), |acc, (&h, &a)| acc + a * h)
            })
            .collect()
    }
}

/// `(1 - s)(-Γ Σ X_i) + s · diag(ising)`.
pub fn assemble<R: Real>(ising: &IsingModel<R>, strength: R, s: R) -> Result<DenseHamiltonian<R>> {
    let n = ising.n();
    check_capacity("dense Hamiltonian", n, MAX_DENSE_QUBITS)?;
    if !s.is_finite() || !strength.is_finite() {
        return Err(Error::InvalidArgument("schedule value and field strength must be finite".into()));
    }
    let dim = 1usize << n;
    let diag = ising.diagonal()?;
    let mut data = vec![R::zero(); dim * dim];
    let off = -(R::one() - s) * strength;
    for x in 0..dim {
        data[x * dim + x] = s * diag[x];
        for q in 0..n {
            data[x * dim + (x ^ (1 << q))] = off;
        }
    }
    Ok(DenseHamiltonian { n, data })
}

/// Eigenvalues in ascending order with matching unit eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigen<R> {
    pub values: Vec<R>,
    /// `vectors[k]` belongs to `values[k]`.
    pub vectors: Vec<Vec<R>>,
    pub sweeps: usize,
}

fn off_norm<R: Real>(a: &[R], dim: usize) -> R {
    let mut sum = R::zero();
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                sum += a[i * dim + j] * a[i * dim + j];
            }
        }
    }
    sum.sqrt()
}

/// Full eigendecomposition by cyclic Jacobi rotations.
pub fn eigen_decompose<R: Real>(h: &DenseHamiltonian<R>) -> Result<Eigen<R>> {
    let dim = h.dim();
    let mut a = h.data.clone();
    let mut v = vec![R::zero(); dim * dim];
    for i in 0..dim {
        v[i * dim + i] = R::one();
    }
    // For f32 the absolute threshold is below machine resolution; scale it.
    let frob = a.iter().map(|&x| x * x).sum::<R>().sqrt();
    let tol = R::lit(JACOBI_THRESHOLD).max(R::lit(10.0) * R::epsilon() * frob);

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a, dim);
        if off < tol {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off.as_f64() });
        }
        sweeps += 1;
        for p in 0..dim {
            for q in p + 1..dim {
                let apq = a[p * dim + q];
                if apq == R::zero() {
                    continue;
                }
                let theta = (a[q * dim + q] - a[p * dim + p]) / (R::lit(2.0) * apq);
                let t = if theta.abs() > R::lit(1e150).min(R::max_value().sqrt()) {
                    R::one() / (R::lit(2.0) * theta)
                } else {
                    let sign = if theta >= R::zero() { R::one() } else { -R::one() };
                    sign / (theta.abs() + (theta * theta + R::one()).sqrt())
                };
                let c = R::one() / (t * t + R::one()).sqrt();
                let s = t * c;
                for k in 0..dim {
                    let (akp, akq) = (a[k * dim + p], a[k * dim + q]);
                    a[k * dim + p] = c * akp - s * akq;
                    a[k * dim + q] = s * akp + c * akq;
                }
                for k in 0..dim {
                    let (apk, aqk) = (a[p * dim + k], a[q * dim + k]);
                    a[p * dim + k] = c * apk - s * aqk;
                    a[q * dim + k] = s * apk + c * aqk;
                }
                for k in 0..dim {
                    let (vkp, vkq) = (v[k * dim + p], v[k * dim + q]);
                    v[k * dim + p] = c * vkp - s * vkq;
                    v[k * dim + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| a[i * dim + i].partial_cmp(&a[j * dim + j]).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[i * dim + i]).collect();
    let vectors = order.iter().map(|&col| (0..dim).map(|k| v[k * dim + col]).collect()).collect();
    Ok(Eigen { values, vectors, sweeps })
}

/// Ascending eigenvalues of `h`.
pub fn eigen_spectrum<R: Real>(h: &DenseHamiltonian<R>) -> Result<Vec<R>> {
    Ok(eigen_decompose(h)?.values)
}

/// Probability weight of `state` in the ground space of `h`, i.e. on every
/// eigenvector within [`GROUND_SPACE_WINDOW`] of the lowest eigenvalue.
pub fn ground_space_probability<R: Real>(h: &DenseHamiltonian<R>, state: &Statevector<R>) -> Result<R> {
    if state.dim() != h.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), got: state.dim() });
    }
    let eig = eigen_decompose(h)?;
    let e0 = eig.values[0];
    let window = R::lit(GROUND_SPACE_WINDOW);
    Ok(eig
        .values
        .iter()
        .zip(&eig.vectors)
        .take_while(|(&e, _)| e - e0 <= window)
        .map(|(_, vec)| {
            vec.iter()
                .zip(state.amplitudes())
                .fold(Complex::new(R::zero(), R::zero()), |acc, (&v, &a)| acc + a * v)
                .norm_sqr()
        })
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapSample<R> {
    pub s: R,
    pub e0: R,
    pub e1: R,
    pub gap: R,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapSchedule<R> {
    pub samples: Vec<GapSample<R>>,
    pub g_min: R,
}

impl<R: Real> GapSchedule<R> {
    /// CSV with header `s,E0,E1,gap`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,E0,E1,gap\n");
        for x in &self.samples {
            writeln!(out, "{},{},{},{}", x.s.as_f64(), x.e0.as_f64(), x.e1.as_f64(), x.gap.as_f64())
                .expect("writing to a String");
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim() == "s,E0,E1,gap" => {}
            _ => return Err(Error::parse(1, "expected header `s,E0,E1,gap`")),
        }
        let mut samples = Vec::new();
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let vals: Vec<R> = line
                .split(',')
                .map(|f| f.trim().parse::<R>().map_err(|_| Error::parse(i + 1, format!("bad number `{f}`"))))
                .collect::<Result<_>>()?;
            let [s, e0, e1, gap] = vals[..] else {
                return Err(Error::parse(i + 1, format!("expected 4 fields, got {}", vals.len())));
            };
            samples.push(GapSample { s, e0, e1, gap });
        }
        if samples.is_empty() {
            return Err(Error::parse(1, "no samples"));
        }
        let g_min = samples.iter().map(|x| x.gap).fold(R::infinity(), R::min);
        Ok(Self { samples, g_min })
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

/// The two lowest levels of `H(s)` at `s = k/(steps - 1)`, `k = 0..steps-1`.
pub fn gap_schedule<R: Real>(ising: &IsingModel<R>, strength: R, steps: usize) -> Result<GapSchedule<R>> {
    if steps < 2 {
        return Err(Error::InvalidArgument(format!("gap schedule needs at least 2 steps, got {steps}")));
    }
    if ising.n() == 0 {
        return Err(Error::TooFewQubits { min: 1, got: 0 });
    }
    let last = R::lit((steps - 1) as f64);
    let samples = (0..steps)
        .map(|k| {
            let s = R::lit(k as f64) / last;
            let levels = eigen_spectrum(&assemble(ising, strength, s)?)?;
            Ok(GapSample { s, e0: levels[0], e1: levels[1], gap: levels[1] - levels[0] })
        })
        .collect::<Result<Vec<_>>>()?;
    let g_min = samples.iter().map(|x| x.gap).fold(R::infinity(), R::min);
    Ok(GapSchedule { samples, g_min })
}

/// `ψ ← e^{-i H(s_k) δ} ψ` for `s_k = k/p`, `k = 0..p-1`, `δ = T/p`, each
/// exponential taken exactly through the eigendecomposition.
pub fn exact_step_evolution<R: Real>(
    ising: &IsingModel<R>,
    strength: R,
    p: usize,
    total_time: R,
    psi0: &Statevector<R>,
) -> Result<Statevector<R>> {
    check_capacity("exact evolution", ising.n(), MAX_EXACT_EVOLUTION_QUBITS)?;
    if psi0.n() != ising.n() {
        return Err(Error::DimensionMismatch { expected: ising.n(), got: psi0.n() });
    }
    if p == 0 || !(total_time > R::zero()) {
        return Err(Error::InvalidArgument("need p >= 1 and a positive total time".into()));
    }
    let delta = total_time / R::lit(p as f64);
    let mut psi = psi0.amplitudes().to_vec();
    for k in 0..p {
        let s = R::lit(k as f64) / R::lit(p as f64);
        let eig = eigen_decompose(&assemble(ising, strength, s)?)?;
        psi = apply_exponential(&eig, &psi, delta);
    }
    Statevector::from_amplitudes(psi)
}

/// `V e^{-iΛt} Vᵀ ψ`.
fn apply_exponential<R: Real>(eig: &Eigen<R>, psi: &[Complex<R>], t: R) -> Vec<Complex<R>> {
    let mut out = vec![Complex::new(R::zero(), R::zero()); psi.len()];
    for (lambda, vec) in eig.values.iter().zip(&eig.vectors) {
        let coeff = vec.iter().zip(psi).fold(Complex::new(R::zero(), R::zero()), |acc, (&v, &a)| acc + a * v);
        let coeff = coeff * Complex::from_polar(R::one(), -*lambda * t);
        for (o, &v) in out.iter_mut().zip(vec) {
            *o += coeff * v;
        }
    }
    out
}

/// `sqrt(1 - |<a|b>|²)`, insensitive to global phase.
pub fn state_distance<R: Real>(a: &Statevector<R>, b: &Statevector<R>) -> Result<R> {
    let f = a.inner_product(b)?.norm_sqr();
    Ok((R::one() - f).max(R::zero()).sqrt())
}
