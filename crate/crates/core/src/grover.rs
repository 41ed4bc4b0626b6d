//! Feasible-subspace machinery for Grover-mixer QAOA.
//!
//! The mixer is the rank-one operator `H_M = |F><F|` over an explicit set `F`
//! of valid basis states, so `e^{-iβ H_M} = I - (1 - e^{-iβ}) |F><F|`. It is
//! applied matrix-free; the gate-level form is provided for the full space only.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sim::{check_capacity, max_qubits, Gate1Q, Statevector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeasibleSource {
    Explicit,
    OneHot,
    Predicate,
}

/// Sorted, duplicate-free, non-empty set of valid basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleSet {
    n: usize,
    indices: Vec<usize>,
    source: FeasibleSource,
}

impl FeasibleSet {
    pub fn new(n: usize, mut indices: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewQubits { min: 1, got: 0 });
        }
        check_capacity("feasible set", n, max_qubits())?;
        indices.sort_unstable();
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!("duplicate feasible index {}", w[0])));
        }
        match indices.last() {
            None => return Err(Error::Infeasible),
            Some(&x) if x >> n != 0 => {
                return Err(Error::InvalidArgument(format!("index {x} out of range for {n} qubits")))
            }
            _ => {}
        }
        Ok(Self { n, indices, source: FeasibleSource::Explicit })
    }

    /// Hamming-weight-one strings `{2^i}`.
    pub fn one_hot(n: usize) -> Result<Self> {
        let mut set = Self::new(n, (0..n).map(|i| 1 << i).collect())?;
        set.source = FeasibleSource::OneHot;
        Ok(set)
    }

    /// Every `x < 2^n` accepted by `predicate`, ascending.
    pub fn enumerate(n: usize, predicate: impl Fn(usize) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewQubits { min: 1, got: 0 });
        }
        check_capacity("feasible enumeration", n, max_qubits())?;
        let indices: Vec<usize> = (0..1usize << n).filter(|&x| predicate(x)).collect();
        if indices.is_empty() {
            return Err(Error::Infeasible);
        }
        Ok(Self { n, indices, source: FeasibleSource::Predicate })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn source(&self) -> FeasibleSource {
        self.source
    }

    pub fn contains(&self, x: usize) -> bool {
        self.indices.binary_search(&x).is_ok()
    }

    /// `|F> = |F|^{-1/2} Σ_{x∈F} |x>`.
    pub fn uniform_state<R: Real>(&self) -> Result<Statevector<R>> {
        let mut state = Statevector::new(self.n)?;
        let amp = Complex::new(R::one() / R::lit(self.len() as f64).sqrt(), R::zero());
        let amps = state.amplitudes_mut();
        amps[0] = Complex::new(R::zero(), R::zero());
        for &x in &self.indices {
            amps[x] = amp;
        }
        Ok(state)
    }

    /// Header `n=<int>`, then one decimal index per line, ascending.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for x in &self.indices {
            let _ = writeln!(out, "{x}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut n = None;
        let mut indices = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match n {
                None => {
                    let rest =
                        line.strip_prefix("n=").ok_or_else(|| Error::parse(lineno, "expected header `n=<int>`"))?;
                    n = Some(
                        rest.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::parse(lineno, format!("bad qubit count {rest:?}")))?,
                    );
                }
                Some(n) => {
                    let x: usize =
                        line.parse().map_err(|_| Error::parse(lineno, format!("bad basis index {line:?}")))?;
                    if x >> n != 0 {
                        return Err(Error::parse(lineno, format!("index {x} out of range for {n} qubits")));
                    }
                    if indices.last().is_some_and(|&prev| prev >= x) {
                        return Err(Error::parse(lineno, "indices must be strictly ascending"));
                    }
                    indices.push(x);
                }
            }
        }
        let n = n.ok_or_else(|| Error::parse(0, "missing header `n=<int>`"))?;
        Self::new(n, indices)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

/// `|ψ> ← |ψ> - (1 - e^{-iβ}) <F|ψ> |F>`.
pub fn apply_grover_mixer<R: Real>(state: &mut Statevector<R>, feasible: &FeasibleSet, beta: R) -> Result<()> {
    if state.n() != feasible.n() {
        return Err(Error::DimensionMismatch { expected: state.n(), got: feasible.n() });
    }
    let norm = R::one() / R::lit(feasible.len() as f64).sqrt();
    let amps = state.amplitudes_mut();
    let overlap = feasible.indices().iter().fold(Complex::new(R::zero(), R::zero()), |acc, &x| acc + amps[x]) * norm;
    let factor = Complex::new(R::one(), R::zero()) - Complex::from_polar(R::one(), -beta);
    let delta = factor * overlap * norm;
    for &x in feasible.indices() {
        amps[x] -= delta;
    }
    Ok(())
}

/// Gate-level Grover mixer for `F = {0,1}^n` (`U_S = H^{⊗n}`): Hadamards,
/// X on every qubit, an (n-1)-controlled `Phase(-β)` on the last qubit, then
/// the X and Hadamard layers again.
pub fn grover_mixer_circuit_full_space<R: Real>(state: &mut Statevector<R>, beta: R) -> Result<()> {
    let n = state.n();
    if n < 2 {
        return Err(Error::TooFewQubits { min: 2, got: n });
    }
    let layer =
        |s: &mut Statevector<R>, g: fn(usize) -> Gate1Q<R>| -> Result<()> { (0..n).try_for_each(|q| s.apply_1q(g(q))) };
    layer(state, Gate1Q::h)?;
    layer(state, Gate1Q::x)?;
    let controls: Vec<usize> = (0..n - 1).collect();
    state.apply_controlled_phase(&controls, n - 1, -beta)?;
    layer(state, Gate1Q::x)?;
    layer(state, Gate1Q::h)?;
    Ok(())
}
