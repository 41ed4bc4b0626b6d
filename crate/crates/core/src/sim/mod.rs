//! Dense statevector simulator.
//!
//! Basis index convention: bit `i` of a basis index is the state of qubit `i`,
//! so qubit 0 is the least-significant bit. Bitstrings are printed the usual
//! way, most-significant qubit first (`"0101"` is index 5).

mod gates;
mod sampling;
mod state;

pub use gates::{Gate1Q, GateKind};
pub use sampling::ShotCounts;
pub use state::Statevector;

use crate::error::{Error, Result};

/// Default upper bound on the qubit count (2^24 amplitudes).
pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Environment variable overriding [`DEFAULT_MAX_QUBITS`].
pub const MAX_QUBITS_ENV: &str = "QFORGE_MAX_QUBITS";

/// Capacity cap in effect, honoring `QFORGE_MAX_QUBITS` when it parses.
pub fn max_qubits() -> usize {
    std::env::var(MAX_QUBITS_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_QUBITS)
}

pub(crate) fn check_capacity(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::Capacity { what, requested: n, cap });
    }
    Ok(())
}

/// Formats a basis index as an `n`-character bitstring, qubit `n-1` first.
pub fn bitstring(index: usize, n: usize) -> String {
    format!("{index:0n$b}")
}

/// Parses a bitstring produced by [`bitstring`].
pub fn parse_bitstring(s: &str) -> Result<usize> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::InvalidArgument(format!("not a bitstring: {s:?}")));
    }
    usize::from_str_radix(s, 2).map_err(|e| Error::InvalidArgument(e.to_string()))
}

/// Spin value `s_i = 1 - 2 x_i` of qubit `i` in basis state `x`.
#[inline]
pub fn spin(x: usize, i: usize) -> i32 {
    1 - 2 * ((x >> i) & 1) as i32
}
