use std::collections::BTreeMap;

use super::IsingModel;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Polynomial over binary variables `x_i ∈ {0, 1}`.
///
/// Keys are sorted index sets; the empty set holds the constant. Since
/// `x_i² = x_i`, repeated indices in a monomial collapse.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryPolynomial<R> {
    n: usize,
    terms: BTreeMap<Vec<usize>, R>,
}

impl<R: Real> BinaryPolynomial<R> {
    pub fn new(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, R> {
        &self.terms
    }

    /// Adds `coeff · Π_{i ∈ indices} x_i`, merging with an existing monomial.
    pub fn add_term(&mut self, indices: &[usize], coeff: R) -> Result<()> {
        if !coeff.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite coefficient {coeff}")));
        }
        let mut key = indices.to_vec();
        key.sort_unstable();
        key.dedup();
        if let Some(&i) = key.last() {
            if i >= self.n {
                return Err(Error::QubitOutOfRange { index: i, n: self.n });
            }
        }
        let merged = self.terms.get(&key).copied().unwrap_or_else(R::zero) + coeff;
        if merged == R::zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, merged);
        }
        Ok(())
    }

    pub fn with_term(mut self, indices: &[usize], coeff: R) -> Result<Self> {
        self.add_term(indices, coeff)?;
        Ok(self)
    }

    /// Value at the assignment `x_i = bit i of x`.
    pub fn eval(&self, x: usize) -> R {
        self.terms.iter().filter(|(s, _)| s.iter().all(|&i| (x >> i) & 1 == 1)).map(|(_, &c)| c).sum()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Substitutes `x_i = (1 - z_i)/2` and expands.
    ///
    /// A monomial over `S` becomes `2^{-|S|} Σ_{T ⊆ S} (-1)^{|T|} Π_{i∈T} z_i`;
    /// like terms are merged. The coefficients are dyadic multiples of the
    /// inputs, so no rounding is introduced beyond the final sums.
    pub fn to_ising(&self) -> IsingModel<R> {
        let mut model = IsingModel::new(self.n);
        for (set, &c) in &self.terms {
            let k = set.len();
            let scale = c / R::lit((1u64 << k) as f64);
            for subset in 0u64..(1 << k) {
                let members: Vec<usize> = (0..k).filter(|b| subset >> b & 1 == 1).map(|b| set[b]).collect();
                let sign = if members.len().is_multiple_of(2) { scale } else { -scale };
                model.add_term(&members, sign).expect("indices validated on insertion");
            }
        }
        model
    }
}
