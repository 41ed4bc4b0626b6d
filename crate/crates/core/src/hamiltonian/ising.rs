use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use super::canonical_indices;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sim::{check_capacity, max_qubits};

/// Diagonal cost Hamiltonian over `n` spins:
///
/// `E(s) = offset + Σ h_i s_i + Σ J_ij s_i s_j + Σ_{|S|≥3} J_S Π_{i∈S} s_i`
///
/// Coefficients are stored with their signs as given; no implicit minus is
/// applied. Spin `s_i = 1 - 2 x_i`, so bit value 0 is spin up.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingModel<R> {
    n: usize,
    offset: R,
    /// Non-empty sorted index sets to coefficients; zero entries are dropped.
    terms: BTreeMap<Vec<usize>, R>,
}

impl<R: Real> IsingModel<R> {
    pub fn new(n: usize) -> Self {
        Self { n, offset: R::zero(), terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn offset(&self) -> R {
        self.offset
    }

    /// Adds `coeff · Π_{i∈indices} Z_i`; an empty index list adds to the offset.
    pub fn add_term(&mut self, indices: &[usize], coeff: R) -> Result<()> {
        if !coeff.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite coefficient {coeff}")));
        }
        let key = canonical_indices(indices, self.n)?;
        if key.is_empty() {
            self.offset += coeff;
            return Ok(());
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

    /// Interaction terms (everything but the offset) in lexicographic order of
    /// their index sets.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], R)> + '_ {
        self.terms.iter().map(|(k, &c)| (k.as_slice(), c))
    }

    pub fn field(&self, i: usize) -> R {
        self.coupling(&[i])
    }

    /// Coefficient of the term on `indices` (any order), zero if absent.
    pub fn coupling(&self, indices: &[usize]) -> R {
        let mut key = indices.to_vec();
        key.sort_unstable();
        if key.is_empty() {
            return self.offset;
        }
        self.terms.get(&key).copied().unwrap_or_else(R::zero)
    }

    /// Linear fields `h_i` as a dense vector.
    pub fn fields(&self) -> Vec<R> {
        (0..self.n).map(|i| self.field(i)).collect()
    }

    /// Pairwise couplings `J_ij`, `i < j`.
    pub fn pair_couplings(&self) -> impl Iterator<Item = ((usize, usize), R)> + '_ {
        self.terms.iter().filter(|(k, _)| k.len() == 2).map(|(k, &c)| ((k[0], k[1]), c))
    }

    /// Couplings over three or more spins.
    pub fn higher_order_couplings(&self) -> impl Iterator<Item = (&[usize], R)> + '_ {
        self.terms().filter(|(k, _)| k.len() >= 3)
    }

    /// Size of the largest interaction, 0 for a constant model.
    pub fn order(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    /// Classical energy of a `±1` spin assignment.
    pub fn energy(&self, spins: &[i8]) -> Result<R> {
        if spins.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: spins.len() });
        }
        if let Some(&bad) = spins.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument(format!("spin value {bad} is not +1 or -1")));
        }
        let mut total = self.offset;
        for (set, c) in self.terms() {
            let product: i8 = set.iter().map(|&i| spins[i]).product();
            total += if product > 0 { c } else { -c };
        }
        Ok(total)
    }

    /// Energy of basis state `x` (spin `s_i = 1 - 2·bit_i(x)`).
    pub fn energy_of_index(&self, x: usize) -> R {
        self.terms.iter().fold(self.offset, |acc, (set, &c)| {
            let mask = set.iter().fold(0usize, |m, &i| m | 1 << i);
            if (x & mask).count_ones().is_multiple_of(2) {
                acc + c
            } else {
                acc - c
            }
        })
    }

    /// The `2^n` diagonal of the cost Hamiltonian.
    pub fn diagonal(&self) -> Result<Vec<R>> {
        check_capacity("diagonal", self.n, max_qubits())?;
        let dim = 1usize << self.n;
        let mut diag = vec![self.offset; dim];
        for (set, &c) in &self.terms {
            let mask = set.iter().fold(0usize, |m, &i| m | 1 << i);
            for (x, d) in diag.iter_mut().enumerate() {
                if (x & mask).count_ones() % 2 == 0 {
                    *d += c;
                } else {
                    *d -= c;
                }
            }
        }
        Ok(diag)
    }

    /// Divides every coefficient and the offset by `bound`.
    pub fn rescale(&self, bound: R) -> Result<Self> {
        if !(bound > R::zero()) || !bound.is_finite() {
            return Err(Error::InvalidArgument(format!("rescale bound must be positive, got {bound}")));
        }
        Ok(self.map_coefficients(|c| c / bound))
    }

    pub fn scaled(&self, factor: R) -> Self {
        self.map_coefficients(|c| c * factor)
    }

    fn map_coefficients(&self, f: impl Fn(R) -> R) -> Self {
        let terms = self.terms.iter().map(|(k, &c)| (k.clone(), f(c))).filter(|(_, c)| *c != R::zero()).collect();
        Self { n: self.n, offset: f(self.offset), terms }
    }

    /// `|offset| + Σ |coefficients|`, an upper bound on `max_x |diag(x)|`.
    pub fn eigenvalue_bound(&self) -> R {
        self.terms.values().fold(self.offset.abs(), |acc, c| acc + c.abs())
    }

    /// Serializes to the line format read by [`IsingModel::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        if self.offset != R::zero() {
            let _ = writeln!(out, "{}", self.offset);
        }
        for (set, c) in self.terms() {
            let _ = write!(out, "{c}");
            for i in set {
                let _ = write!(out, " {i}");
            }
            out.push('\n');
        }
        out
    }

    /// Parses one term per line: a coefficient followed by its spin indices
    /// (none for the offset). `#` starts a comment. An optional `n=<int>`
    /// line fixes the spin count; otherwise it is the largest index plus one.
    /// Repeated terms are summed.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut declared_n = None;
        let mut parsed: Vec<(usize, R, Vec<usize>)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("n=") {
                if declared_n.is_some() || !parsed.is_empty() {
                    return Err(Error::parse(lineno, "n= header must come first and only once"));
                }
                let n =
                    rest.trim().parse::<usize>().map_err(|e| Error::parse(lineno, format!("bad spin count: {e}")))?;
                declared_n = Some(n);
                continue;
            }
            let mut fields = line.split_whitespace();
            let coeff_str = fields.next().expect("non-empty line");
            let coeff: R =
                coeff_str.parse().map_err(|_| Error::parse(lineno, format!("bad coefficient {coeff_str:?}")))?;
            if !coeff.is_finite() {
                return Err(Error::parse(lineno, "coefficient must be finite"));
            }
            let indices = fields
                .map(|f| f.parse::<usize>().map_err(|_| Error::parse(lineno, format!("bad index {f:?}"))))
                .collect::<Result<Vec<_>>>()?;
            parsed.push((lineno, coeff, indices));
        }
        let inferred = parsed.iter().flat_map(|(_, _, ix)| ix.iter().map(|&i| i + 1)).max().unwrap_or(0);
        let n = declared_n.unwrap_or(inferred);
        if n == 0 {
            return Err(Error::parse(0, "model has no spins"));
        }
        let mut model = Self::new(n);
        for (lineno, coeff, indices) in parsed {
            model.add_term(&indices, coeff).map_err(|e| Error::parse(lineno, e.to_string()))?;
        }
        Ok(model)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> IsingModel<f64> {
        // Cut-count form: Σ_edges ½(1 - Z_i Z_j).
        let mut m = IsingModel::new(4);
        for (i, j) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
            m.add_term(&[], 0.5).unwrap();
            m.add_term(&[i, j], -0.5).unwrap();
        }
        m
    }

    #[test]
    fn energy_examples() {
        let m = IsingModel::new(2).with_term(&[0, 1], -1.0).unwrap();
        assert_eq!(m.energy(&[1, 1]).unwrap(), -1.0);
        let m = IsingModel::<f64>::new(3).with_term(&[], 3.5).unwrap();
        assert_eq!(m.energy(&[1, -1, 1]).unwrap(), 3.5);
        assert!(m.energy(&[1, 1]).is_err());
        assert!(m.energy(&[1, 0, 1]).is_err());
    }

    #[test]
    fn energy_agrees_with_diagonal() {
        let m = IsingModel::new(4)
            .with_term(&[0], 0.3)
            .unwrap()
            .with_term(&[3], -1.1)
            .unwrap()
            .with_term(&[1, 2], 0.7)
            .unwrap()
            .with_term(&[0, 2, 3], -0.45)
            .unwrap()
            .with_term(&[], 0.2)
            .unwrap();
        let diag = m.diagonal().unwrap();
        for x in 0..16 {
            let spins: Vec<i8> = (0..4).map(|i| 1 - 2 * ((x >> i) & 1) as i8).collect();
            assert_eq!(m.energy(&spins).unwrap(), diag[x]);
            assert_eq!(m.energy_of_index(x), diag[x]);
        }
    }

    #[test]
    fn diagonal_examples() {
        let m = IsingModel::new(1).with_term(&[0], 1.0).unwrap();
        assert_eq!(m.diagonal().unwrap(), vec![1.0, -1.0]);
        let m = IsingModel::new(2).with_term(&[0, 1], 1.0).unwrap();
        assert_eq!(m.diagonal().unwrap(), vec![1.0, -1.0, -1.0, 1.0]);
        let diag = c4().diagonal().unwrap();
        assert_eq!(diag[0b0101], 4.0);
        assert_eq!(diag[0b1010], 4.0);
        assert_eq!(diag[0], 0.0);
    }

    #[test]
    fn bounds_and_rescaling() {
        let m = IsingModel::new(2)
            .with_term(&[0], 1.0)
            .unwrap()
            .with_term(&[1], -2.0)
            .unwrap()
            .with_term(&[0, 1], 3.0)
            .unwrap();
        assert_eq!(m.eigenvalue_bound(), 6.0);
        assert_eq!(IsingModel::<f64>::new(3).eigenvalue_bound(), 0.0);

        let c4 = c4();
        assert_eq!(c4.eigenvalue_bound(), 4.0);
        let scaled = c4.rescale(4.0).unwrap();
        assert_eq!(scaled.diagonal().unwrap()[0b0101], 1.0);
        assert!(c4.rescale(0.0).is_err());
        assert!(c4.rescale(-1.0).is_err());
    }

    #[test]
    fn rejects_bad_terms() {
        let mut m = IsingModel::<f64>::new(3);
        assert!(matches!(m.add_term(&[1, 1], 1.0), Err(Error::DuplicateQubit(1))));
        assert!(m.add_term(&[0, 3], 1.0).is_err());
        m.add_term(&[2, 0], 1.0).unwrap();
        m.add_term(&[0, 2], -1.0).unwrap();
        assert!(m.is_constant());
    }

    #[test]
    fn text_round_trip_and_errors() {
        let m = IsingModel::new(5)
            .with_term(&[], -2.0)
            .unwrap()
            .with_term(&[1], 0.1)
            .unwrap()
            .with_term(&[0, 4, 2], -0.125)
            .unwrap();
        let back = IsingModel::<f64>::from_text(&m.to_text()).unwrap();
        assert_eq!(back, m);

        let parsed = IsingModel::<f64>::from_text("# comment\n1.5 2 0\n-1 1  # tail\n0.25\n").unwrap();
        assert_eq!(parsed.n(), 3);
        assert_eq!(parsed.coupling(&[0, 2]), 1.5);
        assert_eq!(parsed.field(1), -1.0);
        assert_eq!(parsed.offset(), 0.25);

        let err = IsingModel::<f64>::from_text("1 0\nabc 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = IsingModel::<f64>::from_text("n=2\n1 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(IsingModel::<f64>::from_text("n=2\n1 5\n").is_err());
    }
}
