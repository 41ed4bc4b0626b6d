use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{bitstring, parse_bitstring, Statevector};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Finite-shot measurement histogram keyed by basis index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotCounts {
    pub n: usize,
    pub counts: BTreeMap<usize, u64>,
    pub shots: u64,
    pub seed: u64,
}

#[derive(Serialize, Deserialize)]
struct ShotCountsJson {
    n: usize,
    shots: u64,
    seed: u64,
    counts: BTreeMap<String, u64>,
}

impl ShotCounts {
    pub fn to_json(&self) -> String {
        let file = ShotCountsJson {
            n: self.n,
            shots: self.shots,
            seed: self.seed,
            counts: self.counts.iter().map(|(&x, &c)| (bitstring(x, self.n), c)).collect(),
        };
        serde_json::to_string_pretty(&file).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: ShotCountsJson = serde_json::from_str(s)?;
        let mut counts = BTreeMap::new();
        for (k, v) in file.counts {
            if k.len() != file.n {
                return Err(Error::InvalidArgument(format!("bitstring {k} has wrong length")));
            }
            counts.insert(parse_bitstring(&k)?, v);
        }
        let out = Self { n: file.n, counts, shots: file.shots, seed: file.seed };
        if out.counts.values().sum::<u64>() != out.shots {
            return Err(Error::InvalidArgument("counts do not sum to shots".into()));
        }
        Ok(out)
    }

    /// Most frequent outcome, lowest index on ties.
    pub fn mode(&self) -> Option<usize> {
        self.counts.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))).map(|(&x, _)| x)
    }
}

impl<R: Real> Statevector<R> {
    /// Draws `shots` i.i.d. outcomes from [`Statevector::probabilities`].
    /// Deterministic for a given seed.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<ShotCounts> {
        if shots == 0 {
            return Err(Error::InvalidArgument("shots must be at least 1".into()));
        }
        let mut cumulative = Vec::with_capacity(self.dim());
        let mut acc = 0.0f64;
        for p in self.probabilities() {
            acc += p.as_f64();
            cumulative.push(acc);
        }
        let total = acc;
        let last = cumulative.len() - 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = BTreeMap::new();
        for _ in 0..shots {
            let u = rng.gen::<f64>() * total;
            let x = cumulative.partition_point(|&c| c <= u).min(last);
            *counts.entry(x).or_insert(0) += 1;
        }
        Ok(ShotCounts { n: self.n(), counts, shots, seed })
    }
}
