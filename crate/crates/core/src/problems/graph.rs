use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Simple undirected graph; edges are stored as `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n_vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n_vertices: usize) -> Self {
        Self { n_vertices, edges: BTreeSet::new() }
    }

    pub fn from_edges(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n_vertices);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("cycle needs n >= 3")
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for i in 0..n {
            for j in i + 1..n {
                g.edges.insert((i, j));
            }
        }
        g
    }

    /// Inserts `{u, v}`; self-loops, duplicates and out-of-range endpoints are
    /// rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::InvalidArgument(format!("self-loop on vertex {u}")));
        }
        let e = (u.min(v), u.max(v));
        if e.1 >= self.n_vertices {
            return Err(Error::InvalidArgument(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n_vertices
            )));
        }
        if !self.edges.insert(e) {
            return Err(Error::InvalidArgument(format!("duplicate edge ({}, {})", e.0, e.1)));
        }
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Number of edges whose endpoints get different bits in `bits`
    /// (`bits[i]` is the side of vertex `i`).
    pub fn cut_value(&self, bits: &[bool]) -> Result<usize> {
        if bits.len() != self.n_vertices {
            return Err(Error::DimensionMismatch { expected: self.n_vertices, got: bits.len() });
        }
        Ok(self.edges().filter(|&(i, j)| bits[i] != bits[j]).count())
    }

    /// Cut value of the partition encoded by basis index `x` (bit `i` = vertex `i`).
    pub fn cut_of_index(&self, x: usize) -> usize {
        self.edges().filter(|&(i, j)| (x >> i ^ x >> j) & 1 == 1).count()
    }

    /// Cut value of every basis index, the `+cut` reporting diagonal.
    pub fn cut_diagonal(&self) -> Vec<usize> {
        (0..1usize << self.n_vertices).map(|x| self.cut_of_index(x)).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p {} {}\n", self.n_vertices, self.edges.len());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses `p <n_vertices> <n_edges>` followed by one `u v` pair per line
    /// (0-indexed). `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut graph: Option<(Graph, usize)> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match (&mut graph, fields.as_slice()) {
                (None, ["p", n, m]) => {
                    let n = parse_usize(n, lineno)?;
                    let m = parse_usize(m, lineno)?;
                    graph = Some((Graph::new(n), m));
                }
                (None, _) => return Err(Error::parse(lineno, "expected header `p <n_vertices> <n_edges>`")),
                (Some((g, _)), [u, v]) => {
                    let (u, v) = (parse_usize(u, lineno)?, parse_usize(v, lineno)?);
                    g.add_edge(u, v).map_err(|e| Error::parse(lineno, e.to_string()))?;
                }
                (Some(_), _) => return Err(Error::parse(lineno, "expected an edge `u v`")),
            }
        }
        let (g, declared) = graph.ok_or_else(|| Error::parse(0, "missing header line"))?;
        if g.n_edges() != declared {
            return Err(Error::parse(0, format!("header declares {declared} edges but {} were listed", g.n_edges())));
        }
        Ok(g)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

fn parse_usize(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::parse(line, format!("expected a non-negative integer, got {s:?}")))
}

/// G(n, prob): each pair is kept independently with probability `prob`.
///
/// One uniform draw per pair from a ChaCha8 stream seeded with `seed`, pairs
/// visited in the order (0,1), (0,2), ..., (n-2, n-1).
pub fn erdos_renyi(n: usize, prob: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&prob) {
        return Err(Error::InvalidArgument(format!("edge probability {prob} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < prob {
                g.edges.insert((i, j));
            }
        }
    }
    Ok(g)
}
