//! Problem instances named on the command line.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use qforge::problems::erdos_renyi;
use qforge::{maxcut_ising, CostOptions, FeasibleSet, Graph, IsingModel, MixerSpec, QaoaProblem};
use serde::Serialize;

#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    /// MaxCut instance in the `p <n> <m>` edge-list format.
    #[arg(long, group = "instance")]
    pub graph: Option<PathBuf>,
    /// Ising model in the term-list format.
    #[arg(long, group = "instance")]
    pub ising: Option<PathBuf>,
    /// Generate a G(n, prob) MaxCut instance instead of reading a file.
    #[arg(long, group = "instance", value_name = "N")]
    pub random: Option<usize>,
    /// Edge probability for `--random`.
    #[arg(long, default_value_t = 0.5)]
    pub prob: f64,
    /// Generator seed for `--random`.
    #[arg(long, default_value_t = 0)]
    pub instance_seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct MixerArgs {
    /// `transverse` (-Γ Σ X) or `grover` (Γ |F><F|, needs --feasible).
    #[arg(long, default_value = "transverse")]
    pub mixer: String,
    /// Feasible-set file for the Grover mixer.
    #[arg(long)]
    pub feasible: Option<PathBuf>,
    /// Mixer strength Γ.
    #[arg(long, default_value_t = 1.0)]
    pub mixer_strength: f64,
}

impl MixerArgs {
    pub fn spec(&self, n: usize) -> Result<MixerSpec<f64>> {
        let spec = match self.mixer.as_str() {
            "transverse" => {
                if self.feasible.is_some() {
                    bail!("--feasible only applies to --mixer grover");
                }
                MixerSpec::transverse_field()
            }
            "grover" => {
                let path = self.feasible.as_ref().context("--mixer grover needs --feasible <file>")?;
                let set = FeasibleSet::load(path).with_context(|| format!("reading {}", path.display()))?;
                if set.n() != n {
                    bail!("feasible set is over {} qubits but the instance has {n}", set.n());
                }
                MixerSpec::grover(set)
            }
            other => bail!("unknown mixer {other:?}; expected transverse or grover"),
        };
        Ok(spec.with_strength(self.mixer_strength))
    }
}

/// Where the model came from, echoed into reports.
#[derive(Debug, Clone, Serialize)]
pub struct Descriptor {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<usize>,
}

pub struct Instance {
    pub descriptor: Descriptor,
    pub graph: Option<Graph>,
    pub model: IsingModel<f64>,
}

impl Instance {
    pub fn load(args: &InstanceArgs) -> Result<Self> {
        if let Some(path) = &args.graph {
            let graph = Graph::load(path).with_context(|| format!("reading graph {}", path.display()))?;
            return Ok(Self::from_graph(graph, Some(path.display().to_string()), None));
        }
        if let Some(path) = &args.ising {
            let model = IsingModel::load(path).with_context(|| format!("reading Ising model {}", path.display()))?;
            let descriptor = Descriptor {
                kind: "ising",
                path: Some(path.display().to_string()),
                generator: None,
                n: model.n(),
                edges: None,
            };
            return Ok(Self { descriptor, graph: None, model });
        }
        if let Some(n) = args.random {
            let graph = erdos_renyi(n, args.prob, args.instance_seed)?;
            let generator = format!("erdos-renyi n={n} prob={} seed={}", args.prob, args.instance_seed);
            return Ok(Self::from_graph(graph, None, Some(generator)));
        }
        bail!("no instance given; use --graph, --ising or --random")
    }

    fn from_graph(graph: Graph, path: Option<String>, generator: Option<String>) -> Self {
        let model = maxcut_ising(&graph);
        let descriptor =
            Descriptor { kind: "maxcut", path, generator, n: graph.n_vertices(), edges: Some(graph.n_edges()) };
        Self { descriptor, graph: Some(graph), model }
    }

    pub fn n(&self) -> usize {
        self.model.n()
    }

    /// MaxCut dynamics are divided by the edge count, other models by their
    /// eigenvalue bound.
    pub fn problem(&self, rescale: bool, allow_phase_wrap: bool) -> Result<QaoaProblem<f64>> {
        let problem = match (&self.graph, rescale) {
            (_, false) => QaoaProblem::new(self.model.clone())?,
            (Some(g), true) if g.n_edges() > 0 => QaoaProblem::rescaled(self.model.clone(), g.n_edges() as f64)?,
            _ => QaoaProblem::auto_rescaled(self.model.clone())?,
        };
        Ok(problem.with_options(CostOptions { allow_phase_wrap, ..CostOptions::default() }))
    }

    /// Energy straight from the spin assignment of `x`.
    pub fn energy(&self, x: usize) -> Result<f64> {
        let spins: Vec<i8> = (0..self.n()).map(|i| qforge::sim::spin(x, i) as i8).collect();
        Ok(self.model.energy(&spins)?)
    }

    pub fn cut(&self, x: usize) -> Result<Option<usize>> {
        match &self.graph {
            Some(g) => {
                let bits: Vec<bool> = (0..self.n()).map(|i| x >> i & 1 == 1).collect();
                Ok(Some(g.cut_value(&bits)?))
            }
            None => Ok(None),
        }
    }
}
