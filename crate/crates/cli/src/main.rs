//! `qforge`: generate MaxCut instances, train QAOA, check gradients, scan
//! spectral gaps and sample trained circuits.

mod instance;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qforge::gradients::{finite_difference, qaoa_gradient_layer_shift, qaoa_gradient_per_gate};
use qforge::optimizers::minimize;
use qforge::problems::erdos_renyi;
use qforge::qaoa::{linear_ramp_params, qaoa_evolve, DEFAULT_P, DEFAULT_TOTAL_TIME};
use qforge::sim::bitstring;
use qforge::spectral::gap_schedule;
use qforge::{GradientMethod, OptimizerConfig, OptimizerMethod, QaoaParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use instance::{Descriptor, Instance, InstanceArgs, MixerArgs};

/// Tolerance `gradcheck` applies between per-gate shifts and finite differences.
const GRADCHECK_TOLERANCE: f64 = 1e-5;

#[derive(Parser)]
#[command(name = "qforge", version, about = "QAOA on a statevector simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a G(n, prob) random graph.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train QAOA from the linear ramp and write report, trajectory, params and probabilities.
    Solve(SolveArgs),
    /// Compare per-gate shift, layer shift and finite-difference gradients.
    Gradcheck(GradcheckArgs),
    /// Gap schedule of (1-s)(-Γ Σ X) + s H_C as CSV.
    Spectrum {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the circuit for saved parameters.
    Sample {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        mixer: MixerArgs,
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        scaling: ScalingArgs,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum OptimizerArg {
    Adam,
    Gd,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum GradientArg {
    /// Per-gate shift for the transverse mixer, finite differences for Grover.
    Auto,
    PerGate,
    FiniteDifference,
}

#[derive(Debug, Clone, Args)]
struct ScalingArgs {
    /// Evolve under the raw model instead of the rescaled one.
    #[arg(long)]
    no_rescale: bool,
    /// Skip the |γ| · bound < π check on the final evaluation.
    #[arg(long)]
    allow_phase_wrap: bool,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    mixer: MixerArgs,
    #[command(flatten)]
    scaling: ScalingArgs,
    #[arg(long, default_value_t = DEFAULT_P)]
    p: usize,
    /// Total annealing time of the linear-ramp start.
    #[arg(long = "total-time", default_value_t = DEFAULT_TOTAL_TIME)]
    total_time: f64,
    #[arg(long, default_value_t = qforge::optimizers::DEFAULT_MAX_STEPS)]
    steps: usize,
    #[arg(long, value_enum, default_value = "adam")]
    optimizer: OptimizerArg,
    #[arg(long, default_value_t = 0.01)]
    lr: f64,
    #[arg(long, value_enum, default_value = "auto")]
    gradient: GradientArg,
    /// Seeds the shots drawn for the best-bitstring report.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1024)]
    shots: u64,
    /// Rows in the report's probability table.
    #[arg(long, default_value_t = 10)]
    top_k: usize,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct GradcheckArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, default_value_t = 2)]
    p: usize,
    /// Seeds the random angles, drawn uniformly from [-1, 1].
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    mixer_strength: f64,
    #[arg(long, default_value_t = qforge::gradients::DEFAULT_FD_EPSILON)]
    fd_eps: f64,
    #[arg(long)]
    no_rescale: bool,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate { n, prob, seed, out } => {
            let graph = erdos_renyi(n, prob, seed)?;
            graph.save(&out).with_context(|| format!("writing {}", out.display()))?;
            eprintln!("wrote {} ({} vertices, {} edges)", out.display(), n, graph.n_edges());
        }
        Command::Solve(args) => solve(&args)?,
        Command::Gradcheck(args) => return gradcheck(&args),
        Command::Spectrum { instance, gamma, steps, out } => {
            let instance = Instance::load(&instance)?;
            let csv = gap_schedule(&instance.model, gamma, steps)?.to_csv();
            emit(out.as_deref(), &csv)?;
        }
        Command::Sample { instance, mixer, params, shots, seed, scaling, out } => {
            let instance = Instance::load(&instance)?;
            let spec = mixer.spec(instance.n())?;
            let problem = instance.problem(!scaling.no_rescale, scaling.allow_phase_wrap)?;
            let text = fs::read_to_string(&params).with_context(|| format!("reading {}", params.display()))?;
            let params =
                QaoaParams::<f64>::from_json(&text).with_context(|| format!("parsing {}", params.display()))?;
            let counts = qaoa_evolve(&problem, &params, &spec)?.sample(shots, seed)?;
            emit(out.as_deref(), &(counts.to_json() + "\n"))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct ConfigEcho<'a> {
    p: usize,
    total_time: f64,
    steps: usize,
    optimizer: OptimizerArg,
    learning_rate: f64,
    gradient: &'static str,
    mixer: &'a str,
    mixer_strength: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    feasible: Option<String>,
    rescale: Option<f64>,
    seed: u64,
    shots: u64,
}

#[derive(Serialize)]
struct Outcome {
    bitstring: String,
    energy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    cut: Option<usize>,
}

#[derive(Serialize)]
struct TopRow {
    bitstring: String,
    probability: f64,
    energy: f64,
}

#[derive(Serialize)]
struct RunReport<'a> {
    instance: &'a Descriptor,
    config: ConfigEcho<'a>,
    best: Outcome,
    best_count: u64,
    optimum_energy: f64,
    initial_cost: f64,
    final_expected_cost: f64,
    top_k: Vec<TopRow>,
    trajectory: &'static str,
    params: &'static str,
    probabilities: &'static str,
    wall_clock_ms: u128,
}

fn solve(args: &SolveArgs) -> Result<()> {
    let start = Instant::now();
    let instance = Instance::load(&args.instance)?;
    let spec = args.mixer.spec(instance.n())?;
    let problem = instance.problem(!args.scaling.no_rescale, args.scaling.allow_phase_wrap)?;
    let gradient_method = match (args.gradient, spec.is_grover()) {
        (GradientArg::Auto, false) | (GradientArg::PerGate, _) => GradientMethod::PerGateShift,
        (GradientArg::Auto, true) | (GradientArg::FiniteDifference, _) => GradientMethod::FiniteDifference,
    };
    let method = match args.optimizer {
        OptimizerArg::Adam => OptimizerMethod::Adam,
        OptimizerArg::Gd => OptimizerMethod::GradientDescent,
    };
    let config = OptimizerConfig {
        method,
        learning_rate: args.lr,
        max_steps: args.steps,
        gradient_method,
        seed: args.seed,
        ..OptimizerConfig::default()
    };

    let init = linear_ramp_params(args.p, args.total_time)?;
    eprintln!("training p={} for {} steps on {} qubits", args.p, args.steps, instance.n());
    let trajectory = minimize(&problem, &init, &spec, &config)?;
    let state = qaoa_evolve(&problem, &trajectory.params_final, &spec)?;
    let probs = state.probabilities();
    let diag = problem.cost_diagonal();
    let final_cost = state.expectation_diagonal(diag)?;

    // Lowest-energy sampled outcome; the more frequent one on ties.
    let counts = state.sample(args.shots, args.seed)?;
    let (&best, &best_count) = counts
        .counts
        .iter()
        .min_by(|a, b| diag[*a.0].total_cmp(&diag[*b.0]).then(b.1.cmp(a.1)))
        .context("no samples drawn")?;

    let n = instance.n();
    let mut order: Vec<usize> = (0..probs.len()).collect();
    order.sort_by(|&a, &b| probs[b].total_cmp(&probs[a]).then(a.cmp(&b)));

    fs::create_dir_all(&args.out_dir).with_context(|| format!("creating {}", args.out_dir.display()))?;
    let mut csv = String::from("bitstring,probability,energy\n");
    for &x in &order {
        writeln!(csv, "{},{},{}", bitstring(x, n), probs[x], diag[x])?;
    }
    fs::write(args.out_dir.join("probs.csv"), csv)?;
    trajectory.save_csv(args.out_dir.join("trajectory.csv"))?;
    fs::write(args.out_dir.join("params.json"), trajectory.params_final.to_json() + "\n")?;

    let report = RunReport {
        instance: &instance.descriptor,
        config: ConfigEcho {
            p: args.p,
            total_time: args.total_time,
            steps: args.steps,
            optimizer: args.optimizer,
            learning_rate: args.lr,
            gradient: gradient_method.name(),
            mixer: &args.mixer.mixer,
            mixer_strength: args.mixer.mixer_strength,
            feasible: args.mixer.feasible.as_ref().map(|p| p.display().to_string()),
            rescale: (problem.scale() != 1.0).then(|| problem.scale()),
            seed: args.seed,
            shots: args.shots,
        },
        best: Outcome { bitstring: bitstring(best, n), energy: instance.energy(best)?, cut: instance.cut(best)? },
        best_count,
        optimum_energy: diag.iter().copied().fold(f64::INFINITY, f64::min),
        initial_cost: trajectory.costs[0],
        final_expected_cost: final_cost,
        top_k: order
            .iter()
            .take(args.top_k)
            .map(|&x| TopRow { bitstring: bitstring(x, n), probability: probs[x], energy: diag[x] })
            .collect(),
        trajectory: "trajectory.csv",
        params: "params.json",
        probabilities: "probs.csv",
        wall_clock_ms: start.elapsed().as_millis(),
    };
    fs::write(args.out_dir.join("report.json"), serde_json::to_string_pretty(&report)? + "\n")?;
    eprintln!(
        "final expected cost {final_cost:.6}; best sampled {} (energy {})",
        report.best.bitstring, report.best.energy
    );
    Ok(())
}

fn gradcheck(args: &GradcheckArgs) -> Result<ExitCode> {
    if args.p == 0 {
        bail!("--p must be at least 1");
    }
    let instance = Instance::load(&args.instance)?;
    // Gradients are well defined past the wrap point, so the guard is off.
    let problem = instance.problem(!args.no_rescale, true)?;
    let spec = qforge::MixerSpec::transverse_field().with_strength(args.mixer_strength);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let gammas = (0..args.p).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let betas = (0..args.p).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let params = QaoaParams::new(gammas, betas)?;

    let gate = qaoa_gradient_per_gate(&problem, &params, &spec)?;
    let layer = qaoa_gradient_layer_shift(&problem, &params, &spec)?;
    let fd = finite_difference(&problem, &params, &spec, args.fd_eps)?;

    let names: Vec<String> =
        (1..=args.p).map(|k| format!("gamma_{k}")).chain((1..=args.p).map(|k| format!("beta_{k}"))).collect();
    println!("{:<10} {:>14} {:>14} {:>14} {:>14}", "param", "value", "per-gate", "layer-shift", "finite-diff");
    for (i, name) in names.iter().enumerate() {
        let row = [params.to_flat()[i], gate.to_flat()[i], layer.to_flat()[i], fd.to_flat()[i]];
        println!("{name:<10} {:>14.8} {:>14.8} {:>14.8} {:>14.8}", row[0], row[1], row[2], row[3]);
    }
    let gate_fd = gate.max_abs_diff(&fd);
    println!("max |per-gate - finite-diff|  = {gate_fd:.3e}");
    println!("max |per-gate - layer-shift|  = {:.3e}", gate.max_abs_diff(&layer));
    println!("max |layer-shift - finite-diff| = {:.3e}", layer.max_abs_diff(&fd));
    println!(
        "evaluations: per-gate {}, layer-shift {}, finite-diff {}",
        gate.evaluations, layer.evaluations, fd.evaluations
    );
    if gate_fd > GRADCHECK_TOLERANCE {
        eprintln!("per-gate and finite-difference gradients differ by {gate_fd:.3e} > {GRADCHECK_TOLERANCE:e}");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}
