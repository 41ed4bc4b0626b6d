use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qforge::problems::{brute_force, maxcut_ising};
use qforge::{Graph, IsingModel, QaoaParams, ShotCounts};
use serde_json::Value;

const C4: &str = "p 4 4\n0 1\n1 2\n2 3\n3 0\n";

fn qforge(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qforge")).current_dir(dir).args(args).output().expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> Output {
    let out = qforge(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn generate_writes_a_parseable_deterministic_graph() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["generate", "--n", "6", "--prob", "0.5", "--seed", "42", "--out", "a.txt"]);
    ok(d, &["generate", "--n", "6", "--prob", "0.5", "--seed", "42", "--out", "b.txt"]);
    assert_eq!(fs::read(d.join("a.txt")).unwrap(), fs::read(d.join("b.txt")).unwrap());
    assert_eq!(Graph::load(d.join("a.txt")).unwrap().n_vertices(), 6);
    ok(d, &["generate", "--n", "6", "--prob", "0", "--seed", "1", "--out", "empty.txt"]);
    assert_eq!(Graph::load(d.join("empty.txt")).unwrap().n_edges(), 0);
}

#[test]
fn solve_c4_ranks_the_two_optimal_cuts_first() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("c4.txt"), C4).unwrap();
    ok(d, &["solve", "--graph", "c4.txt", "--steps", "300", "--out-dir", "out"]);

    let probs = read(d, "out/probs.csv");
    let rows: Vec<Vec<&str>> = probs.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 16);
    let mut top: Vec<&str> = rows[..2].iter().map(|r| r[0]).collect();
    top.sort();
    assert_eq!(top, ["0101", "1010"]);
    let p: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(p.windows(2).all(|w| w[0] >= w[1]));
    assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-10);

    let report: Value = serde_json::from_str(&read(d, "out/report.json")).unwrap();
    let best = report["best"]["bitstring"].as_str().unwrap();
    let x = usize::from_str_radix(best, 2).unwrap();
    let graph = Graph::from_text(C4).unwrap();
    assert_eq!(report["best"]["cut"].as_u64().unwrap() as usize, graph.cut_of_index(x));
    assert_eq!(report["best"]["energy"].as_f64().unwrap(), -(graph.cut_of_index(x) as f64));
    assert_eq!(report["config"]["p"], 10);
    assert_eq!(report["config"]["total_time"], 7.5);

    let traj = read(d, "out/trajectory.csv");
    assert_eq!(traj.lines().next(), Some("step,cost"));
    assert_eq!(traj.lines().count(), 301);
    QaoaParams::<f64>::from_json(&read(d, "out/params.json")).unwrap();
}

#[test]
fn single_step_writes_one_trajectory_row() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("c4.txt"), C4).unwrap();
    ok(d, &["solve", "--graph", "c4.txt", "--steps", "1", "--out-dir", "out"]);
    assert_eq!(read(d, "out/trajectory.csv").lines().count(), 2);
}

#[test]
fn grover_mixer_on_the_optimal_set_returns_an_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let model = IsingModel::<f64>::new(3)
        .with_term(&[0, 1], 1.0)
        .unwrap()
        .with_term(&[1, 2], -0.5)
        .unwrap()
        .with_term(&[0, 1, 2], 0.75)
        .unwrap();
    model.save(d.join("model.txt")).unwrap();
    let optimum = brute_force(&model).unwrap();
    let feasible = std::iter::once("n=3".to_string())
        .chain(optimum.argmin_set.iter().map(|x| x.to_string()))
        .collect::<Vec<_>>()
        .join("\n");
    fs::write(d.join("f.txt"), feasible).unwrap();
    ok(
        d,
        &[
            "solve",
            "--ising",
            "model.txt",
            "--mixer",
            "grover",
            "--feasible",
            "f.txt",
            "--steps",
            "5",
            "--out-dir",
            "out",
        ],
    );
    let report: Value = serde_json::from_str(&read(d, "out/report.json")).unwrap();
    assert_eq!(report["best"]["energy"].as_f64().unwrap(), optimum.best_value);
    assert_eq!(report["config"]["gradient"], "finite-difference");
}

#[test]
fn gradcheck_examples() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("c4.txt"), C4).unwrap();
    let out = ok(d, &["gradcheck", "--graph", "c4.txt", "--p", "2", "--seed", "7"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let dev: f64 = text
        .lines()
        .find(|l| l.starts_with("max |per-gate - finite-diff|"))
        .and_then(|l| l.split('=').nth(1))
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!(dev < 1e-6);

    // One spin with h = Γ = ½: every method is exact.
    fs::write(d.join("half.txt"), "0.5 0\n").unwrap();
    let out = ok(d, &["gradcheck", "--ising", "half.txt", "--p", "2", "--mixer-strength", "0.5", "--no-rescale"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().filter(|l| l.starts_with("gamma_") || l.starts_with("beta_")) {
        let v: Vec<f64> = line.split_whitespace().skip(2).map(|f| f.parse().unwrap()).collect();
        assert!((v[0] - v[1]).abs() < 1e-8 && (v[0] - v[2]).abs() < 1e-8, "{line}");
    }

    fs::write(d.join("bad.txt"), "p 3 1\n0 q\n").unwrap();
    let out = qforge(d, &["gradcheck", "--graph", "bad.txt"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("bad.txt"), "p 3 2\n0 1\n").unwrap();
    assert!(!qforge(d, &["solve", "--graph", "bad.txt", "--out-dir", "out"]).status.success());
    assert!(!qforge(d, &["solve", "--graph", "missing.txt", "--out-dir", "out"]).status.success());
    assert!(!qforge(d, &["solve", "--random", "4", "--mixer", "grover", "--out-dir", "out"]).status.success());
    assert!(!qforge(d, &["spectrum", "--random", "13"]).status.success());
    assert!(!qforge(d, &["bogus"]).status.success());
}

#[test]
fn spectrum_matches_the_single_spin_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("one.txt"), "1 0\n").unwrap();
    let out = ok(d, &["spectrum", "--ising", "one.txt", "--gamma", "1", "--steps", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,E0,E1,gap"));
    let gaps: Vec<f64> = lines.map(|l| l.split(',').nth(3).unwrap().parse().unwrap()).collect();
    let expected = [2.0, 2.0 * 0.5f64.sqrt(), 2.0];
    assert_eq!(gaps.len(), 3);
    for (g, e) in gaps.iter().zip(expected) {
        assert!((g - e).abs() < 1e-8);
    }

    ok(d, &["spectrum", "--ising", "one.txt", "--steps", "2", "--out", "gap.csv"]);
    let sched = qforge::GapSchedule::<f64>::from_csv(&read(d, "gap.csv")).unwrap();
    assert_eq!(sched.samples.iter().map(|x| x.s).collect::<Vec<_>>(), [0.0, 1.0]);
}

#[test]
fn sampling_trained_c4_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("c4.txt"), C4).unwrap();
    ok(d, &["solve", "--graph", "c4.txt", "--steps", "300", "--out-dir", "out"]);
    let args = ["sample", "--graph", "c4.txt", "--params", "out/params.json", "--shots", "10000", "--seed", "9"];
    let a = ok(d, &args).stdout;
    let b = ok(d, &args).stdout;
    assert_eq!(a, b);
    let counts = ShotCounts::from_json(&String::from_utf8(a).unwrap()).unwrap();
    let optimal = counts.counts.get(&0b0101).unwrap_or(&0) + counts.counts.get(&0b1010).unwrap_or(&0);
    assert!(optimal as f64 >= 0.9 * 10_000.0, "{optimal}");

    let one = ok(d, &["sample", "--graph", "c4.txt", "--params", "out/params.json", "--shots", "1"]).stdout;
    assert_eq!(ShotCounts::from_json(&String::from_utf8(one).unwrap()).unwrap().counts.len(), 1);

    // The brute-force optimum agrees with what the sampler concentrates on.
    let best = brute_force(&maxcut_ising::<f64>(&Graph::from_text(C4).unwrap())).unwrap();
    assert_eq!(best.argmin_set, vec![0b0101, 0b1010]);
}
