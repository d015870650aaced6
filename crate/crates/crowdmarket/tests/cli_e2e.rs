//! End-to-end checks of the binary: output formats, exit codes, and
//! determinism, driven through real process invocations.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let Output {
        status,
        stdout,
        stderr,
    } = Command::new(env!("CARGO_BIN_EXE_crowdmarket"))
        .args(args)
        .output()
        .expect("spawn binary");
    (
        status.code().expect("exit code"),
        String::from_utf8(stdout).expect("utf8 stdout"),
        String::from_utf8(stderr).expect("utf8 stderr"),
    )
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("crowdmarket_e2e_{}_{name}", std::process::id()))
}

#[test]
fn check_reports_all_three_diagnostics() {
    let (code, out, _) = run(&["check", "--input", &fixture("n2.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("n = 2"));
    assert!(out.contains("Assumption 1: PASS (min margin 0.750000)"));
    assert!(out.contains("Assumption 2: FAIL (margin -5.000000)"));
    assert!(out.contains("Positive definite: PASS (min eigenvalue 1.500000)"));
}

#[test]
fn malformed_inputs_map_to_distinct_exit_codes() {
    let (code, _, err) = run(&["check", "--input", &fixture("bad_syntax.json")]);
    assert_eq!(code, 2, "stderr: {err}");
    assert!(err.contains("malformed document"));

    let (code, _, err) = run(&["check", "--input", &fixture("bad_asym.json")]);
    assert_eq!(code, 3, "stderr: {err}");
    assert!(err.contains("invalid market data"));

    let (code, _, err) = run(&["check", "--input", "/nonexistent/market.json"]);
    assert_eq!(code, 2, "stderr: {err}");
    assert!(err.contains("cannot read input"));
}

#[test]
fn solve_prints_the_fixed_point() {
    let (code, out, _) = run(&[
        "solve",
        "--input",
        &fixture("n2.json"),
        "--reward",
        &fixture("reward_n2.json"),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("converged = true"));
    assert!(out.contains("interior = true"));
    assert!(out.contains("x[0] = 1.333333"));
    assert!(out.contains("x[1] = 1.333333"));
    assert!(out.contains("total participation = 2.666667"));

    // A flat rate gives the same market.
    let (code, rate_out, _) = run(&["solve", "--input", &fixture("n2.json"), "--rate", "1.0"]);
    assert_eq!(code, 0);
    assert!(rate_out.contains("x[0] = 1.333333"));

    // Wrapped reward documents parse too.
    let (code, out, _) = run(&[
        "solve",
        "--input",
        &fixture("n1.json"),
        "--reward",
        &fixture("reward_wrapped_n1.json"),
        "--method",
        "closed",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("method = closed-form"));
    assert!(out.contains("x[0] = 1.000000"));
}

#[test]
fn solve_rejects_mismatched_rewards() {
    let (code, _, err) = run(&[
        "solve",
        "--input",
        &fixture("n1.json"),
        "--reward",
        &fixture("reward_n2.json"),
    ]);
    assert_eq!(code, 3, "stderr: {err}");
    assert!(err.contains("expected length 1"));
}

#[test]
fn solve_requires_exactly_one_reward_source() {
    let (code, _, _) = run(&["solve", "--input", &fixture("n2.json")]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&[
        "solve",
        "--input",
        &fixture("n2.json"),
        "--reward",
        &fixture("reward_n2.json"),
        "--rate",
        "1.0",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn divergent_dynamics_exit_with_solver_failure() {
    let (code, _, err) = run(&[
        "solve",
        "--input",
        &fixture("heavy_ties.json"),
        "--rate",
        "1.0",
        "--max-iter",
        "100",
    ]);
    assert_eq!(code, 4, "stderr: {err}");
    assert!(err.contains("contraction condition fails"));
    assert!(err.contains("did not converge"));
}

#[test]
fn optimize_prints_the_reference_optima() {
    let (code, out, _) = run(&[
        "optimize",
        "--input",
        &fixture("n1.json"),
        "--regime",
        "uniform",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("r* = 0.666667"));
    assert!(out.contains("\u{03a0} = 2.083333"));
    assert!(out.contains("interior = true"));

    let (code, out, _) = run(&[
        "optimize",
        "--input",
        &fixture("n2.json"),
        "--regime",
        "discriminatory",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("r*[0] = 0.500000"));
    assert!(out.contains("r*[1] = 0.500000"));
    assert!(out.contains("mean r* = 0.500000"));
    assert!(out.contains("\u{03a0} = 5.000000"));
}

#[test]
fn optimize_bound_takes_expectations_from_overrides() {
    let (code, out, err) = run(&[
        "optimize",
        "--input",
        &fixture("n2.json"),
        "--regime",
        "uniform-bound",
        "--set",
        "expectation.e_a=2.0",
        "--set",
        "expectation.e_b=1.0",
    ]);
    assert_eq!(code, 0, "stderr: {err}");
    assert!(out.contains("regime = uniform-bound"));
    // On a symmetric market with exact expectations the rate matches the
    // full-information uniform optimum.
    assert!(out.contains("r* = 0.500000"));

    // Without expectations the empirical means fill in, with a note.
    let (code, _, err) = run(&[
        "optimize",
        "--input",
        &fixture("n2.json"),
        "--regime",
        "uniform-bound",
    ]);
    assert_eq!(code, 0);
    assert!(err.contains("empirical means"));
}

#[test]
fn optimize_writes_json_output() {
    let path = temp_path("optimize.json");
    let (code, _, err) = run(&[
        "optimize",
        "--input",
        &fixture("n1.json"),
        "--regime",
        "uniform",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "stderr: {err}");
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["regime"], "uniform");
    assert!((doc["rewards"][0].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-9);
    assert!((doc["revenue"].as_f64().unwrap() - 25.0 / 12.0).abs() < 1e-9);
    assert_eq!(doc["equilibrium"]["interior"], true);
    std::fs::remove_file(&path).ok();
}

#[test]
fn overrides_flow_into_validation() {
    // Making the graph asymmetric through --set must fail model validation,
    // not be silently repaired.
    let (code, _, err) = run(&[
        "check",
        "--input",
        &fixture("n2.json"),
        "--set",
        "graph.0.1=0.9",
    ]);
    assert_eq!(code, 3, "stderr: {err}");
    assert!(err.contains("invalid market data"));

    // Unknown keys are schema errors.
    let (code, _, err) = run(&[
        "check",
        "--input",
        &fixture("n2.json"),
        "--set",
        "prams.c=2.0",
    ]);
    assert_eq!(code, 2, "stderr: {err}");
}

#[test]
fn scenario_dump_is_deterministic_and_loadable() {
    let (code, first, err) = run(&["scenario-dump", "--n", "7", "--seed", "11"]);
    assert_eq!(code, 0, "stderr: {err}");
    assert!(err.contains("raw max tie ratio"));
    let (_, second, _) = run(&["scenario-dump", "--n", "7", "--seed", "11"]);
    assert_eq!(first, second);

    // The dump round-trips through check.
    let path = temp_path("dump.json");
    std::fs::write(&path, &first).unwrap();
    let (code, out, _) = run(&["check", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("n = 7"));
    assert!(out.contains("Assumption 1: PASS"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn sweeps_emit_deterministic_csv() {
    let args = [
        "sweep-n",
        "--values",
        "4,6",
        "--replicates",
        "2",
        "--seed",
        "5",
    ];
    let (code, first, err) = run(&args);
    assert_eq!(code, 0, "stderr: {err}");
    let mut lines = first.lines();
    assert_eq!(
        lines.next().unwrap(),
        "experiment_id,seed,sweep_name,sweep_value,regime,revenue,total_mu_utility,\
         total_reward_paid,mean_reward,interior,converged"
    );
    // 2 sizes x 2 replicates x 3 regimes.
    assert_eq!(first.lines().count(), 1 + 12);
    let (_, second, _) = run(&args);
    assert_eq!(first, second);
}

#[test]
fn case_study_emits_per_node_rows() {
    let (code, out, err) = run(&["case-study", "--n", "11"]);
    assert_eq!(code, 0, "stderr: {err}");
    assert!(err.contains("uniform:"));
    assert!(err.contains("discriminatory:"));
    assert_eq!(
        out.lines().next().unwrap(),
        "index,uniform_r,uniform_x,disc_r,disc_x,uniform_x_norm,disc_r_norm,disc_x_norm"
    );
    assert_eq!(out.lines().count(), 1 + 11);
}

#[test]
fn oracle_checks_pass() {
    let (code, out, _) = run(&["oracle"]);
    assert_eq!(code, 0);
    assert!(out.contains("all oracle checks passed"));
    assert!(!out.contains("MISMATCH"));
}
