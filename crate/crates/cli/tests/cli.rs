//! End-to-end tests for the `renyi` binary: subcommand behavior, output
//! formats, determinism across reruns and thread counts, and the
//! documented exit-code contract (0 success, 1 verification failure,
//! 2 domain/regime error, 3 parse error, 4 non-convergence).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

use renyi_core::bounds::{bound_for_quantity, Approach, BoundParams, Quantity};
use renyi_core::divergence::{d_sandwiched, Alpha};
use renyi_core::harness::{fmt_g, state_to_json};
use renyi_core::linalg::{random_density, PartitionedState};

fn renyi() -> Command {
    Command::new(env!("CARGO_BIN_EXE_renyi"))
}

fn run(args: &[&str]) -> Output {
    renyi().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("renyi-cli-tests").join(name);
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

fn write_json(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, v.to_string()).expect("write json");
    path
}

fn write_state(dir: &Path, name: &str, state: &PartitionedState) -> PathBuf {
    write_json(dir, name, &state_to_json(state))
}

/// Correlated two-qubit test state: a Bell pair mixed with a little noise.
fn noisy_bell_json() -> Value {
    let mut matrix = vec![json!([0.0, 0.0]); 16];
    matrix[0] = json!([0.475, 0.0]);
    matrix[3] = json!([0.45, 0.0]);
    matrix[5] = json!([0.025, 0.0]);
    matrix[10] = json!([0.025, 0.0]);
    matrix[12] = json!([0.45, 0.0]);
    matrix[15] = json!([0.475, 0.0]);
    json!({"dims": [2, 2], "matrix": matrix})
}

/// Diagonal product state rho_A x rho_BC on dims [2, 2, 2]: an exact
/// short chain, so every recovery gap and the conditional mutual
/// information vanish.
fn product_chain_json() -> Value {
    let probs = [0.18, 0.12, 0.15, 0.15, 0.12, 0.08, 0.10, 0.10];
    let mut matrix = Vec::with_capacity(64);
    for i in 0..8 {
        for j in 0..8 {
            matrix.push(json!([if i == j { probs[i] } else { 0.0 }, 0.0]));
        }
    }
    json!({"dims": [2, 2, 2], "matrix": matrix})
}

fn strip_timestamp(s: &str) -> String {
    s.lines()
        .filter(|l| !l.starts_with("# timestamp:"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["compute", "--help"])), 0);
    let help = run(&["--help"]);
    let text = stdout(&help);
    assert!(text.contains("compute"), "help lists subcommands:\n{text}");
    assert!(text.contains("Exit codes"), "help documents exit codes:\n{text}");
}

#[test]
fn counterexample_chains_print_and_serialize() {
    let out = run(&["counterexample"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("alpha = 1.5"), "order echoed:\n{text}");
    assert!(text.contains("(> 6)") && text.contains("(< 5.9)"), "spectral margins:\n{text}");
    assert!(text.contains("(> 9)") && text.contains("(< 6)"), "geometric margins:\n{text}");

    let out = run(&["counterexample", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).expect("json report");
    assert_eq!(v["alpha"], json!(1.5));
    assert!(v["spectral"]["sum"].as_f64().unwrap() > 6.0);
    assert!(v["spectral"]["combined"].as_f64().unwrap() < 5.9);
    assert!(v["geometric"]["sum"].as_f64().unwrap() > 9.0);
    assert!(v["geometric"]["combined"].as_f64().unwrap() < 6.0);
    assert!(v["inputs"]["tau"].is_array(), "inputs echoed");
}

#[test]
fn compute_divergence_matches_the_library_to_twelve_digits() {
    let dir = scratch("divergence");
    let rho = PartitionedState::new(random_density(3, 3, 11).unwrap(), vec![3]).unwrap();
    let tau = PartitionedState::new(random_density(3, 3, 12).unwrap(), vec![3]).unwrap();
    let rho_path = write_state(&dir, "rho.json", &rho);
    let tau_path = write_state(&dir, "tau.json", &tau);
    let alpha = Alpha::new(1.7).unwrap();
    let expected = d_sandwiched(rho.state(), tau.state().matrix(), alpha).unwrap();

    let out = run(&[
        "compute",
        "divergence",
        rho_path.to_str().unwrap(),
        tau_path.to_str().unwrap(),
        "--alpha",
        "1.7",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains(&format!("value = {}", fmt_g(expected))),
        "binary and library agree to 12 digits:\n{text}\nexpected {}",
        fmt_g(expected)
    );
}

#[test]
fn compute_handles_symbolic_orders_and_reports_witnesses() {
    let dir = scratch("symbolic");
    let state_path = write_json(&dir, "bell.json", &noisy_bell_json());
    let path = state_path.to_str().unwrap();

    for alpha in ["inf", "1"] {
        let out = run(&["compute", "cond-entropy", path, "--alpha", alpha]);
        assert_eq!(code(&out), 0, "alpha {alpha}: {}", stderr(&out));
        let text = stdout(&out);
        assert!(text.contains(&format!("alpha = {alpha}")), "order echoed:\n{text}");
        assert!(text.contains("witness ["), "witness printed:\n{text}");
    }

    let out = run(&["compute", "mutual-info", path, "--alpha", "2", "--format", "json"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).expect("json report");
    assert_eq!(v["quantity"], json!("mutual-info"));
    assert_eq!(v["alpha"], json!(2.0));
    assert!(v["value"].is_number());
    let opt = &v["optimizers"][0];
    assert!(opt["converged"].is_boolean());
    assert_eq!(opt["witness"]["dim"], json!(4));
    assert_eq!(opt["witness"]["matrix"].as_array().unwrap().len(), 16);
}

#[test]
fn compute_cmi_labels_both_inner_optimizations() {
    let dir = scratch("cmi");
    let state_path = write_json(&dir, "chain.json", &product_chain_json());
    let out = run(&[
        "compute",
        "cmi",
        state_path.to_str().unwrap(),
        "--alpha",
        "1.5",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("C given B"), "first witness labeled:\n{text}");
    assert!(text.contains("C given AB"), "second witness labeled:\n{text}");
}

#[test]
fn exit_codes_follow_the_documented_contract() {
    let dir = scratch("exit-codes");
    let good = write_json(&dir, "good.json", &noisy_bell_json());
    let good = good.to_str().unwrap();

    let bad_path = dir.join("bad.json");
    std::fs::write(&bad_path, "not json").unwrap();

    let mut skewed = noisy_bell_json();
    skewed["matrix"][1] = json!([0.2, 0.0]);
    let skewed = write_json(&dir, "skewed.json", &skewed);

    // Parse failures: malformed file, bad order literal, unknown quantity,
    // unknown suite, wrong file count, clap-level usage errors.
    assert_eq!(code(&run(&["compute", "divergence", bad_path.to_str().unwrap(), good])), 3);
    assert_eq!(code(&run(&["compute", "cond-entropy", good, "--alpha", "abc"])), 3);
    assert_eq!(code(&run(&["compute", "no-such-quantity", good])), 3);
    assert_eq!(code(&run(&["verify", "no-such-suite"])), 3);
    assert_eq!(code(&run(&["compute", "divergence", good])), 3);
    assert_eq!(code(&run(&["frobnicate"])), 3);
    assert_eq!(code(&run(&["compute"])), 3);

    // Domain failures: order outside the admissible set, non-Hermitian
    // input, csv for a non-sweep command, missing input file.
    assert_eq!(code(&run(&["compute", "cond-entropy", good, "--alpha", "0.3"])), 2);
    assert_eq!(code(&run(&["compute", "cond-entropy", skewed.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["counterexample", "--format", "csv"])), 2);
    assert_eq!(code(&run(&["markov", dir.join("missing.json").to_str().unwrap()])), 2);
}

#[test]
fn single_cell_sweep_matches_the_direct_bound_and_reruns_identically() {
    let args = ["sweep", "--alpha", "2", "--epsilon", "0.01", "--dim", "2"];
    let first = run(&args);
    assert_eq!(code(&first), 0, "stderr: {}", stderr(&first));
    let text = stdout(&first);

    let row = text
        .lines()
        .find(|l| l.starts_with("2,"))
        .expect("data row present");
    let cells: Vec<&str> = row.split(',').collect();
    assert_eq!(cells.len(), 7, "alpha,eps,d_a,3 approaches,winner: {row}");

    let mut params = BoundParams::new(Alpha::new(2.0).unwrap(), 0.01);
    params.d_a = Some(2);
    for (idx, approach) in [Approach::Axiomatic, Approach::OperatorSpace, Approach::Mixed]
        .iter()
        .enumerate()
    {
        let direct = bound_for_quantity(Quantity::CondEntropy, *approach, &params).unwrap();
        assert_eq!(cells[3 + idx], fmt_g(direct), "{approach:?} cell matches direct bound");
    }
    assert_eq!(cells[6], "operator-space", "winner at this cell");

    let second = run(&args);
    assert_eq!(
        strip_timestamp(&stdout(&first)),
        strip_timestamp(&stdout(&second)),
        "reruns are byte-identical modulo the timestamp line"
    );
}

#[test]
fn sweep_accepts_a_grid_file_and_emits_baseline_columns() {
    let dir = scratch("grid");
    let grid = json!({
        "alphas": [1.5, 3.0],
        "epsilons": [0.01],
        "dims": [2.0],
        "quantity": "cond-entropy",
        "approaches": ["axiomatic", "operator-space"],
        "marwah": true,
    });
    let grid_path = write_json(&dir, "grid.json", &grid);

    let out = run(&["sweep", "--grid", grid_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let header = text
        .lines()
        .find(|l| !l.starts_with('#'))
        .expect("header line");
    assert_eq!(header, "alpha,eps,d_a,axiomatic,operator-space,marwah,winner");
    let rows = text
        .lines()
        .filter(|l| !l.starts_with('#') && *l != header)
        .count();
    assert_eq!(rows, 2, "one row per order:\n{text}");

    let bad_grid = dir.join("bad-grid.json");
    std::fs::write(&bad_grid, "{\"alphas\": [oops").unwrap();
    assert_eq!(code(&run(&["sweep", "--grid", bad_grid.to_str().unwrap()])), 3);
    let missing = dir.join("missing-grid.json");
    assert_eq!(code(&run(&["sweep", "--grid", missing.to_str().unwrap()])), 2);

    let json_out = run(&[
        "sweep",
        "--grid",
        grid_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&json_out), 0);
    let v: Value = serde_json::from_str(&stdout(&json_out)).expect("json sweep");
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert_eq!(v["meta"]["seed"], json!(7));
}

#[test]
fn verify_aggregates_suites_and_the_negative_control_fails() {
    let out = run(&[
        "verify",
        "divergence-laws",
        "alaff",
        "--trials",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).expect("json report");
    assert_eq!(v["passed"], json!(true));
    let suites = v["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 2);
    assert_eq!(suites[0]["suite"], json!("divergence-laws"));
    assert_eq!(suites[0]["checks"], json!(36), "6 trials x 6 checks");

    let out = run(&[
        "verify",
        "divergence-laws",
        "--trials",
        "5",
        "--corrupt-subadditivity",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 1, "negative control must fail verification");
    let v: Value = serde_json::from_str(&stdout(&out)).expect("report still printed");
    assert_eq!(v["passed"], json!(false));
    let violation = &v["suites"][0]["violations"][0];
    assert_eq!(violation["check"], json!("additivity-direction"));
    assert!(violation["witness"]["alpha"].is_number(), "witness carries the order");

    // The control only makes sense when the divergence-laws suite runs.
    assert_eq!(code(&run(&["verify", "alaff", "--corrupt-subadditivity"])), 2);
}

#[test]
fn markov_gaps_vanish_on_an_exact_chain() {
    let dir = scratch("markov");
    let state_path = write_json(&dir, "chain.json", &product_chain_json());
    let out = run(&[
        "markov",
        state_path.to_str().unwrap(),
        "--alpha",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).expect("json report");
    assert!(v["cmi"].as_f64().unwrap().abs() < 1e-10, "cmi vanishes: {v}");
    assert!(v["gaps"]["plain"].as_f64().unwrap() < 1e-10);
    assert!(v["gaps"]["rotated"].as_f64().unwrap() < 1e-10);
    assert!(v["gaps"]["universal"].as_f64().unwrap() < 1e-10);
    assert!(v["certificate"]["lower"].as_f64().unwrap() <= 1e-12);
    assert!(v["certificate"]["upper"].as_f64().unwrap() >= 0.0);
    assert_eq!(v["certificate"]["cert_param"], json!(0.125), "half the admissible limit");
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = scratch("outfile");
    let path = dir.join("report.json");
    let out = run(&[
        "counterexample",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).is_empty(), "nothing on stdout when --out is given");
    let text = std::fs::read_to_string(&path).expect("file written");
    let v: Value = serde_json::from_str(&text).expect("file holds the json report");
    assert_eq!(v["alpha"], json!(1.5));
}

#[test]
fn thread_cap_env_var_keeps_output_stable() {
    let args = ["sweep", "--alpha", "3", "--epsilon", "0.05", "--dim", "4"];
    let capped = renyi()
        .args(args)
        .env("RENYI_THREADS", "1")
        .output()
        .expect("binary runs");
    assert_eq!(code(&capped), 0, "stderr: {}", stderr(&capped));
    let wide = renyi()
        .args(args)
        .env("RENYI_THREADS", "3")
        .output()
        .expect("binary runs");
    assert_eq!(code(&wide), 0);
    assert_eq!(
        strip_timestamp(&stdout(&capped)),
        strip_timestamp(&stdout(&wide)),
        "results do not depend on the worker count"
    );
}
