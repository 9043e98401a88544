//! End-to-end tests of the `irregular` binary: wire formats, exit codes,
//! determinism, and the fan-out/merge behavior of multi-trial runs.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

/// Fresh command for the compiled binary, shielded from ambient job settings.
fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_irregular"));
    cmd.env_remove("IRREGULAR_JOBS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should run")
}

fn run_ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(
        out.status.success(),
        "`{}` exited {:?}: {}",
        args.join(" "),
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> String {
    p.to_str().expect("utf8 path").to_string()
}

/// Writes the n=8 cycle union (two 4-cycles) and returns its path.
fn two_squares(dir: &TempDir) -> PathBuf {
    let g = path(dir, "g8.txt");
    run_ok(&["gen", "--model", "cycle-union", "--n", "8", "--d", "2", "--out", &s(&g)]);
    g
}

fn triangle(dir: &TempDir) -> PathBuf {
    let g = path(dir, "c3.txt");
    std::fs::write(&g, "3 3\n0 1\n0 2\n1 2\n").unwrap();
    g
}

#[test]
fn cycle_union_oracle_prints_the_slack_line() {
    let dir = TempDir::new().unwrap();
    let g = two_squares(&dir);
    let out = run_ok(&["oracle", "--in", &s(&g), "--check", "conj12"]);
    assert_eq!(stdout(&out), "min_m=4 bound=4.667 holds=true\n");
    let out = run_ok(&["oracle", "--in", &s(&g), "--check", "min-m"]);
    assert_eq!(stdout(&out), "min_m=4\n");
    let out = run_ok(&["oracle", "--in", &s(&g), "--check", "conj11"]);
    assert_eq!(stdout(&out), "minimax=4/3 within_two=true\n");
}

#[test]
fn half_weights_on_a_triangle_round_to_the_full_triangle() {
    let dir = TempDir::new().unwrap();
    let g = triangle(&dir);
    let w = path(&dir, "w.txt");
    std::fs::write(&w, "1/2\n1/2\n1/2\n").unwrap();
    let h = path(&dir, "h.txt");
    let out = run_ok(&[
        "run", "--algo", "round", "--in", &s(&g), "--weights", &s(&w), "--out-subgraph", &s(&h),
    ]);
    assert!(stdout(&out).contains("kept=3"), "summary: {}", stdout(&out));
    let stored = std::fs::read_to_string(&h).unwrap();
    let mut lines = stored.lines();
    assert!(lines.next().unwrap().starts_with("# subgraph of "));
    let kept: Vec<&str> = lines.collect();
    assert_eq!(kept, ["0", "1", "2"], "half weights on an odd cycle round up everywhere");
}

#[test]
fn identical_command_lines_give_identical_bytes() {
    let dir = TempDir::new().unwrap();
    let g = two_squares(&dir);
    let mut outputs = Vec::new();
    for tag in ["a", "b"] {
        let profile = path(&dir, &format!("p{tag}.csv"));
        let report = path(&dir, &format!("r{tag}.csv"));
        let out = run_ok(&[
            "run", "--algo", "threshold", "--in", &s(&g), "--seed", "7",
            "--out-profile", &s(&profile), "--out-report", &s(&report),
        ]);
        outputs.push((
            out.stdout,
            std::fs::read(&profile).unwrap(),
            std::fs::read(&report).unwrap(),
        ));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn trials_fan_out_and_merge_in_seed_order() {
    let dir = TempDir::new().unwrap();
    let g = two_squares(&dir);
    let serial = run_ok(&[
        "run", "--algo", "threshold", "--in", &s(&g), "--seed", "5", "--trials", "4", "--jobs", "1",
    ]);
    let parallel = run_ok(&[
        "run", "--algo", "threshold", "--in", &s(&g), "--seed", "5", "--trials", "4", "--jobs", "4",
    ]);
    assert_eq!(serial.stdout, parallel.stdout, "job count must not change the output");
    let text = stdout(&serial);
    let starts: Vec<&str> = text.lines().map(|l| l.split(' ').next().unwrap()).collect();
    assert_eq!(starts, ["seed=5", "seed=6", "seed=7", "seed=8"]);
}

#[test]
fn config_supplies_defaults_and_flags_win() {
    let dir = TempDir::new().unwrap();
    let g = two_squares(&dir);
    let cfg = path(&dir, "run.cfg");
    std::fs::write(&cfg, "# defaults\ntrials=3\nseed=5\n").unwrap();
    let from_cfg = run_ok(&["run", "--algo", "threshold", "--in", &s(&g), "--config", &s(&cfg)]);
    assert_eq!(stdout(&from_cfg).lines().count(), 3);
    assert!(stdout(&from_cfg).starts_with("seed=5 "));
    let flag_wins = run_ok(&[
        "run", "--algo", "threshold", "--in", &s(&g), "--config", &s(&cfg), "--trials", "1",
    ]);
    assert_eq!(stdout(&flag_wins).lines().count(), 1);
    let bad = path(&dir, "bad.cfg");
    std::fs::write(&bad, "cycles=9\n").unwrap();
    assert_eq!(
        exit_code(&["run", "--algo", "threshold", "--in", &s(&g), "--config", &s(&bad)]),
        6,
        "unknown config keys are usage errors"
    );
}

#[test]
fn environment_variable_sets_the_default_job_count() {
    let dir = TempDir::new().unwrap();
    let g = two_squares(&dir);
    let base = run_ok(&[
        "run", "--algo", "threshold", "--in", &s(&g), "--seed", "5", "--trials", "4", "--jobs", "1",
    ]);
    let via_env = bin()
        .env("IRREGULAR_JOBS", "2")
        .args(["run", "--algo", "threshold", "--in", &s(&g), "--seed", "5", "--trials", "4"])
        .output()
        .unwrap();
    assert!(via_env.status.success());
    assert_eq!(base.stdout, via_env.stdout);
    let garbage = bin()
        .env("IRREGULAR_JOBS", "many")
        .args(["run", "--algo", "threshold", "--in", &s(&g), "--trials", "2"])
        .output()
        .unwrap();
    assert_eq!(garbage.status.code(), Some(6));
}

#[test]
fn exit_codes_name_the_failure_family() {
    let dir = TempDir::new().unwrap();
    let g = two_squares(&dir);
    let c3 = triangle(&dir);
    assert_eq!(exit_code(&["run", "--bogus"]), 6, "unknown flag");
    assert_eq!(
        exit_code(&["run", "--algo", "threshold", "--in", &s(&path(&dir, "nope.txt"))]),
        4,
        "missing input file"
    );
    let big = path(&dir, "g40.txt");
    run_ok(&["gen", "--model", "regular", "--n", "40", "--d", "3", "--seed", "1", "--out", &s(&big)]);
    assert_eq!(
        exit_code(&["oracle", "--in", &s(&big), "--check", "min-m"]),
        5,
        "60 edges exceed the enumeration cap"
    );
    let p3 = path(&dir, "p3.txt");
    std::fs::write(&p3, "3 2\n0 1\n1 2\n").unwrap();
    assert_eq!(
        exit_code(&["run", "--algo", "prop24", "--in", &s(&p3)]),
        3,
        "balance sampling needs a regular host"
    );
    // Two 4-cycles cannot balance within eps/4 of a count: the exact minimax
    // deviation is 4/3, so a tolerance of 2/3 exhausts any retry budget.
    assert_eq!(
        exit_code(&[
            "run", "--algo", "prop24", "--in", &s(&g), "--eps", "0.25", "--retries", "5",
        ]),
        2,
        "infeasible tolerance exhausts retries"
    );
    assert_eq!(
        exit_code(&["run", "--algo", "round", "--in", &s(&c3)]),
        6,
        "rounding needs a weights file"
    );
    assert_eq!(exit_code(&["gen", "--model", "regular", "--n", "7", "--d", "3"]), 6, "odd n*d");
    assert_eq!(
        exit_code(&[
            "run", "--algo", "threshold", "--in", &s(&g), "--trials", "2", "--out-subgraph",
            &s(&path(&dir, "h.txt")),
        ]),
        6,
        "stored subgraphs need a single trial"
    );
}

#[test]
fn stored_subgraphs_verify_and_reject_foreign_digests() {
    let dir = TempDir::new().unwrap();
    let g = two_squares(&dir);
    let h = path(&dir, "h8.txt");
    run_ok(&[
        "run", "--algo", "threshold", "--in", &s(&g), "--seed", "7", "--out-subgraph", &s(&h),
    ]);
    let out = run_ok(&["verify", "--in", &s(&g), "--subgraph", &s(&h)]);
    let csv = stdout(&out);
    assert!(csv.starts_with("key,value\n"));
    assert!(csv.ends_with("passed,true\n"), "audit verdict: {csv}");
    let tampered = std::fs::read_to_string(&h)
        .unwrap()
        .replacen(
            &csv_digest(&std::fs::read_to_string(&h).unwrap()),
            "0000000000000000",
            1,
        );
    let bad = path(&dir, "bad.txt");
    std::fs::write(&bad, tampered).unwrap();
    assert_eq!(exit_code(&["verify", "--in", &s(&g), "--subgraph", &s(&bad)]), 4);
}

/// Pulls the digest out of a stored subgraph's header line.
fn csv_digest(stored: &str) -> String {
    stored
        .lines()
        .next()
        .and_then(|l| l.strip_prefix("# subgraph of "))
        .expect("subgraph header")
        .to_string()
}

#[test]
fn sampler_success_paths_report_their_run() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "r120.txt");
    run_ok(&["gen", "--model", "regular", "--n", "120", "--d", "3", "--seed", "2", "--out", &s(&g)]);
    let profile = path(&dir, "p.csv");
    let report = path(&dir, "r.csv");
    let out = run_ok(&[
        "run", "--algo", "prop24", "--in", &s(&g), "--eps", "0.25", "--seed", "1",
        "--out-profile", &s(&profile), "--out-report", &s(&report),
    ]);
    assert!(stdout(&out).contains(" algo=prop24 "));
    let report = std::fs::read_to_string(&report).unwrap();
    assert!(report.starts_with("# seed=1\nkey,value\n"));
    assert!(report.contains("\nalgo,prop24\n"));
    assert!(report.contains("\ncondition_value,"));
    assert!(report.ends_with("verify_passed,true\n"));
    let profile = std::fs::read_to_string(&profile).unwrap();
    assert!(profile.starts_with("# seed=1\nk,count\n"));
    assert!(profile.contains("# m(H)="));
}

#[test]
fn strength_transfer_reports_its_route() {
    let dir = TempDir::new().unwrap();
    let k4 = path(&dir, "k4.txt");
    std::fs::write(&k4, "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let out = run_ok(&["run", "--algo", "strength", "--in", &s(&k4)]);
    let line = stdout(&out);
    assert!(line.contains(" s=3 route=regular bound=4 "), "summary: {line}");
}

#[test]
fn rounding_rejects_a_weight_count_mismatch() {
    let dir = TempDir::new().unwrap();
    let c3 = triangle(&dir);
    let w = path(&dir, "short.txt");
    std::fs::write(&w, "1/2\n1/2\n").unwrap();
    assert_eq!(
        exit_code(&["run", "--algo", "round", "--in", &s(&c3), "--weights", &s(&w)]),
        4,
        "weight files must cover every edge"
    );
}
