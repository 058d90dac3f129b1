use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauer-fusion")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn tableaux_of_skew_shape_lists_row_contents() {
    let out = run(&["tableaux", "--lambda", "5,3,3,3,3", "--mu", "3,3,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("9 boxes"));
    assert!(stdout(&out).contains("row tableau contents: 3,4,0,-3,-2,-1,-4,-3,-2"));
}

#[test]
fn tableaux_of_hook_counts_two() {
    let out = run(&["tableaux", "--lambda", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("2 standard tableaux"));
}

#[test]
fn containment_failure_is_a_usage_error() {
    let out = run(&["tableaux", "--lambda", "1", "--mu", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not contained"));
}

#[test]
fn fusion_f_ranks() {
    let out = run(&["fusion-f", "--form", "O", "--N", "3", "--lambda", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("rank 5\n"));
    let out = run(&["fusion-f", "--form", "Sp", "--N", "2", "--lambda", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("rank 3\n"));
}

#[test]
fn fusion_f_rejects_invalid_label() {
    // λ = (1,1,1) has first column 3 > N = 2 for Sp_2
    let out = run(&["fusion-f", "--form", "Sp", "--N", "2", "--lambda", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn symmetrizer_hook_has_six_terms() {
    let out = run(&["symmetrizer", "--lambda", "2,1", "--tableau", "row"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("terms 6\n"));
    let out = run(&["symmetrizer", "--lambda", "2,1", "--tableau", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_prop33_sweep_passes() {
    let out = run(&["verify", "--suite", "prop33", "--max-boxes", "3", "--N", "3", "--form", "O"]);
    assert_eq!(out.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = cert["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    assert!(entries.iter().all(|e| e["pass"] == true && e["runtime_ms"].is_u64() && e["paper_ref"].is_string()));
}

#[test]
fn verify_yang_baxter_with_seed_passes() {
    let out = run(&["verify", "--suite", "yang-baxter", "--N", "2", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_odd_symplectic_is_a_usage_error() {
    let out = run(&["verify", "--suite", "prop33", "--form", "Sp", "--N", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_remaining_suites_pass() {
    for suite in ["idempotency", "corollary32", "intertwiners", "lemma44"] {
        let out = run(&["verify", "--suite", suite, "--N", "2", "--max-boxes", "3"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
    }
    let out = run(&["verify", "--suite", "theta-factorization", "--N", "2", "--M", "1", "--max-boxes", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn certificates_are_reproducible_and_sorted() {
    let dir = std::env::temp_dir().join(format!("brauer-fusion-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let paths = [dir.join("a.json"), dir.join("b.json")];
    for (path, suites) in paths.iter().zip(["lemma44,idempotency", "idempotency,lemma44"]) {
        let out = run(&["verify", "--suite", suites, "--N", "2", "--seed", "7", "--no-timings", "--output", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let cert: serde_json::Value = serde_json::from_slice(&a).unwrap();
    let names: Vec<&str> = cert["entries"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(cert["version"], "1");
    assert_eq!(cert["config"]["seed"], 7);
    std::fs::remove_dir_all(&dir).unwrap();
}
