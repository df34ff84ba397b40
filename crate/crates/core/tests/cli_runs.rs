use std::path::PathBuf;
use std::process::Command;

use bergman_core::cli::{
    run_solve, run_study, run_verify, Envelope, RunConfig, SolveBody, SolveOutcome, StudyKind,
    EXIT_CHECK_FAILED, EXIT_INVALID_INPUT, EXIT_PASS,
};
use bergman_core::kernels::KernelSpec;

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bergman-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn bergman(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bergman")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn config(p: u32, degree: usize, kernel: KernelSpec) -> RunConfig {
    RunConfig::new(p, degree).with_kernel(kernel)
}

#[test]
fn solve_bodies_are_deterministic() {
    let c = config(4, 24, KernelSpec::Random { degree: 6, seed: 5 });
    let spec = c.kernel.clone().unwrap();
    let a = serde_json::to_string(&run_solve(&c, &spec).unwrap()).unwrap();
    let b = serde_json::to_string(&run_solve(&c, &spec).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn study_bodies_are_deterministic() {
    let mut c = RunConfig::new(4, 8);
    c.seed = Some(3);
    let a = run_study(&c, StudyKind::Growth).unwrap();
    let b = run_study(&c, StudyKind::Growth).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
}

#[test]
fn stored_solution_reverifies_identically() {
    let c = config(4, 64, KernelSpec::PowerDecay { alpha: 2.0, count: 64 });
    let body = run_solve(&c, c.kernel.as_ref().unwrap()).unwrap();
    assert_eq!(body.exit_code(), EXIT_PASS);
    let text = Envelope::new(None, &body).to_json().unwrap();
    let stored: Envelope<SolveBody> = serde_json::from_str(&text).unwrap();
    assert_eq!(stored.body, body);
    let again = run_verify(&stored.body).unwrap();
    let SolveOutcome::Converged { extremality_residuals, checks, .. } = &body.outcome else {
        panic!("not converged")
    };
    for (a, b) in extremality_residuals.iter().zip(&again.extremality_residuals) {
        assert!((a - b).norm() <= 1e-14);
    }
    for (a, b) in checks.iter().zip(&again.checks) {
        assert!((a.residual - b.residual).abs() <= 1e-14, "{}", a.check_name);
    }
    let norm_eq = checks.iter().find(|c| c.check_name == "norm_equality").unwrap();
    assert!(norm_eq.residual <= 1e-4);
}

#[test]
fn binary_exit_codes() {
    let bad = scratch("bad.json", r#"{"p": 3, "degree": 4}"#);
    assert_eq!(bergman(&["solve", "--config", bad.to_str().unwrap()]).0, EXIT_INVALID_INPUT);
    let garbled = scratch("garbled.json", "{ not json");
    assert_eq!(bergman(&["solve", "--config", garbled.to_str().unwrap()]).0, EXIT_INVALID_INPUT);

    let good = scratch(
        "one.json",
        r#"{"schema_version": 1, "p": 4, "degree": 3,
            "checks": ["extremality", "norm_equality", "fourier_formula", "coefficient_bound"],
            "kernel": {"type": "coeffs", "values": [[1, 0]]}}"#,
    );
    let out = good.with_file_name("one-report.json");
    let (code, _) = bergman(&["solve", "--config", good.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    let (code, stdout) = bergman(&[
        "verify",
        "--config",
        good.to_str().unwrap(),
        "--input",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_PASS);
    assert!(stdout.contains("\"schema_version\": 1"));

    // The P_n solution for a generic kernel leaves |F|^p with small Fourier
    // coefficients above the kernel's degree, so the coefficient bound fails.
    let generic = scratch(
        "generic.json",
        r#"{"p": 4, "degree": 16, "checks": ["coefficient_bound"],
            "kernel": {"type": "random", "degree": 8, "seed": 8}}"#,
    );
    assert_eq!(bergman(&["solve", "--config", generic.to_str().unwrap()]).0, EXIT_CHECK_FAILED);
}

#[test]
fn study_csv_records_seed() {
    let cfg = scratch(
        "growth.json",
        r#"{"p": 4, "degree": 6, "family": [{"type": "coeffs", "values": [[1, 0]]}, {"type": "random", "degree": 4, "seed": 2}]}"#,
    );
    let (code, stdout) = bergman(&[
        "study", "growth", "--config", cfg.to_str().unwrap(), "--format", "csv", "--seed", "42", "--jobs", "2",
    ]);
    assert_eq!(code, EXIT_PASS);
    assert!(stdout.lines().any(|l| l == "# seed=42"));
    let table: Vec<&str> = stdout.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(table[0], "kernel_id,q1,p1,k_hardy,k_bergman,f_hardy,ratio");
    assert_eq!(table.len(), 1 + 2 * 3);
    assert!(table[1].starts_with("coeffs[1],") && table[1].ends_with(",1.0"));
}

#[test]
fn oracle_compare_small_kernel() {
    let cfg = scratch(
        "oracle.json",
        r#"{"p": 4, "degree": 3, "kernel": {"type": "coeffs", "values": [[0, 0], [1, 0]]}}"#,
    );
    let (code, stdout) = bergman(&["oracle-compare", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS, "{stdout}");
}
