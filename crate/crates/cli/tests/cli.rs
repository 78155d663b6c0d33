use std::path::Path;
use std::process::{Command, Output};

fn beltrami(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_beltrami"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("BELTRAMI_SURFACE")
        .env_remove("BELTRAMI_CASES")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn summary(dir: &Path) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(dir.join("summary.csv")).unwrap();
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn verify_gauss_bonnet_on_the_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let o = beltrami(
        dir.path(),
        &["verify", "--surface", "sphere:R=1", "--cases", "gauss_bonnet*"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = summary(dir.path());
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "gauss_bonnet");
    assert_eq!(rows[0][5], "CONFIRMED");
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(json["schema_version"], "beltrami-report/1");
    assert_eq!(json["reports"].as_array().unwrap().len(), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("CONFIRMED"));
}

#[test]
fn nonflat_cases_skip_on_the_plane() {
    let dir = tempfile::tempdir().unwrap();
    let o = beltrami(dir.path(), &["verify", "--surface", "plane", "--cases", "theorem10*"]);
    assert_eq!(code(&o), 0);
    let rows = summary(dir.path());
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r[5] == "SKIPPED(nonflat-required)"), "{rows:?}");
}

#[test]
fn error_exit_codes_are_distinct() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&beltrami(d, &["verify", "--cases", "no_such_*"])), 4);
    assert_eq!(code(&beltrami(d, &["verify", "--surface", "klein_bottle"])), 3);
    assert_eq!(code(&beltrami(d, &["verify", "--grid", "8y8"])), 2);
    assert_eq!(code(&beltrami(d, &["verify", "--mode", "symbolic"])), 2);
    let o = beltrami(
        d,
        &[
            "convergence",
            "beltrami_routes",
            "--surface",
            "sphere",
            "--grid",
            "8x8,16x16",
        ],
    );
    assert_eq!(code(&o), 2);
    let bad = d.join("bad.json");
    std::fs::write(&bad, r#"{"seeds": 3}"#).unwrap();
    assert_eq!(code(&beltrami(d, &["verify", "--config", bad.to_str().unwrap()])), 2);
}

#[test]
fn empty_case_set_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let o = beltrami(dir.path(), &["verify", "--surface", "plane", "--exclude", "*"]);
    assert_eq!(code(&o), 0);
    assert!(summary(dir.path()).is_empty());
}

#[test]
fn convergence_writes_a_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = beltrami(
        dir.path(),
        &[
            "convergence",
            "beltrami_routes",
            "--surface",
            "sphere",
            "--mode",
            "fd",
            "--grid",
            "8,16,32",
        ],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("convergence.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "grid,h,max_residual,order");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].ends_with(",n/a"));
    let p: f64 = lines[3].rsplit(',').next().unwrap().parse().unwrap();
    assert!((1.5..=4.5).contains(&p), "{text}");
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"surfaces": ["torus"], "cases": {"include": ["theta_mc"]}, "seed": 7}"#,
    )
    .unwrap();
    let o = beltrami(
        dir.path(),
        &["verify", "--config", cfg.to_str().unwrap(), "--surface", "sphere"],
    );
    assert_eq!(code(&o), 0);
    let rows = summary(dir.path());
    assert_eq!(rows.len(), 1);
    assert!(rows[0][1].starts_with("sphere"), "{rows:?}");
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(json["config_echo"]["seed"], 7);
}

#[test]
fn identical_runs_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = [
        "verify",
        "--surface",
        "sphere;torus",
        "--cases",
        "structure_eq_*;K_three_routes",
    ];
    assert_eq!(code(&beltrami(a.path(), &args)), 0);
    assert_eq!(code(&beltrami(b.path(), &args)), 0);
    for f in ["report.json", "summary.csv"] {
        assert_eq!(
            std::fs::read(a.path().join(f)).unwrap(),
            std::fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn listings() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_beltrami"))
        .args(["list-cases", "--json"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let cases: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(cases.as_array().unwrap().len() > 80);
    let o = Command::new(env!("CARGO_BIN_EXE_beltrami"))
        .current_dir(dir.path())
        .arg("list-surfaces")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&o.stdout).contains("torus"));
}
