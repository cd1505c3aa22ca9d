use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use astlab::algebra::UniPoly;
use astlab::weights::{Method, WeightRecord};
use astlab_cli::cache::format_line;

fn astlab(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_astlab"))
        .arg("--cache")
        .arg(cache)
        .args(args)
        .env_remove("ASTLAB_MAX_SIZE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn weight_of_a_set() {
    let dir = tempfile::tempdir().unwrap();
    let o = astlab(&dir.path().join("c.jsonl"), &["weight", "--set", "{-2,-1,0,1,2}", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["factored"], "(1/12)(l+1)(l+2)(l+6)(l+7)");
    assert_eq!(v["coefficients"], "7/1,38/3,83/12,4/3,1/12");
    assert_eq!(v["shape"], "[2,2]/[]");
}

#[test]
fn weight_of_a_path_in_every_format() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let text = astlab(&cache, &["weight", "--motzkin", "UD"]);
    assert!(stdout(&text).contains("weight\t(l+1)\n"));
    let csv = astlab(&cache, &["weight", "--motzkin", "UD", "--format", "csv"]);
    let csv = stdout(&csv);
    assert!(csv.starts_with("kind,key,coefficients,factored,"), "{csv}");
    assert!(csv.contains(r#"motzkin,UD,"1/1,1/1",(l+1),1,1,"[""-1""]",,1,interpolation"#), "{csv}");
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let args = ["weight", "--set", "{-1,0,1,2,3}", "--format", "json", "--method", "op"];
    let first = astlab(&cache, &args);
    let lines = fs::read_to_string(&cache).unwrap().lines().count();
    assert!(lines >= 1);
    let second = astlab(&cache, &args);
    let fresh = Command::new(env!("CARGO_BIN_EXE_astlab")).arg("--no-cache").args(args).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, fresh.stdout);
    assert_eq!(fs::read_to_string(&cache).unwrap().lines().count(), lines, "a hit appends nothing");
}

#[test]
fn corrupt_cache_lines_are_skipped_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    fs::write(&cache, "not json\n{\"schema\":99,\"record\":{}}\n").unwrap();
    let o = astlab(&cache, &["weight", "--set", "{-1,0,1}"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stderr(&o).matches("skipped").count(), 2, "{}", stderr(&o));
    assert!(stdout(&o).contains("weight\t(l+1)\n"));
}

#[test]
fn poisoned_cache_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let wrong = WeightRecord::for_set(&"{-1,0,1}".parse().unwrap(), &UniPoly::from_ints(&[2, 1]), Method::Interpolation);
    fs::write(&cache, format_line(&wrong) + "\n").unwrap();
    let o = astlab(&cache, &["verify", "--identity", "appendix"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL appendix key={-1,0,1}: (l+2) != (l+1)"), "{}", stdout(&o));
}

#[test]
fn product_identity_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = astlab(&dir.path().join("c.jsonl"), &["verify", "--identity", "product", "--max-size", "3", "--max-l", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("PASS product: 10 checks\n"), "{}", stdout(&o));
}

#[test]
fn every_identity_passes_at_small_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    for id in ["det-andrews", "det-asm", "constant-term", "splitting", "multiplicativity"] {
        let o = astlab(&cache, &["verify", "--identity", id, "--max-size", "4", "--max-l", "3", "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{id}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["passed"], true);
        assert!(v["checks"].as_u64().unwrap() > 0, "{id}");
    }
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    for args in [
        &["weight", "--set", "{0,2}"][..],
        &["weight", "--motzkin", "DU"],
        &["weight"],
        &["verify", "--identity", "nonsense"],
        &["enumerate", "--n", "2"],
        &["frobnicate"],
    ] {
        let o = astlab(&cache, args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn resource_guard_exits_3_and_names_the_bound() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let o = astlab(&cache, &["weight", "--set", "{-4,-3,-2,-1,0,1,2,3}"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("set size 8 exceeds the bound 7"), "{}", stderr(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_astlab"))
        .args(["--no-cache", "enumerate", "--n", "4", "--l", "2"])
        .env("ASTLAB_MAX_SIZE", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = astlab(&cache, &["--limit-size", "3", "weight", "--motzkin", "UFD"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn enumerate_counts_and_streams() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let o = astlab(&cache, &["enumerate", "--n", "3", "--l", "2"]);
    assert!(stdout(&o).ends_with("total\t42\n"));
    let o = astlab(&cache, &["enumerate", "--n", "2", "--l", "2", "--emit", "trapezoids", "--format", "json"]);
    assert_eq!(stdout(&o).lines().count(), 7);
    let first: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(first["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn tables_are_stable_and_match() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let a = astlab(&cache, &["tables"]);
    let b = astlab(&cache, &["tables", "--method", "operator"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("| {-2,-1,0,1,2,3} | (1/144)(l+1)(l+2)(l+7)(l^3+23l^2+168l+360) |"));
    assert!(text.contains("| m8 | UFUDD | (1/12)(l+1)(l^4+25l^3+226l^2+864l+1176) |"));
}

#[test]
fn scans_write_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let out = dir.path().join("reports");
    for c in ["roots", "divisibility", "flatstep", "endings"] {
        let o = astlab(&cache, &["scan", "--conjecture", c, "--max-size", "5", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{c}: {}", stderr(&o));
        assert!(stdout(&o).contains(" 0 counterexamples"), "{c}: {}", stdout(&o));
        assert!(out.join(format!("{c}.json")).exists());
        assert!(out.join(format!("{c}.csv")).exists());
    }
    let roots: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("roots.json")).unwrap()).unwrap();
    assert!(roots["header"].as_str().unwrap().contains("informational"));
    assert!(!roots["windows"].as_array().unwrap().is_empty());
}
