use std::process::{Command, Output};

fn level2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_level2"))
        .args(args)
        .env_remove("LEVEL2_BUDGET")
        .output()
        .expect("spawn level2")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn tier_b_genus_four_all_verified() {
    let o = level2(&["verify", "--genus", "4", "--tier", "b"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("falsified 0  undecided 0  gate passed"));
}

#[test]
fn zero_budget_is_undecided() {
    let o = level2(&[
        "verify",
        "--genus",
        "4",
        "--statement",
        "L2.short",
        "--budget",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("undecided"));
}

#[test]
fn budget_from_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_level2"))
        .args(["verify", "--genus", "4", "--statement", "L2.short"])
        .env("LEVEL2_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(level2(&["verify", "--genus", "3"]).status.code(), Some(3));
    assert_eq!(
        level2(&["verify", "--genus", "4", "--tier", "z"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(level2(&["bogus"]).status.code(), Some(3));
    assert_eq!(
        level2(&["homology", "--gen", "Q(1)", "--genus", "4"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn printed_variants_falsify() {
    let o = level2(&["verify", "--genus", "4", "--variant", "printed"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn mutants_are_caught() {
    let o = level2(&["verify", "--genus", "4", "--mutants", "--statement", "L2*"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verified 0 "));
}

#[test]
fn count_five() {
    let o = level2(&["count", "--genus", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "20 = 20");
}

#[test]
fn isometry_four() {
    let o = level2(&["isometry", "--genus", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bruteforce order 48"));
    assert!(stdout(&o).contains("closure order 48"));
}

#[test]
fn homology_of_r_is_level_two() {
    let o = level2(&["homology", "--gen", "R", "--genus", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1"));
    assert!(out.contains("level 2: true"));
}

#[test]
fn catalog_filters() {
    let o = level2(&[
        "catalog",
        "--genus",
        "5",
        "--statement",
        "L2.short",
        "--variant",
        "corrected",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

fn certificates_without_timing(path: &std::path::Path) -> serde_json::Value {
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    for c in v["certificates"].as_array_mut().unwrap() {
        c.as_object_mut().unwrap().remove("elapsed_ms");
    }
    v.as_object_mut().unwrap().remove("run_config");
    v
}

#[test]
fn json_independent_of_jobs() {
    let dir = std::env::temp_dir().join(format!("level2-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let one = dir.join("one.json");
    let four = dir.join("four.json");
    for (jobs, path) in [("1", &one), ("4", &four)] {
        let o = level2(&[
            "verify",
            "--genus",
            "4,5",
            "--statement",
            "L4*",
            "--jobs",
            jobs,
            "--json",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(
        certificates_without_timing(&one),
        certificates_without_timing(&four)
    );
    std::fs::remove_dir_all(&dir).ok();
}
