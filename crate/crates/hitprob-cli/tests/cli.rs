//! End-to-end checks of the binary: argument handling, exit codes, output
//! formats, and the cache contract.

use std::process::{Command, Output};

fn hitprob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hitprob"))
        .args(args)
        .env_remove("HITPROB_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn mu_command() {
    let out = hitprob(&["mu", "26"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("mu(26) = 4"), "{text}");

    let out = hitprob(&["--format", "json", "mu", "26"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["mu"], 4);
    assert_eq!(v["spike_exponents"], serde_json::json!([4, 3, 2, 1]));
}

#[test]
fn cohit_json_shape() {
    let out = hitprob(&[
        "--format",
        "json",
        "cohit",
        "--vars",
        "3",
        "--degree",
        "10",
        "--emit-monomials",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["h"], 3);
    assert_eq!(v["n"], 10);
    assert_eq!(v["dim"], 14);
    let strata = v["strata"].as_array().unwrap();
    let total: u64 = strata.iter().map(|s| s["dim"].as_u64().unwrap()).sum();
    assert_eq!(total, 14);
    for s in strata {
        assert!(s["monomials"].as_array().is_some());
    }
}

#[test]
fn by_weight_matches_full() {
    let full = hitprob(&["--format", "json", "cohit", "--vars", "4", "--degree", "7"]);
    let strat = hitprob(&[
        "--format",
        "json",
        "cohit",
        "--vars",
        "4",
        "--degree",
        "7",
        "--by-weight",
        "--emit-monomials",
    ]);
    let a: serde_json::Value = serde_json::from_str(&stdout(&full)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&strat)).unwrap();
    assert_eq!(a["dim"], b["dim"]);
}

#[test]
fn no_filters_changes_nothing() {
    let with = hitprob(&["--format", "json", "cohit", "--vars", "3", "--degree", "8", "--emit-monomials"]);
    let without = hitprob(&[
        "--format",
        "json",
        "cohit",
        "--vars",
        "3",
        "--degree",
        "8",
        "--emit-monomials",
        "--no-filters",
    ]);
    let a: serde_json::Value = serde_json::from_str(&stdout(&with)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&without)).unwrap();
    assert_eq!(a["strata"], b["strata"]);
}

#[test]
fn usage_errors_exit_2() {
    let out = hitprob(&["cohit", "--vars", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hitprob(&["kameko", "--vars", "6", "--degree", "27"]);
    assert_eq!(out.status.code(), Some(2));
    // refusing a long job without --allow-long is a usage error
    let out = hitprob(&["cohit", "--vars", "6", "--degree", "26"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.fix");
    std::fs::write(&good, "h 2\nn 3\nomega 1,1\nkind admissible\nm 3,0\nm 1,2\nm 0,3\n").unwrap();
    let out = hitprob(&["verify", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let bad = dir.path().join("bad.fix");
    std::fs::write(&bad, "h 2\nn 3\nomega 1,1\nkind admissible\nm 3,0\nm 2,1\nm 0,3\n").unwrap();
    let out = hitprob(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));

    let malformed = dir.path().join("malformed.fix");
    std::fs::write(&malformed, "h 2\nwhat 3\n").unwrap();
    let out = hitprob(&["verify", malformed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tables_suites_run_clean() {
    for suite in ["mm", "mkr", "induction", "orders"] {
        let out = hitprob(&["tables", "--suite", suite, "--max-vars", "3"]);
        assert!(out.status.success(), "suite {suite}: {}", stdout(&out));
    }
    let out = hitprob(&["--format", "csv", "tables", "--suite", "mm", "--max-vars", "2"]);
    assert!(stdout(&out).starts_with("h,n,formula,computed,match\n"));
}

#[test]
fn cache_roundtrip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hitprob"))
            .args(["--format", "json", "cohit", "--vars", "4", "--degree", "9"])
            .env("HITPROB_CACHE", dir.path())
            .output()
            .expect("binary runs")
    };
    let first = run();
    assert!(first.status.success());
    assert!(dir.path().join("cohit-h4-n9.json").exists());
    let second = run();
    assert_eq!(first.stdout, second.stdout);

    // a tampered entry is recomputed and rewritten
    let path = dir.path().join("cohit-h4-n9.json");
    std::fs::write(&path, "sha256:junk\n{}").unwrap();
    let third = run();
    assert_eq!(first.stdout, third.stdout);
    let repaired = std::fs::read_to_string(&path).unwrap();
    assert!(repaired.starts_with("sha256:"));
    assert!(!repaired.contains("junk"));
}

#[test]
fn invariants_json() {
    let out = hitprob(&[
        "--format",
        "json",
        "invariants",
        "--vars",
        "2",
        "--degree",
        "3",
        "--weight",
        "1,1",
        "--group",
        "gl",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dim"], 1);
    assert_eq!(v["group"], "gl");
    assert_eq!(v["invariants"][0].as_array().unwrap().len(), 3);
}

#[test]
fn kameko_json() {
    let out = hitprob(&["--format", "json", "kameko", "--vars", "3", "--degree", "9"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["source_degree"], 9);
    assert_eq!(v["target_degree"], 3);
    assert_eq!(v["surjective"], true);
}
