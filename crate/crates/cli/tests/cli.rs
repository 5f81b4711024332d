//! End-to-end tests of the command-line interface: exit codes, config
//! handling, report determinism, and the table output.

use std::process::{Command, Output};

fn k3fock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3fock")).args(args).output().expect("spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_passes_at_small_weight() {
    let out = k3fock(&["verify", "--n", "0", "--suite", "ring", "--suite", "diagonal"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("PASS s01-ring-surface"), "{text}");
    assert!(text.contains("0 failed"), "{text}");
}

#[test]
fn verify_detects_injected_fault() {
    let out = k3fock(&["verify", "--n", "1", "--suite", "heisenberg", "--fault", "heis-coeff"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL"), "{text}");
    assert!(text.contains("witness:"), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    // asymmetric gram matrix
    let out = k3fock(&["verify", "--n", "0", "--gram", "0 1; 2 0"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown suite
    let out = k3fock(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    // non-square gram
    let out = k3fock(&["verify", "--gram", "1 2"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown flag (clap)
    let out = k3fock(&["verify", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rho_expands_to_hyperbolic_gram() {
    let out = k3fock(&["verify", "--n", "1", "--rho", "2", "--suite", "heisenberg"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    // explicit hyperbolic gram gives the same result
    let out2 = k3fock(&["verify", "--n", "1", "--gram", "0 1; 1 0", "--suite", "heisenberg"]);
    assert_eq!(out2.status.code(), Some(0));
}

#[test]
fn json_report_is_deterministic_up_to_timing() {
    let args = ["verify", "--n", "1", "--suite", "ring", "--seed", "7", "--format", "json"];
    let a = k3fock(&args);
    let b = k3fock(&args);
    assert_eq!(a.status.code(), Some(0));
    let strip = |raw: &str| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(raw).expect("json");
        for check in v.as_array_mut().expect("array") {
            check.as_object_mut().unwrap().insert("millis".into(), 0.into());
        }
        v
    };
    assert_eq!(strip(&stdout(&a)), strip(&stdout(&b)));
}

#[test]
fn json_schema_has_expected_fields() {
    let out = k3fock(&["verify", "--n", "0", "--suite", "projectors", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    let arr = v.as_array().expect("array");
    assert!(!arr.is_empty());
    for check in arr {
        let o = check.as_object().expect("object");
        for key in ["id", "eq_anchor", "params", "status", "millis"] {
            assert!(o.contains_key(key), "missing {key} in {o:?}");
        }
        // weight 0 is below the projector suite's range, so it reports skips
        assert_eq!(o["status"], "skipped");
    }
    // ids come out sorted
    let ids: Vec<&str> = arr.iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join("k3fock-report-test.json");
    let _ = std::fs::remove_file(&path);
    let out = k3fock(&[
        "verify", "--n", "0", "--suite", "ring", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).expect("report file");
    let _: serde_json::Value = serde_json::from_str(&written).expect("json");
    std::fs::remove_file(&path).ok();
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let path = std::env::temp_dir().join("k3fock-config-test.json");
    std::fs::write(&path, r#"{"n": 1, "suites": ["heisenberg"], "seed": 3}"#).unwrap();
    let out = k3fock(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("s02-heisenberg"), "{text}");
    assert!(!text.contains("s01-ring"), "{text}");
    // a flag overrides the file
    let out = k3fock(&["verify", "--config", path.to_str().unwrap(), "--suite", "ring"]);
    let text = stdout(&out);
    assert!(text.contains("s01-ring"), "{text}");
    assert!(!text.contains("s02-heisenberg"), "{text}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn tables_small_weights() {
    let out = k3fock(&["tables", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // three one-dimensional blocks on the s = 0 column
    assert!(text.contains("i,s,dim"), "{text}");
    assert!(text.contains("0,0,1"), "{text}");
    assert!(text.contains("1,0,1"), "{text}");
    assert!(text.contains("2,0,1"), "{text}");

    let out = k3fock(&["tables", "--n", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("0,0,1"), "{text}");
    assert_eq!(text.matches("\n0,").count() + text.matches("\n1,").count(), 1, "{text}");
}

#[test]
fn tables_row_sums_match_basis_dimension() {
    let out = k3fock(&["tables", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let total: usize = text
        .lines()
        .skip(2)
        .take_while(|l| !l.is_empty())
        .map(|l| l.rsplit(',').next().unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, 26); // dim of the weight-3 space at lattice rank 1
}

#[test]
fn catalogue_lists_every_anchor() {
    let out = k3fock(&["catalogue"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("anchor\tsubject\tbounds\n"));
    assert_eq!(text.lines().count(), 43);
    assert!(text.contains("eq:heisenberg"));
}
