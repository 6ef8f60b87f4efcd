use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artin-malcev"))
        .args(args)
        .current_dir(data_dir())
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

/// Compares stdout with `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites the file.
fn golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let expected = std::fs::read_to_string(&path).expect("golden file exists");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected, "{name}");
}

#[test]
fn golden_reports() {
    golden("artin_i2_4.json", &["artin", "i2_4.cox"]);
    golden("artin_a3.json", &["artin", "a3.cox"]);
    golden("artin_with_inf.json", &["artin", "with_inf.cox", "--degree", "6"]);
    golden("dihedral_6.json", &["dihedral", "6"]);
    golden("nilq_i2_6.json", &["nilq", "i2_6.pres"]);
    golden("reflection_g422.json", &["reflection", "G(4,2,2)"]);
    golden("reflection_g15.txt", &["reflection", "G15", "--format", "text"]);
    golden("raag_path3.json", &["raag", "path3.cox", "--degree", "6"]);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["artin", "with_inf.cox"][..],
        &["dihedral", "12"],
        &["raag", "free3.cox"],
        &["reflection", "G(6,2,3)"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn artin_values() {
    let v = json(&["artin", "i2_4.cox"]);
    assert_eq!(v["results"]["r"], 2);
    assert_eq!(v["results"]["nilq"]["gr2"]["invariant_factors"], serde_json::json!([2]));
    assert_eq!(v["results"]["descriptor"]["edges"], serde_json::json!([["a0", "a1"]]));

    let v = json(&["artin", "a3.cox"]);
    assert_eq!(v["results"]["r"], 1);
    assert_eq!(v["results"]["nilq"]["gr2"]["display"], "0");
    assert_eq!(v["results"]["verdict"], "gr2 ⊗ Q = 0");

    // s1 and s4 are joined by an infinite label, so the quotient keeps that non-edge
    let v = json(&["artin", "with_inf.cox"]);
    assert_eq!(v["results"]["quotient_graph"]["matrix"][0][2], "inf");
    assert_eq!(v["results"]["nilq"]["gr2"]["free_rank"], 1);
    assert_eq!(v["passed"], true);
}

#[test]
fn dihedral_values() {
    for (e, order) in [(2, None), (6, Some(3)), (12, Some(6))] {
        let v = json(&["dihedral", &e.to_string()]);
        let factors = &v["results"]["gr2"]["invariant_factors"];
        match order {
            None => assert_eq!(factors, &serde_json::json!([])),
            Some(k) => assert_eq!(factors, &serde_json::json!([k])),
        }
        assert_eq!(v["results"]["h2_map"], serde_json::json!([[e / 2]]));
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn nilq_values() {
    let v = json(&["nilq", "free3.pres"]);
    assert_eq!(v["results"]["gr2"]["display"], "Z^3");
    let v = json(&["nilq", "i2_6.pres"]);
    assert_eq!(v["results"]["gr2"]["display"], "Z/3");
    let v = json(&["nilq", "z2.pres"]);
    assert_eq!(v["results"]["gr2"]["display"], "0");
}

#[test]
fn reflection_values() {
    let v = json(&["reflection", "G(4,2,2)"]);
    assert_eq!(v["results"]["c"], 3);
    assert_eq!(v["results"]["descriptor"]["tag"], "Q × (F₂ ⊗ Q)");
    let v = json(&["reflection", "G19"]);
    assert_eq!(v["results"]["c"], 3);
    let v = json(&["reflection", "G(3,3,3)"]);
    assert_eq!(v["results"]["c"], 1);
    assert_eq!(v["results"]["descriptor"]["tag"], "Q");
    let v = json(&["reflection", "G7", "--table", "partial_table.tsv"]);
    assert_eq!(v["inputs"]["table"], "partial_table.tsv");
}

#[test]
fn raag_values() {
    let v = json(&["raag", "free3.cox", "--degree", "5"]);
    assert_eq!(v["results"]["hilbert"], serde_json::json!([1, 3, 9, 27, 81, 243]));
    let v = json(&["raag", "path3.cox"]);
    // 2^{n+1} - 1
    assert_eq!(v["results"]["hilbert"], serde_json::json!([1, 3, 7, 15, 31, 63, 127, 255, 511]));
    let v = json(&["raag", "complete3.cox"]);
    assert_eq!(v["results"]["lie_dimensions"], serde_json::json!([3, 0, 0, 0, 0, 0, 0, 0]));
}

#[test]
fn input_errors_exit_with_2() {
    for args in [
        &["dihedral", "5"][..],
        &["artin", "bad_label.cox"],
        &["artin", "missing.cox"],
        &["nilq", "a3.cox"],
        &["raag", "a3.cox"],
        &["reflection", "G(1,1,4)"],
        &["reflection", "G40"],
        &["reflection", "G8", "--table", "partial_table.tsv"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let err = String::from_utf8(run(&["artin", "bad_label.cox"]).stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
    let err = String::from_utf8(run(&["reflection", "G8", "--table", "partial_table.tsv"]).stderr).unwrap();
    assert!(err.contains("G8"), "{err}");
}

#[test]
fn timing_is_opt_in() {
    let plain = json(&["dihedral", "4"]);
    assert!(plain.get("timing_ms").is_none());
    let timed = json(&["dihedral", "4", "--timing"]);
    assert!(timed["timing_ms"].is_number());
}
