use std::process::{Command, Output};

use serde_json::Value;

fn fhc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fhc"))
        .args(args)
        .env_remove("FHC_ORACLE_BOUND")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = fhc(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn cmp_prints_the_four_verdicts() {
    assert_eq!(stdout(&["cmp", "{0,1}", "[0:[1:]]", "--k", "2", "--n", "0"]), "<\n");
    assert_eq!(stdout(&["cmp", "[0:[1:]]", "{0,1}"]), ">\n");
    assert_eq!(stdout(&["cmp", "[0:[1:]]", "{[0:[1:]],0}"]), "=\n");
    assert_eq!(stdout(&["cmp", "[0:[1:]]", "[1:[0:]]"]), "||\n");
    // one level up the two chains collapse to the same pair of colors
    assert_eq!(stdout(&["cmp", "[0:[1:]]", "[1:[0:]]", "--n", "1"]), "=\n");
}

#[test]
fn oracle_agrees_and_honours_its_bound() {
    for (a, b) in [("{0,1}", "[0:[1:]]"), ("[0:[1:[0:]]]", "[[0:]:[[1:]:]]")] {
        for n in ["0", "1"] {
            assert_eq!(
                stdout(&["cmp", a, b, "--n", n]),
                stdout(&["cmp", a, b, "--n", n, "--oracle"]),
            );
        }
    }
    let out = Command::new(env!("CARGO_BIN_EXE_fhc"))
        .args(["cmp", "[0:[1:[0:]]]", "[1:[0:[1:]]]", "--oracle"])
        .env("FHC_ORACLE_BOUND", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("oracle too large"));
}

#[test]
fn term_commands() {
    assert_eq!(stdout(&["jump-height", "G(0,1,G(0,1,0))"]), "2\n");
    assert_eq!(stdout(&["encode", "[0:[1:]]"]), "(0 .0 1)\n");
    assert_eq!(stdout(&["encode", "[0:[1:]]", "--n", "1"]), "(0 .1 1)\n");
    assert_eq!(stdout(&["s2g", "(0 .0 1)"]), "G(1,0,0)\n");
    assert_eq!(stdout(&["g2s", "G(1,0,0)"]), "(0 .0 1)\n");
    assert_eq!(stdout(&["eval", "((0+1) .0 0)"]), "[1:[0:]]\n");
    assert_eq!(stdout(&["normalize", "((1 .0 1) .1 0)", "--n", "1", "--m", "1"]), "((1+1) .1 0)\n");
    assert_eq!(stdout(&["normalize", "(0 .1 0)", "--n", "1"]), "0\n");
    assert_eq!(fhc(&["normalize", "(0 .1 1)", "--n", "1"]).status.code(), Some(1));
}

#[test]
fn forest_commands() {
    assert_eq!(stdout(&["min", "{[0:[1:]],0,[0:[0:[1:]]]}"]), "[0:[1:]]\n");
    assert_eq!(stdout(&["decompose", "{[0:[1:]],1,[1:[0:]]}"]), "[0:[1:]]\n[1:[0:]]\n");
    assert_eq!(stdout(&["witness", "[0:[1:]]"]), "G(1,0,0)\n");
    assert_eq!(stdout(&["level-subset", "{0,1}", "[0:[1:]]"]), "subset\n");
    assert_eq!(stdout(&["level-subset", "0", "1"]), "incomparable\n");
    assert_eq!(stdout(&["build-T", "w", "0", "--k", "2", "--n", "0"]), "[[0:[1:]]:]\n");
    assert_eq!(stdout(&["build-T", "2", "1"]), "[1:[0:[1:]]]\n");
}

#[test]
fn json_output_has_the_documented_shape() {
    let doc: Value =
        serde_json::from_str(&stdout(&["cmp", "{0,1}", "[0:[1:]]", "--format", "json"])).unwrap();
    assert_eq!(doc["verdict"], "<");
    assert_eq!(doc["lhs"], "{0,1}");
    assert_eq!(doc["rhs"], "[0:[1:]]");
    assert_eq!(doc["params"]["k"], 2);
    assert_eq!(doc["params"]["n"], 0);

    let doc: Value =
        serde_json::from_str(&stdout(&["jump-height", "G(0,1,0)", "--format", "json"])).unwrap();
    assert_eq!(doc["verdict"], 1);
    assert!(doc["rhs"].is_null());

    let doc: Value =
        serde_json::from_str(&stdout(&["enumerate", "--nodes", "1", "--format", "json"])).unwrap();
    assert_eq!(doc["verdict"]["classes"], serde_json::json!(["{}", "0", "1"]));
    assert_eq!(doc["verdict"]["covers"], serde_json::json!([[0, 1], [0, 2]]));
}

#[test]
fn segment_commands() {
    let cache = stdout(&["enumerate", "--nodes", "2", "--level", "1"]);
    assert!(cache.starts_with("fhc-segment v1 k=2 nodes=2 level=1\n{}\n0\n1\n{0,1}\n"));
    let dot = stdout(&["diagram", "--nodes", "2"]);
    assert!(dot.starts_with("digraph segment {\n"));
    assert_eq!(dot, stdout(&["enumerate", "--nodes", "2", "--format", "dot"]));
    assert_eq!(dot.matches("[label=").count(), 6);
}

#[test]
fn user_errors_exit_with_one() {
    for args in [
        vec!["bogus"],
        vec!["cmp", "0"],
        vec!["cmp", "0", "2"],
        vec!["cmp", "[0:", "0"],
        vec!["cmp", "0", "1", "--frobnicate"],
        vec!["eval", "G((0 .0 1),0,0)"],
        vec!["build-T", "w+w^2", "0"],
        vec!["build-T", "1", "0", "--k", "w"],
        vec!["min", "0", "--format", "dot"],
        vec!["level-subset", "{}", "0"],
        vec!["encode", "{}"],
    ] {
        let out = fhc(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn resource_guard_exits_with_two() {
    let out = fhc(&["enumerate", "--k", "3", "--nodes", "12"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("segment too large"));
}

#[test]
fn help_succeeds() {
    let out = fhc(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("build-T"));
}

#[test]
fn in_process_dispatch_matches_the_binary() {
    let args = ["fhc", "build-T", "w*2", "1"];
    let outcome = fhc_cli::run(args);
    assert_eq!(outcome.code, 0);
    assert_eq!(outcome.stdout, stdout(&args[1..]));
}
