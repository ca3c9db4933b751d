//! End-to-end checks of the binary: flags, exit codes, output determinism,
//! and the function file format.

use std::io::Write;
use std::process::{Command, Output};

fn canalyze(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_canalyze"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Walks a JSON document asserting every number is an integer.
fn assert_no_floats(value: &serde_json::Value) {
    match value {
        serde_json::Value::Number(n) => {
            assert!(n.is_u64() || n.is_i64(), "float token in output: {n}");
        }
        serde_json::Value::Array(items) => items.iter().for_each(assert_no_floats),
        serde_json::Value::Object(map) => map.values().for_each(assert_no_floats),
        _ => {}
    }
}

#[test]
fn count_both_matches_and_exits_zero() {
    let out = canalyze(&[
        "count", "--q", "2", "--n", "3", "--family", "i=*,a=*,b=*", "--method", "both",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("120"), "{text}");
    assert!(text.contains("Thm 5"), "{text}");
    assert!(text.contains("yes"), "{text}");
}

#[test]
fn count_json_has_no_float_tokens() {
    for args in [
        vec!["count", "--q", "2", "--n", "3", "--family", "i=*,a=*,b=*", "--method", "both", "--json"],
        vec!["verify", "--q", "2", "--n", "2", "--json"],
        vec!["identity", "--n-max", "6", "--json"],
        vec!["asymptote", "--q", "2", "--n", "4", "--family", "i=*,a=*,b=0", "--json"],
        vec!["bound", "--q", "3", "--n", "2", "--json"],
    ] {
        let out = canalyze(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
        assert_no_floats(&doc);
    }
}

#[test]
fn count_json_reports_decimal_strings() {
    let out = canalyze(&[
        "count", "--q", "2", "--n", "4", "--family", "i=*,a=*,b=*", "--method", "both", "--json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["formula"], "3514");
    assert_eq!(doc["brute"], "3514");
    assert_eq!(doc["theorem"], "Thm 5");
    assert_eq!(doc["match"], true);
}

#[test]
fn non_prime_power_exits_three() {
    let out = canalyze(&["count", "--q", "6", "--n", "2", "--family", "i=*,a=*,b=*"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("prime power"), "{err}");
}

#[test]
fn oversized_enumeration_exits_three() {
    let out = canalyze(&[
        "brute", "--q", "5", "--n", "2", "--family", "i=*,a=*,b=*",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    let out = canalyze(&["count", "--q", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = canalyze(&["count", "--q", "2", "--n", "2", "--family", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = canalyze(&["count", "--q", "2", "--n", "2", "--family", "i=9,a=*,b=*"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_on_the_small_grid() {
    for (q, n) in [("2", "2"), ("3", "1"), ("4", "1")] {
        let out = canalyze(&["verify", "--q", q, "--n", n, "--workers", "2"]);
        assert_eq!(out.status.code(), Some(0), "q={q} n={n}");
        assert!(stdout(&out).contains("result: ok"));
    }
}

#[test]
fn identity_command_agrees() {
    let out = canalyze(&["identity", "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in ["1  0    0    yes", "4  10   10   yes"] {
        assert!(text.contains(line), "{text}");
    }
}

#[test]
fn asymptote_reports_exact_fraction() {
    let out = canalyze(&["asymptote", "--q", "2", "--n", "3", "--family", "i=*,a=*,b=*"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("5/8"), "{text}");
    assert!(text.contains("0.625000000000"), "{text}");

    let out = canalyze(&[
        "asymptote", "--q", "2", "--n", "3", "--family", "i=*,a=*,b=*", "--digits", "4", "--json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["ratio"]["numerator"], "5");
    assert_eq!(doc["ratio"]["denominator"], "8");
    assert_eq!(doc["decimal"], "0.6250");
}

#[test]
fn bound_holds() {
    let out = canalyze(&["bound", "--q", "2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("120"));
    assert!(text.contains("192"));
    assert!(text.contains("yes"));
}

#[test]
fn sampling_is_deterministic_and_member() {
    let args = [
        "sample", "--q", "3", "--n", "2", "--i", "1", "--a", "0", "--b", "2", "--seed", "42",
        "--count", "3",
    ];
    let first = canalyze(&args);
    let second = canalyze(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "sampling must be byte-identical");
    let text = stdout(&first);
    assert_eq!(text.lines().count(), 3);
    for line in text.lines() {
        let doc: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(doc["q"], 3);
        assert_eq!(doc["n"], 2);
        // Row x1 = 0 forced to output 2: table indices 0, 3, 6.
        let table = doc["table"].as_array().unwrap();
        assert_eq!(table.len(), 9);
        for idx in [0, 3, 6] {
            assert_eq!(table[idx], 2, "line {line}");
        }
    }
}

#[test]
fn analyze_reads_both_representations() {
    let dir = tempfile::tempdir().unwrap();

    let table_path = dir.path().join("and.json");
    let mut file = std::fs::File::create(&table_path).unwrap();
    writeln!(file, r#"{{"q":2,"n":2,"table":[0,0,0,1]}}"#).unwrap();
    let out = canalyze(&["analyze", "--file", table_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("anf: x1*x2"), "{text}");
    assert!(text.contains("degree: 2"), "{text}");
    assert!(text.contains("essential variables: x1 x2"), "{text}");
    assert!(text.contains("canalyzing triples: <1:0:0> <2:0:0>"), "{text}");

    let anf_path = dir.path().join("anf.json");
    let mut file = std::fs::File::create(&anf_path).unwrap();
    writeln!(
        file,
        r#"{{"q":2,"n":2,"anf":[{{"coeff":1,"exps":[1,1]}}]}}"#
    )
    .unwrap();
    let out = canalyze(&["analyze", "--file", anf_path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["anf_string"], "x1*x2");
    assert_eq!(doc["degree"], 2);
    assert_eq!(doc["triples"][0]["i"], 1);
    assert_eq!(doc["triples"][0]["a"], 0);
    assert_eq!(doc["triples"][0]["b"], 0);
    assert_no_floats(&doc);
}

#[test]
fn analyze_rejects_malformed_files() {
    let dir = tempfile::tempdir().unwrap();

    // Both representations at once.
    let both = dir.path().join("both.json");
    std::fs::write(
        &both,
        r#"{"q":2,"n":1,"table":[0,1],"anf":[{"coeff":1,"exps":[1]}]}"#,
    )
    .unwrap();
    let out = canalyze(&["analyze", "--file", both.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Value code outside the field.
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"q":2,"n":1,"table":[0,2]}"#).unwrap();
    let out = canalyze(&["analyze", "--file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Wrong table length.
    let short = dir.path().join("short.json");
    std::fs::write(&short, r#"{"q":2,"n":2,"table":[0,1]}"#).unwrap();
    let out = canalyze(&["analyze", "--file", short.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Missing file.
    let out = canalyze(&["analyze", "--file", dir.path().join("gone.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sampled_records_round_trip_through_analyze() {
    let out = canalyze(&[
        "sample", "--q", "2", "--n", "2", "--i", "2", "--a", "1", "--b", "0", "--seed", "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let record = stdout(&out);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sampled.json");
    std::fs::write(&path, record.trim()).unwrap();
    let out = canalyze(&["analyze", "--file", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let triples = doc["triples"].as_array().unwrap();
    assert!(
        triples
            .iter()
            .any(|t| t["i"] == 2 && t["a"] == 1 && t["b"] == 0),
        "sampled function must carry its defining triple: {doc}"
    );
}

#[test]
fn repeated_invocations_are_byte_identical() {
    for args in [
        vec!["verify", "--q", "2", "--n", "3"],
        vec!["count", "--q", "3", "--n", "2", "--family", "i=*,a=0,b=*", "--method", "both"],
        vec!["identity", "--n-max", "8", "--json"],
    ] {
        let first = canalyze(&args);
        let second = canalyze(&args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}
