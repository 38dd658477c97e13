use serde_json::Value;
use std::process::{Command, Output};

fn lzd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lzd")).args(args).env_remove("LZD_CACHE_DIR").output().expect("spawn lzd")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn run_ok(args: &[&str]) -> Value {
    let out = lzd(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    json(&out)
}

#[test]
fn check_tr_even_distinguished() {
    let v =
        run_ok(&["--no-timing", "check", "--q", "3", "--ram", "tr", "--n", "2", "--d", "1", "--a", "2", "--t", "0"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "check");
    assert_eq!(v["distinguished"], true);
    assert_eq!(v["multiplicity"], 1);
    assert_eq!(v["case"], "TR_EVEN");
    assert_eq!(v["certificate"]["kind"], "WITNESS_TR_EVEN");
    assert_eq!(v["certificate"]["product"], "1/2");
    assert_eq!(v["inputs"]["t"], "0/1");
    assert!(v.get("timing").is_none());
}

#[test]
fn check_nr_even_is_never_distinguished() {
    let v = run_ok(&["check", "--q", "3", "--ram", "nr", "--n", "2", "--d", "2", "--a", "1", "--t", "0"]);
    assert_eq!(v["distinguished"], false);
    assert_eq!(v["multiplicity"], 0);
    assert_eq!(v["case"], "NR_EVEN");
    assert_eq!(v["certificate"]["kind"], "PARITY");
    assert!(v["timing"]["elapsed_ms"].is_u64());
}

#[test]
fn short_orbit_is_invalid_input() {
    let out = lzd(&["check", "--q", "3", "--ram", "tr", "--n", "2", "--d", "1", "--a", "4", "--t", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["error"], "NOT_REGULAR");
    assert!(!out.stderr.is_empty());
}

#[test]
fn negative_exponent_is_reduced() {
    let v =
        run_ok(&["--no-timing", "check", "--q", "3", "--ram", "tr", "--n", "2", "--d", "1", "--a", "-6", "--t", "0"]);
    assert_eq!(v["exponent"], 2);
    assert_eq!(v["distinguished"], true);
}

#[test]
fn bad_flags_are_invalid_input() {
    for args in [
        &["check", "--q", "3", "--ram", "xx", "--n", "2", "--d", "1", "--a", "2", "--t", "0"][..],
        &["check", "--q", "3", "--ram", "tr", "--n", "2", "--d", "1", "--a", "2", "--t", "half"],
        &["check", "--q", "3", "--ram", "tr", "--n", "2", "--d", "1"],
        &["buildings", "--case", "tr-odd", "--m", "0"],
        &["bogus"],
    ] {
        let out = lzd(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(json(&out)["error"], "INVALID_ARGUMENT", "{args:?}");
    }
}

#[test]
fn setup_errors_carry_their_reason() {
    let cases: [(&[&str], &str); 3] = [
        (&["check", "--q", "3", "--ram", "tr", "--n", "4", "--d", "3", "--a", "1", "--t", "0"], "NOT_DIVISOR"),
        (&["check", "--q", "6", "--ram", "nr", "--n", "2", "--d", "1", "--a", "1", "--t", "0"], "NOT_PRIME_POWER"),
        (&["check", "--q", "4", "--ram", "tr", "--n", "2", "--d", "1", "--a", "1", "--t", "0"], "RAMIFIED_EVEN_Q"),
    ];
    for (args, reason) in cases {
        let out = lzd(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(json(&out)["error"], reason, "{args:?}");
    }
}

#[test]
fn buildings_tr_odd_m3() {
    let v = run_ok(&["--no-timing", "buildings", "--case", "tr-odd", "--m", "3"]);
    assert_eq!(v["count"], 6);
    assert_eq!(v["expected"], 6);
    let vertices = v["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 6);
    assert!(vertices.iter().all(|p| p.as_array().unwrap().len() == 3));
}

#[test]
fn buildings_counts_for_each_case() {
    for (case, m, count) in [("nr-odd", 4, 4), ("nr-even", 3, 0), ("tr-even", 4, 4), ("tr-odd", 5, 15)] {
        let v = run_ok(&["--no-timing", "buildings", "--case", case, "--m", &m.to_string()]);
        assert_eq!(v["count"], count, "{case} m={m}");
    }
}

#[test]
fn census_tr_even_q3() {
    let v = run_ok(&["--no-timing", "census", "--q", "3", "--ram", "tr", "--n", "2", "--d", "1"]);
    assert_eq!(v["distinguished_orbits"], 1);
    let row = &v["rows"][0];
    assert_eq!(row["case"], "TR_EVEN");
    assert_eq!(row["orbits"], 3);
    assert_eq!(row["parameters"], 6);
    assert_eq!(row["distinguished"][0]["a"], 2);
}

#[test]
fn census_defaults_to_all_divisors() {
    let v = run_ok(&["--no-timing", "census", "--q", "3", "--ram", "nr", "--n", "2"]);
    let ds: Vec<u64> = v["inputs"]["d"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect();
    assert_eq!(ds, [1, 2]);
    assert_eq!(v["distinguished_orbits"], 0);
}

#[test]
fn preservation_nr_odd_q3() {
    let v = run_ok(&["--no-timing", "preservation", "--q", "3", "--n", "3", "--ram", "nr"]);
    assert_eq!(v["mismatches"], Value::Array(vec![]));
    assert!(v["orbits"].as_u64().unwrap() > 0);
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["--no-timing", "census", "--q", "5", "--ram", "tr", "--n", "2"];
    let a = lzd(&args);
    let b = lzd(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_output_has_header_and_rows() {
    let out = lzd(&["--format", "csv", "buildings", "--case", "tr-even", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "case,m,vertex");
    assert_eq!(lines.len(), 4);
}

#[test]
fn oracle_suite_uses_cache() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_lzd"))
            .args(["oracle", "lusztig"])
            .env("LZD_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(first.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&first.stderr));
    let v = json(&first);
    assert_eq!(v["pass"], true);
    assert!(v["suites"][0]["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    let second = json(&run());
    assert!(second["timing"]["cache_hits"].as_u64().unwrap() > 0);
}

#[test]
fn unknown_suite_is_rejected() {
    let out = lzd(&["oracle", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "INVALID_SETUP");
}

#[test]
fn green_verify_q3() {
    let v = run_ok(&["--no-timing", "green-verify", "--q", "3"]);
    let matches = v["matches"].as_array().unwrap();
    // (9 - 3) / 2 regular orbits of F_9^× under Frobenius.
    assert_eq!(matches.len(), 3);
    for m in matches {
        assert_eq!(m["degree"], "2");
        let value = &m["values"][0]["value"];
        assert_eq!(value["conductor"], 8);
        assert!(value["coeffs"].is_array());
    }
}

#[test]
fn green_verify_rejects_even_q() {
    let out = lzd(&["green-verify", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "UNSUPPORTED");
}
