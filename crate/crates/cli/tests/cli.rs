use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nearring"))
        .args(args)
        .env_remove("NEARRING_ORDER_CAP")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["--format", "json"];
    argv.extend(args);
    let out = run(&argv);
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (out.status.code().unwrap(), value)
}

#[test]
fn enumerate_bi_ideals_of_z6() {
    let (code, v) = json(&["enumerate", "--kind", "bi-ideal", &fixture("z6.nr")]);
    assert_eq!(code, 0);
    assert_eq!(
        v["results"]["members"],
        serde_json::json!([[0], [0, 3], [0, 2, 4], [0, 1, 2, 3, 4, 5]])
    );
    assert_eq!(v["instance"]["file"], "z6.nr");
}

#[test]
fn report_keys_are_in_fixed_order() {
    let out = run(&["--format", "json", "enumerate", "--kind", "ideal", &fixture("z4.nr")]);
    let s = String::from_utf8(out.stdout).unwrap();
    let keys = [
        "\"tool_version\"",
        "\"instance\"",
        "\"subcommand\"",
        "\"results\"",
        "\"exit_status\"",
    ];
    let positions: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{s}");
    assert!(s.ends_with("\"exit_status\":0}\n"));
}

#[test]
fn verify_absorption_on_z4() {
    let (code, v) = json(&["verify", "--theorem", "3.6", "--all", &fixture("z4.nr")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["ideals"], serde_json::json!([[0, 2], [0, 1, 2, 3]]));
    let summary = v["results"]["summary"].as_array().unwrap();
    assert_eq!(summary.len(), 2);
    for row in summary {
        assert_eq!(row["theorem"], "3.6");
        assert_eq!(row["holds"], 3);
        assert_eq!(row["fails"], 0);
    }
}

#[test]
fn verify_with_an_ideal_that_is_not_p_regular_is_inapplicable() {
    let (code, v) = json(&[
        "verify",
        "--theorem",
        "3.3",
        "--ideal",
        "0",
        "--detailed",
        &fixture("z4.nr"),
    ]);
    assert_eq!(code, 0);
    let reports = v["results"]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["verdict"]["status"], "inapplicable");
}

#[test]
fn check_reports_all_witnesses() {
    let (code, v) = json(&["check", &fixture("broken.nr")]);
    assert_eq!(code, 1);
    let axioms = v["results"]["axioms"].as_array().unwrap();
    let rd = axioms.iter().find(|a| a["axiom"] == "right-distributivity").unwrap();
    assert_eq!(rd["holds"], false);
    let w = rd["witnesses"].as_array().unwrap();
    assert_eq!(w.len(), 48);
    assert_eq!(w[0], serde_json::json!([0, 0, 1]));
    assert!(w.contains(&serde_json::json!([1, 1, 1])));

    let (code, v) = json(&["check", &fixture("m_z2.nr")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["distributive"], false);
    assert_eq!(v["results"]["zero_symmetric"], false);
    assert_eq!(v["results"]["unity"], 2);
}

#[test]
fn input_errors_exit_2_with_diagnostics() {
    for args in [
        vec!["check".to_string(), fixture("malformed.nr")],
        vec!["check".into(), fixture("not_identity.nr")],
        vec!["check".into(), fixture("missing.nr")],
        vec![
            "enumerate".into(),
            "--kind".into(),
            "bi-ideal".into(),
            fixture("broken.nr"),
        ],
        vec!["enumerate".into(), "--kind".into(), "widget".into(), fixture("z4.nr")],
        vec!["regularity".into(), "--ideal".into(), "0,1".into(), fixture("z4.nr")],
        vec!["regularity".into(), "--ideal".into(), "9".into(), fixture("z4.nr")],
        vec!["regularity".into(), "--strict-unity".into(), fixture("broken.nr")],
        vec!["verify".into(), "--theorem".into(), "4.1".into(), fixture("z4.nr")],
        vec![
            "decompose".into(),
            fixture("z6.nr"),
            "--theorem".into(),
            "3.6".into(),
            "--element".into(),
            "0".into(),
            "--blocks".into(),
            "0".into(),
        ],
        vec![
            "decompose".into(),
            fixture("z6.nr"),
            "--theorem".into(),
            "3.4".into(),
            "--element".into(),
            "3".into(),
            "--blocks".into(),
            "0,3".into(),
        ],
        vec![
            "decompose".into(),
            fixture("z6.nr"),
            "--theorem".into(),
            "3.3".into(),
            "--element".into(),
            "2".into(),
            "--blocks".into(),
            "0,3".into(),
        ],
        vec!["frobnicate".into()],
    ] {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&argv);
        assert_eq!(out.status.code(), Some(2), "{argv:?}");
        assert!(out.stdout.is_empty(), "{argv:?}");
        assert!(!out.stderr.is_empty(), "{argv:?}");
    }
    let out = run(&["check", &fixture("malformed.nr")]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("line 8") && err.contains("mul table has 2 rows, expected 3"),
        "{err}"
    );
    let out = run(&["check", &fixture("not_identity.nr")]);
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("element 0 is not additive identity"));
}

#[test]
fn order_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_nearring"))
        .args(["check", &fixture("z6.nr")])
        .env("NEARRING_ORDER_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("6"));
}

#[test]
fn regularity_modes() {
    let (code, v) = json(&["regularity", &fixture("z6.nr")]);
    assert_eq!(code, 0);
    let ys: Vec<u64> = v["results"]["certificates"][0]["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["y"].as_u64().unwrap())
        .collect();
    assert_eq!(ys, [0, 1, 2, 1, 1, 5]);

    let (code, v) = json(&["regularity", "--ideal", "0", &fixture("z4.nr")]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["certificates"][0]["refuted_at"], 2);

    let (code, v) = json(&["regularity", "--ideal", "2,0", &fixture("z4.nr")]);
    assert_eq!(code, 0);
    let cert = &v["results"]["certificates"][0];
    assert_eq!(cert["ideal"], serde_json::json!([0, 2]));
    let pairs: Vec<(u64, u64)> = cert["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| (w["y"].as_u64().unwrap(), w["p"].as_u64().unwrap()))
        .collect();
    assert_eq!(pairs, [(0, 0), (1, 0), (0, 2), (1, 2)]);

    let (code, v) = json(&["regularity", "--all-ideals", &fixture("z4.nr")]);
    assert_eq!(code, 0);
    let regular: Vec<bool> = v["results"]["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["regular"].as_bool().unwrap())
        .collect();
    assert_eq!(regular, [false, true, true]);

    let (code, v) = json(&["regularity", "--strict-unity", "--ideal", "0,3", &fixture("m_z2.nr")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["unity_mode"], "strict");
}

#[test]
fn decompositions() {
    let (code, v) = json(&[
        "decompose",
        &fixture("z6.nr"),
        "--theorem",
        "3.4",
        "--element",
        "3",
        "--blocks",
        "0,3;0,3",
        "--ideal",
        "0,2,4",
        "--x",
        "1",
    ]);
    assert_eq!(code, 0);
    let w = &v["results"]["witness"];
    assert_eq!(w["p"], 0);
    assert_eq!(w["chain"], serde_json::json!([3, 1, 3]));
    assert_eq!(w["containment_verified"], true);

    let (code, v) = json(&[
        "decompose",
        &fixture("z4.nr"),
        "--theorem",
        "3.3",
        "--element",
        "2",
        "--blocks",
        "0,2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["ideal"], serde_json::json!([0, 2]));
    assert_eq!(v["results"]["witness"]["p"], 2);
    assert_eq!(v["results"]["witness"]["chain"], serde_json::json!([0]));

    // Repeated flags and `;` separators mean the same thing.
    let a = run(&[
        "decompose",
        &fixture("z6.nr"),
        "--theorem",
        "3.5",
        "--element",
        "0",
        "--blocks",
        "0,3;0,2,4;0",
    ]);
    let b = run(&[
        "decompose",
        &fixture("z6.nr"),
        "--theorem",
        "3.5",
        "--element",
        "0",
        "--blocks",
        "0,3",
        "--blocks",
        "0,2,4",
        "--blocks",
        "0",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let (code, v) = json(&[
        "decompose",
        &fixture("m_z2.nr"),
        "--theorem",
        "3.5",
        "--element",
        "3",
        "--blocks",
        "0,3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["verdict"]["status"], "inapplicable");
    assert_eq!(v["results"]["verdict"]["detail"], "not distributive");
}

#[test]
fn catalog_export_round_trips_through_check() {
    let dir = tempfile::tempdir().unwrap();
    let export = dir.path().display().to_string();
    let (code, v) = json(&["catalog", "--max-order", "8", "--export", &export]);
    assert_eq!(code, 0);
    let rows = v["results"].as_array().unwrap();
    assert!(rows
        .iter()
        .all(|r| r["order"].as_u64().unwrap() <= 8 && r["flags_match"] == true));
    for row in rows {
        let file: PathBuf = dir.path().join(row["file"].as_str().unwrap());
        let (code, check) = json(&["check", &file.display().to_string()]);
        assert_eq!(code, 0, "{}", file.display());
        assert_eq!(check["instance"]["name"], row["name"]);
        assert_eq!(check["results"]["distributive"], row["distributive"]);
    }
}

#[test]
fn text_report_is_readable() {
    let out = run(&["enumerate", "--kind", "ideal", &fixture("z4.nr")]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("subcommand: enumerate\n"), "{s}");
    assert!(
        s.contains("  members:\n    - [0]\n    - [0, 2]\n    - [0, 1, 2, 3]\n"),
        "{s}"
    );
}

#[test]
fn json_and_text_files_load_identically() {
    let dir = tempfile::tempdir().unwrap();
    let j = dir.path().join("m_z2.nr.json").display().to_string();
    assert_eq!(run(&["convert", &fixture("m_z2.nr"), &j]).status.code(), Some(0));
    let from_text = run(&["--format", "json", "verify", "--detailed", &fixture("m_z2.nr")]);
    let from_json = run(&["--format", "json", "verify", "--detailed", &j]);
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["instance"]["file"] = Value::Null;
        v
    };
    assert_eq!(strip(&from_text), strip(&from_json));
}

#[test]
fn shipped_json_fixture_matches_text_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let back = dir.path().join("z6.nr");
    let out = run(&["convert", &fixture("z6.nr.json"), &back.display().to_string()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(back).unwrap(), std::fs::read(fixture("z6.nr")).unwrap());
}
