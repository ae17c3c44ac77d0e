//! The `modcert` binary: exit codes, output files and the file formats.

use std::path::PathBuf;
use std::process::{Command, Output};

use modcert::cli::{parse_curve_file, parse_curve_str, CurveFile};
use serde_json::Value;

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(sub)
}

fn modcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modcert")).args(args).env_remove("MODCERT_LBOUND").output().unwrap()
}

fn path(sub: &str, file: &str) -> String {
    dir(sub).join(file).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn certify_modular_exits_zero_and_writes_json() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("c.json");
    let o = modcert(&["certify", &path("corpus", "01_37a1.json"), "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let written = std::fs::read_to_string(&out).unwrap();
    let v: Value = serde_json::from_str(&written).unwrap();
    assert_eq!(v["verdict"], "Modular");
    assert_eq!(v["curve"]["name"], "37a1");
    assert!(written.ends_with('\n'));
    // keys come out sorted
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn inconclusive_exits_two() {
    let o = modcert(&["certify", &path("samples", "sqrt5_37a1.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("√5 ∈ K"));
    let o = modcert(&["certify", &path("samples", "external_no_flags.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn errors_exit_one() {
    let o = modcert(&["certify", &path("corpus", "01_37a1.json"), "--bogus"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));

    let o = modcert(&["certify", "/nonexistent/curve.json"]);
    assert_eq!(o.status.code(), Some(1));

    let o = modcert(&["local", "--prime", "11", &path("corpus", "01_37a1.json")]);
    assert_eq!(o.status.code(), Some(1));

    let o = modcert(&["certify", &path("corpus", "01_37a1.json"), "--assume", "reducible-7", "--assume", "irreducible-7"]);
    assert_eq!(o.status.code(), Some(1));

    let o = Command::new(env!("CARGO_BIN_EXE_modcert"))
        .args(["certify", &path("corpus", "01_37a1.json")])
        .env("MODCERT_LBOUND", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn assume_flag_changes_the_route() {
    let o = modcert(&["certify", &path("corpus", "01_37a1.json"), "--assume", "reducible-7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["assumptions"], serde_json::json!(["reducible-7"]));
    assert!(v["steps"].as_array().unwrap().iter().any(|s| s["citation"].as_str().unwrap().starts_with("Thorne")));
}

#[test]
fn corpus_mode_writes_one_certificate_per_file() {
    let tmp = tempfile::tempdir().unwrap();
    let o = modcert(&["certify", "--corpus", &dir("corpus").to_string_lossy(), "--json", tmp.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let n_in = std::fs::read_dir(dir("corpus")).unwrap().count();
    let n_out = std::fs::read_dir(tmp.path()).unwrap().count();
    assert_eq!(n_in, n_out);
    let table = stdout(&o);
    assert!(table.contains(&format!("{n_in}/{n_in} modular")), "{table}");

    // the samples directory mixes verdicts, so the worst one wins
    let o = modcert(&["certify", "--corpus", &dir("samples").to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn local_reports_both_exceptional_cases() {
    for (p, file, verdict) in [
        ("5", "03_ss_exceptional_5.json", "Exceptional Case 1"),
        ("7", "04_ord_exceptional_7.json", "Exceptional Case 2"),
    ] {
        let o = modcert(&["local", "--prime", p, &path("corpus", file)]);
        assert_eq!(o.status.code(), Some(0));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["additive_slots"][0]["verdict"], verdict);
    }
}

#[test]
fn sstest_and_group_audit() {
    let o = modcert(&["sstest", &path("corpus", "05_additive_at_3.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let d = v["twist"]["d"].as_str().unwrap();
    assert!(d == "3" || d == "-3", "{d}");

    let o = modcert(&["group-audit"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["borel_order_5"].as_u64(), v["borel_order_7"].as_u64()), (Some(80), Some(252)));
}

#[test]
fn corpus_files_are_canonical_and_round_trip() {
    for sub in ["corpus", "samples"] {
        for e in std::fs::read_dir(dir(sub)).unwrap() {
            let p = e.unwrap().path();
            let text = std::fs::read_to_string(&p).unwrap();
            let parsed = parse_curve_file(&p).unwrap();
            let canon = CurveFile::from_parsed(&parsed).to_canonical_string();
            assert_eq!(canon, text, "{} is not canonical", p.display());
            assert_eq!(parse_curve_str(&canon).unwrap(), parsed);
        }
    }
}

#[test]
fn certificate_echo_rebuilds_the_curve() {
    let o = modcert(&["certify", &path("corpus", "12_sqrt2_generic.json")]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let text = serde_json::json!({ "field": v["field"], "a": v["curve"]["a"] }).to_string();
    let rebuilt = parse_curve_str(&text).unwrap();
    let original = parse_curve_file(&dir("corpus").join("12_sqrt2_generic.json")).unwrap();
    assert_eq!(rebuilt.curve, original.curve);
}
