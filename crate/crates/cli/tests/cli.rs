//! End-to-end runs of the `selmer` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data")
}

fn selmer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selmer"))
        .args(args)
        .env("SELMER_DATA_DIR", data_dir())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = selmer(&all);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (v, o.status.code().unwrap())
}

#[test]
fn invariants_of_e_1_1() {
    let o = selmer(&["invariants", "0", "1", "0", "3", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("disc = -3072"), "{out}");
    assert!(out.contains("j = 2048/3"), "{out}");

    let (v, _) = json(&["invariants", "0", "1", "0", "3", "3"]);
    assert_eq!(v["invariants"]["disc"], "-3072");
    assert_eq!(v["invariants"]["j"], "2048/3");
    assert_eq!(
        v["minimal_model"],
        serde_json::json!(["0", "1", "0", "3", "3"])
    );
}

#[test]
fn invariants_accepts_fractions_and_minimalizes() {
    // E_{1,1} scaled by u = 1/2
    let (v, code) = json(&["invariants", "0", "4", "0", "48", "192"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["minimal_model"],
        serde_json::json!(["0", "1", "0", "3", "3"])
    );
    let (v, _) = json(&["invariants", "0", "1/4", "0", "3/16", "3/64"]);
    assert_eq!(
        v["minimal_model"],
        serde_json::json!(["0", "1", "0", "3", "3"])
    );
}

#[test]
fn singular_and_malformed_curves() {
    let o = selmer(&["invariants", "0", "0", "0", "0", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("singular"));

    let o = selmer(&["invariants", "0", "1", "0", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = selmer(&["invariants", "0", "1", "0", "3", "x"]);
    assert_eq!(o.status.code(), Some(2));
    let o = selmer(&["localdata", "0", "0", "0", "0", "0", "--all-bad"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn localdata_records() {
    // E_{8,1} at 2
    let o = selmer(&[
        "localdata",
        "0",
        "64",
        "0",
        "1536",
        "786432",
        "--prime",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("2 III f="), "{}", stdout(&o));

    let o = selmer(&["localdata", "0", "1", "0", "3", "3", "--all-bad"]);
    let primes: Vec<String> = stdout(&o)
        .lines()
        .map(|l| l.split_whitespace().next().unwrap().to_string())
        .collect();
    assert_eq!(primes, ["2", "3"]);

    let o = selmer(&["localdata", "0", "1", "0", "3", "3", "--prime", "7"]);
    assert!(stdout(&o).starts_with("7 I0 f=0"), "{}", stdout(&o));

    let o = selmer(&["localdata", "0", "1", "0", "3", "3", "--prime", "9"]);
    assert_eq!(o.status.code(), Some(2));
    let o = selmer(&["localdata", "0", "1", "0", "3", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_single_pairs() {
    let (v, code) = json(&["verify", "--q", "8", "--t", "1"]);
    assert_eq!(code, 0);
    let r = &v["records"][0];
    assert_eq!(r["companion"]["verdict"], "companions-certified");
    assert_eq!(r["isogeny"]["verdict"], "not-isogenous-certified");
    assert_eq!(r["isogeny"]["disc_ratio_squarefree_part"], "-3");
    assert_eq!(r["companion"]["conductor_e"], r["companion"]["conductor_h"]);

    let (v, code) = json(&["verify", "--q", "12", "--t", "0"]);
    assert_eq!(code, 1);
    assert_eq!(v["records"][0]["companion"]["verdict"], "degenerate");

    let (v, code) = json(&["verify", "--q", "-15", "--t", "-7"]);
    assert_eq!(code, 0, "{v}");
}

#[test]
fn verify_table1_range_flags_exceptional_t() {
    let (v, code) = json(&[
        "verify", "--table1", "--q", "1", "--t-min", "1", "--t-max", "97",
    ]);
    assert_eq!(code, 0);
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 13);
    let flagged: Vec<&str> = records
        .iter()
        .filter(|r| r["exceptional"] == true)
        .map(|r| r["t"].as_str().unwrap())
        .collect();
    assert_eq!(flagged, ["1", "9"]);
    for r in records {
        let isogenous = r["isogeny"]["verdict"] == "isogenous-witness";
        assert_eq!(isogenous, r["exceptional"] == true, "{r}");
    }
}

#[test]
fn verify_requires_table1_q_unless_forced() {
    let o = selmer(&["verify", "--q", "9", "--t", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--force"));

    let (v, code) = json(&["verify", "--q", "9", "--t", "1", "--force", "--no-isogeny"]);
    assert_eq!(code, 1);
    assert!(v["records"][0]["isogeny"].is_null());

    let o = selmer(&["verify", "--q", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = selmer(&["verify", "--table1", "--q", "1", "--t-min", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

fn scan_t(q: &str) -> Vec<String> {
    let (v, code) = json(&["isogeny-scan", "--q", q, "--window", "1000"]);
    assert_eq!(code, 0);
    assert!(v["caveat"].as_str().unwrap().contains("1000"));
    let mut ts: Vec<String> = v["exceptional"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| h["t"].as_str().unwrap().to_string())
        .collect();
    ts.dedup();
    ts
}

#[test]
fn isogeny_scan() {
    assert_eq!(scan_t("1"), ["1", "9"]);
    assert_eq!(scan_t("3"), ["-1", "0"]);
    assert!(scan_t("5").is_empty());

    let o = selmer(&["isogeny-scan", "--q", "12", "--window", "1000"]);
    let out = stdout(&o);
    assert!(
        out.contains("no exceptional t") && out.contains("singular t: 0"),
        "{out}"
    );
    assert!(out.contains("caveat:"));
}

#[test]
fn isogeny_scan_lists_missing_levels() {
    let tmp = std::env::temp_dir().join(format!("selmer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let manifest = std::fs::read_to_string(data_dir().join("manifest.txt")).unwrap();
    let first = manifest.lines().next().unwrap();
    std::fs::write(tmp.join("manifest.txt"), format!("{first}\n")).unwrap();
    let file = first.split_whitespace().nth(1).unwrap();
    std::fs::copy(data_dir().join(file), tmp.join(file)).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_selmer"))
        .args(["isogeny-scan", "--q", "1", "--window", "10"])
        .arg("--data-dir")
        .arg(&tmp)
        .output()
        .unwrap();
    std::fs::remove_dir_all(&tmp).unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("[4, 6, 8, 10, 12, 14, 16, 18]"),
        "{}",
        stderr(&o)
    );
}

fn candidates(v: &Value) -> Vec<(String, u64, u64)> {
    v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["all_pass"] == true)
        .map(|r| {
            (
                r["q"].as_str().unwrap().to_string(),
                r["residue"].as_u64().unwrap(),
                r["modulus"].as_u64().unwrap(),
            )
        })
        .collect()
}

#[test]
fn search_mode() {
    let (v, code) = json(&[
        "search",
        "--q-min",
        "4",
        "--q-max",
        "6",
        "--modulus",
        "8",
        "--samples",
        "10",
    ]);
    assert_eq!(code, 0);
    assert!(candidates(&v).contains(&("5".into(), 1, 8)));

    let (v, _) = json(&[
        "search",
        "--q-min",
        "7",
        "--q-max",
        "7",
        "--modulus",
        "4",
        "--samples",
        "10",
    ]);
    assert!(candidates(&v).contains(&("7".into(), 3, 4)));

    let (v, code) = json(&["search", "--q-min", "3", "--q-max", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"], serde_json::json!([]));

    let o = selmer(&["search", "--q-min", "1", "--q-max", "2", "--modulus", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let args = [
        "verify", "--table1", "--q", "3", "--t-min", "-20", "--t-max", "20",
    ];
    let mut one = vec!["--threads", "1"];
    one.extend_from_slice(&args);
    let mut four = vec!["--threads", "4"];
    four.extend_from_slice(&args);
    let (a, b) = (selmer(&one), selmer(&four));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}
