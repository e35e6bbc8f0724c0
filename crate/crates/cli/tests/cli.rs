//! The binary end to end: exit statuses, documented examples, determinism
//! and round trips on the corpus.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hdcat::io::{category_from_cat, category_to_cat, sset_from_ssx, sset_to_ssx};
use hdcat::operad::ColoredOperad;
use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn hdcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdcat")).args(args).output().expect("binary runs")
}

fn status(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn poset_nerves_are_zero_categories() {
    let out = hdcat(&["check", "--d-category", "0", path(&corpus("ordinal2.cat"))]);
    assert_eq!(status(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["passed"], true);
    let out = hdcat(&["check", "--d-category", "0", path(&corpus("BZ2.cat"))]);
    assert_eq!(status(&out), 1);
    let report = json(&out);
    assert_eq!(report["passed"], false);
}

#[test]
fn h0_of_ass_is_comm() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h0.opd");
    let out = hdcat(&["truncate", "--d", "0", path(&corpus("Ass.opd")), "--out", path(&h)]);
    assert_eq!(status(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = hdcat(&["verify", "--iso", path(&corpus("Comm.opd")), path(&h)]);
    assert_eq!(status(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let out = hdcat(&["verify", "--iso", path(&corpus("Ass.opd")), path(&h)]);
    assert_eq!(status(&out), 1);
}

#[test]
fn alpha_on_bz2_has_two_point_sides() {
    let out = hdcat(&["verify", "--alpha", "--d", "1", path(&corpus("BZ2.ssx"))]);
    assert_eq!(status(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let facts = &json(&out)["reports"][0]["facts"];
    assert_eq!(facts["left_counts"], serde_json::json!([2]));
    assert_eq!(facts["right_counts"], serde_json::json!([2]));
}

#[test]
fn exit_statuses() {
    assert_eq!(status(&hdcat(&["check", "--quasicat", path(&corpus("delta2.ssx"))])), 0);
    assert_eq!(status(&hdcat(&["check", "--quasicat", path(&corpus("boundary2.ssx"))])), 1);
    assert_eq!(status(&hdcat(&["check", "--d-category", "1", path(&corpus("BZ2.cat")), "--budget", "1"])), 2);
    assert_eq!(status(&hdcat(&["check", "--quasicat", "missing.ssx"])), 3);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ssx");
    std::fs::write(&bad, r#"{"dims": {"0": ["a"]}, "faces": {"e": []}}"#).unwrap();
    let out = hdcat(&["check", "--quasicat", path(&bad)]);
    assert_eq!(status(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.ssx"));
    let unknown = dir.path().join("x.txt");
    std::fs::write(&unknown, "").unwrap();
    assert_eq!(status(&hdcat(&["check", "--quasicat", path(&unknown)])), 3);
}

#[test]
fn failures_carry_witnesses() {
    let out = hdcat(&["check", "--quasicat", path(&corpus("boundary2.ssx"))]);
    let report = json(&out);
    let check = &report["reports"][0]["checks"][0];
    assert_eq!(check["passed"], false);
    assert!(check["witness"].is_string(), "{check}");
}

#[test]
fn identical_runs_are_byte_identical() {
    let iso = corpus("iso.cat");
    let args = ["verify", "--homrel-equivalences", path(&iso)];
    let (a, b) = (hdcat(&args), hdcat(&args));
    assert_eq!(status(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn builds_match_the_corpus() {
    let dir = tempfile::tempdir().unwrap();
    for (args, file) in [
        (vec!["build", "delta", "2"], "delta2.ssx"),
        (vec!["build", "boundary", "2"], "boundary2.ssx"),
        (vec!["build", "horn", "2", "1"], "horn21.ssx"),
        (vec!["build", "category", "bz2"], "BZ2.cat"),
        (vec!["build", "operad", "ass", "--arity-cap", "3"], "Ass.opd"),
    ] {
        let out = dir.path().join(file);
        let mut args = args.clone();
        args.extend(["--out", path(&out)]);
        let run = hdcat(&args);
        assert_eq!(status(&run), 0, "{args:?}: {}", String::from_utf8_lossy(&run.stderr));
        assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(corpus(file)).unwrap(), "{file}");
    }
}

#[test]
fn corpus_round_trips() {
    let mut seen = 0;
    for entry in std::fs::read_dir(corpus("")).unwrap() {
        let p = entry.unwrap().path();
        let text = std::fs::read_to_string(&p).unwrap();
        let again = match p.extension().and_then(|e| e.to_str()) {
            Some("ssx") => sset_to_ssx(&sset_from_ssx(&text).unwrap()),
            Some("cat") => category_to_cat(&category_from_cat(&text).unwrap()),
            Some("opd") => ColoredOperad::from_json(&text).unwrap().to_json(),
            _ => continue,
        };
        assert_eq!(again, text, "{}", p.display());
        seen += 1;
    }
    assert!(seen >= 10);
}

#[test]
fn report_aggregates_runs() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    let bad = dir.path().join("bad.json");
    hdcat(&["check", "--quasicat", path(&corpus("delta2.ssx")), "--out", path(&good)]);
    hdcat(&["check", "--quasicat", path(&corpus("boundary2.ssx")), "--out", path(&bad)]);
    let out = hdcat(&["report", path(&good), path(&bad)]);
    assert_eq!(status(&out), 1);
    let summary = json(&out);
    assert_eq!(summary["passed"], false);
    assert_eq!(summary["runs"].as_array().unwrap().len(), 2);
}
