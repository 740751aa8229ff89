use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use annseq::io::AnnihilatorDocument;
use tempfile::TempDir;

fn annseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_annseq")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).display().to_string()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

#[test]
fn gen_compute_verify() {
    let dir = TempDir::new().unwrap();
    let seq = path(&dir, "j4.json");
    let out =
        annseq(&["gen", "--staircase", "x^2,y^5,z^4,y*z^2", "--seed", "3", "--field", "fp:65521", "--output", &seq]);
    assert!(out.status.success(), "{}", stderr(&out));

    let mut bases = Vec::new();
    for engine in ["hankel", "duality", "macaulay"] {
        let res = path(&dir, &format!("{engine}.json"));
        let out = annseq(&["compute", "--engine", engine, "--input", &seq, "--output", &res, "--stats"]);
        assert!(out.status.success(), "{engine}: {}", stderr(&out));
        let doc = AnnihilatorDocument::read(Path::new(&res)).unwrap();
        assert_eq!(doc.s, Some(24));
        assert!(!doc.stats.is_empty());
        bases.push((doc.basis, doc.border, doc.r));

        let out = annseq(&["verify", "--input", &seq, "--generators", &res]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(stdout(&out).starts_with("ok"));
    }
    assert!(bases.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn gen_is_reproducible() {
    let args = ["gen", "--staircase", "x^3,x*y,y^4", "--seed", "11", "--field", "rational"];
    let a = annseq(&args);
    let b = annseq(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = annseq(&["gen", "--staircase", "x^3,x*y,y^4", "--seed", "12", "--field", "rational"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn verify_rejects_a_wrong_generator() {
    let dir = TempDir::new().unwrap();
    let res = path(&dir, "res.json");
    let out = annseq(&["compute", "--input", &fixture("example.json"), "--output", &res]);
    assert!(out.status.success(), "{}", stderr(&out));
    let mut doc = AnnihilatorDocument::read(Path::new(&res)).unwrap();
    doc.basis[0][0].1 = "2".into();
    fs::write(&res, doc.to_json()).unwrap();
    let out = annseq(&["verify", "--input", &fixture("example.json"), "--generators", &res]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("basis[0]"), "{}", stderr(&out));
}

#[test]
fn input_errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("empty.json", r#"{"vars":["x"],"field":"rational","sequences":[]}"#, "sequences"),
        (
            "gap.json",
            r#"{"vars":["x"],"field":"rational","sequences":[{"support":[[0],[2]],"values":[]}]}"#,
            "sequences[0]",
        ),
        (
            "scalar.json",
            r#"{"vars":["x"],"field":"fp:7","sequences":[{"support":[[0]],"values":[[[0],"1/2"]]}]}"#,
            "values[0]",
        ),
        ("broken.json", "{\n  \"vars\": [\"x\",\n", "line"),
    ];
    for (name, text, needle) in cases {
        let p = path(&dir, name);
        fs::write(&p, text).unwrap();
        let out = annseq(&["compute", "--input", &p]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        assert!(stderr(&out).contains(needle), "{name}: {}", stderr(&out));
    }
    let out = annseq(&["gen", "--staircase", "x^2,x*y", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let out = annseq(&["compute", "--input", &path(&dir, "missing.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn table2_entry_l5() {
    let out = annseq(&["compute", "--engine", "hankel", "--input", &fixture("l5.json")]);
    assert!(out.status.success());
    let doc = AnnihilatorDocument::from_json(&stdout(&out)).unwrap();
    assert_eq!(doc.vars, ["x", "y", "z"]);
    assert_eq!(doc.s, Some(8));
}

#[test]
fn degenerate_and_audit_agree() {
    let l11 = fixture("l11.json");
    let quick = AnnihilatorDocument::from_json(&stdout(&annseq(&["compute", "--input", &l11]))).unwrap();
    let audit = AnnihilatorDocument::from_json(&stdout(&annseq(&["compute", "--input", &l11, "--audit"]))).unwrap();
    assert!(quick.degenerate && !audit.degenerate);
    assert_eq!((quick.basis, quick.border, quick.r), (audit.basis, audit.border, audit.r));
}

#[test]
fn bench_reports_are_deterministic() {
    let a = annseq(&["bench", "--suite", "table3-sizes", "--tsv", "--no-time"]);
    let b = annseq(&["bench", "--suite", "table3-sizes", "--tsv", "--no-time"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 10);
    assert_eq!(text.lines().next().unwrap(), "J1\tstaircase\t79\t-\t79\t79\t-");

    let a = annseq(&["bench", "--suite", "table3-dims", "--seed", "5", "--no-time"]);
    let b = annseq(&["bench", "--suite", "table3-dims", "--seed", "5", "--no-time"]);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("J12"));
}
