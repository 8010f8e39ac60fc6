use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_framegram"))
}

fn demo_conf() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/demo/demo.conf")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

fn built_demo() -> (tempfile::TempDir, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out").display().to_string();
    let conf = demo_conf().display().to_string();
    let o = run(&["run", "-c", &conf, "-o", &out]);
    assert!(o.status.success(), "{}", text(&o.stderr));
    (dir, out)
}

#[test]
fn run_then_realize() {
    let (_dir, out) = built_demo();
    assert!(Path::new(&out).join("gf/FrameNetSwe.gf").is_file());
    let o = run(&[
        "realize",
        "-o",
        &out,
        "--tense",
        "past",
        r#"Residence_V live_V_Residence { Resident = "we" ; Location = "in Sweden" }"#,
    ]);
    assert!(o.status.success(), "{}", text(&o.stderr));
    assert_eq!(text(&o.stdout).trim(), "we lived in Sweden");

    let mut child = bin()
        .args(["realize", "-o", &out, "-l", "swe"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all("# comment\nResidence_V bo_V_Residence { Resident = \"vi\" ; Location = \"i Sverige\" }\n".as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert_eq!(text(&o.stdout).trim(), "vi bor i Sverige");
}

#[test]
fn list_shows_functions() {
    let (_dir, out) = built_demo();
    let o = run(&["realize", "-o", &out, "--list"]);
    assert!(o.status.success());
    assert!(text(&o.stdout).contains("Desiring_VV\tEvent_VP Experiencer_NP"));
}

#[test]
fn failed_request_exits_one() {
    let (_dir, out) = built_demo();
    let o = run(&["realize", "-o", &out, "Nope_V x_V { }"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(text(&o.stderr).contains("error:"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["run", "--settings", "9.Z"]).status.code(), Some(2));
    assert_eq!(run(&["run", "--corpus", "nolang"]).status.code(), Some(2));
}

#[test]
fn missing_artifact_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    let conf = demo_conf().display().to_string();
    let o = run(&["gen-grammar", "-c", &conf, "-o", &out]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        text(&o.stderr).contains("missing input artifact"),
        "{}",
        text(&o.stderr)
    );
}

#[test]
fn single_stage_for_one_language() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    let conf = demo_conf().display().to_string();
    let o = run(&["ingest", "-c", &conf, "-o", &out, "-l", "swe"]);
    assert!(o.status.success(), "{}", text(&o.stderr));
    assert!(dir.path().join("swe/corpus.json").is_file());
    assert!(!dir.path().join("eng/corpus.json").exists());
}
