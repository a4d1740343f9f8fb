use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn twistlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistlab")).args(args).output().expect("binary runs")
}

fn path(rel: &str) -> String {
    crate_dir().join(rel).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch_dir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("twistlab-cli-{}-{tag}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    d
}

fn read_dir(d: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(d)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect()
}

#[test]
fn passing_job_exits_zero() {
    let o = twistlab(&["run", &path("data/borel_jordanian.cfg")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.starts_with("job borel_jordanian (order 4)\n"));
    assert!(out.contains("  PASS twist_eq: residual zero\n"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn failing_check_exits_one_with_witness() {
    let o = twistlab(&["run", &path("tests/data/internal_ftwist1.cfg")]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("  PASS twist_eq: residual zero\n"));
    assert!(
        out.contains("  FAIL factorized std_lhs factor=2: residual nonzero, xi^2: A (x) E (x) B => 1/2\n"),
        "{out}"
    );
}

#[test]
fn constraint_violation_exits_two() {
    let o = twistlab(&["run", &path("tests/data/bad_params.cfg")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha + beta = 2 but delta = 3"));
    assert!(o.stdout.is_empty());
}

#[test]
fn unknown_key_exits_two() {
    let o = twistlab(&["run", &path("tests/data/unknown_key.cfg")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown key `colour`"));
}

#[test]
fn missing_config_exits_two() {
    let o = twistlab(&["run", &path("tests/data/no_such.cfg")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(twistlab(&["run"]).status.code(), Some(2));
    assert_eq!(twistlab(&["run", &path("data/borel_jordanian.cfg"), "--emit", "html"]).status.code(), Some(2));
}

#[test]
fn fixture_next_to_config_shadows_bundled() {
    let o = twistlab(&["run", &path("tests/data/local_override.cfg")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL compare fixture=borel_j.fix: 1 of 2 entries differ, first E at xi^0"));
}

#[test]
fn order_override_is_reported() {
    let o = twistlab(&["run", &path("data/case5_abelian.cfg"), "--order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("job case5_abelian (order 2)\n"));
}

#[test]
fn latex_artifact_is_written() {
    let d = scratch_dir("latex");
    let o = twistlab(&["run", &path("tests/data/local_override.cfg"), "--emit", "latex", "--out", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let files = read_dir(&d);
    let tex = String::from_utf8(files["local_override.table.tex"].clone()).unwrap();
    assert!(tex.contains("\\Delta(E) &= \\left(1 \\otimes E + E \\otimes 1\\right)"), "{tex}");
    assert_eq!(files["local_override.report.txt"], o.stdout);
    fs::remove_dir_all(&d).unwrap();
}

#[test]
fn output_is_identical_across_runs_and_thread_counts() {
    let mut seen: Option<BTreeMap<String, Vec<u8>>> = None;
    for (k, threads) in ["1", "4", "4"].iter().enumerate() {
        let d = scratch_dir(&format!("det{k}"));
        let o = Command::new(env!("CARGO_BIN_EXE_twistlab"))
            .args(["run", &path("data/sl4_pet.cfg"), "--order", "3", "--out", d.to_str().unwrap()])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        let files = read_dir(&d);
        assert!(files.contains_key("sl4_pet.report.txt"));
        assert!(files.len() >= 2);
        match &seen {
            None => seen = Some(files),
            Some(prev) => assert_eq!(prev, &files),
        }
        fs::remove_dir_all(&d).unwrap();
    }
}

#[test]
fn verify_all_passes_at_low_order() {
    let o = twistlab(&["verify-all", "--order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.ends_with("all jobs passed\n"));
    assert_eq!(out.matches("\njob ").count() + 1, twistlab::cli_io::bundled::jobs().len());
}
