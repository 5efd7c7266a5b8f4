use std::path::{Path, PathBuf};
use std::process::Command;

use syzlab_cli::{parse_session, run_file, run_path, CliError, RunOptions};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture_files() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(fixtures())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "syz"))
        .collect();
    v.sort();
    v
}

fn syzlab() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_syzlab"));
    c.env_remove("SYZLAB_CACHE");
    c
}

fn write_session(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn fixture_sessions_print_and_parse_back() {
    let files = fixture_files();
    assert_eq!(files.len(), 7);
    for f in files {
        let s = parse_session(&std::fs::read_to_string(&f).unwrap()).unwrap();
        let printed = s.to_string();
        assert_eq!(parse_session(&printed).unwrap(), s, "{}", f.display());
    }
}

#[test]
fn corpus_passes_and_is_deterministic() {
    let opts = RunOptions::default();
    let a = run_path(&fixtures(), &opts).unwrap();
    let b = run_path(&fixtures(), &opts).unwrap();
    assert!(!a.failed());
    assert_eq!(a.machine(), b.machine());
    assert_eq!(a.human(), b.human());
    let summary = &a.fragments.last().unwrap().body;
    assert!(summary.starts_with("7 sessions"), "{summary}");
    for line in a.machine().lines() {
        assert_eq!(line.split('\t').count(), 6, "{line}");
    }
}

#[test]
fn warm_cache_reproduces_cold_cache() {
    let cache = tempfile::tempdir().unwrap();
    let opts = RunOptions {
        cache_dir: Some(cache.path().to_path_buf()),
        ..RunOptions::default()
    };
    let uncached = run_file(&fixtures().join("R_ex.syz"), &RunOptions::default()).unwrap();
    let cold = run_file(&fixtures().join("R_ex.syz"), &opts).unwrap();
    assert!(std::fs::read_dir(cache.path()).unwrap().count() > 0);
    let warm = run_file(&fixtures().join("R_ex.syz"), &opts).unwrap();
    assert_eq!(cold.machine(), warm.machine());
    assert_eq!(cold.human(), warm.human());
    assert_eq!(uncached.machine(), warm.machine());
}

#[test]
fn cor_3_8_on_the_example_ring() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_session(
        dir.path(),
        "rex.syz",
        "ring char 32003 vars x,y,z ideal x^2, x*y, y^2*z\nverify cor_3_8 bound=6\n",
    );
    let out = run_file(&p, &RunOptions::default()).unwrap();
    assert!(!out.failed());
    let lhs: Vec<String> = out
        .machine()
        .lines()
        .map(|l| l.split('\t').nth(3).unwrap().to_string())
        .collect();
    assert_eq!(lhs, ["0", "0", "3", "6", "12", "24"]);
}

#[test]
fn invariants_of_residue_field_over_polynomial_ring() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_session(
        dir.path(),
        "s.syz",
        "ring char 32003 vars x,y ideal\ninvariants residue_field\n",
    );
    let out = run_file(
        &p,
        &RunOptions {
            bound: 2,
            ..RunOptions::default()
        },
    )
    .unwrap();
    let body = &out.fragments[0].body;
    assert!(body.contains("depth        0"), "{body}");
    assert!(body.contains("ring depth   2"), "{body}");
    assert!(body.contains("betti        1 2 1"), "{body}");
}

#[test]
fn resolve_is_stable_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_session(
        dir.path(),
        "m.syz",
        "ring vars x,y,z ideal x^2, x*y, y^2*z\nlet M = subq([[y, 0], [0, z]], [[y], [z]])\nresolve M 4\n",
    );
    let a = run_file(&p, &RunOptions::default()).unwrap().human();
    let b = run_file(&p, &RunOptions::default()).unwrap().human();
    assert_eq!(a, b);
    assert!(a.contains("total: 1 3 6 12 24"), "{a}");
}

#[test]
fn failing_check_sets_exit_status_and_flags_record() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_session(
        dir.path(),
        "bad.syz",
        "ring vars x,y,z ideal x^2, x*y, y^2*z\nverify cor_3_8 shift=1\nverify cor_3_9\n",
    );
    let report = dir.path().join("report.tsv");
    let status = syzlab().arg(&p).arg("--report").arg(&report).status().unwrap();
    assert_eq!(status.code(), Some(1));
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text
        .lines()
        .any(|l| l.starts_with("cor_3_8\tbad\t") && l.ends_with("\tFAIL")));
    assert!(text.lines().any(|l| l.starts_with("cor_3_9\t")));
}

#[test]
fn passing_session_exits_zero() {
    let report = tempfile::NamedTempFile::new().unwrap();
    let status = syzlab()
        .arg(fixtures().join("R_g.syz"))
        .arg("--report")
        .arg(report.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert!(!std::fs::read_to_string(report.path()).unwrap().is_empty());
}

#[test]
fn no_sessions_give_an_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.tsv");
    let out = syzlab().arg("--report").arg(&report).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&report).unwrap(), "");
}

#[test]
fn parse_errors_report_position_and_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_session(dir.path(), "e.syz", "ring vars x,y\nlet A = free(1)\ninvariants B\n");
    let out = syzlab().arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("3:12: unknown name `B`"), "{err}");

    match run_file(
        &write_session(dir.path(), "h.syz", "ring vars x,y ideal x^2 + y\n"),
        &RunOptions::default(),
    ) {
        Err(CliError::Session { source, .. }) => {
            assert!(matches!(
                *source,
                CliError::NonHomogeneousIdeal { line: 1, col: 21, .. }
            ))
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn cache_environment_variable_overrides_flag() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let status = syzlab()
        .env("SYZLAB_CACHE", env_dir.path())
        .arg("--cache-dir")
        .arg(flag_dir.path())
        .arg(fixtures().join("R_g.syz"))
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    assert!(std::fs::read_dir(env_dir.path()).unwrap().count() > 0);
    assert_eq!(std::fs::read_dir(flag_dir.path()).unwrap().count(), 0);
}

#[test]
fn characteristic_flag_replaces_declared_one() {
    let out = syzlab()
        .args(["--char", "101", "--jobs", "2"])
        .arg(fixtures().join("R_ex.syz"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("example on R_ex [p=101]: pass"), "{stdout}");
}

#[test]
fn corpus_command_runs_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("rings");
    std::fs::create_dir(&sub).unwrap();
    write_session(&sub, "a.syz", "ring vars x,y ideal x^2, y^2\nverify cor_3_8\n");
    write_session(&sub, "b.syz", "ring vars x,y ideal x^2, x*y, y^2\nverify cor_3_8\n");
    let driver = write_session(dir.path(), "all.syz", "corpus rings\n");
    let out = run_file(&driver, &RunOptions::default()).unwrap();
    let summary = &out.fragments.last().unwrap().body;
    assert!(summary.contains("2 sessions"));
    assert!(summary
        .lines()
        .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["cor_3_8", "2", "0", "0", "0"]));

    write_session(&sub, "c.syz", "corpus .\n");
    assert!(run_file(&driver, &RunOptions::default()).is_err());
}
