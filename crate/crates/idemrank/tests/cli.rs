//! End-to-end tests of the command-line interface: file parsing, output
//! formats, and the exit-code contract (0 pass, 1 violation/negative
//! verdict, 2 parse or usage error, 3 unsupported).

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_idemrank"))
}

fn write(dir: &tempdir::TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, content).unwrap();
    path
}

// minimal tempdir shim so the test has no extra dependencies
mod tempdir {
    use std::path::{Path, PathBuf};

    pub struct TempDir(PathBuf);

    impl TempDir {
        pub fn new(prefix: &str) -> std::io::Result<Self> {
            let base = std::env::temp_dir().join(format!(
                "{prefix}-{}-{:x}",
                std::process::id(),
                std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .unwrap()
                    .as_nanos()
            ));
            std::fs::create_dir_all(&base)?;
            Ok(TempDir(base))
        }

        pub fn path(&self) -> &Path {
            &self.0
        }
    }

    impl Drop for TempDir {
        fn drop(&mut self) {
            let _ = std::fs::remove_dir_all(&self.0);
        }
    }
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const IDENTITY3: &str = "semiring b2\n3 3\n1 0 0\n0 1 0\n0 0 1\n";

const COLLAPSE_OP: &str = "semiring b2\n2 2\n\
E 1 1\n1 0\n0 0\n\
E 1 2\n1 0\n0 0\n\
E 2 1\n1 0\n0 0\n\
E 2 2\n1 0\n0 0\n";

const TRANSPOSE_OP: &str = "semiring b2\n2 2\n\
E 1 1\n1 0\n0 0\n\
E 1 2\n0 0\n1 0\n\
E 2 1\n0 1\n0 0\n\
E 2 2\n0 0\n0 1\n";

#[test]
fn rank_prints_certificate() {
    let dir = tempdir::TempDir::new("idemrank").unwrap();
    let file = write(&dir, "i3.txt", IDENTITY3);
    let out = bin().arg("rank").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("rank 3\n"), "{text}");
    assert!(text.contains("left:"), "{text}");
    assert!(text.contains("right:"), "{text}");
}

#[test]
fn rank_json_mirrors_text() {
    let dir = tempdir::TempDir::new("idemrank").unwrap();
    let file = write(&dir, "i3.txt", IDENTITY3);
    let out = bin()
        .args(["rank", "--format", "json"])
        .arg(&file)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rank"], 3);
    assert_eq!(v["left"]["semiring"], "b2");
    assert_eq!(v["left"]["cols"], 3);
}

#[test]
fn rank_respects_max_k() {
    let dir = tempdir::TempDir::new("idemrank").unwrap();
    let file = write(&dir, "i3.txt", IDENTITY3);
    let out = bin()
        .args(["rank", "--max-k", "2"])
        .arg(&file)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn rank1_negative_exit() {
    let dir = tempdir::TempDir::new("idemrank").unwrap();
    let yes = write(&dir, "ones.txt", "semiring b2\n2 2\n1 1\n1 1\n");
    let out = bin().arg("rank1").arg(&yes).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("rank-1"));

    let no = write(&dir, "i2.txt", "semiring b2\n2 2\n1 0\n0 1\n");
    let out = bin().arg("rank1").arg(&no).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not rank-1"));
}

#[test]
fn span_membership_exit_codes() {
    let dir = tempdir::TempDir::new("idemrank").unwrap();
    let target = write(&dir, "t.txt", "semiring maxplus\n1 2\n2 3\n");
    let gens = write(&dir, "g.txt", "semiring maxplus\n1 2\n0 1\n");
    let out = bin().arg("span").arg(&target).arg(&gens).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("coefficients: 2"));

    let outside = write(&dir, "o.txt", "semiring maxplus\n1 2\n2 2\n");
    let out = bin().arg("span").arg(&outside).arg(&gens).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not a member"));
}

#[test]
fn basis_reports_dimension() {
    let dir = tempdir::TempDir::new("idemrank").unwrap();
    let gens = write(
        &dir,
        "g.txt",
        "semiring b2\n1 2\n1 0\n\nsemiring b2\n1 2\n0 1\n\nsemiring b2\n1 2\n1 1\n",
    );
    let out = bin().arg("basis").arg(&gens).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("dimension 2\n"));
}

#[test]
fn classify_verdicts_and_exit_codes() {
    let dir = tempdir::TempDir::new("idemrank").unwrap();
    let collapse = write(&dir, "collapse.txt", COLLAPSE_OP);
    let out = bin().arg("classify").arg(&collapse).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("violation"), "{text}");
    assert!(text.contains("rank before: 2"), "{text}");
    assert!(text.contains("rank after: 1"), "{text}");

    let transpose = write(&dir, "transpose.txt", TRANSPOSE_OP);
    let out = bin().arg("classify").arg(&transpose).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("rank preserver"), "{text}");
    assert!(text.contains("transposed: true"), "{text}");
}

#[test]
fn classify_degenerate_shape_is_unsupported() {
    let dir = tempdir::TempDir::new("idemrank").unwrap();
    let op = write(&dir, "tiny.txt", "semiring b2\n1 1\nE 1 1\n1\n");
    let out = bin().arg("classify").arg(&op).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn witness_separates_rank_one_pair() {
    let dir = tempdir::TempDir::new("idemrank").unwrap();
    let a = write(&dir, "a.txt", "semiring b2\n2 2\n1 1\n0 0\n");
    let b = write(&dir, "b.txt", "semiring b2\n2 2\n1 0\n0 0\n");
    let out = bin().arg("witness").arg(&a).arg(&b).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("rank(a + witness) = 1"), "{text}");
    assert!(text.contains("rank(b + witness) = 2"), "{text}");
}

#[test]
fn apply_prints_the_image() {
    let dir = tempdir::TempDir::new("idemrank").unwrap();
    let op = write(&dir, "t.txt", TRANSPOSE_OP);
    let m = write(&dir, "m.txt", "semiring b2\n2 2\n1 1\n0 0\n");
    let out = bin().arg("apply").arg(&op).arg(&m).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "semiring b2\n2 2\n1 0\n1 0\n");
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = tempdir::TempDir::new("idemrank").unwrap();
    let bad = write(&dir, "bad.txt", "semiring maxtimes-n\n1 1\n-2\n");
    let out = bin().arg("rank").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn verify_suite_reports_counts() {
    let out = bin()
        .args(["verify", "--suite", "b2-2x2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("65536 cases"), "{text}");
    assert!(text.contains("rank_preservers = 8"), "{text}");
    assert!(text.contains("0 violations"), "{text}");
}

#[test]
fn verify_requires_a_selection() {
    let out = bin().arg("verify").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_for_a_seed() {
    let run = || {
        let out = bin()
            .args(["verify", "--suite", "semimodule-axioms", "--seed", "7", "--format", "json"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        // wall time is the one legitimately varying field
        v["suites"][0]["wall_ms"] = 0.into();
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn axioms_report() {
    let out = bin()
        .args(["axioms", "--semiring", "maxplus"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("additive unit irreducibility"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}
