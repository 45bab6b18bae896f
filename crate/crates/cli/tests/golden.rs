use std::path::{Path, PathBuf};
use std::process::Command;

use comax_cli::{render_json, run_batch, run_str, Overrides};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn jobs() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(fixtures())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json") && !p.to_string_lossy().ends_with(".jobs.json"))
        .collect();
    v.sort();
    v
}

fn check_golden(job: &Path, actual: &str) -> Result<(), String> {
    let golden = job.with_extension("golden");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&golden, actual).unwrap();
        return Ok(());
    }
    let expected = std::fs::read_to_string(&golden).map_err(|e| format!("{}: {e}", golden.display()))?;
    if expected != actual {
        return Err(format!("{} differs from its golden output", job.display()));
    }
    Ok(())
}

/// Every job fixture reproduces its golden report byte for byte.
pub fn all_goldens_match() -> Result<usize, String> {
    let mut n = 0;
    for job in jobs() {
        let text = std::fs::read_to_string(&job).unwrap();
        let out = run_str(&text, &Overrides::default());
        check_golden(&job, &render_json(&out.report))?;
        n += 1;
    }
    let batch = fixtures().join("batch.jobs.json");
    let out = run_batch(&std::fs::read_to_string(&batch).unwrap(), &Overrides::default());
    check_golden(&batch, &render_json(&out.report))?;
    Ok(n + 1)
}

#[test]
fn goldens() {
    all_goldens_match().unwrap();
}

#[test]
fn reports_are_stable_across_runs() {
    for job in jobs() {
        let text = std::fs::read_to_string(&job).unwrap();
        let a = render_json(&run_str(&text, &Overrides::default()).report);
        let b = render_json(&run_str(&text, &Overrides::default()).report);
        assert_eq!(a, b, "{}", job.display());
    }
}

fn comax(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_comax")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn fixture(name: &str) -> String {
    fixtures().join(name).to_string_lossy().into_owned()
}

#[test]
fn binary_exit_codes() {
    let cases = [
        ("decompose_z2_z3.json", 0),
        ("bad_ring.json", 1),
        ("malformed.json", 1),
        ("not_comaximal.json", 1),
        ("condition_fails.json", 2),
        ("nilary_triangular.json", 4),
        ("budget.json", 5),
    ];
    for (name, code) in cases {
        let (got, stdout) = comax(&["--input", &fixture(name)]);
        assert_eq!(got, code, "{name}");
        let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        assert_eq!(v["exit_code"], code, "{name}");
    }
}

#[test]
fn binary_flags() {
    let (code, out) = comax(&["pcomp", "--input", &fixture("decompose_z4_z6.json"), "--output", "text"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("command: pcomp\n"));
    let (code, _) = comax(&["--input", &fixture("condition_fails.json"), "--max-exponent", "3"]);
    assert_eq!(code, 0);
    let (code, out) = comax(&["--jobs", &fixture("batch.jobs.json")]);
    assert_eq!(code, 0);
    assert_eq!(serde_json::from_str::<serde_json::Value>(&out).unwrap().as_array().unwrap().len(), 3);
    let (code, out) = comax(&["--input", &fixture("decompose_z2_z3.json"), "--oracle"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"agrees\""));
}
