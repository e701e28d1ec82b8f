use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qclocksync::cli::{cmd_validate_with, CliInvocation, EXIT_VALIDATION};
use qclocksync::engine::dicke_visibility;
use qclocksync::experiments::validate_samplers_with;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qclocksync"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn run_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "c.cfg", "protocol = pairs\nn = 4\nk = 400\ntrials = 30\nseed = 5\nwrite_log = true\n");
    let o = run(dir.path(), &["run", "--config", "c.cfg", "--out", "res"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for f in ["summary.json", "summary.txt", "results.csv", "trial0.log"] {
        assert!(dir.path().join("res").join(f).is_file(), "{f} missing");
    }
    let csv = fs::read_to_string(dir.path().join("res/results.csv")).unwrap();
    assert!(csv.starts_with("# generated_unix="));
    let log = fs::read_to_string(dir.path().join("res/trial0.log")).unwrap();
    let log = qclocksync::protocol::BroadcastLog::parse(&log).unwrap();
    // 400 round-sets of three pairs
    assert_eq!(log.len(), 1200);
}

#[test]
fn csv_is_byte_identical_without_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "c.cfg", "protocol = ghz\nn = 4\nk = 600\ntrials = 40\nseed = 11\n");
    let a = run(dir.path(), &["run", "--config", "c.cfg", "--out", "a", "--no-timestamp"]);
    let b = run(dir.path(), &["run", "--config", "c.cfg", "--out", "b", "--no-timestamp", "--threads", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    let read = |d: &str| fs::read(dir.path().join(d).join("results.csv")).unwrap();
    assert_eq!(read("a"), read("b"));
}

#[test]
fn seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "c.cfg", "protocol = dicke\nn = 4\nk = 200\ntrials = 30\n");
    let o = run(dir.path(), &["run", "--config", "c.cfg", "--out", "a", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("seed"));
    let a = run(dir.path(), &["run", "--config", "c.cfg", "--out", "a", "--no-timestamp", "--seed", "1"]);
    let b = run(dir.path(), &["run", "--config", "c.cfg", "--out", "b", "--no-timestamp", "--seed", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_ne!(fs::read(dir.path().join("a/results.csv")).unwrap(), fs::read(dir.path().join("b/results.csv")).unwrap());
}

#[test]
fn config_errors_exit_one_and_name_the_input() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("odd.cfg", "protocol = ghz\nn = 5\nk = 12288\nseed = 1\n", "N must be even"),
        ("div.cfg", "protocol = ghz\nn = 4\nk = 1000\nseed = 1\n", "multiple of 6"),
        ("syntax.cfg", "protocol = ghz\nn 4\n", "line 2"),
        ("unknown.cfg", "protocol = ghz\ncolour = red\n", "colour"),
    ];
    for (name, text, needle) in cases {
        write(dir.path(), name, text);
        let o = run(dir.path(), &["run", "--config", name]);
        assert_eq!(o.status.code(), Some(1), "{name}");
        let err = stderr(&o);
        assert!(err.contains(needle) && err.contains(name), "{name}: {err}");
    }
    let o = run(dir.path(), &["run", "--config", "missing.cfg"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("missing.cfg"));
    let o = run(dir.path(), &["run"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn capacity_overflow_exits_two_with_hint() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "big.cfg", "protocol = dicke\nn = 20\nk = 100\nseed = 1\ndicke_backend = statevector\n");
    let o = run(dir.path(), &["run", "--config", "big.cfg"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("statevector limit") && err.contains("hint:"), "{err}");
}

#[test]
fn sweep_shape_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "s.cfg", "sweep_n = [4, 6, 8]\nsweep_q = 16800\ntrials = 30\nseed = 7\n");
    let o = run(dir.path(), &["sweep", "--config", "s.cfg", "--out", "o", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(dir.path().join("o/sweep.csv")).unwrap();
    let mut rdr = csv::Reader::from_reader(csv.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 9);
    for r in &rows {
        let protocol = qclocksync::protocol::Protocol::from_name(&r[0]).unwrap();
        let n: usize = r[1].parse().unwrap();
        let q: usize = r[2].parse().unwrap();
        let analytic: f64 = r[7].parse().unwrap();
        let exact = qclocksync::estimation::qubit_efficiency(protocol, n, q).unwrap();
        assert_eq!(format!("{analytic:.12e}"), format!("{exact:.12e}"));
    }

    write(dir.path(), "empty.cfg", "sweep_n = []\nsweep_q = 16800\nseed = 7\n");
    assert_eq!(run(dir.path(), &["sweep", "--config", "empty.cfg"]).status.code(), Some(1));
    write(dir.path(), "q.cfg", "sweep_n = [4, 6, 8]\nsweep_q = 1000\nseed = 7\n");
    let o = run(dir.path(), &["sweep", "--config", "q.cfg"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("multiple of 1680"), "{}", stderr(&o));
}

#[test]
fn validate_passes_on_fresh_build() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["validate", "--out", "v"]);
    assert_eq!(o.status.code(), Some(0));
    let table = fs::read_to_string(dir.path().join("v/validation.txt")).unwrap();
    assert!(table.lines().filter(|l| l.contains("PASS")).count() >= 8);
}

#[test]
fn corrupted_visibility_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v");
    let inv = CliInvocation::from_args(["qclocksync", "validate", "--out", out.to_str().unwrap()]).unwrap();
    let code = cmd_validate_with(&inv, || validate_samplers_with(&|n| dicke_visibility(n).unwrap() * 1.001));
    assert_eq!(code, EXIT_VALIDATION);
    let table = fs::read_to_string(out.join("validation.txt")).unwrap();
    assert!(table.contains("dicke_pair_correlation_n4  FAIL"), "{table}");
}
