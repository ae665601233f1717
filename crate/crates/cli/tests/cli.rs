use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn homds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homds")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn construct(dir: &Path, file: &str, args: &[&str]) -> String {
    let path = dir.join(file);
    let path = path.to_str().unwrap().to_string();
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    let o = homds(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

/// Value of `key` in a `key=value` report line.
fn value<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    line.split(' ').find_map(|kv| kv.strip_prefix(key)?.strip_prefix('='))
}

#[test]
fn construct_writes_code_with_provenance() {
    let dir = TempDir::new().unwrap();
    let path = construct(dir.path(), "k3n3.code", &["--name", "k3-n3", "--n", "7"]);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("# construction=k3-n3"));
    assert!(text.contains("# q=49"));
    assert!(text.contains("code n=7 k=3 kind=rs"));

    let o = homds(&["check", &path, "--property", "mds3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(stdout(&o).trim(), "verdict"), Some("pass"));

    let path = construct(dir.path(), "gen.code", &["--name", "general-ell", "--n", "6", "--k", "2", "--ell", "2"]);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("# per_level_degree=8"));
    assert_eq!(homds(&["check", &path, "--property", "mds"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    let o = homds(&["construct", "--name", "k3-n3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(homds(&["construct", "--name", "k9", "--n", "5"]).status.code(), Some(2));
    assert_eq!(homds(&["acceptance", "nope"]).status.code(), Some(2));

    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.code");
    fs::write(&bad, "field p=6\n").unwrap();
    assert_eq!(homds(&["check", bad.to_str().unwrap(), "--property", "mds"]).status.code(), Some(2));
    let missing = dir.path().join("missing.code");
    assert_eq!(homds(&["check", missing.to_str().unwrap(), "--property", "mds"]).status.code(), Some(2));
}

#[test]
fn repeated_generator_fails_with_witness() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("rep.code");
    fs::write(&path, "field p=7\ncode n=6 k=3 kind=rs\ngen 0\ngen 1\ngen 2\ngen 2\ngen 4\ngen 5\n").unwrap();
    let o = homds(&["check", path.to_str().unwrap(), "--property", "mds3"]);
    assert_eq!(o.status.code(), Some(1));
    let line = stdout(&o);
    assert_eq!(value(line.trim(), "verdict"), Some("fail"));
    // the vanishing minor uses both copies of the repeated generator
    let witness = value(line.trim(), "witness").unwrap();
    assert!(witness.contains('3') && witness.contains('4'), "{witness}");
}

#[test]
fn budget_exceeded_exits_three() {
    let dir = TempDir::new().unwrap();
    let path = construct(dir.path(), "k3n4.code", &["--name", "k3-n4", "--n", "5"]);
    let o = homds(&["check", &path, "--property", "ld-mds2", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(homds(&["search", "--n", "6", "--k", "3", "--q", "4", "--budget", "100"]).status.code(), Some(3));
}

#[test]
fn mr_check_on_row_code() {
    let dir = TempDir::new().unwrap();
    let path = construct(dir.path(), "row.code", &["--name", "k3-n4", "--n", "5"]);
    let o = homds(&["check", &path, "--property", "mr", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    assert_eq!(value(line.trim(), "property"), Some("mr"));
    assert_eq!(value(line.trim(), "b"), Some("2"));
    assert_eq!(homds(&["check", &path, "--property", "mr"]).status.code(), Some(2));

    // a 3×3 block is uncorrectable for this code and for generic ones
    let o = homds(&["tensor-check", &path, "--m", "3", "--pattern", "1,1;1,2;1,3;2,1;2,2;2,3;3,1;3,2;3,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(stdout(&o).trim(), "correctable"), Some("false"));
}

#[test]
fn ld_check_modes() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("rs.code");
    fs::write(&path, "field p=5\ncode n=4 k=2 kind=rs\ngen 0\ngen 1\ngen 2\ngen 3\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(homds(&["ld-check", p, "-L", "2"]).status.code(), Some(0));
    let o = homds(&["ld-check", p, "-L", "1", "--radius", "1/4"]);
    assert_eq!(value(stdout(&o).trim(), "radius"), Some("1"));
    let o = homds(&["ld-check", p, "-L", "1", "--dual"]);
    assert_eq!(value(stdout(&o).trim(), "mds2"), Some("pass"));
    // five codewords within distance 4 of anything, so list size 1 fails
    let o = homds(&["ld-check", p, "-L", "1", "--radius", "1/1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn certificates_and_corrupted_data() {
    let o = homds(&["verify-certificates", "--char2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 6);
    assert!(out.lines().all(|l| value(l, "verdict") == Some("pass")), "{out}");
    assert!(out.contains("certificate=char2-membership"));

    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("q.txt");
    let data = homds::multipoly::CLAIM_Q_DATA.replacen("x2*x3", "x2*x4", 1);
    fs::write(&bad, data).unwrap();
    let o = homds(&["verify-certificates", "--q-data", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("checksum"));
}

#[test]
fn reports_do_not_depend_on_threads() {
    let dir = TempDir::new().unwrap();
    let path = construct(dir.path(), "k4.code", &["--name", "k4", "--n", "6"]);
    let run = |threads: &str| {
        let o = homds(&["--deterministic", "--threads", threads, "check", &path, "--property", "mds3"]);
        stdout(&o)
    };
    assert_eq!(run("1"), run("4"));
    let search = |threads: &str| {
        stdout(&homds(&["--deterministic", "--threads", threads, "search", "--n", "5", "--k", "2", "--q", "3"]))
    };
    assert_eq!(search("1"), search("3"));
}

#[test]
fn json_lines_output() {
    let dir = TempDir::new().unwrap();
    let path = construct(dir.path(), "k3n4.code", &["--name", "k3-n4", "--n", "7"]);
    let o = homds(&["--format", "json-lines", "check", &path, "--property", "mds3-fast"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["tuples"], 105);
}

#[test]
fn acceptance_certificate_suite() {
    let o = homds(&["--deterministic", "acceptance", "certificates"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.starts_with("criterion=8 name=certificates verdict=pass time_ms=0"), "{out}");
}
