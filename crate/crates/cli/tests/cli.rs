use std::io::Write;
use std::process::{Command, Output, Stdio};

fn setsys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_setsys")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn apply_loop_complement() {
    let o = setsys(&["apply", "catalog:S3", "+a"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "({a,b,c}, {∅, {a}, {a,b,c}})\n");
}

#[test]
fn apply_sequence_and_json() {
    let o = setsys(&["apply", "--json", "catalog:S4", "pen:d", "*a", "+a"]);
    assert_eq!(o.status.code(), Some(0));
    let back = setsys::io::system_from_json(stdout(&o).trim()).unwrap();
    let a = setsys::Subset(1);
    let s3 = setsys::catalog::get("S3").unwrap();
    assert_eq!(back, s3.twist(a).unwrap().loop_complement(a).unwrap());
}

#[test]
fn check_b1() {
    let o = setsys(&["check", "catalog:B1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for want in ["delta-matroid: yes", "binary: no", "vf-safe: yes", "ribbon-graphic: no"] {
        assert!(out.contains(want), "{out}");
    }
}

#[test]
fn check_reports_exchange_witness() {
    let o = setsys(&["check", "catalog:T1"]);
    assert!(stdout(&o).contains("delta-matroid: no (X = "));
}

#[test]
fn check_reads_files_and_stdin() {
    let dir = std::env::temp_dir().join(format!("setsys-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p3.json");
    std::fs::write(&path, r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]],"loops":[]}"#).unwrap();
    let o = setsys(&["check", path.to_str().unwrap()]);
    let out = stdout(&o);
    assert!(out.contains("binary: yes") && out.contains("ribbon-graphic: yes"), "{out}");
    std::fs::remove_dir_all(&dir).unwrap();

    let mut child = Command::new(env!("CARGO_BIN_EXE_setsys"))
        .args(["check", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"a-b b-c c-d d-e e-f f-a").unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(stdout(&o).contains("basic-binary: yes"));
}

#[test]
fn orbit_sizes() {
    let o = setsys(&["orbit", "catalog:S3"]);
    assert!(stdout(&o).starts_with("orbit size: 28\n"));
    let o = setsys(&["orbit", "catalog:S3", "--labeled"]);
    let first = stdout(&o).lines().next().unwrap().to_string();
    let n: usize = first.trim_start_matches("orbit size: ").parse().unwrap();
    assert!(n > 28);
}

#[test]
fn classify() {
    assert_eq!(stdout(&setsys(&["classify-element", "catalog:S3", "a"])), "Ordinary\n");
    let loopy = setsys(&["classify-element", "catalog:B1", "a"]);
    assert_eq!(loopy.status.code(), Some(0));
}

#[test]
fn verify_identities() {
    let o = setsys(&["verify", "identities"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PASS identities: 18 instances, 0 failures\n");
}

#[test]
fn verify_is_deterministic() {
    let args = ["--jobs", "2", "verify", "interactions", "--trials", "200", "--seed", "5"];
    let a = setsys(&args);
    let b = setsys(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn obstruction_cache() {
    let o = setsys(&["obstructions", "circle"]);
    assert_eq!(stdout(&o), setsys::graph::circle::EMBEDDED_CACHE);
    let o = setsys(&["obstructions", "circle", "--derive", "--max-n", "8"]);
    assert_eq!(stdout(&o), setsys::graph::circle::EMBEDDED_CACHE);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(setsys(&["apply", "catalog:Nope"]).status.code(), Some(2));
    assert_eq!(setsys(&["apply", "catalog:S3", "x:a"]).status.code(), Some(2));
    assert_eq!(setsys(&["apply", "catalog:S3", "*z"]).status.code(), Some(2));
    assert_eq!(setsys(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(setsys(&["verify", "main-theorem", "--max-n", "5"]).status.code(), Some(2));
    assert_eq!(setsys(&["check", "/nonexistent/file.json"]).status.code(), Some(2));
}
