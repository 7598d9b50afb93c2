use std::path::Path;
use std::process::{Command, Output};

use regproc::Automaton;

fn regproc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regproc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn four_state_json() -> String {
    Automaton::from_parts(
        4,
        0,
        &[2],
        &[
            (0, "a0", 1),
            (0, "a1", 1),
            (1, "a1", 1),
            (1, "a2", 2),
            (2, "a0", 0),
            (2, "a1", 3),
        ],
    )
    .unwrap()
    .to_json()
}

#[test]
fn lts_is_byte_stable_and_re_readable() {
    let a = regproc(&["lts", "-e", "1.(a.b)* || c"]);
    let b = regproc(&["lts", "-e", "1.(a.b)* || c"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let auto = Automaton::from_json(&stdout(&a)).unwrap();
    assert_eq!(auto.num_states(), 4);

    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "a.json", &stdout(&a));
    let m = regproc(&["minimize", &path]);
    assert_eq!(m.status.code(), Some(0));
    let mpath = write(dir.path(), "m.json", &stdout(&m));
    assert_eq!(regproc(&["bisim", &path, &mpath]).status.code(), Some(0));
    let json = regproc(&["scc", &path, "--json"]);
    assert!(stdout(&json).contains("\"component_of\""));
}

#[test]
fn lts_dot_and_gamma_file() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "gamma.txt", "# handshake\nb c -> e\n");
    let o = regproc(&["lts", "-e", "1.(a.b)*.d || c", "--gamma", &g]);
    assert_eq!(o.status.code(), Some(0));
    let a = Automaton::from_json(&stdout(&o)).unwrap();
    assert_eq!((a.num_states(), a.transitions().len()), (6, 10));
    let dot = regproc(&["lts", "-e", "a", "--format", "dot"]);
    assert!(stdout(&dot).starts_with("digraph"));
    let file = write(dir.path(), "e.txt", "a.b\n");
    assert_eq!(regproc(&["lts", "--file", &file]).status.code(), Some(0));
}

#[test]
fn check_reports_interleaved_loop_witness() {
    let dir = tempfile::tempdir().unwrap();
    let a = regproc(&["lts", "-e", "1.(a.b)* || c"]);
    let path = write(dir.path(), "interleaved.json", &stdout(&a));
    let bpa = regproc(&["check", "--property", "bpa", &path, "--json"]);
    assert_eq!(bpa.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&bpa.stdout).unwrap();
    assert_eq!(report["verdict"], "fail");
    let labels = report["witnesses"][0]["labels"].as_array().unwrap();
    assert!(labels.iter().any(|l| l == "1.(a.b)* || c"));
    assert!(labels.iter().any(|l| l == "1.b.(a.b)* || c"));
    assert_eq!(
        regproc(&["check", "--property", "pa", &path]).status.code(),
        Some(0)
    );
}

#[test]
fn bisim_negative_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(
        dir.path(),
        "x.json",
        &stdout(&regproc(&["lts", "-e", "a.(b+c)"])),
    );
    let y = write(
        dir.path(),
        "y.json",
        &stdout(&regproc(&["lts", "-e", "a.b+a.c"])),
    );
    let o = regproc(&["bisim", &x, &y]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "not bisimilar\n");
}

#[test]
fn encode_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "four_state.json", &four_state_json());
    assert_eq!(regproc(&["verify-encoding", &f]).status.code(), Some(0));
    let out = dir.path().join("enc");
    let o = regproc(&["encode", &f, "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let expr = std::fs::read_to_string(out.join("expression.txt")).unwrap();
    let gamma = out.join("gamma.txt");
    let derived = regproc(&["lts", "-e", expr.trim(), "--gamma", gamma.to_str().unwrap()]);
    assert_eq!(derived.status.code(), Some(0));
    assert_eq!(
        Automaton::from_json(&stdout(&derived))
            .unwrap()
            .num_states(),
        4
    );
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["states"][1]["enter"], "enter_1");
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(regproc(&["lts", "-e", "a |"]).status.code(), Some(2));
    assert_eq!(
        regproc(&["lts", "-e", "a", "-e", "b"]).status.code(),
        Some(2)
    );
    assert_eq!(regproc(&["bogus"]).status.code(), Some(2));
    let bad = write(dir.path(), "bad.json", "{\"states\": []}");
    assert_eq!(regproc(&["scc", &bad]).status.code(), Some(2));
    assert_eq!(
        regproc(&["scc", "/nonexistent/x.json"]).status.code(),
        Some(2)
    );
    let o = regproc(&["lts", "-e", "a* || b* || c* || d*", "--max-states", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("state limit"));
    let unreachable = write(
        dir.path(),
        "u.json",
        &Automaton::from_parts(2, 0, &[], &[]).unwrap().to_json(),
    );
    assert_eq!(
        regproc(&["encode", &unreachable, "-o", dir.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn oc_and_classify() {
    assert_eq!(stdout(&regproc(&["oc", "-e", "a.b*"])), "0\n");
    assert_eq!(
        stdout(&regproc(&["classify", "-e", "encap{a}(a || b)"])),
        "ACP\n"
    );
    assert_eq!(regproc(&["oc", "-e", "encap{a}(a)"]).status.code(), Some(2));
}
