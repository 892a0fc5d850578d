use std::process::{Command, Output};

fn ordchomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordchomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ordchomp(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn calc_and_order() {
    assert_eq!(stdout(&["calc", "w+1", "nsum", "w*2+3"]), "w*3+4\n");
    assert_eq!(stdout(&["calc", "w^(w)", "add", "w^2"]), "w^(w)+w^2\n");
    assert_eq!(stdout(&["order", "--gens", "3,5", "--sigma", "1", "3", "6"]), "3 <= 6 : true\n");
    assert_eq!(
        stdout(&["order", "--gens", "2,3,w^2+w+1", "--sigma", "3", "w^2+w+1", "w^2+w*3+1"]),
        "w^2+w+1 <= w^2+w*3+1 : false\n"
    );
}

#[test]
fn wpog_reports() {
    let out = stdout(&["wpog", "--gens", "w+1"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[..5], ["wpog: no", "w+1", "w*2+2", "w*3+3", "w*4+4"]);
    assert_eq!(stdout(&["wpog", "--gens", "3,5"]), "wpog: yes (corollary)\n");
    assert_eq!(stdout(&["wpog", "--gens", "2,3,w^2*4+w*7"]), "wpog: yes (corollary)\n");
}

#[test]
fn solve_reports() {
    assert_eq!(
        stdout(&["solve", "--gens", "3,4,5", "--sigma", "1"]),
        "winner: A\nquality: exact\nwinning-move: 3\n"
    );
    assert_eq!(stdout(&["solve", "--gens", "3,5"]), "winner: B\nquality: bounded(48)\n");
    assert_eq!(
        stdout(&["solve", "--gens", "3,4,5", "--sigma", "2", "--coeff-bound", "2"]),
        "winner: A\nquality: bounded(2)\nwinning-move: 3\n"
    );
}

#[test]
fn enum_and_hasse_files() {
    let dir = std::env::temp_dir().join(format!("ordchomp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let list = dir.join("view.txt");
    let dot = dir.join("hasse.dot");
    stdout(&["enum", "--gens", "3,5", "--coeff-bound", "2", "--out", list.to_str().unwrap()]);
    let text = std::fs::read_to_string(&list).unwrap();
    let values: Vec<u64> = text.lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(values, vec![0, 3, 5, 6, 8, 10, 11, 13, 16]);

    stdout(&["hasse", "--gens", "w+1", "--sigma", "2", "--coeff-bound", "1", "--out", dot.to_str().unwrap()]);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph hasse {"));
    assert!(text.contains("label=\"w+1\""));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["selftest", "--quick", "--seed", "5"];
    let a = ordchomp(&args);
    let b = ordchomp(&args);
    assert!(a.status.success());
    // timings differ between runs, everything else must not
    let strip = |o: &Output| {
        String::from_utf8_lossy(&o.stdout)
            .lines()
            .map(|l| l.split(", 0.").next().unwrap().to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(stdout(&["enum", "--gens", "w+1,3", "--sigma", "2"]), stdout(&["enum", "--gens", "w+1,3", "--sigma", "2"]));
}

#[test]
fn errors_and_exit_codes() {
    let out = ordchomp(&["enum", "--gens", "3,5", "--coeff-bound", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--coeff-bound"));

    let out = ordchomp(&["order", "--gens", "3,5", "--sigma", "x", "3", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error: --sigma"));

    let out = ordchomp(&["solve", "--gens", "2,4"]);
    assert_eq!(out.status.code(), Some(1));

    let out = ordchomp(&["help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn play_over_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_ordchomp"))
        .args(["play", "--gens", "3,5"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"8\n").unwrap();
    let out = child.wait_with_output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("engine: "), "{text}");
    assert!(text.ends_with("game abandoned\n"), "{text}");
}
