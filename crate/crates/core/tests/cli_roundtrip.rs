use std::path::Path;
use std::process::{Command, Output};

fn visipts(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_visipts"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_stdout(args: &[&str]) -> String {
    let out = visipts(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn replay(path: &Path, extra: &[&str]) -> String {
    let mut args = vec![
        "sweep",
        "--from-csv",
        path.to_str().unwrap(),
        "--format",
        "csv",
    ];
    args.extend_from_slice(extra);
    ok_stdout(&args)
}

#[test]
fn every_csv_replays_identically() {
    let dir = tempfile::tempdir().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec![
            "count",
            "-f",
            "V^2 - U^3 - U - 1",
            "-p",
            "31",
            "-a",
            "3",
            "-X",
            "30.5",
            "-Y",
            "31",
        ],
        vec![
            "visible", "-f", "U*V", "-p", "5", "-a", "1", "-X", "5", "-Y", "5",
        ],
        vec!["irred", "-f", "U^2 + V^2", "-p", "7"],
        vec!["irred", "-f", "V - U^5", "-p", "11"],
        vec!["badset", "-f", "U*V", "-p", "11"],
        vec!["zeros", "-f", "V^2 - U^3", "-X", "100", "-Y", "1000"],
        vec![
            "exp-a",
            "-f",
            "V^2 - U^3 - U - 1",
            "-p",
            "31",
            "-X",
            "31",
            "-Y",
            "20.25",
        ],
        vec![
            "exp-p",
            "-f",
            "V^2 - U^3 - U - 1",
            "-T",
            "60",
            "-X",
            "30",
            "-Y",
            "30",
        ],
        vec![
            "sweep",
            "-f",
            "-U^3 + V^2 - U - 1",
            "--primes",
            "29,31",
            "--t-values",
            "40.5",
        ],
    ];
    for (i, cmd) in commands.iter().enumerate() {
        let path = dir.path().join(format!("out{i}.csv"));
        let mut args = cmd.clone();
        args.extend_from_slice(&["--format", "csv", "--out", path.to_str().unwrap()]);
        let out = visipts(&args);
        assert!(
            out.status.success(),
            "{cmd:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let written = std::fs::read_to_string(&path).unwrap();
        assert!(written.starts_with("# schema=1\n"), "{written}");
        assert_eq!(replay(&path, &[]), written, "{cmd:?}");
        assert_eq!(replay(&path, &["--recompute"]), written, "{cmd:?}");
    }
}

#[test]
fn recompute_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("count.csv");
    let body = ok_stdout(&[
        "count", "-f", "U*V", "-p", "5", "-a", "1", "-X", "5", "-Y", "5", "--format", "csv",
    ]);
    assert!(body.ends_with(",4\n"), "{body}");
    std::fs::write(&path, body.replace(",4\n", ",5\n")).unwrap();
    let out = visipts(&["sweep", "--from-csv", path.to_str().unwrap(), "--recompute"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exp_a_csv_is_deterministic() {
    let base = [
        "exp-a",
        "-f",
        "V^2 - U^3 - U - 1",
        "-p",
        "53",
        "-X",
        "53",
        "-Y",
        "53",
        "--format",
        "csv",
    ];
    let first = ok_stdout(&base);
    assert_eq!(first, ok_stdout(&base));
    for w in ["2", "3", "7"] {
        let mut args = base.to_vec();
        args.extend_from_slice(&["--workers", w]);
        assert_eq!(first, ok_stdout(&args));
    }
}

#[test]
fn exit_codes_and_diagnostics() {
    let out = visipts(&[
        "visible", "-f", "U*V", "-p", "6", "-a", "1", "-X", "5", "-Y", "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("6 is not prime"));

    let out = visipts(&["exp-a", "-f", "U*V", "-p", "101", "-X", "101", "-Y", "101"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hypothesis violated"));

    let out = visipts(&[
        "count",
        "-f",
        "7*U^2 + 3",
        "-p",
        "7",
        "-a",
        "0",
        "-X",
        "7",
        "-Y",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(4));

    let out = visipts(&["exp-p", "-f", "V - U^3", "-T", "10", "-X", "6", "-Y", "6"]);
    assert_eq!(out.status.code(), Some(5));

    let out = visipts(&["irred", "-f", "U*V", "-p", "5", "-a", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = visipts(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn visible_table_output() {
    let out = ok_stdout(&[
        "visible", "-f", "U*V", "-p", "5", "-a", "1", "-X", "5", "-Y", "5",
    ]);
    assert!(
        out.contains("direct=3\nmobius=3\nexpected=3.0396\n"),
        "{out}"
    );
}
