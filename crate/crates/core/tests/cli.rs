use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grassmann-cup"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("run binary")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn basis_lines() {
    let o = run(&["basis", "--n", "12", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let polys: Vec<String> = stdout(&o)
        .lines()
        .map(|l| l.split('\t').next().unwrap().to_string())
        .collect();
    assert_eq!(polys, ["w2^5", "w2^4*w3", "w3^4"]);
}

#[test]
fn cuplength_text() {
    let o = run(&["cuplength", "--n", "13"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(row[..4], ["13", "3", "10", "10"]);
    assert_eq!(row[5], "PASS");
}

#[test]
fn table_matches_heights_and_cuplength() {
    let o = run(&["table", "--t", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let table = stdout(&o);
    let h = stdout(&run(&[
        "heights", "--from", "15", "--to", "30", "--format", "csv",
    ]));
    let c = stdout(&run(&[
        "cuplength",
        "--from",
        "15",
        "--to",
        "30",
        "--format",
        "csv",
    ]));
    let rows: Vec<Vec<String>> = table
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    assert_eq!(rows.len(), 16);
    for ((t, h), c) in rows.iter().zip(h.lines().skip(1)).zip(c.lines().skip(1)) {
        let h: Vec<&str> = h.split(',').collect();
        let c: Vec<&str> = c.split(',').collect();
        assert_eq!(t[0], h[0]);
        assert_eq!(t[1], c[4], "cup at n = {}", t[0]);
        assert_eq!(t[3], h[3], "ht2 at n = {}", t[0]);
        assert_eq!(t[4], h[5], "ht3 at n = {}", t[0]);
    }
}

#[test]
fn usage_error_leaves_stdout_empty() {
    for args in [
        &["verify", "--from", "10", "--to", "7"][..],
        &["basis", "--n", "3"],
        &["bogus"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn jobs_do_not_change_output() {
    let a = run(&[
        "verify", "--from", "6", "--to", "40", "--format", "csv", "--jobs", "1",
    ]);
    let b = run(&[
        "verify", "--from", "6", "--to", "40", "--format", "csv", "--jobs", "4",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn identities_single_tag() {
    let o = run(&["identities", "--id", "upper-congruence", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["id"], "upper-congruence");
    assert_eq!(v["failures"], 0);
}
