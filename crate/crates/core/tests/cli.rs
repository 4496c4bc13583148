use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use inplace_poly::bench::{from_csv, CSV_HEADER};

fn exe() -> Command {
    Command::new(env!("CARGO_BIN_EXE_inplace-poly"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str], files: &[&PathBuf]) -> Output {
    exe().args(args).args(files).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn rem_writes_remainder() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "A.poly", "7\n1 2 0 1\n");
    let b = write(dir.path(), "B.poly", "7\n1 0 1\n");
    let out = dir.path().join("R.poly");
    let o = exe().args(["rem", "--mod", "7", "--verify", "--out"]).arg(&out).arg(&a).arg(&b).output().unwrap();
    assert!(o.status.success(), "{o:?}");
    assert_eq!(std::fs::read_to_string(out).unwrap(), "7\n1 1\n");
}

#[test]
fn conv_quorem_aper_mulmod() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (
        write(dir.path(), "a", "5\n1 2\n"),
        write(dir.path(), "b", "5\n3 1\n"),
        write(dir.path(), "c", "5\n0 0\n"),
    );
    let o = run(&["conv", "--mod", "5", "--f", "2", "--verify"], &[&a, &b, &c]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "5\n2 2\n"));

    let (big_a, big_b) = (write(dir.path(), "A", "7\n1 2 0 1\n"), write(dir.path(), "B", "7\n1 0 1\n"));
    let o = run(&["quorem", "--verify"], &[&big_a, &big_b]);
    assert_eq!(stdout(&o), "7\n0 1\n7\n1 1\n");

    let r = write(dir.path(), "R", "7\n1\n");
    let o = run(&["aper", "--verify"], &[&big_a, &big_b, &r]);
    assert_eq!(stdout(&o), "7\n2 1\n");

    let (ma, mc) = (write(dir.path(), "MA", "7\n2 1\n"), write(dir.path(), "MC", "7\n1 2 3\n"));
    let o = run(&["mulmod", "--verify"], &[&ma, &mc, &big_b]);
    assert_eq!(stdout(&o), "7\n1 2\n");
}

#[test]
fn exit_codes_name_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "A", "7\n1 2 0 1\n");
    let zero = write(dir.path(), "Z", "7\n0 0\n");
    let o = run(&["rem"], &[&a, &zero]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("leading"));

    let o = run(&["rem", "--mod", "5"], &[&a, &a]);
    assert_eq!(o.status.code(), Some(1));

    let composite = write(dir.path(), "C", "9\n1 1\n");
    let o = run(&["rem"], &[&composite, &composite]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("prime"));

    let bad = write(dir.path(), "bad", "7\n1 9\n");
    assert_eq!(run(&["rem"], &[&bad, &a]).status.code(), Some(2));
    let missing = dir.path().join("nope");
    assert_eq!(run(&["rem"], &[&missing, &a]).status.code(), Some(2));

    let (x, y) = (write(dir.path(), "x", "5\n1 2\n"), write(dir.path(), "y", "5\n1\n"));
    let o = run(&["conv", "--f", "7"], &[&x, &y, &y]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn selftest_and_bench() {
    let o = exe().arg("selftest").output().unwrap();
    assert!(o.status.success(), "{o:?}");

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let o = exe()
        .args(["bench", "--seed", "7", "--sizes", "16,32", "--degrees", "64,128", "--divisors", "8", "--out"])
        .arg(&csv)
        .output()
        .unwrap();
    assert!(o.status.success(), "{o:?}");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some(CSV_HEADER));
    let rows = from_csv(&text).unwrap();
    assert!(rows.iter().any(|r| r.op == "iper" && r.n == 128 && r.m == 8));
    assert!(rows.iter().all(|r| r.peak_aux == 0));
}
