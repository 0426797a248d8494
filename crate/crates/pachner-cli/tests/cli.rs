//! End-to-end tests of the `pachner` binary: golden outputs, exit codes,
//! and the walk → verify round trip.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pachner"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pachner-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

#[test]
fn gen_sphere_golden() {
    let out = run(&["gen", "--kind", "sphere", "--dim", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
}

#[test]
fn gen_to_file_and_json_round_trip() {
    let dir = tmpdir("gen");
    let txt = dir.join("s2.txt");
    let json = dir.join("s2.json");
    assert!(run(&["gen", "--kind", "sphere", "--dim", "2", "--out", txt.to_str().unwrap()])
        .status
        .success());
    assert!(run(&["gen", "--kind", "sphere", "--dim", "2", "--out", json.to_str().unwrap()])
        .status
        .success());
    let info_txt = run(&["info", txt.to_str().unwrap()]);
    let info_json = run(&["info", json.to_str().unwrap()]);
    assert_eq!(stdout(&info_txt), stdout(&info_json));
}

#[test]
fn info_golden() {
    let dir = tmpdir("info");
    let f = dir.join("s2.txt");
    write(&f, "# minimal 2-sphere\n2 3 4\n1 3 4\n1 2 4\n1 2 3\n");
    let out = run(&["info", f.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "dim: 2\nf-vector: (4, 6, 4)\neuler: 2\nclosed: yes\norientable: yes\nmanifold: yes\n"
    );

    let rp2 = dir.join("rp2.txt");
    assert!(run(&["gen", "--kind", "projective-plane", "--out", rp2.to_str().unwrap()])
        .status
        .success());
    let out = run(&["info", rp2.to_str().unwrap()]);
    assert_eq!(
        stdout(&out),
        "dim: 2\nf-vector: (6, 15, 10)\neuler: 1\nclosed: yes\norientable: no\nmanifold: yes\n"
    );
}

#[test]
fn moves_golden_and_kind_filter() {
    let dir = tmpdir("moves");
    let f = dir.join("s2.txt");
    write(&f, "1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
    let out = run(&["moves", f.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "2 1 2 3 | 5\n2 1 2 4 | 5\n2 1 3 4 | 5\n2 2 3 4 | 5\n"
    );
    let out = run(&["moves", f.to_str().unwrap(), "--kind", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "");
}

#[test]
fn apply_subdivides_a_single_triangle() {
    let dir = tmpdir("apply");
    let f = dir.join("tri.txt");
    write(&f, "1 2 3\n");
    let out = run(&["apply", f.to_str().unwrap(), "--a", "1 2 3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 2 4\n1 3 4\n2 3 4\n");

    // explicit fresh label for the k=d move
    let out = run(&["apply", f.to_str().unwrap(), "--a", "1 2 3", "--b", "9"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 2 9\n1 3 9\n2 3 9\n");
}

#[test]
fn apply_inadmissible_exits_4_with_one_error_line() {
    let dir = tmpdir("apply4");
    let f = dir.join("s2.txt");
    write(&f, "1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
    let out = run(&["apply", f.to_str().unwrap(), "--a", "1 2"]);
    assert_eq!(out.status.code(), Some(4));
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("ERROR 4: "), "got: {err}");
}

#[test]
fn walk_then_verify_round_trips() {
    let dir = tmpdir("walk");
    let f = dir.join("s2.txt");
    let trace = dir.join("walk.trace");
    write(&f, "1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
    let out = run(&[
        "walk",
        f.to_str().unwrap(),
        "--steps",
        "25",
        "--budget",
        "10",
        "--seed",
        "42",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let first = stdout(&out);

    // identical seed, identical bytes
    let out2 = run(&[
        "walk",
        f.to_str().unwrap(),
        "--steps",
        "25",
        "--budget",
        "10",
        "--seed",
        "42",
    ]);
    assert_eq!(first, stdout(&out2));

    let out = run(&["verify", f.to_str().unwrap(), "--trace", trace.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("exact-match: 25 steps"));

    // verifying against the wrong start complex diverges
    let wrong = dir.join("tri.txt");
    write(&wrong, "1 2 3\n");
    let out = run(&["verify", wrong.to_str().unwrap(), "--trace", trace.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("first divergence"));
}

#[test]
fn simplify_reduced_and_unknown() {
    let dir = tmpdir("simplify");
    let f = dir.join("s2.txt");
    let big = dir.join("big.txt");
    write(&f, "1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
    assert!(run(&[
        "walk",
        f.to_str().unwrap(),
        "--steps",
        "20",
        "--budget",
        "10",
        "--seed",
        "1",
        "--out",
        big.to_str().unwrap(),
    ])
    .status
    .success());
    let out = run(&["simplify", big.to_str().unwrap(), "--seed", "7"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("verdict: REDUCED\n"), "got: {text}");

    let rp2 = dir.join("rp2.txt");
    assert!(run(&["gen", "--kind", "projective-plane", "--out", rp2.to_str().unwrap()])
        .status
        .success());
    let out = run(&["simplify", rp2.to_str().unwrap(), "--seed", "7"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(stdout(&out).starts_with("verdict: UNKNOWN\n"));
    assert!(stderr(&out).starts_with("ERROR 5: "));
}

#[test]
fn flipgraph_exports_and_reports() {
    let dir = tmpdir("flipgraph");
    let f = dir.join("s2.txt");
    let graph_dir = dir.join("graph");
    write(&f, "1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
    let out = run(&[
        "flipgraph",
        f.to_str().unwrap(),
        "--budget",
        "6",
        "--out",
        graph_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "nodes: 4\nedges: 3\nconnected: yes\n");
    assert!(graph_dir.join("graph.txt").is_file());
    assert!(graph_dir.join("nodes").join("node_000.txt").is_file());
    // node files are themselves loadable complexes
    let node0 = graph_dir.join("nodes").join("node_000.txt");
    assert!(run(&["info", node0.to_str().unwrap()]).status.success());

    // too small a budget is an input error
    let out = run(&[
        "flipgraph",
        f.to_str().unwrap(),
        "--budget",
        "3",
        "--out",
        graph_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn shell_enumerates_with_witnesses() {
    let dir = tmpdir("shell");
    let two_tets = dir.join("two.txt");
    write(&two_tets, "1 2 3 4\n2 3 4 5\n");
    let out = run(&["shell", two_tets.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "S 1 2 3 4 | 1 | 2 3 4 => boundary 0 1 | 2 3 4\n\
         S 2 3 4 5 | 5 | 2 3 4 => boundary 0 5 | 2 3 4\n"
    );

    // closed input cannot be shelled
    let s2 = dir.join("s2.txt");
    write(&s2, "1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
    let out = run(&["shell", s2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));

    // --to-facet reduces a ball to one facet, deterministically
    let out = run(&[
        "shell",
        two_tets.to_str().unwrap(),
        "--to-facet",
        "--seed",
        "3",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1);
    let rerun = run(&[
        "shell",
        two_tets.to_str().unwrap(),
        "--to-facet",
        "--seed",
        "3",
    ]);
    assert_eq!(stdout(&out), stdout(&rerun));
}

#[test]
fn gen_cone_suspension_join_take_inputs() {
    let dir = tmpdir("genops");
    let s1 = dir.join("s1.txt");
    let shifted = dir.join("s1b.txt");
    write(&s1, "1 2\n1 3\n2 3\n");
    write(&shifted, "4 5\n4 6\n5 6\n");

    let out = run(&["gen", "--kind", "cone", s1.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 2 4\n1 3 4\n2 3 4\n");

    let out = run(&[
        "gen",
        "--kind",
        "join",
        s1.to_str().unwrap(),
        shifted.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 9); // S¹ ∗ S¹ = S³, 9 facets

    // label clash is an input error
    let out = run(&["gen", "--kind", "join", s1.to_str().unwrap(), s1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    // missing --dim is an input error
    let out = run(&["gen", "--kind", "sphere"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["walk", "nowhere.txt"]); // missing required flags
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_exits_3() {
    let dir = tmpdir("badinput");
    let f = dir.join("bad.txt");
    write(&f, "1 2 3\n4 5\n"); // mixed facet sizes
    let out = run(&["info", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("ERROR 3: "));
}
