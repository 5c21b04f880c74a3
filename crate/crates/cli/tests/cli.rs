use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn pmlg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmlg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_instance(dir: &Path) -> String {
    let path = dir.join("inst.txt");
    fs::write(&path, "ov 1\n2 3\n1 0 0\n1 0 1\n0 1 1\n1 1 0\n").unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn reduce_writes_golden_pattern() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_instance(dir.path());
    let out = dir.path().join("art");
    let o = pmlg(&[
        "reduce",
        &inst,
        "--variant",
        "undirected",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let pattern = fs::read_to_string(out.join("pattern.txt")).unwrap();
    assert!(pattern.contains("bb100eb101ee"));
    assert_eq!(
        fs::read_to_string(out.join("meta.txt")).unwrap(),
        "undirected 2 3 false false -\n"
    );
}

#[test]
fn match_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_instance(dir.path());
    let out = dir.path().join("art");
    pmlg(&[
        "reduce",
        &inst,
        "--variant",
        "dag",
        "-o",
        out.to_str().unwrap(),
    ]);
    let graph = out.join("graph.txt");
    let o = pmlg(&[
        "match",
        graph.to_str().unwrap(),
        out.join("pattern.txt").to_str().unwrap(),
    ]);
    // x_1 = 100 is orthogonal to y_1 = 011
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "match");

    let miss = dir.path().join("miss.txt");
    fs::write(&miss, "pmlgpat 1\nalphabet base4\neeee\n").unwrap();
    let o = pmlg(&[
        "match",
        graph.to_str().unwrap(),
        miss.to_str().unwrap(),
        "--report-occurrences",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "no match");
}

#[test]
fn occurrences_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    fs::write(
        &g,
        "pmlg 1\nalphabet base4\ndirected true\nnodes 2\n0 b0\n1 1e\nedges 1\n0 1\n",
    )
    .unwrap();
    let p = dir.path().join("p.txt");
    fs::write(&p, "pmlgpat 1\nalphabet base4\n01\n").unwrap();
    let o = pmlg(&[
        "match",
        g.to_str().unwrap(),
        p.to_str().unwrap(),
        "--report-occurrences",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "start=0:2 end=1:1 witness=0,1\nmatch\n");
}

#[test]
fn verify_random_zigzag() {
    let o = pmlg(&[
        "verify",
        "--random",
        "4",
        "4",
        "7",
        "planted-orthogonal",
        "--variant",
        "zigzag",
        "--no-timings",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("agree=true"));
    assert!(!text.contains("match_ms"));
}

#[test]
fn verify_is_reproducible() {
    let args = [
        "verify",
        "--random",
        "3",
        "3",
        "11",
        "random",
        "--no-timings",
    ];
    assert_eq!(stdout(&pmlg(&args)), stdout(&pmlg(&args)));
}

#[test]
fn verify_batch_has_no_disagreements() {
    for extra in [&[][..], &["--binary"][..]] {
        let mut args = vec!["verify", "--count", "500", "--seed", "1"];
        args.extend_from_slice(extra);
        let o = pmlg(&args);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), "checked=500 disagreements=0");
    }
}

#[test]
fn stats_on_zigzag() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_instance(dir.path());
    let out = dir.path().join("art");
    pmlg(&[
        "reduce",
        &inst,
        "--variant",
        "zigzag",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(out.join("pattern1.txt").exists() && out.join("pattern2.txt").exists());
    let o = pmlg(&["stats", out.join("graph.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("simple_path=true max_degree=2"));
}

#[test]
fn artifacts_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.txt");
    let inst = inst.to_str().unwrap();
    for run in ["a", "b"] {
        let o = pmlg(&[
            "gen",
            "--n",
            "3",
            "--d",
            "4",
            "--seed",
            "5",
            "--mode",
            "planted-orthogonal",
            "-o",
            inst,
        ]);
        assert_eq!(o.status.code(), Some(0));
        let out = dir.path().join(run);
        pmlg(&[
            "reduce",
            inst,
            "--variant",
            "det-dag",
            "--binary",
            "--seed",
            "5",
            "-o",
            out.to_str().unwrap(),
        ]);
    }
    for f in ["graph.txt", "pattern.txt", "meta.txt"] {
        assert_eq!(
            fs::read(dir.path().join("a").join(f)).unwrap(),
            fs::read(dir.path().join("b").join(f)).unwrap()
        );
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(pmlg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pmlg(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        pmlg(&[
            "verify",
            "--random",
            "2",
            "2",
            "1",
            "planted",
            "--variant",
            "zigzag",
            "--binary"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        pmlg(&["stats", "/nonexistent/graph.txt"]).status.code(),
        Some(2)
    );
}

#[test]
fn bench_prints_table() {
    let o = pmlg(&["bench", "--n", "2,4", "--d", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().contains("match_ms"));
    assert!(text.contains("slope="));
}
