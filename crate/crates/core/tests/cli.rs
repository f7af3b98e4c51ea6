//! End-to-end tests of the `blockperm` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn blockperm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockperm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dist_worked_example() {
    let o = blockperm(&["dist", "4 8 3 2 6 7 5 1 9", "6 7 8 3 2 5 1 9 4", "--definition"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3\nby definition: 3\n");
    let o = blockperm(&["dist", "4,8,3,2,6,7,5,1,9", "6,7,8,3,2,5,1,9,4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["distance"], 3);
}

#[test]
fn invalid_input_exits_one() {
    assert_eq!(blockperm(&["dist", "1 2 3", "1 2"]).status.code(), Some(1));
    assert_eq!(blockperm(&["charset", "1 0 2"]).status.code(), Some(1));
    assert_eq!(blockperm(&["spheres", "--n", "12"]).status.code(), Some(1));
    assert_eq!(
        blockperm(&["construct", "--method", "even", "--n", "5"]).status.code(),
        Some(1)
    );
    assert_eq!(
        blockperm(&[
            "construct",
            "--method",
            "syndrome",
            "--n",
            "5",
            "--d",
            "3",
            "--f",
            "99,1"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(blockperm(&["bounds", "--n", "5", "--d", "9"]).status.code(), Some(1));
}

#[test]
fn guard_override_is_announced() {
    let o = blockperm(&["--max-n", "9", "spheres", "--n", "9", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let total: u64 = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 362_880);
}

#[test]
fn construct_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (method, n, d, fmt) in [
        ("syndrome", "6", "3", "text"),
        ("zn1", "10", "9", "json"),
        ("hamdecomp", "7", "6", "text"),
    ] {
        let path = dir.path().join(format!("{method}.code"));
        let path_s = path.to_str().unwrap();
        let o = blockperm(&[
            "construct",
            "--method",
            method,
            "--n",
            n,
            "--d",
            d,
            "--format",
            fmt,
            "--output",
            path_s,
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{method}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let o = blockperm(&["verify", path_s]);
        assert_eq!(o.status.code(), Some(0), "{method}");
        assert!(stdout(&o).contains(&format!("min_distance={d}")) || method == "syndrome");
    }
}

#[test]
fn verify_rejects_duplicates_and_short_distance() {
    let dir = tempfile::tempdir().unwrap();
    let dup = dir.path().join("dup.txt");
    std::fs::write(&dup, "4 2 file\n1 2 3 4\n1 2 3 4\n").unwrap();
    assert_eq!(blockperm(&["verify", dup.to_str().unwrap()]).status.code(), Some(1));

    let low = dir.path().join("low.txt");
    std::fs::write(&low, "4 3 file\n1 2 3 4\n2 1 3 4\n").unwrap();
    let o = blockperm(&["verify", low.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL"));
    assert_eq!(
        blockperm(&["verify", "--d", "1", low.to_str().unwrap()]).status.code(),
        Some(0)
    );
}

#[test]
fn verify_reads_stdin() {
    let code = blockperm(&["construct", "--method", "even", "--n", "8", "--format", "json"]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_blockperm"))
        .args(["verify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&code.stdout).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("min_distance=7"));
}

#[test]
fn hamdecomp_not_found_exits_two() {
    let o = blockperm(&["construct", "--method", "hamdecomp", "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("NotFound"));
}

#[test]
fn table_deviation_exits_nonzero_and_corrected_file_passes() {
    let o = blockperm(&["bounds", "--table1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("262461363"));

    let csv = blockperm(&["bounds", "--table1", "--format", "csv"]);
    assert!(stdout(&csv).starts_with("n,d,"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let fixed = include_str!("../data/table1.csv").replace("262461363", "262461207");
    std::fs::write(&path, fixed).unwrap();
    assert_eq!(
        blockperm(&["bounds", "--table1", "--table1-file", path.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn selftest_with_corrupted_table_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    std::fs::write(&path, "n,d,sphere_packing,new_bound\n13,9,40320,1\n").unwrap();
    let o = blockperm(&["selftest", "--max-n", "5", "--table1-file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("[FAIL]  4."));
}

#[test]
fn output_is_deterministic() {
    let cases: [&[&str]; 4] = [
        &[
            "construct",
            "--method",
            "syndrome",
            "--n",
            "6",
            "--d",
            "3",
            "--format",
            "json",
        ],
        &["graph", "--n", "5", "--d", "3", "--stats", "--format", "json"],
        &["graph", "--n", "4", "--d", "3", "--greedy", "--order", "degree"],
        &["bounds", "--n", "17", "--d", "11", "--format", "json"],
    ];
    for args in cases {
        let a = blockperm(args);
        let b = blockperm(args);
        let mut threaded = vec!["--threads", "1"];
        threaded.extend_from_slice(args);
        let c = blockperm(&threaded);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, c.stdout, "{args:?}");
    }
}

#[test]
fn graph_stats_json_fields() {
    let o = blockperm(&["graph", "--n", "4", "--d", "3", "--stats", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["delta"], 12);
    assert_eq!(v["zero_x_edges"], 0);
    assert!(v.get("triangles").is_some());
}
