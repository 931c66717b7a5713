use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use strassen_cli::matrix_file::{format_matrix, read_matrix};
use strassen_core::engine::{naive_multiply, FlopCounter, Matrix};
use strassen_core::flopmodel::{one_step_ratio, strassen_flops};
use strassen_core::rng::random_matrix;
use strassen_core::ExactRatio;

fn strassen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strassen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    strassen_cli::table_io::read_csv(text).unwrap()
}

fn column<'a>(header: &[String], row: &'a [String], name: &str) -> &'a str {
    &row[header.iter().position(|h| h == name).unwrap()]
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_strassen_rule() {
    for (n, expected) in [
        ("1024", ["17", "6", "1088", "64"]),
        ("1000", ["32", "5", "1024", "24"]),
    ] {
        let out = strassen(&["analyze", n, "--strategy", "strassen"]);
        assert!(out.status.success());
        let (header, rows) = csv_rows(&stdout(&out));
        let row = &rows[0];
        let got = ["m", "k", "n_tilde", "d"].map(|c| column(&header, row, c).to_string());
        assert_eq!(got, expected);
        assert_eq!(column(&header, row, "memory_bytes"), {
            let units: u64 = column(&header, row, "memory_units").parse().unwrap();
            (units * 8).to_string()
        });
    }
}

#[test]
fn analyze_rejects_small_order_for_strassen_rule() {
    let out = strassen(&["analyze", "15", "--strategy", "strassen"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n >= 16"));
    assert_eq!(strassen(&["analyze", "0"]).status.code(), Some(2));
    assert_eq!(
        strassen(&["analyze", "8", "--strategy", "bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        strassen(&["analyze", "12", "--strategy", "pow2cut:2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn analyze_without_strategy_lists_cases() {
    let out = strassen(&["analyze", "1", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["strategy"], "naive");
    assert_eq!(v[0]["flops"], "1");
}

#[test]
fn multiply_identity_naive_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (
        dir.path().join("a"),
        dir.path().join("b"),
        dir.path().join("c"),
    );
    fs::write(&a, format_matrix(&Matrix::identity(2))).unwrap();
    let bm = random_matrix(2, 2, 7);
    fs::write(&b, format_matrix(&bm)).unwrap();
    let out = strassen(&[
        "multiply",
        path_str(&a),
        path_str(&b),
        "-o",
        path_str(&c),
        "--strategy",
        "naive",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(read_matrix(&c).unwrap().bit_eq(&bm));
}

#[test]
fn multiply_counts_flops() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (
        dir.path().join("a"),
        dir.path().join("b"),
        dir.path().join("c"),
    );
    let am = random_matrix(40, 40, 1);
    let bm = random_matrix(40, 40, 2);
    fs::write(&a, format_matrix(&am)).unwrap();
    fs::write(&b, format_matrix(&bm)).unwrap();
    for (strategy, m, k) in [
        ("strassen", 21u64, 1u32),
        ("explicit:5,3", 5, 3),
        ("optimal", 0, 0),
    ] {
        let out = strassen(&[
            "multiply",
            path_str(&a),
            path_str(&b),
            "-o",
            path_str(&c),
            "--strategy",
            strategy,
            "--count-flops",
            "--workers",
            "3",
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let text = stdout(&out);
        let last = text.lines().last().unwrap();
        let field = |name: &str| {
            last.split_whitespace()
                .find_map(|kv| kv.strip_prefix(&format!("{name}=")))
                .unwrap()
                .to_string()
        };
        assert_eq!(field("total"), field("predicted"));
        if m > 0 {
            assert_eq!(field("total"), strassen_flops(m, k).unwrap().to_string());
        }
        let reference = naive_multiply(&am, &bm, &mut FlopCounter::new()).unwrap();
        assert!(
            read_matrix(&c)
                .unwrap()
                .relative_frobenius_error(&reference)
                .unwrap()
                < 1e-10
        );
    }
}

#[test]
fn multiply_rectangular() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (
        dir.path().join("a"),
        dir.path().join("b"),
        dir.path().join("c"),
    );
    fs::write(&a, format_matrix(&random_matrix(2, 3, 1))).unwrap();
    fs::write(&b, format_matrix(&random_matrix(3, 4, 2))).unwrap();
    let out = strassen(&[
        "multiply",
        path_str(&a),
        path_str(&b),
        "-o",
        path_str(&c),
        "--strategy",
        "naive",
        "--count-flops",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("adds=16 muls=24 total=40 predicted=40"));
    assert_eq!(read_matrix(&c).unwrap().cols(), 4);

    let out = strassen(&[
        "multiply",
        path_str(&a),
        path_str(&b),
        "-o",
        path_str(&c),
        "--strategy",
        "optimal",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn multiply_reports_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (
        dir.path().join("a"),
        dir.path().join("b"),
        dir.path().join("c"),
    );
    fs::write(&a, "2 2\n1 2\n3 oops\n").unwrap();
    fs::write(&b, format_matrix(&Matrix::identity(2))).unwrap();
    let out = strassen(&["multiply", path_str(&a), path_str(&b), "-o", path_str(&c)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(&format!("{}:3", a.display())), "{err}");

    fs::write(&a, format_matrix(&Matrix::identity(3))).unwrap();
    let out = strassen(&[
        "multiply",
        path_str(&a),
        path_str(&b),
        "-o",
        path_str(&c),
        "--strategy",
        "naive",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let missing = dir.path().join("missing");
    let out = strassen(&[
        "multiply",
        path_str(&missing),
        path_str(&b),
        "-o",
        path_str(&c),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (x, y) = (dir.path().join("x"), dir.path().join("y"));
    for p in [&x, &y] {
        assert!(strassen(&["gen", "4", "--seed", "42", "-o", path_str(p)])
            .status
            .success());
    }
    assert_eq!(fs::read(&x).unwrap(), fs::read(&y).unwrap());
    assert!(read_matrix(&x).unwrap().bit_eq(&random_matrix(4, 4, 42)));

    assert!(strassen(&["gen", "1", "-o", path_str(&x)]).status.success());
    let one = read_matrix(&x).unwrap();
    assert!((-1.0..=1.0).contains(&one[(0, 0)]));

    assert_eq!(
        strassen(&["gen", "0", "-o", path_str(&x)]).status.code(),
        Some(2)
    );
    let bad = dir.path().join("no/such/dir/file");
    assert_eq!(
        strassen(&["gen", "2", "-o", path_str(&bad)]).status.code(),
        Some(2)
    );
}

#[test]
fn reproduce_targets() {
    let out = strassen(&["reproduce", "figure2"]);
    assert!(out.status.success());
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(column(&header, &rows[0], "f1"), "3179/2624");

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("avg.json");
    let out = strassen(&[
        "reproduce",
        "average",
        "--format",
        "json",
        "--out",
        path_str(&file),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&fs::read(&file).unwrap()).unwrap();
    let limit = ExactRatio::new(49, 48).unwrap();
    let devs: Vec<ExactRatio> = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|row| row["label"].as_str().unwrap().starts_with("k="))
        .map(|row| {
            row["expected_ratio"]
                .as_str()
                .unwrap()
                .parse::<ExactRatio>()
                .unwrap()
                .abs_diff(&limit)
        })
        .collect();
    assert_eq!(devs.len(), 31);
    assert!(devs.last().unwrap() < &ExactRatio::pow10_neg(6));

    let out = strassen(&["reproduce", "worst"]);
    let (header, rows) = csv_rows(&stdout(&out));
    let row = rows.iter().find(|r| r[0] == "max n_tilde/n").unwrap();
    assert_eq!(column(&header, row, "computed"), "17/16");
    assert_eq!(column(&header, row, "check"), "pass");

    assert_eq!(strassen(&["reproduce", "nothing"]).status.code(), Some(2));
    assert_eq!(
        strassen(&["reproduce", "figure2", "--p-max", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bench_counts_are_exact() {
    let out = strassen(&[
        "bench",
        "--sizes",
        "256",
        "--strategies",
        "naive,optimal,explicit:128,1",
        "--reps",
        "1",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 3);
    for row in &rows {
        assert_eq!(
            column(&header, row, "flops"),
            column(&header, row, "predicted_flops")
        );
    }
    let one_step = rows
        .iter()
        .find(|r| column(&header, r, "strategy") == "explicit:128,1")
        .unwrap();
    assert_eq!(
        column(&header, one_step, "ratio_to_naive"),
        one_step_ratio(256).unwrap().to_string()
    );
    assert_eq!(column(&header, &rows[0], "ratio_to_naive"), "1/1");

    assert_eq!(
        strassen(&["bench", "--sizes", "4", "--reps", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(strassen(&["bench", "--sizes", "0"]).status.code(), Some(2));
}
