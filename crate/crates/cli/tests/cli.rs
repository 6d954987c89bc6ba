use std::process::{Command, Output};

use psi_pascal::{Domain, LowerTriMatrix, MatrixDocument, MatrixKind};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psi-pascal")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn classical_pascal_csv() {
    assert_eq!(stdout(&["gen", "pascal", "classical", "-n", "3", "--x", "1", "-f", "csv"]), "1\n1,1\n1,2,1\n");
    assert_eq!(stdout(&["gen", "pascal", "-s", "fibonomial", "-n", "1", "--x", "5", "-f", "csv"]), "1\n");
}

#[test]
fn fibonomial_k_json() {
    let json = stdout(&["gen", "K", "fibonomial", "-n", "4", "-f", "json"]);
    let doc = MatrixDocument::from_json(&json).unwrap();
    let sub: Vec<&str> = (1..4).map(|i| doc.entries[i][i - 1].as_str()).collect();
    assert_eq!(sub, ["1", "1", "2"]);
}

#[test]
fn symbolic_pascal_rows_are_scaled_powers() {
    let latex = stdout(&["gen", "pascal", "fibonomial", "-n", "5", "-f", "latex"]);
    let rows: Vec<&str> = latex.lines().collect();
    assert_eq!(rows[0], "\\left[\\begin{array}{ccccc}");
    assert_eq!(rows[1], "1 & 0 & 0 & 0 & 0\\\\");
    assert_eq!(rows[4], "x^{3} & 2x^{2} & 2x & 1 & 0\\\\");
    assert_eq!(rows[5], "x^{4} & 3x^{3} & 6x^{2} & 3x & 1\\\\");
    assert_eq!(*rows.last().unwrap(), "\\end{array}\\right]");
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        &["gen", "pascal", "q", "-n", "6", "-f", "json"][..],
        &["gen", "fermat", "fibonomial", "-n", "6", "-f", "latex"],
        &["suite", "-f", "json"],
        &["check", "eq8", "qhat-power:q", "-n", "3"],
    ] {
        let first = run(args);
        let second = run(args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn json_round_trip_reproduces_bytes() {
    for (selector, domain) in [("classical", Domain::Rational), ("q", Domain::RationalFunction)] {
        let json = stdout(&["gen", "pascal", selector, "-n", "5", "-f", "json"]);
        let doc = MatrixDocument::from_json(&json).unwrap();
        let entries = doc.parse_entries(domain).unwrap();
        let rebuilt =
            LowerTriMatrix::try_from_fn(doc.size, domain, |i, j| Ok(entries[i][j].clone())).unwrap();
        let again = MatrixDocument::from_lower(MatrixKind::Pascal, &doc.sequence, doc.x.clone(), &rebuilt);
        assert_eq!(again.to_json(), json);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["check", "eq10", "q", "--i", "2", "--j", "2"]).status.code(), Some(0));
    let fail = run(&["check", "eq6", "fibonomial", "-n", "3", "-f", "json"]);
    assert_eq!(fail.status.code(), Some(1));
    let line = String::from_utf8(fail.stdout).unwrap();
    assert!(line.contains("\"counterexample\":{\"index\":[1,1],\"lhs\":\"2\",\"rhs\":\"1\"}"), "{line}");
    assert_eq!(run(&["check", "no-such-id"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "hexagon"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "pascal", "-n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["seq", "q=-1"]).status.code(), Some(2));
    assert_eq!(run(&["check", "eq4", "--degree", "3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["suite"]).status.code(), Some(0));
}

#[test]
fn seq_tables() {
    let fib = stdout(&["seq", "fibonomial", "-n", "6"]);
    let six = fib.lines().find(|l| l.trim_start().starts_with("6 ")).unwrap();
    assert_eq!(six.split_whitespace().nth(1), Some("8"));
    assert!(stdout(&["seq", "classical", "-n", "4"]).contains(": 1 4 6 4 1\n"));
    assert!(stdout(&["seq", "q=0", "-n", "3"]).contains(": 1 1 1 1\n"));
    let csv = stdout(&["seq", "q", "-n", "2", "-f", "csv"]);
    assert_eq!(csv, "n,n_psi,n_psi!\n0,(0)/(1),(1)/(1)\n1,(1)/(1),(1)/(1)\n2,(1 + q)/(1),(1 + q)/(1)\n");
}

#[test]
fn list_names_every_identity() {
    let text = stdout(&["list"]);
    for id in ["eq4", "eq5", "eq6", "eq8", "eq9", "eq10", "eq11-basic", "normality"] {
        assert!(text.lines().any(|l| l.starts_with(id)), "{id}");
    }
    let json: serde_json::Value = serde_json::from_str(&stdout(&["list", "-f", "json"])).unwrap();
    assert!(json.as_array().unwrap().len() >= 12);
}

#[test]
fn writes_to_out_file() {
    let dir = std::env::temp_dir().join(format!("psi-pascal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.csv");
    let out = run(&["gen", "K", "classical", "-n", "3", "-f", "csv", "-o", path.to_str().unwrap()]);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "0\n1,0\n0,2,0\n");
    std::fs::remove_dir_all(dir).unwrap();
}
