use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use chainbound::division::reduce;
use chainbound::ring::{parse_polynomial, parse_polynomials, MonomialOrder};
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chainbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bound_prints_value() {
    let out = run(&["bound", "--m", "1", "--f", "const:5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "6\n");

    let out = run(&["bound", "--m", "2", "--f", "const:1"]);
    assert_eq!(stdout(&out), "25\n");

    let out = run(&["--format", "json", "bound", "--m", "2", "--f", "const:1"]);
    assert_eq!(json(&out)["value"], "25");
}

#[test]
fn bound_out_of_budget_exits_3() {
    let out = run(&["bound", "--m", "3", "--f", "const:2", "--max-steps", "1000"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("budget exhausted"));
    assert!(stderr(&out).contains("B[m=3,k=0]"));

    let out = run(&["--format", "json", "bound", "--m", "3", "--f", "const:2", "--max-steps", "1000"]);
    assert_eq!(code(&out), 3);
    let doc = json(&out);
    assert_eq!(doc["error"]["kind"], "budget");
    assert_eq!(doc["error"]["details"]["resource"], "steps");
    assert_eq!(doc["error"]["details"]["limit"], 1000);
}

#[test]
fn running_max_flag_accepts_decreasing_tables() {
    assert_eq!(code(&run(&["bound", "--m", "1", "--f", "table:3,1"])), 2);
    let out = run(&["bound", "--m", "1", "--f", "table:3,1", "--running-max"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "4\n");
}

#[test]
fn gamma_values() {
    assert_eq!(stdout(&run(&["gamma", "--m", "1", "--d", "1", "--i", "0"])), "26\n");
    assert_eq!(stdout(&run(&["gamma", "--m", "1", "--d", "2", "--i", "0"])), "1456\n");
    assert_eq!(code(&run(&["gamma", "--m", "2", "--d", "1"])), 3);
}

#[test]
fn antichain_check_outputs() {
    let out = run(&["antichain", "check", "--seq", "(0,0);(1,0)", "--f", "const:1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("not an antichain\n"));

    let out = run(&["antichain", "check", "--seq", "(1,0);(0,1);(0,0)", "--f", "const:1", "--beta", "1"]);
    assert_eq!(stdout(&out), "antichain\nf-bounded\n(f,beta)-bounded\n");

    let out = run(&["antichain", "check", "--seq", "(2,0)", "--f", "const:1"]);
    assert_eq!(stdout(&out), "antichain\nnot f-bounded\n");

    assert_eq!(code(&run(&["antichain", "check", "--seq", "(1,0);(1)"])), 1);
    assert_eq!(code(&run(&["antichain", "check", "--seq", "(1,x)"])), 2);
    assert_eq!(code(&run(&["antichain", "check", "--seq", "(1,0)", "--beta", "1"])), 2);
}

#[test]
fn antichain_search_outputs() {
    let out = run(&["antichain", "search", "--m", "2", "--f", "const:1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("length 3\nwitness (1,0);(0,1);(0,0)\n"));

    let out = run(&["antichain", "search", "--m", "1", "--f", "const:4"]);
    assert!(stdout(&out).starts_with("length 5\nwitness (4);(3);(2);(1);(0)\n"));

    let out = run(&["antichain", "search", "--m", "2", "--f", "geom:1", "--budget", "2000"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("best antichain so far"));

    assert_eq!(code(&run(&["antichain", "search", "--m", "2", "--f", "const:0"])), 2);
}

#[test]
fn from_chain_file() {
    let dir = TempDir::new().unwrap();
    let chain = write(&dir, "chain", "# three stages\nx1^2\n\nx1^2\nx1*x2\n\nx1^2\nx1*x2 # comment\nx2^3\n");
    let out = run(&["antichain", "from-chain", "--order", "deglex", "--chain", path(&chain)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("witness (2,0);(1,1);(0,3)\n"));

    let flat = write(&dir, "flat", "x1\n\n2*x1\n");
    let out = run(&["antichain", "from-chain", "--chain", path(&flat)]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("stage 1"));

    let out = run(&["antichain", "from-chain", "--order", "lex", "--chain", path(&chain)]);
    assert_eq!(code(&out), 1);

    let out = run(&["antichain", "from-chain", "--chain", "/nonexistent/chain"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn divide_round_trips() {
    let f = "x1^2*x2 + x1*x2^2 + x2^2";
    let by = "x1*x2 - 1; x2^2 - 1";
    let out = run(&["divide", "--order", "lex", "--f", f, "--by", by]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "q1 = x1 + x2\nq2 = 1\nremainder = x1 + x2 + 1\n");

    let doc = json(&run(&["--format", "json", "divide", "--order", "lex", "--f", f, "--by", by]));
    let ps = parse_polynomials(&[f, "x1*x2 - 1", "x2^2 - 1"], 2).unwrap();
    let expected = reduce(&ps[0], &ps[1..], MonomialOrder::Lex).unwrap();
    let printed: Vec<_> = doc["quotients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|q| parse_polynomial(q.as_str().unwrap(), 2).unwrap())
        .collect();
    assert_eq!(printed, expected.quotients);
    assert_eq!(parse_polynomial(doc["remainder"].as_str().unwrap(), 2).unwrap(), expected.remainder);

    assert_eq!(code(&run(&["divide", "--f", "x1", "--by", "0"])), 1);
    assert_eq!(code(&run(&["divide", "--f", "x0", "--by", "x1"])), 2);
}

#[test]
fn groebner_trace_file_and_degree_check() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "input", "x1^2 - x2\nx1*x2 - 1\n");
    let trace = dir.path().join("trace.json");
    let out = run(&["groebner", "--input", path(&input), "--trace", path(&trace), "--check-degrees", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("degree bounds with d = 2: pass"));

    let doc: Value = serde_json::from_str(&fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(doc["order"], "deglex");
    let r = doc["r"].as_u64().unwrap();
    assert_eq!(doc["stages"].as_array().unwrap().len() as u64, r + 1);
    for stage in doc["stages"].as_array().unwrap() {
        for added in stage["added"].as_array().unwrap() {
            parse_polynomial(added["poly"].as_str().unwrap(), 2).unwrap();
            for c in added["cofactors"].as_array().unwrap() {
                parse_polynomial(c.as_str().unwrap(), 2).unwrap();
            }
        }
    }

    assert_eq!(code(&run(&["groebner", "--input", path(&input), "--check-degrees", "1"])), 1);
    assert_eq!(code(&run(&["groebner", "--order", "lex", "--input", path(&input), "--check-degrees", "2"])), 1);
    assert_eq!(code(&run(&["groebner", "--order", "lex", "--input", path(&input)])), 0);
}

#[test]
fn member_certificates() {
    let dir = TempDir::new().unwrap();
    let ideal = write(&dir, "ideal", "# generators\nx1^2 - x2\nx1*x2 - 1\n");
    let out = run(&["member", "--g", "x2^3 - 1", "--ideal", path(&ideal), "--verify-bound", "2,2", "--oracle-cap", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("member\n"));
    assert!(text.contains("bound check against the trace bound: pass"));
    assert!(text.contains("agrees"));

    let doc = json(&run(&["--format", "json", "member", "--g", "x2^3 - 1", "--ideal", path(&ideal)]));
    assert_eq!(doc["member"], true);
    let cofactors: Vec<_> = doc["cofactors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| parse_polynomial(c.as_str().unwrap(), 2).unwrap())
        .collect();
    let generators = parse_polynomials(&["x1^2 - x2", "x1*x2 - 1"], 2).unwrap();
    let mut sum = parse_polynomial("0", 2).unwrap();
    for (h, f) in cofactors.iter().zip(&generators) {
        sum = sum.add(&h.mul(f).unwrap()).unwrap();
    }
    assert_eq!(sum, parse_polynomial("x2^3 - 1", 2).unwrap());

    let out = run(&["member", "--g", "x2", "--ideal", path(&ideal), "--verify-bound", "2,2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("not a member\n"));

    let one = write(&dir, "one", "x1 + 1\n");
    let out = run(&["member", "--g", "x1^2 - 1", "--ideal", path(&one), "--verify-bound", "1,1"]);
    assert!(stdout(&out).contains("gamma(1, 1, deg g) = 28"));
    assert!(stdout(&out).contains("bound check against gamma: pass"));

    assert_eq!(code(&run(&["member", "--order", "lex", "--g", "x1", "--ideal", path(&ideal)])), 1);
    assert_eq!(code(&run(&["member", "--g", "x1", "--ideal", path(&ideal), "--verify-bound", "2"])), 2);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "input", "x1^2 + x2*x3 - 1\nx1*x2 - x3\nx3^2 - x1\n");
    for args in [
        vec!["--format", "json", "groebner", "--input", path(&input)],
        vec!["groebner", "--input", path(&input)],
        vec!["--format", "json", "member", "--g", "x1^3 - x3", "--ideal", path(&input)],
        vec!["antichain", "search", "--m", "2", "--f", "table:1,2,2"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(code(&a), 0, "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn printed_basis_round_trips() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "input", "1/2*x1^2 - x2\n-3*x1*x2 + 2/3\n");
    let out = run(&["groebner", "--input", path(&input)]);
    let text = stdout(&out);
    let basis: Vec<&str> = text.split("basis:\n").nth(1).unwrap().lines().map(str::trim).collect();
    assert!(!basis.is_empty());
    for line in basis {
        let p = parse_polynomial(line, 2).unwrap();
        assert_eq!(p.display(MonomialOrder::DegLex).to_string(), line);
    }
}

#[test]
fn help_and_version() {
    let out = run(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("antichain"));
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["member", "--help"])), 0);
    assert_eq!(code(&run(&["no-such-command"])), 2);
}
