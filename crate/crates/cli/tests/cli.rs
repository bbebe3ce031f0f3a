use std::process::{Command, Output};

use ptwist_cli::{Document, Status, EXIT_FAIL, EXIT_PARSE, EXIT_PASS, EXIT_RUNTIME};

fn ptwist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptwist")).args(args).output().unwrap()
}

fn doc(out: &Output) -> Document {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verma_passes() {
    let out = ptwist(&["verify", "verma", "--degree", "6"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let d = doc(&out);
    assert_eq!(d.command, "verify verma");
    assert!(d.reports.iter().all(|r| r.status == Status::Pass));
    assert_eq!(d.reports[1].degree, Some(6));
    assert_eq!(d.reports[2].degree, None);
}

#[test]
fn wrong_b_fails_at_order_xi_zeta() {
    let out = ptwist(&["verify", "cocycle", "--b", "1", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(EXIT_FAIL));
    let d = doc(&out);
    let sym = &d.reports[0];
    assert_eq!(sym.status, Status::Fail);
    assert_eq!(sym.residual.as_deref(), Some("-1/9*x*z * E33 (x) E33 (x) E12"));
}

#[test]
fn rmatrix_ships_the_matrix() {
    let out = ptwist(&["rmatrix", "--xi", "formal", "--zeta", "formal", "--check", "qybe"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let d = doc(&out);
    let m = d.matrix.unwrap();
    assert_eq!((m.len(), m[0].len()), (9, 9));
    assert_eq!(m[0][0], "1");
    assert!(d.reports.iter().any(|r| r.name == "rmatrix.qybe" && r.status == Status::Pass));
}

#[test]
fn rmatrix_at_rational_point() {
    let out = ptwist(&["rmatrix", "--xi", "1/2", "--zeta", "-3", "--check", "expansion,triangular"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let m = doc(&out).matrix.unwrap();
    assert!(m.iter().flatten().all(|e| !e.contains('x') && !e.contains('z')));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "coproducts", "--degree", "2", "--no-timing"];
    let a = ptwist(&args);
    let b = ptwist(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(doc(&a).reports.iter().all(|r| r.millis == 0));
    let t = ["limits", "--degree", "3", "--no-timing", "--format", "text"];
    assert_eq!(ptwist(&t).stdout, ptwist(&t).stdout);
}

#[test]
fn eval_in_both_routes() {
    let out = ptwist(&["eval", "--rep", "fund", "--expr", "E12*E23 - E13"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    assert!(doc(&out).matrix.unwrap().iter().flatten().all(|e| e == "0"));

    let out = ptwist(&["eval", "--rep", "fund", "--expr", "exp(H13p (x) sigma32(zeta))"]);
    assert_eq!(doc(&out).matrix.unwrap().len(), 9);

    let out = ptwist(&["eval", "--rep", "symbolic", "--expr", "E23*E12", "--degree", "2"]);
    assert_eq!(doc(&out).value.as_deref(), Some("(-1)*E13 + E12*E23"));
}

#[test]
fn parse_errors_have_their_own_code() {
    let out = ptwist(&["eval", "--expr", "E14"]);
    assert_eq!(out.status.code(), Some(EXIT_PARSE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E14"));
    let out = ptwist(&["eval", "--expr", "E12 +"]);
    assert_eq!(out.status.code(), Some(EXIT_PARSE));
    assert_eq!(ptwist(&["verify", "bogus"]).status.code(), Some(EXIT_PARSE));
    assert_eq!(ptwist(&["rmatrix", "--xi", "0.5"]).status.code(), Some(EXIT_PARSE));
}

#[test]
fn runtime_errors() {
    // symbolic exp needs a positive valuation
    let out = ptwist(&["eval", "--rep", "symbolic", "--expr", "exp(E12)"]);
    assert_eq!(out.status.code(), Some(EXIT_RUNTIME));
    let out = ptwist(&["limits", "--degree", "2", "--out", "/nonexistent/dir/report.json"]);
    assert_eq!(out.status.code(), Some(EXIT_RUNTIME));
}

#[test]
fn out_flag_writes_the_file() {
    let path = std::env::temp_dir().join(format!("ptwist-{}.json", std::process::id()));
    let out = ptwist(&["verify", "constraints", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    assert!(out.stdout.is_empty());
    let d: Document = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(d.reports.len(), 5);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn constraints_fail_away_from_two() {
    let out = ptwist(&["verify", "constraints", "--b", "3"]);
    assert_eq!(out.status.code(), Some(EXIT_FAIL));
}

#[test]
fn findings_keep_the_exit_code_honest() {
    let out = ptwist(&["verify", "factorized", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(EXIT_FAIL));
    let d = doc(&out);
    let status = |n: &str| d.reports.iter().find(|r| r.name == n).unwrap().status;
    assert_eq!(status("factorized.first"), Status::Fail);
    assert_eq!(status("factorized.drinfeld_over_P"), Status::Pass);
}

#[test]
fn negative_values_are_accepted() {
    let out = ptwist(&["verify", "constraints", "--b", "-1/2"]);
    assert_eq!(out.status.code(), Some(EXIT_FAIL));
    assert!(doc(&out).reports[0].note.as_deref().unwrap().starts_with("b = -1/2"));
}
