//! One line per acceptance criterion. Runs without the libtest harness so
//! the lines always reach the output.
//!
//! Two criteria contain a statement that the computation contradicts; they
//! print FAIL, and the target only errors out if an outcome differs from
//! the recorded one.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use parabolic_twist::hopf::{cocycle_check, counit_check};
use parabolic_twist::liealg::cybe_parabolic_identically;
use parabolic_twist::pbw::{straighten, PExp, ParamPoly};
use parabolic_twist::repmat::verma_rep_check;
use parabolic_twist::repmat::{
    cocycle_rep_check, coproduct_formula_rep_check, evaluate, semiclassical_check, tensor_coefficient, PolyMatrix,
    RepMap,
};
use parabolic_twist::twists::{
    build, coproduct_table_check, limits_check, parabolic_coproducts, peripheric_coproducts, peripheric_h23p_corrected,
    verma_check, TwistKind, TwistSpec,
};
use parabolic_twist::{UElem, Q};
use proptest::test_runner::{Config, TestRunner};
use ptwist_cli::{Document, Status};

/// Every comparison is exact.
const TOLERANCE: i64 = 0;
const R_MATRIX_LIMIT: Duration = Duration::from_secs(10);
const QYBE_LIMIT: Duration = Duration::from_secs(60);
const COCYCLE_DEGREE: u32 = 4;
const COCYCLE_TARGET_DEGREE: u32 = 6;
const COCYCLE_TARGET_LIMIT: Duration = Duration::from_secs(600);
const VERMA_DEGREE: u32 = 6;
const COPRODUCT_DEGREE: u32 = 4;
const PROPERTY_LIMIT: Duration = Duration::from_secs(300);
const CONFLUENCE_CASES: u32 = 1000;
const ORACLE_CASES: u32 = 500;
const EXP_LOG_CASES: u32 = 200;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

struct Ledger {
    lines: Vec<(String, bool, bool)>,
}

impl Ledger {
    /// Records a line; `expected` is the outcome the repository documents.
    fn line(&mut self, label: &str, ok: bool, expected: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("{tag}  {label}: {detail}");
        self.lines.push((label.to_string(), ok, expected));
    }
}

fn ptwist(args: &[&str]) -> (Document, i32, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_ptwist")).args(args).arg("--no-timing").output().expect("binary runs");
    let took = start.elapsed();
    let doc: Document = serde_json::from_slice(&out.stdout).expect("json report");
    (doc, out.status.code().unwrap_or(-1), took)
}

fn status_of(doc: &Document, name: &str) -> Status {
    doc.reports.iter().find(|r| r.name == name).map(|r| r.status).unwrap_or(Status::Fail)
}

fn criterion_1(l: &mut Ledger) {
    let (doc, code, took) = ptwist(&["rmatrix", "--xi", "formal", "--zeta", "formal"]);
    let r = PolyMatrix::<Q>::from_strings(doc.matrix.as_ref().unwrap()).unwrap();
    let x = PExp::new;
    let pinned = [
        (x(2, 0), (1, 3), (1, 3), q(2, 9)),
        (x(0, 2), (3, 2), (3, 2), q(2, 9)),
        (x(2, 2), (1, 2), (1, 2), q(-2, 81)),
        (x(1, 2), (1, 2), (3, 2), q(2, 27)),
        (x(1, 2), (3, 2), (1, 2), q(-2, 27)),
        (x(2, 1), (1, 2), (1, 3), q(1, 27)),
        (x(2, 1), (1, 3), (1, 2), q(-1, 27)),
    ];
    let coefficients = pinned.iter().all(|(e, a, b, want)| {
        let diff = tensor_coefficient(&r, *e, *a, *b) - want;
        diff == Q::from_integer(TOLERANCE.into())
    });
    let printed = [x(0, 0), x(1, 0), x(2, 0), x(0, 1), x(0, 2), x(1, 1), x(2, 2), x(1, 2), x(2, 1)];
    let no_extra = r.exponents().iter().all(|e| printed.contains(e));
    let full = status_of(&doc, "rmatrix.expansion") == Status::Pass;
    let ok = code == 0 && coefficients && no_extra && full && took <= R_MATRIX_LIMIT;
    l.line(
        "1 R-matrix reproduction",
        ok,
        true,
        format!("pinned coefficients {coefficients}, full expansion {full}, no unprinted monomials {no_extra}, {took:.2?} (limit {R_MATRIX_LIMIT:?})"),
    );
}

fn criterion_2(l: &mut Ledger) {
    let (doc, code, took) = ptwist(&["rmatrix", "--check", "qybe,triangular"]);
    let qybe = status_of(&doc, "rmatrix.qybe") == Status::Pass;
    let tri = status_of(&doc, "rmatrix.triangular") == Status::Pass;
    let ok = code == 0 && qybe && tri && took <= QYBE_LIMIT;
    l.line(
        "2 QYBE and triangularity",
        ok,
        true,
        format!("qybe {qybe}, R21 R = 1 {tri}, {took:.2?} (limit {QYBE_LIMIT:?})"),
    );
}

fn criterion_3(l: &mut Ledger) {
    let spec = TwistSpec::new(TwistKind::Parabolic);
    let f = build::<Q>(&spec, COCYCLE_DEGREE).unwrap();
    let low = cocycle_check(&f).unwrap().holds;
    let start = Instant::now();
    let f6 = build::<Q>(&spec, COCYCLE_TARGET_DEGREE).unwrap();
    let high = cocycle_check(&f6).unwrap().holds;
    let took = start.elapsed();
    let rep = cocycle_rep_check::<Q>(&spec).unwrap().holds;
    let counit = counit_check(&f6);
    let ok = low && high && took <= COCYCLE_TARGET_LIMIT && rep && counit;
    l.line(
        "3 cocycle and counit",
        ok,
        true,
        format!("D={COCYCLE_DEGREE} {low}, D={COCYCLE_TARGET_DEGREE} {high} in {took:.2?}, representation {rep}, counit {counit}"),
    );
}

fn criterion_4(l: &mut Ledger) {
    let sym = verma_check::<Q>(VERMA_DEGREE).unwrap().holds();
    let rep = verma_rep_check::<Q>().unwrap().holds;
    l.line("4 Verma identity", sym && rep, true, format!("D={VERMA_DEGREE} {sym}, fundamental representation {rep}"));
}

fn criterion_5(l: &mut Ledger) {
    let p = TwistSpec::new(TwistKind::PeriphericP);
    let table = peripheric_coproducts();
    let outcomes = coproduct_table_check::<Q>(&p, &table, COPRODUCT_DEGREE).unwrap();
    let mut failing = Vec::new();
    for (row, o) in table.iter().zip(&outcomes) {
        let rep = coproduct_formula_rep_check::<Q>(&p, row).unwrap().holds;
        if !(o.closed_form.holds && o.coassociative && o.counit && rep) {
            failing.push(row.name);
        }
    }
    let fixed = peripheric_h23p_corrected();
    let fixed_ok =
        coproduct_table_check::<Q>(&p, std::slice::from_ref(&fixed), COPRODUCT_DEGREE).unwrap()[0].closed_form.holds
            && coproduct_formula_rep_check::<Q>(&p, &fixed).unwrap().holds;
    l.line(
        "5a Delta_P table as printed",
        failing.is_empty(),
        false,
        format!(
            "mismatching entries {failing:?} at D={COPRODUCT_DEGREE}; H23p (x) 1 should read H23p (x) e^(-sigma13)"
        ),
    );
    l.line(
        "5a' Delta_P table with the corrected H23p entry",
        fixed_ok && failing == ["H23p"],
        true,
        "other five entries and the corrected entry match, symbolically and in the fundamental representation".into(),
    );

    let par = TwistSpec::new(TwistKind::Parabolic);
    let table = parabolic_coproducts();
    let outcomes = coproduct_table_check::<Q>(&par, &table, COPRODUCT_DEGREE).unwrap();
    let check = |definitional: bool| {
        table.iter().zip(&outcomes).filter(|(r, _)| r.definitional == definitional).all(|(r, o)| {
            o.closed_form.holds
                && o.coassociative
                && o.counit
                && coproduct_formula_rep_check::<Q>(&par, r).unwrap().holds
        })
    };
    let closed = check(false);
    let definitional = check(true);
    l.line(
        "5b Delta_par H13p, E12, E13, E32",
        closed,
        true,
        format!("closed forms match at D={COPRODUCT_DEGREE} and exactly in the representation"),
    );
    l.line(
        "5c Delta_par E23, H23p (definitional)",
        definitional,
        true,
        "F Delta F^-1 agrees with the printed closed forms; no mismatch to report".into(),
    );
}

fn criterion_6(l: &mut Ledger) {
    let spec = |b: i64| TwistSpec::new(TwistKind::Parabolic).with_b(q(b, 1));
    let two = cocycle_check(&build::<Q>(&spec(2), 3).unwrap()).unwrap().holds;
    let mut degrees = Vec::new();
    for b in [0, 1, 3] {
        degrees.push(cocycle_check(&build::<Q>(&spec(b), 3).unwrap()).unwrap().failure_degree());
    }
    let others = degrees.iter().all(|d| matches!(d, Some(d) if *d <= 2));
    l.line("6 b-uniqueness", two && others, true, format!("b=2 {two}; first residual degree for b=0,1,3: {degrees:?}"));
}

fn criterion_7(l: &mut Ledger) {
    let lim = limits_check::<Q>(6).unwrap();
    let ok = lim.zeta_to_zero.holds && lim.xi_to_zero.holds;
    l.line(
        "7 limits",
        ok,
        true,
        format!("zeta -> 0 {}, xi -> 0 {} at D=6", lim.zeta_to_zero.holds, lim.xi_to_zero.holds),
    );
}

fn criterion_8(l: &mut Ledger) {
    let cybe = cybe_parabolic_identically::<Q>();
    let mut plus = true;
    let mut minus = true;
    for eta in [q(0, 1), q(1, 1)] {
        let s = semiclassical_check(&eta).unwrap();
        plus &= s.order_zero_is_identity && s.first_order == s.classical;
        minus &= s.order_zero_is_identity && s.matches;
    }
    l.line("8a CYBE for r(eta)", cybe, true, "[[r, r]] = 0 as a polynomial in eta".into());
    l.line(
        "8b first-order term equals rho(r(eta))",
        plus,
        false,
        "with R = F21 F^-1 the first-order term is -rho(r(eta)), the sign carried by the printed expansion".into(),
    );
    l.line(
        "8b' first-order term equals -rho(r(eta))",
        minus,
        true,
        "both sides affine in eta; checked at eta = 0, 1".into(),
    );
}

fn criterion_9(l: &mut Ledger) {
    let config = |cases| Config { cases, failure_persistence: None, ..Config::default() };
    let start = Instant::now();
    let fund = RepMap::<Q>::fundamental();
    let one = ParamPoly::one(None);

    let confluence = TestRunner::new(config(CONFLUENCE_CASES))
        .run(&(common::word(6), 0usize..7), |(w, k)| {
            let direct = straighten(&w, &one);
            let k = k.min(w.len());
            let joined = straighten(&w[..k], &one).mul(&straighten(&w[k..], &one)).unwrap();
            proptest::prop_assert_eq!(&direct, &common::product(&w, None));
            proptest::prop_assert_eq!(&direct, &joined);
            Ok(())
        })
        .is_ok();

    let oracle = TestRunner::new(config(ORACLE_CASES))
        .run(&(common::element(3, 3, 0, None), common::element(3, 3, 0, None)), |(x, y)| {
            let xy = x.mul(&y).unwrap();
            proptest::prop_assert_eq!(evaluate(&fund, &xy), evaluate(&fund, &x).mul(&evaluate(&fund, &y)).unwrap());
            Ok(())
        })
        .is_ok();

    let exp_log = TestRunner::new(config(EXP_LOG_CASES))
        .run(&common::element(3, 2, 1, Some(5)), |x| {
            proptest::prop_assert_eq!(&x.exp_series().unwrap().log_series().unwrap(), &x);
            let one_plus = UElem::one(Some(5)).add(&x);
            proptest::prop_assert_eq!(one_plus.log_series().unwrap().exp_series().unwrap(), one_plus);
            Ok(())
        })
        .is_ok();

    let took = start.elapsed();
    let ok = confluence && oracle && exp_log && took <= PROPERTY_LIMIT;
    l.line(
        "9 property suites",
        ok,
        true,
        format!(
            "confluence {confluence} ({CONFLUENCE_CASES} words), oracle {oracle} ({ORACLE_CASES} pairs), exp/log {exp_log} ({EXP_LOG_CASES} elements), {took:.2?} (limit {PROPERTY_LIMIT:?})"
        ),
    );
}

fn main() {
    let mut l = Ledger { lines: Vec::new() };
    criterion_1(&mut l);
    criterion_2(&mut l);
    criterion_3(&mut l);
    criterion_4(&mut l);
    criterion_5(&mut l);
    criterion_6(&mut l);
    criterion_7(&mut l);
    criterion_8(&mut l);
    criterion_9(&mut l);

    let failed: Vec<&str> = l.lines.iter().filter(|(_, ok, _)| !ok).map(|(n, _, _)| n.as_str()).collect();
    let unexpected: Vec<&str> = l.lines.iter().filter(|(_, ok, exp)| ok != exp).map(|(n, _, _)| n.as_str()).collect();
    println!("{} lines, {} FAIL: {failed:?}", l.lines.len(), failed.len());
    if !unexpected.is_empty() {
        println!("outcomes differing from the recorded ones: {unexpected:?}");
        std::process::exit(1);
    }
}
