//! `ptwist`: command-line driver for the parabolic-twist verifications.
//!
//! Each subcommand calls one or more checks of the core library and emits
//! a `Document` of reports. The driver itself does no algebra.

pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use parabolic_twist::expr::{eval_symbolic, parse, SymbolicEnv};
use parabolic_twist::hopf::{cocycle_check, counit_check};
use parabolic_twist::liealg::cybe_parabolic_identically;
use parabolic_twist::pbw::ParamPoly;
use parabolic_twist::repmat::{self, eval_expr, MatrixCheck, MatrixEnv, RepMap};
use parabolic_twist::twists::{self, CoproductFormula, Param, TwistKind, TwistSpec};
use parabolic_twist::{AlgebraError, ParseError, Q};

pub use report::{charge, Clock, Document, Report, Status, Verdict};

#[derive(Debug, Parser)]
#[command(name = "ptwist", version, about = "Exact checks for the elementary parabolic twist of sl(3)")]
pub struct Cli {
    /// Truncation degree for symbolic checks; representation checks are exact.
    #[arg(long, global = true, default_value_t = 6)]
    pub degree: u32,
    /// The b parameter of the composite twist, as "p/q".
    #[arg(long, global = true, default_value = "2", allow_hyphen_values = true)]
    pub b: Q,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Report 0 ms for every check, making output byte-identical across runs.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symbolic and representation-level identity checks.
    Verify {
        #[arg(value_enum)]
        target: Target,
    },
    /// The R-matrix in the fundamental representation.
    Rmatrix {
        #[arg(long, default_value = "formal", allow_hyphen_values = true)]
        xi: Param,
        #[arg(long, default_value = "formal", allow_hyphen_values = true)]
        zeta: Param,
        /// Checks to run; the expansion check is the default for formal parameters.
        #[arg(long, value_enum, value_delimiter = ',')]
        check: Vec<RCheck>,
    },
    /// Evaluate an expression symbolically or in the fundamental representation.
    Eval {
        #[arg(long, value_enum, default_value_t = Rep::Fund)]
        rep: Rep,
        #[arg(long)]
        expr: String,
    },
    /// The two limits of the parabolic twist.
    Limits,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Cocycle,
    Counit,
    Verma,
    Coproducts,
    Factorized,
    Constraints,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RCheck {
    Expansion,
    Qybe,
    Triangular,
    Semiclassical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Rep {
    Fund,
    Symbolic,
}

#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Algebra(AlgebraError),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "parse error: {e}"),
            CliError::Algebra(e) => write!(f, "error: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Algebra(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

/// Parses `args`, runs the command, writes the output and returns the
/// process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_PASS };
        }
    };
    let doc = match run(&cli) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("{e}");
            return match e {
                CliError::Parse(_) => EXIT_PARSE,
                _ => EXIT_RUNTIME,
            };
        }
    };
    let text = match cli.format {
        Format::Json => doc.to_json(),
        Format::Text => doc.to_text(),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("{}", CliError::Io(e));
        return EXIT_RUNTIME;
    }
    if doc.failed() {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}

pub fn run(cli: &Cli) -> Result<Document, CliError> {
    let clock = Clock { timing: !cli.no_timing };
    let d = cli.degree;
    let b = &cli.b;
    match &cli.command {
        Command::Verify { target } => {
            let reports = match target {
                Target::Cocycle => verify_cocycle(clock, b, d)?,
                Target::Counit => verify_counit(clock, b, d)?,
                Target::Verma => verify_verma(clock, d)?,
                Target::Coproducts => verify_coproducts(clock, d)?,
                Target::Factorized => verify_factorized(clock, b, d)?,
                Target::Constraints => verify_constraints(clock, b)?,
            };
            let name = format!("verify {}", target.to_possible_value().unwrap().get_name());
            Ok(Document { command: name, reports, ..Document::default() })
        }
        Command::Rmatrix { xi, zeta, check } => rmatrix(clock, b, xi, zeta, check),
        Command::Eval { rep, expr } => eval(clock, *rep, expr, d),
        Command::Limits => Ok(Document { command: "limits".into(), reports: limits(clock, d)?, ..Document::default() }),
    }
}

fn parabolic(b: &Q) -> TwistSpec {
    TwistSpec::new(TwistKind::Parabolic).with_b(b.clone())
}

pub fn verify_cocycle(clock: Clock, b: &Q, d: u32) -> Result<Vec<Report>, AlgebraError> {
    let spec = parabolic(b);
    let (f, t) = clock.shared(|| twists::build::<Q>(&spec, d))?;
    Ok(charge(
        vec![
            clock.run("cocycle.symbolic", Some(d), || Ok(Verdict::symbolic(&cocycle_check(&f)?)))?,
            clock.run("cocycle.representation", None, || Ok(Verdict::matrix(&repmat::cocycle_rep_check(&spec)?)))?,
            clock.run("counit.parabolic", Some(d), || Ok(Verdict::flag(counit_check(&f))))?,
        ],
        t,
    ))
}

pub fn verify_counit(clock: Clock, b: &Q, d: u32) -> Result<Vec<Report>, AlgebraError> {
    TwistKind::ALL
        .iter()
        .map(|&k| {
            clock.run(format!("counit.{k}"), Some(d), || {
                let spec = TwistSpec::new(k).with_b(b.clone());
                let f = twists::build::<Q>(&spec, d)?;
                let finv = twists::build_inverse::<Q>(&spec, d)?;
                Ok(Verdict::flag(counit_check(&f) && counit_check(&finv)))
            })
        })
        .collect()
}

pub fn verify_verma(clock: Clock, d: u32) -> Result<Vec<Report>, AlgebraError> {
    let (outcome, t) = clock.shared(|| twists::verma_check::<Q>(d))?;
    Ok(charge(
        vec![
            clock.run("verma.nested_brackets", None, || Ok(Verdict::flag(outcome.nested_brackets_vanish)))?,
            clock.run("verma.symbolic", Some(d), || Ok(Verdict::symbolic(&outcome.identity)))?,
            clock.run("verma.representation", None, || Ok(Verdict::matrix(&repmat::verma_rep_check::<Q>()?)))?,
        ],
        t,
    ))
}

fn coproduct_rows(
    clock: Clock,
    prefix: &str,
    spec: &TwistSpec,
    table: &[CoproductFormula],
    d: u32,
) -> Result<Vec<Report>, AlgebraError> {
    let (outcomes, t) = clock.shared(|| twists::coproduct_table_check::<Q>(spec, table, d))?;
    let mut out = Vec::new();
    for (row, o) in table.iter().zip(&outcomes) {
        out.push(clock.run(format!("coproduct.{prefix}.{}", row.name), Some(d), || {
            let mut v = Verdict::symbolic(&o.closed_form);
            if !(o.coassociative && o.counit) {
                v.status = Status::Fail;
                v.note = Some(format!("coassociative: {}, counit: {}", o.coassociative, o.counit));
            } else if !o.closed_form.holds && o.definitional {
                v.status = Status::Finding;
            }
            Ok(v)
        })?);
        out.push(clock.run(format!("coproduct.{prefix}.{}.representation", row.name), None, || {
            Ok(Verdict::matrix(&repmat::coproduct_formula_rep_check(spec, row)?))
        })?);
    }
    Ok(charge(out, t))
}

pub fn verify_coproducts(clock: Clock, d: u32) -> Result<Vec<Report>, AlgebraError> {
    let p = TwistSpec::new(TwistKind::PeriphericP);
    let mut out = coproduct_rows(clock, "P", &p, &twists::peripheric_coproducts(), d)?;
    if let Some(r) = out.iter_mut().find(|r| r.name == "coproduct.P.H23p") {
        r.note = Some("printed form lacks the e^{-sigma13} on the first leg; see the corrected row".into());
    }
    out.extend(coproduct_rows(clock, "P", &p, &[twists::peripheric_h23p_corrected()], d)?);
    out.extend(coproduct_rows(
        clock,
        "par",
        &parabolic(&Q::from_integer(2.into())),
        &twists::parabolic_coproducts(),
        d,
    )?);
    Ok(out)
}

pub fn verify_factorized(clock: Clock, b: &Q, d: u32) -> Result<Vec<Report>, AlgebraError> {
    let (f, t1) = clock.shared(|| twists::factorized_drinfeld_check::<Q>(b, d))?;
    let (c, t2) = clock.shared(|| twists::factorization_check::<Q>(b, d))?;
    let mut out = charge(
        vec![
            clock.run("factorized.first", Some(d), || Ok(Verdict::symbolic(&f.first)))?,
            clock.run("factorized.second", Some(d), || Ok(Verdict::symbolic(&f.second)))?,
            clock.run("factorized.drinfeld_over_P", Some(d), || Ok(Verdict::symbolic(&f.drinfeld_over_p)))?,
            clock.run("factorized.group_like", Some(d), || Ok(Verdict::symbolic(&f.group_like)))?,
        ],
        t1,
    );
    out.extend(charge(
        vec![
            clock.run("factorization.dr_times_p", Some(d), || Ok(Verdict::symbolic(&c.dr_times_p)))?,
            clock.run("factorization.four_factors", Some(d), || Ok(Verdict::symbolic(&c.four_factors)))?,
            clock.run("factorization.d_times_ej", Some(d), || Ok(Verdict::symbolic(&c.d_times_ej)))?,
        ],
        t2,
    ));
    Ok(out)
}

pub fn verify_constraints(clock: Clock, b: &Q) -> Result<Vec<Report>, AlgebraError> {
    let c = twists::constraint_check(b);
    let note = format!("b = {}, H1 = {}, beta = {}", c.b, c.h1, c.beta);
    let rows = [
        ("constraints.h1_plus_b_h2", c.h1_plus_b_h2),
        ("constraints.h2_is_h13_perp", c.h2_is_h13_perp),
        ("constraints.beta_plus_b", c.beta_plus_b),
        ("constraints.h1_acts_on_e13", c.h1_acts_on_e13),
        ("constraints.b_is_two", c.b_is_two),
    ];
    let mut out: Vec<Report> =
        rows.iter().map(|&(name, ok)| clock.run(name, None, || Ok(Verdict::flag(ok)))).collect::<Result<_, _>>()?;
    out[0].note = Some(note);
    Ok(out)
}

pub fn limits(clock: Clock, d: u32) -> Result<Vec<Report>, AlgebraError> {
    let (l, t) = clock.shared(|| twists::limits_check::<Q>(d))?;
    Ok(charge(
        vec![
            clock.run("limits.zeta_to_zero", Some(d), || Ok(Verdict::symbolic(&l.zeta_to_zero)))?,
            clock.run("limits.xi_to_zero", Some(d), || Ok(Verdict::symbolic(&l.xi_to_zero)))?,
        ],
        t,
    ))
}

fn param_poly(p: &Param, formal: ParamPoly<Q>) -> ParamPoly<Q> {
    match p {
        Param::Formal => formal,
        Param::Value(q) => ParamPoly::constant(q.clone(), None),
    }
}

pub fn rmatrix(clock: Clock, b: &Q, xi: &Param, zeta: &Param, checks: &[RCheck]) -> Result<Document, CliError> {
    let spec = parabolic(b).with_params(xi.clone(), zeta.clone());
    let mut reports = Vec::new();
    let mut r = None;
    reports.push(clock.run("rmatrix.build", None, || {
        r = Some(repmat::r_matrix::<Q>(&spec)?);
        Ok(Verdict::flag(true))
    })?);
    let r = r.expect("built above");
    let mut checks = checks.to_vec();
    if checks.is_empty() && *xi == Param::Formal && *zeta == Param::Formal {
        checks.push(RCheck::Expansion);
    }
    checks.dedup();
    for c in checks {
        match c {
            RCheck::Expansion => reports.push(clock.run("rmatrix.expansion", None, || {
                let printed = repmat::r_expansion_matrix::<Q>()
                    .compose_params(&param_poly(xi, ParamPoly::xi(None)), &param_poly(zeta, ParamPoly::zeta(None)));
                Ok(Verdict::matrix(&MatrixCheck::from_sides(&r, &printed)?))
            })?),
            RCheck::Qybe => {
                reports.push(clock.run("rmatrix.qybe", None, || Ok(Verdict::matrix(&repmat::qybe_check(&r)?)))?)
            }
            RCheck::Triangular => reports.push(
                clock.run("rmatrix.triangular", None, || Ok(Verdict::matrix(&repmat::triangularity_check(&r)?)))?,
            ),
            RCheck::Semiclassical => {
                reports.push(
                    clock.run("semiclassical.cybe", None, || Ok(Verdict::flag(cybe_parabolic_identically::<Q>())))?,
                );
                reports.push(clock.run("semiclassical.first_order", None, || {
                    // both sides are affine in eta, so two points decide it
                    let mut ok = true;
                    for eta in [0, 1] {
                        let s = repmat::semiclassical_check::<Q>(&Q::from_integer(eta.into()))?;
                        ok &= s.order_zero_is_identity && s.matches;
                    }
                    Ok(Verdict::flag(ok)
                        .with_note("first-order term of R(t, eta t) equals -rho(r(eta)) for R = F21 F^-1"))
                })?);
            }
        }
    }
    Ok(Document { command: "rmatrix".into(), reports, matrix: Some(r.to_strings()), value: None })
}

pub fn eval(clock: Clock, rep: Rep, text: &str, d: u32) -> Result<Document, CliError> {
    let expr = parse(text)?;
    let mut doc = Document { command: "eval".into(), ..Document::default() };
    match rep {
        Rep::Fund => {
            let fund = RepMap::<Q>::fundamental();
            let reps = vec![&fund; expr.rank().max(1)];
            let m = eval_expr(&expr, &reps, &MatrixEnv::formal())?;
            doc.reports.push(clock.run("eval.fund", None, || Ok(Verdict::flag(true)))?);
            doc.matrix = Some(m.to_strings());
        }
        Rep::Symbolic => {
            let v = eval_symbolic::<Q>(&expr, &SymbolicEnv::formal(d))?;
            doc.reports.push(clock.run("eval.symbolic", Some(d), || Ok(Verdict::flag(true)))?);
            doc.value = Some(v.to_string());
        }
    }
    Ok(doc)
}
