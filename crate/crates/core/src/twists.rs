//! Twisting elements of the parabolic chain and the checks on their free
//! parameters.
//!
//! Every twist is stored as the list of arguments of its exponential factors,
//! left to right. The same expressions feed the truncated symbolic route and
//! the matrix route in [`crate::repmat`], and the inverse is the reversed
//! product of `exp(-arg)`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::expr::{eval_symbolic, parse, Expr, SymbolicEnv};
use crate::hopf::{coproduct_left, coproduct_right, embed, twist_coproduct_with, CheckOutcome, Legs, TensorElem2};
use crate::liealg::{bracket, GenId, LieElem};
use crate::pbw::ParamPoly;
use crate::scalar::{format_rational, parse_rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwistKind {
    /// `exp(H13⊥⊗σ32(ζ))`, the jordanian twist of `{H13⊥, E32}`.
    JordanianJ,
    /// `Φ_E = exp(-ξ E23⊗E12 e^{-σ13(ξ)})`.
    ExtensionE,
    /// `Φ_J = exp(H23⊥⊗σ13(ξ))`.
    PhiJ,
    /// `F_P = Φ_E Φ_J`.
    PeriphericP,
    /// `F_R = exp(-b H13⊥⊗σ13(ξ))`.
    RotationR,
    /// `F_D = exp(H13⊥⊗(b σ13(ξ) + σ32(ζ)))`.
    DeformedD,
    DR,
    /// Extended jordanian factor with `β = 1 - b`.
    EJ,
    /// `F_D F_EJ`; the elementary parabolic twist at `b = 2`.
    Parabolic,
}

impl TwistKind {
    pub const ALL: [TwistKind; 9] = [
        TwistKind::JordanianJ,
        TwistKind::ExtensionE,
        TwistKind::PhiJ,
        TwistKind::PeriphericP,
        TwistKind::RotationR,
        TwistKind::DeformedD,
        TwistKind::DR,
        TwistKind::EJ,
        TwistKind::Parabolic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TwistKind::JordanianJ => "jordanian_J",
            TwistKind::ExtensionE => "extension_E",
            TwistKind::PhiJ => "phi_J",
            TwistKind::PeriphericP => "peripheric_P",
            TwistKind::RotationR => "rotation_R",
            TwistKind::DeformedD => "deformed_D",
            TwistKind::DR => "DR",
            TwistKind::EJ => "EJ",
            TwistKind::Parabolic => "parabolic",
        }
    }

    /// Whether the factors depend on `b`.
    pub fn uses_b(self) -> bool {
        matches!(
            self,
            TwistKind::RotationR | TwistKind::DeformedD | TwistKind::DR | TwistKind::EJ | TwistKind::Parabolic
        )
    }
}

impl fmt::Display for TwistKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TwistKind {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        TwistKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| AlgebraError::UnknownKind(s.to_string()))
    }
}

/// A deformation parameter: formal, or fixed to a rational value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Formal,
    Value(BigRational),
}

impl Param {
    pub fn zero() -> Self {
        Param::Value(BigRational::zero())
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Formal => f.write_str("formal"),
            Param::Value(q) => f.write_str(&format_rational(q)),
        }
    }
}

impl FromStr for Param {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "formal" {
            return Ok(Param::Formal);
        }
        parse_rational(s)
            .map(Param::Value)
            .ok_or_else(|| AlgebraError::InvalidParameter(format!("`{s}` is neither `formal` nor a rational")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct TwistSpec {
    pub kind: TwistKind,
    pub xi: Param,
    pub zeta: Param,
    pub b: BigRational,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    kind: String,
    #[serde(default = "formal")]
    xi: String,
    #[serde(default = "formal")]
    zeta: String,
    #[serde(default = "two")]
    b: String,
}

fn formal() -> String {
    "formal".into()
}

fn two() -> String {
    "2".into()
}

impl TryFrom<RawSpec> for TwistSpec {
    type Error = AlgebraError;

    fn try_from(raw: RawSpec) -> Result<Self> {
        let b = parse_rational(&raw.b)
            .ok_or_else(|| AlgebraError::InvalidParameter(format!("b = `{}` is not a rational", raw.b)))?;
        Ok(TwistSpec { kind: raw.kind.parse()?, xi: raw.xi.parse()?, zeta: raw.zeta.parse()?, b })
    }
}

impl From<TwistSpec> for RawSpec {
    fn from(s: TwistSpec) -> Self {
        RawSpec { kind: s.kind.name().into(), xi: s.xi.to_string(), zeta: s.zeta.to_string(), b: format_rational(&s.b) }
    }
}

impl TwistSpec {
    /// Formal parameters and `b = 2`.
    pub fn new(kind: TwistKind) -> Self {
        TwistSpec { kind, xi: Param::Formal, zeta: Param::Formal, b: BigRational::from_integer(2.into()) }
    }

    pub fn with_b(mut self, b: BigRational) -> Self {
        self.b = b;
        self
    }

    pub fn with_params(mut self, xi: Param, zeta: Param) -> Self {
        self.xi = xi;
        self.zeta = zeta;
        self
    }
}

/// `q*x` written with the sign pulled out and unit coefficients dropped.
fn times(q: &BigRational, x: &str) -> String {
    let mag = format_rational(&q.abs());
    let sign = if q < &BigRational::zero() { "-" } else { "" };
    if q.abs().is_one() {
        format!("{sign}{x}")
    } else {
        format!("{sign}{mag}*{x}")
    }
}

/// `x + q*y` with the sign of `q` folded into the operator.
fn plus_times(x: &str, q: &BigRational, y: &str) -> String {
    if q.is_zero() {
        return x.to_string();
    }
    let t = times(&q.abs(), y);
    if q < &BigRational::zero() {
        format!("{x} - {t}")
    } else {
        format!("{x} + {t}")
    }
}

fn factor_texts(kind: TwistKind, b: &BigRational) -> Vec<String> {
    let s13 = "sigma13(xi)";
    let jordanian = "H13p (x) sigma32(zeta)".to_string();
    let ext = "-xi*E23 (x) E12*exp(-sigma13(xi))".to_string();
    let phi_j = format!("H23p (x) {s13}");
    let rot = format!("{} (x) {s13}", times(&-b, "H13p"));
    let def = if b.is_zero() {
        "H13p (x) sigma32(zeta)".to_string()
    } else {
        format!("H13p (x) ({} + sigma32(zeta))", times(b, s13))
    };
    let ext_b = if (b - BigRational::one()).is_zero() {
        "-xi*E23 (x) E12".to_string()
    } else {
        format!("-xi*E23 (x) E12*exp({})", times(&(b - BigRational::one()), s13))
    };
    let h1 = plus_times("H23p", &-b, "H13p");
    let ej = vec![ext_b, if b.is_zero() { format!("H23p (x) {s13}") } else { format!("({h1}) (x) {s13}") }];
    match kind {
        TwistKind::JordanianJ => vec![jordanian],
        TwistKind::ExtensionE => vec![ext],
        TwistKind::PhiJ => vec![phi_j],
        TwistKind::PeriphericP => vec![ext, phi_j],
        TwistKind::RotationR => vec![rot],
        TwistKind::DeformedD => vec![def],
        TwistKind::DR => vec![def, rot],
        TwistKind::EJ => ej,
        TwistKind::Parabolic => std::iter::once(def).chain(ej).collect(),
    }
}

/// A twist as an ordered product of exponentials.
#[derive(Clone, Debug, PartialEq)]
pub struct Twist {
    pub spec: TwistSpec,
    /// Arguments of the exponential factors, left to right.
    pub factors: Vec<Expr>,
}

impl Twist {
    pub fn new(spec: TwistSpec) -> Self {
        let factors =
            factor_texts(spec.kind, &spec.b).iter().map(|t| parse(t).expect("built-in twist factor parses")).collect();
        Twist { spec, factors }
    }

    /// `exp(a₁) exp(a₂) ⋯`.
    pub fn expr(&self) -> Expr {
        product(self.factors.iter().map(|a| a.clone().exp()))
    }

    /// `⋯ exp(-a₂) exp(-a₁)`.
    pub fn inverse_expr(&self) -> Expr {
        product(self.factors.iter().rev().map(|a| a.clone().neg().exp()))
    }
}

fn product(mut it: impl Iterator<Item = Expr>) -> Expr {
    let first = it.next().unwrap_or_else(|| Expr::int(1));
    it.fold(first, |acc, e| acc.mul(e))
}

/// Substitutes fixed parameter values after the formal expansion.
fn specialize<S: Scalar>(x: TensorElem2<S>, spec: &TwistSpec) -> TensorElem2<S> {
    let trunc = x.trunc();
    let pick = |p: &Param, formal: ParamPoly<S>| match p {
        Param::Formal => formal,
        Param::Value(q) => ParamPoly::constant(S::from_rational(q), trunc),
    };
    if spec.xi == Param::Formal && spec.zeta == Param::Formal {
        return x;
    }
    x.compose_params(&pick(&spec.xi, ParamPoly::xi(trunc)), &pick(&spec.zeta, ParamPoly::zeta(trunc)))
}

fn eval_factors<S: Scalar>(factors: impl Iterator<Item = Expr>, degree: u32) -> Result<TensorElem2<S>> {
    let env = SymbolicEnv::formal(degree);
    let mut out = TensorElem2::one(Some(degree));
    for e in factors {
        out = out.mul(&eval_symbolic(&e, &env)?.into_t2()?)?;
    }
    Ok(out)
}

/// The twisting element truncated at total parameter degree `degree`.
///
/// Fixed rational parameters are substituted into the truncated formal
/// series; a zero value gives the exact limit.
pub fn build<S: Scalar>(spec: &TwistSpec, degree: u32) -> Result<TensorElem2<S>> {
    let t = Twist::new(spec.clone());
    Ok(specialize(eval_factors(t.factors.into_iter().map(Expr::exp), degree)?, spec))
}

/// The inverse twisting element, built factor by factor.
pub fn build_inverse<S: Scalar>(spec: &TwistSpec, degree: u32) -> Result<TensorElem2<S>> {
    let t = Twist::new(spec.clone());
    Ok(specialize(eval_factors(t.factors.into_iter().rev().map(|a| a.neg().exp()), degree)?, spec))
}

/// Outcome of the Verma-identity check.
#[derive(Clone, Debug)]
pub struct VermaOutcome<S> {
    /// `[E13,[E13,E32]] = 0` and `[E32,[E32,E13]] = 0`.
    pub nested_brackets_vanish: bool,
    pub identity: CheckOutcome<S, 1>,
}

impl<S: Scalar> VermaOutcome<S> {
    pub fn holds(&self) -> bool {
        self.nested_brackets_vanish && self.identity.holds
    }
}

pub const VERMA_LHS: &str = "log(exp(sigma13(xi))*exp(sigma32(zeta))*exp(sigma13(xi)))";
pub const VERMA_RHS: &str = "2*sigma13(xi) + sigma32(zeta)";

/// `ln(e^{σ13(ξ)} e^{σ32(ζ)} e^{σ13(ξ)}) = 2σ13(ξ) + σ32(ζ)` up to `degree`.
pub fn verma_check<S: Scalar>(degree: u32) -> Result<VermaOutcome<S>> {
    let a = LieElem::<S>::generator(GenId::E13);
    let b = LieElem::<S>::generator(GenId::E32);
    let nested_brackets_vanish = bracket(&a, &bracket(&a, &b)).is_zero() && bracket(&b, &bracket(&b, &a)).is_zero();
    let env = SymbolicEnv::formal(degree);
    let lhs = eval_symbolic(&parse(VERMA_LHS).unwrap(), &env)?.into_u()?;
    let rhs = eval_symbolic(&parse(VERMA_RHS).unwrap(), &env)?.into_u()?;
    Ok(VermaOutcome { nested_brackets_vanish, identity: CheckOutcome::from_sides(&lhs, &rhs) })
}

/// The three identities behind the factorized form of the Drinfeld equation
/// for `F_DR` over the coalgebra twisted by `F_P`.
#[derive(Clone, Debug)]
pub struct FactorizedOutcome<S> {
    /// `(Δ_P⊗id)F_DR = (F_DR)₁₃ (F_DR)₂₃`.
    pub first: CheckOutcome<S, 3>,
    /// `(id⊗Δ_℘)F_DR = (F_DR)₁₂ (F_DR)₁₃`.
    pub second: CheckOutcome<S, 3>,
    /// `F_DR Δ_P(G) F_DR⁻¹ = G⊗G` with `G = e^{σ13} e^{σ32} e^{σ13}`.
    pub group_like: CheckOutcome<S, 2>,
    /// `(F_DR)₁₂ (Δ_P⊗id)F_DR = (F_DR)₂₃ (id⊗Δ_P)F_DR`.
    pub drinfeld_over_p: CheckOutcome<S, 3>,
}

impl<S: Scalar> FactorizedOutcome<S> {
    pub fn holds(&self) -> bool {
        self.first.holds && self.second.holds && self.group_like.holds && self.drinfeld_over_p.holds
    }
}

pub const GROUP_LIKE: &str = "exp(sigma13(xi))*exp(sigma32(zeta))*exp(sigma13(xi))";

/// Checks the factorized equations for `F_DR` with the given `b`.
pub fn factorized_drinfeld_check<S: Scalar>(b: &BigRational, degree: u32) -> Result<FactorizedOutcome<S>> {
    let spec = |k| TwistSpec::new(k).with_b(b.clone());
    let fdr = build::<S>(&spec(TwistKind::DR), degree)?;
    let fp = build::<S>(&spec(TwistKind::PeriphericP), degree)?;
    let fp_inv = build_inverse::<S>(&spec(TwistKind::PeriphericP), degree)?;
    let fpar = fdr.mul(&fp)?;
    let fpar_inv = fp_inv.mul(&build_inverse::<S>(&spec(TwistKind::DR), degree)?)?;

    // (Δ_P⊗id)X = (F_P)₁₂ (Δ⊗id)X (F_P)₁₂⁻¹
    let left = embed(&fp, Legs::L12).mul(&coproduct_left(&fdr))?.mul(&embed(&fp_inv, Legs::L12))?;
    let right = embed(&fdr, Legs::L13).mul(&embed(&fdr, Legs::L23))?;
    let first = CheckOutcome::from_sides(&left, &right);
    let over_p_left = embed(&fdr, Legs::L12).mul(&left)?;

    let left = embed(&fpar, Legs::L23).mul(&coproduct_right(&fdr))?.mul(&embed(&fpar_inv, Legs::L23))?;
    let right = embed(&fdr, Legs::L12).mul(&embed(&fdr, Legs::L13))?;
    let second = CheckOutcome::from_sides(&left, &right);

    let over_p_right = embed(&fdr, Legs::L23)
        .mul(&embed(&fp, Legs::L23).mul(&coproduct_right(&fdr))?.mul(&embed(&fp_inv, Legs::L23))?)?;
    let drinfeld_over_p = CheckOutcome::from_sides(&over_p_left, &over_p_right);

    let g = eval_symbolic(&parse(GROUP_LIKE).unwrap(), &SymbolicEnv::formal(degree))?.into_u()?;
    let dg = twist_coproduct_with(&fpar, &fpar_inv, &g)?;
    let gg = crate::pbw::tensor(&g, &g)?;
    let group_like = CheckOutcome::from_sides(&dg, &gg);
    Ok(FactorizedOutcome { first, second, group_like, drinfeld_over_p })
}

/// Cartan data of the b-family and the constraints it has to satisfy.
#[derive(Clone, Debug)]
pub struct ConstraintReport {
    pub b: BigRational,
    /// `H1 = H23⊥ - b H13⊥`.
    pub h1: LieElem<BigRational>,
    /// `H2 = H13⊥`.
    pub h2: LieElem<BigRational>,
    /// Read off from `[H1, E12] = β E12`.
    pub beta: BigRational,
    pub h1_plus_b_h2: bool,
    pub h2_is_h13_perp: bool,
    pub beta_plus_b: bool,
    /// `[H1, E13] ≠ 0`, so `H1` and `E13` span a Borel subalgebra.
    pub h1_acts_on_e13: bool,
    pub b_is_two: bool,
}

impl ConstraintReport {
    pub fn holds(&self) -> bool {
        self.h1_plus_b_h2 && self.h2_is_h13_perp && self.beta_plus_b && self.h1_acts_on_e13 && self.b_is_two
    }
}

pub fn constraint_check(b: &BigRational) -> ConstraintReport {
    type L = LieElem<BigRational>;
    let h13 = L::h13_perp();
    let h23p = L::h23_perp();
    let h1 = &h23p - &h13.scale(b);
    let h2 = h13.clone();
    let e12 = L::generator(GenId::E12);
    let act = bracket(&h1, &e12);
    let beta = act.coeff(GenId::E12);
    let proportional = (&act - &e12.scale(&beta)).is_zero();
    ConstraintReport {
        b: b.clone(),
        h1_plus_b_h2: (&(&h1 + &h2.scale(b)) - &h23p).is_zero(),
        h2_is_h13_perp: (&h2 - &h13).is_zero(),
        beta_plus_b: proportional && (&beta + b).is_one(),
        h1_acts_on_e13: !bracket(&h1, &L::generator(GenId::E13)).is_zero(),
        b_is_two: *b == BigRational::from_integer(2.into()),
        h1,
        h2,
        beta,
    }
}

/// A printed coproduct formula: `scale·Δ_F(x)` equals `closed_form`.
#[derive(Clone, Debug)]
pub struct CoproductFormula {
    pub name: &'static str,
    pub element: &'static str,
    pub scale: &'static str,
    pub closed_form: String,
    /// Verified through `F Δ F⁻¹` only; a closed-form mismatch is a finding.
    pub definitional: bool,
}

/// `C` with the rescaling applied.
pub const C_PARAM: &str = "zeta*(1 (x) E32) + xi*zeta*(H13p (x) E12*exp(-sigma13(xi)))";

fn inv(x: &str) -> String {
    format!("exp(-log({x}))")
}

/// The table for the peripheric twist `F_P(ξ)`.
pub fn peripheric_coproducts() -> Vec<CoproductFormula> {
    let f = |name, element, closed_form: &str| CoproductFormula {
        name,
        element,
        scale: "1",
        closed_form: closed_form.to_string(),
        definitional: false,
    };
    vec![
        f("H13p", "H13p", "H13p (x) 1 + 1 (x) H13p"),
        f("E12", "E12", "E12 (x) exp(sigma13(xi)) + exp(sigma13(xi)) (x) E12"),
        f("E13", "E13", "E13 (x) exp(sigma13(xi)) + 1 (x) E13"),
        f("E23", "E23", "E23 (x) exp(-sigma13(xi)) + 1 (x) E23"),
        f("H23p", "H23p", "H23p (x) 1 + 1 (x) H23p + xi*(E23 (x) E12*exp(-2*sigma13(xi)))"),
        f("E32", "E32", "E32 (x) 1 + 1 (x) E32 + 2*xi*(H13p (x) E12*exp(-sigma13(xi)))"),
    ]
}

/// `Δ_P(H23⊥)` as computed from `F_P Δ F_P⁻¹`; the first leg carries
/// `e^{-σ13}`.
pub fn peripheric_h23p_corrected() -> CoproductFormula {
    CoproductFormula {
        name: "H23p (corrected)",
        element: "H23p",
        scale: "1",
        closed_form: "H23p (x) exp(-sigma13(xi)) + 1 (x) H23p + xi*(E23 (x) E12*exp(-2*sigma13(xi)))".into(),
        definitional: false,
    }
}

/// The table for the parabolic twist `F_℘(ξ, ζ)`.
pub fn parabolic_coproducts() -> Vec<CoproductFormula> {
    let one_c = format!("1 + {C_PARAM}");
    let inv_c = inv(&one_c);
    let g_inv = "exp(-sigma13(xi))*exp(-sigma32(zeta))*exp(-sigma13(xi))";
    vec![
        CoproductFormula {
            name: "H13p",
            element: "H13p",
            scale: "1",
            closed_form: format!("1 (x) H13p + (H13p (x) 1)*{inv_c}"),
            definitional: false,
        },
        CoproductFormula {
            name: "H23p",
            element: "H23p",
            scale: "1",
            closed_form: format!(
                "1 (x) H23p + H13p (x) exp(-sigma13(xi)) + (xi*(E23 (x) E12*exp(-sigma13(xi))) + \
                 ((H23p - H13p) (x) 1)*({one_c}))*(1 (x) exp(-sigma32(zeta))*exp(-sigma13(xi)))"
            ),
            definitional: true,
        },
        CoproductFormula {
            name: "E12",
            element: "E12",
            scale: "1",
            closed_form: "E12 (x) exp(sigma32(zeta))*exp(sigma13(xi)) + exp(sigma13(xi)) (x) E12 \
                          + xi*zeta*(H13p*E12 (x) E12)"
                .into(),
            definitional: false,
        },
        CoproductFormula {
            name: "E13",
            element: "E13",
            scale: "xi",
            closed_form: format!("(exp(sigma13(xi)) (x) exp(sigma13(xi))*exp(sigma32(zeta)))*{inv_c} - 1"),
            definitional: false,
        },
        CoproductFormula {
            name: "E23",
            element: "E23",
            scale: "1",
            closed_form: format!(
                "(E23 (x) exp(-sigma13(xi)) + zeta*(H13p (x) (2*H13p - H23p)) - zeta*(H13p^2 (x) exp(-sigma13(xi))) \
                 + zeta*(H13p (x) 1))*{inv_c} + zeta*(H13p*(H13p - 1) (x) 1)*{inv_c}*{inv_c} + 1 (x) E23"
            ),
            definitional: true,
        },
        CoproductFormula {
            name: "E32",
            element: "E32",
            scale: "1",
            closed_form: format!(
                "E32 (x) exp(sigma32(zeta)) + 1 (x) E32 \
                 + (zeta*E32 + 2*exp(sigma32(zeta))*H13p) (x) xi*E12*exp(-sigma13(xi)) \
                 + (zeta*E32 + exp(sigma32(zeta))*H13p)*H13p (x) xi^2*zeta*E12^2*{g_inv}"
            ),
            definitional: false,
        },
    ]
}

/// Symbolic comparison of one coproduct formula.
#[derive(Clone, Debug)]
pub struct CoproductOutcome<S> {
    pub name: &'static str,
    pub definitional: bool,
    /// `scale·F Δ(x) F⁻¹` against the closed form.
    pub closed_form: CheckOutcome<S, 2>,
    /// `(Δ_F⊗id)Δ_F(x) = (id⊗Δ_F)Δ_F(x)`.
    pub coassociative: bool,
    /// `(ε⊗id)Δ_F(x) = (id⊗ε)Δ_F(x) = x`.
    pub counit: bool,
    pub value: TensorElem2<S>,
}

/// Twisted coproducts of the table entries against their closed forms.
pub fn coproduct_table_check<S: Scalar>(
    spec: &TwistSpec,
    table: &[CoproductFormula],
    degree: u32,
) -> Result<Vec<CoproductOutcome<S>>> {
    let f = build::<S>(spec, degree)?;
    let finv = build_inverse::<S>(spec, degree)?;
    let env = SymbolicEnv::formal(degree);
    let f12 = embed(&f, Legs::L12);
    let f12_inv = embed(&finv, Legs::L12);
    let f23 = embed(&f, Legs::L23);
    let f23_inv = embed(&finv, Legs::L23);
    table
        .iter()
        .map(|row| {
            let x = eval_symbolic(&parse(row.element).unwrap(), &env)?.into_u()?;
            let scale = eval_symbolic(&parse(row.scale).unwrap(), &env)?.into_u()?.unit_coeff();
            let value = twist_coproduct_with(&f, &finv, &x)?;
            let want = eval_symbolic(&parse(&row.closed_form).unwrap(), &env)?.into_t2()?;
            let closed_form = CheckOutcome::from_sides(&value.scale_poly(&scale), &want);
            let left = f12.mul(&coproduct_left(&value))?.mul(&f12_inv)?;
            let right = f23.mul(&coproduct_right(&value))?.mul(&f23_inv)?;
            let coassociative = left == right;
            let counit = crate::hopf::counit_left(&value) == x && crate::hopf::counit_right(&value) == x;
            Ok(CoproductOutcome {
                name: row.name,
                definitional: row.definitional,
                closed_form,
                coassociative,
                counit,
                value,
            })
        })
        .collect()
}

/// Limits of `F_℘(ξ, ζ)` at `ζ = 0` and `ξ = 0`.
#[derive(Clone, Debug)]
pub struct LimitOutcome<S> {
    /// `F_℘(ξ, 0) = F_P(ξ)`.
    pub zeta_to_zero: CheckOutcome<S, 2>,
    /// `F_℘(0, ζ) = exp(H13⊥⊗σ32(ζ))`.
    pub xi_to_zero: CheckOutcome<S, 2>,
}

pub fn limits_check<S: Scalar>(degree: u32) -> Result<LimitOutcome<S>> {
    let par = TwistSpec::new(TwistKind::Parabolic);
    let at = |xi: Param, zeta: Param| build::<S>(&par.clone().with_params(xi, zeta), degree);
    let fp = build::<S>(&TwistSpec::new(TwistKind::PeriphericP), degree)?;
    let fj = build::<S>(&TwistSpec::new(TwistKind::JordanianJ), degree)?;
    Ok(LimitOutcome {
        zeta_to_zero: CheckOutcome::from_sides(&at(Param::Formal, Param::zero())?, &fp),
        xi_to_zero: CheckOutcome::from_sides(&at(Param::zero(), Param::Formal)?, &fj),
    })
}

/// `F_℘ = F_DR F_P = F_D F_R Φ_E Φ_J = F_D F_EJ` as truncated series.
#[derive(Clone, Debug)]
pub struct FactorizationOutcome<S> {
    pub dr_times_p: CheckOutcome<S, 2>,
    pub four_factors: CheckOutcome<S, 2>,
    pub d_times_ej: CheckOutcome<S, 2>,
}

impl<S: Scalar> FactorizationOutcome<S> {
    pub fn holds(&self) -> bool {
        self.dr_times_p.holds && self.four_factors.holds && self.d_times_ej.holds
    }
}

pub fn factorization_check<S: Scalar>(b: &BigRational, degree: u32) -> Result<FactorizationOutcome<S>> {
    let get = |k| build::<S>(&TwistSpec::new(k).with_b(b.clone()), degree);
    let par = get(TwistKind::Parabolic)?;
    let dr_p = get(TwistKind::DR)?.mul(&get(TwistKind::PeriphericP)?)?;
    let four = get(TwistKind::DeformedD)?
        .mul(&get(TwistKind::RotationR)?)?
        .mul(&get(TwistKind::ExtensionE)?)?
        .mul(&get(TwistKind::PhiJ)?)?;
    let d_ej = get(TwistKind::DeformedD)?.mul(&get(TwistKind::EJ)?)?;
    Ok(FactorizationOutcome {
        dr_times_p: CheckOutcome::from_sides(&dr_p, &par),
        four_factors: CheckOutcome::from_sides(&four, &par),
        d_times_ej: CheckOutcome::from_sides(&d_ej, &par),
    })
}
