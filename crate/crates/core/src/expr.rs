//! Expression language for algebra elements.
//!
//! ```text
//! sum     := tensor (('+' | '-') tensor)*
//! tensor  := product ('(x)' product)*
//! product := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' INT)?
//! atom    := NUM | SYMBOL | FUNC '(' sum ')' | '(' sum ')'
//! ```
//!
//! Numbers are non-negative integers or `p/q` rationals. Symbols are the
//! matrix units `E11`…`E33`, the Cartan elements `H13p`, `H23p`, `H23` and
//! the parameters `xi`, `zeta`. Functions are `exp`, `log`, `sigma13` and
//! `sigma32` (`sigmaIJ(t) = log(1 + t*EIJ)`).

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{AlgebraError, ParseError, Result};
use crate::liealg::{GenId, LieElem};
use crate::pbw::{tensor, tensor_12, tensor_21, Elem, ParamPoly, UElem};
use crate::scalar::{format_rational, parse_rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Gen(GenId),
    H13p,
    H23p,
    H23,
    Xi,
    Zeta,
}

impl Symbol {
    pub fn parse(name: &str) -> Option<Symbol> {
        Some(match name {
            "H13p" => Symbol::H13p,
            "H23p" => Symbol::H23p,
            "H23" => Symbol::H23,
            "xi" => Symbol::Xi,
            "zeta" => Symbol::Zeta,
            _ => Symbol::Gen(GenId::parse(name)?),
        })
    }

    /// The Lie element a non-parameter symbol stands for.
    pub fn lie<S: Scalar>(self) -> Option<LieElem<S>> {
        match self {
            Symbol::Gen(g) => Some(LieElem::generator(g)),
            Symbol::H13p => Some(LieElem::h13_perp()),
            Symbol::H23p => Some(LieElem::h23_perp()),
            Symbol::H23 => Some(LieElem::h23()),
            Symbol::Xi | Symbol::Zeta => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Gen(g) => write!(f, "{g}"),
            Symbol::H13p => write!(f, "H13p"),
            Symbol::H23p => write!(f, "H23p"),
            Symbol::H23 => write!(f, "H23"),
            Symbol::Xi => write!(f, "xi"),
            Symbol::Zeta => write!(f, "zeta"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sigma13,
    Sigma32,
}

impl Func {
    fn parse(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sigma13" => Func::Sigma13,
            "sigma32" => Func::Sigma32,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sigma13 => "sigma13",
            Func::Sigma32 => "sigma32",
        }
    }

    /// Generator inside a `sigma` function.
    pub fn sigma_generator(self) -> Option<GenId> {
        match self {
            Func::Sigma13 => Some(GenId::E13),
            Func::Sigma32 => Some(GenId::E32),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigRational),
    Sym(Symbol),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Tensor(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

// builders
#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn num(q: BigRational) -> Expr {
        if q < BigRational::zero() {
            Expr::Neg(Box::new(Expr::Num(-q)))
        } else {
            Expr::Num(q)
        }
    }

    pub fn int(n: i64) -> Expr {
        Expr::num(BigRational::from_integer(n.into()))
    }

    pub fn sym(s: Symbol) -> Expr {
        Expr::Sym(s)
    }

    pub fn gen(g: GenId) -> Expr {
        Expr::Sym(Symbol::Gen(g))
    }

    pub fn add(self, other: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(other))
    }

    pub fn sub(self, other: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(other))
    }

    pub fn mul(self, other: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(other))
    }

    pub fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }

    pub fn pow(self, n: u32) -> Expr {
        Expr::Pow(Box::new(self), n)
    }

    pub fn tensor(self, other: Expr) -> Expr {
        Expr::Tensor(Box::new(self), Box::new(other))
    }

    pub fn exp(self) -> Expr {
        Expr::Call(Func::Exp, Box::new(self))
    }

    pub fn log(self) -> Expr {
        Expr::Call(Func::Log, Box::new(self))
    }

    pub fn sigma13(t: Expr) -> Expr {
        Expr::Call(Func::Sigma13, Box::new(t))
    }

    pub fn sigma32(t: Expr) -> Expr {
        Expr::Call(Func::Sigma32, Box::new(t))
    }

    /// Number of tensor legs the expression spans (0 for pure scalars).
    pub fn rank(&self) -> usize {
        match self {
            Expr::Num(_) => 0,
            Expr::Sym(Symbol::Xi | Symbol::Zeta) => 0,
            Expr::Sym(_) => 1,
            Expr::Neg(a) | Expr::Pow(a, _) => a.rank(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.rank().max(b.rank()),
            Expr::Tensor(a, b) => a.rank().max(1) + b.rank().max(1),
            Expr::Call(f, a) => match f.sigma_generator() {
                Some(_) => 1,
                None => a.rank(),
            },
        }
    }
}

const PREC_SUM: u8 = 1;
const PREC_TENSOR: u8 = 2;
const PREC_PRODUCT: u8 = 3;
const PREC_UNARY: u8 = 4;
const PREC_POWER: u8 = 5;
const PREC_ATOM: u8 = 6;

impl Expr {
    fn write(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        let (prec, open) = match self {
            Expr::Add(..) | Expr::Sub(..) => (PREC_SUM, ctx > PREC_SUM),
            Expr::Tensor(..) => (PREC_TENSOR, ctx > PREC_TENSOR),
            Expr::Mul(..) => (PREC_PRODUCT, ctx > PREC_PRODUCT),
            Expr::Neg(..) => (PREC_UNARY, ctx > PREC_UNARY),
            Expr::Pow(..) => (PREC_POWER, ctx > PREC_POWER),
            _ => (PREC_ATOM, false),
        };
        if open {
            write!(f, "(")?;
        }
        match self {
            Expr::Num(q) => write!(f, "{}", format_rational(q))?,
            Expr::Sym(s) => write!(f, "{s}")?,
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write(f, PREC_UNARY)?;
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(f, prec)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write(f, prec + 1)?;
            }
            Expr::Tensor(a, b) => {
                a.write(f, prec)?;
                write!(f, " (x) ")?;
                b.write(f, prec + 1)?;
            }
            Expr::Mul(a, b) => {
                a.write(f, prec)?;
                write!(f, "*")?;
                b.write(f, prec + 1)?;
            }
            Expr::Pow(a, n) => {
                a.write(f, PREC_ATOM)?;
                write!(f, "^{n}")?;
            }
            Expr::Call(func, a) => {
                write!(f, "{}(", func.name())?;
                a.write(f, 0)?;
                write!(f, ")")?;
            }
        }
        if open {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    TensorOp,
}

fn lex(text: &str) -> std::result::Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '^' => Some(Token::Caret),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            i += 1;
            continue;
        }
        if c == '(' {
            let is_tensor = chars.get(i + 1).map(|x| x.1) == Some('x') && chars.get(i + 2).map(|x| x.1) == Some(')');
            if is_tensor {
                out.push((pos, Token::TensorOp));
                i += 3;
            } else {
                out.push((pos, Token::LParen));
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '/') {
                i += 1;
            }
            let lit: String = chars[start..i].iter().map(|x| x.1).collect();
            let q = parse_rational(&lit)
                .filter(|_| lit.matches('/').count() <= 1 && !lit.ends_with('/'))
                .ok_or_else(|| ParseError::Syntax { pos, msg: format!("bad number `{lit}`") })?;
            out.push((pos, Token::Num(q)));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((pos, Token::Ident(chars[start..i].iter().map(|x| x.1).collect())));
            continue;
        }
        return Err(ParseError::Syntax { pos, msg: format!("unexpected character `{c}`") });
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |t| t.0)
    }

    fn error<T>(&self, msg: impl Into<String>) -> std::result::Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut e = self.tensor()?;
        loop {
            if self.eat(&Token::Plus) {
                e = e.add(self.tensor()?);
            } else if self.eat(&Token::Minus) {
                e = e.sub(self.tensor()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn tensor(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut e = self.product()?;
        while self.eat(&Token::TensorOp) {
            e = e.tensor(self.product()?);
        }
        Ok(e)
    }

    fn product(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut e = self.unary()?;
        while self.eat(&Token::Star) {
            e = e.mul(self.unary()?);
        }
        Ok(e)
    }

    fn unary(&mut self) -> std::result::Result<Expr, ParseError> {
        if self.eat(&Token::Minus) {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> std::result::Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat(&Token::Caret) {
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Token::Num(q)) if q.is_integer() => {
                    self.at += 1;
                    let n: u32 = q
                        .numer()
                        .try_into()
                        .map_err(|_| ParseError::Syntax { pos, msg: "exponent too large".into() })?;
                    return Ok(base.pow(n));
                }
                _ => return self.error("expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> std::result::Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Token::Num(q)) => {
                self.at += 1;
                Ok(Expr::Num(q))
            }
            Some(Token::LParen) => {
                self.at += 1;
                let e = self.sum()?;
                if !self.eat(&Token::RParen) {
                    return self.error("expected `)`");
                }
                Ok(e)
            }
            Some(Token::Ident(name)) => {
                self.at += 1;
                if let Some(func) = Func::parse(&name) {
                    if !self.eat(&Token::LParen) {
                        return self.error(format!("expected `(` after `{name}`"));
                    }
                    let arg = self.sum()?;
                    if !self.eat(&Token::RParen) {
                        return self.error("expected `)`");
                    }
                    return Ok(Expr::Call(func, Box::new(arg)));
                }
                Symbol::parse(&name).map(Expr::Sym).ok_or(ParseError::UnknownSymbol { pos, name })
            }
            Some(t) => self.error(format!("unexpected token {t:?}")),
            None => self.error("unexpected end of input"),
        }
    }
}

pub fn parse(text: &str) -> std::result::Result<Expr, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, at: 0, end: text.len() };
    let e = p.sum()?;
    if p.at != p.tokens.len() {
        return p.error("trailing input");
    }
    Ok(e)
}

/// Value of an expression in `U^{⊗k}`.
#[derive(Clone, Debug)]
pub enum Value<S> {
    Scalar(ParamPoly<S>),
    U(UElem<S>),
    T2(Elem<S, 2>),
    T3(Elem<S, 3>),
}

impl<S: Scalar> PartialEq for Value<S> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => a == b,
            (Value::U(a), Value::U(b)) => a == b,
            (Value::T2(a), Value::T2(b)) => a == b,
            (Value::T3(a), Value::T3(b)) => a == b,
            _ => false,
        }
    }
}

impl<S: Scalar> Value<S> {
    pub fn rank(&self) -> usize {
        match self {
            Value::Scalar(_) => 0,
            Value::U(_) => 1,
            Value::T2(_) => 2,
            Value::T3(_) => 3,
        }
    }

    pub fn into_u(self) -> Result<UElem<S>> {
        match self {
            Value::Scalar(c) => Ok(UElem::scalar(c)),
            Value::U(x) => Ok(x),
            other => Err(AlgebraError::Type(format!("expected a single-leg element, found rank {}", other.rank()))),
        }
    }

    pub fn into_t2(self) -> Result<Elem<S, 2>> {
        match self {
            Value::Scalar(c) => Ok(Elem::scalar(c)),
            Value::T2(x) => Ok(x),
            other => Err(AlgebraError::Type(format!("expected a two-leg element, found rank {}", other.rank()))),
        }
    }

    pub fn into_t3(self) -> Result<Elem<S, 3>> {
        match self {
            Value::Scalar(c) => Ok(Elem::scalar(c)),
            Value::T3(x) => Ok(x),
            other => Err(AlgebraError::Type(format!("expected a three-leg element, found rank {}", other.rank()))),
        }
    }
}

impl<S: Scalar> fmt::Display for Value<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => write!(f, "{c}"),
            Value::U(x) => write!(f, "{x}"),
            Value::T2(x) => write!(f, "{x}"),
            Value::T3(x) => write!(f, "{x}"),
        }
    }
}

/// Values bound to `xi` and `zeta` plus the truncation degree.
#[derive(Clone, Debug)]
pub struct SymbolicEnv<S> {
    pub trunc: Option<u32>,
    pub xi: ParamPoly<S>,
    pub zeta: ParamPoly<S>,
}

impl<S: Scalar> SymbolicEnv<S> {
    /// Formal `ξ`, `ζ` truncated at total degree `degree`.
    pub fn formal(degree: u32) -> Self {
        let trunc = Some(degree);
        SymbolicEnv { trunc, xi: ParamPoly::xi(trunc), zeta: ParamPoly::zeta(trunc) }
    }
}

fn lift<S: Scalar>(a: Value<S>, b: Value<S>) -> Result<(Value<S>, Value<S>)> {
    Ok(match (a, b) {
        (Value::Scalar(c), Value::U(x)) => (Value::U(UElem::scalar(c)), Value::U(x)),
        (Value::U(x), Value::Scalar(c)) => (Value::U(x), Value::U(UElem::scalar(c))),
        (Value::Scalar(c), Value::T2(x)) => (Value::T2(Elem::scalar(c)), Value::T2(x)),
        (Value::T2(x), Value::Scalar(c)) => (Value::T2(x), Value::T2(Elem::scalar(c))),
        (Value::Scalar(c), Value::T3(x)) => (Value::T3(Elem::scalar(c)), Value::T3(x)),
        (Value::T3(x), Value::Scalar(c)) => (Value::T3(x), Value::T3(Elem::scalar(c))),
        (a, b) if a.rank() == b.rank() => (a, b),
        (a, b) => {
            return Err(AlgebraError::Type(format!("cannot combine elements of rank {} and {}", a.rank(), b.rank())))
        }
    })
}

fn mul_values<S: Scalar>(a: Value<S>, b: Value<S>) -> Result<Value<S>> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.mul(&y)),
        (Value::Scalar(c), Value::U(x)) | (Value::U(x), Value::Scalar(c)) => Value::U(x.scale_poly(&c)),
        (Value::Scalar(c), Value::T2(x)) | (Value::T2(x), Value::Scalar(c)) => Value::T2(x.scale_poly(&c)),
        (Value::Scalar(c), Value::T3(x)) | (Value::T3(x), Value::Scalar(c)) => Value::T3(x.scale_poly(&c)),
        (Value::U(x), Value::U(y)) => Value::U(x.mul(&y)?),
        (Value::T2(x), Value::T2(y)) => Value::T2(x.mul(&y)?),
        (Value::T3(x), Value::T3(y)) => Value::T3(x.mul(&y)?),
        (a, b) => {
            return Err(AlgebraError::Type(format!("cannot multiply elements of rank {} and {}", a.rank(), b.rank())))
        }
    })
}

fn scalar_series<S: Scalar>(c: ParamPoly<S>, f: impl Fn(&UElem<S>) -> Result<UElem<S>>) -> Result<ParamPoly<S>> {
    let trunc = c.trunc();
    let out = f(&UElem::scalar(c))?;
    // a scalar series stays scalar
    Ok(out.unit_coeff().with_trunc(trunc))
}

/// Evaluates `expr` as a truncated symbolic element.
pub fn eval_symbolic<S: Scalar>(expr: &Expr, env: &SymbolicEnv<S>) -> Result<Value<S>> {
    let trunc = env.trunc;
    Ok(match expr {
        Expr::Num(q) => Value::Scalar(ParamPoly::constant(S::from_rational(q), trunc)),
        Expr::Sym(Symbol::Xi) => Value::Scalar(env.xi.clone().with_trunc(trunc)),
        Expr::Sym(Symbol::Zeta) => Value::Scalar(env.zeta.clone().with_trunc(trunc)),
        Expr::Sym(s) => Value::U(UElem::from_lie(&s.lie::<S>().expect("non-parameter symbol"), trunc)),
        Expr::Neg(a) => match eval_symbolic(a, env)? {
            Value::Scalar(c) => Value::Scalar(c.neg()),
            Value::U(x) => Value::U(x.neg()),
            Value::T2(x) => Value::T2(x.neg()),
            Value::T3(x) => Value::T3(x.neg()),
        },
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (x, y) = lift(eval_symbolic(a, env)?, eval_symbolic(b, env)?)?;
            let minus = matches!(expr, Expr::Sub(..));
            match (x, y) {
                (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(if minus { x.sub(&y) } else { x.add(&y) }),
                (Value::U(x), Value::U(y)) => Value::U(if minus { x.sub(&y) } else { x.add(&y) }),
                (Value::T2(x), Value::T2(y)) => Value::T2(if minus { x.sub(&y) } else { x.add(&y) }),
                (Value::T3(x), Value::T3(y)) => Value::T3(if minus { x.sub(&y) } else { x.add(&y) }),
                _ => unreachable!("lift equalizes ranks"),
            }
        }
        Expr::Mul(a, b) => mul_values(eval_symbolic(a, env)?, eval_symbolic(b, env)?)?,
        Expr::Pow(a, n) => {
            let base = eval_symbolic(a, env)?;
            let mut acc = Value::Scalar(ParamPoly::one(trunc));
            for _ in 0..*n {
                acc = mul_values(acc, base.clone())?;
            }
            acc
        }
        Expr::Tensor(a, b) => {
            let x = eval_symbolic(a, env)?;
            let y = eval_symbolic(b, env)?;
            let promote = |v: Value<S>| match v {
                Value::Scalar(c) => Value::U(UElem::scalar(c)),
                other => other,
            };
            match (promote(x), promote(y)) {
                (Value::U(x), Value::U(y)) => Value::T2(tensor(&x, &y)?),
                (Value::T2(x), Value::U(y)) => Value::T3(tensor_21(&x, &y)?),
                (Value::U(x), Value::T2(y)) => Value::T3(tensor_12(&x, &y)?),
                (x, y) => {
                    return Err(AlgebraError::Type(format!(
                        "tensor product of ranks {} and {} exceeds three legs",
                        x.rank(),
                        y.rank()
                    )))
                }
            }
        }
        Expr::Call(func, a) => {
            let arg = eval_symbolic(a, env)?;
            match func {
                Func::Exp => match arg {
                    Value::Scalar(c) => Value::Scalar(scalar_series(c, |u| u.exp_series())?),
                    Value::U(x) => Value::U(x.exp_series()?),
                    Value::T2(x) => Value::T2(x.exp_series()?),
                    Value::T3(x) => Value::T3(x.exp_series()?),
                },
                Func::Log => match arg {
                    Value::Scalar(c) => Value::Scalar(scalar_series(c, |u| u.log_series())?),
                    Value::U(x) => Value::U(x.log_series()?),
                    Value::T2(x) => Value::T2(x.log_series()?),
                    Value::T3(x) => Value::T3(x.log_series()?),
                },
                Func::Sigma13 | Func::Sigma32 => {
                    let t = match arg {
                        Value::Scalar(c) => c,
                        other => {
                            return Err(AlgebraError::Type(format!(
                                "{} expects a scalar argument, found rank {}",
                                func.name(),
                                other.rank()
                            )))
                        }
                    };
                    Value::U(UElem::sigma(func.sigma_generator().unwrap(), &t)?)
                }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Q = BigRational;

    #[test]
    fn precedence() {
        let e = parse("E12*E23 - E13").unwrap();
        assert_eq!(e, Expr::gen(GenId::E12).mul(Expr::gen(GenId::E23)).sub(Expr::gen(GenId::E13)));
        let e = parse("exp(H13p (x) sigma32(zeta))").unwrap();
        assert_eq!(e, Expr::sym(Symbol::H13p).tensor(Expr::sigma32(Expr::sym(Symbol::Zeta))).exp());
        let e = parse("-xi*E23 (x) E12 + 1").unwrap();
        let want =
            Expr::sym(Symbol::Xi).neg().mul(Expr::gen(GenId::E23)).tensor(Expr::gen(GenId::E12)).add(Expr::int(1));
        assert_eq!(e, want);
        assert_eq!(parse("2/3*E11^2").unwrap(), Expr::num(Q::ratio(2, 3)).mul(Expr::gen(GenId::E11).pow(2)));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("E14"), Err(ParseError::UnknownSymbol { pos: 0, name: "E14".into() }));
        assert_eq!(parse("E12 + foo"), Err(ParseError::UnknownSymbol { pos: 6, name: "foo".into() }));
        assert!(matches!(parse("E12 +"), Err(ParseError::Syntax { pos: 5, .. })));
        assert!(matches!(parse("(E12"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("E12 ^ xi"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("E12 $"), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse("exp E12"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn rank_counts_legs() {
        assert_eq!(parse("xi*2").unwrap().rank(), 0);
        assert_eq!(parse("E12 + xi").unwrap().rank(), 1);
        assert_eq!(parse("exp(H13p (x) sigma32(zeta))").unwrap().rank(), 2);
        assert_eq!(parse("E12 (x) 1 (x) E23").unwrap().rank(), 3);
    }

    #[test]
    fn symbolic_values() {
        let env = SymbolicEnv::<Q>::formal(4);
        let v = eval_symbolic(&parse("E23*E12").unwrap(), &env).unwrap().into_u().unwrap();
        let w = eval_symbolic(&parse("E12*E23 - E13").unwrap(), &env).unwrap().into_u().unwrap();
        assert_eq!(v, w);
        let v = eval_symbolic(&parse("exp(sigma13(xi))").unwrap(), &env).unwrap().into_u().unwrap();
        let w = eval_symbolic(&parse("1 + xi*E13").unwrap(), &env).unwrap().into_u().unwrap();
        assert_eq!(v, w);
        let v = eval_symbolic(&parse("H23p - 2*H13p - H23").unwrap(), &env).unwrap();
        assert_eq!(v, Value::U(UElem::zero(Some(4))));
        let err = eval_symbolic(&parse("E12 + E12 (x) E12").unwrap(), &env).unwrap_err();
        assert!(matches!(err, AlgebraError::Type(_)));
        let err = eval_symbolic(&parse("exp(E12)").unwrap(), &env).unwrap_err();
        assert_eq!(err, AlgebraError::Valuation);
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0i64..5, 1i64..4).prop_map(|(n, d)| Expr::num(Q::ratio(n, d))),
            (0usize..9).prop_map(|i| Expr::gen(GenId::from_index(i))),
            Just(Expr::sym(Symbol::H13p)),
            Just(Expr::sym(Symbol::Xi)),
            Just(Expr::sym(Symbol::Zeta)),
        ];
        leaf.prop_recursive(4, 32, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Expr::neg),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.add(b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.sub(b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.mul(b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.tensor(b)),
                (inner.clone(), 0u32..4).prop_map(|(a, n)| a.pow(n)),
                inner.clone().prop_map(Expr::exp),
                inner.prop_map(Expr::sigma13),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_print_round_trip(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
        }
    }
}
