use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;
use crate::scalar::{parse_rational, Scalar};

/// Exponents of `ξ` and `ζ` in a parameter monomial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PExp {
    pub xi: u16,
    pub zeta: u16,
}

impl PExp {
    pub const ONE: PExp = PExp { xi: 0, zeta: 0 };

    pub fn new(xi: u16, zeta: u16) -> Self {
        PExp { xi, zeta }
    }

    pub fn degree(self) -> u32 {
        self.xi as u32 + self.zeta as u32
    }

    fn times(self, other: PExp) -> PExp {
        PExp { xi: self.xi + other.xi, zeta: self.zeta + other.zeta }
    }

    /// Graded order used for printing: lower total degree first, then
    /// higher `ξ` power first.
    fn graded_cmp(&self, other: &PExp) -> Ordering {
        self.degree().cmp(&other.degree()).then(other.xi.cmp(&self.xi))
    }
}

/// Polynomial in the formal parameters `ξ`, `ζ`.
///
/// With a truncation degree `D`, every term of total degree above `D` is
/// dropped by every ring operation.
#[derive(Clone, Debug)]
pub struct ParamPoly<S> {
    // sorted by exponent, no zero coefficients
    terms: Vec<(PExp, S)>,
    trunc: Option<u32>,
}

impl<S: Scalar> PartialEq for ParamPoly<S> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

pub(crate) fn combine_trunc(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<S: Scalar> ParamPoly<S> {
    pub fn zero(trunc: Option<u32>) -> Self {
        ParamPoly { terms: Vec::new(), trunc }
    }

    pub fn one(trunc: Option<u32>) -> Self {
        Self::constant(S::one(), trunc)
    }

    pub fn constant(c: S, trunc: Option<u32>) -> Self {
        Self::monomial(c, PExp::ONE, trunc)
    }

    pub fn monomial(c: S, exp: PExp, trunc: Option<u32>) -> Self {
        let keep = !c.is_zero() && trunc.is_none_or(|d| exp.degree() <= d);
        ParamPoly { terms: if keep { vec![(exp, c)] } else { Vec::new() }, trunc }
    }

    pub fn xi(trunc: Option<u32>) -> Self {
        Self::monomial(S::one(), PExp::new(1, 0), trunc)
    }

    pub fn zeta(trunc: Option<u32>) -> Self {
        Self::monomial(S::one(), PExp::new(0, 1), trunc)
    }

    /// Builds from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (PExp, S)>, trunc: Option<u32>) -> Self {
        let mut raw: Vec<(PExp, S)> =
            terms.into_iter().filter(|(e, c)| !c.is_zero() && trunc.is_none_or(|d| e.degree() <= d)).collect();
        raw.sort_by_key(|a| a.0);
        let mut out: Vec<(PExp, S)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        ParamPoly { terms: out, trunc }
    }

    pub fn trunc(&self) -> Option<u32> {
        self.trunc
    }

    /// Re-truncates at `trunc`, dropping terms beyond it.
    pub fn with_trunc(mut self, trunc: Option<u32>) -> Self {
        if let Some(d) = trunc {
            self.terms.retain(|(e, _)| e.degree() <= d);
        }
        self.trunc = trunc;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (PExp, &S)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == PExp::ONE && self.terms[0].1.is_one()
    }

    pub fn coeff(&self, exp: PExp) -> S {
        self.terms.binary_search_by(|(e, _)| e.cmp(&exp)).map(|i| self.terms[i].1.clone()).unwrap_or_else(|_| S::zero())
    }

    /// Lowest total degree present (`None` for zero).
    pub fn valuation(&self) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e.degree()).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e.degree()).max()
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous(&self, d: u32) -> Self {
        ParamPoly { terms: self.terms.iter().filter(|(e, _)| e.degree() == d).cloned().collect(), trunc: self.trunc }
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = combine_trunc(self.trunc, other.trunc);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].1.clone() + other.terms[j].1.clone();
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        ParamPoly { terms: out, trunc }.with_trunc(trunc)
    }

    pub fn neg(&self) -> Self {
        ParamPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(), trunc: self.trunc }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero(self.trunc);
        }
        ParamPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.clone() * s.clone())).collect(), trunc: self.trunc }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let trunc = combine_trunc(self.trunc, other.trunc);
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.times(*eb);
                if trunc.is_none_or(|d| e.degree() <= d) {
                    raw.push((e, ca.clone() * cb.clone()));
                }
            }
        }
        Self::from_terms(raw, trunc)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.trunc);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Value at `ξ = xi`, `ζ = zeta`.
    pub fn eval(&self, xi: &S, zeta: &S) -> S {
        let mut total = S::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..e.xi {
                t = t * xi.clone();
            }
            for _ in 0..e.zeta {
                t = t * zeta.clone();
            }
            total += t;
        }
        total
    }

    /// Substitutes polynomials for `ξ` and `ζ`.
    pub fn compose(&self, xi: &Self, zeta: &Self) -> Self {
        let trunc = self.trunc;
        let mut out = Self::zero(trunc);
        for (e, c) in &self.terms {
            let t = xi.pow(e.xi as u32).mul(&zeta.pow(e.zeta as u32)).scale(c);
            out = out.add(&t.with_trunc(trunc));
        }
        out.with_trunc(trunc)
    }

    /// The constant term.
    pub fn constant_term(&self) -> S {
        self.coeff(PExp::ONE)
    }
}

impl<S: Scalar> fmt::Display for ParamPoly<S> {
    /// `1 + 2/9*x^2 - z`, with `x = ξ`, `z = ζ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<&(PExp, S)> = self.terms.iter().collect();
        sorted.sort_by(|a, b| a.0.graded_cmp(&b.0));
        for (k, (e, c)) in sorted.into_iter().enumerate() {
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if magnitude != "1" || *e == PExp::ONE {
                factors.push(magnitude);
            }
            for (name, power) in [("x", e.xi), ("z", e.zeta)] {
                match power {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    p => factors.push(format!("{name}^{p}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<S: Scalar> FromStr for ParamPoly<S> {
    type Err = ParseError;

    /// Inverse of the `Display` form; accepts any sum of signed products of
    /// rationals, `x`, `z` and their integer powers.
    fn from_str(text: &str) -> Result<Self, ParseError> {
        let bytes: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        if bytes.is_empty() {
            return Err(ParseError::Syntax { pos: 0, msg: "empty polynomial".into() });
        }
        let mut terms = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = S::one();
            if i > 0 || matches!(bytes[0].1, '+' | '-') {
                match bytes[i].1 {
                    '+' => {}
                    '-' => sign = -S::one(),
                    c => {
                        return Err(ParseError::Syntax { pos: bytes[i].0, msg: format!("expected sign, found `{c}`") })
                    }
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && !matches!(bytes[i].1, '+' | '-') {
                i += 1;
            }
            if start == i {
                let pos = bytes.get(start).map_or(text.len(), |b| b.0);
                return Err(ParseError::Syntax { pos, msg: "empty term".into() });
            }
            let term: String = bytes[start..i].iter().map(|(_, c)| *c).collect();
            let pos = bytes[start].0;
            let mut coeff = sign;
            let mut exp = PExp::ONE;
            for factor in term.split('*') {
                let (base, power) = match factor.split_once('^') {
                    Some((b, p)) => {
                        let p: u16 = p
                            .parse()
                            .map_err(|_| ParseError::Syntax { pos, msg: format!("bad exponent in `{factor}`") })?;
                        (b, p)
                    }
                    None => (factor, 1),
                };
                match base {
                    "x" => exp.xi += power,
                    "z" => exp.zeta += power,
                    _ => {
                        let q = parse_rational(base)
                            .ok_or_else(|| ParseError::Syntax { pos, msg: format!("bad factor `{factor}`") })?;
                        let mut v = S::one();
                        for _ in 0..power {
                            v = v * S::from_rational(&q);
                        }
                        coeff = coeff * v;
                    }
                }
            }
            terms.push((exp, coeff));
        }
        Ok(ParamPoly::from_terms(terms, None))
    }
}
