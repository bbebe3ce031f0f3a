//! Fundamental-representation evaluation with polynomial-entry matrices.
//!
//! Root generators act nilpotently, so `σ`-series, exponentials and
//! geometric inverses of the twist factors terminate and every matrix here
//! is an exact polynomial in `ξ`, `ζ`.

use std::fmt;

use rayon::prelude::*;

use crate::error::{AlgebraError, Result};
use crate::expr::{parse, Expr, Func, Symbol};
use crate::liealg::{GenId, LieElem, WedgeElem};
use crate::pbw::{Elem, PBWMonomial, PExp, ParamPoly, UElem};
use crate::scalar::Scalar;
use crate::twists::{CoproductFormula, Param, Twist, TwistSpec};

/// Dense matrix over untruncated parameter polynomials.
#[derive(Clone, Debug)]
pub struct PolyMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<ParamPoly<S>>,
}

impl<S: Scalar> PartialEq for PolyMatrix<S> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl<S: Scalar> PolyMatrix<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![ParamPoly::zero(None); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, ParamPoly::one(None))
    }

    pub fn scalar(n: usize, c: ParamPoly<S>) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = c.clone();
        }
        m
    }

    /// The matrix unit `e_ij` of size `n` (indices from 1).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n, n);
        m.entries[(i - 1) * n + (j - 1)] = ParamPoly::one(None);
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> ParamPoly<S>) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols).with_trunc(None)).collect();
        PolyMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ParamPoly<S> {
        &self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        Ok(PolyMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|e| e.neg())
    }

    pub fn scale_poly(&self, c: &ParamPoly<S>) -> Self {
        self.map(|e| e.mul(c))
    }

    fn map(&self, f: impl Fn(&ParamPoly<S>) -> ParamPoly<S>) -> Self {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(AlgebraError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, m) = (other.rows, other.cols);
        let row = |i: usize| {
            let mut out = vec![ParamPoly::zero(None); m];
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for (slot, b) in out.iter_mut().zip(&other.entries[k * m..(k + 1) * m]) {
                    if !b.is_zero() {
                        *slot = slot.add(&a.mul(b));
                    }
                }
            }
            out
        };
        let rows: Vec<Vec<ParamPoly<S>>> = if S::is_exact() && self.rows >= 9 {
            (0..self.rows).into_par_iter().map(row).collect()
        } else {
            (0..self.rows).map(row).collect()
        };
        Ok(PolyMatrix { rows: self.rows, cols: m, entries: rows.into_iter().flatten().collect() })
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        Self::from_fn(r, c, |i, j| {
            let a = self.get(i / other.rows, j / other.cols);
            if a.is_zero() {
                return ParamPoly::zero(None);
            }
            a.mul(other.get(i % other.rows, j % other.cols))
        })
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(AlgebraError::Dimension(format!("{}x{} is not square", self.rows, self.cols)));
        }
        Ok(self.rows)
    }

    /// `Σ mᵏ/k!`, finite because `m` is nilpotent.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        let n = self.require_square()?;
        let mut sum = Self::identity(n);
        let mut term = Self::identity(n);
        for k in 1..=n {
            term = term.mul(self)?.scale_poly(&ParamPoly::constant(S::ratio(1, k as i64), None));
            if term.is_zero() {
                return Ok(sum);
            }
            sum = sum.add(&term)?;
        }
        Err(AlgebraError::NotNilpotent)
    }

    /// `Σ (−1)^{k+1} nᵏ/k` for `self = 1 + n`, `n` nilpotent.
    pub fn log_unipotent(&self) -> Result<Self> {
        let dim = self.require_square()?;
        let n = self.sub(&Self::identity(dim))?;
        let mut sum = Self::zero(dim, dim);
        let mut power = Self::identity(dim);
        for k in 1..=dim {
            power = power.mul(&n)?;
            if power.is_zero() {
                return Ok(sum);
            }
            let sign = if k % 2 == 0 { -1 } else { 1 };
            sum = sum.add(&power.scale_poly(&ParamPoly::constant(S::ratio(sign, k as i64), None)))?;
        }
        Err(AlgebraError::NotNilpotent)
    }

    /// Permutes tensor legs of equal dimension `d`: leg `k` of the result is
    /// leg `perm[k]` of `self`.
    pub fn permute_legs(&self, d: usize, perm: &[usize]) -> Result<Self> {
        let legs = perm.len();
        let n = self.require_square()?;
        if d.pow(legs as u32) != n {
            return Err(AlgebraError::Dimension(format!("{n} is not {d}^{legs}")));
        }
        let digits = |mut x: usize| {
            let mut v = vec![0; legs];
            for k in (0..legs).rev() {
                v[k] = x % d;
                x /= d;
            }
            v
        };
        let source = |x: usize| {
            let v = digits(x);
            perm.iter().fold(0, |acc, &p| acc * d + v[p])
        };
        Ok(Self::from_fn(n, n, |i, j| self.get(source(i), source(j)).clone()))
    }

    /// `X₂₁` for `X` acting on two legs of dimension `d`.
    pub fn swap_legs(&self, d: usize) -> Result<Self> {
        self.permute_legs(d, &[1, 0])
    }

    /// Entries with every term of total degree above `d` dropped.
    pub fn truncated(&self, d: u32) -> Self {
        self.map(|e| e.clone().with_trunc(Some(d)).with_trunc(None))
    }

    /// Substitutes parameter polynomials into every entry.
    pub fn compose_params(&self, xi: &ParamPoly<S>, zeta: &ParamPoly<S>) -> Self {
        self.map(|e| e.compose(xi, zeta))
    }

    /// Matrix of the coefficients of `ξ^a ζ^b`.
    pub fn coefficient(&self, exp: PExp) -> Self {
        self.map(|e| ParamPoly::constant(e.coeff(exp), None))
    }

    /// Every `(ξ, ζ)` exponent that occurs in some entry, sorted.
    pub fn exponents(&self) -> Vec<PExp> {
        let mut v: Vec<PExp> = self.entries.iter().flat_map(|e| e.terms().map(|(x, _)| x)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Row-major entry strings, `x` standing for `ξ` and `z` for `ζ`.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> std::result::Result<Self, crate::error::ParseError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            for s in row {
                entries.push(s.parse::<ParamPoly<S>>()?);
            }
        }
        Ok(PolyMatrix { rows: r, cols: c, entries })
    }
}

impl<S: Scalar> fmt::Display for PolyMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_strings() {
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A representation of `gl(3)` by the images of the matrix units.
#[derive(Clone, Debug)]
pub struct RepMap<S> {
    dim: usize,
    images: Vec<PolyMatrix<S>>,
}

impl<S: Scalar> RepMap<S> {
    /// `E_ij ↦ e_ij` on `C³`.
    pub fn fundamental() -> Self {
        RepMap {
            dim: 3,
            images: GenId::all().map(|g| PolyMatrix::unit(3, g.row() as usize, g.col() as usize)).collect(),
        }
    }

    /// `x ↦ ρ(x)⊗1 + 1⊗ρ(x)`, the representation through the coproduct.
    pub fn coproduct_of(rep: &RepMap<S>) -> Self {
        let id = PolyMatrix::identity(rep.dim);
        let images = rep.images.iter().map(|m| m.kron(&id).add(&id.kron(m)).unwrap()).collect();
        RepMap { dim: rep.dim * rep.dim, images }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, g: GenId) -> &PolyMatrix<S> {
        &self.images[g.index()]
    }

    pub fn lie(&self, x: &LieElem<S>) -> PolyMatrix<S> {
        x.terms().fold(PolyMatrix::zero(self.dim, self.dim), |acc, (g, c)| {
            acc.add(&self.image(g).scale_poly(&ParamPoly::constant(c.clone(), None))).unwrap()
        })
    }

    fn monomial(&self, m: PBWMonomial) -> PolyMatrix<S> {
        m.word().iter().fold(PolyMatrix::identity(self.dim), |acc, g| acc.mul(self.image(*g)).unwrap())
    }

    /// Pairs `(a, b)` of generators with `ρ([a,b]) ≠ [ρ(a), ρ(b)]`.
    pub fn homomorphism_defects(&self) -> Vec<(GenId, GenId)> {
        let mut bad = Vec::new();
        for a in GenId::all() {
            for b in GenId::all() {
                let (x, y) = (self.image(a), self.image(b));
                let comm = x.mul(y).unwrap().sub(&y.mul(x).unwrap()).unwrap();
                let image = a.bracket(b).fold(PolyMatrix::zero(self.dim, self.dim), |acc, (g, c)| {
                    acc.add(&self.image(g).scale_poly(&ParamPoly::constant(S::from_i64(c), None))).unwrap()
                });
                if comm != image {
                    bad.push((a, b));
                }
            }
        }
        bad
    }
}

/// `ρ(x)` for a one-leg element.
pub fn evaluate<S: Scalar>(rep: &RepMap<S>, x: &UElem<S>) -> PolyMatrix<S> {
    evaluate_tensor(&[rep], x).expect("one leg, one representation")
}

/// `ρ₁⊗⋯⊗ρ_N (X)`, leg by leg.
pub fn evaluate_tensor<S: Scalar, const N: usize>(reps: &[&RepMap<S>], x: &Elem<S, N>) -> Result<PolyMatrix<S>> {
    if reps.len() != N {
        return Err(AlgebraError::Dimension(format!("{} representations for {N} legs", reps.len())));
    }
    let n: usize = reps.iter().map(|r| r.dim).product();
    let mut out = PolyMatrix::zero(n, n);
    for (key, c) in x.terms() {
        let m = (0..N)
            .map(|l| reps[l].monomial(key[l]))
            .reduce(|a, b| a.kron(&b))
            .unwrap_or_else(|| PolyMatrix::identity(1));
        out = out.add(&m.scale_poly(&c.clone().with_trunc(None)))?;
    }
    Ok(out)
}

/// Parameter values for the matrix route: formal or fixed rationals.
#[derive(Clone, Debug)]
pub struct MatrixEnv<S> {
    pub xi: ParamPoly<S>,
    pub zeta: ParamPoly<S>,
}

impl<S: Scalar> MatrixEnv<S> {
    pub fn formal() -> Self {
        MatrixEnv { xi: ParamPoly::xi(None), zeta: ParamPoly::zeta(None) }
    }

    pub fn from_params(xi: &Param, zeta: &Param) -> Self {
        let pick = |p: &Param, formal: ParamPoly<S>| match p {
            Param::Formal => formal,
            Param::Value(q) => ParamPoly::constant(S::from_rational(q), None),
        };
        MatrixEnv { xi: pick(xi, ParamPoly::xi(None)), zeta: pick(zeta, ParamPoly::zeta(None)) }
    }
}

enum MatVal<S> {
    Scalar(ParamPoly<S>),
    Mat(PolyMatrix<S>),
}

struct Interp<'a, S> {
    reps: &'a [&'a RepMap<S>],
    env: &'a MatrixEnv<S>,
}

impl<S: Scalar> Interp<'_, S> {
    fn dim(&self, offset: usize, rank: usize) -> Result<usize> {
        if offset + rank > self.reps.len() {
            return Err(AlgebraError::Type(format!(
                "expression spans {} legs but only {} representations are given",
                offset + rank,
                self.reps.len()
            )));
        }
        Ok(self.reps[offset..offset + rank].iter().map(|r| r.dim).product())
    }

    fn matrix(&self, v: MatVal<S>, offset: usize, rank: usize) -> Result<PolyMatrix<S>> {
        Ok(match v {
            MatVal::Mat(m) => m,
            MatVal::Scalar(c) => PolyMatrix::scalar(self.dim(offset, rank.max(1))?, c),
        })
    }

    fn eval(&self, e: &Expr, offset: usize) -> Result<MatVal<S>> {
        let rank = e.rank();
        Ok(match e {
            Expr::Num(q) => MatVal::Scalar(ParamPoly::constant(S::from_rational(q), None)),
            Expr::Sym(Symbol::Xi) => MatVal::Scalar(self.env.xi.clone()),
            Expr::Sym(Symbol::Zeta) => MatVal::Scalar(self.env.zeta.clone()),
            Expr::Sym(s) => {
                self.dim(offset, 1)?;
                MatVal::Mat(self.reps[offset].lie(&s.lie::<S>().expect("non-parameter symbol")))
            }
            Expr::Neg(a) => match self.eval(a, offset)? {
                MatVal::Scalar(c) => MatVal::Scalar(c.neg()),
                MatVal::Mat(m) => MatVal::Mat(m.neg()),
            },
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (x, y) = (self.eval(a, offset)?, self.eval(b, offset)?);
                let minus = matches!(e, Expr::Sub(..));
                match (x, y) {
                    (MatVal::Scalar(x), MatVal::Scalar(y)) => MatVal::Scalar(if minus { x.sub(&y) } else { x.add(&y) }),
                    (x, y) => {
                        let x = self.matrix(x, offset, rank)?;
                        let y = self.matrix(y, offset, rank)?;
                        MatVal::Mat(if minus { x.sub(&y)? } else { x.add(&y)? })
                    }
                }
            }
            Expr::Mul(a, b) => match (self.eval(a, offset)?, self.eval(b, offset)?) {
                (MatVal::Scalar(x), MatVal::Scalar(y)) => MatVal::Scalar(x.mul(&y)),
                (MatVal::Scalar(c), MatVal::Mat(m)) | (MatVal::Mat(m), MatVal::Scalar(c)) => {
                    MatVal::Mat(m.scale_poly(&c))
                }
                (MatVal::Mat(x), MatVal::Mat(y)) => MatVal::Mat(x.mul(&y)?),
            },
            Expr::Pow(a, n) => {
                let base = self.eval(a, offset)?;
                match base {
                    MatVal::Scalar(c) => MatVal::Scalar(c.pow(*n)),
                    MatVal::Mat(m) => {
                        let mut acc = PolyMatrix::identity(m.rows());
                        for _ in 0..*n {
                            acc = acc.mul(&m)?;
                        }
                        MatVal::Mat(acc)
                    }
                }
            }
            Expr::Tensor(a, b) => {
                let ra = a.rank().max(1);
                let rb = b.rank().max(1);
                let x = self.eval(a, offset)?;
                let x = self.matrix(x, offset, ra)?;
                let y = self.eval(b, offset + ra)?;
                let y = self.matrix(y, offset + ra, rb)?;
                MatVal::Mat(x.kron(&y))
            }
            Expr::Call(func, a) => {
                if let Some(g) = func.sigma_generator() {
                    let t = match self.eval(a, offset)? {
                        MatVal::Scalar(t) => t,
                        MatVal::Mat(_) => {
                            return Err(AlgebraError::Type(format!("{func:?} expects a scalar argument")))
                        }
                    };
                    self.dim(offset, 1)?;
                    let rep = self.reps[offset];
                    let arg = PolyMatrix::identity(rep.dim).add(&rep.image(g).scale_poly(&t))?;
                    return Ok(MatVal::Mat(arg.log_unipotent()?));
                }
                match self.eval(a, offset)? {
                    MatVal::Scalar(c) if c.is_zero() && *func == Func::Exp => MatVal::Scalar(ParamPoly::one(None)),
                    MatVal::Scalar(c) if c.is_one() && *func == Func::Log => MatVal::Scalar(ParamPoly::zero(None)),
                    MatVal::Scalar(_) => {
                        return Err(AlgebraError::Type(format!(
                            "{func:?} of a parameter is not a polynomial; apply it to an algebra element"
                        )))
                    }
                    MatVal::Mat(m) => MatVal::Mat(match func {
                        Func::Exp => m.exp_nilpotent()?,
                        Func::Log => m.log_unipotent()?,
                        _ => unreachable!("sigma handled above"),
                    }),
                }
            }
        })
    }
}

/// Exact value of an expression with leg `k` acting through `reps[k]`.
pub fn eval_expr<S: Scalar>(expr: &Expr, reps: &[&RepMap<S>], env: &MatrixEnv<S>) -> Result<PolyMatrix<S>> {
    let interp = Interp { reps, env };
    let rank = expr.rank();
    let v = interp.eval(expr, 0)?;
    interp.matrix(v, 0, rank.max(1))
}

/// The twisting element through two representations.
pub fn twist_matrix<S: Scalar>(spec: &TwistSpec, reps: [&RepMap<S>; 2]) -> Result<PolyMatrix<S>> {
    let env = MatrixEnv::from_params(&spec.xi, &spec.zeta);
    eval_expr(&Twist::new(spec.clone()).expr(), &reps, &env)
}

pub fn twist_inverse_matrix<S: Scalar>(spec: &TwistSpec, reps: [&RepMap<S>; 2]) -> Result<PolyMatrix<S>> {
    let env = MatrixEnv::from_params(&spec.xi, &spec.zeta);
    eval_expr(&Twist::new(spec.clone()).inverse_expr(), &reps, &env)
}

/// `R = F₂₁ F⁻¹` in the fundamental representation.
pub fn r_matrix<S: Scalar>(spec: &TwistSpec) -> Result<PolyMatrix<S>> {
    let fund = RepMap::fundamental();
    let f = twist_matrix(spec, [&fund, &fund])?;
    let finv = twist_inverse_matrix(spec, [&fund, &fund])?;
    f.swap_legs(3)?.mul(&finv)
}

/// `R_℘(ξ, ζ)` for the parabolic twist with `b = 2`.
pub fn r_matrix_fundamental<S: Scalar>(xi: &Param, zeta: &Param) -> Result<PolyMatrix<S>> {
    r_matrix(&TwistSpec::new(crate::twists::TwistKind::Parabolic).with_params(xi.clone(), zeta.clone()))
}

/// Difference of two sides of a matrix identity.
#[derive(Clone, Debug)]
pub struct MatrixCheck<S> {
    pub holds: bool,
    pub residual: PolyMatrix<S>,
}

impl<S: Scalar> MatrixCheck<S> {
    pub fn from_sides(left: &PolyMatrix<S>, right: &PolyMatrix<S>) -> Result<Self> {
        let residual = left.sub(right)?;
        Ok(MatrixCheck { holds: residual.is_zero(), residual })
    }

    /// Lowest total degree among nonzero residual entries.
    pub fn failure_degree(&self) -> Option<u32> {
        self.residual.entries.iter().filter_map(|e| e.valuation()).min()
    }
}

fn require_9x9<S: Scalar>(r: &PolyMatrix<S>) -> Result<()> {
    if r.rows != 9 || r.cols != 9 {
        return Err(AlgebraError::Dimension(format!("expected 9x9, found {}x{}", r.rows, r.cols)));
    }
    Ok(())
}

/// `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂` on `C³⊗C³⊗C³`.
pub fn qybe_check<S: Scalar>(r: &PolyMatrix<S>) -> Result<MatrixCheck<S>> {
    require_9x9(r)?;
    let id = PolyMatrix::identity(3);
    let r12 = r.kron(&id);
    let r23 = id.kron(r);
    let r13 = r12.permute_legs(3, &[0, 2, 1])?;
    let left = r12.mul(&r13)?.mul(&r23)?;
    let right = r23.mul(&r13)?.mul(&r12)?;
    MatrixCheck::from_sides(&left, &right)
}

/// `R₂₁ R = 1`.
pub fn triangularity_check<S: Scalar>(r: &PolyMatrix<S>) -> Result<MatrixCheck<S>> {
    require_9x9(r)?;
    MatrixCheck::from_sides(&r.swap_legs(3)?.mul(r)?, &PolyMatrix::identity(9))
}

/// `ρ⊗ρ(a∧b) = ρ(a)⊗ρ(b) − ρ(b)⊗ρ(a)`.
pub fn wedge_matrix<S: Scalar>(rep: &RepMap<S>, w: &WedgeElem<S>) -> PolyMatrix<S> {
    let n = rep.dim * rep.dim;
    w.to_tensor().terms().fold(PolyMatrix::zero(n, n), |acc, ((a, b), c)| {
        let t = rep.image(a).kron(rep.image(b)).scale_poly(&ParamPoly::constant(c.clone(), None));
        acc.add(&t).unwrap()
    })
}

/// First-order data of `R_℘(t, ηt)`.
#[derive(Clone, Debug)]
pub struct SemiclassicalOutcome<S> {
    /// The `t⁰` coefficient is the identity.
    pub order_zero_is_identity: bool,
    /// `t¹` coefficient of `R_℘(t, ηt)`.
    pub first_order: PolyMatrix<S>,
    /// `ρ⊗ρ(r_℘(η))`.
    pub classical: PolyMatrix<S>,
    /// `first_order = −ρ⊗ρ(r_℘(η))`, the sign fixed by `R = F₂₁F⁻¹`.
    pub matches: bool,
}

pub fn semiclassical_check<S: Scalar>(eta: &S) -> Result<SemiclassicalOutcome<S>> {
    let r = r_matrix_fundamental::<S>(&Param::Formal, &Param::Formal)?;
    let t = ParamPoly::xi(None);
    let on_line = r.compose_params(&t, &t.scale(eta));
    let first_order = on_line.coefficient(PExp::new(1, 0));
    let classical = wedge_matrix(&RepMap::fundamental(), &crate::liealg::r_parabolic(eta));
    Ok(SemiclassicalOutcome {
        order_zero_is_identity: on_line.coefficient(PExp::ONE).is_identity(),
        matches: first_order == classical.neg(),
        first_order,
        classical,
    })
}

/// The printed expansion of `R_℘` in the fundamental representation, with
/// `a∧b = a⊗b − b⊗a` written out and the `ζξ` group read as
/// `1/3 (E12⊗H + H⊗E12 + 1/3 (E13⊗E32 + E32⊗E13))`.
pub const R_EXPANSION: &str = "1 \
    + xi*(E13 (x) H23p - H23p (x) E13 + E23 (x) E12 - E12 (x) E23) \
    + 2/9*xi^2*(E13 (x) E13) \
    + zeta*(E32 (x) H13p - H13p (x) E32) \
    + 2/9*zeta^2*(E32 (x) E32) \
    + 1/3*zeta*xi*(E12 (x) H13p + H13p (x) E12 + 1/3*(E13 (x) E32 + E32 (x) E13)) \
    - 2/81*zeta^2*xi^2*(E12 (x) E12) \
    + 2/27*xi*zeta^2*(E12 (x) E32 - E32 (x) E12) \
    + 1/27*xi^2*zeta*(E12 (x) E13 - E13 (x) E12)";

/// The alternative reading of the `ζξ` group, `1/3 (E12⊗H + H⊗E12) +
/// 1/3 (E13⊗E32 + E32⊗E13)`.
pub const R_EXPANSION_ALT_ZX: &str =
    "1/3*zeta*xi*(E12 (x) H13p + H13p (x) E12) + 1/3*zeta*xi*(E13 (x) E32 + E32 (x) E13)";

/// The printed expansion as a 9×9 matrix.
pub fn r_expansion_matrix<S: Scalar>() -> PolyMatrix<S> {
    let fund = RepMap::fundamental();
    eval_expr(&parse(R_EXPANSION).unwrap(), &[&fund, &fund], &MatrixEnv::formal()).expect("printed expansion evaluates")
}

/// Coefficient of `ξ^a ζ^b · e_ij⊗e_kl` in a 9×9 matrix.
pub fn tensor_coefficient<S: Scalar>(m: &PolyMatrix<S>, exp: PExp, left: (usize, usize), right: (usize, usize)) -> S {
    let row = (left.0 - 1) * 3 + (right.0 - 1);
    let col = (left.1 - 1) * 3 + (right.1 - 1);
    m.get(row, col).coeff(exp)
}

/// The Drinfeld equation through `ρ⊗ρ⊗ρ`, with `Δ` acting through
/// `x ↦ ρ(x)⊗1 + 1⊗ρ(x)`.
pub fn cocycle_rep_check<S: Scalar>(spec: &TwistSpec) -> Result<MatrixCheck<S>> {
    let fund = RepMap::fundamental();
    let doubled = RepMap::coproduct_of(&fund);
    let f = twist_matrix(spec, [&fund, &fund])?;
    let id = PolyMatrix::identity(3);
    let left = f.kron(&id).mul(&twist_matrix(spec, [&doubled, &fund])?)?;
    let right = id.kron(&f).mul(&twist_matrix(spec, [&fund, &doubled])?)?;
    MatrixCheck::from_sides(&left, &right)
}

/// The Verma identity in the fundamental representation.
pub fn verma_rep_check<S: Scalar>() -> Result<MatrixCheck<S>> {
    let fund = RepMap::fundamental();
    let env = MatrixEnv::formal();
    let lhs = eval_expr(&parse(crate::twists::VERMA_LHS).unwrap(), &[&fund], &env)?;
    let rhs = eval_expr(&parse(crate::twists::VERMA_RHS).unwrap(), &[&fund], &env)?;
    MatrixCheck::from_sides(&lhs, &rhs)
}

/// The truncated symbolic twist against the exact matrix twist on the
/// window of total degree `≤ degree`.
pub fn two_route_check<S: Scalar>(spec: &TwistSpec, degree: u32) -> Result<MatrixCheck<S>> {
    let fund = RepMap::fundamental();
    let symbolic = crate::twists::build::<S>(spec, degree)?;
    let via_symbols = evaluate_tensor(&[&fund, &fund], &symbolic)?.truncated(degree);
    let via_matrices = twist_matrix(spec, [&fund, &fund])?.truncated(degree);
    MatrixCheck::from_sides(&via_symbols, &via_matrices)
}

/// `F (ρ⊗ρ)(Δx) F⁻¹`; `x` is evaluated through the representation `Δρ`.
pub fn twisted_coproduct_rep<S: Scalar>(spec: &TwistSpec, x: &Expr) -> Result<PolyMatrix<S>> {
    let fund = RepMap::fundamental();
    let doubled = RepMap::coproduct_of(&fund);
    let env = MatrixEnv::from_params(&spec.xi, &spec.zeta);
    let dx = eval_expr(x, &[&doubled], &env)?;
    twist_matrix(spec, [&fund, &fund])?.mul(&dx)?.mul(&twist_inverse_matrix(spec, [&fund, &fund])?)
}

/// A printed coproduct formula checked exactly in the fundamental
/// representation.
pub fn coproduct_formula_rep_check<S: Scalar>(spec: &TwistSpec, row: &CoproductFormula) -> Result<MatrixCheck<S>> {
    let fund = RepMap::fundamental();
    let env = MatrixEnv::from_params(&spec.xi, &spec.zeta);
    let scale = eval_expr(&parse(row.scale).unwrap(), &[&RepMap::coproduct_of(&fund)], &env)?;
    let value = scale.mul(&twisted_coproduct_rep(spec, &parse(row.element).unwrap())?)?;
    let want = eval_expr(&parse(&row.closed_form).unwrap(), &[&fund, &fund], &env)?;
    MatrixCheck::from_sides(&value, &want)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twists::TwistKind;
    use num_rational::BigRational;

    type Q = BigRational;
    type M = PolyMatrix<Q>;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn fundamental_is_a_representation() {
        let fund = RepMap::<Q>::fundamental();
        assert!(fund.homomorphism_defects().is_empty());
        assert!(RepMap::coproduct_of(&fund).homomorphism_defects().is_empty());
        let h = fund.lie(&LieElem::h13_perp());
        let want = M::from_fn(3, 3, |i, j| {
            let d = [q(1, 3), q(-2, 3), q(1, 3)];
            if i == j {
                ParamPoly::constant(d[i].clone(), None)
            } else {
                ParamPoly::zero(None)
            }
        });
        assert_eq!(h, want);
    }

    #[test]
    fn nilpotent_series() {
        let e = M::unit(3, 1, 3).scale_poly(&ParamPoly::xi(None));
        let x = e.exp_nilpotent().unwrap();
        assert_eq!(x, M::identity(3).add(&e).unwrap());
        assert_eq!(x.log_unipotent().unwrap(), e);
        assert_eq!(M::identity(3).exp_nilpotent(), Err(AlgebraError::NotNilpotent));
        let z = M::zero(9, 9);
        assert!(z.exp_nilpotent().unwrap().is_identity());
    }

    #[test]
    fn leg_permutations() {
        let a = M::unit(3, 1, 2);
        let b = M::unit(3, 3, 1);
        let c = M::unit(3, 2, 2);
        assert_eq!(a.kron(&b).swap_legs(3).unwrap(), b.kron(&a));
        let abc = a.kron(&b).kron(&c);
        assert_eq!(abc.permute_legs(3, &[0, 2, 1]).unwrap(), a.kron(&c).kron(&b));
    }

    #[test]
    fn sigma_images() {
        let fund = RepMap::<Q>::fundamental();
        let env = MatrixEnv::formal();
        let s = eval_expr(&parse("sigma13(xi)").unwrap(), &[&fund], &env).unwrap();
        assert_eq!(s, M::unit(3, 1, 3).scale_poly(&ParamPoly::xi(None)));
        let lhs = eval_expr(&parse("sigma13(xi)*E32 - E32*sigma13(xi)").unwrap(), &[&fund], &env).unwrap();
        let rhs = eval_expr(&parse("xi*E12*exp(-sigma13(xi))").unwrap(), &[&fund], &env).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(rhs, M::unit(3, 1, 2).scale_poly(&ParamPoly::xi(None)));
    }

    #[test]
    fn json_strings_round_trip() {
        let r = r_matrix_fundamental::<Q>(&Param::Formal, &Param::Formal).unwrap();
        let back = M::from_strings(&r.to_strings()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn simple_r_matrix_checks() {
        let id = M::identity(9);
        assert!(qybe_check(&id).unwrap().holds);
        assert!(triangularity_check(&id).unwrap().holds);
        let bump =
            |a: (usize, usize), b: (usize, usize)| id.add(&M::unit(3, a.0, a.1).kron(&M::unit(3, b.0, b.1))).unwrap();
        // all products of e12⊗e12 legs vanish, so this one is a solution
        assert!(qybe_check(&bump((1, 2), (1, 2))).unwrap().holds);
        assert!(!qybe_check(&bump((1, 2), (2, 1))).unwrap().holds);
        assert!(!triangularity_check(&bump((1, 3), (1, 3))).unwrap().holds);
        assert!(qybe_check(&M::identity(3)).is_err());
    }

    #[test]
    fn r_at_origin_is_identity() {
        let zero = Param::Value(q(0, 1));
        assert!(r_matrix_fundamental::<Q>(&zero, &zero).unwrap().is_identity());
    }

    #[test]
    fn coproduct_formulas_in_the_representation() {
        let spec = TwistSpec::new(TwistKind::Parabolic);
        for row in crate::twists::parabolic_coproducts() {
            assert!(coproduct_formula_rep_check::<Q>(&spec, &row).unwrap().holds, "{}", row.name);
        }
    }

    #[test]
    fn jordanian_rep_cocycle() {
        assert!(cocycle_rep_check::<Q>(&TwistSpec::new(TwistKind::JordanianJ)).unwrap().holds);
    }
}
