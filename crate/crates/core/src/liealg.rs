//! gl(3) in the matrix-unit basis: structure constants, the distinguished
//! Cartan combinations, the parabolic subalgebra and classical r-matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::scalar::Scalar;
use crate::sparse::accumulate;

/// A matrix unit `E_ij`.
///
/// The derived ordering is the PBW order used everywhere downstream:
/// lowering, then Cartan, then raising generators.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(u8);

const ORDER: [(u8, u8); 9] = [(2, 1), (3, 1), (3, 2), (1, 1), (2, 2), (3, 3), (1, 2), (1, 3), (2, 3)];

impl GenId {
    pub const E21: GenId = GenId(0);
    pub const E31: GenId = GenId(1);
    pub const E32: GenId = GenId(2);
    pub const E11: GenId = GenId(3);
    pub const E22: GenId = GenId(4);
    pub const E33: GenId = GenId(5);
    pub const E12: GenId = GenId(6);
    pub const E13: GenId = GenId(7);
    pub const E23: GenId = GenId(8);

    pub const COUNT: usize = 9;

    /// All nine generators in PBW order.
    pub fn all() -> impl Iterator<Item = GenId> {
        (0..9u8).map(GenId)
    }

    /// `E_ij` for `i, j ∈ {1, 2, 3}`.
    pub fn new(row: u8, col: u8) -> Option<GenId> {
        ORDER.iter().position(|&rc| rc == (row, col)).map(|p| GenId(p as u8))
    }

    pub fn from_index(index: usize) -> GenId {
        assert!(index < 9, "generator index out of range");
        GenId(index as u8)
    }

    /// Position in the PBW order.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn row(self) -> u8 {
        ORDER[self.index()].0
    }

    pub fn col(self) -> u8 {
        ORDER[self.index()].1
    }

    pub fn name(self) -> String {
        format!("E{}{}", self.row(), self.col())
    }

    pub fn parse(name: &str) -> Option<GenId> {
        let b = name.as_bytes();
        if b.len() != 3 || b[0] != b'E' {
            return None;
        }
        let digit = |c: u8| (b'1'..=b'3').contains(&c).then(|| c - b'0');
        GenId::new(digit(b[1])?, digit(b[2])?)
    }

    /// `[E_ij, E_kl] = δ_jk E_il − δ_il E_kj`, as at most two signed terms.
    pub fn bracket(self, other: GenId) -> impl Iterator<Item = (GenId, i64)> {
        let (i, j) = (self.row(), self.col());
        let (k, l) = (other.row(), other.col());
        let first = (j == k).then(|| (GenId::new(i, l).unwrap(), 1));
        let second = (i == l).then(|| (GenId::new(k, j).unwrap(), -1));
        let merged = match (first, second) {
            // [E_ij, E_ji] with i == j cancels
            (Some((a, _)), Some((b, _))) if a == b => [None, None],
            pair => [pair.0, pair.1],
        };
        merged.into_iter().flatten()
    }
}

impl fmt::Debug for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}{}", self.row(), self.col())
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}{}", self.row(), self.col())
    }
}

/// An element of gl(3), sparse in the matrix-unit basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LieElem<S> {
    coeffs: BTreeMap<GenId, S>,
}

impl<S: Scalar> LieElem<S> {
    pub fn zero() -> Self {
        LieElem { coeffs: BTreeMap::new() }
    }

    pub fn generator(g: GenId) -> Self {
        Self::from_terms([(g, S::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (GenId, S)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (g, c) in terms {
            accumulate(&mut coeffs, g, c);
        }
        LieElem { coeffs }
    }

    pub fn coeff(&self, g: GenId) -> S {
        self.coeffs.get(&g).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (GenId, &S)> {
        self.coeffs.iter().map(|(g, c)| (*g, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_terms(self.terms().map(|(g, c)| (g, c.clone() * s.clone())))
    }

    /// `H13⊥ = (E11 − 2E22 + E33)/3`.
    pub fn h13_perp() -> Self {
        Self::from_terms([(GenId::E11, S::ratio(1, 3)), (GenId::E22, S::ratio(-2, 3)), (GenId::E33, S::ratio(1, 3))])
    }

    /// `H23⊥ = (2E11 − E22 − E33)/3`.
    pub fn h23_perp() -> Self {
        Self::from_terms([(GenId::E11, S::ratio(2, 3)), (GenId::E22, S::ratio(-1, 3)), (GenId::E33, S::ratio(-1, 3))])
    }

    /// `H23 = E22 − E33`.
    pub fn h23() -> Self {
        Self::from_terms([(GenId::E22, S::one()), (GenId::E33, -S::one())])
    }
}

impl<S: Scalar> fmt::Display for LieElem<S> {
    /// `2/3*E11 - 1/3*E22 - 1/3*E33`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.coeffs.iter().enumerate() {
            let text = c.to_string();
            let (sign, mag) = match text.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", text),
            };
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                (_, s) => write!(f, " {s} ")?,
            }
            if mag == "1" {
                write!(f, "{g}")?;
            } else {
                write!(f, "{mag}*{g}")?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> Add for &LieElem<S> {
    type Output = LieElem<S>;
    fn add(self, rhs: &LieElem<S>) -> LieElem<S> {
        LieElem::from_terms(self.terms().chain(rhs.terms()).map(|(g, c)| (g, c.clone())))
    }
}

impl<S: Scalar> Sub for &LieElem<S> {
    type Output = LieElem<S>;
    fn sub(self, rhs: &LieElem<S>) -> LieElem<S> {
        self + &(-rhs)
    }
}

impl<S: Scalar> Neg for &LieElem<S> {
    type Output = LieElem<S>;
    fn neg(self) -> LieElem<S> {
        LieElem::from_terms(self.terms().map(|(g, c)| (g, -c.clone())))
    }
}

/// Lie bracket, bilinear extension of the matrix-unit commutator.
pub fn bracket<S: Scalar>(a: &LieElem<S>, b: &LieElem<S>) -> LieElem<S> {
    let mut out = BTreeMap::new();
    for (ga, ca) in a.terms() {
        for (gb, cb) in b.terms() {
            for (g, sign) in ga.bracket(gb) {
                accumulate(&mut out, g, S::from_i64(sign) * ca.clone() * cb.clone());
            }
        }
    }
    LieElem { coeffs: out }
}

/// Basis of the parabolic subalgebra: the Borel subalgebra of sl(3)
/// extended by `E32`.
pub fn parabolic_basis<S: Scalar>() -> Vec<LieElem<S>> {
    vec![
        LieElem::h13_perp(),
        LieElem::h23_perp(),
        LieElem::generator(GenId::E12),
        LieElem::generator(GenId::E13),
        LieElem::generator(GenId::E23),
        LieElem::generator(GenId::E32),
    ]
}

/// Whether `x` lies in the span of the parabolic subalgebra: no lowering
/// component other than `E32` and a traceless diagonal part.
pub fn in_parabolic_span<S: Scalar>(x: &LieElem<S>) -> bool {
    let allowed = [GenId::E11, GenId::E22, GenId::E33, GenId::E12, GenId::E13, GenId::E23, GenId::E32];
    if x.terms().any(|(g, _)| !allowed.contains(&g)) {
        return false;
    }
    // H13⊥ and H23⊥ span the traceless diagonal matrices.
    let trace = x.coeff(GenId::E11) + x.coeff(GenId::E22) + x.coeff(GenId::E33);
    trace.is_zero()
}

/// Element of Λ²(gl(3)); `a ∧ b = a ⊗ b − b ⊗ a`.
///
/// Stored on ordered pairs `(a, b)` with `a < b`; the swapped orientation is
/// folded in with a sign.
#[derive(Clone, Debug, PartialEq)]
pub struct WedgeElem<S> {
    terms: BTreeMap<(GenId, GenId), S>,
}

impl<S: Scalar> WedgeElem<S> {
    pub fn zero() -> Self {
        WedgeElem { terms: BTreeMap::new() }
    }

    /// Bilinear `x ∧ y`.
    pub fn wedge(x: &LieElem<S>, y: &LieElem<S>) -> Self {
        let mut out = Self::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                out.push(a, b, ca.clone() * cb.clone());
            }
        }
        out
    }

    fn push(&mut self, a: GenId, b: GenId, c: S) {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => accumulate(&mut self.terms, (a, b), c),
            std::cmp::Ordering::Greater => accumulate(&mut self.terms, (b, a), -c),
            std::cmp::Ordering::Equal => {}
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((GenId, GenId), &S)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in self.terms() {
            out.push(a, b, c.clone() * s.clone());
        }
        out
    }

    /// Full tensor `Σ c (a⊗b − b⊗a)`.
    pub fn to_tensor(&self) -> LieTensor2<S> {
        let mut t = BTreeMap::new();
        for ((a, b), c) in self.terms() {
            accumulate(&mut t, (a, b), c.clone());
            accumulate(&mut t, (b, a), -c.clone());
        }
        LieTensor2 { terms: t }
    }
}

impl<S: Scalar> Add for &WedgeElem<S> {
    type Output = WedgeElem<S>;
    fn add(self, rhs: &WedgeElem<S>) -> WedgeElem<S> {
        let mut out = self.clone();
        for ((a, b), c) in rhs.terms() {
            out.push(a, b, c.clone());
        }
        out
    }
}

/// Element of `g ⊗ g` in the matrix-unit basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LieTensor2<S> {
    terms: BTreeMap<(GenId, GenId), S>,
}

impl<S: Scalar> LieTensor2<S> {
    pub fn terms(&self) -> impl Iterator<Item = ((GenId, GenId), &S)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Exchange of the tensor legs.
    pub fn swap(&self) -> Self {
        let mut t = BTreeMap::new();
        for ((a, b), c) in self.terms() {
            accumulate(&mut t, (b, a), c.clone());
        }
        LieTensor2 { terms: t }
    }

    pub fn neg(&self) -> Self {
        LieTensor2 { terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect() }
    }
}

/// Element of `g ⊗ g ⊗ g`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieTensor3<S> {
    terms: BTreeMap<[GenId; 3], S>,
}

impl<S: Scalar> LieTensor3<S> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ([GenId; 3], &S)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `[[r, r]] = [r12, r13] + [r12, r23] + [r13, r23]`.
///
/// No overall normalization is applied; only vanishing is meaningful.
pub fn cybe_bracket<S: Scalar>(r: &WedgeElem<S>) -> LieTensor3<S> {
    let t: Vec<((GenId, GenId), S)> = r.to_tensor().terms().map(|(k, c)| (k, c.clone())).collect();
    let mut out = BTreeMap::new();
    for ((a1, b1), c1) in &t {
        for ((a2, b2), c2) in &t {
            let c = c1.clone() * c2.clone();
            // [r12, r13]: [a1, a2] ⊗ b1 ⊗ b2
            for (g, s) in a1.bracket(*a2) {
                accumulate(&mut out, [g, *b1, *b2], S::from_i64(s) * c.clone());
            }
            // [r12, r23]: a1 ⊗ [b1, a2] ⊗ b2
            for (g, s) in b1.bracket(*a2) {
                accumulate(&mut out, [*a1, g, *b2], S::from_i64(s) * c.clone());
            }
            // [r13, r23]: a1 ⊗ a2 ⊗ [b1, b2]
            for (g, s) in b1.bracket(*b2) {
                accumulate(&mut out, [*a1, *a2, g], S::from_i64(s) * c.clone());
            }
        }
    }
    LieTensor3 { terms: out }
}

/// `r(η) = H23⊥ ∧ E13 + E12 ∧ E23 + η H13⊥ ∧ E32`.
pub fn r_parabolic<S: Scalar>(eta: &S) -> WedgeElem<S> {
    let e = |g| LieElem::generator(g);
    let first = WedgeElem::wedge(&LieElem::h23_perp(), &e(GenId::E13));
    let second = WedgeElem::wedge(&e(GenId::E12), &e(GenId::E23));
    let third = WedgeElem::wedge(&LieElem::h13_perp(), &e(GenId::E32)).scale(eta);
    &(&first + &second) + &third
}

/// `[[r(η), r(η)]] = 0` as a polynomial identity in `η`: the bracket is
/// quadratic in `η`, so vanishing at three points suffices.
pub fn cybe_parabolic_identically<S: Scalar>() -> bool {
    [0, 1, -1].iter().all(|&n| cybe_bracket(&r_parabolic(&S::from_i64(n))).is_zero())
}
