//! Elements of `U^{⊗N}` with parameter-polynomial coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use super::monomial::{mul_monomials, straighten_word, IntExpansion, PBWMonomial};
use super::poly::{combine_trunc, PExp, ParamPoly};
use crate::error::{AlgebraError, Result};
use crate::liealg::{GenId, LieElem};
use crate::scalar::Scalar;
use crate::sparse::accumulate_hashed;

/// Sparse sum of `N`-fold monomial tensors with [`ParamPoly`] coefficients.
///
/// Each tensor leg is kept in its own PBW normal form; legs never commute
/// past each other. `N = 1` is the enveloping algebra itself.
#[derive(Clone, Debug)]
pub struct Elem<S, const N: usize> {
    terms: BTreeMap<[PBWMonomial; N], ParamPoly<S>>,
    trunc: Option<u32>,
}

pub type UElem<S> = Elem<S, 1>;

impl<S: Scalar, const N: usize> PartialEq for Elem<S, N> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

/// Products with fewer candidate pairs than this stay on one thread.
const PARALLEL_THRESHOLD: usize = 4096;

fn check_trunc(a: Option<u32>, b: Option<u32>) -> Result<Option<u32>> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(AlgebraError::TruncationMismatch { left: a, right: b }),
        _ => Ok(combine_trunc(a, b)),
    }
}

impl<S: Scalar, const N: usize> Elem<S, N> {
    pub fn zero(trunc: Option<u32>) -> Self {
        Elem { terms: BTreeMap::new(), trunc }
    }

    pub fn one(trunc: Option<u32>) -> Self {
        Self::scalar(ParamPoly::one(trunc))
    }

    /// `c · 1⊗…⊗1`.
    pub fn scalar(c: ParamPoly<S>) -> Self {
        Self::from_term([PBWMonomial::ONE; N], c)
    }

    pub fn from_term(key: [PBWMonomial; N], c: ParamPoly<S>) -> Self {
        let trunc = c.trunc();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        Elem { terms, trunc }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ([PBWMonomial; N], ParamPoly<S>)>, trunc: Option<u32>) -> Self {
        let mut out = Self::zero(trunc);
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    fn add_term(&mut self, key: [PBWMonomial; N], c: &ParamPoly<S>) {
        let c = c.clone().with_trunc(self.trunc);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&c);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn trunc(&self) -> Option<u32> {
        self.trunc
    }

    pub fn with_trunc(self, trunc: Option<u32>) -> Self {
        let trunc = combine_trunc(self.trunc, trunc);
        Self::from_terms(self.terms, trunc)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[PBWMonomial; N], &ParamPoly<S>)> {
        self.terms.iter()
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

    pub fn coeff(&self, key: &[PBWMonomial; N]) -> ParamPoly<S> {
        self.terms.get(key).cloned().unwrap_or_else(|| ParamPoly::zero(self.trunc))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone().with_trunc(other.trunc);
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Elem { terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(), trunc: self.trunc }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c.scale(s))), self.trunc)
    }

    pub fn scale_poly(&self, p: &ParamPoly<S>) -> Self {
        let trunc = combine_trunc(self.trunc, p.trunc());
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c.mul(p))), trunc)
    }

    /// Lowest total parameter degree among the coefficients.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.values().filter_map(ParamPoly::valuation).min()
    }

    /// Part of total parameter degree exactly `d`.
    pub fn homogeneous(&self, d: u32) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c.homogeneous(d))), self.trunc)
    }

    /// Coefficient of the unit tensor.
    pub fn unit_coeff(&self) -> ParamPoly<S> {
        self.coeff(&[PBWMonomial::ONE; N])
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.unit_coeff().is_one()
    }

    /// Product in `U^{⊗N}`, leg by leg.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let trunc = check_trunc(self.trunc, other.trunc)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(trunc));
        }
        // right factors sorted by valuation so the inner loop can stop early
        let mut right: Vec<(&[PBWMonomial; N], &ParamPoly<S>, u32)> =
            other.terms.iter().map(|(k, c)| (k, c, c.valuation().unwrap_or(0))).collect();
        right.sort_by_key(|t| t.2);
        let left: Vec<(&[PBWMonomial; N], &ParamPoly<S>, u32)> =
            self.terms.iter().map(|(k, c)| (k, c, c.valuation().unwrap_or(0))).collect();

        let work = |chunk: &[(&[PBWMonomial; N], &ParamPoly<S>, u32)]| {
            let mut acc: HashMap<([PBWMonomial; N], PExp), S> = HashMap::new();
            for &(ka, ca, va) in chunk {
                for &(kb, cb, vb) in &right {
                    if trunc.is_some_and(|d| va + vb > d) {
                        break;
                    }
                    let coeff = ca.mul(cb).with_trunc(trunc);
                    if coeff.is_zero() {
                        continue;
                    }
                    let legs: Vec<IntExpansion> = (0..N).map(|l| mul_monomials(ka[l], kb[l])).collect();
                    for_each_leg_product(&legs, |key, n| {
                        let factor = S::from_i64(n);
                        for (e, c) in coeff.terms() {
                            let v = if n == 1 { c.clone() } else { c.clone() * factor.clone() };
                            accumulate_hashed(&mut acc, (key, e), v);
                        }
                    });
                }
            }
            acc
        };

        let pairs = left.len() * right.len();
        let acc = if S::is_exact() && pairs >= PARALLEL_THRESHOLD && left.len() > 1 {
            let chunk = (left.len() / (4 * rayon::current_num_threads())).max(1);
            left.par_chunks(chunk).map(work).reduce(HashMap::new, |mut a, b| {
                if a.len() < b.len() {
                    return merge(b, a);
                }
                for (k, v) in b {
                    accumulate_hashed(&mut a, k, v);
                }
                a
            })
        } else {
            work(&left)
        };
        Ok(Self::collect(acc, trunc))
    }

    fn collect(acc: HashMap<([PBWMonomial; N], PExp), S>, trunc: Option<u32>) -> Self {
        let mut grouped: BTreeMap<[PBWMonomial; N], Vec<(PExp, S)>> = BTreeMap::new();
        for ((k, e), c) in acc {
            grouped.entry(k).or_default().push((e, c));
        }
        let terms = grouped
            .into_iter()
            .map(|(k, v)| (k, ParamPoly::from_terms(v, trunc)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Elem { terms, trunc }
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut out = Self::one(self.trunc);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// `Σ xⁿ/n!` for an argument of parameter valuation at least one.
    pub fn exp_series(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::one(self.trunc));
        }
        let d = self.require_small()?;
        let mut term = Self::one(self.trunc);
        let mut sum = term.clone();
        for n in 1..=d {
            term = term.mul(self)?.scale(&S::ratio(1, n as i64));
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
        }
        Ok(sum)
    }

    /// `Σ (−1)^{k+1} nᵏ/k` for `self = 1 + n`, `n` of valuation at least one.
    pub fn log_series(&self) -> Result<Self> {
        let n = self.sub(&Self::one(self.trunc));
        if n.is_zero() {
            return Ok(Self::zero(self.trunc));
        }
        let d = n.require_small()?;
        let mut power = n.clone();
        let mut sum = n.clone();
        for k in 2..=d {
            power = power.mul(&n)?;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 0 { -1 } else { 1 };
            sum = sum.add(&power.scale(&S::ratio(sign, k as i64)));
        }
        Ok(sum)
    }

    /// `(1 + n)^{-1} = Σ (−n)ᵏ` for `self = 1 + n`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.sub(&Self::one(self.trunc));
        if n.is_zero() {
            return Ok(Self::one(self.trunc));
        }
        let d = match n.require_small() {
            Ok(d) => d,
            Err(AlgebraError::Valuation) => return Err(AlgebraError::NotInvertible),
            Err(e) => return Err(e),
        };
        let minus_n = n.neg();
        let mut power = Self::one(self.trunc);
        let mut sum = power.clone();
        for _ in 1..=d {
            power = power.mul(&minus_n)?;
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power);
        }
        Ok(sum)
    }

    /// Checks valuation ≥ 1 and returns the truncation degree.
    fn require_small(&self) -> Result<u32> {
        if self.valuation() == Some(0) {
            return Err(AlgebraError::Valuation);
        }
        self.trunc.ok_or(AlgebraError::Untruncated)
    }

    /// Evaluates every coefficient at `ξ = xi`, `ζ = zeta`.
    pub fn substitute_params(&self, xi: &S, zeta: &S) -> Self {
        Self::from_terms(
            self.terms.iter().map(|(k, c)| (*k, ParamPoly::constant(c.eval(xi, zeta), self.trunc))),
            self.trunc,
        )
    }

    /// Substitutes parameter polynomials, e.g. `ζ → ηξ` or `ζ → 0`.
    pub fn compose_params(&self, xi: &ParamPoly<S>, zeta: &ParamPoly<S>) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c.compose(xi, zeta))), self.trunc)
    }

    /// Lowest-degree nonzero term, for residual summaries.
    pub fn leading_term(&self) -> Option<(u32, [PBWMonomial; N], ParamPoly<S>)> {
        let d = self.valuation()?;
        self.terms.iter().find(|(_, c)| c.valuation() == Some(d)).map(|(k, c)| (d, *k, c.homogeneous(d)))
    }
}

fn merge<K: std::hash::Hash + Eq, S: Scalar>(mut a: HashMap<K, S>, b: HashMap<K, S>) -> HashMap<K, S> {
    for (k, v) in b {
        accumulate_hashed(&mut a, k, v);
    }
    a
}

/// Calls `f` on every combination of per-leg expansion terms.
fn for_each_leg_product<const N: usize>(legs: &[IntExpansion], mut f: impl FnMut([PBWMonomial; N], i64)) {
    let mut idx = [0usize; N];
    if legs.iter().any(|l| l.is_empty()) {
        return;
    }
    loop {
        let mut key = [PBWMonomial::ONE; N];
        let mut c: i64 = 1;
        for l in 0..N {
            let (m, x) = legs[l][idx[l]];
            key[l] = m;
            c = c.checked_mul(x).expect("straightening coefficient overflow");
        }
        f(key, c);
        let mut l = N;
        loop {
            if l == 0 {
                return;
            }
            l -= 1;
            idx[l] += 1;
            if idx[l] < legs[l].len() {
                break;
            }
            idx[l] = 0;
        }
    }
}

impl<S: Scalar> Elem<S, 1> {
    pub fn generator(g: GenId, trunc: Option<u32>) -> Self {
        Self::from_term([PBWMonomial::generator(g)], ParamPoly::one(trunc))
    }

    pub fn monomial(m: PBWMonomial, c: ParamPoly<S>) -> Self {
        Self::from_term([m], c)
    }

    pub fn from_lie(x: &LieElem<S>, trunc: Option<u32>) -> Self {
        Self::from_terms(
            x.terms().map(|(g, c)| ([PBWMonomial::generator(g)], ParamPoly::constant(c.clone(), trunc))),
            trunc,
        )
    }

    /// `ln(1 + t·E_g)`.
    pub fn sigma(g: GenId, t: &ParamPoly<S>) -> Result<Self> {
        let trunc = t.trunc();
        let arg = Self::generator(g, trunc).scale_poly(t);
        arg.add(&Self::one(trunc)).log_series()
    }

    pub fn terms_1(&self) -> impl Iterator<Item = (PBWMonomial, &ParamPoly<S>)> {
        self.terms.iter().map(|(k, c)| (k[0], c))
    }
}

/// Normal form of `coeff · w₁ w₂ ⋯ w_k` for an arbitrary generator word.
pub fn straighten<S: Scalar>(word: &[GenId], coeff: &ParamPoly<S>) -> UElem<S> {
    let trunc = coeff.trunc();
    Elem::from_terms(straighten_word(word).iter().map(|&(m, n)| ([m], coeff.scale(&S::from_i64(n)))), trunc)
}

/// `a ⊗ b`.
pub fn tensor<S: Scalar>(a: &UElem<S>, b: &UElem<S>) -> Result<Elem<S, 2>> {
    let trunc = check_trunc(a.trunc, b.trunc)?;
    let mut out = Elem::zero(trunc);
    for (ka, ca) in a.terms() {
        for (kb, cb) in b.terms() {
            out.add_term([ka[0], kb[0]], &ca.mul(cb));
        }
    }
    Ok(out)
}

/// `a ⊗ b` with `a ∈ U⊗U`.
pub fn tensor_21<S: Scalar>(a: &Elem<S, 2>, b: &UElem<S>) -> Result<Elem<S, 3>> {
    let trunc = check_trunc(a.trunc, b.trunc)?;
    let mut out = Elem::zero(trunc);
    for (ka, ca) in a.terms() {
        for (kb, cb) in b.terms() {
            out.add_term([ka[0], ka[1], kb[0]], &ca.mul(cb));
        }
    }
    Ok(out)
}

/// `a ⊗ b` with `b ∈ U⊗U`.
pub fn tensor_12<S: Scalar>(a: &UElem<S>, b: &Elem<S, 2>) -> Result<Elem<S, 3>> {
    let trunc = check_trunc(a.trunc, b.trunc)?;
    let mut out = Elem::zero(trunc);
    for (ka, ca) in a.terms() {
        for (kb, cb) in b.terms() {
            out.add_term([ka[0], kb[0], kb[1]], &ca.mul(cb));
        }
    }
    Ok(out)
}

impl<S: Scalar> Elem<S, 2> {
    /// `a⊗b ↦ b⊗a`.
    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| ([k[1], k[0]], c.clone())), self.trunc)
    }

    /// Relabels legs: `out[positions[l]] = leg l`, unit on the free leg.
    pub(crate) fn place(&self, positions: [usize; 2]) -> Elem<S, 3> {
        Elem::from_terms(
            self.terms.iter().map(|(k, c)| {
                let mut key = [PBWMonomial::ONE; 3];
                key[positions[0]] = k[0];
                key[positions[1]] = k[1];
                (key, c.clone())
            }),
            self.trunc,
        )
    }
}

impl<S: Scalar, const N: usize> Elem<S, N> {
    /// Applies `f` to the monomial in leg `leg`, expanding linearly.
    pub(crate) fn map_leg<const M: usize>(
        &self,
        f: impl Fn([PBWMonomial; N]) -> Vec<([PBWMonomial; M], i64)>,
    ) -> Elem<S, M> {
        let mut acc: HashMap<([PBWMonomial; M], PExp), S> = HashMap::new();
        for (k, c) in &self.terms {
            for (key, n) in f(*k) {
                let factor = S::from_i64(n);
                for (e, v) in c.terms() {
                    accumulate_hashed(&mut acc, (key, e), v.clone() * factor.clone());
                }
            }
        }
        Elem::collect(acc, self.trunc)
    }
}

impl<S: Scalar, const N: usize> fmt::Display for Elem<S, N> {
    /// `(1 + x)*E12 (x) 1 + ...`; unit coefficients are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let legs: Vec<String> = k.iter().map(|m| m.to_string()).collect();
            let body = legs.join(" (x) ");
            if c.is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "({c})*{body}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;
    type U = UElem<Q>;

    const D: Option<u32> = Some(6);

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn g(x: GenId) -> U {
        U::generator(x, D)
    }

    fn xi() -> ParamPoly<Q> {
        ParamPoly::xi(D)
    }

    fn zeta() -> ParamPoly<Q> {
        ParamPoly::zeta(D)
    }

    #[test]
    fn unit_and_commuting_square() {
        let x = g(GenId::E23).add(&g(GenId::E32).scale(&q(3, 2)));
        assert_eq!(U::one(D).mul(&x).unwrap(), x);
        assert_eq!(x.mul(&U::one(D)).unwrap(), x);
        let e13 = g(GenId::E13);
        let sq = e13.mul(&e13).unwrap();
        assert_eq!(sq.len(), 1);
        assert_eq!(sq.terms().next().unwrap().0[0].exponent(GenId::E13), 2);
    }

    #[test]
    fn truncation_mismatch_is_an_error() {
        let a = U::generator(GenId::E12, Some(3));
        let b = U::generator(GenId::E12, Some(4));
        assert!(matches!(a.mul(&b), Err(AlgebraError::TruncationMismatch { .. })));
        // an untruncated factor adopts the other bound
        assert!(a.mul(&U::generator(GenId::E12, None)).is_ok());
    }

    #[test]
    fn exp_of_single_generator() {
        let x = g(GenId::E13).scale_poly(&xi());
        let e = x.exp_series().unwrap();
        assert_eq!(e.len(), 7);
        let mut fact = 1i64;
        for n in 0..=6u8 {
            if n > 0 {
                fact *= n as i64;
            }
            let mut exps = [0u8; 9];
            exps[GenId::E13.index()] = n;
            let c = e.coeff(&[PBWMonomial::from_exponents(exps)]);
            assert_eq!(c, ParamPoly::monomial(q(1, fact), PExp::new(n as u16, 0), D));
        }
        assert!(U::zero(D).exp_series().unwrap().is_one());
    }

    #[test]
    fn exp_inverse_noncommuting() {
        let x = g(GenId::E23).add(&g(GenId::E12)).scale_poly(&xi());
        let p = x.exp_series().unwrap().mul(&x.neg().exp_series().unwrap()).unwrap();
        assert!(p.is_one());
    }

    #[test]
    fn series_valuation_errors() {
        assert_eq!(g(GenId::E13).exp_series().unwrap_err(), AlgebraError::Valuation);
        let bad = U::one(D).add(&g(GenId::E13));
        assert_eq!(bad.log_series().unwrap_err(), AlgebraError::Valuation);
        assert_eq!(bad.inverse().unwrap_err(), AlgebraError::NotInvertible);
        let untruncated = U::generator(GenId::E13, None).scale_poly(&ParamPoly::xi(None));
        assert_eq!(untruncated.exp_series().unwrap_err(), AlgebraError::Untruncated);
    }

    #[test]
    fn log_examples() {
        assert!(U::one(D).log_series().unwrap().is_zero());
        let s = U::sigma(GenId::E13, &xi()).unwrap();
        let e1 = [PBWMonomial::generator(GenId::E13)];
        let mut sq = [0u8; 9];
        sq[GenId::E13.index()] = 2;
        assert_eq!(s.coeff(&e1), xi());
        assert_eq!(s.coeff(&[PBWMonomial::from_exponents(sq)]), xi().pow(2).scale(&q(-1, 2)));
        let one_plus = U::one(D).add(&g(GenId::E32).scale_poly(&zeta()));
        let round = one_plus.log_series().unwrap().exp_series().unwrap();
        assert_eq!(round, one_plus);
    }

    #[test]
    fn sigma_commutator_relation() {
        // [σ13(ξ), E32] = ξ E12 e^{-σ13(ξ)}
        let s = U::sigma(GenId::E13, &xi()).unwrap();
        let e32 = g(GenId::E32);
        let lhs = s.mul(&e32).unwrap().sub(&e32.mul(&s).unwrap());
        let rhs = g(GenId::E12).scale_poly(&xi()).mul(&s.neg().exp_series().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution() {
        let s = U::sigma(GenId::E13, &xi()).unwrap();
        assert!(s.substitute_params(&q(0, 1), &q(0, 1)).is_zero());
        let x = g(GenId::E12).scale_poly(&xi().mul(&zeta()));
        assert_eq!(x.substitute_params(&q(1, 1), &q(1, 1)), g(GenId::E12));
    }

    #[test]
    fn straighten_matches_mul() {
        let c = ParamPoly::constant(q(2, 1), D);
        let s = straighten(&[GenId::E23, GenId::E12], &c);
        let want = g(GenId::E12).mul(&g(GenId::E23)).unwrap().sub(&g(GenId::E13)).scale(&q(2, 1));
        assert_eq!(s, want);
        assert_eq!(g(GenId::E23).mul(&g(GenId::E12)).unwrap(), want.scale(&q(1, 2)));
    }

    #[test]
    fn inverse_of_exponential() {
        let s = U::sigma(GenId::E32, &zeta()).unwrap();
        let f = s.exp_series().unwrap();
        assert_eq!(f.inverse().unwrap(), s.neg().exp_series().unwrap());
    }

    #[test]
    fn tensor_swap() {
        let t = tensor(&g(GenId::E12), &g(GenId::E23)).unwrap();
        assert_eq!(t.swap(), tensor(&g(GenId::E23), &g(GenId::E12)).unwrap());
        assert_eq!(t.to_string(), "E12 (x) E23");
    }
}
