//! Coalgebra structure of `U(gl(3))`: the primitive coproduct, the counit,
//! leg embeddings, twisted coproducts and the Drinfeld twist equations.

use crate::error::{AlgebraError, Result};
use crate::pbw::{Elem, PBWMonomial, ParamPoly, UElem};
use crate::scalar::Scalar;

pub type TensorElem2<S> = Elem<S, 2>;
pub type TensorElem3<S> = Elem<S, 3>;

/// Placement of a two-leg element inside `U⊗U⊗U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Legs {
    L12,
    L13,
    L23,
}

impl Legs {
    fn positions(self) -> [usize; 2] {
        match self {
            Legs::L12 => [0, 1],
            Legs::L13 => [0, 2],
            Legs::L23 => [1, 2],
        }
    }
}

/// Outcome of an identity check: whether both sides agree and their
/// difference (left minus right).
#[derive(Clone, Debug)]
pub struct CheckOutcome<S, const N: usize> {
    pub holds: bool,
    pub residual: Elem<S, N>,
}

impl<S: Scalar, const N: usize> CheckOutcome<S, N> {
    pub fn from_sides(left: &Elem<S, N>, right: &Elem<S, N>) -> Self {
        let residual = left.sub(right);
        CheckOutcome { holds: residual.is_zero(), residual }
    }

    /// Total parameter degree of the first nonvanishing residual term.
    pub fn failure_degree(&self) -> Option<u32> {
        self.residual.valuation()
    }
}

fn binomial(n: u8, k: u8) -> i64 {
    (0..k as i64).fold(1, |acc, i| acc * (n as i64 - i) / (i + 1))
}

/// `Δ(Π x^a) = Π (x⊗1 + 1⊗x)^a`; both legs stay in PBW order.
fn split_monomial(m: PBWMonomial) -> Vec<(PBWMonomial, PBWMonomial, i64)> {
    let exps = m.exponents();
    let mut out = vec![([0u8; 9], [0u8; 9], 1i64)];
    for (g, &a) in exps.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
        for (left, right, c) in &out {
            for k in 0..=a {
                let (mut l, mut r) = (*left, *right);
                l[g] = k;
                r[g] = a - k;
                next.push((l, r, c * binomial(a, k)));
            }
        }
        out = next;
    }
    out.into_iter().map(|(l, r, c)| (PBWMonomial::from_exponents(l), PBWMonomial::from_exponents(r), c)).collect()
}

/// Undeformed coproduct, `Δ(g) = g⊗1 + 1⊗g` on generators.
pub fn coproduct<S: Scalar>(x: &UElem<S>) -> TensorElem2<S> {
    x.map_leg(|[m]| split_monomial(m).into_iter().map(|(l, r, c)| ([l, r], c)).collect())
}

/// `(Δ⊗id)X`.
pub fn coproduct_left<S: Scalar>(x: &TensorElem2<S>) -> TensorElem3<S> {
    x.map_leg(|[a, b]| split_monomial(a).into_iter().map(|(l, r, c)| ([l, r, b], c)).collect())
}

/// `(id⊗Δ)X`.
pub fn coproduct_right<S: Scalar>(x: &TensorElem2<S>) -> TensorElem3<S> {
    x.map_leg(|[a, b]| split_monomial(b).into_iter().map(|(l, r, c)| ([a, l, r], c)).collect())
}

/// `ε(x)`: the coefficient of the unit monomial.
pub fn counit<S: Scalar>(x: &UElem<S>) -> ParamPoly<S> {
    x.unit_coeff()
}

/// `(ε⊗id)X`.
pub fn counit_left<S: Scalar>(x: &TensorElem2<S>) -> UElem<S> {
    x.map_leg(|[a, b]| if a.is_one() { vec![([b], 1)] } else { vec![] })
}

/// `(id⊗ε)X`.
pub fn counit_right<S: Scalar>(x: &TensorElem2<S>) -> UElem<S> {
    x.map_leg(|[a, b]| if b.is_one() { vec![([a], 1)] } else { vec![] })
}

/// `X₁₂`, `X₁₃` or `X₂₃`: the unit goes on the omitted leg.
pub fn embed<S: Scalar>(x: &TensorElem2<S>, legs: Legs) -> TensorElem3<S> {
    x.place(legs.positions())
}

/// `F = 1⊗1 + N` with `N` of parameter valuation at least one.
fn require_invertible<S: Scalar, const N: usize>(f: &Elem<S, N>) -> Result<()> {
    let n = f.sub(&Elem::one(f.trunc()));
    if n.valuation() == Some(0) {
        return Err(AlgebraError::NotInvertible);
    }
    Ok(())
}

/// `F⁻¹` as a geometric series.
pub fn invert<S: Scalar>(f: &TensorElem2<S>) -> Result<TensorElem2<S>> {
    require_invertible(f)?;
    f.inverse()
}

/// `F₁₂ (Δ⊗id)F = F₂₃ (id⊗Δ)F`, up to the truncation degree of `F`.
pub fn cocycle_check<S: Scalar>(f: &TensorElem2<S>) -> Result<CheckOutcome<S, 3>> {
    require_invertible(f)?;
    let left = embed(f, Legs::L12).mul(&coproduct_left(f))?;
    let right = embed(f, Legs::L23).mul(&coproduct_right(f))?;
    Ok(CheckOutcome::from_sides(&left, &right))
}

/// `(ε⊗id)F = (id⊗ε)F = 1`.
pub fn counit_check<S: Scalar>(f: &TensorElem2<S>) -> bool {
    counit_left(f).is_one() && counit_right(f).is_one()
}

/// `Δ_F(x) = F Δ(x) F⁻¹`.
pub fn twist_coproduct<S: Scalar>(f: &TensorElem2<S>, x: &UElem<S>) -> Result<TensorElem2<S>> {
    let finv = invert(f)?;
    twist_coproduct_with(f, &finv, x)
}

/// `F Δ(x) F⁻¹` with a precomputed inverse.
pub fn twist_coproduct_with<S: Scalar>(
    f: &TensorElem2<S>,
    finv: &TensorElem2<S>,
    x: &UElem<S>,
) -> Result<TensorElem2<S>> {
    let trunc = f.trunc();
    let dx = coproduct(x).with_trunc(trunc);
    f.mul(&dx)?.mul(finv)
}

/// Coassociativity of a coproduct given by its values `Δ'(x)`:
/// `(Δ'⊗id)Δ'(x) = (id⊗Δ')Δ'(x)`, where `Δ'` is extended to the legs as
/// `F Δ(·) F⁻¹`.
pub fn twisted_coassociativity_check<S: Scalar>(
    f: &TensorElem2<S>,
    finv: &TensorElem2<S>,
    x: &UElem<S>,
) -> Result<CheckOutcome<S, 3>> {
    let dx = twist_coproduct_with(f, finv, x)?;
    // (Δ_F⊗id)Y = F₁₂ (Δ⊗id)Y F₁₂⁻¹ and similarly on the right
    let left = embed(f, Legs::L12).mul(&coproduct_left(&dx))?.mul(&embed(finv, Legs::L12))?;
    let right = embed(f, Legs::L23).mul(&coproduct_right(&dx))?.mul(&embed(finv, Legs::L23))?;
    Ok(CheckOutcome::from_sides(&left, &right))
}
