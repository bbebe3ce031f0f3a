//! Strategies shared by the property suites.
#![allow(dead_code)]

use parabolic_twist::liealg::GenId;
use parabolic_twist::pbw::{straighten, PExp, ParamPoly};
use parabolic_twist::{UElem, Q};
use proptest::prelude::*;

pub fn gen_id() -> impl Strategy<Value = GenId> {
    (0usize..9).prop_map(GenId::from_index)
}

pub fn word(max_len: usize) -> impl Strategy<Value = Vec<GenId>> {
    prop::collection::vec(gen_id(), 0..=max_len)
}

pub fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

/// A coefficient `c ξ^a ζ^b` with `min_degree <= a + b <= 2`.
pub fn coeff(min_degree: u32, trunc: Option<u32>) -> impl Strategy<Value = ParamPoly<Q>> {
    (rational(), 0u16..=2, 0u16..=2)
        .prop_filter("degree window", move |(_, a, b)| {
            let d = (*a + *b) as u32;
            d >= min_degree && d <= 2
        })
        .prop_map(move |(c, a, b)| ParamPoly::monomial(c, PExp::new(a, b), trunc))
}

/// A sum of up to `terms` straightened words of length `<= len`.
pub fn element(terms: usize, len: usize, min_degree: u32, trunc: Option<u32>) -> impl Strategy<Value = UElem> {
    prop::collection::vec((word(len), coeff(min_degree, trunc)), 1..=terms)
        .prop_map(move |parts| parts.iter().fold(UElem::zero(trunc), |acc, (w, c)| acc.add(&straighten(w, c))))
}

/// `g1 g2 ... gn` multiplied left to right.
pub fn product(word: &[GenId], trunc: Option<u32>) -> UElem {
    word.iter().fold(UElem::one(trunc), |acc, &g| acc.mul(&UElem::generator(g, trunc)).unwrap())
}
