mod common;

use common::{element, product, word};
use parabolic_twist::hopf::{counit_left, counit_right, twist_coproduct_with, twisted_coassociativity_check};
use parabolic_twist::pbw::{straighten, ParamPoly};
use parabolic_twist::repmat::{evaluate, PolyMatrix, RepMap};
use parabolic_twist::twists::{build, build_inverse, TwistKind, TwistSpec};
use parabolic_twist::{TensorElem2, UElem, Q};
use proptest::prelude::*;
use std::sync::OnceLock;

const D: u32 = 4;

fn parabolic() -> &'static (TensorElem2, TensorElem2) {
    static F: OnceLock<(TensorElem2, TensorElem2)> = OnceLock::new();
    F.get_or_init(|| {
        let spec = TwistSpec::new(TwistKind::Parabolic);
        (build::<Q>(&spec, D).unwrap(), build_inverse::<Q>(&spec, D).unwrap())
    })
}

fn fund() -> RepMap<Q> {
    RepMap::fundamental()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn straightening_is_confluent(w in word(6), split in 0usize..7) {
        let one = ParamPoly::one(None);
        let direct = straighten(&w, &one);
        prop_assert_eq!(&direct, &product(&w, None));
        let k = split.min(w.len());
        let joined = straighten(&w[..k], &one).mul(&straighten(&w[k..], &one)).unwrap();
        prop_assert_eq!(&direct, &joined);
        let matrices = w.iter().fold(PolyMatrix::identity(3), |acc, &g| acc.mul(fund().image(g)).unwrap());
        prop_assert_eq!(evaluate(&fund(), &direct), matrices);
    }

    #[test]
    fn representation_is_multiplicative(x in element(3, 3, 0, None), y in element(3, 3, 0, None)) {
        let rep = fund();
        let xy = x.mul(&y).unwrap();
        prop_assert_eq!(evaluate(&rep, &xy), evaluate(&rep, &x).mul(&evaluate(&rep, &y)).unwrap());
    }

    #[test]
    fn multiplication_is_associative(
        x in element(2, 3, 0, None),
        y in element(2, 3, 0, None),
        z in element(2, 3, 0, None),
    ) {
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn exp_and_log_are_inverse(x in element(3, 2, 1, Some(5))) {
        prop_assert_eq!(&x.exp_series().unwrap().log_series().unwrap(), &x);
        let one_plus = UElem::one(Some(5)).add(&x);
        prop_assert_eq!(one_plus.log_series().unwrap().exp_series().unwrap(), one_plus);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn twisted_coproduct_is_multiplicative(x in element(2, 2, 0, Some(D)), y in element(2, 2, 0, Some(D))) {
        let (f, finv) = parabolic();
        let dxy = twist_coproduct_with(f, finv, &x.mul(&y).unwrap()).unwrap();
        let dx_dy = twist_coproduct_with(f, finv, &x).unwrap().mul(&twist_coproduct_with(f, finv, &y).unwrap()).unwrap();
        prop_assert_eq!(dxy, dx_dy);
    }

    #[test]
    fn twisted_coproduct_keeps_the_counit(x in element(3, 3, 0, Some(D))) {
        let (f, finv) = parabolic();
        let dx = twist_coproduct_with(f, finv, &x).unwrap();
        prop_assert_eq!(&counit_left(&dx), &x);
        prop_assert_eq!(&counit_right(&dx), &x);
    }

    #[test]
    fn twisted_coproduct_is_coassociative(x in element(2, 2, 0, Some(D))) {
        let (f, finv) = parabolic();
        prop_assert!(twisted_coassociativity_check(f, finv, &x).unwrap().holds);
    }
}
