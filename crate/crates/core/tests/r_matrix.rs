use parabolic_twist::pbw::PExp;
use parabolic_twist::repmat::{
    qybe_check, r_expansion_matrix, r_matrix_fundamental, semiclassical_check, tensor_coefficient, triangularity_check,
    two_route_check, PolyMatrix,
};
use parabolic_twist::twists::{Param, TwistKind, TwistSpec};
use parabolic_twist::Q;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn r() -> PolyMatrix<Q> {
    r_matrix_fundamental(&Param::Formal, &Param::Formal).unwrap()
}

fn x(a: u16, b: u16) -> PExp {
    PExp::new(a, b)
}

#[test]
fn printed_higher_order_coefficients() {
    let r = r();
    assert_eq!(tensor_coefficient(&r, x(2, 0), (1, 3), (1, 3)), q(2, 9));
    assert_eq!(tensor_coefficient(&r, x(0, 2), (3, 2), (3, 2)), q(2, 9));
    assert_eq!(tensor_coefficient(&r, x(2, 2), (1, 2), (1, 2)), q(-2, 81));
    // 2/27 E12∧E32 ξζ²
    assert_eq!(tensor_coefficient(&r, x(1, 2), (1, 2), (3, 2)), q(2, 27));
    assert_eq!(tensor_coefficient(&r, x(1, 2), (3, 2), (1, 2)), q(-2, 27));
    // 1/27 E12∧E13 ξ²ζ
    assert_eq!(tensor_coefficient(&r, x(2, 1), (1, 2), (1, 3)), q(1, 27));
    assert_eq!(tensor_coefficient(&r, x(2, 1), (1, 3), (1, 2)), q(-1, 27));
}

#[test]
fn printed_first_order_coefficients() {
    let r = r();
    // E13∧(2/3 E11 - 1/3 E22 - 1/3 E33) + E23∧E12
    assert_eq!(tensor_coefficient(&r, x(1, 0), (1, 3), (1, 1)), q(2, 3));
    assert_eq!(tensor_coefficient(&r, x(1, 0), (1, 3), (2, 2)), q(-1, 3));
    assert_eq!(tensor_coefficient(&r, x(1, 0), (1, 1), (1, 3)), q(-2, 3));
    assert_eq!(tensor_coefficient(&r, x(1, 0), (2, 3), (1, 2)), q(1, 1));
    assert_eq!(tensor_coefficient(&r, x(1, 0), (1, 2), (2, 3)), q(-1, 1));
    // E32∧(1/3 E11 - 2/3 E22 + 1/3 E33)
    assert_eq!(tensor_coefficient(&r, x(0, 1), (3, 2), (2, 2)), q(-2, 3));
    assert_eq!(tensor_coefficient(&r, x(0, 1), (2, 2), (3, 2)), q(2, 3));
}

#[test]
fn mixed_order_grouping() {
    // 1/3 (E12⊗H + H⊗E12 + 1/3 (E13⊗E32 + E32⊗E13)) ζξ, H = H13⊥
    let r = r();
    assert_eq!(tensor_coefficient(&r, x(1, 1), (1, 2), (1, 1)), q(1, 9));
    assert_eq!(tensor_coefficient(&r, x(1, 1), (2, 2), (1, 2)), q(-2, 9));
    assert_eq!(tensor_coefficient(&r, x(1, 1), (1, 3), (3, 2)), q(1, 9));
    assert_eq!(tensor_coefficient(&r, x(1, 1), (3, 2), (1, 3)), q(1, 9));
}

#[test]
fn whole_expansion_is_reproduced() {
    let r = r();
    assert_eq!(r, r_expansion_matrix());
    let printed = [x(0, 0), x(1, 0), x(2, 0), x(0, 1), x(0, 2), x(1, 1), x(2, 2), x(1, 2), x(2, 1)];
    for e in r.exponents() {
        assert!(printed.contains(&e), "unexpected monomial {e:?}");
    }
}

#[test]
fn yang_baxter_and_unitarity() {
    let r = r();
    assert!(qybe_check(&r).unwrap().holds);
    assert!(triangularity_check(&r).unwrap().holds);
}

#[test]
fn specialized_parameters() {
    let r = r_matrix_fundamental::<Q>(&Param::Value(q(1, 2)), &Param::Value(q(-3, 1))).unwrap();
    assert!(qybe_check(&r).unwrap().holds);
    assert_eq!(
        r,
        r_expansion_matrix().compose_params(
            &parabolic_twist::pbw::ParamPoly::constant(q(1, 2), None),
            &parabolic_twist::pbw::ParamPoly::constant(q(-3, 1), None),
        )
    );
}

#[test]
fn first_order_term_is_minus_the_classical_r() {
    for eta in [q(0, 1), q(1, 1), q(2, 1), q(-1, 1), q(1, 3)] {
        let s = semiclassical_check(&eta).unwrap();
        assert!(s.order_zero_is_identity);
        assert!(s.matches, "eta = {eta}");
        assert_ne!(s.first_order, s.classical);
    }
}

#[test]
fn symbolic_and_matrix_routes_agree() {
    for kind in [TwistKind::Parabolic, TwistKind::PeriphericP, TwistKind::DR, TwistKind::EJ] {
        assert!(two_route_check::<Q>(&TwistSpec::new(kind), 5).unwrap().holds, "{kind}");
    }
}
