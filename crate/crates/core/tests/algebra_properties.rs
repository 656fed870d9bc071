use jastrow_core::algebra::poly::{imag_unit, ratio, HBAR};
use jastrow_core::algebra::{
    build_pi, pi_commutator_closed_form, Laurent, OperatorExpr, Perm, RationalCoeff, Scalar,
};
use proptest::prelude::*;

const N: usize = 3;

fn int(v: i64) -> Scalar {
    jastrow_core::algebra::build::scalar(v)
}

fn pair() -> impl Strategy<Value = (usize, usize)> {
    (0..N, 1..N).prop_map(|(i, d)| (i, (i + d) % N))
}

fn atom() -> impl Strategy<Value = OperatorExpr> {
    prop_oneof![
        (0..N).prop_map(|i| OperatorExpr::x(N, i)),
        (0..N).prop_map(|i| OperatorExpr::p(N, i)),
        pair().prop_map(|(i, j)| OperatorExpr::m(N, i, j)),
        pair()
            .prop_map(|(i, j)| OperatorExpr::coeff(RationalCoeff::inverse_difference(N, i, j, 1))),
        (-3i64..4).prop_map(|v| OperatorExpr::scalar(N, int(v))),
        Just(OperatorExpr::scalar(N, imag_unit())),
    ]
}

fn expr() -> impl Strategy<Value = OperatorExpr> {
    let word = prop::collection::vec(atom(), 1..4)
        .prop_map(|w| w.iter().skip(1).fold(w[0].clone(), |acc, a| acc.mul(a)));
    prop::collection::vec(word, 1..3).prop_map(|ws| OperatorExpr::sum(N, &ws))
}

fn perm() -> impl Strategy<Value = Perm> {
    prop::sample::select(Perm::all(N))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_stable(a in expr()) {
        let one = OperatorExpr::one(N);
        prop_assert_eq!(&a.mul(&one), &a);
        prop_assert_eq!(&one.mul(&a), &a);
        prop_assert_eq!(&a.add(&OperatorExpr::zero(N)), &a);
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn product_is_associative(a in expr(), b in expr(), c in expr()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn product_distributes(a in expr(), b in expr(), c in expr()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(b.add(&c).mul(&a), b.mul(&a).add(&c.mul(&a)));
    }

    #[test]
    fn dagger_is_an_involution(a in expr(), b in expr()) {
        prop_assert_eq!(&a.dagger().dagger(), &a);
        prop_assert_eq!(a.mul(&b).dagger(), b.dagger().mul(&a.dagger()));
    }

    #[test]
    fn relabel_is_conjugation(a in expr(), b in expr(), s in perm()) {
        let conj = OperatorExpr::exchange(s.clone())
            .mul(&a)
            .mul(&OperatorExpr::exchange(s.inverse()));
        let r = a.relabel(&s);
        prop_assert_eq!(&r, &conj);
        prop_assert_eq!(a.mul(&b).relabel(&s), r.mul(&b.relabel(&s)));
    }

    #[test]
    fn exchanges_swap_coordinates((i, j) in pair(), k in 0..N) {
        let m = OperatorExpr::m(N, i, j);
        let t = Perm::transposition(N, i, j);
        prop_assert_eq!(m.mul(&OperatorExpr::x(N, k)).mul(&m), OperatorExpr::x(N, t.apply(k)));
        prop_assert_eq!(m.mul(&OperatorExpr::p(N, k)).mul(&m), OperatorExpr::p(N, t.apply(k)));
        prop_assert_eq!(m.mul(&m), OperatorExpr::one(N));
    }

    #[test]
    fn canonical_commutation(i in 0..N, j in 0..N) {
        let c = OperatorExpr::x(N, i).commutator(&OperatorExpr::p(N, j));
        let hbar = RationalCoeff::param(N, HBAR)
            .scale(&imag_unit());
        let expected = if i == j { OperatorExpr::coeff(hbar) } else { OperatorExpr::zero(N) };
        prop_assert_eq!(c, expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn pi_commutator_closed_form_at_four((i, d) in (0usize..4, 1usize..4), linear in any::<bool>()) {
        let n = 4;
        let j = (i + d) % n;
        let v = if linear { Laurent::rational_linear() } else { Laurent::rational() };
        let lhs = build_pi(i, &v, n).unwrap().commutator(&build_pi(j, &v, n).unwrap());
        prop_assert_eq!(lhs, pi_commutator_closed_form(&v, n, i, j));
    }
}

#[test]
fn rational_coefficients_are_exact() {
    let third = RationalCoeff::scalar(N, ratio(1, 3));
    let sum = RationalCoeff::sum(&[third.clone(), third.clone(), third]).unwrap();
    assert_eq!(sum, RationalCoeff::one(N));
}
