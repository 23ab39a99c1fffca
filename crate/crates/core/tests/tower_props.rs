use cyclotwist::tower::{degree_of_level, normalize, ratio};
use cyclotwist::{parse_element, render_element, CycloElem};
use proptest::prelude::*;

fn elem(max_level: u32) -> impl Strategy<Value = CycloElem> {
    (1..=max_level).prop_flat_map(|k| {
        prop::collection::vec((-3i64..=3, 1i64..=3), degree_of_level(k)).prop_map(move |cs| {
            let coeffs = cs.into_iter().map(|(p, q)| ratio(p, q)).collect();
            CycloElem::from_coeffs(k, coeffs).unwrap()
        })
    })
}

fn real_elem(max_level: u32) -> impl Strategy<Value = CycloElem> {
    elem(max_level).prop_map(|x| &x + &x.conj())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(x in elem(4), y in elem(4), z in elem(4)) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn inverse(x in elem(4)) {
        prop_assume!(!x.is_zero());
        let inv = x.invert().unwrap();
        prop_assert!((&x * &inv).is_one());
        prop_assert_eq!(x.checked_div(&x).unwrap(), CycloElem::one());
    }

    #[test]
    fn conj_is_an_involutive_automorphism(x in elem(4), y in elem(4)) {
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn norm2_is_multiplicative(x in elem(4), y in elem(4)) {
        prop_assert_eq!((&x * &y).norm2(), &x.norm2() * &y.norm2());
        prop_assert!(x.norm2().is_real());
    }

    #[test]
    fn realness_matches_norm(x in elem(4), r in real_elem(4)) {
        prop_assert_eq!(x.is_real(), x.norm2() == &x * &x);
        prop_assert!(r.is_real());
        prop_assert_eq!(r.norm2(), &r * &r);
    }

    #[test]
    fn lift_then_normalize(x in elem(4), extra in 0u32..3) {
        let k = x.level() + extra;
        let lifted = x.lift(k).unwrap();
        prop_assert_eq!(lifted.coeffs().len(), degree_of_level(k));
        prop_assert_eq!(&lifted.normalize(), &x);
        prop_assert_eq!(normalize(k, lifted.coeffs()).unwrap(), x);
    }

    #[test]
    fn level_of_presentation_is_irrelevant(x in elem(3), y in elem(3), extra in 1u32..3) {
        let k = x.level().max(y.level()) + extra;
        let xl = normalize(k, x.lift(k).unwrap().coeffs()).unwrap();
        let yl = normalize(k, y.lift(k).unwrap().coeffs()).unwrap();
        prop_assert_eq!(&xl * &yl, &x * &y);
        prop_assert_eq!(&xl + &yl, &x + &y);
    }

    #[test]
    fn render_parse_round_trip(x in elem(4)) {
        prop_assert_eq!(parse_element(&render_element(&x)).unwrap(), x);
    }

    #[test]
    fn pow_agrees_with_repeated_product(x in elem(3), e in 0i64..6) {
        let mut acc = CycloElem::one();
        for _ in 0..e {
            acc = &acc * &x;
        }
        prop_assert_eq!(x.pow(e).unwrap(), acc);
    }
}

#[test]
fn embedding_is_a_ring_map() {
    let x = parse_element("1/2 + 3*zeta(4)^3 - c(3)").unwrap();
    let y = parse_element("-2 + zeta(4) + zeta(2)").unwrap();
    let lhs = (&x * &y).to_complex();
    let rhs = x.to_complex() * y.to_complex();
    assert!((lhs - rhs).norm() < 1e-12);
    assert!(((&x + &y).to_complex() - (x.to_complex() + y.to_complex())).norm() < 1e-12);
    assert!((x.conj().to_complex() - x.to_complex().conj()).norm() < 1e-12);
}

#[test]
fn cosgen_identities() {
    for k in 2..=8 {
        let c = CycloElem::cosgen(k);
        let next = CycloElem::cosgen(k + 1);
        assert_eq!(&next * &next, &CycloElem::from_int(2) + &c);
        assert!(c.is_real());
    }
    assert_eq!(CycloElem::cosgen(3).pow(4).unwrap(), CycloElem::from_int(4));
}
