use proptest::prelude::*;
use semiclassical::ncpoly::{
    adjoint, classical_limit, commutator, from_weyl_basis, multiply, normal_order, parse_expression, to_weyl_basis,
    Letter, NCPolynomial, Word,
};
use semiclassical::oracles::normal_order_literal;
use semiclassical::sweep::random::{random_nc_polynomial, random_weyl_polynomial, seeded};

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<bool>(), 0..=10)
        .prop_map(|bits| Word::new(bits.into_iter().map(|b| if b { Letter::Q } else { Letter::P }).collect()))
}

fn poly(max_degree: u32) -> impl Strategy<Value = NCPolynomial> {
    any::<u64>().prop_map(move |s| random_nc_polynomial(&mut seeded(s), max_degree, 5, 2))
}

proptest! {
    #[test]
    fn normal_order_is_a_homomorphism(a in word(), b in word()) {
        prop_assert_eq!(multiply(&normal_order(&a), &normal_order(&b)), normal_order(&a.concat(&b)));
    }

    #[test]
    fn normal_order_matches_literal_rewriting(w in word()) {
        prop_assert_eq!(normal_order(&w), normal_order_literal(&w));
    }

    #[test]
    fn product_is_associative(f in poly(4), g in poly(4), h in poly(4)) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn adjoint_reverses_products(f in poly(4), g in poly(4)) {
        prop_assert_eq!(adjoint(&(&f * &g)), &adjoint(&g) * &adjoint(&f));
        prop_assert_eq!(adjoint(&adjoint(&f)), f);
    }

    #[test]
    fn commutators_are_divisible_by_hbar(f in poly(4), g in poly(4)) {
        prop_assert!(commutator(&f, &g).div_ihbar().is_some());
    }

    #[test]
    fn weyl_basis_round_trip(f in poly(8)) {
        prop_assert_eq!(from_weyl_basis(&to_weyl_basis(&f)), f);
    }

    #[test]
    fn display_reparses(f in poly(6)) {
        prop_assert_eq!(parse_expression(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn symmetrized_product_commutative_associative(s in any::<u64>()) {
        let mut rng = seeded(s);
        let a = random_weyl_polynomial(&mut rng, 6, 4, 2);
        let b = random_weyl_polynomial(&mut rng, 6, 4, 2);
        let c = random_weyl_polynomial(&mut rng, 6, 4, 2);
        prop_assert_eq!(a.symmetrized_product(&b), b.symmetrized_product(&a));
        prop_assert_eq!(
            a.symmetrized_product(&b).symmetrized_product(&c),
            a.symmetrized_product(&b.symmetrized_product(&c))
        );
    }

    #[test]
    fn bracket_jacobi_and_leibniz(s in any::<u64>()) {
        let mut rng = seeded(s);
        let f = random_weyl_polynomial(&mut rng, 4, 3, 1);
        let g = random_weyl_polynomial(&mut rng, 4, 3, 1);
        let h = random_weyl_polynomial(&mut rng, 4, 3, 1);
        let br = |x: &semiclassical::ncpoly::WeylPolynomial, y: &semiclassical::ncpoly::WeylPolynomial| x.symmetrized_poisson(y);
        let jacobi = &(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g));
        prop_assert!(jacobi.is_zero());
        prop_assert_eq!(
            br(&f, &g.symmetrized_product(&h)),
            &br(&f, &g).symmetrized_product(&h) + &g.symmetrized_product(&br(&f, &h))
        );
    }

    #[test]
    fn classical_limit_is_multiplicative(f in poly(4), g in poly(4)) {
        prop_assert_eq!(classical_limit(&(&f * &g)), classical_limit(&f).multiply(&classical_limit(&g)));
    }
}
