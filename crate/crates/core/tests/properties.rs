use cliffqp_core::canonical::{CanonicalMap, SplitTripleElement};
use cliffqp_core::clifford::{CliffordAlgebra, MonomialBasis};
use cliffqp_core::exterior::ExteriorVector;
use cliffqp_core::forms::{b_wedge, b_wedge_via_reversal, q_wedge};
use cliffqp_core::group::{sample_orthogonal, CliffordAction};
use cliffqp_core::involution::{Domain, InvolutionSpaces};
use cliffqp_core::ring::{Gf2, Gf3, Gf4, Rational, Ring};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ring_axioms<R: Ring>(a: R, b: R, c: R) {
    assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
    assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
    assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
    assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
    assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
    assert_eq!(a.clone() - a.clone(), R::zero());
    assert_eq!(a.clone() * R::one(), a.clone());
    if let Ok(inv) = a.try_inv() {
        assert!((a * inv).is_one());
    }
}

proptest! {
    #[test]
    fn gf4_is_a_field(x in 0u8..4, y in 0u8..4, z in 0u8..4) {
        let e = Gf4::elements().unwrap();
        let (a, b, c) = (e[x as usize], e[y as usize], e[z as usize]);
        ring_axioms(a, b, c);
        prop_assert_eq!(a.try_inv().is_ok(), !a.is_zero());
    }

    #[test]
    fn rationals_form_a_field(p in -50i64..50, q in 1i64..50, r in -50i64..50, s in 1i64..50) {
        ring_axioms(Rational::new(p, q), Rational::new(r, s), Rational::new(p + r, q * s));
    }

    #[test]
    fn wedge_is_associative_and_unital(seed in any::<u64>(), n in 1usize..6) {
        let mut g = rng(seed);
        let x = ExteriorVector::<Gf3>::random(n, &mut g).unwrap();
        let y = ExteriorVector::<Gf3>::random(n, &mut g).unwrap();
        let z = ExteriorVector::<Gf3>::random(n, &mut g).unwrap();
        let one = ExteriorVector::one(n).unwrap();
        prop_assert_eq!(x.wedge(&one).unwrap(), x.clone());
        prop_assert_eq!(x.wedge(&y).unwrap().wedge(&z).unwrap(), x.wedge(&y.wedge(&z).unwrap()).unwrap());
    }

    #[test]
    fn b_wedge_formula_agrees_with_reversal(seed in any::<u64>(), n in 1usize..6) {
        let mut g = rng(seed);
        let x = ExteriorVector::<Rational>::random(n, &mut g).unwrap();
        let y = ExteriorVector::<Rational>::random(n, &mut g).unwrap();
        prop_assert_eq!(b_wedge(&x, &y).unwrap(), b_wedge_via_reversal(&x, &y).unwrap());
    }

    #[test]
    fn q_wedge_is_quadratic(seed in any::<u64>(), n in 1usize..6, c in -5i64..5) {
        let mut g = rng(seed);
        let x = ExteriorVector::<Rational>::random(n, &mut g).unwrap();
        let c = Rational::from_i64(c);
        prop_assert_eq!(q_wedge(&x.scale(&c)), c.clone() * c * q_wedge(&x));
    }

    #[test]
    fn involution_is_an_anti_automorphism(seed in any::<u64>(), n in 1usize..5) {
        let mut g = rng(seed);
        let alg = CliffordAlgebra::<Gf3>::new(n).unwrap();
        let x = alg.random_element(&mut g);
        let y = alg.random_element(&mut g);
        prop_assert_eq!(alg.involution(&alg.involution(&x)), x.clone());
        prop_assert_eq!(alg.involution(&(&x * &y)), &alg.involution(&y) * &alg.involution(&x));
        prop_assert_eq!(alg.reduced_trace(&alg.involution(&x)), alg.reduced_trace(&x));
    }

    #[test]
    fn vectors_square_to_their_quadratic_value(seed in any::<u64>(), n in 1usize..5) {
        let mut g = rng(seed);
        let alg = CliffordAlgebra::<Rational>::new(n).unwrap();
        let m = alg.random_vector(&mut g);
        let phi = alg.phi_vector(&m).unwrap();
        prop_assert_eq!(&phi * &phi, alg.scalar(cliffqp_core::forms::q_hyperbolic(&m)));
    }

    #[test]
    fn canonical_map_lands_in_rho_fibre(seed in any::<u64>(), n in 1usize..5) {
        let mut g = rng(seed);
        let alg = CliffordAlgebra::<Gf4>::new(n).unwrap();
        let map = CanonicalMap::new(&alg);
        let m = SplitTripleElement::<Gf4>::random(n, &mut g);
        let cm = map.apply(&m).unwrap();
        prop_assert_eq!(&cm + &alg.involution(&cm), alg.scalar(m.trace()));
    }

    #[test]
    fn monomial_coordinates_round_trip(seed in any::<u64>(), n in 1usize..4) {
        let mut g = rng(seed);
        let alg = CliffordAlgebra::<Gf3>::new(n).unwrap();
        let basis = MonomialBasis::new(&alg).unwrap();
        let x = alg.random_element(&mut g);
        prop_assert_eq!(basis.recompose(&basis.decompose(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn alternating_is_contained_in_symmetric_in_char_two(n in 1usize..5) {
        let alg = CliffordAlgebra::<Gf2>::new(n).unwrap();
        let spaces = InvolutionSpaces::new(&alg, Domain::Even).unwrap();
        prop_assert!(spaces.sym().contains_space(spaces.alt()));
        prop_assert!(spaces.trace_orthogonality().passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn clifford_action_is_a_homomorphism(seed in any::<u64>(), n in 2usize..4) {
        let mut g = rng(seed);
        let alg = CliffordAlgebra::<Gf3>::new(n).unwrap();
        let basis = MonomialBasis::new(&alg).unwrap();
        let b1 = sample_orthogonal::<Gf3, _>(n, 5, &mut g);
        let b2 = sample_orthogonal::<Gf3, _>(n, 5, &mut g);
        let c1 = CliffordAction::new(&alg, &b1).unwrap();
        let c2 = CliffordAction::new(&alg, &b2).unwrap();
        let c12 = CliffordAction::new(&alg, &b1.compose(&b2)).unwrap();
        for _ in 0..3 {
            let x = alg.random_element(&mut g);
            let y = alg.random_element(&mut g);
            let cx = c1.apply(&basis, &x).unwrap();
            prop_assert_eq!(c1.apply(&basis, &(&x * &y)).unwrap(), &cx * &c1.apply(&basis, &y).unwrap());
            prop_assert_eq!(c12.apply(&basis, &x).unwrap(), c1.apply(&basis, &c2.apply(&basis, &x).unwrap()).unwrap());
            prop_assert_eq!(alg.involution(&cx), c1.apply(&basis, &alg.involution(&x)).unwrap());
        }
    }
}
