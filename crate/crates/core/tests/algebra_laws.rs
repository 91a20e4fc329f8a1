mod common;

use common::{free_poly, small_scalar};
use ncworlds_core::ncpoly::{bianchi_residual, commutator, derivation};
use ncworlds_core::NcPoly;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_commutative_and_associative(a in free_poly(), b in free_poly(), c in free_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &NcPoly::zero(), a.clone());
    }

    #[test]
    fn multiplication_is_associative_with_unit(a in free_poly(), b in free_poly(), c in free_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &NcPoly::one(), a.clone());
        prop_assert_eq!(&NcPoly::one() * &a, a.clone());
        prop_assert!((&a * &NcPoly::zero()).is_zero());
    }

    #[test]
    fn distributivity(a in free_poly(), b in free_poly(), c in free_poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn scalars_are_central(a in free_poly(), b in free_poly(), s in small_scalar()) {
        prop_assert_eq!((&a * &b).scale(&s), &a.scale(&s) * &b);
        prop_assert_eq!((&a * &b).scale(&s), &a * &b.scale(&s));
    }

    #[test]
    fn commutator_is_antisymmetric(a in free_poly(), b in free_poly()) {
        prop_assert_eq!(commutator(&a, &b), -commutator(&b, &a));
        prop_assert!(commutator(&a, &a).is_zero());
    }

    #[test]
    fn jacobi_identity(a in free_poly(), b in free_poly(), c in free_poly()) {
        let j = commutator(&commutator(&a, &b), &c)
            + commutator(&commutator(&c, &a), &b)
            + commutator(&commutator(&b, &c), &a);
        prop_assert!(j.is_zero());
    }

    #[test]
    fn commutator_derivation_is_leibniz(a in free_poly(), b in free_poly(), n in free_poly()) {
        let d = derivation(&n);
        prop_assert_eq!(d.apply(&(&a * &b)), &(&d.apply(&a) * &b) + &(&a * &d.apply(&b)));
    }

    #[test]
    fn bianchi_from_jacobi(a in free_poly(), b in free_poly(), c in free_poly()) {
        prop_assert!(bianchi_residual(&a, &b, &c).is_zero());
    }
}

#[test]
fn canonical_print_of_symmetric_product() {
    let (x, y) = (NcPoly::var("X"), NcPoly::var("Y"));
    let half = ncworlds_core::scalar::rational(1, 2);
    let s = (&(&x * &y) + &(&y * &x)).scale_rational(&half);
    assert_eq!(s.to_string(), "(1/2) X.Y + (1/2) Y.X");
}
