use ncworlds_core::iterant::{
    decompose_terms, eta, imaginary, iterant2, matrix_decompose, quaternion_table, IterantElement,
    Matrix, Permutation,
};
use ncworlds_core::scalar::Rational;
use ncworlds_core::Scalar;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_int() -> impl Strategy<Value = Scalar> {
    (-5i64..=5).prop_map(Scalar::from_int)
}

fn iterant(n: usize) -> impl Strategy<Value = IterantElement> {
    let term = (prop::collection::vec(small_int(), n), prop::sample::select(Permutation::all(n)));
    prop::collection::vec(term, 0..4).prop_map(move |terms| {
        terms.into_iter().fold(IterantElement::zero(n), |acc, (d, p)| {
            acc.checked_add(&IterantElement::term(d, p).unwrap()).unwrap()
        })
    })
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let num: i64 = rng.random_range(-9..=9);
                    let den: i64 = rng.random_range(1..=5);
                    Scalar::ratio(num, den)
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn to_matrix_is_a_ring_homomorphism_order_2(a in iterant(2), b in iterant(2)) {
        let ab = a.checked_mul(&b).unwrap().to_matrix();
        prop_assert_eq!(ab, a.to_matrix().checked_mul(&b.to_matrix()).unwrap());
        let sum = a.checked_add(&b).unwrap().to_matrix();
        prop_assert_eq!(sum, a.to_matrix().checked_add(&b.to_matrix()).unwrap());
    }

    #[test]
    fn to_matrix_is_a_ring_homomorphism_order_3(a in iterant(3), b in iterant(3)) {
        let ab = a.checked_mul(&b).unwrap().to_matrix();
        prop_assert_eq!(ab, a.to_matrix().checked_mul(&b.to_matrix()).unwrap());
    }

    #[test]
    fn iterant_product_is_associative(a in iterant(3), b in iterant(3), c in iterant(3)) {
        let left = a.checked_mul(&b).unwrap().checked_mul(&c).unwrap();
        let right = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn decomposition_inverts_matrix_image_at_order_2(a in iterant(2)) {
        prop_assert_eq!(matrix_decompose(&a.to_matrix()).unwrap(), a);
    }

    #[test]
    fn decomposition_is_a_projection_at_order_3(a in iterant(3)) {
        let m = a.to_matrix();
        let d = matrix_decompose(&m).unwrap();
        prop_assert_eq!(d.to_matrix(), m);
        prop_assert_eq!(matrix_decompose(&d.to_matrix()).unwrap(), d);
    }
}

#[test]
fn decomposition_of_random_rational_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=4 {
        for _ in 0..50 {
            let m = random_matrix(&mut rng, n);
            assert_eq!(matrix_decompose(&m).unwrap().to_matrix(), m);
        }
    }
}

#[test]
fn symbolic_three_by_three_example() {
    let names = ["a", "b", "c", "d", "e", "f", "g", "h", "k"];
    let s: Vec<Scalar> = names.iter().map(|n| Scalar::param(n)).collect();
    let m = Matrix::from_rows(s.chunks(3).map(<[Scalar]>::to_vec).collect()).unwrap();
    let dec = decompose_terms(&m).unwrap();
    assert_eq!(dec.factor, Rational::new(1.into(), 2.into()));
    // The six displayed summands as (entries, permutation), matched as a set.
    let displayed: [(&[&str; 3], [usize; 3]); 6] = [
        (&["a", "e", "k"], [1, 2, 3]),
        (&["b", "f", "g"], [2, 3, 1]),
        (&["c", "d", "h"], [3, 1, 2]),
        (&["c", "e", "g"], [3, 2, 1]),
        (&["b", "d", "k"], [2, 1, 3]),
        (&["a", "f", "h"], [1, 3, 2]),
    ];
    assert_eq!(dec.terms.len(), 6);
    for (entries, perm) in displayed {
        let p = Permutation::from_one_line(&perm).unwrap();
        let diag: Vec<Scalar> = entries.iter().map(|n| Scalar::param(n)).collect();
        assert!(dec.terms.contains(&(diag.clone(), p.clone())), "{perm:?}");
        let summand = Matrix::diagonal(&diag).checked_mul(&p.to_matrix()).unwrap();
        let nonzero = (0..3).filter(|&i| !summand.get(i, p.image(i)).is_zero()).count();
        assert_eq!(nonzero, 3);
    }
    assert_eq!(dec.to_iterant().to_matrix(), m);
}

#[test]
fn factored_summand_example() {
    let (a, f, h) = (Scalar::param("a"), Scalar::param("f"), Scalar::param("h"));
    let p = Permutation::from_one_line(&[1, 3, 2]).unwrap();
    let product = Matrix::diagonal(&[a.clone(), f.clone(), h.clone()])
        .checked_mul(&p.to_matrix())
        .unwrap();
    let z = Scalar::zero();
    let expected = Matrix::from_rows(vec![
        vec![a, z.clone(), z.clone()],
        vec![z.clone(), z.clone(), f],
        vec![z.clone(), h, z],
    ])
    .unwrap();
    assert_eq!(product, expected);
}

#[test]
fn imaginary_unit_and_its_matrix() {
    let minus_one = IterantElement::scalar(2, Scalar::from_int(-1));
    let clock = iterant2(Scalar::one(), Scalar::from_int(-1)).checked_mul(&eta()).unwrap();
    assert_eq!(clock.checked_mul(&clock).unwrap(), minus_one);
    let i = imaginary();
    assert_eq!(i.to_matrix(), Matrix::from_int_rows(&[&[0, -1], &[1, 0]]).unwrap());
    // the two orientations are negatives of each other
    assert_eq!(clock, i.neg());
}

#[test]
fn quaternion_products_match_matrix_products() {
    let t = quaternion_table();
    assert!(t.matrix_agrees);
    let minus_one = IterantElement::scalar(2, Scalar::from_int(-1));
    assert_eq!(t.ijk, minus_one);
    // ij = k, jk = i, ki = j
    assert_eq!(t.identified[1][2], Some((1, 3)));
    assert_eq!(t.identified[2][3], Some((1, 1)));
    assert_eq!(t.identified[3][1], Some((1, 2)));
    assert!(t.all_zero());
}
