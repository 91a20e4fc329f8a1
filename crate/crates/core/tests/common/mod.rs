#![allow(dead_code)]

use ncworlds_core::ncpoly::{Generator, NcPoly, Word};
use ncworlds_core::quotient::{p, q};
use ncworlds_core::scalar::{Rational, Scalar};
use num_complex::Complex;
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Gaussian rationals with small parts.
pub fn small_scalar() -> impl Strategy<Value = Scalar> {
    (small_rational(), small_rational()).prop_map(|(re, im)| Scalar::from_gaussian(Complex::new(re, im)))
}

pub fn word_over(gens: Vec<Generator>, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(gens), 0..=max_len).prop_map(Word::from)
}

/// Polynomials with at most `max_terms` terms of degree at most `max_len`.
pub fn poly_over(gens: Vec<Generator>, max_len: usize, max_terms: usize) -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((word_over(gens, max_len), small_scalar()), 0..=max_terms)
        .prop_map(NcPoly::from_terms)
}

pub fn xyz() -> Vec<Generator> {
    ["X", "Y", "Z"].iter().map(|n| Generator::new(n)).collect()
}

pub fn free_poly() -> impl Strategy<Value = NcPoly> {
    poly_over(xyz(), 4, 5)
}

/// Generators of the flat world in two dimensions.
pub fn flat_gens() -> Vec<Generator> {
    let mut v = Vec::new();
    for i in 1..=2 {
        v.extend(q(i).generators());
        v.extend(p(i).generators());
    }
    v
}

/// Flat-world generators plus coordinate functions `f`, `g`.
pub fn flat_fn_gens() -> Vec<Generator> {
    let mut v = flat_gens();
    v.push(Generator::new("f"));
    v.push(Generator::new("g"));
    v
}

pub fn flat_poly(max_len: usize) -> impl Strategy<Value = NcPoly> {
    poly_over(flat_gens(), max_len, 5)
}
