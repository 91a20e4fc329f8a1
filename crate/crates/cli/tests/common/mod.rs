#![allow(dead_code)]

use ncworlds::expr::{Expr, GenRef, IndexRef, Sign};
use ncworlds_core::ncpoly::{Generator, Index, NcPoly, Word};
use ncworlds_core::scalar::{Rational, Scalar};
use num_bigint::BigUint;
use proptest::prelude::*;

const NAMES: [&str; 9] = ["X", "Y", "Q", "P", "Θ", "θ", "H", "ψ", "A1"];
const PARAMS: [&str; 4] = ["a", "hbar", "m", "dt"];

fn index_list() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=12, 1..=3)
}

pub fn gen_ref() -> impl Strategy<Value = GenRef> {
    let index = prop_oneof![
        Just(IndexRef::None),
        index_list().prop_map(IndexRef::Upper),
        index_list().prop_map(IndexRef::Lower),
    ];
    (
        prop::sample::select(NAMES.to_vec()),
        0u8..=3,
        index,
        prop::collection::vec(1u32..=3, 0..=2),
    )
        .prop_map(|(name, primes, index, partials)| GenRef { name: name.to_string(), primes, index, partials })
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0u64..1000, prop::option::of(1u64..50)).prop_map(|(n, d)| Expr::Number {
            num: BigUint::from(n),
            den: d.map(BigUint::from),
        }),
        Just(Expr::I),
        (prop::sample::select(PARAMS.to_vec()), prop::option::of(-3i64..=3))
            .prop_map(|(name, exp)| Expr::Param { name: name.to_string(), exp }),
        gen_ref().prop_map(Expr::Gen),
    ]
}

/// Wraps sums and products so the node can stand as a product factor.
fn as_factor(e: Expr) -> Expr {
    if e.is_factor() {
        e
    } else {
        Expr::Paren(Box::new(e))
    }
}

fn as_term(e: Expr) -> Expr {
    match e {
        Expr::Sum(_) => Expr::Paren(Box::new(e)),
        other => other,
    }
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

/// Well-formed expression trees of depth at most six.
pub fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(6, 48, 4, |inner| {
        prop_oneof![
            prop::collection::vec((sign(), inner.clone()), 1..=3).prop_map(|terms| {
                let mut terms: Vec<(Sign, Expr)> = terms.into_iter().map(|(s, t)| (s, as_term(t))).collect();
                if terms.len() == 1 {
                    terms[0].0 = Sign::Minus;
                }
                Expr::Sum(terms)
            }),
            prop::collection::vec(inner.clone(), 2..=3)
                .prop_map(|fs| Expr::Product(fs.into_iter().map(as_factor).collect())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Commutator(Box::new(a), Box::new(b))),
            prop::collection::vec(inner.clone(), 1..=3)
                .prop_map(|fs| Expr::Symmetrizer(fs.into_iter().map(as_factor).collect())),
            inner.prop_map(|e| Expr::Paren(Box::new(e))),
        ]
    })
}

pub fn depth(e: &Expr) -> usize {
    match e {
        Expr::Sum(ts) => 1 + ts.iter().map(|(_, t)| depth(t)).max().unwrap_or(0),
        Expr::Product(fs) | Expr::Symmetrizer(fs) => 1 + fs.iter().map(depth).max().unwrap_or(0),
        Expr::Commutator(a, b) => 1 + depth(a).max(depth(b)),
        Expr::Paren(x) => 1 + depth(x),
        _ => 1,
    }
}

fn generator() -> impl Strategy<Value = Generator> {
    gen_ref().prop_map(|g| {
        let index = match g.index {
            IndexRef::None => Index::None,
            IndexRef::Upper(v) => Index::Upper(v),
            IndexRef::Lower(v) => Index::Lower(v),
        };
        Generator::new(&g.name).with_primes(g.primes).with_index(index).with_partials(g.partials)
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    let part = (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()));
    let mono = prop::collection::vec((prop::sample::select(PARAMS.to_vec()), -2i32..=2), 0..=2);
    prop::collection::vec((part.clone(), part, mono), 1..=2).prop_map(|terms| {
        let mut s = Scalar::zero();
        for (re, im, mono) in terms {
            let mut t = Scalar::from_gaussian(num_complex::Complex::new(re, im));
            for (name, e) in mono {
                t = t * Scalar::param_pow(name, e);
            }
            s += t;
        }
        s
    })
}

/// Polynomials with parameter-dependent Gaussian coefficients and decorated generators.
pub fn poly() -> impl Strategy<Value = NcPoly> {
    let word = prop::collection::vec(generator(), 0..=3).prop_map(Word::from);
    prop::collection::vec((word, scalar()), 0..=4).prop_map(NcPoly::from_terms)
}
