//! Iterants and the permutation group-ring view of matrix algebra.
//!
//! An [`IterantElement`] of order `n` is a formal sum `Σ Δ_π [π]` of diagonal
//! vectors times permutations. The permutation matrix `[π]` has as its i-th
//! row the `π_i`-th row of the identity, which gives the exchange rule
//! `[π]Δ = Δ^π[π]` with `(Δ^π)_i = Δ_{π_i}`, and the product
//!
//! ```text
//! (Δ₁[π₁])(Δ₂[π₂]) = (Δ₁·Δ₂^π₁)[π₁π₂],   (π₁π₂)_i = (π₂)_{(π₁)_i}
//! ```
//!
//! For `n = 2` the transposition is the shift `η` and `Δ^η` is the overbar
//! `[x,y] ↦ [y,x]`, so `[a,d] + [b,c]η` is the matrix `((a,b),(c,d))`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::{Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IterantError {
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("matrix is empty")]
    EmptyMatrix,
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("not a permutation in one-line notation: {0:?}")]
    BadPermutation(Vec<usize>),
    #[error("diagonal has length {got}, expected {expected}")]
    DiagonalLength { got: usize, expected: usize },
    #[error("boost parameter {0} is not invertible")]
    NotInvertible(String),
    #[error("velocity {0} does not give a rational Lorentz factor")]
    NotPythagorean(String),
}

/// A permutation of `{0..n}` in one-line notation (printed 1-based).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// From 1-based one-line notation, e.g. `[1, 3, 2]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self, IterantError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut v = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(IterantError::BadPermutation(images.to_vec()));
            }
            seen[x - 1] = true;
            v.push(x - 1);
        }
        Ok(Permutation(v))
    }

    /// All `n!` permutations in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        (0..n).permutations(n).map(Permutation).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Zero-based image of zero-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    /// The permutation whose matrix is `[self][other]`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i]).collect())
    }

    /// `(v^π)_i = v_{π_i}`.
    pub fn act(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.0.iter().map(|&i| v[i].clone()).collect()
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.len();
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, self.0[i], Scalar::one());
        }
        m
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.one_line().iter().join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, entries: vec![Scalar::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, IterantError> {
        let n = rows.len();
        if n == 0 {
            return Err(IterantError::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(IterantError::NotSquare { row, len: r.len(), expected: n });
            }
            entries.extend(r);
        }
        Ok(Matrix { n, entries })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, IterantError> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(v: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(v.len());
        for (i, x) in v.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.n).map(<[Scalar]>::to_vec).collect()
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix, IterantError> {
        if self.n != other.n {
            return Err(IterantError::OrderMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Scalar::zero();
                for k in 0..n {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix, IterantError> {
        if self.n != other.n {
            return Err(IterantError::OrderMismatch(self.n, other.n));
        }
        Ok(Matrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { n: self.n, entries: self.entries.iter().map(|x| x * s).collect() }
    }

    /// Determinant by permutation expansion; fine for the small orders used here.
    pub fn determinant(&self) -> Scalar {
        let mut det = Scalar::zero();
        for p in Permutation::all(self.n) {
            let mut term = Scalar::from_int(permutation_sign(&p));
            for i in 0..self.n {
                term = &term * self.get(i, p.image(i));
            }
            det += term;
        }
        det
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows();
        write!(
            f,
            "({})",
            rows.iter()
                .map(|r| format!("({})", r.iter().join(", ")))
                .join(", ")
        )
    }
}

fn permutation_sign(p: &Permutation) -> i64 {
    let inversions = (0..p.len())
        .tuple_combinations()
        .filter(|&(a, b)| p.image(a) > p.image(b))
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterantElement {
    order: usize,
    terms: BTreeMap<Permutation, Vec<Scalar>>,
}

impl IterantElement {
    pub fn zero(order: usize) -> Self {
        IterantElement { order, terms: BTreeMap::new() }
    }

    pub fn one(order: usize) -> Self {
        IterantElement::scalar(order, Scalar::one())
    }

    pub fn scalar(order: usize, s: Scalar) -> Self {
        IterantElement::diagonal(vec![s; order])
    }

    /// The pure iterant `[v_1, ..., v_n]` (identity permutation).
    pub fn diagonal(v: Vec<Scalar>) -> Self {
        let n = v.len();
        IterantElement::term(v, Permutation::identity(n)).expect("lengths agree")
    }

    pub fn permutation(p: Permutation) -> Self {
        let n = p.len();
        IterantElement::term(vec![Scalar::one(); n], p).expect("lengths agree")
    }

    pub fn term(diag: Vec<Scalar>, p: Permutation) -> Result<Self, IterantError> {
        if diag.len() != p.len() {
            return Err(IterantError::DiagonalLength { got: diag.len(), expected: p.len() });
        }
        let mut e = IterantElement::zero(p.len());
        e.add_term(p, diag);
        Ok(e)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Vec<Scalar>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, p: Permutation, diag: Vec<Scalar>) {
        let slot = self
            .terms
            .entry(p.clone())
            .or_insert_with(|| vec![Scalar::zero(); diag.len()]);
        for (s, d) in slot.iter_mut().zip(diag) {
            *s += d;
        }
        if slot.iter().all(Scalar::is_zero) {
            self.terms.remove(&p);
        }
    }

    fn check(&self, other: &Self) -> Result<(), IterantError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(IterantError::OrderMismatch(self.order, other.order))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, IterantError> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, d) in &other.terms {
            out.add_term(p.clone(), d.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, IterantError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, IterantError> {
        self.check(other)?;
        let mut out = IterantElement::zero(self.order);
        for (p1, d1) in &self.terms {
            for (p2, d2) in &other.terms {
                let moved = p1.act(d2);
                let diag = d1.iter().zip(&moved).map(|(a, b)| a * b).collect();
                out.add_term(p1.then(p2), diag);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = IterantElement::zero(self.order);
        for (p, d) in &self.terms {
            out.add_term(p.clone(), d.iter().map(|x| x * s).collect());
        }
        out
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.order);
        for (p, d) in &self.terms {
            for (i, x) in d.iter().enumerate() {
                let j = p.image(i);
                let v = m.get(i, j) + x;
                m.set(i, j, v);
            }
        }
        m
    }

    /// `A + Bη` for `n = 2`, with `A = [a, d]` and `B = [b, c]`.
    pub fn from_iterant_pair(a: [Scalar; 2], b: [Scalar; 2]) -> Self {
        let [a0, a1] = a;
        let [b0, b1] = b;
        let mut e = IterantElement::diagonal(vec![a0, a1]);
        e.add_term(eta_perm(), vec![b0, b1]);
        e
    }

    /// `conj(A + Bη) = Ā − Bη` for `n = 2`.
    pub fn conjugate2(&self) -> Self {
        let mut out = IterantElement::zero(self.order);
        for (p, d) in &self.terms {
            if *p == Permutation::identity(self.order) {
                out.add_term(p.clone(), eta_perm().act(d));
            } else {
                out.add_term(p.clone(), d.iter().map(|x| -x).collect());
            }
        }
        out
    }
}

impl fmt::Display for IterantElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut parts = self
            .terms
            .iter()
            .map(|(p, d)| format!("[{}]{}", d.iter().join(", "), p));
        f.write_str(&parts.join(" + "))
    }
}

fn eta_perm() -> Permutation {
    Permutation(vec![1, 0])
}

/// The shift `η` of order 2.
pub fn eta() -> IterantElement {
    IterantElement::permutation(eta_perm())
}

/// `[a, b]`.
pub fn iterant2(a: Scalar, b: Scalar) -> IterantElement {
    IterantElement::diagonal(vec![a, b])
}

/// `ε = [−1, 1]`, also the polarity `σ`.
pub fn epsilon() -> IterantElement {
    iterant2(Scalar::from_int(-1), Scalar::one())
}

/// `i = εη = [−1, 1]η`.
pub fn imaginary() -> IterantElement {
    epsilon().checked_mul(&eta()).expect("order 2")
}

/// The `1/(n−1)!`-scaled sum over all `n!` permutations, before folding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub factor: Rational,
    /// One entry per permutation, in lexicographic order: `(Δ[M]_π, π)`.
    pub terms: Vec<(Vec<Scalar>, Permutation)>,
}

impl Decomposition {
    pub fn to_iterant(&self) -> IterantElement {
        let n = self.terms.first().map_or(0, |(d, _)| d.len());
        let f = Scalar::from_rational(self.factor.clone());
        let mut e = IterantElement::zero(n);
        for (d, p) in &self.terms {
            e.add_term(p.clone(), d.iter().map(|x| x * &f).collect());
        }
        e
    }
}

/// `M = (1/(n−1)!) Σ_π Δ(v(M,π)) [π]` with `v(M,π)_i = m_{i,π_i}`.
pub fn decompose_terms(m: &Matrix) -> Result<Decomposition, IterantError> {
    let n = m.order();
    if n == 0 {
        return Err(IterantError::EmptyMatrix);
    }
    let fact: BigInt = (1..n).map(BigInt::from).product();
    let factor = Rational::new(BigInt::one(), fact);
    let terms = Permutation::all(n)
        .into_iter()
        .map(|p| ((0..n).map(|i| m.get(i, p.image(i)).clone()).collect(), p))
        .collect();
    Ok(Decomposition { factor, terms })
}

pub fn matrix_decompose(m: &Matrix) -> Result<IterantElement, IterantError> {
    Ok(decompose_terms(m)?.to_iterant())
}

/// The 16 products of the units `{1, i, j, k}` built from iterants.
#[derive(Clone, Debug)]
pub struct QuaternionTable {
    /// `1`, `i = εη`, `j = √−1·ε̄`, `k = √−1·η`.
    pub units: [IterantElement; 4],
    pub products: [[IterantElement; 4]; 4],
    /// Each product written as `±unit`, when it is one.
    pub identified: [[Option<(i8, usize)>; 4]; 4],
    /// `product − expected`, against `ij = k`, `jk = i`, `ki = j`.
    pub residuals: [[IterantElement; 4]; 4],
    /// `to_matrix(ab) = to_matrix(a)·to_matrix(b)` for all 16 pairs.
    pub matrix_agrees: bool,
    pub ijk: IterantElement,
}

pub const UNIT_NAMES: [&str; 4] = ["1", "i", "j", "k"];

/// Hamilton's table as `(sign, unit)`.
const HAMILTON: [[(i8, usize); 4]; 4] = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0)],
];

impl QuaternionTable {
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().flatten().all(IterantElement::is_zero) && self.matrix_agrees
    }
}

pub fn quaternion_table() -> QuaternionTable {
    let sqrt_m1 = Scalar::i();
    let eps_bar = iterant2(Scalar::one(), Scalar::from_int(-1));
    let units = [
        IterantElement::one(2),
        imaginary(),
        eps_bar.scale(&sqrt_m1),
        eta().scale(&sqrt_m1),
    ];
    let mul = |a: &IterantElement, b: &IterantElement| a.checked_mul(b).expect("order 2");
    let products: [[IterantElement; 4]; 4] =
        std::array::from_fn(|r| std::array::from_fn(|c| mul(&units[r], &units[c])));
    let identified = std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            (0..4).find_map(|u| {
                if products[r][c] == units[u] {
                    Some((1, u))
                } else if products[r][c] == units[u].neg() {
                    Some((-1, u))
                } else {
                    None
                }
            })
        })
    });
    let residuals = std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            let (sign, u) = HAMILTON[r][c];
            let expected = units[u].scale(&Scalar::from_int(sign as i64));
            products[r][c].checked_sub(&expected).expect("order 2")
        })
    });
    let matrix_agrees = (0..4).cartesian_product(0..4).all(|(r, c)| {
        let via_matrix = units[r]
            .to_matrix()
            .checked_mul(&units[c].to_matrix())
            .expect("order 2");
        products[r][c].to_matrix() == via_matrix
    });
    let ijk = mul(&mul(&units[1], &units[2]), &units[3]);
    QuaternionTable { units, products, identified, residuals, matrix_agrees, ijk }
}

/// Applies `[a, b] ↦ [ka, k⁻¹b]` to the event `[t−x, t+x] = t + xσ`.
pub fn lorentz_boost(k: &Scalar, t: &Scalar, x: &Scalar) -> Result<(Scalar, Scalar), IterantError> {
    let k_inv = k.inv().map_err(|_| IterantError::NotInvertible(k.to_string()))?;
    let boost = iterant2(k.clone(), k_inv);
    let event = iterant2(t - x, t + x);
    let moved = boost.checked_mul(&event)?;
    let d = moved
        .terms()
        .next()
        .map(|(_, d)| d.clone())
        .unwrap_or_else(|| vec![Scalar::zero(); 2]);
    let half = Scalar::ratio(1, 2);
    let t_new = &(&d[0] + &d[1]) * &half;
    let x_new = &(&d[1] - &d[0]) * &half;
    Ok((t_new, x_new))
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

/// Lorentz factor `1/√(1−v²)` when it is rational.
pub fn lorentz_factor(v: &Rational) -> Result<Rational, IterantError> {
    let one = Rational::one();
    let root = rational_sqrt(&(&one - v * v))
        .filter(|s| !s.is_zero())
        .ok_or_else(|| IterantError::NotPythagorean(crate::scalar::fmt_rational(v)))?;
    Ok(one / root)
}

/// `k = (1+v)/√(1−v²)` for a velocity with a rational Lorentz factor.
pub fn boost_parameter(v: &Rational) -> Result<Rational, IterantError> {
    Ok((Rational::one() + v) * lorentz_factor(v)?)
}

pub fn lorentz_boost_velocity(
    v: &Rational,
    t: &Scalar,
    x: &Scalar,
) -> Result<(Scalar, Scalar), IterantError> {
    lorentz_boost(&Scalar::from_rational(boost_parameter(v)?), t, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn square_roots_of_minus_one() {
        let minus_one = IterantElement::scalar(2, s(-1));
        let i_clock = iterant2(s(1), s(-1)).checked_mul(&eta()).unwrap();
        assert_eq!(i_clock.checked_mul(&i_clock).unwrap(), minus_one);
        let i = imaginary();
        assert_eq!(i.checked_mul(&i).unwrap(), minus_one);
        assert_eq!(i.to_matrix(), Matrix::from_int_rows(&[&[0, -1], &[1, 0]]).unwrap());
        assert_eq!(i_clock.to_matrix(), Matrix::from_int_rows(&[&[0, 1], &[-1, 0]]).unwrap());
    }

    #[test]
    fn pointwise_product_and_shift() {
        let (a, b, c, d) = (Scalar::param("a"), Scalar::param("b"), Scalar::param("c"), Scalar::param("d"));
        let lhs = iterant2(a.clone(), b.clone()).checked_mul(&iterant2(c.clone(), d.clone())).unwrap();
        assert_eq!(lhs, iterant2(&a * &c, &b * &d));
        assert_eq!(eta().checked_mul(&eta()).unwrap(), IterantElement::one(2));
        // [a,b]η = η[b,a]
        let left = iterant2(a.clone(), b.clone()).checked_mul(&eta()).unwrap();
        let right = eta().checked_mul(&iterant2(b, a)).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn polarity_and_overbar() {
        let sigma = epsilon();
        assert_eq!(sigma.checked_mul(&sigma).unwrap(), IterantElement::one(2));
        let eps_bar = iterant2(s(1), s(-1));
        assert_eq!(eps_bar, epsilon().neg());
    }

    #[test]
    fn iterant_pair_matrix_image() {
        let (a, b, c, d) = (Scalar::param("a"), Scalar::param("b"), Scalar::param("c"), Scalar::param("d"));
        let e = IterantElement::from_iterant_pair([a.clone(), d.clone()], [b.clone(), c.clone()]);
        let m = Matrix::from_rows(vec![vec![a, b], vec![c, d]]).unwrap();
        assert_eq!(e.to_matrix(), m);
        assert_eq!(IterantElement::one(3).to_matrix(), Matrix::identity(3));
    }

    #[test]
    fn conjugate_gives_determinant() {
        let (a, b, c, d) = (Scalar::param("a"), Scalar::param("b"), Scalar::param("c"), Scalar::param("d"));
        let e = IterantElement::from_iterant_pair([a, d], [b, c]);
        let prod = e.checked_mul(&e.conjugate2()).unwrap();
        let det = e.to_matrix().determinant();
        assert_eq!(prod, IterantElement::scalar(2, det));
    }

    #[test]
    fn exchange_rule() {
        let p = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        let diag = vec![Scalar::param("x"), Scalar::param("y"), Scalar::param("z")];
        let lhs = IterantElement::permutation(p.clone())
            .checked_mul(&IterantElement::diagonal(diag.clone()))
            .unwrap();
        let rhs = IterantElement::diagonal(p.act(&diag))
            .checked_mul(&IterantElement::permutation(p.clone()))
            .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(
            IterantElement::permutation(p.clone()).to_matrix(),
            p.to_matrix()
        );
    }

    #[test]
    fn order_mismatch() {
        let err = IterantElement::one(2).checked_mul(&IterantElement::one(3)).unwrap_err();
        assert_eq!(err, IterantError::OrderMismatch(2, 3));
    }

    #[test]
    fn decomposition_errors() {
        assert_eq!(Matrix::from_rows(vec![]).unwrap_err(), IterantError::EmptyMatrix);
        let err = Matrix::from_rows(vec![vec![s(1), s(2)], vec![s(3)]]).unwrap_err();
        assert!(matches!(err, IterantError::NotSquare { row: 1, .. }));
        assert!(Permutation::from_one_line(&[1, 1]).is_err());
    }

    #[test]
    fn identity_decomposes_to_identity() {
        let m = Matrix::identity(2);
        let d = matrix_decompose(&m).unwrap();
        assert_eq!(d, IterantElement::one(2));
        assert_eq!(d.to_matrix(), m);
    }

    #[test]
    fn quaternions() {
        let t = quaternion_table();
        let minus_one = IterantElement::scalar(2, s(-1));
        for (u, name) in UNIT_NAMES.iter().enumerate().skip(1) {
            assert_eq!(t.products[u][u], minus_one, "{name}²");
        }
        assert_eq!(t.ijk, minus_one);
        assert_eq!(t.identified[2][3], Some((1, 1)), "jk = i");
        assert!(t.all_zero());
    }

    #[test]
    fn boosts() {
        let (t, x) = (Scalar::ratio(3, 2), Scalar::ratio(-2, 7));
        assert_eq!(lorentz_boost(&Scalar::one(), &t, &x).unwrap(), (t.clone(), x.clone()));
        assert!(lorentz_boost(&Scalar::zero(), &t, &x).is_err());
        let v = crate::scalar::rational(3, 5);
        assert_eq!(lorentz_factor(&v).unwrap(), crate::scalar::rational(5, 4));
        let (tp, xp) = lorentz_boost_velocity(&v, &Scalar::one(), &Scalar::zero()).unwrap();
        assert_eq!(tp, Scalar::ratio(5, 4));
        assert_eq!(xp, Scalar::ratio(-3, 4));
        assert!(lorentz_factor(&crate::scalar::rational(1, 2)).is_err());
        assert!(lorentz_factor(&Rational::one()).is_err());
    }
}
