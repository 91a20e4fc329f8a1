//! Free non-commutative polynomial algebra over [`Scalar`].
//!
//! An [`NcPoly`] is a finite map from [`Word`]s to nonzero scalars. Equality
//! of values is equality in the free algebra; no relations are applied here
//! (see [`crate::quotient`] for that).

use std::collections::{btree_map::Entry, BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Index {
    #[default]
    None,
    Upper(Vec<u32>),
    Lower(Vec<u32>),
}

/// A non-commuting symbol such as `Q^1`, `P_2`, `Θ_{1,2}`, `H''` or `θ|1`.
///
/// `partials` is a sorted multi-index of formal coordinate derivatives; it is
/// only given meaning by rewrite systems that treat the symbol as a function
/// of the coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    name: Arc<str>,
    primes: u8,
    index: Index,
    partials: Vec<u32>,
}

impl Generator {
    pub fn new(name: &str) -> Self {
        Generator {
            name: Arc::from(name),
            primes: 0,
            index: Index::None,
            partials: Vec::new(),
        }
    }

    pub fn upper(name: &str, i: u32) -> Self {
        Generator::new(name).with_index(Index::Upper(vec![i]))
    }

    pub fn lower(name: &str, i: u32) -> Self {
        Generator::new(name).with_index(Index::Lower(vec![i]))
    }

    pub fn with_index(mut self, index: Index) -> Self {
        self.index = index;
        self
    }

    pub fn with_primes(mut self, primes: u8) -> Self {
        self.primes = primes;
        self
    }

    pub fn with_partials(mut self, mut partials: Vec<u32>) -> Self {
        partials.sort_unstable();
        self.partials = partials;
        self
    }

    /// The same symbol with one more formal partial derivative.
    pub fn differentiated(&self, coord: u32) -> Self {
        let mut partials = self.partials.clone();
        let at = partials.partition_point(|&p| p <= coord);
        partials.insert(at, coord);
        Generator { partials, ..self.clone() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn primes(&self) -> u8 {
        self.primes
    }

    pub fn index(&self) -> &Index {
        &self.index
    }

    pub fn partials(&self) -> &[u32] {
        &self.partials
    }

    /// The single upper index, e.g. `1` for `Q^1`.
    pub fn upper_index(&self) -> Option<u32> {
        match &self.index {
            Index::Upper(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }

    pub fn lower_index(&self) -> Option<u32> {
        match &self.index {
            Index::Lower(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }
}

fn fmt_index_list(f: &mut fmt::Formatter<'_>, list: &[u32]) -> fmt::Result {
    if let [single] = list {
        write!(f, "{single}")
    } else {
        f.write_str("{")?;
        for (k, v) in list.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for _ in 0..self.primes {
            f.write_str("'")?;
        }
        match &self.index {
            Index::None => {}
            Index::Upper(v) => {
                f.write_str("^")?;
                fmt_index_list(f, v)?;
            }
            Index::Lower(v) => {
                f.write_str("_")?;
                fmt_index_list(f, v)?;
            }
        }
        if !self.partials.is_empty() {
            f.write_str("|")?;
            fmt_index_list(f, &self.partials)?;
        }
        Ok(())
    }
}

/// A monomial: an ordered product of generators. The empty word is `1`.
///
/// Words are ordered graded-lexicographically (length first), which fixes the
/// canonical order of terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(g: Generator) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl From<Vec<Generator>> for Word {
    fn from(v: Vec<Generator>) -> Self {
        Word(v)
    }
}

impl FromIterator<Generator> for Word {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        NcPoly::constant(Scalar::one())
    }

    pub fn constant(s: Scalar) -> Self {
        NcPoly::term(s, Word::empty())
    }

    pub fn gen(g: Generator) -> Self {
        NcPoly::term(Scalar::one(), Word::single(g))
    }

    /// Shorthand for a plain generator with no indices.
    pub fn var(name: &str) -> Self {
        NcPoly::gen(Generator::new(name))
    }

    pub fn word(w: Word) -> Self {
        NcPoly::term(Scalar::one(), w)
    }

    pub fn term(coeff: Scalar, word: Word) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        NcPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(iter: I) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Largest word length; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms
            .keys()
            .flat_map(|w| w.letters().iter().cloned())
            .collect()
    }

    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &Scalar) -> NcPoly {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c * s)))
    }

    pub fn scale_rational(&self, r: &Rational) -> NcPoly {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c.scale(r))))
    }

    pub fn pow(&self, n: u32) -> NcPoly {
        (0..n).fold(NcPoly::one(), |acc, _| &acc * self)
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &NcPoly) -> NcPoly {
        &(self * other) - &(other * self)
    }

    /// Replace generators by polynomials; `None` keeps the generator.
    pub fn substitute<F>(&self, f: F) -> NcPoly
    where
        F: Fn(&Generator) -> Option<NcPoly>,
    {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            let mut prod = NcPoly::constant(c.clone());
            for g in w.letters() {
                let image = f(g).unwrap_or_else(|| NcPoly::gen(g.clone()));
                prod = &prod * &image;
            }
            out += &prod;
        }
        out
    }

    /// Apply a scalar map to every coefficient.
    pub fn map_coeffs<F>(&self, f: F) -> NcPoly
    where
        F: Fn(&Scalar) -> Scalar,
    {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }
}

/// `[a, b] = ab − ba`.
pub fn commutator(a: &NcPoly, b: &NcPoly) -> NcPoly {
    a.commutator(b)
}

/// The inner derivation `F ↦ [F, N]`.
#[derive(Clone, Debug)]
pub struct Derivation {
    n: NcPoly,
}

impl Derivation {
    pub fn new(n: NcPoly) -> Self {
        Derivation { n }
    }

    pub fn element(&self) -> &NcPoly {
        &self.n
    }

    pub fn apply(&self, f: &NcPoly) -> NcPoly {
        f.commutator(&self.n)
    }
}

pub fn derivation(n: &NcPoly) -> Derivation {
    Derivation::new(n.clone())
}

/// `R_ab:c + R_ca:b + R_bc:a` with `R_ab = [N_a, N_b]` and `X:c = [X, N_c]`.
/// Zero by the Jacobi identity.
pub fn bianchi_residual(na: &NcPoly, nb: &NcPoly, nc: &NcPoly) -> NcPoly {
    let r = |x: &NcPoly, y: &NcPoly| x.commutator(y);
    r(&r(na, nb), nc) + r(&r(nc, na), nb) + r(&r(nb, nc), na)
}

impl From<Generator> for NcPoly {
    fn from(g: Generator) -> Self {
        NcPoly::gen(g)
    }
}

impl From<Scalar> for NcPoly {
    fn from(s: Scalar) -> Self {
        NcPoly::constant(s)
    }
}

impl AddAssign<&NcPoly> for NcPoly {
    fn add_assign(&mut self, rhs: &NcPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl AddAssign<NcPoly> for NcPoly {
    fn add_assign(&mut self, rhs: NcPoly) {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
    }
}

impl<'a> Add<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        -&self
    }
}

impl<'a> Mul<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<NcPoly> for NcPoly {
            type Output = NcPoly;
            fn $m(self, rhs: NcPoly) -> NcPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&NcPoly> for NcPoly {
            type Output = NcPoly;
            fn $m(self, rhs: &NcPoly) -> NcPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<NcPoly> for &NcPoly {
            type Output = NcPoly;
            fn $m(self, rhs: NcPoly) -> NcPoly {
                self.$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for NcPoly {
    fn sum<I: Iterator<Item = NcPoly>>(iter: I) -> NcPoly {
        iter.fold(NcPoly::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

/// Canonical text: terms in word order joined by ` + `, coefficients other
/// than `1` in parentheses before the word, e.g. `(1/2) X.Y + (1/2) Y.X`.
impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match (c.is_one(), w.is_empty()) {
                (true, _) => write!(f, "{w}")?,
                (false, true) => write!(f, "({c})")?,
                (false, false) => write!(f, "({c}) {w}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> NcPoly {
        NcPoly::var("A")
    }
    fn b() -> NcPoly {
        NcPoly::var("B")
    }
    fn c() -> NcPoly {
        NcPoly::var("C")
    }

    #[test]
    fn additive_inverse_and_identity() {
        assert!((&a() + &a().scale(&Scalar::from_int(-1))).is_zero());
        assert_eq!(a().scale(&Scalar::one()), a());
    }

    #[test]
    fn coefficient_merge() {
        let ab = &a() * &b();
        let ba = &b() * &a();
        let lhs = &(&ab + &ba) + &(&ab - &ba);
        assert_eq!(lhs, ab.scale(&Scalar::from_int(2)));
    }

    #[test]
    fn noncommutative_expansion() {
        let lhs = &(&a() + &b()) * &(&a() - &b());
        let rhs = &(&(&a().pow(2) - &(&a() * &b())) + &(&b() * &a())) - &b().pow(2);
        assert_eq!(lhs, rhs);
        assert_ne!(&a() * &b(), &b() * &a());
        assert_eq!(&NcPoly::one() * &a(), a());
        assert_eq!(&NcPoly::word(Word::empty()) * &a(), a());
    }

    #[test]
    fn associativity_example() {
        let (t, h) = (NcPoly::var("Θ"), NcPoly::var("H"));
        assert_eq!(&(&t * &h) * &h, &t * &(&h * &h));
    }

    #[test]
    fn double_commutator_expansion() {
        let (t, h) = (NcPoly::var("Θ"), NcPoly::var("H"));
        let lhs = t.commutator(&h).commutator(&h);
        let expected = &(&(&t * &h.pow(2)) + &(&h.pow(2) * &t))
            - &(&(&h * &t) * &h).scale(&Scalar::from_int(2));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn jacobi_on_generators() {
        let jac = &(&a().commutator(&b()).commutator(&c())
            + &c().commutator(&a()).commutator(&b()))
            + &b().commutator(&c()).commutator(&a());
        assert!(jac.is_zero());
        assert!(a().commutator(&a()).is_zero());
    }

    #[test]
    fn derivation_basics() {
        let j = NcPoly::var("J");
        let d = derivation(&j);
        assert!(d.apply(&NcPoly::one()).is_zero());
        let f = NcPoly::var("F");
        assert_eq!(d.apply(&f), &(&f * &j) - &(&j * &f));
    }

    #[test]
    fn zero_polynomial_is_accepted_everywhere() {
        let z = NcPoly::zero();
        assert!((&z * &a()).is_zero());
        assert!(z.commutator(&a()).is_zero());
        assert_eq!(&z + &a(), a());
        assert_eq!(z.degree(), None);
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn canonical_text() {
        let (x, y) = (NcPoly::var("X"), NcPoly::var("Y"));
        let sym = (&(&x * &y) + &(&y * &x)).scale(&Scalar::ratio(1, 2));
        assert_eq!(sym.to_string(), "(1/2) X.Y + (1/2) Y.X");
        let (t, h) = (NcPoly::var("Θ"), NcPoly::var("H"));
        let dc = t.commutator(&h).commutator(&h);
        assert_eq!(dc.to_string(), "H.H.Θ + (-2) H.Θ.H + Θ.H.H");
        assert_eq!(NcPoly::constant(Scalar::from_int(-1)).to_string(), "(-1)");
        assert_eq!(NcPoly::one().to_string(), "1");
    }

    #[test]
    fn generator_display_and_order() {
        assert_eq!(Generator::upper("Q", 1).to_string(), "Q^1");
        assert_eq!(Generator::lower("P", 2).to_string(), "P_2");
        assert_eq!(Generator::new("H").with_primes(2).to_string(), "H''");
        let theta = Generator::new("Θ").with_index(Index::Lower(vec![1, 2]));
        assert_eq!(theta.to_string(), "Θ_{1,2}");
        let dtheta = Generator::new("θ").differentiated(2).differentiated(1);
        assert_eq!(dtheta.partials(), &[1, 2]);
        assert_eq!(dtheta.to_string(), "θ|{1,2}");
        assert_eq!(Generator::new("θ").differentiated(3).to_string(), "θ|3");
        assert!(Generator::upper("Q", 1) < Generator::upper("Q", 2));
        let short = Word::single(Generator::new("Z"));
        let long = Word::from(vec![Generator::new("A"), Generator::new("A")]);
        assert!(short < long);
    }
}
