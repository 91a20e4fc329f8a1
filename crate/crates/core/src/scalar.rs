//! The coefficient ring: Gaussian rationals extended by central parameter
//! symbols (ħ, m, Δt, τ, ...) carrying integer exponents.
//!
//! A [`Scalar`] is a finite sum of parameter monomials with Gaussian rational
//! coefficients, i.e. an element of `Q(i)[p₁^±1, ..., pₖ^±1]`. Parameters
//! commute with everything. Monomials with a single term are invertible, which
//! is what exact division by `Δt` or `m` needs.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;
pub type Gaussian = Complex<Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("scalar {0} is not invertible (only nonzero single-term scalars are)")]
    NotInvertible(String),
    #[error("substituting zero for `{0}` where it carries a negative exponent")]
    ZeroToNegativePower(String),
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Product of parameter powers; sorted by name, zero exponents absent.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Arc<str>, i32)>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn power(name: &str, exp: i32) -> Self {
        if exp == 0 {
            Monomial::unit()
        } else {
            Monomial(vec![(Arc::from(name), exp)])
        }
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, name: &str) -> i32 {
        self.0
            .iter()
            .find(|(n, _)| n.as_ref() == name)
            .map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&str, i32)> {
        self.0.iter().map(|(n, e)| (n.as_ref(), *e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(Arc<str>, i32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((na, ea)), Some((nb, eb))) => match na.cmp(nb) {
                    std::cmp::Ordering::Less => {
                        out.push((na.clone(), *ea));
                        a.next();
                    }
                    std::cmp::Ordering::Greater => {
                        out.push((nb.clone(), *eb));
                        b.next();
                    }
                    std::cmp::Ordering::Equal => {
                        let e = ea + eb;
                        if e != 0 {
                            out.push((na.clone(), e));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(x), None) => {
                    out.push((*x).clone());
                    a.next();
                }
                (None, Some(y)) => {
                    out.push((*y).clone());
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|(n, e)| (n.clone(), -e)).collect())
    }

    fn without(&self, name: &str) -> Monomial {
        Monomial(self.0.iter().filter(|(n, _)| n.as_ref() != name).cloned().collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (name, exp)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "${name}")?;
            if *exp != 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    terms: BTreeMap<Monomial, Gaussian>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    /// The central imaginary unit.
    pub fn i() -> Self {
        Scalar::from_gaussian(Gaussian::new(Rational::zero(), Rational::one()))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::from_rational(rational(num, den))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::from_gaussian(Gaussian::new(r, Rational::zero()))
    }

    pub fn from_gaussian(g: Gaussian) -> Self {
        Scalar::term(Monomial::unit(), g)
    }

    pub fn param(name: &str) -> Self {
        Scalar::param_pow(name, 1)
    }

    pub fn param_pow(name: &str, exp: i32) -> Self {
        Scalar::term(Monomial::power(name, exp), Gaussian::one())
    }

    pub fn term(mono: Monomial, coeff: Gaussian) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_gaussian().is_some_and(|g| g.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Gaussian)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The numeric value if no parameters are involved.
    pub fn as_gaussian(&self) -> Option<Gaussian> {
        match self.terms.len() {
            0 => Some(Gaussian::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_unit())
                .map(|(_, g)| g.clone()),
            _ => None,
        }
    }

    /// The value as a real rational, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        self.as_gaussian().filter(|g| g.im.is_zero()).map(|g| g.re)
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.terms.len() != 1 {
            return Err(ScalarError::NotInvertible(self.to_string()));
        }
        let (mono, g) = self.terms.iter().next().expect("one term");
        Ok(Scalar::term(mono.inv(), g.inv()))
    }

    pub fn pow(&self, exp: i32) -> Result<Scalar, ScalarError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut out = Scalar::one();
        for _ in 0..exp.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, g)| (m.clone(), Gaussian::new(&g.re * r, &g.im * r)))
                .collect(),
        }
    }

    /// Replace parameter `name` by `value` everywhere.
    pub fn substitute(&self, name: &str, value: &Scalar) -> Result<Scalar, ScalarError> {
        let mut out = Scalar::zero();
        for (mono, g) in &self.terms {
            let exp = mono.exponent(name);
            let rest = Scalar::term(mono.without(name), g.clone());
            let factor = if exp < 0 && value.is_zero() {
                return Err(ScalarError::ZeroToNegativePower(name.to_string()));
            } else {
                value.pow(exp)?
            };
            out += &rest * &factor;
        }
        Ok(out)
    }

    /// Largest absolute value among all real and imaginary coefficient parts.
    pub fn max_abs_component(&self) -> Rational {
        self.terms
            .values()
            .flat_map(|g| [g.re.abs(), g.im.abs()])
            .max()
            .unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, mono: &Monomial, g: &Gaussian) {
        if g.is_zero() {
            return;
        }
        match self.terms.get_mut(mono) {
            Some(c) => {
                *c = &*c + g;
                if c.is_zero() {
                    self.terms.remove(mono);
                }
            }
            None => {
                self.terms.insert(mono.clone(), g.clone());
            }
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (m, g) in &rhs.terms {
            self.add_term(m, g);
        }
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (m, g) in &rhs.terms {
            out.add_term(m, &-g.clone());
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(m, g)| (m.clone(), -g.clone())).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ma, ga) in &self.terms {
            for (mb, gb) in &rhs.terms {
                out.add_term(&ma.mul(mb), &(ga * gb));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Splits a Gaussian into a sign and a printable magnitude.
fn gaussian_parts(g: &Gaussian) -> (bool, String) {
    if g.im.is_zero() {
        (g.re.is_negative(), fmt_rational(&g.re.abs()))
    } else if g.re.is_zero() {
        let mag = g.im.abs();
        let text = if mag.is_one() {
            "i".to_string()
        } else {
            format!("{} i", fmt_rational(&mag))
        };
        (g.im.is_negative(), text)
    } else {
        let sign = if g.im.is_negative() { '-' } else { '+' };
        let im = g.im.abs();
        let im_text = if im.is_one() {
            "i".to_string()
        } else {
            format!("{} i", fmt_rational(&im))
        };
        (false, format!("({} {sign} {im_text})", fmt_rational(&g.re)))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (mono, g)) in self.terms.iter().enumerate() {
            let (neg, mag) = gaussian_parts(g);
            let body = if mono.is_unit() {
                mag
            } else if mag == "1" {
                mono.to_string()
            } else {
                format!("{mag} {mono}")
            };
            match (k, neg) {
                (0, false) => f.write_str(&body)?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let third = Scalar::ratio(1, 3);
        let sum = &(&third + &third) + &third;
        assert_eq!(sum, Scalar::one());
        let tiny = Scalar::ratio(1, 1_000_000_007);
        let big = Scalar::from_int(1_000_000_007);
        assert!((&tiny * &big).is_one());
    }

    #[test]
    fn parameters_cancel_exactly() {
        let dt = Scalar::param("dt");
        let inv = dt.inv().unwrap();
        assert!((&dt * &inv).is_one());
        let sum = &Scalar::param("hbar") + &Scalar::param("m");
        assert!(sum.inv().is_err());
    }

    #[test]
    fn zero_exponents_are_dropped() {
        let a = Scalar::param_pow("m", 2);
        let b = Scalar::param_pow("m", -2);
        let prod = &a * &b;
        assert_eq!(prod, Scalar::one());
        assert!(prod.terms().all(|(m, _)| m.is_unit()));
    }

    #[test]
    fn substitution() {
        let e = &Scalar::param("hbar") * &Scalar::param_pow("m", -1);
        assert!(e.substitute("hbar", &Scalar::zero()).unwrap().is_zero());
        assert!(e.substitute("m", &Scalar::zero()).is_err());
        assert_eq!(
            e.substitute("m", &Scalar::from_int(2)).unwrap(),
            &Scalar::param("hbar") * &Scalar::ratio(1, 2)
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(Scalar::i().to_string(), "i");
        assert_eq!((-Scalar::i()).to_string(), "-i");
        let z = &Scalar::one() + &(&Scalar::from_int(-2) * &Scalar::i());
        assert_eq!(z.to_string(), "(1 - 2 i)");
        let p = &(&Scalar::i() * &Scalar::param("hbar")) * &Scalar::param_pow("m", -1);
        assert_eq!(p.to_string(), "i $hbar $m^-1");
        let s = &Scalar::param("a") - &Scalar::param("b");
        assert_eq!(s.to_string(), "$a - $b");
    }

    fn small_scalar() -> impl Strategy<Value = Scalar> {
        let term = (-4i64..=4, 1i64..=3, -2i64..=2, -2i32..=2, -1i32..=2).prop_map(
            |(n, d, im, ea, eb)| {
                let g = Gaussian::new(rational(n, d), int(im));
                let mono = Monomial::power("a", ea).mul(&Monomial::power("b", eb));
                Scalar::term(mono, g)
            },
        );
        proptest::collection::vec(term, 0..3).prop_map(|ts| {
            ts.iter().fold(Scalar::zero(), |acc, t| &acc + t)
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&a * &Scalar::one(), a.clone());
        }
    }
}
