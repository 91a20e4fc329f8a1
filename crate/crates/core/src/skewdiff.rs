//! Shift-operator calculus on finite time series.
//!
//! A [`SkewElement`] is a finite sum `Σ J^a f_a` of powers of the shift `J`
//! times sequences, multiplied by `(J^a f)(J^b g) = J^{a+b}(f^{(b)} g)` where
//! `f^{(b)}(t) = f(t+b)`. Finite windows make "J consumes a tick" literal:
//! a shifted sequence is translated, and pointwise operations keep only the
//! overlap.
//!
//! The field equations are written once over [`EmAlgebra`] and instantiated
//! both on sequences and on the free algebra.

use std::collections::BTreeMap;
use std::convert::Infallible;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::ncpoly::{Generator, NcPoly};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkewError {
    #[error("window exhausted: [{0}, {1}) and [{2}, {3}) do not overlap")]
    WindowExhausted(i64, i64, i64, i64),
    #[error("time step {0} is not invertible")]
    NotInvertible(String),
}

/// A time series, either constant for all time or known on `[start, start+len)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sequence {
    Constant(Scalar),
    Window { start: i64, values: Vec<Scalar> },
}

impl Sequence {
    pub fn constant(s: Scalar) -> Self {
        Sequence::Constant(s)
    }

    pub fn new(start: i64, values: Vec<Scalar>) -> Self {
        Sequence::Window { start, values }
    }

    pub fn from_ints(start: i64, values: &[i64]) -> Self {
        Sequence::new(start, values.iter().map(|&v| Scalar::from_int(v)).collect())
    }

    /// Half-open window, or `None` for a constant.
    pub fn window(&self) -> Option<(i64, i64)> {
        match self {
            Sequence::Constant(_) => None,
            Sequence::Window { start, values } => Some((*start, *start + values.len() as i64)),
        }
    }

    pub fn at(&self, t: i64) -> Option<&Scalar> {
        match self {
            Sequence::Constant(c) => Some(c),
            Sequence::Window { start, values } => {
                usize::try_from(t - start).ok().and_then(|i| values.get(i))
            }
        }
    }

    /// `f^{(b)}(t) = f(t+b)`.
    pub fn shift(&self, b: u32) -> Sequence {
        match self {
            Sequence::Constant(_) => self.clone(),
            Sequence::Window { start, values } => Sequence::Window {
                start: start - i64::from(b),
                values: values.clone(),
            },
        }
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Sequence {
        match self {
            Sequence::Constant(c) => Sequence::Constant(f(c)),
            Sequence::Window { start, values } => Sequence::Window {
                start: *start,
                values: values.iter().map(f).collect(),
            },
        }
    }

    pub fn zip_with(
        &self,
        other: &Sequence,
        f: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<Sequence, SkewError> {
        let (lo, hi) = match (self.window(), other.window()) {
            (None, None) => {
                let (Sequence::Constant(a), Sequence::Constant(b)) = (self, other) else {
                    unreachable!()
                };
                return Ok(Sequence::Constant(f(a, b)));
            }
            (Some(w), None) | (None, Some(w)) => w,
            (Some((a0, a1)), Some((b0, b1))) => {
                let (lo, hi) = (a0.max(b0), a1.min(b1));
                if lo >= hi {
                    return Err(SkewError::WindowExhausted(a0, a1, b0, b1));
                }
                (lo, hi)
            }
        };
        let values = (lo..hi)
            .map(|t| f(self.at(t).expect("in window"), other.at(t).expect("in window")))
            .collect();
        Ok(Sequence::new(lo, values))
    }

    pub fn add(&self, other: &Sequence) -> Result<Sequence, SkewError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Sequence) -> Result<Sequence, SkewError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Sequence) -> Result<Sequence, SkewError> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, s: &Scalar) -> Sequence {
        self.map(|x| x * s)
    }

    /// The raw forward difference `Df = f′ − f`.
    pub fn difference(&self) -> Result<Sequence, SkewError> {
        self.shift(1).sub(self)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Sequence::Constant(c) => c.is_zero(),
            Sequence::Window { values, .. } => values.iter().all(Scalar::is_zero),
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Sequence::Constant(_) => true,
            Sequence::Window { values, .. } => values.iter().all_equal(),
        }
    }

    pub fn values(&self) -> Option<&[Scalar]> {
        match self {
            Sequence::Constant(_) => None,
            Sequence::Window { values, .. } => Some(values),
        }
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sequence::Constant(c) => write!(f, "{c}"),
            Sequence::Window { start, values } => {
                write!(f, "@{start}<{}>", values.iter().join(", "))
            }
        }
    }
}

/// `Σ_a J^a f_a`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SkewElement {
    terms: BTreeMap<u32, Sequence>,
}

impl SkewElement {
    pub fn zero() -> Self {
        SkewElement::default()
    }

    pub fn one() -> Self {
        SkewElement::term(0, Sequence::constant(Scalar::one()))
    }

    /// The shift `J`.
    pub fn j() -> Self {
        SkewElement::term(1, Sequence::constant(Scalar::one()))
    }

    pub fn term(power: u32, f: Sequence) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(power, f);
        SkewElement { terms }
    }

    pub fn sequence(f: Sequence) -> Self {
        SkewElement::term(0, f)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Sequence)> {
        self.terms.iter().map(|(a, f)| (*a, f))
    }

    pub fn coefficient(&self, power: u32) -> Option<&Sequence> {
        self.terms.get(&power)
    }

    fn accumulate(&mut self, power: u32, f: Sequence) -> Result<(), SkewError> {
        let next = match self.terms.remove(&power) {
            Some(g) => g.add(&f)?,
            None => f,
        };
        if next != Sequence::Constant(Scalar::zero()) {
            self.terms.insert(power, next);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SkewError> {
        let mut out = self.clone();
        for (a, f) in &other.terms {
            out.accumulate(*a, f.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SkewError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        SkewElement {
            terms: self.terms.iter().map(|(a, f)| (*a, f.scale(s))).collect(),
        }
    }

    /// The skew product `(J^a f)(J^b g) = J^{a+b}(f^{(b)} g)`.
    pub fn skew_mul(&self, other: &Self) -> Result<Self, SkewError> {
        let mut out = SkewElement::zero();
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                out.accumulate(a + b, f.shift(*b).mul(g)?)?;
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self, SkewError> {
        self.skew_mul(other)?.sub(&other.skew_mul(self)?)
    }

    /// `∇f = [f, J]/Δt`.
    pub fn nabla(&self, dt: &Scalar) -> Result<Self, SkewError> {
        let inv = dt.inv().map_err(|_| SkewError::NotInvertible(dt.to_string()))?;
        Ok(self.commutator(&SkewElement::j())?.scale(&inv))
    }

    /// Zero on every term's window.
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(Sequence::is_zero)
    }
}

impl fmt::Display for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // zero coefficients are dropped so that a vanishing element prints as `0`
        let live: Vec<_> = self.terms.iter().filter(|(_, s)| !s.is_zero()).collect();
        if live.is_empty() {
            return f.write_str("0");
        }
        let parts = live.into_iter().map(|(a, s)| match a {
            0 => format!("{s}"),
            1 => format!("J·{s}"),
            _ => format!("J^{a}·{s}"),
        });
        f.write_str(&parts.collect::<Vec<_>>().join(" + "))
    }
}

/// `[x, ∇x]` for the position series `x`.
pub fn position_velocity_commutator(x: &Sequence, dt: &Scalar) -> Result<SkewElement, SkewError> {
    let x = SkewElement::sequence(x.clone());
    x.commutator(&x.nabla(dt)?)
}

/// The closed form `J(Δx)²/Δt`.
pub fn diffusion_term(x: &Sequence, dt: &Scalar) -> Result<SkewElement, SkewError> {
    let inv = dt.inv().map_err(|_| SkewError::NotInvertible(dt.to_string()))?;
    let d = x.difference()?;
    Ok(SkewElement::term(1, d.mul(&d)?.scale(&inv)))
}

/// `ε_ijk` on zero-based indices.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonCase {
    /// One-based `(a, b, c, d)`.
    pub indices: [usize; 4],
    pub lhs: i64,
    pub rhs: i64,
}

/// `Σ_i ε_abi ε_cdi = −δ_ad δ_bc + δ_ac δ_bd` over all 81 tuples.
pub fn epsilon_identity_check() -> Vec<EpsilonCase> {
    (0..4)
        .map(|_| 0..3)
        .multi_cartesian_product()
        .map(|t| {
            let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
            let lhs = (0..3).map(|i| levi_civita(a, b, i) * levi_civita(c, d, i)).sum();
            let rhs = -delta(a, d) * delta(b, c) + delta(a, c) * delta(b, d);
            EpsilonCase { indices: [a + 1, b + 1, c + 1, d + 1], lhs, rhs }
        })
        .collect()
}

/// A ring with fallible operations, enough to state the field equations.
pub trait EmAlgebra: Clone {
    type Error;
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Result<Self, Self::Error>;
    fn sub(&self, other: &Self) -> Result<Self, Self::Error>;
    fn mul(&self, other: &Self) -> Result<Self, Self::Error>;
    fn is_zero(&self) -> bool;

    fn commutator(&self, other: &Self) -> Result<Self, Self::Error> {
        self.mul(other)?.sub(&other.mul(self)?)
    }
}

impl EmAlgebra for SkewElement {
    type Error = SkewError;
    fn zero() -> Self {
        SkewElement::zero()
    }
    fn add(&self, other: &Self) -> Result<Self, SkewError> {
        SkewElement::add(self, other)
    }
    fn sub(&self, other: &Self) -> Result<Self, SkewError> {
        SkewElement::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Result<Self, SkewError> {
        self.skew_mul(other)
    }
    fn is_zero(&self) -> bool {
        SkewElement::is_zero(self)
    }
}

impl EmAlgebra for NcPoly {
    type Error = Infallible;
    fn zero() -> Self {
        NcPoly::zero()
    }
    fn add(&self, other: &Self) -> Result<Self, Infallible> {
        Ok(self + other)
    }
    fn sub(&self, other: &Self) -> Result<Self, Infallible> {
        Ok(self - other)
    }
    fn mul(&self, other: &Self) -> Result<Self, Infallible> {
        Ok(self * other)
    }
    fn is_zero(&self) -> bool {
        NcPoly::is_zero(self)
    }
}

/// A triple of components; products keep the written order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vec3<R>(pub [R; 3]);

impl<R: EmAlgebra> Vec3<R> {
    pub fn try_map(&self, f: impl Fn(&R) -> Result<R, R::Error>) -> Result<Self, R::Error> {
        Ok(Vec3([f(&self.0[0])?, f(&self.0[1])?, f(&self.0[2])?]))
    }

    pub fn zip(&self, other: &Self, f: impl Fn(&R, &R) -> Result<R, R::Error>) -> Result<Self, R::Error> {
        Ok(Vec3([
            f(&self.0[0], &other.0[0])?,
            f(&self.0[1], &other.0[1])?,
            f(&self.0[2], &other.0[2])?,
        ]))
    }

    pub fn add(&self, other: &Self) -> Result<Self, R::Error> {
        self.zip(other, R::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, R::Error> {
        self.zip(other, R::sub)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(R::is_zero)
    }
}

fn signed_sum<R: EmAlgebra>(
    terms: impl IntoIterator<Item = (i64, Result<R, R::Error>)>,
) -> Result<R, R::Error> {
    let mut acc = R::zero();
    for (sign, t) in terms {
        acc = match sign {
            0 => acc,
            s if s > 0 => acc.add(&t?)?,
            _ => acc.sub(&t?)?,
        };
    }
    Ok(acc)
}

/// `(A × B)_k = Σ ε_ijk A_i B_j`.
pub fn cross<R: EmAlgebra>(a: &Vec3<R>, b: &Vec3<R>) -> Result<Vec3<R>, R::Error> {
    curl_with(|i, j| a.0[i].mul(&b.0[j]))
}

/// `A • B = Σ A_i B_i`.
pub fn dot<R: EmAlgebra>(a: &Vec3<R>, b: &Vec3<R>) -> Result<R, R::Error> {
    signed_sum((0..3).map(|i| (1, a.0[i].mul(&b.0[i]))))
}

fn curl_with<R: EmAlgebra>(
    f: impl Fn(usize, usize) -> Result<R, R::Error>,
) -> Result<Vec3<R>, R::Error> {
    let component = |k| {
        signed_sum(
            (0..3)
                .cartesian_product(0..3)
                .map(|(i, j)| (levi_civita(i, j, k), f(i, j)))
                .filter(|(s, _)| *s != 0),
        )
    };
    Ok(Vec3([component(0)?, component(1)?, component(2)?]))
}

/// Spatial and temporal derivatives determined by the velocities `Ẋ` and
/// the time derivative `dot`.
pub struct Frame<'a, R: EmAlgebra> {
    pub velocity: Vec3<R>,
    pub dot: &'a dyn Fn(&R) -> Result<R, R::Error>,
}

impl<R: EmAlgebra> Frame<'_, R> {
    /// `∂_i F = [F, Ẋ_i]`.
    pub fn partial(&self, i: usize, f: &R) -> Result<R, R::Error> {
        f.commutator(&self.velocity.0[i])
    }

    /// `∂_t F = Ḟ − Σ_i Ẋ_i ∂_i F`.
    pub fn partial_t(&self, f: &R) -> Result<R, R::Error> {
        let mut acc = (self.dot)(f)?;
        for i in 0..3 {
            acc = acc.sub(&self.velocity.0[i].mul(&self.partial(i, f)?)?)?;
        }
        Ok(acc)
    }

    pub fn divergence(&self, v: &Vec3<R>) -> Result<R, R::Error> {
        signed_sum((0..3).map(|i| (1, self.partial(i, &v.0[i]))))
    }

    pub fn curl(&self, v: &Vec3<R>) -> Result<Vec3<R>, R::Error> {
        curl_with(|i, j| self.partial(i, &v.0[j]))
    }

    pub fn laplacian(&self, f: &R) -> Result<R, R::Error> {
        signed_sum((0..3).map(|i| (1, self.partial(i, f).and_then(|g| self.partial(i, &g)))))
    }

    /// `(E, B) = (∂_t Ẋ, Ẋ × Ẋ)`.
    pub fn fields(&self) -> Result<(Vec3<R>, Vec3<R>), R::Error> {
        let e = self.velocity.try_map(|v| self.partial_t(v))?;
        let b = cross(&self.velocity, &self.velocity)?;
        Ok((e, b))
    }

    pub fn residuals(&self) -> Result<EmResiduals<R>, R::Error> {
        let (e, b) = self.fields()?;
        let v = &self.velocity;
        let accel = v.try_map(|x| (self.dot)(x))?;
        let lorentz = accel.sub(&e)?.sub(&cross(v, &b)?)?;
        let divergence = self.divergence(&b)?;
        let b_cross_b = cross(&b, &b)?;
        let faraday = b
            .try_map(|c| self.partial_t(c))?
            .add(&self.curl(&e)?)?
            .sub(&b_cross_b)?;
        let wave = v.try_map(|x| {
            let tt = self.partial_t(&self.partial_t(x)?)?;
            tt.sub(&self.laplacian(x)?)
        })?;
        let ampere = e
            .try_map(|c| self.partial_t(c))?
            .sub(&self.curl(&b)?)?
            .sub(&wave)?;
        Ok(EmResiduals { lorentz, divergence, faraday, ampere, b_cross_b })
    }

    /// `∂_t(FG) − ∂_t(F)G − F∂_t(G) − Σ_i ∂_i(F)∂_i(G)`.
    pub fn modified_leibniz_residual(&self, f: &R, g: &R) -> Result<R, R::Error> {
        let mut r = self
            .partial_t(&f.mul(g)?)?
            .sub(&self.partial_t(f)?.mul(g)?)?
            .sub(&f.mul(&self.partial_t(g)?)?)?;
        for i in 0..3 {
            r = r.sub(&self.partial(i, f)?.mul(&self.partial(i, g)?)?)?;
        }
        Ok(r)
    }
}

/// Residuals of the four field equations, with `B × B` alongside.
#[derive(Clone, Debug)]
pub struct EmResiduals<R> {
    /// `Ẍ − E − Ẋ × B`.
    pub lorentz: Vec3<R>,
    /// `∇ • B`.
    pub divergence: R,
    /// `∂_t B + ∇ × E − B × B`.
    pub faraday: Vec3<R>,
    /// `∂_t E − ∇ × B − (∂_t² − ∇²)Ẋ`.
    pub ampere: Vec3<R>,
    pub b_cross_b: Vec3<R>,
}

impl<R: EmAlgebra> EmResiduals<R> {
    /// Whether each of the four equations holds, in order.
    pub fn equations(&self) -> [bool; 4] {
        [
            self.lorentz.is_zero(),
            self.divergence.is_zero(),
            self.faraday.is_zero(),
            self.ampere.is_zero(),
        ]
    }

    pub fn all_hold(&self) -> bool {
        self.equations().iter().all(|&b| b)
    }

    pub fn b_cross_b_nonzero(&self) -> bool {
        !self.b_cross_b.is_zero()
    }
}

pub const EQUATION_NAMES: [&str; 4] = [
    "Ẍ = E + Ẋ×B",
    "∇•B = 0",
    "∂_t B + ∇×E = B×B",
    "∂_t E − ∇×B = (∂_t² − ∇²)Ẋ",
];

/// Positions `X_i` as sequences, velocities `Ẋ_i = ∇X_i`.
pub fn sequence_frame(x: &[Sequence; 3], dt: &Scalar) -> Result<SeriesFrame, SkewError> {
    let inv = dt.inv().map_err(|_| SkewError::NotInvertible(dt.to_string()))?;
    let nab = |s: &Sequence| SkewElement::sequence(s.clone()).nabla(dt);
    Ok(SeriesFrame {
        velocity: Vec3([nab(&x[0])?, nab(&x[1])?, nab(&x[2])?]),
        inv_dt: inv,
    })
}

/// Owned counterpart of [`Frame`] for the sequence model.
pub struct SeriesFrame {
    pub velocity: Vec3<SkewElement>,
    inv_dt: Scalar,
}

impl SeriesFrame {
    pub fn dot(&self, f: &SkewElement) -> Result<SkewElement, SkewError> {
        Ok(f.commutator(&SkewElement::j())?.scale(&self.inv_dt))
    }

    pub fn with<T>(&self, body: impl FnOnce(&Frame<'_, SkewElement>) -> T) -> T {
        let dot = |f: &SkewElement| self.dot(f);
        body(&Frame { velocity: self.velocity.clone(), dot: &dot })
    }
}

/// Field-equation residuals for integer position series, with `Δt = 1`.
pub fn em_theorem_check(x: &[Sequence; 3], dt: &Scalar) -> Result<EmResiduals<SkewElement>, SkewError> {
    sequence_frame(x, dt)?.with(|frame| frame.residuals())
}

/// Residuals of the closed forms `B = J²Δ(X′)×Δ(X)` and
/// `E = J²Δ²X − J³Δ(X″)×(Δ(X′)×Δ(X))`, for `Δt = 1`.
pub fn em_closed_form_residuals(x: &[Sequence; 3]) -> Result<[Vec3<SkewElement>; 2], SkewError> {
    let one = Scalar::one();
    let frame = sequence_frame(x, &one)?;
    let (e, b) = frame.with(|f| f.fields())?;
    let d: Vec<Sequence> = x.iter().map(Sequence::difference).try_collect()?;
    let seqs = |shift: u32| -> Vec3<SkewElement> {
        Vec3(std::array::from_fn(|i| SkewElement::sequence(d[i].shift(shift))))
    };
    let (d0, d1, d2) = (seqs(0), seqs(1), seqs(2));
    let j2 = SkewElement::term(2, Sequence::constant(one.clone()));
    let j3 = SkewElement::term(3, Sequence::constant(one));
    let b_closed = cross(&d1, &d0)?.try_map(|c| j2.skew_mul(c))?;
    let dd: Vec<SkewElement> = d
        .iter()
        .map(|s| s.difference().map(SkewElement::sequence))
        .try_collect()?;
    let triple = cross(&d2, &cross(&d1, &d0)?)?;
    let mut e_closed = Vec::with_capacity(3);
    for (ddi, ti) in dd.iter().zip(&triple.0) {
        e_closed.push(j2.skew_mul(ddi)?.sub(&j3.skew_mul(ti)?)?);
    }
    let e_closed = Vec3(<[SkewElement; 3]>::try_from(e_closed).expect("three components"));
    Ok([b.sub(&b_closed)?, e.sub(&e_closed)?])
}

/// For a commuting series `F`: residuals of `∂_i F = Ḟ Δ_i` (i = 1..3) and
/// of `∂_t F = J[1 − J Δ′•Δ]Δ(F)`, with `Δt = 1`.
pub fn commuting_derivative_residuals(
    x: &[Sequence; 3],
    f: &Sequence,
) -> Result<[SkewElement; 4], SkewError> {
    let one = Scalar::one();
    let frame = sequence_frame(x, &one)?;
    let fe = SkewElement::sequence(f.clone());
    let fdot = frame.dot(&fe)?;
    let d: Vec<Sequence> = x.iter().map(Sequence::difference).try_collect()?;
    let mut out = Vec::with_capacity(4);
    for (i, di) in d.iter().enumerate() {
        let lhs = frame.with(|fr| fr.partial(i, &fe))?;
        out.push(lhs.sub(&fdot.skew_mul(&SkewElement::sequence(di.clone()))?)?);
    }
    let mut dd = Sequence::constant(Scalar::zero());
    for di in &d {
        dd = dd.add(&di.shift(1).mul(di)?)?;
    }
    let j = SkewElement::j();
    let bracket = SkewElement::one().sub(&j.skew_mul(&SkewElement::sequence(dd))?)?;
    let rhs = j
        .skew_mul(&bracket)?
        .skew_mul(&SkewElement::sequence(f.difference()?))?;
    let lhs = frame.with(|fr| fr.partial_t(&fe))?;
    out.push(lhs.sub(&rhs)?);
    Ok(out.try_into().expect("four residuals"))
}

/// The free-algebra instance: velocities `V_1, V_2, V_3`, shift `J`, `Ḟ = [F, J]`.
pub fn free_em_residuals() -> EmResiduals<NcPoly> {
    let j = NcPoly::gen(Generator::new("J"));
    let velocity = Vec3(std::array::from_fn(|i| {
        NcPoly::gen(Generator::lower("V", i as u32 + 1))
    }));
    let dot = move |f: &NcPoly| -> Result<NcPoly, Infallible> { Ok(f.commutator(&j)) };
    let frame = Frame { velocity, dot: &dot };
    match frame.residuals() {
        Ok(r) => r,
        Err(never) => match never {},
    }
}

/// Heisenberg relation from the diffusion law and a Wick rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wick {
    /// `[q, p/m] = (Δx)²/Δt = ħ/m` before the rotation.
    pub before_rotation: Scalar,
    /// `[q, p]` after `Δt → iΔt`.
    pub q_p: Scalar,
    /// `[p, q]`.
    pub p_q: Scalar,
}

pub fn wick_heisenberg_with(hbar: &Scalar, m: &Scalar) -> Result<Wick, SkewError> {
    let m_inv = m.inv().map_err(|_| SkewError::NotInvertible(m.to_string()))?;
    let before_rotation = hbar * &m_inv;
    let i_inv = Scalar::i().inv().expect("i is a unit");
    let q_p = &(&before_rotation * &i_inv) * m;
    Ok(Wick { before_rotation, p_q: -&q_p, q_p })
}

/// `[p, q]` with symbolic `ħ` and `m`.
pub fn wick_heisenberg() -> Wick {
    wick_heisenberg_with(&Scalar::param("hbar"), &Scalar::param("m")).expect("m is a unit")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[i64]) -> Sequence {
        Sequence::from_ints(0, v)
    }

    #[test]
    fn display_drops_vanishing_terms() {
        let z = SkewElement::term(2, seq(&[0, 0, 0]));
        assert_eq!(z.to_string(), "0");
        let e = z.add(&SkewElement::term(1, seq(&[1, 2]))).unwrap();
        assert_eq!(e.to_string(), "J·@0<1, 2>");
    }

    #[test]
    fn shift_rule() {
        let f = SkewElement::sequence(seq(&[1, 4, 9, 16]));
        let lhs = f.skew_mul(&SkewElement::j()).unwrap();
        let rhs = SkewElement::term(1, seq(&[1, 4, 9, 16]).shift(1));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.coefficient(1).unwrap().at(0), Some(&Scalar::from_int(4)));
    }

    #[test]
    fn pointwise_and_double_shift() {
        let (f, g) = (seq(&[1, 2, 3]), seq(&[5, 6, 7]));
        let p = SkewElement::sequence(f.clone()).skew_mul(&SkewElement::sequence(g.clone())).unwrap();
        assert_eq!(p, SkewElement::sequence(seq(&[5, 12, 21])));
        let jf = SkewElement::term(1, f);
        let jg = SkewElement::term(1, g);
        let p = jf.skew_mul(&jg).unwrap();
        assert_eq!(p, SkewElement::term(2, seq(&[2 * 5, 3 * 6])));
    }

    #[test]
    fn window_exhausted() {
        let a = Sequence::from_ints(0, &[1, 2]);
        let b = Sequence::from_ints(5, &[1, 2]);
        assert!(matches!(a.add(&b), Err(SkewError::WindowExhausted(..))));
    }

    #[test]
    fn nabla_examples() {
        let one = Scalar::one();
        let c = SkewElement::sequence(Sequence::constant(Scalar::from_int(7)));
        assert!(c.nabla(&one).unwrap().is_zero());
        let t = SkewElement::sequence(seq(&[0, 1, 2, 3, 4]));
        assert_eq!(t.nabla(&one).unwrap(), SkewElement::term(1, seq(&[1, 1, 1, 1])));
    }

    #[test]
    fn raw_difference_is_not_leibniz() {
        let (f, g) = (seq(&[1, 3, -2, 5]), seq(&[2, 0, 4, 1]));
        let d_fg = f.mul(&g).unwrap().difference().unwrap();
        let naive = f.difference().unwrap().mul(&g).unwrap().add(&f.mul(&g.difference().unwrap()).unwrap()).unwrap();
        assert!(!d_fg.sub(&naive).unwrap().is_zero());
        let shifted = f.difference().unwrap().mul(&g).unwrap().add(&f.shift(1).mul(&g.difference().unwrap()).unwrap()).unwrap();
        assert!(d_fg.sub(&shifted).unwrap().is_zero());
    }

    #[test]
    fn commutator_examples() {
        let one = Scalar::one();
        let alt = seq(&[0, 1, 0, 1, 0, 1]);
        let c = position_velocity_commutator(&alt, &one).unwrap();
        assert_eq!(c, SkewElement::term(1, seq(&[1; 5])));
        let lin = seq(&[0, 3, 6, 9]);
        let c = position_velocity_commutator(&lin, &one).unwrap();
        assert_eq!(c, SkewElement::term(1, seq(&[9; 3])));
    }

    #[test]
    fn diffusion_constant() {
        let step = Scalar::param("Delta");
        let tau = Scalar::param("tau");
        let signs = [1, -1, -1, 1, 1, 1, -1];
        let mut pos = vec![Scalar::zero()];
        for s in signs {
            let next = pos.last().unwrap() + &step.scale(&crate::scalar::int(s));
            pos.push(next);
        }
        let c = position_velocity_commutator(&Sequence::new(0, pos), &tau).unwrap();
        let k = &(&step * &step) * &tau.inv().unwrap();
        assert_eq!(c, SkewElement::term(1, Sequence::new(0, vec![k; signs.len()])));
    }

    #[test]
    fn epsilon_identity() {
        let cases = epsilon_identity_check();
        assert_eq!(cases.len(), 81);
        assert!(cases.iter().all(|c| c.lhs == c.rhs));
        let find = |t: [usize; 4]| cases.iter().find(|c| c.indices == t).unwrap().lhs;
        assert_eq!(find([1, 2, 1, 2]), 1);
        assert_eq!(find([1, 2, 2, 1]), -1);
        assert_eq!(find([3, 3, 1, 2]), 0);
    }

    #[test]
    fn em_linear_motion() {
        let x = [seq(&[0, 1, 2, 3, 4, 5, 6, 7]), seq(&[0, 2, 4, 6, 8, 10, 12, 14]), seq(&[1; 8])];
        let r = em_theorem_check(&x, &Scalar::one()).unwrap();
        assert!(r.all_hold());
        let (e, b) = sequence_frame(&x, &Scalar::one()).unwrap().with(|f| f.fields()).unwrap();
        assert!(e.is_zero() && b.is_zero());
    }

    #[test]
    fn em_fixed_series() {
        let x = [
            seq(&[0, 1, -1, 2, 3, -3, 0, 1, 2, -2, 1, 0]),
            seq(&[2, -1, 0, 3, -2, 1, 1, -3, 0, 2, -1, 3]),
            seq(&[-3, 0, 2, -1, 1, 3, -2, 0, 1, -1, 2, 2]),
        ];
        let r = em_theorem_check(&x, &Scalar::one()).unwrap();
        assert_eq!(r.equations(), [true; 4]);
        assert!(r.b_cross_b_nonzero());
        let [rb, re] = em_closed_form_residuals(&x).unwrap();
        assert!(rb.is_zero() && re.is_zero());
        let f = seq(&[1, -2, 3, 0, 2, -1, 1, 3, -3, 0, 1, 2]);
        for res in commuting_derivative_residuals(&x, &f).unwrap() {
            assert!(res.is_zero(), "{res}");
        }
    }

    #[test]
    fn em_free_algebra() {
        let r = free_em_residuals();
        assert_eq!(r.equations(), [true; 4]);
        assert!(r.b_cross_b_nonzero());
    }

    #[test]
    fn wick() {
        let w = wick_heisenberg();
        let hbar = Scalar::param("hbar");
        assert_eq!(w.p_q, &Scalar::i() * &hbar);
        assert_eq!(w.before_rotation, &hbar * &Scalar::param_pow("m", -1));
        let z = wick_heisenberg_with(&Scalar::zero(), &Scalar::param("m")).unwrap();
        assert!(z.p_q.is_zero());
    }
}
