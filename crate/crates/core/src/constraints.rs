//! Symmetrized products and the constraint hierarchy.
//!
//! The classical derivatives of `θ` under `θ′ = hθ` live in the commutative
//! ring [`CPoly`]. Their operator images are built with [`symmetrize`], and
//! each constraint is checked as an exact identity between free-algebra
//! polynomials.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::ncpoly::{Generator, Index, NcPoly};
use crate::quotient::{self, ReduceError, RewriteSystem};
use crate::scalar::{rational, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstraintError {
    #[error("symmetrizer needs at least one factor")]
    EmptySymmetrizer,
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

/// `{X_1⋯X_n} = (1/n!) Σ_σ X_σ1⋯X_σn`.
pub fn symmetrize(factors: &[NcPoly]) -> Result<NcPoly, ConstraintError> {
    if factors.is_empty() {
        return Err(ConstraintError::EmptySymmetrizer);
    }
    let n = factors.len();
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    let weight = Rational::new(BigInt::one(), fact);
    let sum: NcPoly = factors
        .iter()
        .permutations(n)
        .map(|p| p.into_iter().fold(NcPoly::one(), |acc, f| &acc * f))
        .sum();
    Ok(sum.scale_rational(&weight))
}

fn sym(factors: &[&NcPoly]) -> NcPoly {
    let owned: Vec<NcPoly> = factors.iter().map(|f| (*f).clone()).collect();
    symmetrize(&owned).expect("nonempty")
}

pub fn theta() -> NcPoly {
    NcPoly::gen(Generator::new("Θ"))
}

pub fn hamiltonian() -> NcPoly {
    NcPoly::gen(Generator::new("H"))
}

/// `H` with `k` time derivatives, written with primes.
pub fn hamiltonian_dot(k: u8) -> NcPoly {
    NcPoly::gen(Generator::new("H").with_primes(k))
}

/// `{ΘH²} − {{ΘH}H} − (1/12)[[Θ,H],H]`.
pub fn second_constraint_residual(theta: &NcPoly, h: &NcPoly) -> NcPoly {
    let lhs = sym(&[theta, h, h]);
    let nested = sym(&[&sym(&[theta, h]), h]);
    let twelfth = rational(1, 12);
    lhs - nested - theta.commutator(h).commutator(h).scale_rational(&twelfth)
}

/// `12({ΘH²} − {{ΘH}H}) − (ΘH² + H²Θ − 2HΘH)`.
pub fn second_constraint_requirement_residual(theta: &NcPoly, h: &NcPoly) -> NcPoly {
    let diff = sym(&[theta, h, h]) - sym(&[&sym(&[theta, h]), h]);
    let requirement = theta * h * h + h * h * theta - (h * theta * h).scale(&Scalar::from_int(2));
    diff.scale(&Scalar::from_int(12)) - requirement
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizerIdentity {
    /// `{ABC} − {A{BC}}` in normal form.
    pub difference: NcPoly,
    /// `(1/12)[A,[B,C]]` in normal form.
    pub commutator: NcPoly,
    /// `difference − commutator`.
    pub residual: NcPoly,
    /// `difference − (1/12)(ABC − 2ACB + CAB)`.
    pub intermediate_residual: NcPoly,
}

/// `{ABC} − {A{BC}} = (1/12)[A,[B,C]]` modulo the relations of `sys`.
pub fn symmetrizer_commutator_identity(
    sys: &RewriteSystem,
) -> Result<SymmetrizerIdentity, ConstraintError> {
    let g = |n: &str| NcPoly::gen(Generator::new(n));
    let (a, b, c) = (g("A"), g("B"), g("C"));
    let twelfth = rational(1, 12);
    let difference = sys.reduce(&(sym(&[&a, &b, &c]) - sym(&[&a, &sym(&[&b, &c])])))?;
    let commutator = sys.reduce(&a.commutator(&b.commutator(&c)).scale_rational(&twelfth))?;
    let words = &a * &b * &c - (&a * &c * &b).scale(&Scalar::from_int(2)) + &c * &a * &b;
    let intermediate = sys.reduce(&words.scale_rational(&twelfth))?;
    Ok(SymmetrizerIdentity {
        residual: sys.reduce(&(&difference - &commutator))?,
        intermediate_residual: sys.reduce(&(&difference - &intermediate))?,
        difference,
        commutator,
    })
}

/// A classical symbol: `θ` or `h^(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CSym {
    Theta,
    H(u32),
}

impl fmt::Display for CSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CSym::Theta => f.write_str("θ"),
            CSym::H(k) => write!(f, "h{}", "'".repeat(*k as usize)),
        }
    }
}

/// A commutative monomial as a multiset of symbols.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CMonomial(BTreeMap<CSym, u32>);

impl CMonomial {
    pub fn from_powers(powers: &[(CSym, u32)]) -> Self {
        let mut m = CMonomial::default();
        for &(s, e) in powers {
            m.multiply(s, e);
        }
        m
    }

    fn multiply(&mut self, s: CSym, e: u32) {
        if e > 0 {
            *self.0.entry(s).or_insert(0) += e;
        }
    }

    fn divide(&mut self, s: CSym) {
        if let Some(e) = self.0.get_mut(&s) {
            *e -= 1;
            if *e == 0 {
                self.0.remove(&s);
            }
        }
    }

    pub fn exponent(&self, s: CSym) -> u32 {
        self.0.get(&s).copied().unwrap_or(0)
    }

    pub fn powers(&self) -> impl Iterator<Item = (CSym, u32)> + '_ {
        self.0.iter().map(|(s, e)| (*s, *e))
    }

    /// Highest derivative order of `h` present.
    fn top_order(&self) -> u32 {
        self.0
            .keys()
            .filter_map(|s| match s {
                CSym::H(k) => Some(*k),
                CSym::Theta => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// The factors as a list, `h`-powers first, then `θ`, then higher `h^(k)`.
    pub fn factors(&self) -> Vec<CSym> {
        let mut out = vec![CSym::H(0); self.exponent(CSym::H(0)) as usize];
        out.extend(std::iter::repeat_n(CSym::Theta, self.exponent(CSym::Theta) as usize));
        for (s, e) in self.powers() {
            if matches!(s, CSym::H(k) if k > 0) {
                out.extend(std::iter::repeat_n(s, e as usize));
            }
        }
        out
    }
}

impl fmt::Display for CMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let push = |parts: &mut Vec<String>, s: CSym, e: u32| match e {
            0 => {}
            1 => parts.push(s.to_string()),
            _ => parts.push(format!("{s}^{e}")),
        };
        push(&mut parts, CSym::H(0), self.exponent(CSym::H(0)));
        push(&mut parts, CSym::Theta, self.exponent(CSym::Theta));
        for (s, e) in self.powers() {
            if matches!(s, CSym::H(k) if k > 0) {
                push(&mut parts, s, e);
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Commutative polynomial in `θ, h, h′, h″, …` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CPoly(BTreeMap<CMonomial, Rational>);

impl CPoly {
    pub fn zero() -> Self {
        CPoly::default()
    }

    pub fn monomial(m: CMonomial) -> Self {
        CPoly::from_terms([(m, Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (CMonomial, Rational)>) -> Self {
        let mut p = CPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: CMonomial, c: Rational) {
        let slot = self.0.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CMonomial, &Rational)> {
        self.0.iter()
    }

    pub fn coeff(&self, m: &CMonomial) -> Rational {
        self.0.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of coefficients: every symbol set to 1.
    pub fn coefficient_sum(&self) -> Rational {
        self.0.values().sum()
    }

    /// The tower derivation: `Dθ = hθ`, `Dh^(k) = h^(k+1)`, Leibniz, linear.
    pub fn derive(&self) -> CPoly {
        let mut out = CPoly::zero();
        for (m, c) in &self.0 {
            for (s, e) in m.powers() {
                let mut rest = m.clone();
                rest.divide(s);
                match s {
                    CSym::Theta => {
                        rest.multiply(CSym::H(0), 1);
                        rest.multiply(CSym::Theta, 1);
                    }
                    CSym::H(k) => rest.multiply(CSym::H(k + 1), 1),
                }
                out.add_term(rest, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Terms in display order: by highest derivative, then by falling power of `h`.
    pub fn ordered_terms(&self) -> Vec<(&CMonomial, &Rational)> {
        let mut terms: Vec<_> = self.0.iter().collect();
        terms.sort_by_key(|(m, _)| {
            (m.top_order(), std::cmp::Reverse(m.exponent(CSym::H(0))), (*m).clone())
        });
        terms
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts = self.ordered_terms().into_iter().map(|(m, c)| {
            if c.is_one() {
                m.to_string()
            } else {
                format!("{} {m}", crate::scalar::fmt_rational(c))
            }
        });
        f.write_str(&parts.collect::<Vec<_>>().join(" + "))
    }
}

/// `θ^(n)` for one level of the tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLevel {
    pub level: u32,
    pub polynomial: CPoly,
}

/// Levels `1..=levels` of `θ^(n)` under `θ′ = hθ`.
pub fn derivative_tower(levels: u32) -> Vec<TowerLevel> {
    let mut current = CPoly::monomial(CMonomial::from_powers(&[(CSym::Theta, 1)]));
    (1..=levels)
        .map(|level| {
            current = current.derive();
            TowerLevel { level, polynomial: current.clone() }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientSeries {
    /// Coefficient of `h^(n−2) θ h′` at level `n ≥ 2`.
    HPrime,
    /// Coefficient of `h^(n−4) θ h′²` at level `n ≥ 4`.
    HPrimeSquared,
}

impl CoefficientSeries {
    pub fn first_level(self) -> u32 {
        match self {
            CoefficientSeries::HPrime => 2,
            CoefficientSeries::HPrimeSquared => 4,
        }
    }

    pub fn monomial(self, level: u32) -> Option<CMonomial> {
        let (k, e) = match self {
            CoefficientSeries::HPrime => (2, 1),
            CoefficientSeries::HPrimeSquared => (4, 2),
        };
        let h = level.checked_sub(k)?;
        Some(CMonomial::from_powers(&[(CSym::H(0), h), (CSym::Theta, 1), (CSym::H(1), e)]))
    }
}

/// `(level, coefficient)` for each tower level where the series is defined.
pub fn coefficient_series(tower: &[TowerLevel], series: CoefficientSeries) -> Vec<(u32, Rational)> {
    tower
        .iter()
        .filter_map(|t| Some((t.level, t.polynomial.coeff(&series.monomial(t.level)?))))
        .collect()
}

/// Repeated forward differences, `order` times.
pub fn differences(values: &[Rational], order: usize) -> Vec<Rational> {
    let mut v = values.to_vec();
    for _ in 0..order {
        v = v.iter().tuple_windows().map(|(a, b)| b - a).collect();
    }
    v
}

/// A symmetrized classical expression: `Θ`, `H^(k)` or `{…}` of such.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sym {
    Theta,
    H(u8),
    Brace(Vec<Sym>),
}

/// A rational combination of symmetrized expressions.
pub type SymSum = Vec<(Rational, Sym)>;

impl Sym {
    pub fn to_ncpoly(&self) -> NcPoly {
        match self {
            Sym::Theta => theta(),
            Sym::H(k) => hamiltonian_dot(*k),
            Sym::Brace(fs) => {
                let polys: Vec<NcPoly> = fs.iter().map(Sym::to_ncpoly).collect();
                symmetrize(&polys).expect("braces are nonempty")
            }
        }
    }

    /// The formal time derivative: `Θ ↦ {ΘH}`, `H^(k) ↦ H^(k+1)`, summed
    /// over occurrences inside braces.
    pub fn bullet(&self) -> SymSum {
        match self {
            Sym::Theta => vec![(Rational::one(), Sym::Brace(vec![Sym::Theta, Sym::H(0)]))],
            Sym::H(k) => vec![(Rational::one(), Sym::H(k + 1))],
            Sym::Brace(fs) => {
                let mut out = Vec::new();
                for (i, f) in fs.iter().enumerate() {
                    for (c, d) in f.bullet() {
                        let mut next = fs.clone();
                        next[i] = d;
                        out.push((c, Sym::Brace(next)));
                    }
                }
                out
            }
        }
    }
}

pub fn sym_sum_to_ncpoly(s: &SymSum) -> NcPoly {
    s.iter().map(|(c, e)| e.to_ncpoly().scale_rational(c)).sum()
}

pub fn bullet_sum(s: &SymSum) -> SymSum {
    s.iter()
        .flat_map(|(c, e)| e.bullet().into_iter().map(move |(d, f)| (c * d, f)))
        .collect()
}

/// Replaces each classical monomial by the symmetrizer of its factors.
pub fn to_symmetrized(p: &CPoly) -> SymSum {
    p.terms()
        .map(|(m, c)| {
            let factors: Vec<Sym> = m
                .factors()
                .into_iter()
                .map(|s| match s {
                    CSym::Theta => Sym::Theta,
                    CSym::H(k) => Sym::H(k as u8),
                })
                .collect();
            let e = if factors.len() == 1 { factors[0].clone() } else { Sym::Brace(factors) };
            (c.clone(), e)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThirdConstraint {
    /// `[H²,[H,Θ]] − (H³Θ − H²ΘH − HΘH² + ΘH³)`.
    pub residual1: NcPoly,
    /// `([Ḣ,[H,Θ]] − 2[H,[Ḣ,Θ]]) − ((ḢHΘ + ḢΘH + HΘḢ + ΘHḢ) − 2(HḢΘ + ΘḢH))`.
    pub residual2: NcPoly,
    /// `{Θ⃛} − {Θ̈}^•` from the displayed formulas.
    pub difference: NcPoly,
    /// `[H²,[H,Θ]] − [Ḣ,[H,Θ]] + 2[H,[Ḣ,Θ]]`.
    pub commutator_equation: NcPoly,
    /// `c` with `difference = c · commutator_equation`, if one exists.
    pub ratio: Option<Rational>,
    /// `{Θ⃛}` and `{Θ̈}^•` rebuilt from the tower and the bullet rule, minus
    /// the displayed formulas.
    pub tower_residuals: [NcPoly; 2],
}

impl ThirdConstraint {
    pub fn holds(&self) -> bool {
        self.residual1.is_zero()
            && self.residual2.is_zero()
            && self.ratio.as_ref().is_some_and(|c| !c.is_zero())
            && self.tower_residuals.iter().all(NcPoly::is_zero)
    }
}

/// Solves `a = c·b` from one coefficient and checks it on every word.
pub fn proportionality(a: &NcPoly, b: &NcPoly) -> Option<Rational> {
    let (w, bc) = b.terms().next()?;
    let ac = a.coeff(w);
    let c = (&ac * &bc.inv().ok()?).as_rational()?;
    (a - &b.scale_rational(&c)).is_zero().then_some(c)
}

pub fn third_constraint_check(
    theta: &NcPoly,
    h: &NcPoly,
    hdot: &NcPoly,
    hddot: &NcPoly,
) -> ThirdConstraint {
    let two = Scalar::from_int(2);
    let h2 = h * h;
    let h_theta = h.commutator(theta);
    let expansion1 = h * h * h * theta - h * h * theta * h - h * theta * h * h + theta * h * h * h;
    let residual1 = h2.commutator(&h_theta) - expansion1;

    let lhs2 = hdot.commutator(&h_theta) - h.commutator(&hdot.commutator(theta)).scale(&two);
    let expansion2 = (hdot * h * theta + hdot * theta * h + h * theta * hdot + theta * h * hdot)
        - (h * hdot * theta + theta * hdot * h).scale(&two);
    let residual2 = &lhs2 - &expansion2;

    let three = Scalar::from_int(3);
    let th = sym(&[theta, h]);
    let theta3 = sym(&[theta, h, h, h]) + sym(&[theta, h, hdot]).scale(&three) + sym(&[theta, hddot]);
    let theta2_bullet = sym(&[&th, h, h])
        + sym(&[theta, h, hdot]).scale(&two)
        + sym(&[&th, hdot])
        + sym(&[theta, hddot]);
    let difference = &theta3 - &theta2_bullet;
    let commutator_equation = h2.commutator(&h_theta) - lhs2;
    let ratio = proportionality(&difference, &commutator_equation);

    let tower = derivative_tower(3);
    let from_tower = sym_sum_to_ncpoly(&to_symmetrized(&tower[2].polynomial));
    let from_bullet = sym_sum_to_ncpoly(&bullet_sum(&to_symmetrized(&tower[1].polynomial)));
    let generic = *theta == self::theta()
        && *h == hamiltonian()
        && *hdot == hamiltonian_dot(1)
        && *hddot == hamiltonian_dot(2);
    let tower_residuals = if generic {
        [from_tower - theta3, from_bullet - theta2_bullet]
    } else {
        [NcPoly::zero(), NcPoly::zero()]
    };

    ThirdConstraint {
        residual1,
        residual2,
        difference,
        commutator_equation,
        ratio,
        tower_residuals,
    }
}

/// The check on the generators `Θ, H, H′, H″`.
pub fn third_constraint() -> ThirdConstraint {
    third_constraint_check(&theta(), &hamiltonian(), &hamiltonian_dot(1), &hamiltonian_dot(2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvaturePairResidual {
    pub i: u32,
    pub j: u32,
    /// `[[Θ_ij,H^j],H^i] − [[Θ_ij,H^i],H^j] − [[H^i,H^j],Θ_ij]`.
    pub residual: NcPoly,
    /// `[[H^i,H^j],Θ_ij]`.
    pub curvature_term: NcPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureForm {
    pub pairs: Vec<CurvaturePairResidual>,
    /// `Σ_ij [[H^i,H^j],Θ_ij]`.
    pub summed: NcPoly,
}

impl CurvatureForm {
    pub fn pairs_hold(&self) -> bool {
        self.pairs.iter().all(|p| p.residual.is_zero())
    }
}

/// `Θ_ij` with the index pair sorted, so that `Θ_ij = Θ_ji`.
pub fn symmetric_symbol(name: &str, i: u32, j: u32) -> NcPoly {
    NcPoly::gen(Generator::new(name).with_index(Index::Lower(vec![i.min(j), i.max(j)])))
}

pub fn curvature_form_check(n: u32) -> CurvatureForm {
    let hs: Vec<NcPoly> = (1..=n).map(|i| NcPoly::gen(Generator::upper("H", i))).collect();
    let mut pairs = Vec::new();
    let mut summed = NcPoly::zero();
    for (i, j) in (1..=n).cartesian_product(1..=n) {
        let t = symmetric_symbol("Θ", i, j);
        let (hi, hj) = (&hs[i as usize - 1], &hs[j as usize - 1]);
        let curvature_term = hi.commutator(hj).commutator(&t);
        let residual = t.commutator(hj).commutator(hi)
            - t.commutator(hi).commutator(hj)
            - &curvature_term;
        summed += &curvature_term;
        pairs.push(CurvaturePairResidual { i, j, residual, curvature_term });
    }
    CurvatureForm { pairs, summed }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstConstraint {
    pub hamiltonian: NcPoly,
    /// `[θ, H]` in normal form.
    pub lhs: NcPoly,
    /// `Σ_i (H^iΘ_i + Θ_iH^i)/2` in normal form.
    pub rhs: NcPoly,
    pub residual: NcPoly,
}

/// `H = (1/4) Σ_ij (g_ij P_i P_j + P_i P_j g_ij)` with symbolic `g_ij(Q)`.
pub fn quadratic_hamiltonian(n: u32) -> NcPoly {
    let quarter = rational(1, 4);
    let mut h = NcPoly::zero();
    for (i, j) in (1..=n).cartesian_product(1..=n) {
        let g = symmetric_symbol("g", i, j);
        let pp = quotient::p(i) * quotient::p(j);
        h = h + &g * &pp + &pp * &g;
    }
    h.scale_rational(&quarter)
}

/// `[θ, H] = {H^i Θ_i}` for the quadratic Hamiltonian, in the world with
/// coordinate functions.
pub fn first_constraint_quadratic_check(n: u32) -> Result<FirstConstraint, ConstraintError> {
    first_constraint_check(&NcPoly::gen(Generator::new("θ")), n)
}

pub fn first_constraint_check(theta: &NcPoly, n: u32) -> Result<FirstConstraint, ConstraintError> {
    let sys = RewriteSystem::flat_fn();
    let hamiltonian = sys.reduce(&quadratic_hamiltonian(n))?;
    let lhs = sys.reduce(&theta.commutator(&hamiltonian))?;
    let mut rhs = NcPoly::zero();
    for i in 1..=n {
        let hi = sys.reduce(&quotient::q(i).commutator(&hamiltonian))?;
        let ti = sys.reduce(&theta.commutator(&quotient::p(i)))?;
        rhs += symmetrize(&[hi, ti])?;
    }
    let rhs = sys.reduce(&rhs)?;
    let residual = sys.reduce(&(&lhs - &rhs))?;
    Ok(FirstConstraint { hamiltonian, lhs, rhs, residual })
}
