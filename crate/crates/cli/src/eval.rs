//! Evaluation of surface expressions into the polynomial algebra.

use ncworlds_core::constraints::{symmetrize, ConstraintError};
use ncworlds_core::ncpoly::{Generator, Index};
use ncworlds_core::quotient::{ReduceError, RewriteSystem};
use ncworlds_core::scalar::Rational;
use ncworlds_core::{NcPoly, Scalar};
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::expr::{Expr, GenRef, IndexRef, Sign};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("division by zero in {0}")]
    DivisionByZero(String),
    #[error("exponent {0} is out of range")]
    ExponentRange(i64),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
}

pub fn generator(g: &GenRef) -> Generator {
    let index = match &g.index {
        IndexRef::None => Index::None,
        IndexRef::Upper(v) => Index::Upper(v.clone()),
        IndexRef::Lower(v) => Index::Lower(v.clone()),
    };
    Generator::new(&g.name)
        .with_primes(g.primes)
        .with_index(index)
        .with_partials(g.partials.clone())
}

/// Builds the polynomial in the free algebra, without applying any relations.
pub fn build(e: &Expr) -> Result<NcPoly, EvalError> {
    Ok(match e {
        Expr::Number { num, den } => {
            let d = den.clone().unwrap_or_else(|| 1u32.into());
            if d.is_zero() {
                return Err(EvalError::DivisionByZero(e.to_string()));
            }
            let r = Rational::new(BigInt::from(num.clone()), BigInt::from(d));
            NcPoly::constant(Scalar::from_rational(r))
        }
        Expr::I => NcPoly::constant(Scalar::i()),
        Expr::Param { name, exp } => {
            let x = exp.unwrap_or(1);
            let x32 = i32::try_from(x).map_err(|_| EvalError::ExponentRange(x))?;
            NcPoly::constant(Scalar::param_pow(name, x32))
        }
        Expr::Gen(g) => NcPoly::gen(generator(g)),
        Expr::Sum(terms) => {
            let mut acc = NcPoly::zero();
            for (sign, t) in terms {
                let v = build(t)?;
                acc = match sign {
                    Sign::Plus => acc + v,
                    Sign::Minus => acc - v,
                };
            }
            acc
        }
        Expr::Product(fs) => {
            let mut acc = NcPoly::one();
            for f in fs {
                acc = acc * build(f)?;
            }
            acc
        }
        Expr::Commutator(a, b) => build(a)?.commutator(&build(b)?),
        Expr::Symmetrizer(items) => {
            let parts = items.iter().map(build).collect::<Result<Vec<_>, _>>()?;
            symmetrize(&parts)?
        }
        Expr::Paren(inner) => build(inner)?,
    })
}

/// Builds the polynomial and brings it to normal form in `world`.
pub fn evaluate(e: &Expr, world: &RewriteSystem) -> Result<NcPoly, EvalError> {
    Ok(world.reduce(&build(e)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn eval_in(src: &str, world: &str) -> String {
        let sys = RewriteSystem::named(world).unwrap();
        evaluate(&parse(src).unwrap(), &sys).unwrap().to_string()
    }

    #[test]
    fn documented_examples() {
        assert_eq!(eval_in("[Q^1, P_1]", "flat"), "1");
        assert_eq!(eval_in("{X Y}", "free"), "(1/2) X.Y + (1/2) Y.X");
        assert_eq!(eval_in("B.A", "abc"), "A.B");
        assert_eq!(eval_in("[Q^1, P_2]", "flat"), "0");
    }

    #[test]
    fn scalars() {
        assert_eq!(eval_in("i i", "free"), "(-1)");
        assert_eq!(eval_in("$m $m^-1 X", "free"), "X");
        assert!(evaluate(&parse("1/0").unwrap(), &RewriteSystem::free()).is_err());
    }
}
