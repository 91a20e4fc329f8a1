//! Surface syntax for algebra expressions.
//!
//! ```text
//! expr    := '-'? term (('+' | '-') term)*
//! term    := factor (('.' | whitespace)? factor)*
//! factor  := scalar | gen | '[' expr ',' expr ']' | '{' factor+ '}' | '(' expr ')'
//! scalar  := int ('/' int)? | 'i' | '$' name ('^' '-'? int)?
//! gen     := name '\''* (('^' | '_') idxlist)? ('|' idxlist)?
//! idxlist := int | '{' int (',' int)* '}'
//! ```
//!
//! Printing is canonical: `parse(print(e)) == e` for every well-formed tree.

use std::fmt;

use num_bigint::BigUint;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Index decoration of a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexRef {
    None,
    Upper(Vec<u32>),
    Lower(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenRef {
    pub name: String,
    pub primes: u8,
    pub index: IndexRef,
    pub partials: Vec<u32>,
}

impl GenRef {
    pub fn plain(name: &str) -> Self {
        GenRef { name: name.to_string(), primes: 0, index: IndexRef::None, partials: Vec::new() }
    }
}

/// Expression tree. A `Sum` has at least two terms or a negated first term;
/// a `Product` has at least two factors, none of them a `Sum` or `Product`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number { num: BigUint, den: Option<BigUint> },
    I,
    Param { name: String, exp: Option<i64> },
    Gen(GenRef),
    Sum(Vec<(Sign, Expr)>),
    Product(Vec<Expr>),
    Commutator(Box<Expr>, Box<Expr>),
    Symmetrizer(Vec<Expr>),
    Paren(Box<Expr>),
}

impl Expr {
    pub fn int(n: u64) -> Self {
        Expr::Number { num: n.into(), den: None }
    }

    pub fn gen(name: &str) -> Self {
        Expr::Gen(GenRef::plain(name))
    }

    /// Whether the node may appear as a product factor or symmetrizer item.
    pub fn is_factor(&self) -> bool {
        !matches!(self, Expr::Sum(_) | Expr::Product(_))
    }
}

fn fmt_idx(f: &mut fmt::Formatter<'_>, v: &[u32]) -> fmt::Result {
    match v {
        [one] => write!(f, "{one}"),
        _ => {
            let parts: Vec<String> = v.iter().map(u32::to_string).collect();
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

impl fmt::Display for GenRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for _ in 0..self.primes {
            f.write_str("'")?;
        }
        match &self.index {
            IndexRef::None => {}
            IndexRef::Upper(v) => {
                f.write_str("^")?;
                fmt_idx(f, v)?;
            }
            IndexRef::Lower(v) => {
                f.write_str("_")?;
                fmt_idx(f, v)?;
            }
        }
        if !self.partials.is_empty() {
            f.write_str("|")?;
            fmt_idx(f, &self.partials)?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number { num, den: None } => write!(f, "{num}"),
            Expr::Number { num, den: Some(d) } => write!(f, "{num}/{d}"),
            Expr::I => f.write_str("i"),
            Expr::Param { name, exp: None } => write!(f, "${name}"),
            Expr::Param { name, exp: Some(e) } => write!(f, "${name}^{e}"),
            Expr::Gen(g) => write!(f, "{g}"),
            Expr::Sum(terms) => {
                for (k, (sign, t)) in terms.iter().enumerate() {
                    match (k, sign) {
                        (0, Sign::Plus) => write!(f, "{t}")?,
                        (0, Sign::Minus) => write!(f, "-{t}")?,
                        (_, Sign::Plus) => write!(f, " + {t}")?,
                        (_, Sign::Minus) => write!(f, " - {t}")?,
                    }
                }
                Ok(())
            }
            Expr::Product(fs) => {
                for (k, x) in fs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            Expr::Commutator(a, b) => write!(f, "[{a}, {b}]"),
            Expr::Symmetrizer(items) => {
                f.write_str("{")?;
                for (k, x) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
            Expr::Paren(e) => write!(f, "({e})"),
        }
    }
}
