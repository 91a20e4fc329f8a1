//! Recursive-descent parser for [`Expr`].

use std::fmt;

use num_bigint::BigUint;

use crate::expr::{Expr, GenRef, IndexRef, Sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at {}:{}: expected {}, found {}",
            self.line,
            self.column,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { chars: src.chars().collect(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}

const FACTOR_START: &[&str] = &["number", "i", "$parameter", "generator", "'['", "'{'", "'('"];

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

fn is_name_start(c: char) -> bool {
    c.is_alphabetic()
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric()
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn position(&self) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..self.pos] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let (line, column) = self.position();
        ParseError {
            line,
            column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: match self.peek() {
                Some(c) => format!("'{c}'"),
                None => "end of input".to_string(),
            },
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let first_sign = if self.eat('-') { Sign::Minus } else { Sign::Plus };
        let mut terms = vec![(first_sign, self.term()?)];
        loop {
            self.skip_ws();
            let sign = if self.eat('+') {
                Sign::Plus
            } else if self.eat('-') {
                Sign::Minus
            } else {
                break;
            };
            terms.push((sign, self.term()?));
        }
        if terms.len() == 1 && first_sign == Sign::Plus {
            return Ok(terms.pop().expect("one term").1);
        }
        Ok(Expr::Sum(terms))
    }

    fn starts_factor(&self) -> bool {
        match self.peek() {
            Some(c) => c.is_ascii_digit() || c == '$' || c == '[' || c == '{' || c == '(' || is_name_start(c),
            None => false,
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let mut factors = vec![self.factor()?];
        loop {
            self.skip_ws();
            if self.eat('.') {
                self.skip_ws();
                factors.push(self.factor()?);
            } else if self.starts_factor() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        if factors.len() == 1 {
            return Ok(factors.pop().expect("one factor"));
        }
        Ok(Expr::Product(factors))
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => self.number(),
            Some('$') => self.param(),
            Some('[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok(Expr::Commutator(Box::new(a), Box::new(b)))
            }
            Some('{') => {
                self.pos += 1;
                let mut items = vec![self.factor()?];
                loop {
                    self.skip_ws();
                    if self.eat('}') {
                        break;
                    }
                    if !self.starts_factor() {
                        let mut expected = FACTOR_START.to_vec();
                        expected.push("'}'");
                        return Err(self.error(&expected));
                    }
                    items.push(self.factor()?);
                }
                Ok(Expr::Symmetrizer(items))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Paren(Box::new(e)))
            }
            Some(c) if is_name_start(c) => self.name_factor(),
            _ => Err(self.error(FACTOR_START)),
        }
    }

    fn digits(&mut self) -> Result<BigUint, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(&["digit"]));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn small_int(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let n = self.digits()?;
        u32::try_from(n).map_err(|_| {
            self.pos = start;
            self.error(&["index below 2^32"])
        })
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let num = self.digits()?;
        let den = if self.peek() == Some('/') {
            self.pos += 1;
            Some(self.digits()?)
        } else {
            None
        };
        Ok(Expr::Number { num, den })
    }

    fn name(&mut self) -> Result<String, ParseError> {
        if !self.peek().is_some_and(is_name_start) {
            return Err(self.error(&["name"]));
        }
        let start = self.pos;
        while self.peek().is_some_and(is_name_char) {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn param(&mut self) -> Result<Expr, ParseError> {
        self.pos += 1;
        let name = self.name()?;
        let exp = if self.peek() == Some('^') {
            self.pos += 1;
            let neg = self.eat('-');
            let start = self.pos;
            let n = self.digits()?;
            let v = i64::try_from(n).map_err(|_| {
                self.pos = start;
                self.error(&["exponent below 2^63"])
            })?;
            Some(if neg { -v } else { v })
        } else {
            None
        };
        Ok(Expr::Param { name, exp })
    }

    fn index_list(&mut self) -> Result<Vec<u32>, ParseError> {
        if self.eat('{') {
            let mut v = vec![self.small_int()?];
            while self.eat(',') {
                v.push(self.small_int()?);
            }
            if !self.eat('}') {
                return Err(self.error(&["','", "'}'"]));
            }
            Ok(v)
        } else if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            Ok(vec![self.small_int()?])
        } else {
            Err(self.error(&["index", "'{'"]))
        }
    }

    fn name_factor(&mut self) -> Result<Expr, ParseError> {
        let name = self.name()?;
        let decorated = matches!(self.peek(), Some('\'' | '^' | '_' | '|'));
        if name == "i" {
            if decorated {
                return Err(self.error(&["operator", "factor"]));
            }
            return Ok(Expr::I);
        }
        let mut primes = 0u8;
        while self.peek() == Some('\'') {
            self.pos += 1;
            primes = primes.checked_add(1).ok_or_else(|| self.error(&["fewer primes"]))?;
        }
        let index = match self.peek() {
            Some('^') => {
                self.pos += 1;
                IndexRef::Upper(self.index_list()?)
            }
            Some('_') => {
                self.pos += 1;
                IndexRef::Lower(self.index_list()?)
            }
            _ => IndexRef::None,
        };
        let partials = if self.eat('|') { self.index_list()? } else { Vec::new() };
        Ok(Expr::Gen(GenRef { name, primes, index, partials }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unclosed_paren_position() {
        let e = parse("(").unwrap_err();
        assert_eq!((e.line, e.column), (1, 2));
        assert!(e.expected.contains(&"'('".to_string()));
    }

    #[test]
    fn positions_count_lines() {
        let e = parse("X +\n  ]").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }

    #[test]
    fn shapes() {
        assert_eq!(
            parse("[Q^1, P_1]").unwrap(),
            Expr::Commutator(
                Box::new(Expr::Gen(GenRef { index: IndexRef::Upper(vec![1]), ..GenRef::plain("Q") })),
                Box::new(Expr::Gen(GenRef { index: IndexRef::Lower(vec![1]), ..GenRef::plain("P") })),
            )
        );
        assert_eq!(parse("{X Y}").unwrap(), Expr::Symmetrizer(vec![Expr::gen("X"), Expr::gen("Y")]));
        assert_eq!(parse("X.Y").unwrap(), parse("X Y").unwrap());
        assert_eq!(parse("2X").unwrap(), Expr::Product(vec![Expr::int(2), Expr::gen("X")]));
        assert_eq!(parse("-i").unwrap(), Expr::Sum(vec![(Sign::Minus, Expr::I)]));
        assert_eq!(parse("$m^-1").unwrap(), Expr::Param { name: "m".into(), exp: Some(-1) });
        let theta = parse("θ''_{1,2}|{1,1}").unwrap();
        assert_eq!(theta.to_string(), "θ''_{1,2}|{1,1}");
    }

    #[test]
    fn rejects_decorated_i_and_trailing_input() {
        assert!(parse("i'").is_err());
        assert!(parse("X )").is_err());
        assert!(parse("X .").is_err());
        assert!(parse("{}").is_err());
    }
}
