//! Text syntax for algebra elements.
//!
//! Atoms are `q`, `p`, `hbar`, `i`, integers and rationals such as `3/4`.
//! `*` is the operator product, `@` the symmetrized product `∘`, `^` takes a
//! non-negative integer exponent, and `+`, `-`, parentheses behave as usual.
//! `*` and `@` share a precedence level and associate to the left.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::coefficient::Coefficient;
use super::poly::NCPolynomial;
use super::weyl::{from_weyl_basis, to_weyl_basis};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    /// The flag records whether the literal was written as a fraction.
    Number(BigRational, bool),
    Q,
    P,
    Hbar,
    I,
    Plus,
    Minus,
    Star,
    At,
    Caret,
    LParen,
    RParen,
}

fn error(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let col = pos + 1;
        let ch = chars[pos];
        if ch.is_whitespace() {
            pos += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let num: BigInt = chars[start..pos].iter().collect::<String>().parse().unwrap();
            // optional `/den`, allowing whitespace around the slash
            let mut look = pos;
            while look < chars.len() && chars[look].is_whitespace() {
                look += 1;
            }
            let mut value = BigRational::from_integer(num);
            let mut fraction = false;
            if look < chars.len() && chars[look] == '/' {
                look += 1;
                while look < chars.len() && chars[look].is_whitespace() {
                    look += 1;
                }
                let dstart = look;
                while look < chars.len() && chars[look].is_ascii_digit() {
                    look += 1;
                }
                if dstart == look {
                    return Err(error(dstart + 1, "expected denominator after `/`"));
                }
                let den: BigInt = chars[dstart..look].iter().collect::<String>().parse().unwrap();
                if den.is_zero() {
                    return Err(error(dstart + 1, "zero denominator"));
                }
                value /= BigRational::from_integer(den);
                fraction = true;
                pos = look;
            }
            out.push((col, Token::Number(value, fraction)));
            continue;
        }
        if ch.is_ascii_alphabetic() {
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_alphanumeric() {
                pos += 1;
            }
            let ident: String = chars[start..pos].iter().collect();
            let tok = match ident.as_str() {
                "q" => Token::Q,
                "p" => Token::P,
                "hbar" => Token::Hbar,
                "i" => Token::I,
                _ => return Err(error(col, format!("unknown identifier `{ident}`"))),
            };
            out.push((col, tok));
            continue;
        }
        let tok = match ch {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '@' => Token::At,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            _ => return Err(error(col, format!("unexpected character `{ch}`"))),
        };
        out.push((col, tok));
        pos += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(c, _)| *c)
            .unwrap_or(self.end_column)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<NCPolynomial> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = &acc + &self.product()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<NCPolynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = acc.multiply(&self.unary()?);
                }
                Some(Token::At) => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = from_weyl_basis(&to_weyl_basis(&acc).symmetrized_product(&to_weyl_basis(&rhs)));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<NCPolynomial> {
        match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some(Token::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<NCPolynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.bump();
            let col = self.column();
            match self.bump() {
                Some(Token::Number(n, false)) => {
                    let e: u32 = n
                        .to_integer()
                        .try_into()
                        .map_err(|_| error(col, "exponent out of range"))?;
                    Ok(base.pow(e))
                }
                _ => Err(error(col, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<NCPolynomial> {
        let col = self.column();
        match self.bump() {
            Some(Token::Number(n, _)) => Ok(NCPolynomial::constant(Coefficient::from_rational(n))),
            Some(Token::Q) => Ok(NCPolynomial::q()),
            Some(Token::P) => Ok(NCPolynomial::p()),
            Some(Token::Hbar) => Ok(NCPolynomial::hbar()),
            Some(Token::I) => Ok(NCPolynomial::constant(Coefficient::i())),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                let close = self.column();
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(error(close, "expected `)`")),
                }
            }
            Some(t) => Err(error(col, format!("unexpected token {t:?}"))),
            None => Err(error(col, "unexpected end of expression")),
        }
    }
}

/// Parses an expression into normal-ordered form.
pub fn parse_expression(text: &str) -> Result<NCPolynomial> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end_column: text.chars().count() + 1,
    };
    let out = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(error(parser.column(), "trailing input"));
    }
    Ok(out)
}

impl FromStr for NCPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expression(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::{normal_order, weyl_monomial, Word};

    #[test]
    fn operator_product_and_ccr() {
        let pq = parse_expression("p*q").unwrap();
        assert_eq!(pq, normal_order(&"PQ".parse::<Word>().unwrap()));
        let comm = parse_expression("q*p - p*q").unwrap();
        assert_eq!(comm, parse_expression("i*hbar").unwrap());
    }

    #[test]
    fn symmetrized_product_operator() {
        assert_eq!(parse_expression("q @ p").unwrap(), weyl_monomial(1, 1));
        assert_eq!(parse_expression("q^2@p").unwrap(), weyl_monomial(2, 1));
        assert_eq!(parse_expression("q @ p @ q").unwrap(), weyl_monomial(2, 1));
    }

    #[test]
    fn rationals_and_whitespace() {
        let a = parse_expression(" 1/2 * ( q ^ 2 + p^2 ) ").unwrap();
        let b = parse_expression("1 / 2*q^2+1/2*p^2").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_expression("-3/6").unwrap().to_string(), "-1/2");
    }

    #[test]
    fn display_reparses() {
        let f = parse_expression("(1 - 2*i)*hbar^2*q*p^3 - 5/3*p + i*q @ p").unwrap();
        assert_eq!(parse_expression(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn errors_carry_columns() {
        match parse_expression("q + x").unwrap_err() {
            Error::Parse { column, .. } => assert_eq!(column, 5),
            e => panic!("{e}"),
        }
        assert!(parse_expression("q^-1").is_err());
        assert!(parse_expression("p^2/2").is_err());
        assert!(parse_expression("q^4/2").is_err());
        assert!(parse_expression("(q + p").is_err());
        assert!(parse_expression("q p").is_err());
        assert!(parse_expression("1/0").is_err());
        assert!(parse_expression("").is_err());
    }
}
