//! Recursive-descent parser for polynomial text.
//!
//! Precedence from tightest: `^` (non-negative integer exponent), `*`,
//! then binary `+`/`-`. Unary minus, parentheses and integer literals are
//! accepted; so is `n/m` between two integer literals, which is how
//! rational coefficients render.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{AlgebraError, Result};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Token::Int(v)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(AlgebraError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{}`", text[start..].chars().next().unwrap_or('?')),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<PolyRing>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(AlgebraError::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
            acc.check_guard()?;
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = acc.try_mul(&rhs)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Int(e)) => {
                    self.pos += 1;
                    let e: u32 = u32::try_from(&e)
                        .map_err(|_| AlgebraError::Resource(format!("exponent {e} too large")))?;
                    if let Some(Token::Caret) = self.peek() {
                        return self.error("chained exponents need parentheses");
                    }
                    base.pow(e)
                }
                _ => self.error("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                let field = self.ring.field();
                if let Some(Token::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Token::Int(d)) => {
                            self.pos += 1;
                            let c = field.from_fraction(&n, &d)?;
                            Ok(Polynomial::constant(self.ring, c))
                        }
                        _ => self.error("`/` must join two integer literals"),
                    }
                } else {
                    Ok(Polynomial::constant(self.ring, field.from_bigint(&n)))
                }
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var_by_index(self.ring, i)),
                    None => Err(AlgebraError::UnknownIdentifier(name)),
                }
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.error("expected `)`"),
                }
            }
            Some(tok) => self.error(format!("unexpected token {tok:?}")),
            None => self.error("unexpected end of input"),
        }
    }
}

pub fn parse_polynomial(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, end: text.len(), ring };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return parser.error("trailing input");
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoefficientField;
    use crate::ring::MonomialOrder;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y", "t"], CoefficientField::Rationals, MonomialOrder::Degrevlex).unwrap()
    }

    #[test]
    fn precedence() {
        let r = ring();
        let a = parse_polynomial("-x^2 + 2*x*y", &r).unwrap();
        let b = parse_polynomial("2*(x*y) - (x^2)", &r).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_polynomial("(x+y)^2", &r).unwrap().render(), "x^2 + 2*x*y + y^2");
        assert_eq!(parse_polynomial("x^0", &r).unwrap().render(), "1");
        assert_eq!(parse_polynomial("--x", &r).unwrap().render(), "x");
    }

    #[test]
    fn errors() {
        let r = ring();
        assert!(matches!(parse_polynomial("x*z", &r), Err(AlgebraError::UnknownIdentifier(s)) if s == "z"));
        assert!(matches!(parse_polynomial("x y", &r), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(parse_polynomial("2x", &r), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(parse_polynomial("x^-1", &r), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(parse_polynomial("(x", &r), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(parse_polynomial("x/2", &r), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(parse_polynomial("", &r), Err(AlgebraError::Syntax { .. })));
    }

    #[test]
    fn fractions_round_trip() {
        let r = ring();
        let p = parse_polynomial("2/3*x*y - 1/2", &r).unwrap();
        assert_eq!(p.render(), "2/3*x*y - 1/2");
        assert_eq!(parse_polynomial(&p.render(), &r).unwrap(), p);
        let r3 = PolyRing::new(&["x"], CoefficientField::PrimeField(3), MonomialOrder::Degrevlex).unwrap();
        assert!(matches!(parse_polynomial("1/3*x", &r3), Err(AlgebraError::Unrepresentable(_))));
        assert_eq!(parse_polynomial("5*x", &r3).unwrap().render(), "-x");
    }
}
