//! Recursive-descent parser for the polynomial text grammar:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := int | var | 't' | '(' expr ')'
//! var    := 'x' | 'y' | 'z' | 'x' uint
//! ```
//!
//! `x, y, z` alias `x1, x2, x3`; `t` is the generator of a non-prime field.

use std::sync::Arc;

use super::MultiPoly;
use crate::error::{Error, Result};
use crate::fields::FieldCtx;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    ctx: &'a Arc<FieldCtx>,
}

pub fn parse_poly(text: &str, nvars: usize, ctx: &Arc<FieldCtx>) -> Result<MultiPoly> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
        ctx,
    };
    let poly = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("operator or end of input"));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, expected: &str) -> Error {
        Error::SyntaxError {
            position: self.pos,
            expected: expected.to_string(),
        }
    }

    fn digits(&mut self) -> Option<&'a [u8]> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self
                .digits()
                .ok_or_else(|| self.error("unsigned integer exponent"))?;
            let e: u32 = std::str::from_utf8(digits)
                .unwrap()
                .parse()
                .map_err(|_| Error::SyntaxError {
                    position: start,
                    expected: "exponent below 2^32".into(),
                })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<MultiPoly> {
        let c = self
            .peek()
            .ok_or_else(|| self.error("integer, variable or '('"))?;
        match c {
            b'0'..=b'9' => {
                let digits = self.digits().unwrap();
                let p = self.ctx.p() as u128;
                let v = digits
                    .iter()
                    .fold(0u128, |acc, d| (acc * 10 + (d - b'0') as u128) % p);
                Ok(MultiPoly::from_int(self.ctx, self.nvars, v as i64))
            }
            b'(' => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            b't' => {
                self.pos += 1;
                if self.ctx.degree() == 1 {
                    return Err(Error::UnknownVariable("t (prime field has no generator)".into()));
                }
                Ok(MultiPoly::constant(self.ctx, self.nvars, self.ctx.generator()))
            }
            b'x' | b'y' | b'z' => {
                self.pos += 1;
                let index = if c == b'x' {
                    match self.digits() {
                        Some(d) => std::str::from_utf8(d).unwrap().parse::<usize>().unwrap_or(0),
                        None => 1,
                    }
                } else {
                    (c - b'x') as usize + 1
                };
                let name = if c == b'x' && index != 1 {
                    format!("x{index}")
                } else {
                    (c as char).to_string()
                };
                if index == 0 || index > self.nvars {
                    return Err(Error::UnknownVariable(name));
                }
                Ok(MultiPoly::var(self.ctx, self.nvars, index - 1))
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                Err(Error::UnknownVariable(name))
            }
            _ => Err(self.error("integer, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{make_field, FieldElement};

    #[test]
    fn grammar_examples() {
        let f3 = make_field(3, 1).unwrap();
        let g = parse_poly("x^2 + 1", 1, &f3).unwrap();
        assert_eq!(g.coefficient(&[2]), FieldElement::scalar(1));
        assert_eq!(g.coefficient(&[0]), FieldElement::scalar(1));
        assert_eq!(g.num_terms(), 2);

        // -x^3 + 4x^2 - 3x mod 7 = 6x^3 + 4x^2 + 4x
        let f7 = make_field(7, 1).unwrap();
        let g = parse_poly("y^2 - x*(x-1)*(x-3)", 2, &f7).unwrap();
        let expect = MultiPoly::from_terms(
            &f7,
            2,
            [
                (vec![0, 2], FieldElement::scalar(1)),
                (vec![3, 0], FieldElement::scalar(6)),
                (vec![2, 0], FieldElement::scalar(4)),
                (vec![1, 0], FieldElement::scalar(4)),
            ],
        );
        assert_eq!(g, expect);

        let f5 = make_field(5, 1).unwrap();
        let g = parse_poly("x1*x2 - 1", 2, &f5).unwrap();
        assert_eq!(g.coefficient(&[1, 1]), FieldElement::scalar(1));
        assert_eq!(g.coefficient(&[0, 0]), FieldElement::scalar(4));
    }

    #[test]
    fn extension_coefficients() {
        let f9 = make_field(3, 2).unwrap();
        let g = parse_poly("(t+1)*x^2 + t", 1, &f9).unwrap();
        assert_eq!(g.coefficient(&[2]), f9.from_coeffs(&[1, 1]).unwrap());
        assert_eq!(g.to_string(), "(t + 1)*x^2 + (t)");
        assert_eq!(parse_poly(&g.to_string(), 1, &f9).unwrap(), g);
        let f3 = make_field(3, 1).unwrap();
        assert!(matches!(
            parse_poly("t*x", 1, &f3),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn errors_carry_positions() {
        let f5 = make_field(5, 1).unwrap();
        assert!(matches!(
            parse_poly("x +", 1, &f5),
            Err(Error::SyntaxError { position: 3, .. })
        ));
        assert!(matches!(
            parse_poly("x1x2", 2, &f5),
            Err(Error::SyntaxError { position: 2, .. })
        ));
        assert!(matches!(
            parse_poly("(x + 1", 1, &f5),
            Err(Error::SyntaxError { .. })
        ));
        assert!(matches!(parse_poly("x^", 1, &f5), Err(Error::SyntaxError { .. })));
        assert_eq!(
            parse_poly("y + 1", 1, &f5),
            Err(Error::UnknownVariable("y".into()))
        );
        assert_eq!(parse_poly("x4", 3, &f5), Err(Error::UnknownVariable("x4".into())));
        assert_eq!(parse_poly("w", 3, &f5), Err(Error::UnknownVariable("w".into())));
    }

    #[test]
    fn aliases_and_whitespace() {
        let f5 = make_field(5, 1).unwrap();
        let a = parse_poly(" x * y^2 - z ", 3, &f5).unwrap();
        let b = parse_poly("x1*x2^2 + 4*x3", 3, &f5).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly("12", 1, &f5).unwrap(), MultiPoly::from_int(&f5, 1, 2));
    }
}
