//! A small expression language for exact cyclotomic literals.
//!
//! Accepts integers, `+ - * · / ^`, parentheses, implicit multiplication
//! (`4i`, `2(z+1)`), the symbol `z` for a chosen root of unity and `i` for a
//! primitive fourth root. Example: `z*(3+4i)/5`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::cyclotomic::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Int(text.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|&(_, c)| c).collect())));
        } else {
            let tok = match c {
                '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
                '·' | '×' => Tok::Op('*'),
                '−' => Tok::Op('-'),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => return Err(Error::Parse { pos, msg: format!("unexpected character {c:?}") }),
            };
            out.push((pos, tok));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    field: &'a Arc<CyclotomicField>,
    zeta: &'a CyclotomicNumber,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<CyclotomicNumber> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.at += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<CyclotomicNumber> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.at += 1;
                    acc = acc * self.unary()?;
                }
                Some(Tok::Op('/')) => {
                    self.at += 1;
                    let pos = self.pos();
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs).map_err(|e| Error::Parse { pos, msg: e.to_string() })?;
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = acc * self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<CyclotomicNumber> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.at += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<CyclotomicNumber> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.at += 1;
            let pos = self.pos();
            let e = self.unary()?;
            let e = e
                .as_rational()
                .filter(|q| q.is_integer())
                .and_then(|q| q.numer().to_i64())
                .ok_or_else(|| Error::Parse { pos, msg: "exponent must be an integer".into() })?;
            return base.pow(e).map_err(|err| Error::Parse { pos, msg: err.to_string() });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CyclotomicNumber> {
        let Some(tok) = self.peek().cloned() else { return self.err("unexpected end of input") };
        self.at += 1;
        match tok {
            Tok::Int(v) => Ok(CyclotomicNumber::from_rational_in(self.field, &v.into())),
            Tok::Ident(name) => match name.as_str() {
                "z" | "zeta" | "ζ" => Ok(self.zeta.clone()),
                "i" => {
                    if self.field.conductor() % 4 != 0 {
                        self.at -= 1;
                        return self.err(format!("i is not in Q(zeta_{})", self.field.conductor()));
                    }
                    Ok(CyclotomicNumber::zeta_pow_in(self.field, self.field.conductor() as i64 / 4))
                }
                _ => {
                    self.at -= 1;
                    self.err(format!("unknown symbol {name:?}"))
                }
            },
            Tok::LParen => {
                let v = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.at += 1;
                        Ok(v)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            _ => {
                self.at -= 1;
                self.err("expected a number, symbol or '('")
            }
        }
    }
}

/// Evaluates `src` in Q(ζ_conductor), with `z` bound to ζ_zeta_order
/// (which must divide the conductor).
pub fn parse_cyclotomic(src: &str, conductor: u32, zeta_order: u32) -> Result<CyclotomicNumber> {
    let field = CyclotomicField::get(conductor)?;
    if zeta_order == 0 || conductor % zeta_order != 0 {
        return Err(Error::ConductorMismatch(zeta_order, conductor));
    }
    let zeta = CyclotomicNumber::zeta_pow_in(&field, (conductor / zeta_order) as i64);
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, at: 0, end: src.len(), field: &field, zeta: &zeta };
    let v = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Splits a comma-separated list of expressions, respecting parentheses.
pub fn parse_cyclotomic_list(src: &str, conductor: u32, zeta_order: u32) -> Result<Vec<CyclotomicNumber>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in src.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' | ';' if depth == 0 => {
                parts.push(&src[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&src[start..]);
    parts.into_iter().map(|p| parse_cyclotomic(p, conductor, zeta_order)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rational;

    fn z(m: i64, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(m, k).unwrap()
    }

    #[test]
    fn literals() {
        let v = parse_cyclotomic("z*(3+4i)/5", 8, 8).unwrap();
        let i = z(8, 2);
        let expect = &z(8, 1) * &(CyclotomicNumber::from_int(8, 3).unwrap() + i.scale(&rational(4, 1)));
        assert_eq!(v, expect.scale(&rational(1, 5)));
        assert!(v.unit_circle_check());
        assert_eq!(parse_cyclotomic("22/7", 10, 10).unwrap().as_rational(), Some(rational(22, 7)));
        assert_eq!(parse_cyclotomic("z^-1", 10, 10).unwrap(), z(10, 9));
        assert_eq!(parse_cyclotomic("-z^2", 10, 10).unwrap(), -z(10, 2));
        assert_eq!(parse_cyclotomic("2(z+1)", 6, 6).unwrap(), (z(6, 1) + z(6, 0)).scale(&rational(2, 1)));
        // z bound to a root of lower order
        assert_eq!(parse_cyclotomic("z", 12, 3).unwrap(), z(12, 4));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_cyclotomic("i", 10, 10), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_cyclotomic("1/0", 10, 10), Err(Error::Parse { .. })));
        assert!(matches!(parse_cyclotomic("(1+z", 10, 10), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_cyclotomic("2 $", 10, 10), Err(Error::Parse { pos: 2, .. })));
        assert!(parse_cyclotomic("", 10, 10).is_err());
        assert!(parse_cyclotomic("z^(1/2)", 10, 10).is_err());
    }

    #[test]
    fn lists() {
        let v = parse_cyclotomic_list("z*(3+4i)/5, z", 8, 8).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[1], z(8, 1));
    }
}
