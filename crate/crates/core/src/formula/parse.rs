use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Formula;
use crate::error::{Error, Result};
use crate::ring::{Rat, Symbols};

/// Parses infix formulas: `+`, `-`, `*`, parentheses, rational literals `a/b`
/// and identifiers `x<k>` (or names registered in `syms`).
///
/// `+` and `*` associate to the left. `a - b` is read as `a + (-1)*b`, and a
/// leading minus on a literal produces a negative constant.
pub fn parse_formula(text: &str) -> Result<Formula> {
    parse_formula_with(text, &Symbols::new())
}

pub fn parse_formula_with(text: &str, syms: &Symbols) -> Result<Formula> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, syms };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    syms: &'a Symbols,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Formula> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = Formula::add(acc, t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = Formula::add(acc, Formula::mul(Formula::int(-1), t));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Formula> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = Formula::mul(acc, f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let f = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(f)
            }
            Some(b'-') => {
                self.pos += 1;
                if self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    let c = self.literal()?;
                    Ok(Formula::constant(-c))
                } else {
                    let f = self.factor()?;
                    Ok(Formula::mul(Formula::int(-1), f))
                }
            }
            Some(b) if b.is_ascii_digit() => Ok(Formula::constant(self.literal()?)),
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                match self.syms.lookup(name) {
                    Some(v) => Ok(Formula::var(v)),
                    None => {
                        self.pos = start;
                        self.err("unknown identifier (expected x<k>)")
                    }
                }
            }
            Some(_) => self.err("expected a variable, literal or '('"),
            None => self.err("unexpected end of input"),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap())
    }

    fn literal(&mut self) -> Result<Rat> {
        let n = self.digits()?;
        let d = if self.peek() == Some(b'/') {
            self.pos += 1;
            let d = self.digits()?;
            if d.is_zero() {
                return self.err("zero denominator");
            }
            d
        } else {
            BigInt::one()
        };
        Ok(Rat::new(n, d))
    }
}
