//! Canonical text form for [`MPoly`], e.g. `3/2*eps^-1*x1*x2^2 - x3 + 7`.
//!
//! Terms are listed by descending monomial order; for a fixed monomial the
//! eps powers ascend.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{EpsScalar, MPoly, Monomial, Rat, Symbols};
use crate::error::{Error, Result};

pub fn render_mpoly(p: &MPoly, syms: &Symbols) -> String {
    let mut out = String::new();
    for (m, c) in p.terms().rev() {
        for (e, a) in c.terms() {
            let neg = a.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&render_term(m, *e, &a.abs(), syms));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn render_term(m: &Monomial, e: i64, a: &Rat, syms: &Symbols) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !a.is_one() || (e == 0 && m.is_one()) {
        parts.push(a.to_string());
    }
    match e {
        0 => {}
        1 => parts.push("eps".into()),
        _ => parts.push(format!("eps^{e}")),
    }
    for &(v, k) in m.pows() {
        if k == 1 {
            parts.push(syms.name(v));
        } else {
            parts.push(format!("{}^{k}", syms.name(v)));
        }
    }
    parts.join("*")
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let t = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(t.parse().unwrap())
    }

    fn int(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        let v = self.uint()?;
        let v: i64 = match i64::try_from(v) {
            Ok(v) => v,
            Err(_) => {
                self.pos = start;
                return self.err("exponent out of range");
            }
        };
        Ok(if neg { -v } else { v })
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
            while self.pos < self.s.len()
                && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
            {
                self.pos += 1;
            }
            Some(std::str::from_utf8(&self.s[start..self.pos]).unwrap())
        } else {
            None
        }
    }
}

/// Parses the canonical rendering (and any sum of signed products of
/// rationals, `eps^k` and `name^k` factors).
pub fn parse_mpoly(s: &str, syms: &Symbols) -> Result<MPoly> {
    let mut lx = Lexer { s: s.as_bytes(), pos: 0 };
    let mut acc = MPoly::zero();
    let mut first = true;
    loop {
        let mut sign = Rat::one();
        match lx.peek() {
            None if first => return lx.err("empty polynomial"),
            None => break,
            Some(b'+') if !first => lx.pos += 1,
            Some(b'-') => {
                lx.pos += 1;
                sign = -sign;
            }
            Some(_) if first => {}
            Some(_) => return lx.err("expected '+' or '-'"),
        }
        first = false;
        let (m, e, c) = parse_product(&mut lx, syms)?;
        acc.add_term(m, &EpsScalar::term(e, c * sign));
    }
    Ok(acc)
}

fn parse_product(lx: &mut Lexer<'_>, syms: &Symbols) -> Result<(Monomial, i64, Rat)> {
    let mut coef = Rat::one();
    let mut eps = 0i64;
    let mut pows = Vec::new();
    loop {
        match lx.peek() {
            Some(b) if b.is_ascii_digit() => {
                let n = lx.uint()?;
                let d = if lx.peek() == Some(b'/') {
                    lx.pos += 1;
                    let d = lx.uint()?;
                    if d.is_zero() {
                        return lx.err("zero denominator");
                    }
                    d
                } else {
                    BigInt::one()
                };
                coef *= Rat::new(n, d);
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let start = lx.pos;
                let name = lx.ident().unwrap();
                let k = if lx.peek() == Some(b'^') {
                    lx.pos += 1;
                    lx.int()?
                } else {
                    1
                };
                if name == "eps" {
                    eps += k;
                } else {
                    let Some(v) = syms.lookup(name) else {
                        lx.pos = start;
                        return lx.err(format!("unknown variable {name}"));
                    };
                    if k < 0 {
                        lx.pos = start;
                        return lx.err("negative exponent on a variable");
                    }
                    pows.push((v, k as u32));
                }
            }
            _ => return lx.err("expected a factor"),
        }
        if lx.peek() == Some(b'*') {
            lx.pos += 1;
        } else {
            break;
        }
    }
    Ok((Monomial::from_pows(pows), eps, coef))
}

/// Parses a rational literal such as `-3/2`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    t.parse::<Rat>()
        .ok()
        .filter(|_| !t.is_empty())
        .ok_or_else(|| Error::Syntax { pos: 0, msg: format!("bad rational {s:?}") })
}
