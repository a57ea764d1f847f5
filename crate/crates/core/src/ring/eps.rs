//! Laurent polynomials in the formal parameter eps with rational coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{rat_pow, Rat};
use crate::error::{Error, Result};

/// A finite Laurent series `sum c_e * eps^e`, stored sparse and sorted by exponent.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct EpsScalar {
    terms: Vec<(i64, Rat)>,
}

impl EpsScalar {
    pub fn zero() -> Self {
        EpsScalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rat::from_integer(c.into()))
    }

    /// `c * eps^e`.
    pub fn term(e: i64, c: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            EpsScalar { terms: vec![(e, c)] }
        }
    }

    /// `eps^e`.
    pub fn eps_pow(e: i64) -> Self {
        Self::term(e, Rat::one())
    }

    /// Builds from arbitrary (exponent, coefficient) pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(it: I) -> Self {
        let mut v: Vec<(i64, Rat)> = it.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i64, Rat)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        EpsScalar { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// True when no power of eps other than eps^0 occurs.
    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|t| t.0 == 0)
    }

    pub fn terms(&self) -> &[(i64, Rat)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn coeff(&self, e: i64) -> Rat {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(0)
    }

    /// The rational value when the scalar has no eps dependence.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        EpsScalar {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiplies by eps^k.
    pub fn shift(&self, k: i64) -> Self {
        EpsScalar {
            terms: self.terms.iter().map(|(e, a)| (e + k, a.clone())).collect(),
        }
    }

    /// Replaces eps by eps^t.
    pub fn substitute_power(&self, t: u32) -> Self {
        let t = t as i64;
        EpsScalar {
            terms: self.terms.iter().map(|(e, a)| (e * t, a.clone())).collect(),
        }
    }

    /// Replaces eps by 1/eps.
    pub fn reflect(&self) -> Self {
        EpsScalar {
            terms: self.terms.iter().rev().map(|(e, a)| (-e, a.clone())).collect(),
        }
    }

    /// Keeps only the terms with exponent strictly below `cap`.
    pub fn truncate_below(&self, cap: i64) -> Self {
        EpsScalar {
            terms: self.terms.iter().take_while(|t| t.0 < cap).cloned().collect(),
        }
    }

    /// Product keeping only exponents strictly below `cap` (all of them when `None`).
    pub fn mul_truncated(&self, other: &Self, cap: Option<i64>) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 && other.terms.len() == 1 {
            let (e, a) = &self.terms[0];
            let (f, b) = &other.terms[0];
            if cap.is_some_and(|c| e + f >= c) {
                return Self::zero();
            }
            return EpsScalar { terms: vec![(e + f, a * b)] };
        }
        let mut acc: Vec<(i64, Rat)> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (e, a) in &self.terms {
            for (f, b) in &other.terms {
                let s = e + f;
                if let Some(c) = cap {
                    if s >= c {
                        break;
                    }
                }
                acc.push((s, a * b));
            }
        }
        Self::from_terms(acc)
    }

    /// Exact value at `eps = x`; fails when `x = 0` and a negative power is present.
    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        if x.is_zero() {
            if self.min_exp().is_some_and(|e| e < 0) {
                return Err(Error::SubstitutionPole("0".into()));
            }
            return Ok(self.constant_term());
        }
        let mut acc = Rat::zero();
        for (e, a) in &self.terms {
            acc += a * rat_pow(x, *e);
        }
        Ok(acc)
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Greater
            } else if j == b.len() {
                Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        EpsScalar { terms: out }
    }
}

impl Add for &EpsScalar {
    type Output = EpsScalar;
    fn add(self, rhs: &EpsScalar) -> EpsScalar {
        self.merge(rhs, false)
    }
}

impl Sub for &EpsScalar {
    type Output = EpsScalar;
    fn sub(self, rhs: &EpsScalar) -> EpsScalar {
        self.merge(rhs, true)
    }
}

impl Mul for &EpsScalar {
    type Output = EpsScalar;
    fn mul(self, rhs: &EpsScalar) -> EpsScalar {
        self.mul_truncated(rhs, None)
    }
}

impl Neg for &EpsScalar {
    type Output = EpsScalar;
    fn neg(self) -> EpsScalar {
        EpsScalar {
            terms: self.terms.iter().map(|(e, a)| (*e, -a)).collect(),
        }
    }
}

impl Add for EpsScalar {
    type Output = EpsScalar;
    fn add(self, rhs: EpsScalar) -> EpsScalar {
        &self + &rhs
    }
}

impl Sub for EpsScalar {
    type Output = EpsScalar;
    fn sub(self, rhs: EpsScalar) -> EpsScalar {
        &self - &rhs
    }
}

impl Mul for EpsScalar {
    type Output = EpsScalar;
    fn mul(self, rhs: EpsScalar) -> EpsScalar {
        &self * &rhs
    }
}

impl Neg for EpsScalar {
    type Output = EpsScalar;
    fn neg(self) -> EpsScalar {
        -&self
    }
}

impl From<Rat> for EpsScalar {
    fn from(c: Rat) -> Self {
        EpsScalar::constant(c)
    }
}

impl From<i64> for EpsScalar {
    fn from(c: i64) -> Self {
        EpsScalar::from_int(c)
    }
}

impl fmt::Debug for EpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::MPoly::constant(self.clone()))
    }
}

impl fmt::Display for EpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::MPoly::constant(self.clone()))
    }
}
