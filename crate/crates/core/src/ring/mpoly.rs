use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{EpsScalar, Monomial, Rat, Symbols, Var};
use crate::error::{Error, Result};

/// Sparse polynomial in x-variables whose coefficients are Laurent polynomials in eps.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, EpsScalar>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(EpsScalar::one())
    }

    pub fn constant(c: EpsScalar) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn rat(c: Rat) -> Self {
        Self::constant(EpsScalar::constant(c))
    }

    pub fn int(c: i64) -> Self {
        Self::constant(EpsScalar::from_int(c))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), EpsScalar::one())
    }

    /// `eps^e`.
    pub fn eps_pow(e: i64) -> Self {
        Self::constant(EpsScalar::eps_pow(e))
    }

    pub fn term(m: Monomial, c: EpsScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, EpsScalar)>>(it: I) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: &EpsScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// Iterates terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &EpsScalar)> {
        self.terms.iter()
    }

    /// Number of distinct monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of (monomial, eps-exponent) pairs with nonzero coefficient.
    pub fn size(&self) -> usize {
        self.terms.values().map(|c| c.len()).sum()
    }

    pub fn coeff(&self, m: &Monomial) -> EpsScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_coeff(&self) -> EpsScalar {
        self.coeff(&Monomial::one())
    }

    /// Total degree in x; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    /// The eps-scalar value when the polynomial has no x dependence.
    pub fn as_scalar(&self) -> Option<EpsScalar> {
        match self.terms.len() {
            0 => Some(EpsScalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<Rat> {
        self.as_scalar().and_then(|c| c.as_rational())
    }

    pub fn is_eps_free(&self) -> bool {
        self.terms.values().all(|c| c.is_rational())
    }

    /// Smallest eps-exponent occurring; `None` for zero.
    pub fn min_eps_exp(&self) -> Option<i64> {
        self.terms.values().filter_map(|c| c.min_exp()).min()
    }

    /// Largest eps-exponent occurring; `None` for zero.
    pub fn max_eps_exp(&self) -> Option<i64> {
        self.terms.values().filter_map(|c| c.max_exp()).max()
    }

    /// Largest eps-exponent; the zero polynomial has none.
    pub fn error_degree(&self) -> Result<i64> {
        self.max_eps_exp().ok_or(Error::ZeroPolynomial)
    }

    /// The eps^0 part; refuses negative powers of eps.
    pub fn eps_limit(&self) -> Result<MPoly> {
        let bad: Vec<String> = self
            .terms
            .iter()
            .filter(|(_, c)| c.min_exp().is_some_and(|e| e < 0))
            .map(|(m, c)| MPoly::term(m.clone(), c.clone()).to_string())
            .collect();
        if !bad.is_empty() {
            return Err(Error::NegativeEpsPower(bad.join(", ")));
        }
        Ok(self.eps_coeff(0))
    }

    /// Coefficient of eps^e as an eps-free polynomial.
    pub fn eps_coeff(&self, e: i64) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let a = c.coeff(e);
                    (!a.is_zero()).then(|| (m.clone(), EpsScalar::constant(a)))
                })
                .collect(),
        }
    }

    /// Replaces eps by eps^t.
    pub fn eps_substitute_power(&self, t: u32) -> MPoly {
        assert!(t >= 1, "eps substitution power must be positive");
        self.map_coeffs(|c| c.substitute_power(t))
    }

    /// Replaces eps by 1/eps.
    pub fn eps_reflect(&self) -> MPoly {
        self.map_coeffs(|c| c.reflect())
    }

    /// Multiplies by eps^k.
    pub fn eps_shift(&self, k: i64) -> MPoly {
        self.map_coeffs(|c| c.shift(k))
    }

    /// Drops every term whose eps-exponent is `>= cap`.
    pub fn truncate_below(&self, cap: i64) -> MPoly {
        self.map_coeffs(|c| c.truncate_below(cap))
    }

    /// Exact specialisation `eps = x`.
    pub fn eval_eps(&self, x: &Rat) -> Result<MPoly> {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let v = c.eval(x).map_err(|_| Error::SubstitutionPole(x.to_string()))?;
            out.add_term(m.clone(), &EpsScalar::constant(v));
        }
        Ok(out)
    }

    pub fn map_coeffs<F: FnMut(&EpsScalar) -> EpsScalar>(&self, mut f: F) -> MPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = f(c);
            if !d.is_zero() {
                terms.insert(m.clone(), d);
            }
        }
        MPoly { terms }
    }

    pub fn scale(&self, c: &EpsScalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        self.map_coeffs(|a| a * c)
    }

    pub fn scale_rat(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        self.map_coeffs(|a| a.scale(c))
    }

    /// Product keeping only eps-exponents strictly below `cap` (everything when `None`).
    pub fn mul_truncated(&self, other: &MPoly, cap: Option<i64>) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        let terms = super::mulkernel::multiply(self.terms.iter().collect(), other.terms.iter().collect(), cap);
        MPoly { terms: terms.into_iter().collect() }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes polynomials for variables; unmapped variables stay.
    pub fn substitute(&self, map: &BTreeMap<Var, MPoly>) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for &(v, e) in m.pows() {
                let f = match map.get(&v) {
                    Some(p) => p.pow(e),
                    None => MPoly::term(Monomial::from_pows([(v, e)]), EpsScalar::one()),
                };
                t = &t * &f;
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Substitutes rationals for a subset of variables.
    pub fn substitute_rat(&self, map: &BTreeMap<Var, Rat>) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut coef = Rat::one();
            let mut rest = Vec::new();
            for &(v, e) in m.pows() {
                match map.get(&v) {
                    Some(r) => coef *= super::rat_pow(r, e as i64),
                    None => rest.push((v, e)),
                }
            }
            if !coef.is_zero() {
                out.add_term(Monomial::from_pows(rest), &c.scale(&coef));
            }
        }
        out
    }

    pub fn render(&self, syms: &Symbols) -> String {
        super::text::render_mpoly(self, syms)
    }

    pub fn parse(s: &str) -> Result<MPoly> {
        super::text::parse_mpoly(s, &Symbols::new())
    }

    pub fn parse_with(s: &str, syms: &Symbols) -> Result<MPoly> {
        super::text::parse_mpoly(s, syms)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.mul_truncated(rhs, None)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.map_coeffs(|c| -c)
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Symbols::new()))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<EpsScalar> for MPoly {
    fn from(c: EpsScalar) -> Self {
        MPoly::constant(c)
    }
}

impl From<Rat> for MPoly {
    fn from(c: Rat) -> Self {
        MPoly::rat(c)
    }
}
