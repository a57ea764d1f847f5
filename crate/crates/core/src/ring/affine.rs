use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{EpsScalar, MPoly, Monomial, Rat, Symbols, Var};
use crate::error::{Error, Result};

/// Edge-label classes, from most to least restrictive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelClass {
    /// A single variable or a constant.
    Weakest,
    /// `a*x_i + b`.
    Weak,
    /// At most two variables.
    WeakPlus,
    General,
}

impl LabelClass {
    pub const ALL: [LabelClass; 4] =
        [LabelClass::Weakest, LabelClass::Weak, LabelClass::WeakPlus, LabelClass::General];

    pub fn name(self) -> &'static str {
        match self {
            LabelClass::Weakest => "weakest",
            LabelClass::Weak => "weak",
            LabelClass::WeakPlus => "weak_plus",
            LabelClass::General => "general",
        }
    }

    pub fn from_name(s: &str) -> Option<LabelClass> {
        LabelClass::ALL.into_iter().find(|c| c.name() == s)
    }
}

impl fmt::Display for LabelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `constant + sum_i coeffs[i] * x_i` with eps-scalar coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AffineForm {
    constant: EpsScalar,
    coeffs: BTreeMap<Var, EpsScalar>,
}

impl AffineForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<EpsScalar>) -> Self {
        AffineForm { constant: c.into(), coeffs: BTreeMap::new() }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(EpsScalar::from_int(c))
    }

    pub fn rat(c: Rat) -> Self {
        Self::constant(EpsScalar::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::term(v, EpsScalar::one())
    }

    /// `c * x_v`.
    pub fn term(v: Var, c: impl Into<EpsScalar>) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(v, c);
        }
        AffineForm { constant: EpsScalar::zero(), coeffs }
    }

    pub fn new(constant: EpsScalar, coeffs: impl IntoIterator<Item = (Var, EpsScalar)>) -> Self {
        let mut f = AffineForm::constant(constant);
        for (v, c) in coeffs {
            f.add_coeff(v, &c);
        }
        f
    }

    fn add_coeff(&mut self, v: Var, c: &EpsScalar) {
        let s = match self.coeffs.get(&v) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if s.is_zero() {
            self.coeffs.remove(&v);
        } else {
            self.coeffs.insert(v, s);
        }
    }

    pub fn constant_part(&self) -> &EpsScalar {
        &self.constant
    }

    pub fn coeffs(&self) -> &BTreeMap<Var, EpsScalar> {
        &self.coeffs
    }

    pub fn coeff(&self, v: Var) -> EpsScalar {
        self.coeffs.get(&v).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_vars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.coeffs.keys().copied().collect()
    }

    /// True when no eps occurs.
    pub fn is_rational(&self) -> bool {
        self.constant.is_rational() && self.coeffs.values().all(|c| c.is_rational())
    }

    /// Smallest eps-exponent among all coefficients; `None` for the zero form.
    pub fn min_eps_exp(&self) -> Option<i64> {
        self.constant.min_exp().into_iter().chain(self.coeffs.values().filter_map(|c| c.min_exp())).min()
    }

    pub fn classify_label(&self) -> LabelClass {
        let n = self.coeffs.len();
        if n == 0 {
            return LabelClass::Weakest;
        }
        if n == 1 {
            let c = self.coeffs.values().next().unwrap();
            if self.constant.is_zero() && c.is_one() {
                return LabelClass::Weakest;
            }
            return LabelClass::Weak;
        }
        if n == 2 {
            LabelClass::WeakPlus
        } else {
            LabelClass::General
        }
    }

    pub fn to_mpoly(&self) -> MPoly {
        let mut p = MPoly::constant(self.constant.clone());
        for (v, c) in &self.coeffs {
            p.add_term(Monomial::var(*v), c);
        }
        p
    }

    /// Converts a polynomial of degree at most one.
    pub fn from_mpoly(p: &MPoly) -> Result<AffineForm> {
        let mut f = AffineForm::zero();
        for (m, c) in p.terms() {
            if m.is_one() {
                f.constant = c.clone();
            } else if let Some(v) = m.as_var() {
                f.coeffs.insert(v, c.clone());
            } else {
                return Err(Error::Invalid(format!("{p} is not affine")));
            }
        }
        Ok(f)
    }

    pub fn map_coeffs<F: Fn(&EpsScalar) -> EpsScalar>(&self, f: F) -> AffineForm {
        AffineForm::new(f(&self.constant), self.coeffs.iter().map(|(v, c)| (*v, f(c))))
    }

    pub fn scale(&self, c: &EpsScalar) -> AffineForm {
        self.map_coeffs(|a| a * c)
    }

    pub fn scale_rat(&self, c: &Rat) -> AffineForm {
        self.map_coeffs(|a| a.scale(c))
    }

    pub fn eps_substitute_power(&self, t: u32) -> AffineForm {
        self.map_coeffs(|a| a.substitute_power(t))
    }

    pub fn eps_reflect(&self) -> AffineForm {
        self.map_coeffs(|a| a.reflect())
    }

    pub fn eps_shift(&self, k: i64) -> AffineForm {
        self.map_coeffs(|a| a.shift(k))
    }

    /// Replaces eps by 0; refuses negative powers.
    pub fn eps_limit(&self) -> Result<AffineForm> {
        if self.min_eps_exp().is_some_and(|e| e < 0) {
            return Err(Error::NegativeEpsPower(self.to_string()));
        }
        Ok(self.map_coeffs(|a| EpsScalar::constant(a.constant_term())))
    }

    /// Exact specialisation `eps = x`.
    pub fn eval_eps(&self, x: &Rat) -> Result<AffineForm> {
        let ev = |a: &EpsScalar| a.eval(x).map(EpsScalar::constant);
        let constant = ev(&self.constant).map_err(|_| Error::SubstitutionPole(x.to_string()))?;
        let mut coeffs = Vec::new();
        for (v, c) in &self.coeffs {
            coeffs.push((*v, ev(c).map_err(|_| Error::SubstitutionPole(x.to_string()))?));
        }
        Ok(AffineForm::new(constant, coeffs))
    }

    /// Substitutes rationals for some variables.
    pub fn substitute_rat(&self, map: &BTreeMap<Var, Rat>) -> AffineForm {
        let mut constant = self.constant.clone();
        let mut coeffs = Vec::new();
        for (v, c) in &self.coeffs {
            match map.get(v) {
                Some(r) => constant = &constant + &c.scale(r),
                None => coeffs.push((*v, c.clone())),
            }
        }
        AffineForm::new(constant, coeffs)
    }

    /// Replaces variables by affine forms.
    pub fn substitute(&self, map: &BTreeMap<Var, AffineForm>) -> AffineForm {
        let mut out = AffineForm::constant(self.constant.clone());
        for (v, c) in &self.coeffs {
            match map.get(v) {
                Some(f) => out = &out + &f.scale(c),
                None => out.add_coeff(*v, c),
            }
        }
        out
    }

    pub fn render(&self, syms: &Symbols) -> String {
        self.to_mpoly().render(syms)
    }

    pub fn parse(s: &str) -> Result<AffineForm> {
        Self::parse_with(s, &Symbols::new())
    }

    pub fn parse_with(s: &str, syms: &Symbols) -> Result<AffineForm> {
        AffineForm::from_mpoly(&MPoly::parse_with(s, syms)?)
    }
}

impl Add for &AffineForm {
    type Output = AffineForm;
    fn add(self, rhs: &AffineForm) -> AffineForm {
        let mut out = self.clone();
        out.constant = &out.constant + &rhs.constant;
        for (v, c) in &rhs.coeffs {
            out.add_coeff(*v, c);
        }
        out
    }
}

impl Sub for &AffineForm {
    type Output = AffineForm;
    fn sub(self, rhs: &AffineForm) -> AffineForm {
        self + &(-rhs)
    }
}

impl Neg for &AffineForm {
    type Output = AffineForm;
    fn neg(self) -> AffineForm {
        self.map_coeffs(|a| -a)
    }
}

impl Add for AffineForm {
    type Output = AffineForm;
    fn add(self, rhs: AffineForm) -> AffineForm {
        &self + &rhs
    }
}

impl Sub for AffineForm {
    type Output = AffineForm;
    fn sub(self, rhs: AffineForm) -> AffineForm {
        &self - &rhs
    }
}

impl Neg for AffineForm {
    type Output = AffineForm;
    fn neg(self) -> AffineForm {
        -&self
    }
}

impl Mul<&Rat> for &AffineForm {
    type Output = AffineForm;
    fn mul(self, rhs: &Rat) -> AffineForm {
        self.scale_rat(rhs)
    }
}

impl From<Rat> for AffineForm {
    fn from(c: Rat) -> Self {
        AffineForm::rat(c)
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Symbols::new()))
    }
}

impl fmt::Debug for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Convenience for tests and constructions: `x_v + c`.
pub fn var_plus(v: Var, c: i64) -> AffineForm {
    &AffineForm::var(v) + &AffineForm::int(c)
}
