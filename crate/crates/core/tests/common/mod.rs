#![allow(dead_code)]

use narrow_abp::ring::{rat, AffineForm, EpsScalar, MPoly, Monomial, Rat};
use proptest::prelude::*;

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, prop_oneof![Just(1i64), Just(2), Just(3)]).prop_map(|(n, d)| rat(n, d))
}

pub fn eps_scalar(lo: i64, hi: i64) -> impl Strategy<Value = EpsScalar> {
    prop::collection::vec((lo..=hi, small_rat()), 0..3).prop_map(EpsScalar::from_terms)
}

pub fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((1u32..=4, 1u32..=2), 0..3).prop_map(Monomial::from_pows)
}

/// Polynomials in `x1..x4` with eps exponents in `lo..=hi`.
pub fn mpoly_in(lo: i64, hi: i64) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((monomial(), eps_scalar(lo, hi)), 0..5).prop_map(MPoly::from_terms)
}

pub fn mpoly() -> impl Strategy<Value = MPoly> {
    mpoly_in(-2, 3)
}

/// Eps-free polynomials.
pub fn plain_mpoly() -> impl Strategy<Value = MPoly> {
    mpoly_in(0, 0)
}

pub fn affine_in(lo: i64, hi: i64) -> impl Strategy<Value = AffineForm> {
    (eps_scalar(lo, hi), prop::collection::vec((1u32..=4, eps_scalar(lo, hi)), 0..3))
        .prop_map(|(c, vs)| AffineForm::new(c, vs))
}

pub fn rational_affine() -> impl Strategy<Value = AffineForm> {
    affine_in(0, 0)
}

pub fn p(s: &str) -> MPoly {
    MPoly::parse(s).unwrap()
}

pub fn l(s: &str) -> AffineForm {
    AffineForm::parse(s).unwrap()
}
