//! Polynomial multiplication over a common denominator.
//!
//! Coefficients are scaled to integers, accumulated in `i128` while that is
//! possible and in `BigInt` otherwise, and divided back at the end.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{EpsScalar, Monomial, Rat};

type Terms<'a> = Vec<(&'a Monomial, &'a EpsScalar)>;

trait Acc: Clone {
    fn zero() -> Self;
    fn mul_add(&mut self, a: &Self, b: &Self) -> bool;
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
}

impl Acc for i128 {
    fn zero() -> Self {
        0
    }
    fn mul_add(&mut self, a: &Self, b: &Self) -> bool {
        match a.checked_mul(*b).and_then(|p| self.checked_add(p)) {
            Some(s) => {
                *self = s;
                true
            }
            None => false,
        }
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i64().map(i128::from)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl Acc for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn mul_add(&mut self, a: &Self, b: &Self) -> bool {
        *self += a * b;
        true
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

fn common_denominator(t: &Terms) -> BigInt {
    let mut d = BigInt::one();
    for (_, c) in t {
        for (_, r) in c.terms() {
            d = d.lcm(r.denom());
        }
    }
    d
}

struct Scaled<T> {
    coeffs: Vec<(i64, T)>,
}

fn scale<T: Acc>(t: &Terms, d: &BigInt) -> Option<Vec<Scaled<T>>> {
    t.iter()
        .map(|(_, c)| {
            let coeffs = c
                .terms()
                .iter()
                .map(|(e, r)| T::from_big(&(r.numer() * (d / r.denom()))).map(|v| (*e, v)))
                .collect::<Option<Vec<_>>>()?;
            Some(Scaled { coeffs })
        })
        .collect()
}

/// `(product monomial, lo, dense coefficients)` or `None` on overflow.
fn accumulate<T: Acc>(
    a: &[Scaled<T>],
    b: &[Scaled<T>],
    pairs: &[(usize, usize, usize)],
    ranges: &[(i64, i64)],
    cap: Option<i64>,
) -> Option<Vec<Vec<T>>> {
    let mut out: Vec<Vec<T>> = ranges.iter().map(|(lo, hi)| vec![T::zero(); (hi - lo + 1).max(0) as usize]).collect();
    for &(i, j, k) in pairs {
        let lo = ranges[k].0;
        let acc = &mut out[k];
        for (e, x) in &a[i].coeffs {
            for (f, y) in &b[j].coeffs {
                let s = e + f;
                if cap.is_some_and(|c| s >= c) {
                    break;
                }
                if !acc[(s - lo) as usize].mul_add(x, y) {
                    return None;
                }
            }
        }
    }
    Some(out)
}

pub(super) fn multiply(a: Terms, b: Terms, cap: Option<i64>) -> Vec<(Monomial, EpsScalar)> {
    let (da, db) = (common_denominator(&a), common_denominator(&b));
    // Product monomials and the exponent range each one receives.
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let mut monos = Vec::new();
    let mut ranges: Vec<(i64, i64)> = Vec::new();
    let mut pairs = Vec::new();
    for (i, (m1, c1)) in a.iter().enumerate() {
        let (lo1, hi1) = (c1.min_exp().unwrap(), c1.max_exp().unwrap());
        for (j, (m2, c2)) in b.iter().enumerate() {
            let lo = lo1 + c2.min_exp().unwrap();
            let mut hi = hi1 + c2.max_exp().unwrap();
            if let Some(c) = cap {
                if lo >= c {
                    continue;
                }
                hi = hi.min(c - 1);
            }
            let m = m1.mul(m2);
            let k = *index.entry(m.clone()).or_insert_with(|| {
                monos.push(m);
                ranges.push((lo, hi));
                ranges.len() - 1
            });
            ranges[k] = (ranges[k].0.min(lo), ranges[k].1.max(hi));
            pairs.push((i, j, k));
        }
    }
    let small = scale::<i128>(&a, &da)
        .zip(scale::<i128>(&b, &db))
        .and_then(|(sa, sb)| accumulate(&sa, &sb, &pairs, &ranges, cap))
        .map(|v| v.into_iter().map(|row| row.iter().map(Acc::to_big).collect::<Vec<_>>()).collect::<Vec<_>>());
    let dense = small.unwrap_or_else(|| {
        let sa = scale::<BigInt>(&a, &da).unwrap();
        let sb = scale::<BigInt>(&b, &db).unwrap();
        accumulate(&sa, &sb, &pairs, &ranges, cap).unwrap()
    });
    let denom = da * db;
    let mut out = Vec::new();
    for ((m, (lo, _)), row) in monos.into_iter().zip(ranges).zip(dense) {
        let terms: Vec<(i64, Rat)> = row
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !Acc::is_zero(v))
            .map(|(o, v)| (lo + o as i64, Rat::new(v, denom.clone())))
            .collect();
        if !terms.is_empty() {
            out.push((m, EpsScalar::from_terms(terms)));
        }
    }
    out
}
