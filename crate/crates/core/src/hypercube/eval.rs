use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::HypercubeSum;
use crate::error::{Error, Result};
use crate::ring::{MPoly, Monomial, Rat, Var};

/// Default cap on free bits for [`hypercube_eval`].
pub const DEFAULT_BIT_CAP: usize = 24;

fn pinned(h: &HypercubeSum, f: &MPoly) -> MPoly {
    if h.pins.is_empty() {
        return f.clone();
    }
    let map: BTreeMap<Var, Rat> =
        h.pins.iter().map(|(v, b)| (*v, if *b { Rat::one() } else { Rat::zero() })).collect();
    f.substitute_rat(&map)
}

fn pow2(k: usize) -> Rat {
    Rat::from_integer(num_bigint::BigInt::one() << k)
}

/// Sum over all assignments of the free bits, with the default cap.
pub fn hypercube_eval(h: &HypercubeSum) -> Result<MPoly> {
    hypercube_eval_capped(h, DEFAULT_BIT_CAP)
}

/// Sum over all `2^bits` assignments, fails with `CapExceeded` above `cap`
/// bits. Bits are assigned depth first in order of first use, each factor
/// is multiplied in as soon as its bits are fixed, and branches whose
/// partial product vanishes are cut; the result is the full sum.
pub fn hypercube_eval_capped(h: &HypercubeSum, cap: usize) -> Result<MPoly> {
    if h.bits.len() > cap {
        return Err(Error::CapExceeded { needed: h.bits.len(), cap });
    }
    let free: BTreeSet<Var> = h.bits.iter().copied().collect();
    let mut total = MPoly::zero();
    for term in &h.terms {
        let factors: Vec<MPoly> = term.iter().map(|f| pinned(h, f)).collect();
        let mut order: Vec<Var> = Vec::new();
        for f in &factors {
            for v in f.vars() {
                if free.contains(&v) && !order.contains(&v) {
                    order.push(v);
                }
            }
        }
        let unused = free.len() - order.len();
        // ready[l]: factors whose last bit is order[l - 1] (l = 0: no bits).
        let mut ready: Vec<Vec<(MPoly, Vec<Var>)>> = vec![Vec::new(); order.len() + 1];
        for f in factors {
            let bs: Vec<Var> = f.vars().into_iter().filter(|v| free.contains(v)).collect();
            let level = bs.iter().map(|b| order.iter().position(|o| o == b).unwrap() + 1).max().unwrap_or(0);
            ready[level].push((f, bs));
        }
        let mut assignment = BTreeMap::new();
        let mut acc = MPoly::one();
        for (f, _) in &ready[0] {
            acc = &acc * f;
        }
        let s = dfs(&order, &ready, 0, &mut assignment, acc);
        total = &total + &s.scale_rat(&pow2(unused));
    }
    Ok(total.scale_rat(&h.prefactor))
}

fn dfs(
    order: &[Var],
    ready: &[Vec<(MPoly, Vec<Var>)>],
    level: usize,
    assignment: &mut BTreeMap<Var, Rat>,
    acc: MPoly,
) -> MPoly {
    if acc.is_zero() {
        return acc;
    }
    if level == order.len() {
        return acc;
    }
    let mut out = MPoly::zero();
    for bit in [0, 1] {
        assignment.insert(order[level], Rat::from_integer(bit.into()));
        let mut a = acc.clone();
        for (f, bs) in &ready[level + 1] {
            let sub: BTreeMap<Var, Rat> = bs.iter().map(|b| (*b, assignment[b].clone())).collect();
            a = &a * &f.substitute_rat(&sub);
            if a.is_zero() {
                break;
            }
        }
        out = &out + &dfs(order, ready, level + 1, assignment, a);
    }
    assignment.remove(&order[level]);
    out
}

/// `b^k -> b` for the given bits (valid under a sum over Boolean values).
fn multilinear(p: &MPoly, bits: &BTreeSet<Var>) -> MPoly {
    MPoly::from_terms(p.terms().map(|(m, c)| {
        let pows = m.pows().iter().map(|&(v, e)| (v, if bits.contains(&v) { 1 } else { e }));
        (Monomial::from_pows(pows), c.clone())
    }))
}

/// Same sum as [`hypercube_eval`], computed by summing out one bit at a
/// time: the factors mentioning the bit are multiplied, the product is
/// evaluated at 0 and 1, and the sum replaces them. Bits are picked by
/// fewest neighbouring bits. No cap on the number of bits.
pub fn hypercube_eval_elimination(h: &HypercubeSum) -> MPoly {
    let free: BTreeSet<Var> = h.bits.iter().copied().collect();
    let mut total = MPoly::zero();
    for term in &h.terms {
        let mut factors: Vec<MPoly> = term.iter().map(|f| pinned(h, f)).collect();
        let mut scale = 0usize;
        let mut remaining = free.clone();
        while !remaining.is_empty() {
            let bits_of = |f: &MPoly| -> BTreeSet<Var> { f.vars().into_iter().filter(|v| remaining.contains(v)).collect() };
            let sets: Vec<BTreeSet<Var>> = factors.iter().map(bits_of).collect();
            let best = *remaining
                .iter()
                .min_by_key(|b| {
                    let mut n: BTreeSet<Var> = BTreeSet::new();
                    for s in sets.iter().filter(|s| s.contains(b)) {
                        n.extend(s.iter().copied());
                    }
                    n.len()
                })
                .unwrap();
            remaining.remove(&best);
            let (with, without): (Vec<(MPoly, BTreeSet<Var>)>, Vec<_>) =
                factors.into_iter().zip(sets).partition(|(_, s)| s.contains(&best));
            factors = without.into_iter().map(|(f, _)| f).collect();
            if with.is_empty() {
                scale += 1;
                continue;
            }
            let mut p = MPoly::one();
            for (f, _) in with {
                p = multilinear(&(&p * &f), &free);
            }
            let at = |x: i64| p.substitute_rat(&BTreeMap::from([(best, Rat::from_integer(x.into()))]));
            let summed = &at(0) + &at(1);
            if summed.is_zero() {
                factors = vec![MPoly::zero()];
                remaining.clear();
                break;
            }
            factors.push(summed);
        }
        let mut p = MPoly::one();
        for f in &factors {
            p = &p * f;
        }
        total = &total + &p.scale_rat(&pow2(scale));
    }
    total.scale_rat(&h.prefactor)
}
