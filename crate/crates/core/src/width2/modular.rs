//! Evaluation of programs at points of a prime field.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::program::{ProgNode, QProgram};
use crate::ring::{AffineForm, Rat, Var};

/// `2^61 - 1`.
pub const PRIME: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn add(a: u64, b: u64) -> u64 {
    (a + b) % PRIME
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> Option<u64> {
    (a != 0).then(|| pow(a, PRIME - 2))
}

fn reduce_int(n: &BigInt) -> u64 {
    let r = n.mod_floor(&BigInt::from(PRIME));
    r.abs().to_u64().unwrap()
}

/// `r mod p`, or `None` when the denominator vanishes.
pub fn reduce(r: &Rat) -> Option<u64> {
    Some(mul(reduce_int(r.numer()), inv(reduce_int(r.denom()))?))
}

type M2 = [[u64; 2]; 2];

fn mat_mul(a: &M2, b: &M2) -> M2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = add(mul(a[i][0], b[0][j]), mul(a[i][1], b[1][j]));
        }
    }
    c
}

struct Point<'a> {
    x: &'a BTreeMap<Var, u64>,
    eps: u64,
    memo: HashMap<(usize, u64), M2>,
}

impl Point<'_> {
    fn form(&self, l: &AffineForm, t: u64) -> Option<u64> {
        let e = pow(self.eps, t);
        let e_inv = inv(e)?;
        let scalar = |s: &crate::ring::EpsScalar| -> Option<u64> {
            let mut acc = 0;
            for (k, c) in s.terms() {
                let base = if *k >= 0 { pow(e, *k as u64) } else { pow(e_inv, k.unsigned_abs()) };
                acc = add(acc, mul(reduce(c)?, base));
            }
            Some(acc)
        };
        let mut v = scalar(l.constant_part())?;
        for (var, c) in l.coeffs() {
            v = add(v, mul(scalar(c)?, *self.x.get(var).unwrap_or(&0)));
        }
        Some(v)
    }

    fn node(&mut self, node: &Arc<ProgNode>, t: u64) -> Option<M2> {
        let key = (ProgNode::id(node), t);
        if let Some(m) = self.memo.get(&key) {
            return Some(*m);
        }
        let m = match &**node {
            ProgNode::Form(l) => [[self.form(l, t)?, 1], [1, 0]],
            ProgNode::Subst(c, s) => self.node(c, t * *s as u64)?,
            ProgNode::Seq(cs) => {
                let mut acc = [[1, 0], [0, 1]];
                for c in cs {
                    acc = mat_mul(&self.node(c, t)?, &acc);
                }
                acc
            }
        };
        self.memo.insert(key, m);
        Some(m)
    }
}

/// The program value mod [`PRIME`] at `x` and `eps`; `None` if a form hits a pole.
pub fn value_mod_p(q: &QProgram, x: &BTreeMap<Var, u64>, eps: u64) -> Option<[[u64; 2]; 2]> {
    Point { x, eps, memo: HashMap::new() }.node(q.root(), 1)
}

/// Checks `det(value) = (-1)^m` at `trials` random points of the prime field.
///
/// Exact arithmetic at each point; a polynomial identity that fails is caught
/// at a random point except with probability `deg / p`.
pub fn det_at_random_points(q: &QProgram, vars: &[Var], trials: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sign = if q.len() % 2 == 0 { 1 } else { PRIME - 1 };
    let mut done = 0;
    while done < trials {
        let x: BTreeMap<Var, u64> = vars.iter().map(|v| (*v, rng.gen_range(0..PRIME))).collect();
        let eps = rng.gen_range(1..PRIME);
        let Some(m) = value_mod_p(q, &x, eps) else { continue };
        let det = add(mul(m[0][0], m[1][1]), PRIME - mul(m[0][1], m[1][0]));
        if det != sign {
            return false;
        }
        done += 1;
    }
    true
}
