//! The permanent as a hypercube sum, in three stages: Ryser's formula over
//! subset bits, the unary encoding of the row choices, and the fully affine
//! form after the pair trick.

use num_traits::One;

use super::{Builder, HypercubeSum};
use crate::error::{Error, Result};
use crate::ring::{rat, MPoly, Rat, Symbols, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RyserStage {
    /// `(-1)^n sum_b prod_k (1 - 2b[k]) prod_j sum_i b[i] x_ij`.
    Ryser,
    /// Row choices in unary through bits `a[i, j]`, `a[0, j] = 1`, `a[n, j] = 0`.
    Unary,
    /// Every non-affine factor of the unary stage split by the pair trick.
    Affine,
}

impl RyserStage {
    pub fn from_name(s: &str) -> Option<RyserStage> {
        match s {
            "ryser" => Some(RyserStage::Ryser),
            "unary" => Some(RyserStage::Unary),
            "affine" => Some(RyserStage::Affine),
            _ => None,
        }
    }
}

/// Largest `n` handled; `x_ij` has id `10 i + j`.
const MAX_N: usize = 9;
const FIRST_BIT: Var = 100;

pub fn x_var(i: usize, j: usize) -> Var {
    (10 * i + j) as Var
}

fn x(i: usize, j: usize) -> MPoly {
    MPoly::var(x_var(i, j))
}

/// `per_n` as the sum over all permutations.
pub fn permanent(n: usize) -> MPoly {
    fn rec(n: usize, row: usize, used: &mut Vec<bool>, acc: MPoly, out: &mut MPoly) {
        if row > n {
            *out = &*out + &acc;
            return;
        }
        for j in 1..=n {
            if !used[j] {
                used[j] = true;
                rec(n, row + 1, used, &acc * &x(row, j), out);
                used[j] = false;
            }
        }
    }
    let mut out = MPoly::zero();
    rec(n, 1, &mut vec![false; n + 1], MPoly::one(), &mut out);
    out
}

/// The `(n+1) x n` unary matrix of a row choice `i_1, ..., i_n`:
/// `a[i][j] = 1` iff `i < i_j`.
pub fn unary_a_matrix(n: usize, rows: &[usize]) -> Vec<Vec<u8>> {
    assert_eq!(rows.len(), n);
    (0..=n).map(|i| rows.iter().map(|&r| u8::from(i < r)).collect()).collect()
}

fn sign(n: usize) -> Rat {
    if n % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

pub fn ryser_hypercube_permanent(n: usize, stage: RyserStage) -> Result<HypercubeSum> {
    if n == 0 || n > MAX_N {
        return Err(Error::Invalid(format!("n must be in 1..={MAX_N}")));
    }
    let mut syms = Symbols::new();
    for i in 1..=n {
        for j in 1..=n {
            syms.insert(x_var(i, j), format!("x{i}{j}"));
        }
    }
    let mut h = Builder::new(FIRST_BIT, syms);
    h.scale(&sign(n));
    let b: Vec<Var> = (1..=n).map(|k| h.bit(format!("b{k}"))).collect();
    let bv = |k: usize| MPoly::var(b[k - 1]);
    for k in 1..=n {
        h.factor(&MPoly::one() - &bv(k).scale_rat(&rat(2, 1)));
    }
    if stage == RyserStage::Ryser {
        for j in 1..=n {
            let mut s = MPoly::zero();
            for i in 1..=n {
                s = &s + &(&bv(i) * &x(i, j));
            }
            h.factor(s);
        }
        return Ok(h.finish());
    }
    // a[i][j] for i in 0..=n, j in 1..=n.
    let mut a = vec![vec![0 as Var; n + 1]; n + 1];
    for j in 1..=n {
        a[0][j] = h.pin(format!("a0_{j}"), true);
    }
    for i in 1..n {
        for j in 1..=n {
            a[i][j] = h.bit(format!("a{i}_{j}"));
        }
    }
    for j in 1..=n {
        a[n][j] = h.pin(format!("a{n}_{j}"), false);
    }
    let av = |i: usize, j: usize| MPoly::var(a[i][j]);
    let one = MPoly::one;
    for i in 1..=n {
        for j in 1..=n {
            let step = &av(i - 1, j) - &av(i, j);
            let xm1 = &x(i, j) - &one();
            let bm1 = &bv(i) - &one();
            let am1 = &av(i - 1, j) - &one();
            match stage {
                RyserStage::Unary => {
                    h.factor(&one() + &(&xm1 * &step));
                    h.factor(&one() + &(&bm1 * &step));
                    h.factor(&one() + &(&am1 * &av(i, j)));
                }
                _ => {
                    h.pair(&xm1, &step, format!("c1_{i}_{j}"));
                    h.pair(&bm1, &step, format!("c2_{i}_{j}"));
                    h.pair(&am1, &av(i, j), format!("c3_{i}_{j}"));
                }
            }
        }
    }
    Ok(h.finish())
}
