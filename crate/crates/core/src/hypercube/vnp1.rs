//! Width-3 programs as hypercube sums over path bits.
//!
//! The program value is a sum over paths `j_0, ..., j_k` through the layers
//! `A_m, ..., A_1, diag(-1, 1, 0)` of products of entries `L_i[j_i, j_{i-1}]`.
//! Bit `b_s[i]` says the path visits vertex `s` of layer `i`; `V` keeps only
//! assignments with exactly one bit per layer, and each `S_i` is the entry
//! picked by the bits of layers `i-1` and `i`.

use num_traits::{One, Zero};

use super::{Builder, HypercubeSum};
use crate::error::{Error, Result};
use crate::ring::{MPoly, Rat, Symbols, Var};
use crate::width3::{Primitive3, Width3Program};

/// Where the path bits of a [`width3_to_vnp1`] output live.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vnp1Layout {
    /// `path_bits[i][s]` is `b_{s+1}[i]`, for layers `i = 0..=k`.
    pub path_bits: Vec<[Var; 3]>,
    /// Bits introduced by the tricks.
    pub trick_bits: usize,
}

impl Vnp1Layout {
    pub fn path_bit_count(&self) -> usize {
        3 * self.path_bits.len()
    }
}

/// `f = sum_b V(b) S_k(L_k) ... S_1(L_1)` with every factor affine.
///
/// With `two_variable`, the three kinds of factor with more than two
/// variables (the layer sums in `V`, diagonal sums over three nonzero
/// weights, and the first factor of `S(M(x))`) go through the triple trick,
/// so that no factor has more than two variables.
pub fn width3_to_vnp1(p: &Width3Program, two_variable: bool) -> Result<(HypercubeSum, Vnp1Layout)> {
    if p.is_empty() {
        return Err(Error::Invalid("empty width-3 program".into()));
    }
    let mut layers: Vec<Primitive3> = p.primitives.iter().rev().cloned().collect();
    layers.push(Primitive3::Diag([-Rat::one(), Rat::one(), Rat::zero()]));
    let k = layers.len();
    let first_free = p
        .primitives
        .iter()
        .filter_map(|a| match a {
            Primitive3::M(l) => l.vars().into_iter().max(),
            _ => None,
        })
        .max()
        .map_or(0, |v| v + 1);
    let mut h = Builder::new(first_free, Symbols::new());
    let path_bits: Vec<[Var; 3]> =
        (0..=k).map(|i| [1, 2, 3].map(|s| h.bit(format!("b{s}_{i}")))).collect();
    let b = |s: usize, i: usize| MPoly::var(path_bits[i][s - 1]);
    let one = MPoly::one;
    let mut tricks = 0usize;
    let mut fresh = |prefix: &str, i: usize| {
        tricks += 1;
        format!("{prefix}{tricks}_{i}")
    };

    for i in 0..=k {
        if two_variable {
            h.triple(&b(1, i), &b(2, i), &b(3, i), fresh("v", i));
        } else {
            h.factor(&(&b(1, i) + &b(2, i)) + &b(3, i));
        }
        for (s, t) in [(1, 2), (1, 3), (2, 3)] {
            h.pair(&-b(s, i), &b(t, i), fresh("w", i));
        }
    }

    for (idx, layer) in layers.iter().enumerate() {
        let (cur, prev) = (idx + 1, idx);
        match layer {
            Primitive3::M(l) => {
                let step = &b(1, prev) - &b(1, cur);
                let l = l.to_mpoly();
                if l.vars().is_empty() {
                    h.factor(&one() + &(&(&l - &one()) * &step));
                } else if two_variable {
                    // 1 + (l-1) step = 1/2 sum_c (l - 2c)(step + 1 - 2c), and the
                    // second factor is (b1[prev] - 1) + (-b1[cur]) + (2 - 2c).
                    let c = h.bit(fresh("m", cur));
                    let cv = MPoly::var(c);
                    let two_c = cv.scale_rat(&Rat::from_integer(2.into()));
                    h.scale(&Rat::new(1.into(), 2.into()));
                    h.factor(&l - &two_c);
                    let w = &MPoly::int(2) - &two_c;
                    h.triple(&(&b(1, prev) - &one()), &-b(1, cur), &w, fresh("t", cur));
                } else {
                    h.pair(&(&l - &one()), &step, fresh("m", cur));
                }
                h.pair(&(&b(2, cur) - &one()), &b(2, prev), fresh("p", cur));
                h.eq(&b(3, prev), &b(3, cur));
            }
            Primitive3::Perm(pi) => {
                for s in 1..=3 {
                    h.eq(&b(s, prev), &b(pi[s - 1] + 1, cur));
                }
            }
            Primitive3::Diag(d) => {
                let parts: Vec<MPoly> =
                    (1..=3).map(|s| b(s, prev).scale_rat(&d[s - 1])).collect();
                let nonzero = d.iter().filter(|x| !x.is_zero()).count();
                if two_variable && nonzero > 2 {
                    h.triple(&parts[0], &parts[1], &parts[2], fresh("d", cur));
                } else {
                    h.factor(&(&parts[0] + &parts[1]) + &parts[2]);
                }
                for s in 1..=3 {
                    h.eq(&b(s, prev), &b(s, cur));
                }
            }
        }
    }
    let layout = Vnp1Layout { path_bits: path_bits.clone(), trick_bits: 0 };
    let sum = h.finish();
    let trick_bits = sum.bits.len() - layout.path_bit_count();
    Ok((sum, Vnp1Layout { trick_bits, ..layout }))
}
