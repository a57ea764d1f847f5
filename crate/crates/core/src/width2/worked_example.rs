//! The explicit four-matrix approximation of `Q(x1*x2)` and its chaining into
//! a width-2 product approximating `x1*x2 + x3*x4 + ... + x15*x16`.

use crate::ring::{Matrix, MPoly, Var};

fn p(s: &str, a: Var, b: Var) -> MPoly {
    let s = s.replace('a', &format!("x{a}")).replace('b', &format!("x{b}"));
    MPoly::parse(&s).expect("fixed text parses")
}

/// The four factors of `F(x_a, x_b)`, left to right.
pub fn factors(a: Var, b: Var) -> [Matrix; 4] {
    let m = |rows: [[&str; 2]; 2]| {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| p(s, a, b)).collect()).collect())
    };
    [
        m([["eps^-1 - 1/2*eps*a", "-1/2*eps^-1*a"], ["eps^3", "eps"]]),
        m([["1/2*eps^2*a - eps^2*b + 1", "1/2*a - b"], ["eps^2", "1"]]),
        m([["1/2*eps^2*a + 1", "-1/2*a"], ["-eps^2", "1"]]),
        m([["1/2*eps^-1*a + eps^-1*b", "eps"], ["eps^-1", "0"]]),
    ]
}

/// `F(x_a, x_b)`, the product of [`factors`].
pub fn block(a: Var, b: Var) -> Matrix {
    let [m1, m2, m3, m4] = factors(a, b);
    &(&(&m1 * &m2) * &m3) * &m4
}

/// `(1 0) F(x1,x2) S F(x3,x4) S ... S F(x_{2n-1},x_{2n}) (1 0)^T` with `S`
/// the swap matrix. The full expansion grows quickly; see [`chain_below`].
pub fn chain(pairs: u32) -> MPoly {
    let s = super::program::swap_matrix();
    let mut acc = block(1, 2);
    for i in 1..pairs {
        acc = &(&acc * &s) * &block(2 * i + 1, 2 * i + 2);
    }
    acc.get(0, 0).clone()
}

/// The eps-exponents below `cap` of [`chain`]. Exact because no block entry
/// has a negative eps-power (checked: `None` otherwise).
pub fn chain_below(pairs: u32, cap: i64) -> Option<MPoly> {
    let s = super::program::swap_matrix();
    let cut = |m: &Matrix| m.map(|e| e.truncate_below(cap));
    let mut acc: Option<Matrix> = None;
    for i in 0..pairs {
        let b = block(2 * i + 1, 2 * i + 2);
        if b.min_eps_exp().is_some_and(|e| e < 0) {
            return None;
        }
        acc = Some(match acc {
            None => cut(&b),
            Some(a) => cut(&a.mul_truncated(&s, Some(cap)).mul_truncated(&b, Some(cap))),
        });
    }
    Some(acc.map_or(MPoly::one(), |a| a.get(0, 0).clone()))
}
