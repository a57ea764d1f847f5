//! Extracting exact information from approximating programs.

use num_traits::{One, Zero};

use super::cert::error_degree_of;
use super::eval::value_at;
use super::program::QProgram;
use crate::error::{Error, Result};
use crate::ring::{int, AffineForm, MPoly, Rat};

/// Lagrange weights `beta_j = prod_{m != j} a_m / (a_m - a_j)`, so that
/// `sum_j beta_j g(a_j) = g(0)` for every polynomial `g` of degree `< len`.
pub fn lagrange_weights_at_zero(points: &[Rat]) -> Vec<Rat> {
    (0..points.len())
        .map(|j| {
            let mut b = Rat::one();
            for (m, am) in points.iter().enumerate() {
                if m != j {
                    b *= am / (am - &points[j]);
                }
            }
            b
        })
        .collect()
}

/// The eps^0 part of the (1,1) entry, recovered exactly by evaluating the
/// program at `e + 1` nonzero points `eps = 1, 2, ..., e + 1` and
/// interpolating at `eps = 0`.
///
/// `e` must bound the error degree of the program value. For programs too
/// large to expand, the certified max-plus bound is what `e` is checked against.
pub fn interpolate_exact(q: &QProgram, e: i64) -> Result<MPoly> {
    if e < 0 {
        return Err(Error::InsufficientDegree { given: e, measured: 0 });
    }
    let measured = error_degree_of(q).degree;
    if measured > e {
        return Err(Error::InsufficientDegree { given: e, measured });
    }
    let mut points = Vec::new();
    let mut values = Vec::new();
    let mut cand = 1i64;
    while points.len() as i64 <= e {
        let a = int(cand);
        cand += 1;
        match value_at(q, &a) {
            Ok(m) => {
                points.push(a);
                values.push(m.get(0, 0).clone());
            }
            Err(Error::SubstitutionPole(_)) => continue,
            Err(err) => return Err(err),
        }
    }
    let betas = lagrange_weights_at_zero(&points);
    let mut acc = MPoly::zero();
    for (b, v) in betas.iter().zip(&values) {
        if !b.is_zero() {
            acc = &acc + &v.scale_rat(b);
        }
    }
    Ok(acc)
}

/// Forms `l_1, ..., l_m` with `F_m(l_1, ..., l_m) = f + O(eps)`.
#[derive(Clone, Debug)]
pub struct FibDegeneration {
    pub forms: Vec<AffineForm>,
    /// Upper bound on the border Fibonacci complexity of the target.
    pub m: usize,
}

/// Reads a program with claim `Q(f) + O(eps)` as a Fibonacci degeneration:
/// `F_m(l_1, ..., l_m)` is the (1,1) entry of `Q(l_m) ... Q(l_1)`.
pub fn fib_degeneration(q: &QProgram) -> Result<FibDegeneration> {
    let c = q.claim().ok_or_else(|| Error::Invalid("program carries no membership claim".into()))?;
    if !c.order_at_least(1) {
        return Err(Error::OrderTooLow { have: c.order.unwrap_or(0), need: 1 });
    }
    let forms = q.forms();
    Ok(FibDegeneration { m: forms.len(), forms })
}
