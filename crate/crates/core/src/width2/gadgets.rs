//! The addition, squaring and multiplication gadgets on Q-matrix programs.

use std::sync::Arc;

use super::program::{Claim, ProgNode, QProgram};
use crate::error::{Error, Result};
use crate::ring::{AffineForm, EpsScalar};

fn form(l: AffineForm) -> Arc<ProgNode> {
    Arc::new(ProgNode::Form(l))
}

fn eps(e: i64) -> AffineForm {
    AffineForm::constant(EpsScalar::eps_pow(e))
}

fn c(v: i64) -> AffineForm {
    AffineForm::int(v)
}

/// Application-order forms of `A = Q(-1/eps) Q(eps) Q(-1/eps)`.
pub fn gadget_a() -> Vec<AffineForm> {
    vec![-eps(-1), eps(1), -eps(-1)]
}

/// Application-order forms of `B = Q(1) Q(-1) Q(1) Q(eps^2)`, or of `B'`
/// (with `-eps^2`) when `plus` is set.
pub fn gadget_b(plus: bool) -> Vec<AffineForm> {
    let e2 = if plus { -eps(2) } else { eps(2) };
    vec![e2, c(1), c(-1), c(1)]
}

/// Application-order forms of `C = Q(-1/eps) Q(eps - 1) Q(1) Q(1/eps - 1)`.
pub fn gadget_c() -> Vec<AffineForm> {
    vec![&eps(-1) - &c(1), c(1), &eps(1) - &c(1), -eps(-1)]
}

fn claim_of(p: &QProgram) -> Result<&Claim> {
    p.claim().ok_or_else(|| Error::Invalid("program carries no membership claim".into()))
}

fn min_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

/// `p ++ [0] ++ r`: from `Q(f) + O(eps^k)` and `Q(g) + O(eps^k)` builds
/// `Q(f + g) + O(eps^k)` with `n + m + 1` primitives.
pub fn q_add(p: &QProgram, r: &QProgram) -> Result<QProgram> {
    let (cp, cr) = (claim_of(p)?, claim_of(r)?);
    let claim = Claim { target: &cp.target + &cr.target, order: min_order(cp.order, cr.order) };
    let root = Arc::new(ProgNode::Seq(vec![p.root().clone(), form(AffineForm::zero()), r.root().clone()]));
    let out = QProgram::from_parts(root, p.tracked_error_bound() + r.tracked_error_bound(), Some(claim));
    assert_eq!(out.len(), p.len() + r.len() + 1, "addition gadget length");
    Ok(out)
}

/// Squaring: from `Q(f) + O(eps^3)` builds `A F B F C`, which lies in
/// `Q(-f^2) + O(eps)`, or in `Q(f^2) + O(eps)` with `B'` when `plus` is set.
/// Uses `2n + 11` primitives.
pub fn q_square(p: &QProgram, plus: bool) -> Result<QProgram> {
    let cp = claim_of(p)?;
    if !cp.order_at_least(3) {
        return Err(Error::OrderTooLow { have: cp.order.unwrap_or(i64::MAX), need: 3 });
    }
    let sq = &cp.target * &cp.target;
    let claim = Claim { target: if plus { sq } else { -sq }, order: Some(1) };
    let mut parts: Vec<Arc<ProgNode>> = gadget_c().into_iter().map(form).collect();
    parts.push(p.root().clone());
    parts.extend(gadget_b(plus).into_iter().map(form));
    parts.push(p.root().clone());
    parts.extend(gadget_a().into_iter().map(form));
    let out = QProgram::from_parts(Arc::new(ProgNode::Seq(parts)), 2 * p.tracked_error_bound() + 4, Some(claim));
    assert_eq!(out.len(), 2 * p.len() + 11, "squaring gadget length");
    Ok(out)
}

/// Multiplication: from `Q(f/2) + O(eps^3)` and `Q(g) + O(eps^3)` builds
/// `Q(f g) + O(eps)` as the sum of `-(f/2)^2`, `-g^2` and `(f/2 + g)^2`,
/// using `4n + 4m + 37` primitives.
pub fn q_mul(p: &QProgram, r: &QProgram) -> Result<QProgram> {
    let sq1 = q_square(p, false)?;
    let sq2 = q_square(r, false)?;
    let sum = q_add(p, r)?;
    let sq3 = q_square(&sum, true)?;
    let out = q_add(&q_add(&sq1, &sq2)?, &sq3)?;
    assert_eq!(out.len(), 4 * p.len() + 4 * r.len() + 37, "multiplication gadget length");
    Ok(out)
}
