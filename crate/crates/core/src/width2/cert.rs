//! Membership certificates `value in Q(f) + O(eps^k)` and determinant checks.

use super::eval::{error_degree_bound, error_degree_from_top, eval_window, low_window, program_value_within};
use super::program::{q_matrix, QProgram};
use crate::error::{Error, Result};
use crate::ring::{MPoly, Matrix};

/// Above this many terms in an intermediate matrix, checks switch from full
/// expansion to windowed evaluation.
pub const EXACT_BUDGET: usize = 20_000;

/// Term budget for windows taken at `eps = infinity`.
pub const TOP_BUDGET: usize = 20_000;

/// How a check was carried out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMethod {
    /// Full symbolic expansion of the product.
    Expanded,
    /// Exact evaluation of every eps-exponent that matters for the claim,
    /// with higher terms dropped.
    Windowed,
}

/// Evidence that `value = Q(target) + eps^order * residual`.
#[derive(Clone, Debug)]
pub struct QMembershipCert {
    pub target: MPoly,
    pub order: i64,
    /// Available when the product was fully expanded.
    pub residual: Option<Matrix>,
    pub method: CheckMethod,
}

fn first_offending(d: &MPoly, k: i64) -> Option<String> {
    let low = d.truncate_below(k);
    if low.is_zero() {
        return None;
    }
    let e = low.min_eps_exp().unwrap();
    Some(low.eps_coeff(e).eps_shift(e).to_string())
}

/// Checks `program_value(q) - Q(f)` has only eps-exponents `>= k` and the
/// value has no negative eps-exponents.
pub fn check_q_membership(q: &QProgram, f: &MPoly, k: i64) -> Result<QMembershipCert> {
    check_q_membership_with(q, f, k, EXACT_BUDGET)
}

pub fn check_q_membership_with(q: &QProgram, f: &MPoly, k: i64, budget: usize) -> Result<QMembershipCert> {
    assert!(k >= 1, "order must be positive");
    let qf = q_matrix(f);
    if let Ok(v) = program_value_within(q, budget) {
        let d = &v - &qf;
        for (i, j, p) in d.entries() {
            if let Some(t) = first_offending(p, k) {
                return Err(Error::NotMember { row: i + 1, col: j + 1, term: t });
            }
        }
        for (i, j, p) in v.entries() {
            if let Some(t) = first_offending(p, 0) {
                return Err(Error::NotMember { row: i + 1, col: j + 1, term: t });
            }
        }
        let residual = d.map(|p| p.eps_shift(-k));
        return Ok(QMembershipCert { target: f.clone(), order: k, residual: Some(residual), method: CheckMethod::Expanded });
    }
    let w = low_window(q, k);
    for i in 0..2 {
        for j in 0..2 {
            let s = w.get(i, j);
            let d = &s.poly - &qf.get(i, j).truncate_below(k);
            if let Some(t) = first_offending(&d, k).or_else(|| first_offending(&s.poly, 0)) {
                return Err(Error::NotMember { row: i + 1, col: j + 1, term: t });
            }
        }
    }
    Ok(QMembershipCert { target: f.clone(), order: k, residual: None, method: CheckMethod::Windowed })
}

/// Verifies the program's own claim.
pub fn verify_claim(q: &QProgram) -> Result<QMembershipCert> {
    let c = q.claim().ok_or_else(|| Error::Invalid("program carries no membership claim".into()))?;
    check_q_membership(q, &c.target, c.order.unwrap_or(1).max(1))
}

/// Error degree of a program value, exact or a certified upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ErrorDegree {
    pub degree: i64,
    /// `false` when `degree` is only an upper bound.
    pub exact: bool,
}

/// Error degree of the program value: exact when the product expands within
/// [`EXACT_BUDGET`] or its top coefficients are found near the max-plus
/// bound, otherwise that bound.
pub fn error_degree_of(q: &QProgram) -> ErrorDegree {
    if let Ok(v) = program_value_within(q, EXACT_BUDGET) {
        return ErrorDegree { degree: v.error_degree().unwrap_or(0), exact: true };
    }
    match error_degree_from_top(q, 4, TOP_BUDGET) {
        Some(d) => ErrorDegree { degree: d, exact: true },
        None => ErrorDegree { degree: error_degree_bound(q), exact: false },
    }
}

/// Outcome of the determinant identity `det(value) = (-1)^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DetCheck {
    /// No coefficient that was computed contradicts the identity.
    pub holds: bool,
    pub method: CheckMethod,
    /// Windowed checks: whether the window at `eps = infinity` fit in [`TOP_BUDGET`].
    pub top_checked: bool,
}

impl DetCheck {
    /// The whole determinant was compared symbolically.
    pub fn is_symbolic(&self) -> bool {
        self.holds && self.method == CheckMethod::Expanded
    }
}

/// Checks `det(program_value(q)) = (-1)^m`.
///
/// Small programs are expanded. Otherwise the determinant of the low-order
/// window and, when it fits in [`TOP_BUDGET`], of the window at
/// `eps = infinity` must agree with `(-1)^m` on every known coefficient;
/// `ends` sets how many exponents from each end must be known.
pub fn check_det(q: &QProgram, ends: i64) -> DetCheck {
    let sign = if q.len() % 2 == 0 { MPoly::one() } else { -MPoly::one() };
    if let Ok(v) = program_value_within(q, EXACT_BUDGET) {
        return DetCheck { holds: v.det() == sign, method: CheckMethod::Expanded, top_checked: true };
    }
    let bound = error_degree_bound(q);
    let check = |reflect: bool| -> Option<bool> {
        let need = if reflect { -bound + ends } else { ends };
        let budget = if reflect { Some(TOP_BUDGET) } else { None };
        let w = eval_window(q, Some(need), reflect, budget).ok()?;
        let d = w.det();
        let expect = match d.prec {
            Some(p) => sign.truncate_below(p),
            None => sign.clone(),
        };
        Some(d.poly == expect)
    };
    let low = check(false).unwrap_or(false);
    let top = check(true);
    DetCheck { holds: low && top.unwrap_or(true), method: CheckMethod::Windowed, top_checked: top.is_some() }
}
