//! Generalized Fibonacci polynomials `F_n = x_n F_{n-1} + F_{n-2}`
//! (`F_0 = 1`, `F_1 = x_1`), their cyclic variants, and closed forms as sums
//! over supporting sets. The variable `x_i` is [`Var`]`(i)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ring::{AffineForm, MPoly, Monomial, Var};
use crate::width2::{program_value, QProgram};

/// Default cap on `n` for supporting-set enumeration.
pub const ENUMERATION_CAP: usize = 24;

fn x(i: usize) -> MPoly {
    MPoly::var(i as u32)
}

/// `F_n(x_1, ..., x_n)` by the recurrence.
pub fn fib_poly(n: usize) -> MPoly {
    let (mut prev, mut cur) = (MPoly::zero(), MPoly::one());
    for i in 1..=n {
        let next = &(&x(i) * &cur) + &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `F_n(l_1, ..., l_n)` by the recurrence on the substituted forms.
pub fn fib_of_forms(forms: &[AffineForm]) -> MPoly {
    let (mut prev, mut cur) = (MPoly::zero(), MPoly::one());
    for l in forms {
        let next = &(&l.to_mpoly() * &cur) + &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `F_n` with `x_i` replaced by `assignment[x_i]`; every `x_1..x_n` must be assigned.
pub fn fib_project(n: usize, assignment: &BTreeMap<Var, AffineForm>) -> Result<MPoly> {
    let forms = (1..=n)
        .map(|i| {
            assignment.get(&(i as u32)).cloned().ok_or_else(|| Error::Invalid(format!("x{i} is not assigned")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(fib_of_forms(&forms))
}

/// `{1..n}` minus a disjoint union of (cyclically) adjacent pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportingSet {
    pub n: usize,
    /// Removed pairs `(i, i+1)`, or `(n, 1)` in the cyclic case; sorted.
    pub removed: Vec<(usize, usize)>,
}

impl SupportingSet {
    /// The remaining indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        let mut gone = vec![false; self.n + 1];
        for &(a, b) in &self.removed {
            gone[a] = true;
            gone[b] = true;
        }
        (1..=self.n).filter(|&i| !gone[i]).collect()
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::from_pows(self.indices().into_iter().map(|i| ((i as u32), 1)))
    }
}

/// All pair sets `{(i, i+1)}` inside `lo..=hi` (disjoint), by pair count
/// then lexicographically.
fn pair_sets(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(start: usize, hi: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        out.push(cur.clone());
        for i in start..hi {
            cur.push((i, i + 1));
            rec(i + 2, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(lo, hi, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { needed: n, cap });
    }
    Ok(())
}

pub fn supporting_sets(n: usize, cap: usize) -> Result<Vec<SupportingSet>> {
    check_cap(n, cap)?;
    Ok(pair_sets(1, n).into_iter().map(|removed| SupportingSet { n, removed }).collect())
}

/// Supporting sets where `{n, 1}` also counts as adjacent (for `n > 1`).
pub fn cyclic_supporting_sets(n: usize, cap: usize) -> Result<Vec<SupportingSet>> {
    check_cap(n, cap)?;
    let mut all: Vec<Vec<(usize, usize)>> = pair_sets(1, n);
    if n > 2 {
        for mut rest in pair_sets(2, n - 1) {
            rest.push((n, 1));
            all.push(rest);
        }
    }
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(all.into_iter().map(|removed| SupportingSet { n, removed }).collect())
}

fn sum_over(sets: &[SupportingSet]) -> MPoly {
    MPoly::from_terms(sets.iter().map(|s| (s.monomial(), crate::ring::EpsScalar::one())))
}

/// `sum_S x_S` over all supporting sets of `{1..n}`.
pub fn fib_closed_form(n: usize) -> Result<MPoly> {
    fib_closed_form_capped(n, ENUMERATION_CAP)
}

pub fn fib_closed_form_capped(n: usize, cap: usize) -> Result<MPoly> {
    Ok(sum_over(&supporting_sets(n, cap)?))
}

/// `F_n` as the (1,1) entry of `Q(x_n) ... Q(x_1)`.
pub fn fib_from_q_product(n: usize) -> MPoly {
    let q = QProgram::from_forms((1..=n).map(|i| AffineForm::var(i as u32)).collect());
    program_value(&q).get(0, 0).clone()
}

/// `C_n = trace(Q(x_n) ... Q(x_1))`.
pub fn cyclic_fib_poly(n: usize) -> MPoly {
    assert!(n >= 1, "cyclic Fibonacci polynomials start at n = 1");
    let q = QProgram::from_forms((1..=n).map(|i| AffineForm::var(i as u32)).collect());
    program_value(&q).trace()
}

/// `C_n` as the sum over cyclic supporting sets.
pub fn cyclic_fib_closed_form(n: usize) -> Result<MPoly> {
    Ok(sum_over(&cyclic_supporting_sets(n, ENUMERATION_CAP)?))
}

/// Renames `x_i -> x_{perm[i-1]}` for `i = 1..n`.
pub fn permute_vars(p: &MPoly, perm: &[usize]) -> MPoly {
    let map = perm.iter().enumerate().map(|(i, &j)| (i as u32 + 1, MPoly::var(j as u32))).collect();
    p.substitute(&map)
}
