//! Constant-width ABPs to formulas by balanced halving of the matrix chain.

use super::{Abp, LayerMatrix};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::ring::{AffineForm, EpsScalar, Rat};

/// Largest width accepted by [`abp_to_formula`].
pub const WIDTH_CAP: usize = 8;

/// Nodes added when two `k x k` formula matrices are multiplied: each of the
/// `k^2` entries is a sum of `k` products, i.e. `2k - 1` gates.
pub fn formula_template_cost(k: usize) -> usize {
    k * k * (2 * k - 1)
}

fn rational(s: &EpsScalar, what: &str) -> Result<Rat> {
    s.as_rational().ok_or_else(|| Error::BadLabel(format!("{what} {s} depends on eps")))
}

fn form_formula(l: &AffineForm) -> Result<Formula> {
    if !l.is_rational() {
        return Err(Error::BadLabel(format!("{l} depends on eps")));
    }
    let mut parts = Vec::new();
    for (v, c) in l.coeffs() {
        let c = c.as_rational().unwrap();
        if c == Rat::from_integer(1.into()) {
            parts.push(Formula::var(*v));
        } else {
            parts.push(Formula::mul(Formula::constant(c), Formula::var(*v)));
        }
    }
    let c0 = l.constant_part().constant_term();
    if parts.is_empty() || c0 != Rat::from_integer(0.into()) {
        parts.push(Formula::constant(c0));
    }
    Ok(Formula::sum(parts))
}

type FMatrix = Vec<Vec<Formula>>;

fn layer(m: &LayerMatrix) -> Result<FMatrix> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| form_formula(m.get(i, j))).collect()).collect()
}

fn fmul(a: &FMatrix, b: &FMatrix) -> FMatrix {
    let inner = b.len();
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| Formula::sum((0..inner).map(|k| Formula::mul(row[k].clone(), b[k][j].clone()))))
                .collect()
        })
        .collect()
}

/// Formula matrix of `M_hi ... M_lo` (indices into `matrices`, `hi` exclusive).
fn chain(ms: &[LayerMatrix], lo: usize, hi: usize) -> Result<FMatrix> {
    if hi - lo == 1 {
        return layer(&ms[lo]);
    }
    let mid = lo + (hi - lo) / 2;
    let upper = chain(ms, mid, hi)?;
    let lower = chain(ms, lo, mid)?;
    Ok(fmul(&upper, &lower))
}

/// The chain product as a matrix of formulas, before contraction with the
/// boundary vectors.
#[derive(Clone, Debug)]
pub struct FormulaParts {
    pub entries: Vec<Vec<Formula>>,
    /// Total node count over all entries, counted as trees.
    pub total_nodes: usize,
}

pub fn abp_to_formula_parts(a: &Abp) -> Result<FormulaParts> {
    if a.width > WIDTH_CAP {
        return Err(Error::WidthTooLarge { width: a.width, cap: WIDTH_CAP });
    }
    if a.matrices.is_empty() {
        return Err(Error::Invalid("ABP has no layers".into()));
    }
    let entries = chain(&a.matrices, 0, a.matrices.len())?;
    let total_nodes = entries.iter().flatten().map(Formula::node_count).sum();
    Ok(FormulaParts { entries, total_nodes })
}

/// A formula computing the ABP's value. The chain is split in halves
/// recursively, so the size obeys `S(m) <= 2k S(m/2) + k^2 (2k - 1)` for
/// the total node count `S` of the entry formulas.
pub fn abp_to_formula(a: &Abp) -> Result<Formula> {
    if a.width > WIDTH_CAP {
        return Err(Error::WidthTooLarge { width: a.width, cap: WIDTH_CAP });
    }
    let src: Vec<Rat> = a.source.iter().map(|s| rational(s, "source entry")).collect::<Result<_>>()?;
    let snk: Vec<Rat> = a.sink.iter().map(|s| rational(s, "sink entry")).collect::<Result<_>>()?;
    if a.matrices.is_empty() {
        let v: Rat = src.iter().zip(&snk).map(|(x, y)| x * y).sum();
        return Ok(Formula::constant(v));
    }
    let m = abp_to_formula_parts(a)?.entries;
    let zero = Rat::from_integer(0.into());
    let one = Rat::from_integer(1.into());
    let scaled = |c: &Rat, f: &Formula| if *c == one { f.clone() } else { Formula::mul(Formula::constant(c.clone()), f.clone()) };
    let mut terms = Vec::new();
    for (i, s) in src.iter().enumerate() {
        if *s == zero {
            continue;
        }
        let row: Vec<Formula> =
            snk.iter().enumerate().filter(|(_, t)| **t != zero).map(|(j, t)| scaled(t, &m[i][j])).collect();
        if !row.is_empty() {
            terms.push(scaled(s, &Formula::sum(row)));
        }
    }
    Ok(Formula::sum(terms))
}
