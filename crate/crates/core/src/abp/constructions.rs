//! Width-1 and width-2 constructions: linear-form ladders, eps-normalization
//! of products of forms, and planar rewriting of Q-matrix programs.

use num_traits::Zero;

use super::{Abp, LayerMatrix};
use crate::error::{Error, Result};
use crate::ring::{AffineForm, EpsScalar, LabelClass, Rat};
use crate::width2::QProgram;

/// A width-2 weakest ABP computing `l = a_0 + a_1 x_1 + ... + a_m x_m`.
///
/// Reading from the source, a left rail carries the ratios of consecutive
/// nonzero coefficients, each rung leaves it through a variable into the
/// right rail, and the right rail (entered with `a_0`) collects the sum.
/// Variables with zero coefficient get no rung.
pub fn linear_ladder(l: &AffineForm) -> Result<Abp> {
    if !l.is_rational() {
        return Err(Error::BadLabel(format!("{l} depends on eps")));
    }
    let a0 = l.constant_part().constant_term();
    let rungs: Vec<(crate::ring::Var, Rat)> =
        l.coeffs().iter().map(|(v, c)| (*v, c.as_rational().unwrap())).filter(|(_, c)| !c.is_zero()).collect();
    let first = rungs.first().map_or_else(Rat::zero, |r| r.1.clone());
    let source = vec![EpsScalar::constant(first), EpsScalar::constant(a0)];
    // Row-vector steps [[ratio, x_i], [0, 1]] from the source down.
    let mut steps = Vec::new();
    for (i, (v, c)) in rungs.iter().enumerate() {
        let ratio = match rungs.get(i + 1) {
            Some((_, next)) => AffineForm::rat(next / c),
            None => AffineForm::zero(),
        };
        steps.push(LayerMatrix::from_rows(vec![
            vec![ratio, AffineForm::var(*v)],
            vec![AffineForm::zero(), AffineForm::int(1)],
        ])?);
    }
    steps.reverse();
    Abp::new(steps, source, vec![EpsScalar::zero(), EpsScalar::one()], LabelClass::Weakest)
}

/// Rewrites `l_1, ..., l_m` (over eps, product free of negative eps-powers)
/// as eps-free forms with the same product at `eps = 0`.
///
/// Each `l_i` with `i < m` is divided by `eps^{d_i}`, `d_i` its eps-order,
/// the total shift is put on `l_m`, and then `eps -> 0` everywhere.
pub fn width1_normalize(factors: &[AffineForm]) -> Result<Vec<AffineForm>> {
    let Some((last, init)) = factors.split_last() else {
        return Ok(Vec::new());
    };
    let order = |l: &AffineForm| l.min_eps_exp().unwrap_or(0);
    if factors.iter().any(AffineForm::is_zero) {
        // The product vanishes; every factor is just brought to order 0.
        return factors.iter().map(|l| l.eps_shift(-order(l)).eps_limit()).collect();
    }
    let shift: i64 = init.iter().map(order).sum();
    let mut out: Vec<AffineForm> = init.iter().map(|l| l.eps_shift(-order(l))).collect();
    let last = last.eps_shift(shift);
    if order(&last) < 0 {
        return Err(Error::NegativeLimit(order(&last)));
    }
    out.push(last);
    out.iter().map(AffineForm::eps_limit).collect()
}

/// No two edges of the layer cross: a 2x2 layer never has both
/// off-diagonal entries nonzero. Other shapes are always planar.
pub fn is_planar_layer(m: &LayerMatrix) -> bool {
    !(m.rows() == 2 && m.cols() == 2 && !m.get(0, 1).is_zero() && !m.get(1, 0).is_zero())
}

/// Planar width-2 ABP with value `source * Q(l_m) ... Q(l_1) * sink`.
///
/// Going from the source, consecutive pairs `Q(x) Q(y)` become
/// `(Q(x) S)(S Q(y))` with `S` the swap, i.e. `[[1, x], [0, 1]] [[1, 0], [y, 1]]`.
/// An unpaired last matrix becomes `Q(x) S` with the sink entries swapped.
pub fn planarize(q: &QProgram, source: [EpsScalar; 2], sink: [EpsScalar; 2]) -> Result<Abp> {
    let forms = q.forms();
    let one = || AffineForm::int(1);
    let zero = AffineForm::zero;
    // Source side first.
    let mut from_source = Vec::with_capacity(forms.len());
    let mut it = forms.iter().rev();
    let mut sink = sink;
    while let Some(x) = it.next() {
        from_source.push(LayerMatrix::from_rows(vec![vec![one(), x.clone()], vec![zero(), one()]])?);
        match it.next() {
            Some(y) => from_source.push(LayerMatrix::from_rows(vec![vec![one(), zero()], vec![y.clone(), one()]])?),
            None => sink.swap(0, 1),
        }
    }
    from_source.reverse();
    let class = from_source
        .iter()
        .flat_map(|m| m.entries().map(|(_, _, l)| l.classify_label()).collect::<Vec<_>>())
        .max()
        .unwrap_or(LabelClass::Weakest);
    Abp::new(from_source, source.to_vec(), sink.to_vec(), class)
}
