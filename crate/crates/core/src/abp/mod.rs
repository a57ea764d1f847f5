//! Layered algebraic branching programs with affine-form edge labels.
//!
//! An ABP is stored as its layer matrices `M_1, ..., M_k` together with a
//! source row and a sink column; its value is `source * M_k ... M_1 * sink`,
//! the sum over all source-sink paths of the products of their labels.

mod constructions;
mod json;
mod to_formula;

pub use constructions::{is_planar_layer, linear_ladder, planarize, width1_normalize};
pub use json::AbpJson;
pub use to_formula::{abp_to_formula, abp_to_formula_parts, formula_template_cost, FormulaParts, WIDTH_CAP};

use crate::error::{Error, Result};
use crate::ring::{AffineForm, EpsScalar, LabelClass, MPoly, Symbols};

/// Dense matrix of edge labels; an absent edge is the zero form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<AffineForm>,
}

impl LayerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> LayerMatrix {
        assert!(rows > 0 && cols > 0, "layer matrices are nonempty");
        LayerMatrix { rows, cols, entries: vec![AffineForm::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<AffineForm>>) -> Result<LayerMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged or empty layer matrix".into()));
        }
        Ok(LayerMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &AffineForm {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, l: AffineForm) {
        self.entries[i * self.cols + j] = l;
    }

    /// `(row, col, label)` for every entry, zero or not.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &AffineForm)> {
        self.entries.iter().enumerate().map(move |(k, l)| (k / self.cols, k % self.cols, l))
    }

    /// `self * v` over [`MPoly`].
    fn apply(&self, v: &[MPoly]) -> Vec<MPoly> {
        (0..self.rows)
            .map(|i| {
                let mut acc = MPoly::zero();
                for (j, x) in v.iter().enumerate() {
                    let l = self.get(i, j);
                    if !l.is_zero() && !x.is_zero() {
                        acc = &acc + &(&l.to_mpoly() * x);
                    }
                }
                acc
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abp {
    /// `M_1, ..., M_k`; `M_1` is next to the sink.
    pub matrices: Vec<LayerMatrix>,
    pub source: Vec<EpsScalar>,
    pub sink: Vec<EpsScalar>,
    pub width: usize,
    pub class: LabelClass,
}

impl Abp {
    /// Checks the dimensions chain and computes the width.
    pub fn new(matrices: Vec<LayerMatrix>, source: Vec<EpsScalar>, sink: Vec<EpsScalar>, class: LabelClass) -> Result<Abp> {
        let mut inner = sink.len();
        for (i, m) in matrices.iter().enumerate() {
            if m.cols != inner {
                return Err(Error::DimensionMismatch(format!(
                    "layer {} has {} columns, expected {inner}",
                    i + 1,
                    m.cols
                )));
            }
            inner = m.rows;
        }
        if source.len() != inner {
            return Err(Error::DimensionMismatch(format!("source has length {}, expected {inner}", source.len())));
        }
        let width = matrices.iter().map(|m| m.rows.max(m.cols)).chain([source.len(), sink.len()]).max().unwrap_or(0);
        Ok(Abp { matrices, source, sink, width, class })
    }

    /// Number of edges with a nonzero label.
    pub fn edge_count(&self) -> usize {
        self.matrices.iter().map(|m| m.entries.iter().filter(|l| !l.is_zero()).count()).sum()
    }

    pub fn layers(&self) -> usize {
        self.matrices.len()
    }

    /// Smallest class containing every label.
    pub fn label_class(&self) -> LabelClass {
        self.matrices.iter().flat_map(|m| m.entries.iter()).map(|l| l.classify_label()).max().unwrap_or(LabelClass::Weakest)
    }

    pub fn render(&self, syms: &Symbols) -> String {
        let vec = |v: &[EpsScalar]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ");
        let mut out = format!("source [{}]\n", vec(&self.source));
        for (k, m) in self.matrices.iter().enumerate().rev() {
            out.push_str(&format!("M{}:\n", k + 1));
            for i in 0..m.rows {
                let row: Vec<String> = (0..m.cols).map(|j| m.get(i, j).render(syms)).collect();
                out.push_str(&format!("  [{}]\n", row.join(", ")));
            }
        }
        out.push_str(&format!("sink [{}]\n", vec(&self.sink)));
        out
    }
}

/// An ABP computing `abp_value(a) * abp_value(b)`: `a`'s sink and `b`'s
/// source are joined by a layer of constant edges.
pub fn abp_concat(a: &Abp, b: &Abp) -> Result<Abp> {
    let mut join = LayerMatrix::zeros(a.sink.len(), b.source.len());
    for (i, s) in a.sink.iter().enumerate() {
        for (j, t) in b.source.iter().enumerate() {
            join.set(i, j, AffineForm::constant(s.mul_truncated(t, None)));
        }
    }
    let mut matrices = b.matrices.clone();
    matrices.push(join);
    matrices.extend(a.matrices.iter().cloned());
    Abp::new(matrices, a.source.clone(), b.sink.clone(), a.class.max(b.class))
}

/// `source * M_k ... M_1 * sink`.
pub fn abp_value(a: &Abp) -> Result<MPoly> {
    let mut v: Vec<MPoly> = a.sink.iter().map(|s| MPoly::constant(s.clone())).collect();
    for (k, m) in a.matrices.iter().enumerate() {
        if m.cols != v.len() {
            return Err(Error::DimensionMismatch(format!("layer {} does not chain", k + 1)));
        }
        v = m.apply(&v);
    }
    if a.source.len() != v.len() {
        return Err(Error::DimensionMismatch("source does not chain".into()));
    }
    let mut acc = MPoly::zero();
    for (s, x) in a.source.iter().zip(&v) {
        acc = &acc + &x.map_coeffs(|c| c.mul_truncated(s, None));
    }
    Ok(acc)
}

/// An edge whose label lies outside the requested class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// 1-based, `M_1` next to the sink.
    pub layer: usize,
    pub row: usize,
    pub col: usize,
    pub label: String,
    pub class: LabelClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub class: LabelClass,
    pub violations: Vec<Violation>,
    /// Declared width differs from the largest layer.
    pub width_mismatch: Option<(usize, usize)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.width_mismatch.is_none()
    }
}

/// Lists every edge whose label is not in `cls`.
pub fn abp_validate(a: &Abp, cls: LabelClass) -> ValidationReport {
    let syms = Symbols::new();
    let mut violations = Vec::new();
    for (k, m) in a.matrices.iter().enumerate() {
        for (i, j, l) in m.entries() {
            let c = l.classify_label();
            if c > cls {
                violations.push(Violation { layer: k + 1, row: i + 1, col: j + 1, label: l.render(&syms), class: c });
            }
        }
    }
    let actual = a.matrices.iter().map(|m| m.rows.max(m.cols)).chain([a.source.len(), a.sink.len()]).max().unwrap_or(0);
    let width_mismatch = (actual != a.width).then_some((a.width, actual));
    ValidationReport { class: cls, violations, width_mismatch }
}
