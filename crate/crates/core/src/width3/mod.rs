//! Exact width-3 programs from formulas (Ben-Or and Cleve).
//!
//! A program is a list `A_1, ..., A_m` of primitive 3x3 matrices; its value
//! is `(1 1 1) diag(-1, 1, 0) A_1 ... A_m (1 1 1)^T`.

mod json;

pub use json::{cycle_to_perm, perm_to_cycle, Primitive3Json, Width3Json};

use num_traits::One;

use crate::abp::{Abp, LayerMatrix};
use crate::error::Result;
use crate::formula::{Formula, Node};
use crate::ring::{AffineForm, EpsScalar, LabelClass, MPoly, Matrix, Rat};

/// A permutation of `{0, 1, 2}` as its image list: `i -> pi[i]`.
pub type Perm3 = [usize; 3];

pub const P23: Perm3 = [0, 2, 1];
pub const P123: Perm3 = [1, 2, 0];
pub const P132: Perm3 = [2, 0, 1];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primitive3 {
    /// The identity with `label` at row 2, column 1.
    M(AffineForm),
    /// 1 at `(pi(i), i)`.
    Perm(Perm3),
    Diag([Rat; 3]),
}

impl Primitive3 {
    pub fn matrix(&self) -> Matrix {
        let mut m = Matrix::identity(3);
        match self {
            Primitive3::M(l) => m.set(1, 0, l.to_mpoly()),
            Primitive3::Perm(p) => {
                m = Matrix::zeros(3, 3);
                for (i, &pi) in p.iter().enumerate() {
                    m.set(pi, i, MPoly::one());
                }
            }
            Primitive3::Diag(d) => {
                for (i, x) in d.iter().enumerate() {
                    m.set(i, i, MPoly::rat(x.clone()));
                }
            }
        }
        m
    }

    fn layer(&self) -> LayerMatrix {
        let m = self.matrix();
        let rows = (0..3)
            .map(|i| (0..3).map(|j| AffineForm::from_mpoly(m.get(i, j)).expect("primitive entries are affine")).collect())
            .collect();
        LayerMatrix::from_rows(rows).expect("3x3")
    }

    /// `acc * self`, as column operations.
    fn apply_right(&self, acc: &mut [Vec<MPoly>]) {
        for row in acc.iter_mut() {
            match self {
                Primitive3::M(l) => {
                    if !row[1].is_zero() && !l.is_zero() {
                        row[0] = &row[0] + &(&row[1] * &l.to_mpoly());
                    }
                }
                Primitive3::Perm(p) => {
                    let old = row.to_vec();
                    for (i, &pi) in p.iter().enumerate() {
                        row[i] = old[pi].clone();
                    }
                }
                Primitive3::Diag(d) => {
                    for (x, c) in row.iter_mut().zip(d) {
                        *x = x.scale_rat(c);
                    }
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Width3Program {
    pub primitives: Vec<Primitive3>,
}

impl Width3Program {
    pub fn len(&self) -> usize {
        self.primitives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primitives.is_empty()
    }

    fn extend(&mut self, other: &Width3Program) {
        self.primitives.extend(other.primitives.iter().cloned());
    }

    fn push(&mut self, p: Primitive3) {
        self.primitives.push(p);
    }
}

/// Compiles `f` so that `A_1 ... A_m = M(f)`:
/// `M(f + g) = M(f) M(g)` and
/// `M(f g) = M_(23) (diag(1, -1, 1) M_(123) M(g) M_(132) M(f))^2 M_(23)`.
pub fn boc_compile(f: &Formula) -> Width3Program {
    match f.node() {
        Node::Var(v) => Width3Program { primitives: vec![Primitive3::M(AffineForm::var(*v))] },
        Node::Const(c) => Width3Program { primitives: vec![Primitive3::M(AffineForm::rat(c.clone()))] },
        Node::Add(a, b) => {
            let mut p = boc_compile(a);
            p.extend(&boc_compile(b));
            p
        }
        Node::Mul(a, b) => {
            let (pf, pg) = (boc_compile(a), boc_compile(b));
            let mut block = Width3Program::default();
            block.push(Primitive3::Diag([Rat::one(), -Rat::one(), Rat::one()]));
            block.push(Primitive3::Perm(P123));
            block.extend(&pg);
            block.push(Primitive3::Perm(P132));
            block.extend(&pf);
            let mut p = Width3Program::default();
            p.push(Primitive3::Perm(P23));
            p.extend(&block);
            p.extend(&block);
            p.push(Primitive3::Perm(P23));
            debug_assert_eq!(p.len(), 2 * (pf.len() + pg.len()) + 8);
            p
        }
    }
}

/// Length of [`boc_compile`] output, by the recurrence alone.
pub fn boc_length(f: &Formula) -> usize {
    match f.node() {
        Node::Var(_) | Node::Const(_) => 1,
        Node::Add(a, b) => boc_length(a) + boc_length(b),
        Node::Mul(a, b) => 2 * (boc_length(a) + boc_length(b)) + 8,
    }
}

/// `A_1 ... A_m` as a 3x3 matrix.
pub fn width3_matrix(p: &Width3Program) -> Matrix {
    let mut acc: Vec<Vec<MPoly>> =
        (0..3).map(|i| (0..3).map(|j| if i == j { MPoly::one() } else { MPoly::zero() }).collect()).collect();
    for a in &p.primitives {
        a.apply_right(&mut acc);
    }
    Matrix::from_rows(acc)
}

/// `(1 1 1) diag(-1, 1, 0) A_1 ... A_m (1 1 1)^T`.
pub fn width3_value(p: &Width3Program) -> MPoly {
    let mut row = vec![vec![MPoly::int(-1), MPoly::one(), MPoly::zero()]];
    for a in &p.primitives {
        a.apply_right(&mut row);
    }
    row.pop().unwrap().iter().fold(MPoly::zero(), |acc, x| &acc + x)
}

/// The `M(h)` matrix: identity with `h` at row 2, column 1.
pub fn m_matrix(h: &MPoly) -> Matrix {
    let mut m = Matrix::identity(3);
    m.set(1, 0, h.clone());
    m
}

/// The program as a width-3 weakest ABP with the same value.
pub fn to_weakest_abp(p: &Width3Program) -> Result<Abp> {
    let matrices = p.primitives.iter().rev().map(Primitive3::layer).collect();
    let source = vec![EpsScalar::from_int(-1), EpsScalar::one(), EpsScalar::zero()];
    let sink = vec![EpsScalar::one(); 3];
    let mut a = Abp::new(matrices, source, sink, LabelClass::Weakest)?;
    a.width = 3;
    Ok(a)
}
