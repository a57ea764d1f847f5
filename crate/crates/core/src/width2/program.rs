use std::sync::Arc;

use crate::ring::{AffineForm, MPoly, Matrix};

/// A node of the construction DAG behind a [`QProgram`].
///
/// Gadgets reuse their input programs several times; sharing the nodes keeps
/// memory linear in the formula size even though the flattened form list is
/// exponentially long.
#[derive(Debug)]
pub enum ProgNode {
    /// A single primitive `Q(l)`.
    Form(AffineForm),
    /// Children in application order: the first child is applied first, so its
    /// matrix is the rightmost factor.
    Seq(Vec<Arc<ProgNode>>),
    /// The child with `eps` replaced by `eps^t` in every form.
    Subst(Arc<ProgNode>, u32),
}

impl ProgNode {
    pub fn len(&self) -> usize {
        match self {
            ProgNode::Form(_) => 1,
            ProgNode::Seq(cs) => cs.iter().map(|c| c.len()).sum(),
            ProgNode::Subst(c, _) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub(crate) fn id(node: &Arc<ProgNode>) -> usize {
        Arc::as_ptr(node) as usize
    }

    /// Visits the forms in application order with all substitutions applied.
    pub fn for_each_form<F: FnMut(&AffineForm)>(&self, f: &mut F) {
        self.walk(1, f)
    }

    fn walk<F: FnMut(&AffineForm)>(&self, t: u32, f: &mut F) {
        match self {
            ProgNode::Form(l) => {
                if t == 1 {
                    f(l)
                } else {
                    f(&l.eps_substitute_power(t))
                }
            }
            ProgNode::Seq(cs) => {
                for c in cs {
                    c.walk(t, f);
                }
            }
            ProgNode::Subst(c, s) => c.walk(t * s, f),
        }
    }
}

/// What a program is claimed to compute: `Q(target) + O(eps^order)`, with
/// `order = None` meaning the value is exactly `Q(target)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub target: MPoly,
    pub order: Option<i64>,
}

impl Claim {
    pub fn exact(target: MPoly) -> Claim {
        Claim { target, order: None }
    }

    pub fn order_at_least(&self, k: i64) -> bool {
        self.order.is_none_or(|o| o >= k)
    }
}

/// A product of primitive Q-matrices `Q(l_m) ... Q(l_1)`, listed in
/// application order `l_1, ..., l_m`.
#[derive(Clone, Debug)]
pub struct QProgram {
    root: Arc<ProgNode>,
    tracked_length: usize,
    tracked_error_bound: i64,
    claim: Option<Claim>,
}

impl QProgram {
    pub(crate) fn from_parts(
        root: Arc<ProgNode>,
        tracked_error_bound: i64,
        claim: Option<Claim>,
    ) -> QProgram {
        let tracked_length = root.len();
        QProgram { root, tracked_length, tracked_error_bound, claim }
    }

    /// A flat program with a declared error-degree bound and no claim.
    pub fn from_forms_with_bound(forms: Vec<AffineForm>, bound: i64) -> QProgram {
        let root = Arc::new(ProgNode::Seq(forms.into_iter().map(|l| Arc::new(ProgNode::Form(l))).collect()));
        QProgram::from_parts(root, bound, None)
    }

    /// A flat program; the error-degree bound is measured exactly (0 for an
    /// empty or eps-free product).
    pub fn from_forms(forms: Vec<AffineForm>) -> QProgram {
        let mut q = QProgram::from_forms_with_bound(forms, 0);
        q.tracked_error_bound = super::eval::program_value(&q).error_degree().unwrap_or(0).max(0);
        q
    }

    /// The one-primitive program `[l]`, claimed exactly equal to `Q(l)` when `l` has no eps.
    pub fn primitive(l: AffineForm) -> QProgram {
        let claim = l.is_rational().then(|| Claim::exact(l.to_mpoly()));
        let bound = l.to_mpoly().max_eps_exp().unwrap_or(0).max(0);
        QProgram::from_parts(Arc::new(ProgNode::Form(l)), bound, claim)
    }

    pub fn root(&self) -> &Arc<ProgNode> {
        &self.root
    }

    pub fn len(&self) -> usize {
        self.tracked_length
    }

    pub fn is_empty(&self) -> bool {
        self.tracked_length == 0
    }

    pub fn tracked_length(&self) -> usize {
        self.tracked_length
    }

    pub fn tracked_error_bound(&self) -> i64 {
        self.tracked_error_bound
    }

    pub fn claim(&self) -> Option<&Claim> {
        self.claim.as_ref()
    }

    pub fn with_claim(mut self, claim: Claim) -> QProgram {
        self.claim = Some(claim);
        self
    }

    /// Flattens to the list of forms in application order.
    pub fn forms(&self) -> Vec<AffineForm> {
        let mut out = Vec::with_capacity(self.tracked_length);
        self.root.for_each_form(&mut |l| out.push(l.clone()));
        out
    }

    /// Replaces eps by eps^t in every form.
    pub fn eps_substitute_power(&self, t: u32) -> QProgram {
        assert!(t >= 1);
        if t == 1 {
            return self.clone();
        }
        let claim = self.claim.as_ref().map(|c| Claim {
            target: c.target.eps_substitute_power(t),
            order: c.order.map(|o| o * t as i64),
        });
        QProgram::from_parts(
            Arc::new(ProgNode::Subst(self.root.clone(), t)),
            self.tracked_error_bound * t as i64,
            claim,
        )
    }

    /// Number of distinct DAG nodes.
    pub fn dag_size(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.root.clone()];
        while let Some(n) = stack.pop() {
            if !seen.insert(ProgNode::id(&n)) {
                continue;
            }
            match &*n {
                ProgNode::Form(_) => {}
                ProgNode::Seq(cs) => stack.extend(cs.iter().cloned()),
                ProgNode::Subst(c, _) => stack.push(c.clone()),
            }
        }
        seen.len()
    }
}

/// `Q(l) = [[l, 1], [1, 0]]`.
pub fn q_matrix(l: &MPoly) -> Matrix {
    Matrix::from_rows(vec![vec![l.clone(), MPoly::one()], vec![MPoly::one(), MPoly::zero()]])
}

/// The 2x2 swap matrix.
pub fn swap_matrix() -> Matrix {
    Matrix::from_ints(&[&[0, 1], &[1, 0]])
}
