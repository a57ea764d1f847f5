//! Formula to Q-program compilation.

use std::collections::HashMap;

use super::cert::verify_claim;
use super::gadgets::{q_add, q_mul};
use super::program::QProgram;
use crate::error::Result;
use crate::formula::{brent_reduce, Formula, Node};
use crate::ring::{rat, AffineForm, Rat};

/// Upper bound `45 * 9^d` on the compiled length.
pub fn length_bound(depth: usize) -> u128 {
    45 * 9u128.pow(depth as u32)
}

/// Upper bound `12 * 25^d` on the compiled error degree.
pub fn error_bound(depth: usize) -> u128 {
    12 * 25u128.pow(depth as u32)
}

/// Counters collected during a compilation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompileStats {
    pub additions: usize,
    pub multiplications: usize,
    pub substitutions: usize,
    /// Claims re-verified at gadget boundaries (checked mode only).
    pub claims_verified: usize,
}

/// Compiles formulas to programs in `Q(alpha * f) + O(eps)`.
#[derive(Default)]
pub struct Compiler {
    /// Re-verify every intermediate claim.
    pub checked: bool,
    pub stats: CompileStats,
    memo: HashMap<(usize, Rat), QProgram>,
}

impl Compiler {
    pub fn new(checked: bool) -> Compiler {
        Compiler { checked, ..Default::default() }
    }

    fn checkpoint(&mut self, q: QProgram) -> Result<QProgram> {
        if self.checked {
            verify_claim(&q)?;
            self.stats.claims_verified += 1;
        }
        Ok(q)
    }

    /// Builds a program in `Q(alpha * f) + O(eps)`.
    ///
    /// Leaves `h` become `Q(alpha/2)` multiplied with `Q(h)`; sums compile
    /// both sides with the same `alpha`; products compile the left factor with
    /// `alpha/2`, the right with `1`, lift both to order 3 by `eps -> eps^3`
    /// and multiply.
    pub fn compile(&mut self, f: &Formula, alpha: &Rat) -> Result<QProgram> {
        let key = (f.ptr_id(), alpha.clone());
        if let Some(q) = self.memo.get(&key) {
            return Ok(q.clone());
        }
        let q = match f.node() {
            Node::Var(_) | Node::Const(_) => {
                let leaf = match f.node() {
                    Node::Var(v) => AffineForm::var(*v),
                    Node::Const(c) => AffineForm::rat(c.clone()),
                    _ => unreachable!(),
                };
                let half = QProgram::primitive(AffineForm::rat(alpha * rat(1, 2)));
                self.stats.multiplications += 1;
                q_mul(&half, &QProgram::primitive(leaf))?
            }
            Node::Add(a, b) => {
                let qa = self.compile(a, alpha)?;
                let qb = self.compile(b, alpha)?;
                self.stats.additions += 1;
                q_add(&qa, &qb)?
            }
            Node::Mul(a, b) => {
                let qa = self.compile(a, &(alpha * rat(1, 2)))?.eps_substitute_power(3);
                let qb = self.compile(b, &Rat::from_integer(1.into()))?.eps_substitute_power(3);
                self.stats.substitutions += 2;
                self.stats.multiplications += 1;
                q_mul(&qa, &qb)?
            }
        };
        let q = self.checkpoint(q)?;
        self.memo.insert(key, q.clone());
        Ok(q)
    }
}

/// Compiles `f` to a program in `Q(alpha * f) + O(eps)` without intermediate checks.
pub fn compile_width2(f: &Formula, alpha: &Rat) -> QProgram {
    Compiler::new(false).compile(f, alpha).expect("compilation of a formula cannot fail")
}

/// Rebalances `f` to logarithmic depth, then compiles with `alpha = 1`.
pub fn compile_width2_family(f: &Formula) -> (Formula, QProgram) {
    let g = brent_reduce(f);
    let q = compile_width2(&g, &Rat::from_integer(1.into()));
    (g, q)
}
