//! Fan-in-2 arithmetic formulas over variables and rational constants.

mod brent;
mod parse;

pub use brent::brent_reduce;
pub use parse::{parse_formula, parse_formula_with};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{parse_rat, MPoly, Rat, Symbols, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Var(Var),
    Const(Rat),
    Add(Formula, Formula),
    Mul(Formula, Formula),
}

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    node: Node,
    size: usize,
    depth: usize,
}

/// Immutable formula tree; subtrees are reference counted so cloning is cheap.
#[derive(Clone, PartialEq, Eq)]
pub struct Formula(Arc<Inner>);

impl Formula {
    fn wrap(node: Node) -> Formula {
        let (size, depth) = match &node {
            Node::Var(_) | Node::Const(_) => (1, 0),
            Node::Add(a, b) | Node::Mul(a, b) => (a.size() + b.size(), 1 + a.depth().max(b.depth())),
        };
        Formula(Arc::new(Inner { node, size, depth }))
    }

    pub fn var(v: Var) -> Formula {
        Self::wrap(Node::Var(v))
    }

    pub fn constant(c: Rat) -> Formula {
        Self::wrap(Node::Const(c))
    }

    pub fn int(c: i64) -> Formula {
        Self::constant(crate::ring::int(c))
    }

    pub fn add(a: Formula, b: Formula) -> Formula {
        Self::wrap(Node::Add(a, b))
    }

    pub fn mul(a: Formula, b: Formula) -> Formula {
        Self::wrap(Node::Mul(a, b))
    }

    /// Left-associated sum; `0` when empty.
    pub fn sum<I: IntoIterator<Item = Formula>>(it: I) -> Formula {
        it.into_iter().reduce(Formula::add).unwrap_or_else(|| Formula::int(0))
    }

    /// Left-associated product; `1` when empty.
    pub fn product<I: IntoIterator<Item = Formula>>(it: I) -> Formula {
        it.into_iter().reduce(Formula::mul).unwrap_or_else(|| Formula::int(1))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    /// Number of leaves.
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn depth(&self) -> usize {
        self.0.depth
    }

    /// Number of nodes (leaves and gates).
    pub fn node_count(&self) -> usize {
        2 * self.size() - 1
    }

    pub fn as_const(&self) -> Option<&Rat> {
        match self.node() {
            Node::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_const(&self, c: i64) -> bool {
        self.as_const().is_some_and(|x| *x == crate::ring::int(c))
    }

    pub(crate) fn ptr_id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    /// Recomputes size and depth from the structure.
    pub fn recompute_size_depth(&self) -> (usize, usize) {
        match self.node() {
            Node::Var(_) | Node::Const(_) => (1, 0),
            Node::Add(a, b) | Node::Mul(a, b) => {
                let (sa, da) = a.recompute_size_depth();
                let (sb, db) = b.recompute_size_depth();
                (sa + sb, 1 + da.max(db))
            }
        }
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut out = std::collections::BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f.node() {
                Node::Var(v) => {
                    out.insert(*v);
                }
                Node::Const(_) => {}
                Node::Add(a, b) | Node::Mul(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
            }
        }
        out
    }

    /// Full expansion.
    pub fn eval(&self) -> MPoly {
        let mut memo = HashMap::new();
        self.eval_memo(&mut memo)
    }

    fn eval_memo(&self, memo: &mut HashMap<usize, MPoly>) -> MPoly {
        if let Some(p) = memo.get(&self.ptr_id()) {
            return p.clone();
        }
        let p = match self.node() {
            Node::Var(v) => MPoly::var(*v),
            Node::Const(c) => MPoly::rat(c.clone()),
            Node::Add(a, b) => &a.eval_memo(memo) + &b.eval_memo(memo),
            Node::Mul(a, b) => &a.eval_memo(memo) * &b.eval_memo(memo),
        };
        memo.insert(self.ptr_id(), p.clone());
        p
    }

    pub fn render(&self, syms: &Symbols) -> String {
        let mut s = String::new();
        self.render_into(&mut s, syms);
        s
    }

    fn render_into(&self, out: &mut String, syms: &Symbols) {
        match self.node() {
            Node::Var(v) => out.push_str(&syms.name(*v)),
            Node::Const(c) => out.push_str(&c.to_string()),
            Node::Add(a, b) => {
                a.render_into(out, syms);
                out.push_str(" + ");
                b.render_paren(out, syms, matches!(b.node(), Node::Add(..)));
            }
            Node::Mul(a, b) => {
                a.render_paren(out, syms, matches!(a.node(), Node::Add(..)));
                out.push('*');
                b.render_paren(out, syms, matches!(b.node(), Node::Add(..) | Node::Mul(..)));
            }
        }
    }

    fn render_paren(&self, out: &mut String, syms: &Symbols, paren: bool) {
        if paren {
            out.push('(');
            self.render_into(out, syms);
            out.push(')');
        } else {
            self.render_into(out, syms);
        }
    }

    pub fn to_json(&self) -> FormulaJson {
        match self.node() {
            Node::Var(v) => FormulaJson::Var { var: *v },
            Node::Const(c) => FormulaJson::Const { value: c.to_string() },
            Node::Add(a, b) => FormulaJson::Add { args: Box::new([a.to_json(), b.to_json()]) },
            Node::Mul(a, b) => FormulaJson::Mul { args: Box::new([a.to_json(), b.to_json()]) },
        }
    }

    pub fn from_json(j: &FormulaJson) -> Result<Formula> {
        Ok(match j {
            FormulaJson::Var { var } => Formula::var(*var),
            FormulaJson::Const { value } => Formula::constant(parse_rat(value)?),
            FormulaJson::Add { args } => {
                Formula::add(Formula::from_json(&args[0])?, Formula::from_json(&args[1])?)
            }
            FormulaJson::Mul { args } => {
                Formula::mul(Formula::from_json(&args[0])?, Formula::from_json(&args[1])?)
            }
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("formula serialises")
    }

    pub fn from_json_str(s: &str) -> Result<Formula> {
        let j: FormulaJson = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        Formula::from_json(&j)
    }

    pub(crate) fn is_zero_const(&self) -> bool {
        self.as_const().is_some_and(|c| c.is_zero())
    }

    pub(crate) fn is_one_const(&self) -> bool {
        self.as_const().is_some_and(|c| c.is_one())
    }
}

/// JSON tree export of a formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FormulaJson {
    Var { var: Var },
    Const { value: String },
    Add { args: Box<[FormulaJson; 2]> },
    Mul { args: Box<[FormulaJson; 2]> },
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Symbols::new()))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
