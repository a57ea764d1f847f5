//! Hypercube sums `prefactor * sum_{bits in {0,1}^n} sum_terms prod_factors`,
//! the tricks that turn `1 + uv` and `u + v + w` into products of affine
//! forms, the Ryser permanent pipeline, and the width-3 simulation.

mod builder;
mod eval;
mod gf4;
mod json;
mod ryser;
mod vnp1;

pub use builder::{eq_factors, trick_pair, trick_triple, Builder};
pub use eval::{hypercube_eval, hypercube_eval_capped, hypercube_eval_elimination, DEFAULT_BIT_CAP};
pub use gf4::{verify_f4_identity, Gf4};
pub use json::HypercubeJson;
pub use ryser::{permanent, ryser_hypercube_permanent, unary_a_matrix, x_var, RyserStage};
pub use vnp1::{width3_to_vnp1, Vnp1Layout};

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use crate::ring::{MPoly, Rat, Symbols, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypercubeSum {
    /// Free Boolean summation variables.
    pub bits: Vec<Var>,
    /// Bits fixed to a value; not summed over.
    pub pins: BTreeMap<Var, bool>,
    pub prefactor: Rat,
    /// Sum of products of factors.
    pub terms: Vec<Vec<MPoly>>,
    pub symbols: Symbols,
}

impl HypercubeSum {
    /// A single product with no bits.
    pub fn product(factors: Vec<MPoly>) -> HypercubeSum {
        HypercubeSum {
            bits: Vec::new(),
            pins: BTreeMap::new(),
            prefactor: Rat::one(),
            terms: vec![factors],
            symbols: Symbols::new(),
        }
    }

    pub fn factor_count(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    pub fn factors(&self) -> impl Iterator<Item = &MPoly> {
        self.terms.iter().flatten()
    }

    /// Every factor has total degree at most 1.
    pub fn is_affine(&self) -> bool {
        self.factors().all(|f| f.degree().is_none_or(|d| d <= 1))
    }

    /// Variables that are neither bits nor pins.
    pub fn x_vars(&self) -> BTreeSet<Var> {
        let mut vs: BTreeSet<Var> = self.factors().flat_map(|f| f.vars()).collect();
        for b in &self.bits {
            vs.remove(b);
        }
        for b in self.pins.keys() {
            vs.remove(b);
        }
        vs
    }

    /// Product of two single-term sums over disjoint bits.
    pub fn times(&self, other: &HypercubeSum) -> HypercubeSum {
        assert!(self.terms.len() == 1 && other.terms.len() == 1, "only single products combine");
        let mut out = self.clone();
        out.bits.extend(other.bits.iter().copied());
        out.pins.extend(other.pins.iter().map(|(k, v)| (*k, *v)));
        out.prefactor *= &other.prefactor;
        out.terms[0].extend(other.terms[0].iter().cloned());
        out.symbols.extend(&other.symbols);
        out
    }

    pub fn render(&self) -> String {
        let names = |vs: &mut dyn Iterator<Item = Var>| vs.map(|v| self.symbols.name(v)).collect::<Vec<_>>().join(", ");
        let mut out = format!("prefactor {}\nbits [{}]\n", self.prefactor, names(&mut self.bits.iter().copied()));
        if !self.pins.is_empty() {
            let pins: Vec<String> =
                self.pins.iter().map(|(v, b)| format!("{}={}", self.symbols.name(*v), u8::from(*b))).collect();
            out.push_str(&format!("pins [{}]\n", pins.join(", ")));
        }
        for (t, fs) in self.terms.iter().enumerate() {
            out.push_str(&format!("term {}:\n", t + 1));
            for f in fs {
                out.push_str(&format!("  ({})\n", f.render(&self.symbols)));
            }
        }
        out
    }
}

/// Largest number of distinct variables (bits and x jointly) in one factor.
pub fn max_vars_per_factor(h: &HypercubeSum) -> usize {
    h.factors().map(|f| f.vars().len()).max().unwrap_or(0)
}
