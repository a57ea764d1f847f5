//! Seeded random formulas for tests, examples and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::Formula;
use crate::ring::rat;

/// Shape parameters of generated formulas.
#[derive(Clone, Copy, Debug)]
pub struct CorpusSpec {
    pub max_depth: usize,
    pub vars: u32,
    /// Probability that a leaf is a constant rather than a variable.
    pub const_leaf: f64,
    /// Probability that a gate is a multiplication.
    pub mul_gate: f64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec { max_depth: 5, vars: 8, const_leaf: 0.2, mul_gate: 0.5 }
    }
}

/// A formula of exactly depth `d`: one child has depth `d - 1`, the other a
/// uniformly random smaller depth.
pub fn random_formula<R: Rng>(rng: &mut R, d: usize, spec: &CorpusSpec) -> Formula {
    if d == 0 {
        return if rng.gen_bool(spec.const_leaf) {
            let n = rng.gen_range(-3i64..=3);
            let den = if rng.gen_bool(0.25) { 2 } else { 1 };
            Formula::constant(rat(n, den))
        } else {
            Formula::var(rng.gen_range(1..=spec.vars))
        };
    }
    let deep = random_formula(rng, d - 1, spec);
    let other_d = rng.gen_range(0..d);
    let other = random_formula(rng, other_d, spec);
    let (l, r) = if rng.gen_bool(0.5) { (deep, other) } else { (other, deep) };
    if rng.gen_bool(spec.mul_gate) {
        Formula::mul(l, r)
    } else {
        Formula::add(l, r)
    }
}

/// `count` formulas with depths drawn uniformly from `0..=max_depth`.
pub fn corpus(seed: u64, count: usize, spec: &CorpusSpec) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d = rng.gen_range(0..=spec.max_depth);
            random_formula(&mut rng, d, spec)
        })
        .collect()
}
