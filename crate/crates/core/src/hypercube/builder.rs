use std::collections::BTreeMap;

use num_traits::One;

use super::HypercubeSum;
use crate::ring::{rat, MPoly, Rat, Symbols, Var};

fn shifted(u: &MPoly, c: Var) -> MPoly {
    // u + 1 - 2c
    &(u + &MPoly::one()) - &MPoly::var(c).scale_rat(&Rat::from_integer(2.into()))
}

/// `1 + u v = 1/2 sum_c (u + 1 - 2c)(v + 1 - 2c)`.
pub fn trick_pair(u: &MPoly, v: &MPoly, c: Var) -> HypercubeSum {
    let mut h = HypercubeSum::product(vec![shifted(u, c), shifted(v, c)]);
    h.bits.push(c);
    h.prefactor = rat(1, 2);
    h
}

/// `u + v + w + u v w = 1/2 sum_c (u + 1 - 2c)(v + 1 - 2c)(w + 1 - 2c)`.
pub fn trick_triple(u: &MPoly, v: &MPoly, w: &MPoly, c: Var) -> HypercubeSum {
    let mut h = HypercubeSum::product(vec![shifted(u, c), shifted(v, c), shifted(w, c)]);
    h.bits.push(c);
    h.prefactor = rat(1, 2);
    h
}

/// The two factors `(1 - a - b)(1 - a - b)`, which on bits is 1 iff `a = b`.
pub fn eq_factors(a: &MPoly, b: &MPoly) -> [MPoly; 2] {
    let f = &(&MPoly::one() - a) - b;
    [f.clone(), f]
}

/// Accumulates a single-product hypercube sum.
#[derive(Clone, Debug)]
pub struct Builder {
    next: Var,
    bits: Vec<Var>,
    pins: BTreeMap<Var, bool>,
    prefactor: Rat,
    factors: Vec<MPoly>,
    symbols: Symbols,
}

impl Builder {
    /// Fresh bits get ids from `first_free` upwards.
    pub fn new(first_free: Var, symbols: Symbols) -> Builder {
        Builder {
            next: first_free,
            bits: Vec::new(),
            pins: BTreeMap::new(),
            prefactor: Rat::one(),
            factors: Vec::new(),
            symbols,
        }
    }

    fn alloc(&mut self, name: String) -> Var {
        let v = self.next;
        self.next += 1;
        self.symbols.insert(v, name);
        v
    }

    /// A new summation bit.
    pub fn bit(&mut self, name: impl Into<String>) -> Var {
        let v = self.alloc(name.into());
        self.bits.push(v);
        v
    }

    /// A new bit fixed to `value`.
    pub fn pin(&mut self, name: impl Into<String>, value: bool) -> Var {
        let v = self.alloc(name.into());
        self.pins.insert(v, value);
        v
    }

    pub fn scale(&mut self, c: &Rat) {
        self.prefactor *= c;
    }

    pub fn factor(&mut self, f: MPoly) {
        self.factors.push(f);
    }

    fn absorb(&mut self, h: HypercubeSum) {
        self.prefactor *= h.prefactor;
        self.factors.extend(h.terms.into_iter().flatten());
    }

    /// Emits `1 + u v` through [`trick_pair`] with a fresh bit.
    pub fn pair(&mut self, u: &MPoly, v: &MPoly, name: impl Into<String>) {
        let c = self.bit(name);
        self.absorb(trick_pair(u, v, c));
    }

    /// Emits `u + v + w (+ u v w)` through [`trick_triple`] with a fresh bit.
    pub fn triple(&mut self, u: &MPoly, v: &MPoly, w: &MPoly, name: impl Into<String>) {
        let c = self.bit(name);
        self.absorb(trick_triple(u, v, w, c));
    }

    pub fn eq(&mut self, a: &MPoly, b: &MPoly) {
        self.factors.extend(eq_factors(a, b));
    }

    pub fn finish(self) -> HypercubeSum {
        HypercubeSum {
            bits: self.bits,
            pins: self.pins,
            prefactor: self.prefactor,
            terms: vec![self.factors],
            symbols: self.symbols,
        }
    }
}
