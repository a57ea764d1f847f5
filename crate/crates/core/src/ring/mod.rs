//! Exact arithmetic: rationals, Laurent polynomials in eps, sparse polynomials
//! and affine forms.

mod affine;
mod eps;
mod matrix;
mod monomial;
mod mpoly;
mod mulkernel;
mod symbols;
pub mod text;

pub use affine::{var_plus, AffineForm, LabelClass};
pub use eps::EpsScalar;
pub use matrix::Matrix;
pub use monomial::{Monomial, Var};
pub use mpoly::MPoly;
pub use symbols::Symbols;
pub use text::parse_rat;

use num_bigint::BigInt;
use num_traits::{One, Pow};

/// Exact rational numbers, always in lowest terms with a positive denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `x^e` for any integer `e`; `x` must be nonzero when `e < 0`.
pub fn rat_pow(x: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let p: Rat = Pow::pow(x, e.unsigned_abs());
    if e < 0 {
        p.recip()
    } else {
        p
    }
}
