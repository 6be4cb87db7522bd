//! Exact arithmetic kernel: rationals, sparse multivariate polynomials,
//! gcd and resultants, squarefree decomposition and factorization over Q.

mod factor;
mod gcd;
mod homog;
mod linalg;
mod modgcd;
mod modp;
mod numfield;
mod poly;
mod rat;
mod ratfun;
mod sqfree;
mod univariate;
mod upoly;

use thiserror::Error;

pub use factor::{factor, is_irreducible, Factorization};
pub use gcd::{content_in, divides, gcd, lcm, primitive_part_in, resultant};
pub use homog::{dehomogenize, homogenize, Chart};
pub use numfield::{KPoly, NumberField};
pub use poly::{Monomial, Poly, Vars, MAX_VARS};
pub use rat::{rat, rat_frac, rat_int, Rat};
pub use ratfun::RationalFunction;
pub use sqfree::{squarefree_decomposition, SquarefreeDecomposition};
pub use univariate::{factor_univariate, is_irreducible_univariate, squarefree_univariate};
pub use upoly::UPoly;

pub(crate) use gcd::resultant_with_chain;
pub(crate) use linalg::Echelon;
pub(crate) use modp::{ModPoly, Zp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0}: zero input")]
    ZeroInput(&'static str),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

/// `∂p/∂var`
pub fn derivative(p: &Poly, var: usize) -> Poly {
    p.derivative(var)
}
