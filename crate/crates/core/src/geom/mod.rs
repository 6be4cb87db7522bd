//! Curves, divisors, closed points and zero-cycles on the projective plane
//! over Q, with exact intersection cycles.

mod canon;
mod curve;
mod divisor;
mod intersect;
mod point;
mod shear;

use thiserror::Error;

use crate::arith::ArithError;

pub use curve::Curve;
pub use divisor::{pos_neg_parts, principal_divisor, valuation, Divisor};
pub use intersect::{
    base_locus, intersection_cycle, intersection_cycle_with_retries, sqcap, Intersection,
    Intersector, MAX_SHEAR_ATTEMPTS,
};
pub(crate) use intersect::raw_intersection;
pub use point::{cycle_restrict_affine, ClosedPoint, ZeroCycle};
pub use shear::Shear;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("the zero function has no divisor")]
    ZeroFunction,
    #[error("a curve cannot be intersected with itself: {0}")]
    EqualCurves(String),
    #[error("not a curve: {0}")]
    NotACurve(String),
    #[error("curves share a component; the intersection is not a finite set of points")]
    CommonComponent,
    #[error("no generic shear found after {attempts} attempts (last failure: {reason})")]
    ShearExhausted { attempts: usize, reason: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
}
