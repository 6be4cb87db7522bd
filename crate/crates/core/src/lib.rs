//! Exact checks of whether a rational self-map of the plane preserves the
//! logarithmic volume form `dx/x ∧ dy/y`, by two independent routes: the
//! Jacobian identity, and equality of tame symbols in `K_2(Q(x, y))/Const`
//! computed from intersection cycles of divisors on P^2.
//!
//! ```
//! use tamesym::expr::parse_map;
//! use tamesym::geom::Shear;
//! use tamesym::symplectic::{check_map, FormKind};
//!
//! let phi = parse_map("(x*y, y)").unwrap();
//! let c = check_map(&phi, &Shear::from_seed(0)).unwrap();
//! assert_eq!(c.form.kind, FormKind::Preserves);
//! assert!(c.k2 && c.agree());
//! ```

pub mod analysis;
pub mod arith;
pub mod expr;
pub mod geom;
pub mod ktheory;
pub mod symplectic;

pub use arith::{Poly, Rat, RationalFunction};
pub use geom::{ClosedPoint, Curve, Divisor, Shear, ZeroCycle};
pub use ktheory::TameElement;
pub use symplectic::RationalMap;
