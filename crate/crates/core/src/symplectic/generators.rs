use num_traits::Zero;

use crate::arith::{Rat, RationalFunction};

use super::{RationalMap, SymplecticError};

/// Which coordinate an elementary map rescales.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    /// `(x, y p(x))`
    Vertical,
    /// `(x p(y), y)`
    Horizontal,
}

/// Monomial map `(x^m11 y^m12, x^m21 y^m22)`; its Jacobian ratio is `det M`.
pub fn gen_monomial(m: [[i64; 2]; 2]) -> Result<RationalMap, SymplecticError> {
    if m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0 {
        return Err(SymplecticError::Degenerate(format!("singular exponent matrix {m:?}")));
    }
    let (x, y) = (RationalFunction::x(), RationalFunction::y());
    let mono = |a: i64, b: i64| -> Result<RationalFunction, SymplecticError> {
        Ok(x.pow(a)?.mul(&y.pow(b)?))
    };
    RationalMap::new(mono(m[0][0], m[0][1])?, mono(m[1][0], m[1][1])?)
}

/// `(a x, b y)`
pub fn gen_torus(a: &Rat, b: &Rat) -> Result<RationalMap, SymplecticError> {
    if a.is_zero() || b.is_zero() {
        return Err(SymplecticError::Degenerate("torus scaling by zero".into()));
    }
    RationalMap::new(RationalFunction::x().scale(a), RationalFunction::y().scale(b))
}

/// `(x, y p(x))` or `(x p(y), y)`; `p` may only involve the fixed coordinate.
pub fn gen_elementary(p: &RationalFunction, axis: Axis) -> Result<RationalMap, SymplecticError> {
    if p.is_zero() {
        return Err(SymplecticError::Degenerate("elementary map with p = 0".into()));
    }
    let moving = match axis {
        Axis::Vertical => 1,
        Axis::Horizontal => 0,
    };
    if p.numerator().uses_var(moving) || p.denominator().uses_var(moving) {
        return Err(SymplecticError::Degenerate(format!(
            "{p} involves the coordinate being rescaled"
        )));
    }
    let (x, y) = (RationalFunction::x(), RationalFunction::y());
    match axis {
        Axis::Vertical => RationalMap::new(x, y.mul(p)),
        Axis::Horizontal => RationalMap::new(x.mul(p), y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::symplectic::log_jacobian_ratio;

    #[test]
    fn monomial_ratio_is_determinant() {
        for m in [[[1, 1], [0, 1]], [[2, 0], [0, 1]], [[0, 1], [-1, 0]], [[3, -2], [1, 2]]] {
            let phi = gen_monomial(m).unwrap();
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            assert_eq!(log_jacobian_ratio(&phi).unwrap().constant_value(), Some(rat(det)));
        }
        assert_eq!(gen_monomial([[1, 1], [0, 1]]).unwrap().to_string(), "(x*y, y)");
        assert!(gen_monomial([[1, 2], [2, 4]]).is_err());
    }

    #[test]
    fn elementary_and_torus_preserve() {
        let p = RationalFunction::x().add(&RationalFunction::one());
        let phi = gen_elementary(&p, Axis::Vertical).unwrap();
        assert_eq!(phi.to_string(), "(x, x*y + y)");
        assert!(log_jacobian_ratio(&phi).unwrap().is_one());
        assert!(gen_elementary(&p, Axis::Horizontal).is_err());
        let t = gen_torus(&rat(3), &rat(-2)).unwrap();
        assert!(log_jacobian_ratio(&t).unwrap().is_one());
        assert!(gen_torus(&rat(0), &rat(1)).is_err());
    }
}
