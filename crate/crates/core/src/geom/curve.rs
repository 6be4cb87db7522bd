use std::cmp::Ordering;
use std::fmt;

use crate::arith::{factor, Poly, Vars};

use super::GeomError;

/// An irreducible plane curve, stored as its primitive integer defining
/// form with positive lead coefficient, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    poly: Poly,
}

impl Curve {
    /// Validates homogeneity and irreducibility.
    pub fn new(poly: &Poly) -> Result<Curve, GeomError> {
        if poly.nvars() != 3 || !poly.is_homogeneous() || poly.total_degree() == 0 {
            return Err(GeomError::NotACurve(format!(
                "{poly} is not a nonconstant form in X, Y, Z"
            )));
        }
        let f = factor(poly)?;
        if !f.is_irreducible() {
            return Err(GeomError::NotACurve(format!("{poly} is reducible")));
        }
        Ok(Curve::from_irreducible(poly))
    }

    /// Trusts the caller that `poly` is an irreducible form.
    pub(crate) fn from_irreducible(poly: &Poly) -> Curve {
        debug_assert!(poly.is_homogeneous());
        Curve {
            poly: poly.rename(&Vars::projective()).normalized(),
        }
    }

    fn line(i: usize) -> Curve {
        Curve {
            poly: Poly::var(&Vars::projective(), i),
        }
    }

    /// `{Y = 0}`, the closure of the `x`-axis.
    pub fn l_h() -> Curve {
        Curve::line(1)
    }

    /// `{X = 0}`, the closure of the `y`-axis.
    pub fn l_v() -> Curve {
        Curve::line(0)
    }

    /// `{Z = 0}`, the line at infinity.
    pub fn l_inf() -> Curve {
        Curve::line(2)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.poly.total_degree()
    }

    pub fn is_l_inf(&self) -> bool {
        *self == Curve::l_inf()
    }

    /// Short name for the coordinate lines, the equation otherwise.
    pub fn label(&self) -> String {
        if *self == Curve::l_h() {
            "l_h".into()
        } else if *self == Curve::l_v() {
            "l_v".into()
        } else if self.is_l_inf() {
            "l_inf".into()
        } else {
            self.poly.to_string()
        }
    }
}

impl Ord for Curve {
    fn cmp(&self, other: &Curve) -> Ordering {
        // leading terms first, larger monomials first, so X < Y < Z
        let a = self.poly.terms().rev();
        let b = other.poly.terms().rev();
        self.degree().cmp(&other.degree()).then_with(|| {
            a.zip(b)
                .map(|((ma, ca), (mb, cb))| mb.cmp(ma).then_with(|| ca.cmp(cb)))
                .find(|o| o.is_ne())
                .unwrap_or_else(|| self.poly.num_terms().cmp(&other.poly.num_terms()))
        })
    }
}

impl PartialOrd for Curve {
    fn partial_cmp(&self, other: &Curve) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}
