use std::fmt;

use crate::arith::{Rat, RationalFunction};
use crate::geom::{Intersector, Shear};
use crate::ktheory::preserves_k2_with;

use super::SymplecticError;

/// A dominant rational map `(x, y) -> (f, g)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMap {
    f: RationalFunction,
    g: RationalFunction,
}

impl RationalMap {
    pub fn new(f: RationalFunction, g: RationalFunction) -> Result<RationalMap, SymplecticError> {
        let m = RationalMap { f, g };
        if m.jacobian().is_zero() {
            return Err(SymplecticError::NotDominant);
        }
        Ok(m)
    }

    pub fn identity() -> RationalMap {
        RationalMap {
            f: RationalFunction::x(),
            g: RationalFunction::y(),
        }
    }

    pub fn f(&self) -> &RationalFunction {
        &self.f
    }

    pub fn g(&self) -> &RationalFunction {
        &self.g
    }

    /// `f_x g_y - f_y g_x`
    pub fn jacobian(&self) -> RationalFunction {
        let a = self.f.derivative(0).mul(&self.g.derivative(1));
        let b = self.f.derivative(1).mul(&self.g.derivative(0));
        a.sub(&b)
    }

    /// Largest total degree among the numerators and denominators.
    pub fn degree(&self) -> u32 {
        self.f.degree().max(self.g.degree())
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.g)
    }
}

/// `xy Jac(f, g) / (f g)`: the factor by which the pullback of
/// `dx/x ∧ dy/y` differs from the form itself.
pub fn log_jacobian_ratio(phi: &RationalMap) -> Result<RationalFunction, SymplecticError> {
    let j = phi.jacobian();
    if j.is_zero() {
        return Err(SymplecticError::NotDominant);
    }
    let xy = RationalFunction::x().mul(&RationalFunction::y());
    Ok(xy.mul(&j).div(&phi.f.mul(&phi.g))?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormKind {
    Preserves,
    ScalesBy(Rat),
    NonProportional,
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormKind::Preserves => f.write_str("Preserves"),
            FormKind::ScalesBy(l) => write!(f, "ScalesBy {l}"),
            FormKind::NonProportional => f.write_str("NonProportional"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormVerdict {
    pub kind: FormKind,
    pub ratio: RationalFunction,
}

pub fn is_symplectic_form(phi: &RationalMap) -> Result<FormVerdict, SymplecticError> {
    let ratio = log_jacobian_ratio(phi)?;
    let kind = match ratio.constant_value() {
        Some(c) if ratio.is_one() => {
            debug_assert_eq!(c, Rat::from_integer(1.into()));
            FormKind::Preserves
        }
        Some(c) => FormKind::ScalesBy(c),
        None => FormKind::NonProportional,
    };
    Ok(FormVerdict { kind, ratio })
}

/// `psi ∘ phi`: first `phi`, then `psi`.
pub fn compose(phi: &RationalMap, psi: &RationalMap) -> Result<RationalMap, SymplecticError> {
    let images = [phi.f.clone(), phi.g.clone()];
    let f = psi.f.compose(&images)?;
    let g = psi.g.compose(&images)?;
    RationalMap::new(f, g)
}

/// Both verdicts for one map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub form: FormVerdict,
    pub k2: bool,
}

impl CrossCheck {
    /// The two checkers must agree on every dominant map.
    pub fn agree(&self) -> bool {
        (self.form.kind == FormKind::Preserves) == self.k2
    }
}

pub fn check_map(phi: &RationalMap, shear: &Shear) -> Result<CrossCheck, SymplecticError> {
    let form = is_symplectic_form(phi)?;
    let k2 = preserves_k2_with(&mut Intersector::new(shear), phi)?;
    Ok(CrossCheck { form, k2 })
}

/// `(form verdict is Preserves) <=> (the tame symbols agree)`.
pub fn theorem1_crosscheck(phi: &RationalMap, shear: &Shear) -> Result<bool, SymplecticError> {
    Ok(check_map(phi, shear)?.agree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Poly, Vars};

    fn poly_map(f: Poly, g: Poly) -> RationalMap {
        RationalMap::new(RationalFunction::from_poly(f), RationalFunction::from_poly(g)).unwrap()
    }

    #[test]
    fn ratio_examples() {
        let v = Vars::affine();
        let (x, y) = (Poly::var(&v, 0), Poly::var(&v, 1));
        assert!(log_jacobian_ratio(&RationalMap::identity()).unwrap().is_one());
        assert!(log_jacobian_ratio(&poly_map(&x * &y, y.clone())).unwrap().is_one());
        assert_eq!(
            log_jacobian_ratio(&poly_map(x.pow(2), y.clone())).unwrap().constant_value(),
            Some(rat(2))
        );
        let shifted = poly_map(&x + &Poly::one(&v), y.clone());
        assert_eq!(log_jacobian_ratio(&shifted).unwrap().to_string(), "x/(x + 1)");
        assert_eq!(is_symplectic_form(&shifted).unwrap().kind, FormKind::NonProportional);
        assert_eq!(
            RationalMap::new(RationalFunction::x(), RationalFunction::x()),
            Err(SymplecticError::NotDominant)
        );
    }

    #[test]
    fn inversion_is_an_involution() {
        let inv = RationalMap::new(
            RationalFunction::x().recip().unwrap(),
            RationalFunction::y().recip().unwrap(),
        )
        .unwrap();
        assert_eq!(is_symplectic_form(&inv).unwrap().kind, FormKind::Preserves);
        assert_eq!(compose(&inv, &inv).unwrap(), RationalMap::identity());
        assert_eq!(compose(&inv, &RationalMap::identity()).unwrap(), inv);
    }
}
