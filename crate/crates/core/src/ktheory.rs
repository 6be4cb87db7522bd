//! Tame symbols of pairs of principal divisors, represented faithfully in
//! `K_2(Q(x, y))/Const` as a curve-indexed family of degree-zero cycles.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::geom::{principal_divisor, valuation, Curve, Divisor, GeomError, Intersector, Shear, ZeroCycle};
use crate::symplectic::RationalMap;
use crate::arith::RationalFunction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KtError {
    #[error("divisor is not principal (degree {0})")]
    NotPrincipal(i64),
    #[error("the line at infinity is not an index curve")]
    BoundaryComponent,
    #[error("tame elements built with different shears ({0} and {1})")]
    ShearMismatch(u64, u64),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// `Tame{D, E}`: for each curve `C` other than the line at infinity, the
/// cycle `alpha_C` on `C`. Zero components are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameElement {
    components: BTreeMap<Curve, ZeroCycle>,
    seed: u64,
}

impl TameElement {
    pub fn empty(shear: &Shear) -> TameElement {
        TameElement {
            components: BTreeMap::new(),
            seed: shear.seed(),
        }
    }

    pub fn components(&self) -> impl Iterator<Item = (&Curve, &ZeroCycle)> {
        self.components.iter()
    }

    pub fn component(&self, c: &Curve) -> ZeroCycle {
        self.components.get(c).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = &Curve> {
        self.components.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn insert(&mut self, c: Curve, z: ZeroCycle) {
        if z.is_zero() {
            self.components.remove(&c);
        } else {
            self.components.insert(c, z);
        }
    }

    /// `sum_C alpha_C`, a cycle on P^2.
    pub fn total_cycle(&self) -> ZeroCycle {
        let mut z = ZeroCycle::zero();
        for c in self.components.values() {
            z.add_assign(c);
        }
        z
    }
}

pub fn tame_add(a: &TameElement, b: &TameElement) -> TameElement {
    let mut out = a.clone();
    for (c, z) in b.components() {
        let sum = out.component(c).add(z);
        out.insert(c.clone(), sum);
    }
    out
}

pub fn tame_negate(a: &TameElement) -> TameElement {
    tame_scale(a, -1)
}

pub fn tame_scale(a: &TameElement, n: i64) -> TameElement {
    let mut out = TameElement {
        components: BTreeMap::new(),
        seed: a.seed,
    };
    for (c, z) in a.components() {
        out.insert(c.clone(), z.scale(n));
    }
    out
}

/// Structural equality, boundary points included.
pub fn equals(a: &TameElement, b: &TameElement) -> Result<bool, KtError> {
    if a.seed != b.seed {
        return Err(KtError::ShearMismatch(a.seed, b.seed));
    }
    Ok(a.components == b.components)
}

/// `C ⊓ E = sum over C' != C of nu_C'(E) (C ∩ C')`
fn curve_sqcap(ix: &mut Intersector, c: &Curve, e: &Divisor) -> Result<ZeroCycle, GeomError> {
    ix.sqcap(&Divisor::from_curve(c.clone(), 1), e)
}

fn alpha_with(ix: &mut Intersector, d: &Divisor, e: &Divisor, c: &Curve) -> Result<ZeroCycle, KtError> {
    if c.is_l_inf() {
        return Err(KtError::BoundaryComponent);
    }
    let (nd, ne) = (valuation(d, c), valuation(e, c));
    let mut z = ZeroCycle::zero();
    if nd != 0 {
        z.add_assign(&curve_sqcap(ix, c, e)?.scale(nd));
    }
    if ne != 0 {
        z.add_assign(&curve_sqcap(ix, c, d)?.scale(-ne));
    }
    Ok(z)
}

/// `alpha_C = nu_C(D) (C ⊓ E) - nu_C(E) (C ⊓ D)`
pub fn alpha_component(d: &Divisor, e: &Divisor, c: &Curve, shear: &Shear) -> Result<ZeroCycle, KtError> {
    alpha_with(&mut Intersector::new(shear), d, e, c)
}

/// Same as [`tame_symbol`], reusing the intersections cached in `ix`.
pub fn tame_symbol_with(ix: &mut Intersector, d: &Divisor, e: &Divisor) -> Result<TameElement, KtError> {
    for div in [d, e] {
        if div.degree() != 0 {
            return Err(KtError::NotPrincipal(div.degree()));
        }
    }
    let mut out = TameElement::empty(ix.shear());
    let curves: std::collections::BTreeSet<&Curve> = d.support().chain(e.support()).collect();
    for c in curves {
        if c.is_l_inf() {
            continue;
        }
        let z = alpha_with(ix, d, e, c)?;
        assert_eq!(z.degree(), 0, "tame component on {c} has nonzero degree");
        out.insert(c.clone(), z);
    }
    Ok(out)
}

pub fn tame_symbol(d: &Divisor, e: &Divisor, shear: &Shear) -> Result<TameElement, KtError> {
    tame_symbol_with(&mut Intersector::new(shear), d, e)
}

/// `Tame{f, g}` from the functions themselves.
pub fn tame_of_functions(
    ix: &mut Intersector,
    f: &RationalFunction,
    g: &RationalFunction,
) -> Result<TameElement, KtError> {
    let d = principal_divisor(f)?;
    let e = principal_divisor(g)?;
    tame_symbol_with(ix, &d, &e)
}

/// `Tame{x, y}`, computed through the general code path.
pub fn reference_symbol(shear: &Shear) -> Result<TameElement, KtError> {
    tame_of_functions(&mut Intersector::new(shear), &RationalFunction::x(), &RationalFunction::y())
}

/// Whether the pullback of `{x, y}` along `phi`, that is `{f, g}`, equals
/// `{x, y}` modulo constants.
pub fn preserves_k2(phi: &RationalMap, shear: &Shear) -> Result<bool, KtError> {
    let mut ix = Intersector::new(shear);
    preserves_k2_with(&mut ix, phi)
}

pub fn preserves_k2_with(ix: &mut Intersector, phi: &RationalMap) -> Result<bool, KtError> {
    let t = tame_of_functions(ix, phi.f(), phi.g())?;
    let r = tame_of_functions(ix, &RationalFunction::x(), &RationalFunction::y())?;
    equals(&t, &r)
}

impl fmt::Display for TameElement {
    /// One `curve: cycle` line per component, coordinate lines by name.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, z)) in self.components.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", c.label(), z)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::ClosedPoint;

    #[test]
    fn reference_components() {
        let s = Shear::from_seed(0);
        let r = reference_symbol(&s).unwrap();
        assert_eq!(r.support().cloned().collect::<Vec<_>>(), vec![Curve::l_v(), Curve::l_h()]);
        assert_eq!(
            r.component(&Curve::l_v()),
            ZeroCycle::from_terms([(ClosedPoint::origin(), 1), (ClosedPoint::inf_v(), -1)])
        );
        assert_eq!(
            r.component(&Curve::l_h()),
            ZeroCycle::from_terms([(ClosedPoint::origin(), -1), (ClosedPoint::inf_h(), 1)])
        );
    }

    #[test]
    fn diagonal_is_empty_and_infinity_rejected() {
        let s = Shear::from_seed(1);
        let d = principal_divisor(&RationalFunction::x()).unwrap();
        assert!(tame_symbol(&d, &d, &s).unwrap().is_empty());
        assert_eq!(
            alpha_component(&d, &d, &Curve::l_inf(), &s),
            Err(KtError::BoundaryComponent)
        );
        let bad = Divisor::from_curve(Curve::l_h(), 1);
        assert!(matches!(tame_symbol(&bad, &d, &s), Err(KtError::NotPrincipal(1))));
    }

    #[test]
    fn shear_mismatch_is_an_error() {
        let a = reference_symbol(&Shear::from_seed(1)).unwrap();
        let b = reference_symbol(&Shear::from_seed(2)).unwrap();
        assert!(equals(&a, &b).is_err());
        assert_eq!(a.components, b.components);
    }
}
