use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{factor, homogenize, Poly, RationalFunction};

use super::{Curve, GeomError};

/// A finite integer combination of curves; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    components: BTreeMap<Curve, i64>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    pub fn from_curve(c: Curve, n: i64) -> Divisor {
        let mut d = Divisor::zero();
        d.add_term(c, n);
        d
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Curve, i64)>) -> Divisor {
        let mut d = Divisor::zero();
        for (c, n) in terms {
            d.add_term(c, n);
        }
        d
    }

    pub fn add_term(&mut self, c: Curve, n: i64) {
        if n == 0 {
            return;
        }
        match self.components.entry(c) {
            Entry::Vacant(v) => {
                v.insert(n);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += n;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn components(&self) -> impl Iterator<Item = (&Curve, i64)> {
        self.components.iter().map(|(c, n)| (c, *n))
    }

    pub fn support(&self) -> impl Iterator<Item = &Curve> {
        self.components.keys()
    }

    pub fn contains(&self, c: &Curve) -> bool {
        self.components.contains_key(c)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// `sum nu_C * deg C`; zero for every principal divisor.
    pub fn degree(&self) -> i64 {
        self.components
            .iter()
            .map(|(c, n)| n * c.degree() as i64)
            .sum()
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (c, n) in o.components() {
            d.add_term(c.clone(), n);
        }
        d
    }

    pub fn neg(&self) -> Divisor {
        self.scale(-1)
    }

    pub fn sub(&self, o: &Divisor) -> Divisor {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i64) -> Divisor {
        if k == 0 {
            return Divisor::zero();
        }
        Divisor {
            components: self.components.iter().map(|(c, n)| (c.clone(), n * k)).collect(),
        }
    }
}

/// Coefficient of `c` in `d`.
pub fn valuation(d: &Divisor, c: &Curve) -> i64 {
    d.components.get(c).copied().unwrap_or(0)
}

/// `(D+, D-)` with `D = D+ - D-`, both effective with disjoint supports.
pub fn pos_neg_parts(d: &Divisor) -> (Divisor, Divisor) {
    let pos = d.components().filter(|(_, n)| *n > 0).map(|(c, n)| (c.clone(), n));
    let neg = d.components().filter(|(_, n)| *n < 0).map(|(c, n)| (c.clone(), -n));
    (Divisor::from_terms(pos), Divisor::from_terms(neg))
}

fn add_factors(d: &mut Divisor, p: &Poly, sign: i64) -> Result<(), GeomError> {
    if p.is_constant() {
        return Ok(());
    }
    for (f, m) in factor(p)?.factors {
        let c = Curve::from_irreducible(&homogenize(&f, None)?);
        d.add_term(c, sign * m as i64);
    }
    Ok(())
}

/// Divisor of the closure in P^2, including the component along the line at
/// infinity.
pub fn principal_divisor(f: &RationalFunction) -> Result<Divisor, GeomError> {
    if f.is_zero() {
        return Err(GeomError::ZeroFunction);
    }
    let mut d = Divisor::zero();
    add_factors(&mut d, f.numerator(), 1)?;
    add_factors(&mut d, f.denominator(), -1)?;
    let at_infinity =
        f.denominator().total_degree() as i64 - f.numerator().total_degree() as i64;
    d.add_term(Curve::l_inf(), at_infinity);
    debug_assert_eq!(d.degree(), 0);
    Ok(d)
}

impl fmt::Display for Divisor {
    /// `{X: 1, Z: -1}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(c, n)| format!("{c}: {n}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Vars};

    #[test]
    fn divisor_of_x() {
        let d = principal_divisor(&RationalFunction::x()).unwrap();
        assert_eq!(
            d,
            Divisor::from_terms([(Curve::l_v(), 1), (Curve::l_inf(), -1)])
        );
        assert_eq!(d.to_string(), "{X: 1, Z: -1}");
        assert_eq!(valuation(&d, &Curve::l_inf()), -1);
        assert!(principal_divisor(&RationalFunction::constant(rat(5))).unwrap().is_zero());
    }

    #[test]
    fn divisor_of_product() {
        let v = Vars::affine();
        let (x, y) = (Poly::var(&v, 0), Poly::var(&v, 1));
        let f = RationalFunction::from_poly(&y * &(&Poly::one(&v) + &x));
        let d = principal_divisor(&f).unwrap();
        let w = Vars::projective();
        let xz = Curve::new(&(&Poly::var(&w, 0) + &Poly::var(&w, 2))).unwrap();
        assert_eq!(
            d,
            Divisor::from_terms([(Curve::l_h(), 1), (xz, 1), (Curve::l_inf(), -2)])
        );
    }

    #[test]
    fn sign_split() {
        let d = Divisor::from_terms([(Curve::l_v(), 2), (Curve::l_h(), -3), (Curve::l_inf(), 1)]);
        let (p, n) = pos_neg_parts(&d);
        assert_eq!(p, Divisor::from_terms([(Curve::l_v(), 2), (Curve::l_inf(), 1)]));
        assert_eq!(n, Divisor::from_curve(Curve::l_h(), 3));
        assert_eq!(pos_neg_parts(&Divisor::zero()), (Divisor::zero(), Divisor::zero()));
    }
}
