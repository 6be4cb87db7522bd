//! Intersection cycles by elimination after a generic change of coordinates.
//!
//! After the shear, the projection center `[0:1:0]` lies on neither curve,
//! no intersection point lies on `W = 0`, and every line through the center
//! meets the intersection in at most one point. Then the roots of
//! `R(u) = Res_v(f, g)` are in bijection with the intersection points, the
//! multiplicity of each irreducible factor of `R` is the local intersection
//! number, and the point over a root `θ` is `(θ, v0)` where `(v - v0)^m` is
//! the gcd of `f(θ, v)` and `g(θ, v)` over `Q(θ)`. Each condition is checked
//! exactly; a failure moves on to the next derived shear.

use std::cell::OnceCell;
use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;

use crate::arith::{
    dehomogenize, factor_univariate, rat_frac, resultant_with_chain, Chart, KPoly, Monomial, NumberField,
    ModPoly, Poly, RationalFunction, UPoly, Vars, Zp,
};

use super::canon::canonical_points;
use super::{pos_neg_parts, principal_divisor, ClosedPoint, Curve, Divisor, GeomError, Shear, ZeroCycle};

/// Attempts (the given shear plus derived ones) before giving up.
pub const MAX_SHEAR_ATTEMPTS: usize = 12;

/// How the second sheared coordinate of an orbit is known.
#[derive(Clone, Debug)]
enum SecondCoordinate {
    /// `v0 = -b(θ) / a(θ)`, read off a remainder of degree one in `v`.
    Linear { a: UPoly, b: UPoly },
    Exact(UPoly),
}

/// A Galois orbit of intersection points before canonicalization: the
/// sheared coordinates `(θ, v0, 1)` with `θ` a root of the modulus of
/// `field`. Original coordinates are computed on demand, since in a generic
/// frame they are large.
#[derive(Clone, Debug)]
pub(crate) struct RawPoint {
    pub field: NumberField,
    pub multiplicity: u32,
    shear: Shear,
    second: SecondCoordinate,
    coords: OnceCell<[UPoly; 3]>,
}

impl RawPoint {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Original homogeneous coordinates in `field`.
    pub fn coords(&self) -> &[UPoly; 3] {
        self.coords.get_or_init(|| {
            let k = &self.field;
            let v0 = match &self.second {
                SecondCoordinate::Exact(v0) => v0.clone(),
                SecondCoordinate::Linear { a, b } => {
                    let inv = k.inv(&k.reduce(a)).expect("lead coefficient is a unit");
                    k.mul(&b.neg(), &inv)
                }
            };
            let w = [k.generator(), v0, UPoly::one()];
            self.shear
                .map_point(&w, |a, t| t.scale(a), |a, b| a.add(b))
                .map(|c| k.reduce(&c))
        })
    }

    /// Original coordinates modulo a prime, in `F_p[t]/(modulus)`; `None`
    /// when some denominator or the lead coefficient `a` is not invertible.
    pub fn coords_mod(&self, zp: &Zp) -> Option<([ModPoly; 3], ModPoly)> {
        let red = |u: &UPoly| -> Option<ModPoly> {
            let mut out = Vec::with_capacity(u.coeffs().len());
            for c in u.coeffs() {
                out.push(zp.reduce_rat(c)?);
            }
            while out.last() == Some(&0) {
                out.pop();
            }
            Some(out)
        };
        let m = red(self.field.modulus())?;
        let theta = zp.rem(&[0, 1], &m);
        let v0 = match &self.second {
            SecondCoordinate::Exact(v0) => zp.rem(&red(v0)?, &m),
            SecondCoordinate::Linear { a, b } => {
                let a = zp.rem(&red(a)?, &m);
                if a.is_empty() || zp.gcd(&a, &m).len() != 1 {
                    return None;
                }
                let inv = zp.inverse_mod(&a, &m);
                let nb = zp.sub(&[], &red(b)?);
                zp.rem(&zp.mul(&nb, &inv), &m)
            }
        };
        let mut scalars = [[0u64; 3]; 3];
        for (i, row) in self.shear.matrix().iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                scalars[i][j] = zp.reduce_rat(a)?;
            }
        }
        let w = [theta, v0, vec![1]];
        let coords = std::array::from_fn(|i| {
            let mut acc = Vec::new();
            for (j, wj) in w.iter().enumerate() {
                acc = zp.add(&acc, &zp.scale(wj, scalars[i][j]));
            }
            zp.rem(&acc, &m)
        });
        Some((coords, m))
    }

    /// Value of a form in `X, Y, Z` at the representative, in `field`.
    pub fn eval(&self, f: &Poly) -> UPoly {
        let k = &self.field;
        let coords = self.coords();
        let mut powers: Vec<Vec<UPoly>> = Vec::with_capacity(3);
        for c in coords {
            let mut pw = vec![UPoly::one()];
            for _ in 0..f.total_degree() {
                let next = k.mul(pw.last().unwrap(), c);
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut acc = UPoly::zero();
        for (m, c) in f.terms() {
            let mut t = UPoly::constant(c.clone());
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = k.mul(&t, &pw[e]);
                }
            }
            acc = acc.add(&t);
        }
        k.reduce(&acc)
    }

    pub fn to_closed_point(&self) -> ClosedPoint {
        ClosedPoint::from_field_coords(&self.field, self.coords())
    }
}

/// The unique root of `gcd(f(θ, v), g(θ, v))` over `K = Q(θ)`.
fn common_root(k: &NumberField, fv: &[UPoly], gv: &[UPoly]) -> Result<UPoly, Attempt> {
    let fk: KPoly = fv.iter().map(|c| k.reduce(c)).collect();
    let gk: KPoly = gv.iter().map(|c| k.reduce(c)).collect();
    let h = k.kpoly_gcd(&fk, &gk);
    let deg = h.len() - 1;
    assert!(deg >= 1, "a root of the resultant carries a common root");
    let v0 = k.reduce(&h[deg - 1].scale(&rat_frac(-1, deg as i64)));
    if h != k.kpoly_linear_power(&v0, deg) {
        return Err(Attempt::NotGeneric("two intersection points on one projection line"));
    }
    Ok(v0)
}

enum Attempt {
    NotGeneric(&'static str),
    Failed(GeomError),
}

impl From<GeomError> for Attempt {
    fn from(e: GeomError) -> Attempt {
        Attempt::Failed(e)
    }
}

pub(super) fn coefficients_in_v(f: &Poly) -> Vec<UPoly> {
    f.to_univariate(1).iter().map(|c| UPoly::from_poly(c, 0)).collect()
}

fn try_shear(f: &Poly, g: &Poly, s: &Shear) -> Result<Vec<RawPoint>, Attempt> {
    let (d, e) = (f.total_degree(), g.total_degree());
    let fs = s.apply(f);
    let gs = s.apply(g);
    if fs.coeff(&Monomial([0, d, 0])).is_zero() || gs.coeff(&Monomial([0, e, 0])).is_zero() {
        return Err(Attempt::NotGeneric("projection center lies on a curve"));
    }
    let chart = Vars::chart();
    let fa = dehomogenize(&fs, Chart::Z).rename(&chart);
    let ga = dehomogenize(&gs, Chart::Z).rename(&chart);
    let (r, chain) = resultant_with_chain(&fa, &ga, 1).map_err(GeomError::from)?;
    if r.is_zero() {
        return Err(Attempt::Failed(GeomError::CommonComponent));
    }
    let r = UPoly::from_poly(&r, 0);
    if r.deg() != (d * e) as usize {
        return Err(Attempt::NotGeneric("an intersection point lies on the line W = 0"));
    }
    let (fv, gv) = (coefficients_in_v(&fa), coefficients_in_v(&ga));
    // remainders of degree one in v lie in the ideal (f, g), so wherever
    // their lead coefficient survives they pin down the common root
    let linear: Vec<Vec<UPoly>> = [&fa, &ga]
        .into_iter()
        .chain(&chain)
        .filter(|p| p.degree_in(1) == 1)
        .map(coefficients_in_v)
        .collect();
    let (_, factors) = factor_univariate(&r);
    let mut out = Vec::with_capacity(factors.len());
    for (ri, m) in factors {
        let k = NumberField::new(&ri);
        let second = match linear.iter().find(|c| !c[1].rem(k.modulus()).is_zero()) {
            Some(c) => SecondCoordinate::Linear {
                a: c[1].clone(),
                b: c[0].clone(),
            },
            None => SecondCoordinate::Exact(common_root(&k, &fv, &gv)?),
        };
        out.push(RawPoint {
            field: k,
            multiplicity: m,
            shear: s.clone(),
            second,
            coords: OnceCell::new(),
        });
    }
    Ok(out)
}

/// Intersection of two coprime forms as uncanonicalized orbits, together
/// with the number of shears that were rejected before one worked.
pub(crate) fn raw_intersection(
    f: &Poly,
    g: &Poly,
    shear: &Shear,
) -> Result<(Vec<RawPoint>, usize), GeomError> {
    assert!(f.is_homogeneous() && g.is_homogeneous() && f.nvars() == 3 && g.nvars() == 3);
    if f.is_constant() || g.is_constant() {
        return Ok((Vec::new(), 0));
    }
    let mut reason = "";
    for attempt in 0..MAX_SHEAR_ATTEMPTS {
        let s = if attempt == 0 {
            shear.clone()
        } else {
            shear.derive(attempt as u64 - 1)
        };
        match try_shear(f, g, &s) {
            Ok(points) => {
                let total: usize = points.iter().map(|p| p.degree() * p.multiplicity as usize).sum();
                assert_eq!(total, (f.total_degree() * g.total_degree()) as usize, "Bezout");
                return Ok((points, attempt));
            }
            Err(Attempt::NotGeneric(r)) => reason = r,
            Err(Attempt::Failed(e)) => return Err(e),
        }
    }
    Err(GeomError::ShearExhausted {
        attempts: MAX_SHEAR_ATTEMPTS,
        reason: reason.into(),
    })
}

/// An intersection cycle and how many shears were rejected to compute it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub cycle: ZeroCycle,
    pub retries: usize,
}

pub fn intersection_cycle_with_retries(
    c: &Curve,
    d: &Curve,
    shear: &Shear,
) -> Result<Intersection, GeomError> {
    if c == d {
        return Err(GeomError::EqualCurves(c.to_string()));
    }
    let (raw, retries) = raw_intersection(c.poly(), d.poly(), shear)?;
    let points = canonical_points(c.poly(), d.poly(), &raw);
    let cycle = ZeroCycle::from_terms(points.into_iter().zip(&raw).map(|(p, r)| (p, r.multiplicity as i64)));
    assert_eq!(
        cycle.degree(),
        (c.degree() * d.degree()) as i64,
        "Bezout after canonicalization"
    );
    Ok(Intersection { cycle, retries })
}

/// `C ∩ C'` with local intersection multiplicities; its degree is
/// `deg C * deg C'`.
pub fn intersection_cycle(c: &Curve, d: &Curve, shear: &Shear) -> Result<ZeroCycle, GeomError> {
    Ok(intersection_cycle_with_retries(c, d, shear)?.cycle)
}

/// Memoizes intersection cycles of curve pairs under one shear. Symbols and
/// base loci of a single map reuse the same pairs many times.
#[derive(Debug)]
pub struct Intersector {
    shear: Shear,
    cache: HashMap<(Curve, Curve), ZeroCycle>,
    retries: usize,
    computed: usize,
}

impl Intersector {
    pub fn new(shear: &Shear) -> Intersector {
        Intersector {
            shear: shear.clone(),
            cache: HashMap::new(),
            retries: 0,
            computed: 0,
        }
    }

    pub fn shear(&self) -> &Shear {
        &self.shear
    }

    /// Rejected shears summed over all computed (uncached) pairs.
    pub fn retries(&self) -> usize {
        self.retries
    }

    /// Number of pairs actually computed.
    pub fn computed(&self) -> usize {
        self.computed
    }

    pub fn intersect(&mut self, c: &Curve, d: &Curve) -> Result<ZeroCycle, GeomError> {
        let key = if c <= d { (c.clone(), d.clone()) } else { (d.clone(), c.clone()) };
        if let Some(z) = self.cache.get(&key) {
            return Ok(z.clone());
        }
        let r = intersection_cycle_with_retries(&key.0, &key.1, &self.shear)?;
        self.retries += r.retries;
        self.computed += 1;
        self.cache.insert(key, r.cycle.clone());
        Ok(r.cycle)
    }

    /// `sum over C != C' of nu_C(D) nu_C'(E) (C ∩ C')`.
    pub fn sqcap(&mut self, d: &Divisor, e: &Divisor) -> Result<ZeroCycle, GeomError> {
        let mut out = ZeroCycle::zero();
        for (c, n) in d.components() {
            for (c2, m) in e.components() {
                if c != c2 {
                    out.add_assign(&self.intersect(c, c2)?.scale(n * m));
                }
            }
        }
        Ok(out)
    }

    /// `|D+| ∩ |D-|` for a principal divisor `D`.
    pub fn base_locus(&mut self, d: &Divisor) -> Result<BTreeSet<ClosedPoint>, GeomError> {
        let (pos, neg) = pos_neg_parts(d);
        let mut out = BTreeSet::new();
        for c in pos.support() {
            for c2 in neg.support() {
                out.extend(self.intersect(c, c2)?.support().cloned());
            }
        }
        Ok(out)
    }
}

/// `D ⊓ E`: bilinear in both arguments, with pairs of equal components
/// contributing nothing.
pub fn sqcap(d: &Divisor, e: &Divisor, shear: &Shear) -> Result<ZeroCycle, GeomError> {
    Intersector::new(shear).sqcap(d, e)
}

/// Indeterminacy points of `f`: where its zero and pole loci meet.
pub fn base_locus(f: &RationalFunction, shear: &Shear) -> Result<BTreeSet<ClosedPoint>, GeomError> {
    let d = principal_divisor(f)?;
    Intersector::new(shear).base_locus(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{homogenize, Rat};

    fn form(f: &str) -> Curve {
        let v = Vars::projective();
        let (x, y, z) = (Poly::var(&v, 0), Poly::var(&v, 1), Poly::var(&v, 2));
        let p = match f {
            "XY-Z2" => &(&x * &y) - &z.pow(2),
            "ZY-X2" => &(&z * &y) - &x.pow(2),
            "X+Z" => &x + &z,
            "X2+Y2-Z2" => &(&x.pow(2) + &y.pow(2)) - &z.pow(2),
            "X2-2Z2" => &x.pow(2) - &z.pow(2).scale(&Rat::from_integer(2.into())),
            _ => unreachable!(),
        };
        Curve::new(&p).unwrap()
    }

    #[test]
    fn coordinate_lines_meet_once() {
        let s = Shear::from_seed(0);
        let z = intersection_cycle(&Curve::l_h(), &Curve::l_v(), &s).unwrap();
        assert_eq!(z, ZeroCycle::from_point(ClosedPoint::origin(), 1));
        assert!(intersection_cycle(&Curve::l_h(), &Curve::l_h(), &s).is_err());
    }

    #[test]
    fn hyperbola_meets_infinity_at_two_points() {
        let s = Shear::from_seed(1);
        let z = intersection_cycle(&form("XY-Z2"), &Curve::l_inf(), &s).unwrap();
        assert_eq!(
            z,
            ZeroCycle::from_terms([(ClosedPoint::inf_h(), 1), (ClosedPoint::inf_v(), 1)])
        );
    }

    #[test]
    fn tangency_counts_twice() {
        let s = Shear::from_seed(2);
        let z = intersection_cycle(&form("ZY-X2"), &Curve::l_h(), &s).unwrap();
        assert_eq!(z, ZeroCycle::from_point(ClosedPoint::origin(), 2));
    }

    #[test]
    fn irrational_orbit_is_shear_independent() {
        // x^2 + y^2 = 1 meets x^2 = 2 in the orbit of (±√2, ±i)
        let (c, d) = (form("X2+Y2-Z2"), form("X2-2Z2"));
        let a = intersection_cycle(&c, &d, &Shear::from_seed(3)).unwrap();
        let b = intersection_cycle(&d, &c, &Shear::from_seed(4)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degree(), 4);
        assert_eq!(a.len(), 1);
        let pt = a.support().next().unwrap();
        assert_eq!(pt.to_string(), "{chart: Z, p: u^2 - 2, q: v^2 + 1}");
    }

    #[test]
    fn sqcap_drops_equal_components() {
        let s = Shear::from_seed(5);
        let lh = Divisor::from_curve(Curve::l_h(), 1);
        assert!(sqcap(&lh, &lh, &s).unwrap().is_zero());
        let d = Divisor::from_terms([(Curve::l_h(), 1), (Curve::l_v(), 1)]);
        let e = Divisor::from_terms([(Curve::l_h(), 1), (Curve::l_inf(), -1)]);
        let expect = ZeroCycle::from_terms([
            (ClosedPoint::origin(), 1),
            (ClosedPoint::inf_h(), -1),
            (ClosedPoint::inf_v(), -1),
        ]);
        assert_eq!(sqcap(&d, &e, &s).unwrap(), expect);
    }

    #[test]
    fn base_loci() {
        let s = Shear::from_seed(6);
        let v = Vars::affine();
        let x = Poly::var(&v, 0);
        let set = |f: RationalFunction| base_locus(&f, &s).unwrap().into_iter().collect::<Vec<_>>();
        assert_eq!(set(RationalFunction::x()), vec![ClosedPoint::inf_v()]);
        let y_over_x = RationalFunction::new(Poly::var(&v, 1), x.clone()).unwrap();
        assert_eq!(set(y_over_x), vec![ClosedPoint::origin()]);
        let x1 = RationalFunction::from_poly(&x + &Poly::one(&v));
        assert_eq!(set(x1), vec![ClosedPoint::inf_v()]);
        let _ = homogenize(&x, None);
        let _ = form("X+Z");
    }
}
