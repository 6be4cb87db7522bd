use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{Chart, Echelon, NumberField, Poly, Rat, UPoly, Vars};

/// A Galois orbit of points of P^2 over Q, in triangular form on the first
/// standard chart that contains it (priority Z, then X, then Y). `p(u)` is
/// the monic minimal polynomial of the first chart coordinate and `q(u, v)`
/// the monic minimal polynomial of the second over `Q[u]/(p)`, with each
/// coefficient reduced modulo `p`. The representation is canonical, so
/// equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedPoint {
    chart: Chart,
    p: UPoly,
    q: Vec<UPoly>,
}

fn linear(root: &Rat) -> UPoly {
    UPoly::new(vec![-root.clone(), Rat::one()])
}

impl ClosedPoint {
    /// The rational point `[x : y : z]`; not all coordinates zero.
    pub fn rational(coords: [Rat; 3]) -> ClosedPoint {
        let [x, y, z] = coords;
        let (chart, a, b) = if !z.is_zero() {
            (Chart::Z, &x / &z, &y / &z)
        } else if !x.is_zero() {
            (Chart::X, &y / &x, Rat::zero())
        } else {
            assert!(!y.is_zero(), "[0:0:0] is not a point");
            (Chart::Y, Rat::zero(), Rat::zero())
        };
        ClosedPoint {
            chart,
            p: linear(&a),
            q: vec![-b, Rat::one()].into_iter().map(UPoly::constant).collect(),
        }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> ClosedPoint {
        ClosedPoint::rational([Rat::from_integer(x.into()), Rat::from_integer(y.into()), Rat::from_integer(z.into())])
    }

    /// `[0:0:1]`
    pub fn origin() -> ClosedPoint {
        ClosedPoint::from_ints(0, 0, 1)
    }

    /// `[1:0:0]`, where horizontal lines meet the line at infinity.
    pub fn inf_h() -> ClosedPoint {
        ClosedPoint::from_ints(1, 0, 0)
    }

    /// `[0:1:0]`, where vertical lines meet the line at infinity.
    pub fn inf_v() -> ClosedPoint {
        ClosedPoint::from_ints(0, 1, 0)
    }

    /// Canonical orbit of the point with homogeneous coordinates `coords` in
    /// the field `k`, which must be generated by the point's coordinates.
    pub(crate) fn from_field_coords(k: &NumberField, coords: &[UPoly; 3]) -> ClosedPoint {
        let [x, y, z] = coords;
        let (chart, xi, eta) = if !k.is_zero(z) {
            let zi = k.inv(z).expect("nonzero");
            (Chart::Z, k.mul(x, &zi), k.mul(y, &zi))
        } else if !k.is_zero(x) {
            let xinv = k.inv(x).expect("nonzero");
            (Chart::X, k.mul(y, &xinv), UPoly::zero())
        } else {
            (Chart::Y, UPoly::zero(), UPoly::zero())
        };
        let p = k.minimal_polynomial(&xi);
        let dp = p.deg();
        let mut ech = Echelon::new(k.degree());
        let mut eta_pow = UPoly::one();
        let mut j = 0;
        let q = 'search: loop {
            let mut term = eta_pow.clone();
            for i in 0..dp {
                if let Some(rel) = ech.insert(k.coordinates(&term)) {
                    assert_eq!(i, 0, "first dependency is a pure power of the second coordinate");
                    let q: Vec<UPoly> = (0..=j)
                        .map(|jj| {
                            UPoly::new(
                                (0..dp)
                                    .map(|ii| rel.get(jj * dp + ii).cloned().unwrap_or_default())
                                    .collect(),
                            )
                        })
                        .collect();
                    break 'search q;
                }
                term = k.mul(&term, &xi);
            }
            eta_pow = k.mul(&eta_pow, &eta);
            j += 1;
        };
        let pt = ClosedPoint { chart, p, q };
        assert_eq!(pt.degree() as usize, k.degree(), "orbit size matches the field degree");
        pt
    }

    /// From triangular data. `p` must be irreducible and `q` irreducible over
    /// `Q[u]/(p)`; both are made monic and `q` is reduced modulo `p`.
    /// Returns `None` for constant `p` or `q`.
    pub fn from_triangular(chart: Chart, p: &UPoly, q: &[UPoly]) -> Option<ClosedPoint> {
        if p.deg() == 0 || q.len() < 2 || q.last()?.rem(p).is_zero() {
            return None;
        }
        let k = NumberField::new(p);
        let q: Vec<UPoly> = q.iter().map(|c| k.reduce(c)).collect();
        let q = k.kpoly_monic(&q);
        Some(ClosedPoint {
            chart,
            p: p.monic(),
            q,
        })
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn p(&self) -> &UPoly {
        &self.p
    }

    /// Coefficients of `q` in increasing powers of `v`.
    pub fn q_coeffs(&self) -> &[UPoly] {
        &self.q
    }

    /// `q` as a polynomial in the chart variables `u, v`.
    pub fn q(&self) -> Poly {
        let vars = Vars::chart();
        let coeffs: Vec<Poly> = self.q.iter().map(|c| c.to_poly(&vars, 0)).collect();
        Poly::from_univariate(&vars, 1, &coeffs)
    }

    /// Number of geometric points in the orbit.
    pub fn degree(&self) -> u32 {
        (self.p.deg() * (self.q.len() - 1)) as u32
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Off the line at infinity.
    pub fn is_affine(&self) -> bool {
        self.chart == Chart::Z
    }

    /// Primitive integer homogeneous coordinates of a rational point.
    pub fn integer_coords(&self) -> Option<[BigInt; 3]> {
        if !self.is_rational() {
            return None;
        }
        let a = -self.p.coeff(0);
        let b = -self.q[0].coeff(0);
        let one = Rat::one();
        let zero = Rat::zero();
        let coords = match self.chart {
            Chart::Z => [a, b, one],
            Chart::X => [one, a, zero],
            Chart::Y => [zero.clone(), one, zero],
        };
        let den = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coords.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Some(std::array::from_fn(|i| &ints[i] / &g))
    }
}

impl fmt::Display for ClosedPoint {
    /// `[a:b:c]` for rational points, triangular data otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.integer_coords() {
            Some([a, b, c]) => write!(f, "[{a}:{b}:{c}]"),
            None => {
                let p = self.p.to_poly(&Vars::chart(), 0);
                write!(f, "{{chart: {}, p: {}, q: {}}}", self.chart, p, self.q())
            }
        }
    }
}

/// A finite integer combination of closed points; zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZeroCycle {
    points: BTreeMap<ClosedPoint, i64>,
}

impl ZeroCycle {
    pub fn zero() -> ZeroCycle {
        ZeroCycle::default()
    }

    pub fn from_point(p: ClosedPoint, n: i64) -> ZeroCycle {
        let mut z = ZeroCycle::zero();
        z.add_term(p, n);
        z
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ClosedPoint, i64)>) -> ZeroCycle {
        let mut z = ZeroCycle::zero();
        for (p, n) in terms {
            z.add_term(p, n);
        }
        z
    }

    pub fn add_term(&mut self, p: ClosedPoint, n: i64) {
        if n == 0 {
            return;
        }
        match self.points.entry(p) {
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

    pub fn points(&self) -> impl Iterator<Item = (&ClosedPoint, i64)> {
        self.points.iter().map(|(p, n)| (p, *n))
    }

    pub fn support(&self) -> impl Iterator<Item = &ClosedPoint> {
        self.points.keys()
    }

    pub fn multiplicity(&self, p: &ClosedPoint) -> i64 {
        self.points.get(p).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// `sum mult * deg(point)`
    pub fn degree(&self) -> i64 {
        self.points.iter().map(|(p, n)| n * p.degree() as i64).sum()
    }

    pub fn add(&self, o: &ZeroCycle) -> ZeroCycle {
        let mut z = self.clone();
        z.add_assign(o);
        z
    }

    pub fn add_assign(&mut self, o: &ZeroCycle) {
        for (p, n) in o.points() {
            self.add_term(p.clone(), n);
        }
    }

    pub fn neg(&self) -> ZeroCycle {
        self.scale(-1)
    }

    pub fn sub(&self, o: &ZeroCycle) -> ZeroCycle {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i64) -> ZeroCycle {
        if k == 0 {
            return ZeroCycle::zero();
        }
        ZeroCycle {
            points: self.points.iter().map(|(p, n)| (p.clone(), n * k)).collect(),
        }
    }
}

/// Drop the points on the line at infinity.
pub fn cycle_restrict_affine(z: &ZeroCycle) -> ZeroCycle {
    ZeroCycle::from_terms(
        z.points()
            .filter(|(p, _)| p.is_affine())
            .map(|(p, n)| (p.clone(), n)),
    )
}

impl fmt::Display for ZeroCycle {
    /// `[0:0:1] - [1:0:0] + 2*{...}`, or `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (p, n)) in self.points().enumerate() {
            let sign = if n < 0 { "-" } else { "+" };
            match (i, n.abs()) {
                (0, 1) if n < 0 => write!(f, "-{p}")?,
                (0, 1) => write!(f, "{p}")?,
                (0, k) => write!(f, "{}{k}*{p}", if n < 0 { "-" } else { "" })?,
                (_, 1) => write!(f, " {sign} {p}")?,
                (_, k) => write!(f, " {sign} {k}*{p}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn named_points_and_charts() {
        assert_eq!(ClosedPoint::origin().to_string(), "[0:0:1]");
        assert_eq!(ClosedPoint::inf_h().chart(), Chart::X);
        assert_eq!(ClosedPoint::inf_v().chart(), Chart::Y);
        assert_eq!(ClosedPoint::from_ints(2, 4, 2), ClosedPoint::from_ints(1, 2, 1));
        assert_eq!(ClosedPoint::from_ints(-3, 6, 0).to_string(), "[1:-2:0]");
    }

    #[test]
    fn orbit_of_conjugate_pair() {
        // points (t, t + 1) with t^2 = 2, in chart Z
        let k = NumberField::new(&UPoly::from_ints(&[-2, 0, 1]));
        let t = k.generator();
        let coords = [t.clone(), t.add(&UPoly::one()), UPoly::one()];
        let pt = ClosedPoint::from_field_coords(&k, &coords);
        assert_eq!(pt.degree(), 2);
        assert_eq!(pt.p(), &UPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(pt.q_coeffs().len(), 2);
        // the conjugate representative gives the same orbit
        let s = t.neg();
        let conj = [s.clone(), s.add(&UPoly::one()), UPoly::one()];
        assert_eq!(ClosedPoint::from_field_coords(&k, &conj), pt);
        // scaling homogeneous coordinates changes nothing
        let two = UPoly::constant(rat(2));
        let scaled = coords.clone().map(|c| k.mul(&c, &two));
        assert_eq!(ClosedPoint::from_field_coords(&k, &scaled), pt);
    }

    #[test]
    fn second_coordinate_of_higher_degree() {
        // x = 0, y = cube root of 2: p = u, q = v^3 - 2
        let k = NumberField::new(&UPoly::from_ints(&[-2, 0, 0, 1]));
        let t = k.generator();
        let pt = ClosedPoint::from_field_coords(&k, &[UPoly::zero(), t, UPoly::one()]);
        assert_eq!(pt.p(), &UPoly::x());
        assert_eq!(pt.q().to_string(), "v^3 - 2");
        assert_eq!(pt.degree(), 3);
    }

    #[test]
    fn cycle_arithmetic() {
        let z = ZeroCycle::from_terms([(ClosedPoint::origin(), 1), (ClosedPoint::inf_h(), -1)]);
        assert_eq!(z.degree(), 0);
        assert!(z.add(&z.neg()).is_zero());
        assert_eq!(cycle_restrict_affine(&z), ZeroCycle::from_point(ClosedPoint::origin(), 1));
        assert_eq!(z.to_string(), "[0:0:1] - [1:0:0]");
        assert_eq!(z.scale(0), ZeroCycle::zero());
    }
}
