//! Canonical forms for the orbits found by a sheared elimination.
//!
//! In a generic frame the coordinates of an orbit have enormous height, and
//! computing minimal polynomials from them dominates the cost of an
//! intersection. Most orbits can instead be read off in the original
//! coordinates, where the data are small. Such a candidate is exact but does
//! not say which sheared orbit it is; a comparison modulo a few large primes
//! settles that. The true orbit always passes, so a candidate that passes
//! against exactly one orbit belongs to it. Anything left over takes the slow
//! exact path.

use num_traits::Zero;

use crate::arith::{
    dehomogenize, factor_univariate, resultant_with_chain, Chart, ModPoly, NumberField, Poly, Rat, UPoly, Vars,
    Zp,
};

use super::intersect::{coefficients_in_v, RawPoint};
use super::point::ClosedPoint;

const PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// Canonical orbit of each raw point, in order.
pub(crate) fn canonical_points(f: &Poly, g: &Poly, raw: &[RawPoint]) -> Vec<ClosedPoint> {
    let mut out: Vec<Option<ClosedPoint>> = vec![None; raw.len()];
    let candidates = candidates(f, g);
    if !candidates.is_empty() {
        let images: Vec<Vec<Option<Image>>> = raw
            .iter()
            .map(|pt| PRIMES.iter().map(|&p| Image::of(pt, Zp::new(p))).collect())
            .collect();
        for cand in candidates {
            let hits: Vec<usize> = (0..raw.len())
                .filter(|&i| out[i].is_none() && raw[i].degree() == cand.degree() as usize)
                .filter(|&i| images[i].iter().flatten().all(|im| im.may_lie_on(&cand) != Some(false)))
                .collect();
            if let [i] = hits[..] {
                out[i] = Some(cand);
            }
        }
    }
    out.into_iter()
        .zip(raw)
        .map(|(c, pt)| c.unwrap_or_else(|| pt.to_closed_point()))
        .collect()
}

/// Orbits of `f = g = 0` that are cheap to find exactly. Not necessarily all.
fn candidates(f: &Poly, g: &Poly) -> Vec<ClosedPoint> {
    let mut out = Vec::new();
    let top = [Rat::zero(), Rat::from_integer(1.into()), Rat::zero()];
    if f.eval(&top).is_zero() && g.eval(&top).is_zero() {
        out.push(ClosedPoint::inf_v());
    }
    // the line Z = 0 in the chart X = 1
    let at_infinity = |h: &Poly| UPoly::from_poly(&dehomogenize(h, Chart::X).substitute(1, &Rat::zero()), 0);
    let (fi, gi) = (at_infinity(f), at_infinity(g));
    let common = match (fi.is_zero(), gi.is_zero()) {
        (false, false) => fi.gcd(&gi),
        (true, false) => gi,
        (false, true) => fi,
        (true, true) => UPoly::zero(),
    };
    if common.deg() > 0 {
        let (_, factors) = factor_univariate(&common);
        let q = [UPoly::zero(), UPoly::one()];
        out.extend(factors.iter().filter_map(|(phi, _)| ClosedPoint::from_triangular(Chart::X, phi, &q)));
    }
    let chart = Vars::chart();
    let fa = dehomogenize(f, Chart::Z).rename(&chart);
    let ga = dehomogenize(g, Chart::Z).rename(&chart);
    if fa.degree_in(1) == 0 || ga.degree_in(1) == 0 {
        affine_with_vertical_part(&fa, &ga, &mut out);
    } else {
        affine_generic(&fa, &ga, &mut out);
    }
    out
}

/// One of the curves is a union of vertical lines: only rational `u` are
/// handled, by factoring the other curve over Q.
fn affine_with_vertical_part(fa: &Poly, ga: &Poly, out: &mut Vec<ClosedPoint>) {
    let (a, other) = if fa.degree_in(1) == 0 { (fa, ga) } else { (ga, fa) };
    let a = UPoly::from_poly(a, 0);
    if a.deg() == 0 {
        return;
    }
    let (_, factors) = factor_univariate(&a);
    for (phi, _) in factors.iter().filter(|(phi, _)| phi.deg() == 1) {
        let c = -phi.coeff(0) / phi.coeff(1);
        let h = UPoly::from_poly(&other.substitute(0, &c), 1);
        if h.deg() == 0 {
            continue;
        }
        let (_, hs) = factor_univariate(&h);
        for (psi, _) in hs {
            let q: Vec<UPoly> = psi.coeffs().iter().cloned().map(UPoly::constant).collect();
            out.extend(ClosedPoint::from_triangular(Chart::Z, phi, &q));
        }
    }
}

fn affine_generic(fa: &Poly, ga: &Poly, out: &mut Vec<ClosedPoint>) {
    let Ok((r, chain)) = resultant_with_chain(fa, ga, 1) else {
        return;
    };
    let r = UPoly::from_poly(&r, 0);
    if r.deg() == 0 {
        return;
    }
    let linear: Vec<Vec<UPoly>> = [fa, ga]
        .into_iter()
        .chain(&chain)
        .filter(|p| p.degree_in(1) == 1)
        .map(coefficients_in_v)
        .collect();
    let (fv, gv) = (coefficients_in_v(fa), coefficients_in_v(ga));
    let (_, factors) = factor_univariate(&r);
    for (phi, _) in factors {
        let k = NumberField::new(&phi);
        // a member of the ideal linear in v fixes the only possible root
        let Some(eta) = linear.iter().find_map(|c| {
            let inv = k.inv(&k.reduce(&c[1]))?;
            Some(k.mul(&c[0].neg(), &inv))
        }) else {
            continue;
        };
        // the resultant also vanishes where both leading terms do
        if !k.is_zero(&horner(&k, &fv, &eta)) || !k.is_zero(&horner(&k, &gv, &eta)) {
            continue;
        }
        out.extend(ClosedPoint::from_triangular(Chart::Z, &phi, &[eta.neg(), UPoly::one()]));
    }
}

fn horner(k: &NumberField, coeffs: &[UPoly], v: &UPoly) -> UPoly {
    coeffs
        .iter()
        .rev()
        .fold(UPoly::zero(), |acc, c| k.reduce(&k.mul(&acc, v).add(c)))
}

/// An orbit's coordinates reduced modulo a prime, in `F_p[t]/(m)`.
struct Image {
    zp: Zp,
    modulus: ModPoly,
    coords: [ModPoly; 3],
}

impl Image {
    fn of(pt: &RawPoint, zp: Zp) -> Option<Image> {
        let (coords, modulus) = pt.coords_mod(&zp)?;
        Some(Image { zp, modulus, coords })
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> ModPoly {
        self.zp.rem(&self.zp.mul(a, b), &self.modulus)
    }

    fn powers(&self, a: &[u64], n: usize) -> Vec<ModPoly> {
        let mut out = vec![vec![1]];
        for _ in 0..n {
            let next = self.mul(out.last().unwrap(), a);
            out.push(next);
        }
        out
    }

    fn reduce(&self, u: &UPoly) -> Option<ModPoly> {
        let mut out = Vec::with_capacity(u.coeffs().len());
        for c in u.coeffs() {
            out.push(self.zp.reduce_rat(c)?);
        }
        Some(self.zp.add(&out, &[]))
    }

    /// `b^n c(a / b)` with `n` at least the degree of `c`.
    fn homogenized(&self, c: &[u64], a: &[Vec<u64>], b: &[Vec<u64>], n: usize) -> ModPoly {
        let mut acc = Vec::new();
        for (i, &ci) in c.iter().enumerate() {
            if ci != 0 {
                let t = self.mul(&a[i], &b[n - i]);
                acc = self.zp.add(&acc, &self.zp.scale(&t, ci));
            }
        }
        acc
    }

    /// Whether the orbit satisfies the equations of `cand` modulo the
    /// prime; `None` when the candidate does not reduce.
    fn may_lie_on(&self, cand: &ClosedPoint) -> Option<bool> {
        let [x, y, z] = &self.coords;
        let dp = cand.p().deg();
        let p = self.reduce(cand.p())?;
        Some(match cand.chart() {
            Chart::Y => x.is_empty() && z.is_empty(),
            Chart::X => z.is_empty() && self.homogenized(&p, &self.powers(y, dp), &self.powers(x, dp), dp).is_empty(),
            Chart::Z => {
                let q = cand.q_coeffs();
                let n = dp - 1 + q.len() - 1;
                let (xs, ys, zs) = (self.powers(x, n), self.powers(y, n), self.powers(z, n));
                if !self.homogenized(&p, &xs, &zs, dp).is_empty() {
                    return Some(false);
                }
                let mut acc = Vec::new();
                for (j, cj) in q.iter().enumerate() {
                    let cj = self.reduce(cj)?;
                    // z^(n - j) c_j(x / z), times y^j
                    let t = self.homogenized(&cj, &xs, &zs, n - j);
                    acc = self.zp.add(&acc, &self.mul(&t, &ys[j]));
                }
                acc.is_empty()
            }
        })
    }
}
