//! Seeded random inputs and independent oracles shared by the integration
//! tests. Nothing here calls the bivariate factorizer or the intersection
//! code.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tamesym::arith::{rat, Chart, Monomial, Poly, Rat, RationalFunction, UPoly, Vars};
use tamesym::geom::{ClosedPoint, ZeroCycle};

pub fn small_nonzero(rng: &mut ChaCha8Rng, bound: i64) -> Rat {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n != 0 {
            return rat(n);
        }
    }
}

/// Dense random polynomial in `x, y` of total degree exactly `d`.
pub fn random_affine_poly(rng: &mut ChaCha8Rng, d: u32, bound: i64) -> Poly {
    let v = Vars::affine();
    loop {
        let mut terms = Vec::new();
        for i in 0..=d {
            for j in 0..=(d - i) {
                if rng.gen_bool(0.6) {
                    terms.push((Monomial([i, j, 0]), rat(rng.gen_range(-bound..=bound))));
                }
            }
        }
        let p = Poly::from_terms(&v, terms);
        if p.total_degree() == d {
            return p;
        }
    }
}

/// Random form of degree `d` in `X, Y, Z`.
pub fn random_form(rng: &mut ChaCha8Rng, d: u32, bound: i64) -> Poly {
    let v = Vars::projective();
    loop {
        let mut terms = Vec::new();
        for i in 0..=d {
            for j in 0..=(d - i) {
                if rng.gen_bool(0.7) {
                    terms.push((Monomial([i, j, d - i - j]), rat(rng.gen_range(-bound..=bound))));
                }
            }
        }
        let p = Poly::from_terms(&v, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random invertible affine substitution `x -> a x + b y + c`, `y -> d x + e y + f`.
pub fn random_affine_change(rng: &mut ChaCha8Rng) -> [Poly; 2] {
    let v = Vars::affine();
    let (x, y) = (Poly::var(&v, 0), Poly::var(&v, 1));
    loop {
        let m: Vec<i64> = (0..4).map(|_| rng.gen_range(-2..=2)).collect();
        if m[0] * m[3] - m[1] * m[2] == 0 {
            continue;
        }
        let c = |k: i64| Poly::from_int(&v, k);
        let s1 = rng.gen_range(-3..=3);
        let s2 = rng.gen_range(-3..=3);
        let img1 = &(&x.scale(&rat(m[0])) + &y.scale(&rat(m[1]))) + &c(s1);
        let img2 = &(&x.scale(&rat(m[2])) + &y.scale(&rat(m[3]))) + &c(s2);
        return [img1, img2];
    }
}

/// A polynomial irreducible over Q by construction, of total degree at most
/// `max_degree`: either primitive of degree one in a variable, or Eisenstein
/// with respect to the prime `x` of `Q[x][y]`; then moved by a random
/// invertible affine substitution.
pub fn irreducible_by_construction(rng: &mut ChaCha8Rng, max_degree: u32) -> Poly {
    let v = Vars::affine();
    let (x, y) = (Poly::var(&v, 0), Poly::var(&v, 1));
    loop {
        let base = if max_degree == 1 || rng.gen_bool(0.4) {
            // y a(x) + b(x) with gcd(a, b) = 1 has no factor of positive degree
            let da = rng.gen_range(0..max_degree);
            let a = random_univariate(rng, da, 0);
            let db = rng.gen_range(0..=max_degree.min(da + 1));
            let b = random_univariate(rng, db, 0);
            let au = UPoly::from_poly(&a, 0);
            let bu = UPoly::from_poly(&b, 0);
            if b.is_zero() || !au.gcd(&bu).is_constant() {
                continue;
            }
            &(&y * &a) + &b
        } else {
            // y^n + x h(x, y), deg_y h < n, h(0, 0) != 0
            let n = rng.gen_range(1..=max_degree);
            let mut terms = vec![(Monomial([0, 0, 0]), small_nonzero(rng, 3))];
            for i in 0..max_degree.saturating_sub(1) {
                for j in 0..n {
                    if i + j + 1 <= max_degree && (i, j) != (0, 0) && rng.gen_bool(0.5) {
                        terms.push((Monomial([i, j, 0]), rat(rng.gen_range(-3..=3))));
                    }
                }
            }
            let h = Poly::from_terms(&v, terms);
            &y.pow(n) + &(&x * &h)
        };
        if base.total_degree() > max_degree || base.is_constant() {
            continue;
        }
        let moved = base.compose(&random_affine_change(rng));
        if moved.total_degree() <= max_degree && !moved.is_constant() {
            return moved.scale(&small_nonzero(rng, 3));
        }
    }
}

fn random_univariate(rng: &mut ChaCha8Rng, d: u32, var: usize) -> Poly {
    let v = Vars::affine();
    loop {
        let p = Poly::from_terms(
            &v,
            (0..=d).map(|i| (Monomial::var(var, i), rat(rng.gen_range(-3..=3)))),
        );
        if !p.is_zero() && p.degree_in(var) == d {
            return p;
        }
    }
}

/// Nonconstant rational function of numerator and denominator degree at most
/// `max_degree`.
pub fn random_rational_function(rng: &mut ChaCha8Rng, max_degree: u32) -> RationalFunction {
    loop {
        let dn = rng.gen_range(0..=max_degree);
        let num = random_affine_poly(rng, dn, 3);
        let den = if rng.gen_bool(0.5) {
            Poly::one(&Vars::affine())
        } else {
            let dd = rng.gen_range(0..=max_degree);
            random_affine_poly(rng, dd, 3)
        };
        if num.is_zero() || den.is_zero() {
            continue;
        }
        let f = RationalFunction::new(num, den).unwrap();
        if !f.is_constant() {
            return f;
        }
    }
}

/// Product of irreducible-by-construction factors with exponents in
/// `{-2, -1, 1, 2}`, times a constant.
pub fn random_factored_function(rng: &mut ChaCha8Rng, max_factors: usize, max_degree: u32) -> RationalFunction {
    loop {
        let n = rng.gen_range(1..=max_factors);
        let mut f = RationalFunction::constant(small_nonzero(rng, 4));
        for _ in 0..n {
            let p = RationalFunction::from_poly(irreducible_by_construction(rng, max_degree));
            let e = *[-2i64, -1, 1, 1, 2].choose(rng).unwrap();
            f = f.mul(&p.pow(e).unwrap());
        }
        if !f.is_constant() {
            return f;
        }
    }
}

/// Divisor on a coordinate line of the restriction `h|_C`, computed by
/// univariate root finding with the point at infinity of the line added by
/// hand. `line` is 0 for `l_v = {x = 0}` and 1 for `l_h = {y = 0}`.
pub fn divisor_on_coordinate_line(h: &RationalFunction, line: usize) -> ZeroCycle {
    let other = 1 - line;
    let zero = rat(0);
    let restrict = |p: &Poly| UPoly::from_poly(&p.substitute(line, &zero), other);
    let num = restrict(h.numerator());
    let den = restrict(h.denominator());
    assert!(!num.is_zero() && !den.is_zero(), "restriction must be a nonzero function");
    let mut z = ZeroCycle::zero();
    for (poly, sign) in [(&num, 1i64), (&den, -1i64)] {
        if poly.is_constant() {
            continue;
        }
        let (_, factors) = tamesym::arith::factor_univariate(poly);
        for (r, m) in factors {
            // a point (0, t) or (t, 0) with r(t) = 0
            let pt = if line == 0 {
                ClosedPoint::from_triangular(Chart::Z, &UPoly::x(), &r.coeffs().iter().cloned().map(UPoly::constant).collect::<Vec<_>>())
            } else {
                ClosedPoint::from_triangular(Chart::Z, &r, &[UPoly::zero(), UPoly::one()])
            };
            z.add_term(pt.unwrap(), sign * m as i64);
        }
    }
    let at_infinity = den.deg() as i64 - num.deg() as i64;
    let inf = if line == 0 { ClosedPoint::inf_v() } else { ClosedPoint::inf_h() };
    z.add_term(inf, at_infinity);
    z
}

/// Order of the kernel of the torus map `t -> t^M`, by counting solutions of
/// `M v = 0` in `(Z/n)^2` with `n = |det M|`.
pub fn torus_kernel_order(m: [[i64; 2]; 2]) -> u64 {
    let n = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs();
    assert!(n > 0);
    let mut count = 0;
    for i in 0..n {
        for j in 0..n {
            if (m[0][0] * i + m[0][1] * j).rem_euclid(n) == 0 && (m[1][0] * i + m[1][1] * j).rem_euclid(n) == 0 {
                count += 1;
            }
        }
    }
    count
}
