//! Bivariate gcd by evaluation and interpolation modulo primes, lifted by
//! the Chinese remainder theorem and confirmed by trial division. The
//! subresultant sequence is exact but its coefficients swell quickly once
//! the degrees pass ten or so; this route stays small.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modp::{ModPoly, Zp};
use super::poly::{Monomial, Poly};
use super::rat::rat_int;
use super::univariate::is_prime;

/// `c[i][j]` is the coefficient of `v^i w^j`.
type Dense = Vec<Vec<BigInt>>;

fn to_dense(c: &[Poly], w: usize) -> Dense {
    let den = c.iter().flat_map(|p| p.terms()).fold(BigInt::one(), |acc, (_, r)| acc.lcm(r.denom()));
    c.iter()
        .map(|p| {
            let mut row = vec![BigInt::zero(); p.degree_in(w) as usize + 1];
            for (m, r) in p.terms() {
                row[m.exp(w) as usize] = (r * rat_int(den.clone())).to_integer();
            }
            row
        })
        .collect()
}

fn w_degree(a: &Dense) -> usize {
    a.iter().map(|r| r.len() - 1).max().unwrap_or(0)
}

fn reduce(zp: &Zp, row: &[BigInt]) -> ModPoly {
    let mut out: ModPoly = row.iter().map(|c| zp.reduce_int(c)).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn eval(zp: &Zp, row: &[u64], t: u64) -> u64 {
    row.iter().rev().fold(0, |acc, &c| (zp.mulm(acc, t) + c) % zp.p)
}

fn int_content(row: &[BigInt]) -> BigInt {
    row.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Gcd in `Z[w]` of the leading coefficients, as an integer row.
fn lc_gcd(a: &Dense, b: &Dense) -> Vec<BigInt> {
    let (la, lb) = (a.last().unwrap(), b.last().unwrap());
    let up = |row: &[BigInt]| super::upoly::UPoly::new(row.iter().map(|c| rat_int(c.clone())).collect());
    let g = up(la).gcd(&up(lb));
    let den = g.coeffs().iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let row: Vec<BigInt> = g.coeffs().iter().map(|r| (r * rat_int(den.clone())).to_integer()).collect();
    // Gauss: the gcd in Z[w] is the primitive gcd times the gcd of contents
    let c = int_content(la).gcd(&int_content(lb)) / int_content(&row);
    row.into_iter().map(|x| x * &c).collect()
}

/// Newton interpolation through `(xs[k], ys[k])` over `F_p`.
fn interpolate(zp: &Zp, xs: &[u64], ys: &[u64]) -> ModPoly {
    let mut poly: ModPoly = Vec::new();
    // product of (w - xs[k]) over the points used so far
    let mut basis: ModPoly = vec![1];
    for (k, (&x, &y)) in xs.iter().zip(ys).enumerate() {
        let at = eval(zp, &poly, x);
        let scale = zp.mulm((y + zp.p - at) % zp.p, zp.inv(eval(zp, &basis, x)));
        poly = zp.add(&poly, &zp.scale(&basis, scale));
        if k + 1 < xs.len() {
            basis = zp.mul(&basis, &[(zp.p - x) % zp.p, 1]);
        }
    }
    poly
}

/// `lc-normalized gcd` image modulo one prime: `gamma * G / lc_v(G)` with
/// its coefficients as polynomials in `w`, or `None` for an unusable prime.
fn image_mod(zp: &Zp, a: &Dense, b: &Dense, gamma: &[BigInt], w_bound: usize) -> Option<Vec<ModPoly>> {
    let ra: Vec<ModPoly> = a.iter().map(|r| reduce(zp, r)).collect();
    let rb: Vec<ModPoly> = b.iter().map(|r| reduce(zp, r)).collect();
    let rg = reduce(zp, gamma);
    if ra.last()?.is_empty() || rb.last()?.is_empty() || rg.len() != gamma.len() {
        return None;
    }
    let mut xs = Vec::new();
    let mut images: Vec<ModPoly> = Vec::new();
    let mut best = usize::MAX;
    // random points: a fixed sequence can keep hitting the same bad values
    let mut rng = ChaCha8Rng::seed_from_u64(zp.p);
    let mut tries = 0;
    while xs.len() <= w_bound {
        tries += 1;
        if tries > 4 * (w_bound + 8) {
            return None;
        }
        let t = rng.gen_range(1..zp.p);
        if xs.contains(&t) {
            continue;
        }
        let gt = eval(zp, &rg, t);
        if gt == 0 {
            continue;
        }
        let fa: ModPoly = zp.add(&ra.iter().map(|r| eval(zp, r, t)).collect::<Vec<_>>(), &[]);
        let fb: ModPoly = zp.add(&rb.iter().map(|r| eval(zp, r, t)).collect::<Vec<_>>(), &[]);
        let g = zp.scale(&zp.gcd(&fa, &fb), gt);
        let d = g.len() - 1;
        if d < best {
            // every earlier point was unlucky
            best = d;
            xs.clear();
            images.clear();
        }
        if d == best {
            xs.push(t);
            images.push(g);
        }
    }
    Some(
        (0..=best)
            .map(|i| {
                let ys: Vec<u64> = images.iter().map(|g| g[i]).collect();
                interpolate(zp, &xs, &ys)
            })
            .collect(),
    )
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    if c * 2 > *m {
        c - m
    } else {
        c.clone()
    }
}

fn to_poly(h: &[Vec<BigInt>], vars: &super::poly::Vars, v: usize, w: usize, m: &BigInt) -> Poly {
    let mut terms = Vec::new();
    for (i, row) in h.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            let c = symmetric(c, m);
            if !c.is_zero() {
                let mut e = [0u32; 3];
                e[v] = i as u32;
                e[w] = j as u32;
                terms.push((Monomial(e), rat_int(c)));
            }
        }
    }
    Poly::from_terms(vars, terms)
}

/// Gcd of `a` and `b`, given as coefficient vectors in `v` over `Q[w]`, both
/// primitive and of positive degree in `v`. Returns coefficients in `v` of
/// a primitive gcd.
pub(super) fn bivariate_gcd(a: &[Poly], b: &[Poly], v: usize, w: usize) -> Vec<Poly> {
    let vars = a[0].vars().clone();
    let (da, db) = (to_dense(a, w), to_dense(b, w));
    let gamma = lc_gcd(&da, &db);
    let w_bound = gamma.len() - 1 + w_degree(&da).min(w_degree(&db));
    let full = |c: &[Poly]| Poly::from_univariate(&vars, v, c);
    let (pa, pb) = (full(a), full(b));
    let mut acc: Option<(Vec<Vec<BigInt>>, BigInt)> = None;
    let mut last: Option<Poly> = None;
    let mut p = (1u64 << 31) - 1;
    loop {
        while !is_prime(p) {
            p -= 2;
        }
        let zp = Zp::new(p);
        p -= 2;
        let Some(img) = image_mod(&zp, &da, &db, &gamma, w_bound) else {
            continue;
        };
        if img.len() == 1 {
            return vec![Poly::one(&vars)];
        }
        let prime = BigInt::from(zp.p);
        acc = Some(match acc.take() {
            Some((h, m)) if h.len() < img.len() => (h, m),
            Some((h, m)) if h.len() == img.len() => {
                let m_inv = BigInt::from(zp.inv(zp.reduce_int(&m)));
                let rows = h
                    .iter()
                    .zip(&img)
                    .map(|(hr, ir)| {
                        let n = hr.len().max(ir.len());
                        (0..n)
                            .map(|j| {
                                let old = hr.get(j).cloned().unwrap_or_default();
                                let new = BigInt::from(ir.get(j).copied().unwrap_or(0));
                                let delta = ((new - &old) * &m_inv).mod_floor(&prime);
                                old + &m * delta
                            })
                            .collect()
                    })
                    .collect();
                (rows, &m * &prime)
            }
            // first prime, or all earlier ones were unlucky
            _ => (
                img.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect(),
                prime,
            ),
        });
        let (h, m) = acc.as_ref().unwrap();
        let cand = to_poly(h, &vars, v, w, m);
        if last.as_ref() == Some(&cand) {
            let g = super::gcd::primitive_part_in(&cand, v);
            if pa.div_exact(&g).is_some() && pb.div_exact(&g).is_some() {
                return g.to_univariate(v);
            }
        }
        last = Some(cand);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gcd, Vars};

    #[test]
    fn recovers_common_factor() {
        let vars = Vars::affine();
        let (x, y) = (Poly::var(&vars, 0), Poly::var(&vars, 1));
        let one = Poly::one(&vars);
        let c = &(&(&x * &y).scale(&crate::arith::rat(7)) - &y.pow(3)) + &one;
        let a = &c * &(&x.pow(4) + &(&y * &x));
        let b = &c * &(&(&y.pow(2) - &x) + &one.scale(&crate::arith::rat(12345678)));
        let g = bivariate_gcd(&a.to_univariate(0), &b.to_univariate(0), 0, 1);
        assert_eq!(Poly::from_univariate(&vars, 0, &g).normalized(), c.normalized());
        assert_eq!(gcd(&a, &b), c.normalized());
    }
}
