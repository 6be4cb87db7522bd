//! Factorization of univariate polynomials over Q: squarefree decomposition,
//! then modular factorization, multifactor Hensel lifting and subset
//! recombination over Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{ModPoly, Zp};
use super::rat::{denominator_lcm, numerator_gcd, rat_int, Rat};
use super::upoly::UPoly;

type ZPoly = Vec<BigInt>;

const CANDIDATE_PRIMES: usize = 6;

/// Primitive integer representative with positive leading coefficient:
/// returns `(unit, prim)` with `unit * prim == p`.
pub fn primitive_integer(p: &UPoly) -> (Rat, UPoly) {
    if p.is_zero() {
        return (Rat::zero(), UPoly::zero());
    }
    let den = denominator_lcm(p.coeffs().iter());
    let scaled: Vec<Rat> = p.coeffs().iter().map(|c| c * rat_int(den.clone())).collect();
    let mut g = numerator_gcd(scaled.iter());
    if p.lc().is_negative() {
        g = -g;
    }
    let unit = Rat::new(g.clone(), den.clone());
    (unit.clone(), p.scale(&unit.recip()))
}

/// Yun squarefree decomposition of a nonconstant polynomial; the parts are
/// monic, squarefree and pairwise coprime.
pub fn squarefree_univariate(f: &UPoly) -> Vec<(UPoly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let f = f.monic();
    let df = f.derivative();
    let g = f.gcd(&df);
    let mut c = f.div_exact(&g).expect("gcd divides");
    let mut d = df.div_exact(&g).expect("gcd divides").sub(&c.derivative());
    let mut i = 1;
    while !c.is_constant() {
        let a = c.gcd(&d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        c = c.div_exact(&a).expect("gcd divides");
        d = d.div_exact(&a).expect("gcd divides").sub(&c.derivative());
        i += 1;
    }
    out
}

/// Complete factorization over Q. Factors are primitive integer polynomials
/// with positive leading coefficient, sorted; `unit * prod(f^m) == p`.
pub fn factor_univariate(p: &UPoly) -> (Rat, Vec<(UPoly, u32)>) {
    assert!(!p.is_zero(), "factor of zero polynomial");
    if p.is_constant() {
        return (p.lc(), Vec::new());
    }
    let mut factors = Vec::new();
    for (part, mult) in squarefree_univariate(p) {
        let (_, prim) = primitive_integer(&part);
        for f in zassenhaus(&to_z(&prim)) {
            factors.push((from_z(&f), mult));
        }
    }
    factors.sort();
    let mut lc_prod = Rat::one();
    for (f, m) in &factors {
        lc_prod *= num_traits::pow(f.lc(), *m as usize);
    }
    (p.lc() / lc_prod, factors)
}

/// Whether `p` (nonconstant) is irreducible over Q.
pub fn is_irreducible_univariate(p: &UPoly) -> bool {
    let (_, f) = factor_univariate(p);
    f.len() == 1 && f[0].1 == 1
}

fn to_z(p: &UPoly) -> ZPoly {
    p.coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

fn from_z(p: &[BigInt]) -> UPoly {
    UPoly::new(p.iter().map(|c| rat_int(c.clone())).collect())
}

pub(super) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn reduce_mod(zp: &Zp, f: &[BigInt]) -> ModPoly {
    let mut v: ModPoly = f.iter().map(|c| zp.reduce_int(c)).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Factor a primitive squarefree integer polynomial of positive degree.
fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    let mut best: Option<(Zp, Vec<ModPoly>)> = None;
    let mut tried = 0;
    let mut p = 11u64;
    while tried < CANDIDATE_PRIMES {
        p += 2;
        if !is_prime(p) || (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let zp = Zp::new(p);
        let fp = reduce_mod(&zp, f);
        if fp.len() != f.len() || !zp.is_squarefree(&fp) {
            continue;
        }
        tried += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let facs = zp.factor_squarefree(&zp.monic(&fp), &mut rng);
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((zp, facs));
        }
    }
    let (zp, facs) = best.expect("some prime is admissible");
    let (lifted, modulus) = hensel_lift(f, &zp, &facs);
    recombine(f, lifted, &modulus)
}

fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + BigInt::one();
    BigInt::from(2) * f[n].abs() * (BigInt::one() << n) * norm + BigInt::one()
}

fn mul_z(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn mod_z(a: &[BigInt], m: &BigInt) -> ZPoly {
    a.iter().map(|c| c.mod_floor(m)).collect()
}

/// Lift `f = lc * prod(h_i) mod p` (h_i monic) to a modulus exceeding the
/// factor coefficient bound.
fn hensel_lift(f: &[BigInt], zp: &Zp, facs: &[ModPoly]) -> (Vec<ZPoly>, BigInt) {
    let bound = coefficient_bound(f);
    let n = f.len() - 1;
    let lc = f[n].clone();
    let lc_inv = zp.inv(zp.reduce_int(&lc));
    let cofactor_inverses: Vec<ModPoly> = (0..facs.len())
        .map(|i| {
            let mut prod: ModPoly = vec![1];
            for (j, h) in facs.iter().enumerate() {
                if j != i {
                    prod = zp.mul(&prod, h);
                }
            }
            zp.inverse_mod(&zp.rem(&prod, &facs[i]), &facs[i])
        })
        .collect();
    let pbig = BigInt::from(zp.p);
    let mut lifted: Vec<ZPoly> = facs
        .iter()
        .map(|h| h.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let mut q = pbig.clone();
    while q <= bound {
        let q_next = &q * &pbig;
        let mut prod: ZPoly = vec![lc.clone()];
        for h in &lifted {
            prod = mod_z(&mul_z(&prod, h), &q_next);
        }
        let err: Vec<BigInt> = (0..=n)
            .map(|i| {
                let d = (&f[i] - prod.get(i).cloned().unwrap_or_default()).mod_floor(&q_next);
                debug_assert!((&d % &q).is_zero());
                d / &q
            })
            .collect();
        let e = zp.scale(&reduce_mod(zp, &err), lc_inv);
        if !e.is_empty() {
            for (i, h) in lifted.iter_mut().enumerate() {
                let delta = zp.rem(&zp.mul(&e, &cofactor_inverses[i]), &facs[i]);
                for (k, c) in delta.iter().enumerate() {
                    h[k] += &q * BigInt::from(*c);
                }
            }
        }
        q = q_next;
    }
    (lifted, q)
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut v: ZPoly = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn primitive_z(a: &[BigInt]) -> ZPoly {
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if a.last().is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    a.iter().map(|c| c / &g * &sign).collect()
}

/// Exact quotient over Z, if `d` divides `a`.
fn div_z(a: &[BigInt], d: &[BigInt]) -> Option<ZPoly> {
    let (q, r) = from_z(a).divrem(&from_z(d));
    if !r.is_zero() || q.coeffs().iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(to_z(&q))
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn walk(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            walk(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    walk(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn recombine(f: &[BigInt], mut lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut found = Vec::new();
    let mut rest = f.to_vec();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        for subset in combinations(lifted.len(), size) {
            let lc = rest.last().unwrap().clone();
            let mut cand: ZPoly = vec![lc.clone()];
            for &i in &subset {
                cand = mod_z(&mul_z(&cand, &lifted[i]), modulus);
            }
            let cand = symmetric(&cand, modulus);
            // cheap constant-term filter before the full division
            if !cand[0].is_zero() && !((&lc * &rest[0]) % &cand[0]).is_zero() {
                continue;
            }
            let g = primitive_z(&cand);
            if let Some(q) = div_z(&rest, &g) {
                found.push(g);
                rest = q;
                let keep: Vec<ZPoly> = lifted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, h)| h.clone())
                    .collect();
                lifted = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if rest.len() > 1 {
        found.push(primitive_z(&rest));
    }
    found
}
