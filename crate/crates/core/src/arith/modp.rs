//! Dense univariate polynomials over a small prime field, with
//! distinct-degree and equal-degree (Cantor–Zassenhaus) factorization.

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Coefficients in increasing degree, reduced into `[0, p)`, no trailing zeros.
pub(crate) type ModPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Zp {
    pub p: u64,
}

fn trim(mut a: ModPoly) -> ModPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

impl Zp {
    pub fn new(p: u64) -> Zp {
        assert!(p > 2 && p < (1 << 31));
        Zp { p }
    }

    pub fn reduce_int(&self, v: &num_bigint::BigInt) -> u64 {
        let p = num_bigint::BigInt::from(self.p);
        let r = ((v % &p) + &p) % &p;
        u64::try_from(r).expect("reduced value fits")
    }

    /// Image of a rational whose denominator is prime to `p`.
    pub fn reduce_rat(&self, v: &num_rational::BigRational) -> Option<u64> {
        let d = self.reduce_int(v.denom());
        (d != 0).then(|| self.mulm(self.reduce_int(v.numer()), self.inv(d)))
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> ModPoly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
                .collect(),
        )
    }

    pub fn mulm(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn powm(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulm(r, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod p");
        self.powm(a, self.p - 2)
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> ModPoly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0))
                        % self.p
                })
                .collect(),
        )
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> ModPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        trim(out)
    }

    pub fn scale(&self, a: &[u64], c: u64) -> ModPoly {
        trim(a.iter().map(|&x| self.mulm(x, c)).collect())
    }

    pub fn monic(&self, a: &[u64]) -> ModPoly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.scale(a, self.inv(l)),
        }
    }

    pub fn divrem(&self, a: &[u64], d: &[u64]) -> (ModPoly, ModPoly) {
        assert!(!d.is_empty());
        if a.len() < d.len() {
            return (Vec::new(), a.to_vec());
        }
        let dn = d.len() - 1;
        let inv = self.inv(d[dn]);
        let mut r = a.to_vec();
        let mut q = vec![0u64; a.len() - dn];
        for k in (0..q.len()).rev() {
            let c = self.mulm(r[k + dn], inv);
            q[k] = c;
            if c != 0 {
                for (j, &dj) in d.iter().enumerate() {
                    r[k + j] = (r[k + j] + self.p - self.mulm(c, dj)) % self.p;
                }
            }
        }
        r.truncate(dn);
        (trim(q), trim(r))
    }

    pub fn rem(&self, a: &[u64], d: &[u64]) -> ModPoly {
        self.divrem(a, d).1
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> ModPoly {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Inverse of `a` modulo `m`, assuming they are coprime.
    pub fn inverse_mod(&self, a: &[u64], m: &[u64]) -> ModPoly {
        let (mut r0, mut r1) = (m.to_vec(), self.rem(a, m));
        let (mut s0, mut s1): (ModPoly, ModPoly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        assert_eq!(r0.len(), 1, "inverse_mod on non-coprime inputs");
        let c = self.inv(r0[0]);
        self.rem(&self.scale(&s0, c), m)
    }

    pub fn derivative(&self, a: &[u64]) -> ModPoly {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mulm(c, i as u64 % self.p))
                .collect(),
        )
    }

    pub fn powmod(&self, base: &[u64], exp: &BigUint, m: &[u64]) -> ModPoly {
        let mut result: ModPoly = vec![1];
        let base = self.rem(base, m);
        for i in (0..exp.bits()).rev() {
            result = self.rem(&self.mul(&result, &result), m);
            if exp.bit(i) {
                result = self.rem(&self.mul(&result, &base), m);
            }
        }
        self.rem(&result, m)
    }

    pub fn is_squarefree(&self, a: &[u64]) -> bool {
        self.gcd(a, &self.derivative(a)).len() == 1
    }

    /// Irreducible monic factors of a monic squarefree polynomial.
    pub fn factor_squarefree(&self, f: &[u64], rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            self.equal_degree(&g, d, rng, &mut out);
        }
        out
    }

    fn distinct_degree(&self, f: &[u64]) -> Vec<(ModPoly, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x: ModPoly = vec![0, 1];
        let mut h = x.clone();
        let pbig = BigUint::from(self.p);
        let mut d = 1;
        while f.len() - 1 >= 2 * d {
            h = self.powmod(&h, &pbig, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
            d += 1;
        }
        if f.len() > 1 {
            let dd = f.len() - 1;
            out.push((f, dd));
        }
        out
    }

    fn equal_degree(&self, g: &[u64], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<ModPoly>) {
        let n = g.len() - 1;
        if n == d {
            out.push(g.to_vec());
            return;
        }
        let exp = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: ModPoly = trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.sub(&self.powmod(&a, &exp, g), &[1]);
            let c = self.gcd(&b, g);
            if c.len() > 1 && c.len() < g.len() {
                let rest = self.divrem(g, &c).0;
                self.equal_degree(&c, d, rng, out);
                self.equal_degree(&self.monic(&rest), d, rng, out);
                return;
            }
        }
    }
}
