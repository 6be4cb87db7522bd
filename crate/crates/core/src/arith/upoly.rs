//! Dense univariate polynomials over Q.

use std::fmt;

use num_traits::{One, Zero};

use super::poly::{Monomial, Poly, Vars};
use super::rat::{rat, Rat};

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UPoly(Vec<Rat>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> UPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> UPoly {
        UPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> UPoly {
        UPoly(Vec::new())
    }

    pub fn one() -> UPoly {
        UPoly(vec![Rat::one()])
    }

    pub fn constant(c: Rat) -> UPoly {
        UPoly::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn x() -> UPoly {
        UPoly(vec![Rat::zero(), Rat::one()])
    }

    /// `t - a`
    pub fn linear_root(a: &Rat) -> UPoly {
        UPoly(vec![-a.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.0.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, c: &Rat) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly(self.0.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut r = UPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.lc().recip())
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.0.len() < d.0.len() {
            return (UPoly::zero(), self.clone());
        }
        let mut r = self.0.clone();
        let dn = d.0.len() - 1;
        let inv = d.lc().recip();
        let mut q = vec![Rat::zero(); r.len() - dn];
        for k in (0..q.len()).rev() {
            let c = &r[k + dn] * &inv;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dn);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`, when coprime.
    pub fn inverse_mod(&self, m: &UPoly) -> Option<UPoly> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `self(t + a)`
    pub fn shift(&self, a: &Rat) -> UPoly {
        let lin = UPoly::new(vec![a.clone(), Rat::one()]);
        let mut acc = UPoly::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(&lin).add(&UPoly::constant(c.clone()));
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// Truncate to degree `< n`.
    pub fn truncate(&self, n: usize) -> UPoly {
        UPoly::new(self.0.iter().take(n).cloned().collect())
    }

    pub fn to_poly(&self, vars: &Vars, i: usize) -> Poly {
        Poly::from_terms(
            vars,
            self.0
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var(i, k as u32), c.clone())),
        )
    }

    /// Read a polynomial that only involves variable `i`.
    pub fn from_poly(p: &Poly, i: usize) -> UPoly {
        let mut out = vec![Rat::zero(); p.degree_in(i) as usize + 1];
        for (m, c) in p.terms() {
            debug_assert!((0..p.nvars()).all(|j| j == i || m.exp(j) == 0));
            out[m.exp(i) as usize] = c.clone();
        }
        UPoly::new(out)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly(&Vars::univariate(), 0))
    }
}
