//! Arithmetic in simple algebraic extensions `K = Q[t]/(m(t))` with `m`
//! monic irreducible, and polynomials over them.

use num_traits::One;

use super::linalg::Echelon;
use super::rat::Rat;
use super::upoly::UPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: UPoly,
}

/// Polynomial in one variable over a number field, coefficients in
/// increasing degree.
pub type KPoly = Vec<UPoly>;

impl NumberField {
    /// `modulus` must be irreducible over Q; it is made monic.
    pub fn new(modulus: &UPoly) -> NumberField {
        assert!(modulus.deg() >= 1, "number field modulus must be nonconstant");
        NumberField {
            modulus: modulus.monic(),
        }
    }

    pub fn modulus(&self) -> &UPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn reduce(&self, a: &UPoly) -> UPoly {
        a.rem(&self.modulus)
    }

    /// The class of `t`.
    pub fn generator(&self) -> UPoly {
        self.reduce(&UPoly::x())
    }

    pub fn mul(&self, a: &UPoly, b: &UPoly) -> UPoly {
        self.reduce(&a.mul(b))
    }

    pub fn inv(&self, a: &UPoly) -> Option<UPoly> {
        a.inverse_mod(&self.modulus)
    }

    pub fn pow(&self, a: &UPoly, e: u32) -> UPoly {
        let mut r = UPoly::one();
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }

    /// Coordinates in the power basis `1, t, ..., t^(n-1)`.
    pub fn coordinates(&self, a: &UPoly) -> Vec<Rat> {
        (0..self.degree()).map(|i| a.coeff(i)).collect()
    }

    /// Minimal polynomial of `a` over Q, monic.
    pub fn minimal_polynomial(&self, a: &UPoly) -> UPoly {
        let mut ech = Echelon::new(self.degree());
        let mut power = UPoly::one();
        loop {
            if let Some(rel) = ech.insert(self.coordinates(&power)) {
                return UPoly::new(rel);
            }
            power = self.mul(&power, a);
        }
    }

    fn trim(p: &mut KPoly) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn kpoly_monic(&self, p: &KPoly) -> KPoly {
        let Some(lc) = p.last() else {
            return Vec::new();
        };
        let inv = self.inv(lc).expect("nonzero element of a field is invertible");
        p.iter().map(|c| self.mul(c, &inv)).collect()
    }

    pub fn kpoly_rem(&self, a: &KPoly, d: &KPoly) -> KPoly {
        let mut r: KPoly = a.iter().map(|c| self.reduce(c)).collect();
        Self::trim(&mut r);
        let dm = self.kpoly_monic(d);
        let dn = dm.len() - 1;
        while r.len() > dn {
            let k = r.len() - 1 - dn;
            let c = r.last().unwrap().clone();
            for (j, dj) in dm.iter().enumerate() {
                r[k + j] = r[k + j].sub(&self.mul(&c, dj));
            }
            Self::trim(&mut r);
        }
        r
    }

    /// Monic gcd in `K[v]`.
    pub fn kpoly_gcd(&self, a: &KPoly, b: &KPoly) -> KPoly {
        let mut a: KPoly = a.iter().map(|c| self.reduce(c)).collect();
        let mut b: KPoly = b.iter().map(|c| self.reduce(c)).collect();
        Self::trim(&mut a);
        Self::trim(&mut b);
        while !b.is_empty() {
            let r = self.kpoly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.kpoly_monic(&a)
    }

    /// `(v - root)^m` expanded.
    pub fn kpoly_linear_power(&self, root: &UPoly, m: usize) -> KPoly {
        let lin: KPoly = vec![root.neg(), UPoly::one()];
        let mut out: KPoly = vec![UPoly::one()];
        for _ in 0..m {
            let mut next = vec![UPoly::zero(); out.len() + 1];
            for (i, a) in out.iter().enumerate() {
                for (j, b) in lin.iter().enumerate() {
                    next[i + j] = next[i + j].add(&self.mul(a, b));
                }
            }
            out = next;
        }
        out
    }

    pub fn is_zero(&self, a: &UPoly) -> bool {
        self.reduce(a).is_zero()
    }

    pub fn from_rat(c: &Rat) -> UPoly {
        UPoly::constant(c.clone())
    }

    pub fn one() -> UPoly {
        UPoly::constant(Rat::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;

    #[test]
    fn sqrt2_arithmetic() {
        let k = NumberField::new(&UPoly::from_ints(&[-2, 0, 1]));
        let t = k.generator();
        assert_eq!(k.mul(&t, &t), UPoly::constant(rat(2)));
        // (1 + t) has minimal polynomial u^2 - 2u - 1
        let a = t.add(&UPoly::one());
        assert_eq!(k.minimal_polynomial(&a), UPoly::from_ints(&[-1, -2, 1]));
        assert_eq!(k.minimal_polynomial(&UPoly::constant(rat(3))), UPoly::from_ints(&[-3, 1]));
    }

    #[test]
    fn gcd_over_extension() {
        let k = NumberField::new(&UPoly::from_ints(&[-2, 0, 1]));
        let t = k.generator();
        // (v - t)^2 (v + 1) and (v - t)(v - 3)
        let a = k.kpoly_linear_power(&t, 2);
        let a = {
            let lin: KPoly = vec![UPoly::one(), UPoly::one()];
            let mut out = vec![UPoly::zero(); a.len() + 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in lin.iter().enumerate() {
                    out[i + j] = out[i + j].add(&k.mul(x, y));
                }
            }
            out
        };
        let b = {
            let l1 = k.kpoly_linear_power(&t, 1);
            vec![k.mul(&l1[0], &UPoly::constant(rat(-3))), l1[0].sub(&UPoly::constant(rat(3))), UPoly::one()]
        };
        let g = k.kpoly_gcd(&a, &b);
        assert_eq!(g, k.kpoly_linear_power(&t, 1));
    }
}
