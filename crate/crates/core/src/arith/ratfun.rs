//! Reduced fractions of polynomials in `x, y`.

use std::fmt;

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{Poly, Vars};
use super::rat::Rat;
use super::ArithError;

/// `numerator / denominator` in lowest terms. The denominator is a primitive
/// integer polynomial with positive lead coefficient; all scalar content
/// lives in the numerator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunction, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        assert_eq!(num.vars(), den.vars(), "numerator and denominator variables differ");
        if num.is_zero() {
            return Ok(RationalFunction {
                den: Poly::one(num.vars()),
                num,
            });
        }
        let g = gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let (unit, den) = den.content_normalize();
        Ok(RationalFunction {
            num: num.scale(&unit.recip()),
            den,
        })
    }

    pub fn from_poly(p: Poly) -> RationalFunction {
        let den = Poly::one(p.vars());
        RationalFunction { num: p, den }
    }

    pub fn constant(c: Rat) -> RationalFunction {
        RationalFunction::from_poly(Poly::constant(&Vars::affine(), c))
    }

    pub fn one() -> RationalFunction {
        RationalFunction::constant(Rat::one())
    }

    /// The coordinate `x` (index 0) or `y` (index 1).
    pub fn coordinate(i: usize) -> RationalFunction {
        RationalFunction::from_poly(Poly::var(&Vars::affine(), i))
    }

    pub fn x() -> RationalFunction {
        RationalFunction::coordinate(0)
    }

    pub fn y() -> RationalFunction {
        RationalFunction::coordinate(1)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.num.constant_value().unwrap() / self.den.constant_value().unwrap())
        } else {
            None
        }
    }

    /// `max(deg numerator, deg denominator)`.
    pub fn degree(&self) -> u32 {
        self.num.total_degree().max(self.den.total_degree())
    }

    pub fn add(&self, o: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RationalFunction::new(num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn sub(&self, o: &RationalFunction) -> RationalFunction {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &RationalFunction) -> RationalFunction {
        // cross-cancel before multiplying to keep sizes down
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RationalFunction::new(&n1 * &n2, &d1 * &d2).expect("nonzero denominators")
    }

    pub fn recip(&self) -> Result<RationalFunction, ArithError> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RationalFunction) -> Result<RationalFunction, ArithError> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn scale(&self, c: &Rat) -> RationalFunction {
        RationalFunction {
            num: self.num.scale(c),
            den: if c.is_zero() {
                Poly::one(self.vars())
            } else {
                self.den.clone()
            },
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<RationalFunction, ArithError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(RationalFunction {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> RationalFunction {
        let num = &(&self.num.derivative(i) * &self.den) - &(&self.num * &self.den.derivative(i));
        RationalFunction::new(num, self.den.pow(2)).expect("nonzero denominator")
    }

    /// Substitute `x := images[0]`, `y := images[1]`.
    pub fn compose(&self, images: &[RationalFunction; 2]) -> Result<RationalFunction, ArithError> {
        let n = eval_poly(&self.num, images);
        let d = eval_poly(&self.den, images);
        n.div(&d)
    }

    pub fn eval(&self, point: &[Rat]) -> Option<Rat> {
        let d = self.den.eval(point);
        (!d.is_zero()).then(|| self.num.eval(point) / d)
    }
}

/// `p(images)` as a reduced fraction, clearing denominators per variable.
fn eval_poly(p: &Poly, images: &[RationalFunction; 2]) -> RationalFunction {
    let vars = images[0].vars().clone();
    let dx = p.degree_in(0);
    let dy = p.degree_in(1);
    let pw = |f: &Poly, k: u32| -> Vec<Poly> {
        let mut v = vec![Poly::one(&vars)];
        for i in 0..k as usize {
            let next = &v[i] * f;
            v.push(next);
        }
        v
    };
    let (nx, qx) = (pw(&images[0].num, dx), pw(&images[0].den, dx));
    let (ny, qy) = (pw(&images[1].num, dy), pw(&images[1].den, dy));
    let mut num = Poly::zero(&vars);
    for (m, c) in p.terms() {
        let (i, j) = (m.exp(0), m.exp(1));
        let t = &(&nx[i as usize] * &qx[(dx - i) as usize]) * &(&ny[j as usize] * &qy[(dy - j) as usize]);
        num = &num + &t.scale(c);
    }
    let den = &qx[dx as usize] * &qy[dy as usize];
    RationalFunction::new(num, den).expect("nonzero denominator")
}

impl fmt::Display for RationalFunction {
    /// `num` when the denominator is 1, otherwise `num/den` with
    /// parentheses wherever re-parsing would need them.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        // a lone power of one variable binds tighter than '/'
        let bare = match self.den.lead_term() {
            Some((m, c)) if self.den.num_terms() == 1 && c.is_one() => {
                (0..self.den.nvars()).filter(|&i| m.exp(i) > 0).count() <= 1
            }
            _ => false,
        };
        if bare {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}
