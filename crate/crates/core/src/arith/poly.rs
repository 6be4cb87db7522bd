//! Sparse multivariate polynomials with rational coefficients.
//!
//! A [`Poly`] carries its variable names. Terms are stored in a `BTreeMap`
//! keyed by [`Monomial`], whose ordering is graded lexicographic on the
//! fixed variable order, so the last entry of the map is the lead term.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::sync::LazyLock;

use super::rat::{denominator_lcm, numerator_gcd, pow_rat, rat, rat_int, Rat};

/// Maximum number of variables a polynomial may carry.
pub const MAX_VARS: usize = 3;

/// Ordered tuple of variable names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vars(Arc<[String]>);

static AFFINE: LazyLock<Vars> = LazyLock::new(|| Vars::new(&["x", "y"]));
static PROJECTIVE: LazyLock<Vars> = LazyLock::new(|| Vars::new(&["X", "Y", "Z"]));
static CHART: LazyLock<Vars> = LazyLock::new(|| Vars::new(&["u", "v"]));
static UNIVARIATE: LazyLock<Vars> = LazyLock::new(|| Vars::new(&["u"]));

impl Vars {
    pub fn new(names: &[&str]) -> Vars {
        assert!(
            !names.is_empty() && names.len() <= MAX_VARS,
            "between 1 and {MAX_VARS} variables supported"
        );
        Vars(names.iter().map(|s| s.to_string()).collect())
    }

    /// The affine coordinates `x, y`.
    pub fn affine() -> Vars {
        AFFINE.clone()
    }

    /// The homogeneous coordinates `X, Y, Z`.
    pub fn projective() -> Vars {
        PROJECTIVE.clone()
    }

    /// Chart coordinates `u, v` used by closed points.
    pub fn chart() -> Vars {
        CHART.clone()
    }

    pub fn univariate() -> Vars {
        UNIVARIATE.clone()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

/// Exponent vector. Unused trailing slots are zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; MAX_VARS]);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial([0; MAX_VARS])
    }

    pub fn var(i: usize, e: u32) -> Monomial {
        let mut m = [0; MAX_VARS];
        m[i] = e;
        Monomial(m)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(m)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            if *a < *b {
                return None;
            }
            *a -= b;
        }
        Some(Monomial(m))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over Q in at most three named variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(vars: &Vars) -> Poly {
        Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Poly {
        Poly::constant(vars, Rat::one())
    }

    pub fn constant(vars: &Vars, c: Rat) -> Poly {
        Poly::monomial(vars, Monomial::one(), c)
    }

    pub fn from_int(vars: &Vars, c: i64) -> Poly {
        Poly::constant(vars, rat(c))
    }

    /// The `i`-th variable.
    pub fn var(vars: &Vars, i: usize) -> Poly {
        assert!(i < vars.len());
        Poly::monomial(vars, Monomial::var(i, 1), Rat::one())
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: Rat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Poly {
        let mut p = Poly::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total() == 0)
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total()).max().unwrap_or(0)
    }

    /// Degree in variable `i`; zero for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exp(i) > 0)
    }

    pub fn lead_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn lead_coeff(&self) -> Rat {
        self.lead_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.total());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn check_vars(&self, other: &Poly) {
        assert_eq!(self.vars, other.vars, "polynomial variable sets differ");
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        self.check_vars(d);
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (dm, dc) = d.lead_term().map(|(m, c)| (*m, c.clone())).unwrap();
        if d.terms.len() == 1 {
            let mut q = Poly::zero(&self.vars);
            for (m, c) in &self.terms {
                q.terms.insert(m.div(&dm)?, c / &dc);
            }
            return Some(q);
        }
        let mut rem = self.clone();
        let mut q = Poly::zero(&self.vars);
        while let Some((rm, rc)) = rem.lead_term().map(|(m, c)| (*m, c.clone())) {
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                let mut nm = *m;
                nm.0[i] -= 1;
                out.add_term(nm, c * rat(e as i64));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars());
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                if m.exp(i) > 0 {
                    t *= pow_rat(x, m.exp(i));
                }
            }
            total += t;
        }
        total
    }

    /// Substitute the value `value` for variable `i`; the variable set is kept.
    pub fn substitute(&self, i: usize, value: &Rat) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut nm = *m;
            let e = nm.0[i];
            nm.0[i] = 0;
            out.add_term(nm, c * pow_rat(value, e));
        }
        out
    }

    /// Replace variable `i` by the polynomial `images[i]`; the result lives in
    /// the variable set of the images.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars());
        let target = images[0].vars.clone();
        // cache powers of each image
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(&target), p.clone()]).collect();
        for (i, img) in images.iter().enumerate() {
            let d = self.degree_in(i) as usize;
            while powers[i].len() <= d {
                let next = &powers[i][powers[i].len() - 1] * img;
                powers[i].push(next);
            }
        }
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Move the polynomial to another variable set of the same arity.
    pub fn rename(&self, vars: &Vars) -> Poly {
        assert_eq!(vars.len(), self.nvars());
        Poly {
            vars: vars.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Coefficients with respect to variable `i`: `self = sum_k coeffs[k] * v_i^k`.
    /// The coefficients keep the full variable set but do not involve `v_i`.
    pub fn to_univariate(&self, i: usize) -> Vec<Poly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Poly::zero(&self.vars); d + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (m, c) in &self.terms {
            let mut nm = *m;
            let e = nm.0[i] as usize;
            nm.0[i] = 0;
            out[e].terms.insert(nm, c.clone());
        }
        out
    }

    pub fn from_univariate(vars: &Vars, i: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut nm = *m;
                nm.0[i] += k as u32;
                out.add_term(nm, a.clone());
            }
        }
        out
    }

    /// Split into `(unit, primitive)` with `unit * primitive == self`, where
    /// `primitive` has coprime integer coefficients and a positive lead
    /// coefficient. The zero polynomial maps to `(0, 0)`.
    pub fn content_normalize(&self) -> (Rat, Poly) {
        if self.is_zero() {
            return (Rat::zero(), self.clone());
        }
        let den = denominator_lcm(self.terms.values());
        let ints: Vec<Rat> = self
            .terms
            .values()
            .map(|c| c * rat_int(den.clone()))
            .collect();
        let mut g = numerator_gcd(ints.iter());
        if self.lead_coeff().is_negative() {
            g = -g;
        }
        let unit = Rat::new(g.clone(), den.clone());
        let scale = Rat::new(den, g);
        (unit, self.scale(&scale))
    }

    /// Primitive integer representative with positive lead coefficient.
    pub fn normalized(&self) -> Poly {
        self.content_normalize().1
    }

    /// Monic in the graded-lex order.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead_coeff().recip())
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.numer().abs())
            .max()
            .unwrap_or_default()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_vars(rhs);
        let mut out = Poly::zero(&self.vars);
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &Vars, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for i in 0..vars.len() {
        let e = m.exp(i);
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", vars.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    /// Terms in decreasing graded-lex order, e.g. `x^2*y - 3/2*x + 1`.
    /// The output parses back with the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.total() == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, &self.vars, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat_frac;

    fn xy() -> (Poly, Poly) {
        let v = Vars::affine();
        (Poly::var(&v, 0), Poly::var(&v, 1))
    }

    #[test]
    fn grlex_lead_term() {
        let (x, y) = xy();
        let p = &(&x * &y) + &x.pow(2);
        // x^2 > x*y in grlex with x > y
        assert_eq!(p.lead_term().unwrap().0, &Monomial([2, 0, 0]));
        let q = &y.pow(3) + &x;
        assert_eq!(q.lead_term().unwrap().0, &Monomial([0, 3, 0]));
    }

    #[test]
    fn exact_division() {
        let (x, y) = xy();
        let a = &x - &y;
        let b = &x + &y;
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&(&x + &Poly::from_int(x.vars(), 1))), None);
    }

    #[test]
    fn derivatives() {
        let (x, y) = xy();
        let p = &x.pow(2) * &y;
        assert_eq!(p.derivative(0), (&x * &y).scale(&rat(2)));
        assert!(x.derivative(1).is_zero());
        let q = &x + &(&x * &y.pow(3));
        assert_eq!(q.derivative(0), &Poly::one(x.vars()) + &y.pow(3));
    }

    #[test]
    fn display_format() {
        let (x, y) = xy();
        let p = &(&x.pow(2) * &y) - &x.scale(&rat_frac(3, 2));
        let p = &p + &Poly::one(x.vars());
        assert_eq!(p.to_string(), "x^2*y - 3/2*x + 1");
        assert_eq!((-&x).to_string(), "-x");
        assert_eq!(Poly::zero(x.vars()).to_string(), "0");
    }

    #[test]
    fn content_normalization() {
        let (x, y) = xy();
        let p = (&x.scale(&rat_frac(-2, 3))) + &y.scale(&rat_frac(4, 9));
        let (u, n) = p.content_normalize();
        assert_eq!(n.scale(&u), p);
        assert_eq!(n.to_string(), "3*x - 2*y");
    }

    #[test]
    fn compose_substitutes() {
        let (x, y) = xy();
        let p = &x * &y;
        let shifted = p.compose(&[&x + &Poly::one(x.vars()), y.clone()]);
        assert_eq!(shifted, &(&x * &y) + &y);
    }
}
