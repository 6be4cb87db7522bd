//! Factorization into irreducibles over Q for univariate, bivariate and
//! homogeneous trivariate polynomials.
//!
//! Bivariate squarefree polynomials are reduced to a univariate image by
//! specializing `x = a`, the image is factored, the factors are Hensel-lifted
//! in `Q[y][[x - a]]` to full precision, and true factors are recovered by
//! subset recombination with exact trial division.

use super::gcd::{content_in, primitive_part_in};
use super::homog::{dehomogenize, homogenize, Chart};
use super::poly::{Monomial, Poly, Vars};
use super::rat::{rat, Rat};
use super::sqfree::squarefree_decomposition;
use super::univariate::{combinations, factor_univariate};
use super::upoly::UPoly;
use super::ArithError;
use num_traits::{One, Zero};

/// `unit * prod(factor^mult)` reassembles the input. Factors are irreducible,
/// primitive with integer coefficients, positive lead coefficient, pairwise
/// non-associate and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rat,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, vars: &Vars) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(vars, self.unit.clone()), |acc, (f, m)| {
                &acc * &f.pow(*m)
            })
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Complete factorization over Q.
pub fn factor(p: &Poly) -> Result<Factorization, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroInput("factor"));
    }
    let mut factors = match p.nvars() {
        1 => {
            let (_, fs) = factor_univariate(&UPoly::from_poly(p, 0));
            fs.into_iter()
                .map(|(f, m)| (f.to_poly(p.vars(), 0), m))
                .collect()
        }
        2 => factor_bivariate(p)?,
        3 => {
            if !p.is_homogeneous() {
                return Err(ArithError::Unsupported(
                    "trivariate factorization requires a homogeneous polynomial".into(),
                ));
            }
            factor_homogeneous(p)?
        }
        _ => unreachable!(),
    };
    factors.sort();
    let mut lc = Rat::one();
    for (f, m) in &factors {
        lc *= num_traits::pow(f.lead_coeff(), *m as usize);
    }
    Ok(Factorization {
        unit: p.lead_coeff() / lc,
        factors,
    })
}

fn factor_homogeneous(p: &Poly) -> Result<Vec<(Poly, u32)>, ArithError> {
    let affine = dehomogenize(p, Chart::Z);
    let z_power = p.total_degree() - affine.total_degree();
    let mut out = Vec::new();
    if !affine.is_constant() {
        for (f, m) in factor_bivariate(&affine)? {
            out.push((homogenize(&f, None)?.normalized(), m));
        }
    }
    if z_power > 0 {
        out.push((Poly::var(p.vars(), 2), z_power));
    }
    Ok(out)
}

fn factor_bivariate(p: &Poly) -> Result<Vec<(Poly, u32)>, ArithError> {
    let mut out = Vec::new();
    for (part, m) in squarefree_decomposition(p)?.parts {
        for f in factor_squarefree_bivariate(&part) {
            out.push((f, m));
        }
    }
    Ok(out)
}

fn univariate_factors(p: &Poly, var: usize) -> Vec<Poly> {
    let (_, fs) = factor_univariate(&UPoly::from_poly(p, var));
    fs.into_iter()
        .map(|(f, m)| {
            debug_assert_eq!(m, 1);
            f.to_poly(p.vars(), var).normalized()
        })
        .collect()
}

fn factor_squarefree_bivariate(f: &Poly) -> Vec<Poly> {
    if f.is_constant() {
        return Vec::new();
    }
    if !f.uses_var(1) {
        return univariate_factors(f, 0);
    }
    if !f.uses_var(0) {
        return univariate_factors(f, 1);
    }
    let c = content_in(f, 1);
    let pp = f.div_exact(&c).expect("content divides");
    let mut out = Vec::new();
    if !c.is_constant() {
        out.extend(univariate_factors(&c, 0));
    }
    out.extend(hensel_bivariate(&pp));
    out
}

/// Truncated power series in `x` with coefficients in `Q[y]`.
type Series = Vec<UPoly>;

fn series_of(p: &Poly) -> Series {
    p.to_univariate(0)
        .iter()
        .map(|c| UPoly::from_poly(c, 1))
        .collect()
}

fn poly_of(s: &[UPoly], vars: &Vars) -> Poly {
    let mut out = Poly::zero(vars);
    for (i, c) in s.iter().enumerate() {
        for (j, a) in c.coeffs().iter().enumerate() {
            out = &out
                + &Poly::monomial(vars, Monomial([i as u32, j as u32, 0]), a.clone());
        }
    }
    out
}

fn series_mul(a: &[UPoly], b: &[UPoly], prec: usize) -> Series {
    let mut out = vec![UPoly::zero(); prec];
    for (i, ai) in a.iter().enumerate().take(prec) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j >= prec {
                break;
            }
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    out
}

/// Inverse of a univariate power series with nonzero constant term.
fn scalar_series_inverse(l: &UPoly, prec: usize) -> Vec<Rat> {
    let l0_inv = l.coeff(0).recip();
    let mut inv = vec![Rat::zero(); prec];
    inv[0] = l0_inv.clone();
    for m in 1..prec {
        let mut acc = Rat::zero();
        for i in 1..=m {
            acc += l.coeff(i) * &inv[m - i];
        }
        inv[m] = -acc * &l0_inv;
    }
    inv
}

fn evaluation_points() -> impl Iterator<Item = Rat> {
    (0..60i64).map(|k| if k % 2 == 0 { rat(k / 2) } else { rat(-(k + 1) / 2) })
}

/// Factor `f`, primitive and squarefree as a polynomial in `y` over `Q[x]`.
fn hensel_bivariate(f: &Poly) -> Vec<Poly> {
    let vars = f.vars().clone();
    let n = f.degree_in(1) as usize;
    if n == 1 {
        return vec![f.normalized()];
    }
    let coeffs_y = f.to_univariate(1);
    let lc_y = UPoly::from_poly(&coeffs_y[n], 0);
    let a = evaluation_points()
        .find(|a| {
            !lc_y.eval(a).is_zero() && UPoly::from_poly(&f.substitute(0, a), 1).is_squarefree()
        })
        .expect("a squarefree specialization exists among small integers");
    let image = UPoly::from_poly(&f.substitute(0, &a), 1);
    let (_, image_factors) = factor_univariate(&image);
    if image_factors.len() == 1 {
        return vec![f.normalized()];
    }
    let x = Poly::var(&vars, 0);
    let y = Poly::var(&vars, 1);
    let shift = |p: &Poly, by: &Rat| p.compose(&[&x + &Poly::constant(&vars, by.clone()), y.clone()]);
    let g = shift(f, &a);
    let prec = g.degree_in(0) as usize + 1;

    let monic_factors: Vec<UPoly> = image_factors.iter().map(|(h, _)| h.monic()).collect();
    let lifted = lift_factors(&g, &monic_factors, prec);

    let mut found = Vec::new();
    let mut rest = g;
    let mut pool = lifted;
    let mut size = 1;
    'outer: while 2 * size <= pool.len() {
        for subset in combinations(pool.len(), size) {
            let lc_rest = UPoly::from_poly(&rest.to_univariate(1)[rest.degree_in(1) as usize], 0);
            let mut cand: Series = vec![UPoly::zero(); prec];
            for (i, c) in lc_rest.coeffs().iter().enumerate().take(prec) {
                cand[i] = UPoly::constant(c.clone());
            }
            for &i in &subset {
                cand = series_mul(&cand, &pool[i], prec);
            }
            let cand = primitive_part_in(&poly_of(&cand, &vars), 1);
            if cand.degree_in(1) == 0 {
                continue;
            }
            if let Some(q) = rest.div_exact(&cand) {
                found.push(cand);
                rest = q;
                pool = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, s)| s)
                    .collect();
                continue 'outer;
            }
        }
        size += 1;
    }
    if rest.degree_in(1) > 0 {
        found.push(primitive_part_in(&rest, 1));
    }
    let back = -a;
    found.iter().map(|h| shift(h, &back).normalized()).collect()
}

/// Lift the monic factorization of `g(0, y)` to `g / lc_y(g) mod x^prec`.
fn lift_factors(g: &Poly, factors: &[UPoly], prec: usize) -> Vec<Series> {
    let n = g.degree_in(1) as usize;
    let lc_y = UPoly::from_poly(&g.to_univariate(1)[n], 0);
    let lc_inv = scalar_series_inverse(&lc_y, prec);
    let gs = series_of(g);
    let mut target: Series = vec![UPoly::zero(); prec];
    for (i, gi) in gs.iter().enumerate().take(prec) {
        for (j, c) in lc_inv.iter().enumerate() {
            if i + j >= prec {
                break;
            }
            target[i + j] = target[i + j].add(&gi.scale(c));
        }
    }
    debug_assert_eq!(
        factors.iter().fold(UPoly::one(), |acc, h| acc.mul(h)),
        target[0]
    );
    let cofactor_inverses: Vec<UPoly> = (0..factors.len())
        .map(|i| {
            let others = factors
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(UPoly::one(), |acc, (_, h)| acc.mul(h));
            others
                .inverse_mod(&factors[i])
                .expect("specialized factors are coprime")
        })
        .collect();
    let mut lifted: Vec<Series> = factors
        .iter()
        .map(|h| {
            let mut s = vec![UPoly::zero(); prec];
            s[0] = h.clone();
            s
        })
        .collect();
    for m in 1..prec {
        let mut prod: Series = vec![UPoly::zero(); m + 1];
        prod[0] = UPoly::one();
        for h in &lifted {
            prod = series_mul(&prod, h, m + 1);
        }
        let err = target[m].sub(&prod[m]);
        if err.is_zero() {
            continue;
        }
        for (i, h) in lifted.iter_mut().enumerate() {
            h[m] = err.mul(&cofactor_inverses[i]).rem(&factors[i]);
        }
    }
    lifted
}

/// Whether `p` is irreducible over Q (nonconstant inputs only).
pub fn is_irreducible(p: &Poly) -> Result<bool, ArithError> {
    if p.is_constant() {
        return Ok(false);
    }
    Ok(factor(p)?.is_irreducible())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> (Poly, Poly, Poly) {
        let v = Vars::affine();
        (Poly::var(&v, 0), Poly::var(&v, 1), Poly::one(&v))
    }

    #[test]
    fn difference_of_squares_splits() {
        let (x, y, _) = xy();
        let f = factor(&(&x.pow(2) - &y.pow(2))).unwrap();
        assert_eq!(f.factors, vec![(&x - &y, 1), (&x + &y, 1)]);
    }

    #[test]
    fn sum_of_squares_irreducible() {
        let (x, y, _) = xy();
        assert!(factor(&(&x.pow(2) + &y.pow(2))).unwrap().is_irreducible());
    }

    #[test]
    fn homogeneous_split() {
        let v = Vars::projective();
        let (xx, yy, zz) = (Poly::var(&v, 0), Poly::var(&v, 1), Poly::var(&v, 2));
        let p = &yy * &(&xx + &zz);
        let f = factor(&p).unwrap();
        let mut got: Vec<Poly> = f.factors.iter().map(|(g, _)| g.clone()).collect();
        got.sort();
        let mut want = vec![yy.clone(), &xx + &zz];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(f.expand(&v), p);
    }

    #[test]
    fn factor_needs_recombination() {
        let (x, y, one) = xy();
        // (y^2 - x)(y^2 - 2x - 1): each factor splits after x = 0 ... but not globally
        let a = &y.pow(2) - &x;
        let b = &(&y.pow(2) - &x.scale(&rat(2))) - &one;
        let p = &a * &b;
        let f = factor(&p).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.expand(x.vars()), p);
    }

    #[test]
    fn z_powers_and_multiplicities() {
        let v = Vars::projective();
        let (xx, yy, zz) = (Poly::var(&v, 0), Poly::var(&v, 1), Poly::var(&v, 2));
        let conic = &(&xx * &yy) - &zz.pow(2);
        let p = (&(&conic.pow(2) * &zz.pow(3)) * &yy).scale(&rat(-4));
        let f = factor(&p).unwrap();
        assert_eq!(f.expand(&v), p);
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.unit, rat(-4));
    }
}
