//! Passing between affine polynomials in `x, y` and homogeneous polynomials
//! in `X, Y, Z`.

use std::fmt;

use super::poly::{Monomial, Poly, Vars};
use super::ArithError;

/// Standard affine charts of P^2, named by the coordinate set to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Chart {
    Z,
    X,
    Y,
}

impl Chart {
    /// Index of the homogeneous coordinate that is 1 on this chart.
    pub fn unit_index(self) -> usize {
        match self {
            Chart::X => 0,
            Chart::Y => 1,
            Chart::Z => 2,
        }
    }

    /// Indices of the two remaining coordinates, in fixed order.
    pub fn affine_indices(self) -> [usize; 2] {
        match self {
            Chart::Z => [0, 1],
            Chart::X => [1, 2],
            Chart::Y => [0, 2],
        }
    }

    fn vars(self) -> Vars {
        match self {
            Chart::Z => Vars::affine(),
            Chart::X => Vars::new(&["y", "z"]),
            Chart::Y => Vars::new(&["x", "z"]),
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Chart::Z => "Z",
            Chart::X => "X",
            Chart::Y => "Y",
        };
        f.write_str(s)
    }
}

/// `F(X, Y, Z) = Z^d f(X/Z, Y/Z)` with `d = target_degree` (default: total
/// degree of `p`).
pub fn homogenize(p: &Poly, target_degree: Option<u32>) -> Result<Poly, ArithError> {
    if p.nvars() != 2 {
        return Err(ArithError::Unsupported(
            "homogenize expects a polynomial in two variables".into(),
        ));
    }
    let deg = p.total_degree();
    let d = target_degree.unwrap_or(deg);
    if d < deg {
        return Err(ArithError::Unsupported(format!(
            "target degree {d} below total degree {deg}"
        )));
    }
    let vars = Vars::projective();
    Ok(Poly::from_terms(
        &vars,
        p.terms().map(|(m, c)| {
            let (i, j) = (m.exp(0), m.exp(1));
            (Monomial([i, j, d - i - j]), c.clone())
        }),
    ))
}

/// Set the chart coordinate to 1. Chart `Z` gives a polynomial in `x, y`;
/// charts `X` and `Y` give polynomials in `y, z` and `x, z`.
pub fn dehomogenize(p: &Poly, chart: Chart) -> Poly {
    assert_eq!(p.nvars(), 3, "dehomogenize expects X, Y, Z");
    let [a, b] = chart.affine_indices();
    Poly::from_terms(
        &chart.vars(),
        p.terms()
            .map(|(m, c)| (Monomial([m.exp(a), m.exp(b), 0]), c.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;

    #[test]
    fn homogenize_examples() {
        let v = Vars::affine();
        let (x, y) = (Poly::var(&v, 0), Poly::var(&v, 1));
        let p = &y * &(&Poly::one(&v) + &x);
        let h = homogenize(&p, None).unwrap();
        let w = Vars::projective();
        let (xx, yy, zz) = (Poly::var(&w, 0), Poly::var(&w, 1), Poly::var(&w, 2));
        assert_eq!(h, &yy * &(&zz + &xx));
        assert_eq!(homogenize(&x, None).unwrap(), xx.clone());
        assert_eq!(homogenize(&x, Some(2)).unwrap(), &xx * &zz);
        assert!(homogenize(&p, Some(1)).is_err());
    }

    #[test]
    fn dehomogenize_chart_z() {
        let w = Vars::projective();
        let (xx, yy, zz) = (Poly::var(&w, 0), Poly::var(&w, 1), Poly::var(&w, 2));
        let p = &(&xx * &yy) - &zz.pow(2);
        let v = Vars::affine();
        let (x, y) = (Poly::var(&v, 0), Poly::var(&v, 1));
        assert_eq!(dehomogenize(&p, Chart::Z), &(&x * &y) - &Poly::from_int(&v, 1));
        let on_x = dehomogenize(&p, Chart::X);
        assert_eq!(on_x.eval(&[rat(2), rat(1)]), rat(1));
    }
}
