//! Multivariate gcd and resultants via subresultant polynomial remainder
//! sequences, with recursive content stripping.

use super::modgcd::bivariate_gcd;
use super::poly::Poly;
use super::ArithError;

type Coeffs = Vec<Poly>;

fn trim(c: &mut Coeffs) {
    while c.last().is_some_and(|p| p.is_zero()) {
        c.pop();
    }
}

fn deg(c: &[Poly]) -> usize {
    c.len() - 1
}

fn main_var(p: &Poly, q: &Poly) -> Option<usize> {
    (0..p.nvars()).find(|&i| p.uses_var(i) || q.uses_var(i))
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b` on coefficient vectors.
fn prem(a: &[Poly], b: &[Poly]) -> Coeffs {
    let m = deg(b);
    if a.len() <= m {
        return a.to_vec();
    }
    let lb = &b[m];
    let mut r = a.to_vec();
    let mut e = (deg(a) - m + 1) as u32;
    while !r.is_empty() && deg(&r) >= m {
        let d = deg(&r);
        let lr = r[d].clone();
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (j, bj) in b.iter().enumerate() {
            let k = j + d - m;
            r[k] = &r[k] - &(&lr * bj);
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn div_coeffs(c: &[Poly], d: &Poly) -> Coeffs {
    c.iter()
        .map(|p| p.div_exact(d).expect("subresultant division must be exact"))
        .collect()
}

fn content_of(c: &[Poly]) -> Poly {
    let mut g = c[0].clone();
    for p in &c[1..] {
        if g.is_constant() && !g.is_zero() {
            break;
        }
        g = gcd_raw(&g, p);
    }
    g.normalized()
}

/// Content of `p` viewed as a polynomial in variable `var`: the gcd of its
/// coefficients, a polynomial not involving `var`.
pub fn content_in(p: &Poly, var: usize) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    content_of(&p.to_univariate(var))
}

/// Primitive part of `p` with respect to `var`, normalized.
pub fn primitive_part_in(p: &Poly, var: usize) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, var);
    p.div_exact(&c).expect("content divides").normalized()
}

fn gcd_raw(p: &Poly, q: &Poly) -> Poly {
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    if p.is_constant() || q.is_constant() {
        return Poly::one(p.vars());
    }
    let v = main_var(p, q).expect("nonconstant");
    let a = p.to_univariate(v);
    let b = q.to_univariate(v);
    let ca = content_of(&a);
    let cb = content_of(&b);
    let c = gcd_raw(&ca, &cb);
    if a.len() == 1 || b.len() == 1 {
        return c;
    }
    let a = div_coeffs(&a, &ca);
    let b = div_coeffs(&b, &cb);
    let others: Vec<usize> = (0..p.nvars()).filter(|&i| i != v && (p.uses_var(i) || q.uses_var(i))).collect();
    let g = match others[..] {
        [w] => bivariate_gcd(&a, &b, v, w),
        _ => subresultant_gcd(a, b),
    };
    let g = Poly::from_univariate(p.vars(), v, &g);
    (&c * &g).normalized()
}

/// Cohen, Algorithm 3.3.1, on primitive inputs of positive degree.
fn subresultant_gcd(mut a: Coeffs, mut b: Coeffs) -> Coeffs {
    if deg(&b) > deg(&a) {
        std::mem::swap(&mut a, &mut b);
    }
    let vars = a[0].vars().clone();
    let mut g = Poly::one(&vars);
    let mut h = Poly::one(&vars);
    loop {
        let delta = (deg(&a) - deg(&b)) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            break;
        }
        if deg(&r) == 0 {
            return vec![Poly::one(&vars)];
        }
        a = b;
        let divisor = &g * &h.pow(delta);
        b = div_coeffs(&r, &divisor);
        g = a[deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant h update is exact")
        };
    }
    let c = content_of(&b);
    div_coeffs(&b, &c)
}

/// Greatest common divisor, normalized to a primitive integer polynomial with
/// positive lead coefficient. `gcd(p, 0)` is `p` normalized.
pub fn gcd(p: &Poly, q: &Poly) -> Poly {
    assert_eq!(p.vars(), q.vars(), "polynomial variable sets differ");
    gcd_raw(p, q).normalized()
}

/// Sylvester resultant of `p` and `q` with respect to variable `var`
/// (Cohen, Algorithm 3.3.7).
pub fn resultant(p: &Poly, q: &Poly, var: usize) -> Result<Poly, ArithError> {
    resultant_with_chain(p, q, var).map(|(r, _)| r)
}

/// The resultant together with the remainders of positive degree met along
/// the way. Each remainder lies in the ideal generated by the primitive parts
/// of `p` and `q` in `var`.
pub(crate) fn resultant_with_chain(p: &Poly, q: &Poly, var: usize) -> Result<(Poly, Vec<Poly>), ArithError> {
    assert_eq!(p.vars(), q.vars(), "polynomial variable sets differ");
    let vars = p.vars().clone();
    if p.is_zero() && q.is_zero() {
        return Err(ArithError::ZeroInput("resultant"));
    }
    if p.is_zero() || q.is_zero() {
        return Ok((Poly::zero(&vars), Vec::new()));
    }
    let mut a = p.to_univariate(var);
    let mut b = q.to_univariate(var);
    if deg(&b) == 0 {
        return Ok((b[0].pow(deg(&a) as u32), Vec::new()));
    }
    if deg(&a) == 0 {
        return Ok((a[0].pow(deg(&b) as u32), Vec::new()));
    }
    let mut chain = Vec::new();
    let ca = content_of(&a);
    let cb = content_of(&b);
    a = div_coeffs(&a, &ca);
    b = div_coeffs(&b, &cb);
    let mut sign = 1i32;
    let t = &ca.pow(deg(&b) as u32) * &cb.pow(deg(&a) as u32);
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -1;
        }
    }
    let mut g = Poly::one(&vars);
    let mut h = Poly::one(&vars);
    loop {
        let delta = (deg(&a) - deg(&b)) as u32;
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -sign;
        }
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            return Ok((Poly::zero(&vars), chain));
        }
        let divisor = &g * &h.pow(delta);
        b = div_coeffs(&r, &divisor);
        g = a[deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant h update is exact")
        };
        if deg(&b) == 0 {
            break;
        }
        chain.push(Poly::from_univariate(&vars, var, &b));
    }
    let da = deg(&a) as u32;
    let lb = b[0].clone();
    let hfinal = if da == 0 {
        h
    } else {
        lb.pow(da)
            .div_exact(&h.pow(da - 1))
            .expect("final subresultant step is exact")
    };
    let out = &t * &hfinal;
    Ok((if sign < 0 { -&out } else { out }, chain))
}

/// Whether `d` divides `p` exactly.
pub fn divides(d: &Poly, p: &Poly) -> bool {
    p.div_exact(d).is_some()
}

/// Least common multiple, normalized.
pub fn lcm(p: &Poly, q: &Poly) -> Poly {
    if p.is_zero() || q.is_zero() {
        return Poly::zero(p.vars());
    }
    let g = gcd(p, q);
    (p * q).div_exact(&g).expect("gcd divides").normalized()
}
