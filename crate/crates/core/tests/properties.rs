//! Algebraic invariants under random inputs.

use proptest::prelude::*;

use tamesym::arith::{
    dehomogenize, factor, gcd, homogenize, rat, resultant, squarefree_decomposition, Chart, Monomial, Poly,
    RationalFunction, Vars,
};
use tamesym::expr::parse_rational_function;
use tamesym::geom::{intersection_cycle, principal_divisor, Curve, Shear};
use tamesym::symplectic::{compose, log_jacobian_ratio, RationalMap};

/// Nonzero polynomial in `x, y` of total degree at most `d`.
fn poly(d: u32) -> impl Strategy<Value = Poly> {
    let terms = prop::collection::vec(((0..=d), (0..=d), -4i64..=4), 1..6);
    terms
        .prop_map(move |ts| {
            let v = Vars::affine();
            Poly::from_terms(
                &v,
                ts.into_iter()
                    .filter(|(i, j, _)| i + j <= d)
                    .map(|(i, j, c)| (Monomial([i, j, 0]), rat(c))),
            )
        })
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn nonconstant(d: u32) -> impl Strategy<Value = Poly> {
    poly(d).prop_filter("nonconstant", |p| !p.is_constant())
}

fn function(d: u32) -> impl Strategy<Value = RationalFunction> {
    (nonconstant(d), poly(d))
        .prop_map(|(n, m)| RationalFunction::new(n, m).unwrap())
        .prop_filter("nonconstant", |f| !f.is_constant())
}

/// An irreducible form of degree at most `d`.
fn curve(d: u32) -> impl Strategy<Value = Curve> {
    nonconstant(d).prop_filter_map("irreducible", |p| Curve::new(&homogenize(&p, None).ok()?).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorization_expands_back(p in nonconstant(3), q in nonconstant(3)) {
        let prod = &p * &q;
        let f = factor(&prod).unwrap();
        prop_assert_eq!(f.expand(prod.vars()), prod);
        for (g, _) in &f.factors {
            prop_assert!(factor(g).unwrap().is_irreducible());
        }
    }

    #[test]
    fn gcd_scales_with_common_factor(p in poly(3), q in poly(3), r in nonconstant(2)) {
        let lhs = gcd(&(&p * &r), &(&q * &r));
        let rhs = (&r * &gcd(&p, &q)).normalized();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_vanishes_exactly_on_common_factors(p in nonconstant(3), q in nonconstant(3)) {
        prop_assume!(p.uses_var(1) && q.uses_var(1));
        // a shared factor free of y only scales the resultant
        let shared = gcd(&p, &q).uses_var(1);
        prop_assert_eq!(resultant(&p, &q, 1).unwrap().is_zero(), shared);
    }

    #[test]
    fn squarefree_parts_are_coprime(p in nonconstant(2), q in nonconstant(2)) {
        let f = &(&p * &p) * &q;
        let sq = squarefree_decomposition(&f).unwrap();
        let mut back = Poly::constant(f.vars(), sq.unit.clone());
        for (a, m) in &sq.parts {
            back = &back * &a.pow(*m);
        }
        prop_assert_eq!(back, f);
        for (i, (a, _)) in sq.parts.iter().enumerate() {
            for (b, _) in &sq.parts[i + 1..] {
                prop_assert!(gcd(a, b).is_constant());
            }
        }
    }

    #[test]
    fn homogenize_then_dehomogenize(p in poly(4), extra in 0u32..3) {
        let d = p.total_degree() + extra;
        let h = homogenize(&p, Some(d)).unwrap();
        prop_assert!(h.is_homogeneous());
        prop_assert_eq!(h.total_degree(), d);
        prop_assert_eq!(dehomogenize(&h, Chart::Z), p);
    }

    #[test]
    fn principal_divisors_add(f in function(2), g in function(2)) {
        let (df, dg) = (principal_divisor(&f).unwrap(), principal_divisor(&g).unwrap());
        prop_assert_eq!(df.degree(), 0);
        let fg = f.mul(&g);
        prop_assume!(!fg.is_constant());
        prop_assert_eq!(principal_divisor(&fg).unwrap(), df.add(&dg));
    }

    #[test]
    fn printing_round_trips(f in function(3)) {
        prop_assert_eq!(parse_rational_function(&f.to_string()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn intersection_is_symmetric_and_frame_free(c in curve(3), d in curve(3), s in 0u64..1000) {
        prop_assume!(c != d);
        let a = intersection_cycle(&c, &d, &Shear::from_seed(s)).unwrap();
        let b = intersection_cycle(&d, &c, &Shear::from_seed(s + 1)).unwrap();
        prop_assert_eq!(a.degree(), (c.degree() * d.degree()) as i64);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn jacobian_ratio_is_a_cocycle(f in function(2), g in function(2), h in function(1), k in function(1)) {
        // ratio(psi o phi) = ratio(phi) * (ratio(psi) o phi)
        let (Ok(phi), Ok(psi)) = (RationalMap::new(f, g), RationalMap::new(h, k)) else {
            return Ok(());
        };
        let Ok(both) = compose(&phi, &psi) else {
            return Ok(());
        };
        let Ok(r) = log_jacobian_ratio(&both) else {
            return Ok(());
        };
        let outer = log_jacobian_ratio(&psi).unwrap().compose(&[phi.f().clone(), phi.g().clone()]).unwrap();
        prop_assert_eq!(r, log_jacobian_ratio(&phi).unwrap().mul(&outer));
    }
}
