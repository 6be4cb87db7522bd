//! Maps: the base-locus criterion with its sign, and fiber counts of
//! monomial maps against a count of torus kernels.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tamesym::analysis::{prop6_verify, Orientation};
use tamesym::arith::rat;
use tamesym::expr::parse_map;
use tamesym::geom::{Curve, Divisor, Shear};
use tamesym::symplectic::{fiber_count_with_redraws, gen_monomial};

use common::torus_kernel_order;

fn line_minus_infinity(line: Curve, sign: i64) -> Divisor {
    Divisor::from_terms([(line, sign), (Curve::l_inf(), -sign)])
}

#[test]
fn shapes_hold_up_to_sign() {
    let s = Shear::from_seed(12);
    // every map here preserves the form and meets all hypotheses
    let cases = [
        ("(x, y)", Orientation::Swapped, 1, 1),
        ("(2*x, -3*y)", Orientation::Swapped, 1, 1),
        ("(y, 1/x)", Orientation::Standard, 1, -1),
        ("(1/x, 1/y)", Orientation::Swapped, -1, -1),
        ("(1/y, x)", Orientation::Standard, -1, 1),
        ("(2*y, 3/x)", Orientation::Standard, 1, -1),
    ];
    for (text, orientation, sd, se) in cases {
        let r = prop6_verify(&parse_map(text).unwrap(), &s).unwrap();
        assert!(r.hypotheses.all_hold(), "{text}");
        assert_eq!(r.hypotheses.orientation, Some(orientation), "{text}");
        let (a, b) = match orientation {
            Orientation::Standard => (Curve::l_h(), Curve::l_v()),
            Orientation::Swapped => (Curve::l_v(), Curve::l_h()),
        };
        assert_eq!(r.d, line_minus_infinity(a, sd), "{text}");
        assert_eq!(r.e, line_minus_infinity(b, se), "{text}");
    }
}

#[test]
fn negative_signs_are_reported_as_violations() {
    // (y, 1/x) preserves the form, yet E = l_inf - l_v
    let r = prop6_verify(&parse_map("(y, 1/x)").unwrap(), &Shear::from_seed(2)).unwrap();
    assert!(r.hypotheses.tame_preserved && r.is_violation());
    let r = prop6_verify(&parse_map("(3*x, y/5)").unwrap(), &Shear::from_seed(2)).unwrap();
    assert!(r.conclusion_holds && r.torus_form && !r.is_violation());
}

#[test]
fn failed_hypotheses_are_not_violations() {
    let s = Shear::from_seed(4);
    for text in ["(x*y, y)", "(x + 1, y)", "(x^2, y)", "(x, y + x^2)"] {
        let r = prop6_verify(&parse_map(text).unwrap(), &s).unwrap();
        assert!(!r.is_violation(), "{text}");
    }
}

#[test]
fn monomial_fibers_match_torus_kernels() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let s = Shear::from_seed(40);
    let mut tested = 0;
    while tested < 6 {
        let m: [[i64; 2]; 2] = [
            [rng.gen_range(-3..=3), rng.gen_range(-3..=3)],
            [rng.gen_range(-3..=3), rng.gen_range(-3..=3)],
        ];
        if m[0][0] * m[1][1] == m[0][1] * m[1][0] {
            continue;
        }
        let phi = gen_monomial(m).unwrap();
        let want = torus_kernel_order(m);
        for (target, fc, _) in fiber_count_with_redraws(&phi, tested, 3, &s).unwrap() {
            assert!(fc.is_generic(), "{m:?} at {target:?}");
            assert_eq!(fc.count, want, "{m:?} at {target:?}");
        }
        tested += 1;
    }
    assert_eq!(rat(torus_kernel_order([[2, 0], [0, 3]]) as i64), rat(6));
}
