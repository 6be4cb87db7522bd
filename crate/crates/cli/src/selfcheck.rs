//! The invariant suite behind `tamesym selfcheck`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tamesym::arith::{factor, rat, Monomial, Poly, RationalFunction, Vars};
use tamesym::geom::{cycle_restrict_affine, intersection_cycle, Curve, Intersector};
use tamesym::ktheory::{equals, reference_symbol, tame_add, tame_negate, tame_of_functions, TameElement};
use tamesym::symplectic::{check_map, gen_corpus};
use tamesym::Shear;

use crate::report::{InvariantTally, SelfcheckReport};

const MAX_LISTED: usize = 3;

struct Tally(InvariantTally);

impl Tally {
    fn new(name: &'static str) -> Tally {
        Tally(InvariantTally {
            name,
            passed: 0,
            failed: 0,
            failures: Vec::new(),
        })
    }

    fn record(&mut self, ok: Result<bool, String>, what: impl FnOnce() -> String) {
        match ok {
            Ok(true) => self.0.passed += 1,
            Ok(false) => self.fail(what()),
            Err(e) => self.fail(format!("{}: {e}", what())),
        }
    }

    fn fail(&mut self, msg: String) {
        self.0.failed += 1;
        if self.0.failures.len() < MAX_LISTED {
            self.0.failures.push(msg);
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, max_degree: u32) -> Poly {
    let v = Vars::affine();
    loop {
        let d = rng.gen_range(1..=max_degree);
        let mut terms = Vec::new();
        for i in 0..=d {
            for j in 0..=(d - i) {
                if rng.gen_bool(0.5) {
                    terms.push((Monomial([i, j, 0]), rat(rng.gen_range(-4..=4))));
                }
            }
        }
        let p = Poly::from_terms(&v, terms);
        if !p.is_constant() {
            return p;
        }
    }
}

fn random_function(rng: &mut ChaCha8Rng, max_degree: u32) -> RationalFunction {
    loop {
        let num = random_poly(rng, max_degree);
        let f = if rng.gen_bool(0.5) {
            RationalFunction::from_poly(num)
        } else {
            match RationalFunction::new(num, random_poly(rng, max_degree)) {
                Ok(f) => f,
                Err(_) => continue,
            }
        };
        if !f.is_constant() {
            return f;
        }
    }
}

fn random_form(rng: &mut ChaCha8Rng, max_degree: u32) -> Curve {
    let v = Vars::projective();
    loop {
        let d = rng.gen_range(1..=max_degree);
        let mut terms = Vec::new();
        for i in 0..=d {
            for j in 0..=(d - i) {
                if rng.gen_bool(0.6) {
                    terms.push((Monomial([i, j, d - i - j]), rat(rng.gen_range(-3..=3))));
                }
            }
        }
        if let Ok(c) = Curve::new(&Poly::from_terms(&v, terms)) {
            return c;
        }
    }
}

fn tame(ix: &mut Intersector, f: &RationalFunction, g: &RationalFunction) -> Result<TameElement, String> {
    tame_of_functions(ix, f, g).map_err(|e| e.to_string())
}

/// Runs every invariant `trials` times on inputs drawn from `seed`.
pub fn run(seed: u64, trials: usize, max_degree: u32) -> SelfcheckReport {
    let shear = Shear::from_seed(seed);
    let mut ix = Intersector::new(&shear);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut reference = Tally::new("reference symbol {x, y}");
    reference.record(
        reference_symbol(&shear)
            .map(|t| {
                let mut labels: Vec<String> = t.support().map(|c| c.label()).collect();
                labels.sort();
                labels == ["l_h", "l_v"]
            })
            .map_err(|e| e.to_string()),
        || "support is not {l_h, l_v}".into(),
    );

    let mut steinberg = Tally::new("Steinberg {f, 1 - f} = 0");
    let mut bilinear = Tally::new("bilinearity");
    let mut antisym = Tally::new("antisymmetry");
    let mut gersten = Tally::new("Gersten kernel");
    let mut bezout = Tally::new("Bezout");
    let mut factoring = Tally::new("factorization round trip");
    for _ in 0..trials {
        let f = random_function(&mut rng, max_degree);
        let one_minus = RationalFunction::one().sub(&f);
        if !one_minus.is_constant() {
            steinberg.record(tame(&mut ix, &f, &one_minus).map(|t| t.is_empty()), || format!("f = {f}"));
        }

        let (a, b, g) = (
            random_function(&mut rng, max_degree),
            random_function(&mut rng, max_degree),
            random_function(&mut rng, max_degree),
        );
        let lhs = tame(&mut ix, &a.mul(&b), &g);
        let rhs = tame(&mut ix, &a, &g).and_then(|x| Ok(tame_add(&x, &tame(&mut ix, &b, &g)?)));
        let same = lhs.and_then(|l| equals(&l, &rhs?).map_err(|e| e.to_string()));
        bilinear.record(same, || format!("({a}) * ({b}) against {g}"));
        let swapped = tame(&mut ix, &g, &a).and_then(|t| {
            let t2 = tame(&mut ix, &a, &g)?;
            equals(&tame_negate(&t), &t2).map_err(|e| e.to_string())
        });
        antisym.record(swapped, || format!("{a} and {g}"));

        let check = tame(&mut ix, &a, &g).map(|t| {
            t.components().all(|(_, z)| z.degree() == 0) && cycle_restrict_affine(&t.total_cycle()).is_zero()
        });
        gersten.record(check, || format!("{a} and {g}"));

        let (c, d) = (random_form(&mut rng, max_degree), random_form(&mut rng, max_degree));
        if c != d {
            let want = (c.degree() * d.degree()) as i64;
            bezout.record(
                intersection_cycle(&c, &d, &shear)
                    .map(|z| z.degree() == want)
                    .map_err(|e| e.to_string()),
                || format!("{c} and {d}"),
            );
        }

        let p = &random_poly(&mut rng, max_degree) * &random_poly(&mut rng, max_degree);
        factoring.record(
            factor(&p).map(|fz| fz.expand(p.vars()) == p).map_err(|e| e.to_string()),
            || p.to_string(),
        );
    }

    let mut cross = Tally::new("verdicts agree on corpus");
    for e in gen_corpus(seed, trials, max_degree) {
        cross.record(
            check_map(&e.map, &shear)
                .map(|c| c.agree() && c.k2 == e.expected)
                .map_err(|err| err.to_string()),
            || e.map.to_string(),
        );
    }

    let invariants: Vec<InvariantTally> = [reference, steinberg, bilinear, antisym, gersten, bezout, factoring, cross]
        .into_iter()
        .map(|t| t.0)
        .collect();
    let passed = invariants.iter().all(|t| t.failed == 0);
    SelfcheckReport {
        seed,
        trials,
        invariants,
        passed,
    }
}
