use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Poly, Rat, RationalFunction, Vars};

use super::{compose, gen_elementary, gen_monomial, gen_torus, is_symplectic_form, Axis, FormKind, RationalMap};

/// A generated map with the label its construction predicts, already
/// confirmed by the Jacobian test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub map: RationalMap,
    pub expected: bool,
    /// The generators, in the order they are applied.
    pub recipe: String,
}

const SPECIAL_LINEAR: [[[i64; 2]; 2]; 9] = [
    [[1, 1], [0, 1]],
    [[1, 0], [1, 1]],
    [[1, -1], [0, 1]],
    [[1, 0], [-1, 1]],
    [[0, 1], [-1, 0]],
    [[0, -1], [1, 0]],
    [[-1, 0], [0, -1]],
    [[2, 1], [1, 1]],
    [[1, 1], [1, 2]],
];

/// Exponent matrices whose determinant is not 1.
const OFF_DETERMINANT: [[[i64; 2]; 2]; 7] = [
    [[2, 0], [0, 1]],
    [[1, 0], [0, 2]],
    [[0, 1], [1, 0]],
    [[1, 0], [0, -1]],
    [[1, 1], [-1, 2]],
    [[2, 1], [0, -1]],
    [[1, 1], [1, -1]],
];

const MAX_DRAWS: usize = 200;

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let n: i64 = rng.gen_range(-4..=4);
        let d: i64 = *[1, 1, 1, 2, 3].choose(rng).unwrap();
        if n != 0 {
            return Rat::new(n.into(), d.into());
        }
    }
}

/// `c (t + a)` or `c (t + a)/(t + b)` or `c (t^2 + a t + b)` in the variable `t`.
fn univariate_factor(rng: &mut ChaCha8Rng, var: usize) -> RationalFunction {
    let v = Vars::affine();
    let t = Poly::var(&v, var);
    let lin = |a: Rat| &t + &Poly::constant(&v, a);
    let c = Poly::constant(&v, small_rat(rng));
    match rng.gen_range(0..3) {
        0 => RationalFunction::from_poly(&c * &lin(small_rat(rng))),
        1 => {
            let (a, b) = (small_rat(rng), small_rat(rng));
            if a == b {
                return RationalFunction::from_poly(&c * &lin(a));
            }
            RationalFunction::new(&c * &lin(a), lin(b)).expect("nonzero denominator")
        }
        _ => {
            let q = &(&t.pow(2) + &t.scale(&small_rat(rng))) + &Poly::constant(&v, small_rat(rng));
            RationalFunction::from_poly(&c * &q)
        }
    }
}

fn symplectic_piece(rng: &mut ChaCha8Rng) -> (RationalMap, String) {
    match rng.gen_range(0..3) {
        0 => {
            let (a, b) = (small_rat(rng), small_rat(rng));
            (gen_torus(&a, &b).unwrap(), format!("torus({a}, {b})"))
        }
        1 => {
            let m = *SPECIAL_LINEAR.choose(rng).unwrap();
            (gen_monomial(m).unwrap(), format!("monomial({m:?})"))
        }
        _ => {
            let axis = if rng.gen_bool(0.5) { Axis::Vertical } else { Axis::Horizontal };
            let var = if axis == Axis::Vertical { 0 } else { 1 };
            let p = univariate_factor(rng, var);
            let name = if axis == Axis::Vertical { "vertical" } else { "horizontal" };
            (gen_elementary(&p, axis).unwrap(), format!("elementary({p}, {name})"))
        }
    }
}

fn perturbation(rng: &mut ChaCha8Rng) -> (RationalMap, String) {
    let (x, y) = (RationalFunction::x(), RationalFunction::y());
    match rng.gen_range(0..4) {
        0 => {
            let m = *OFF_DETERMINANT.choose(rng).unwrap();
            (gen_monomial(m).unwrap(), format!("monomial({m:?})"))
        }
        1 => {
            let c = RationalFunction::constant(small_rat(rng));
            if rng.gen_bool(0.5) {
                (RationalMap::new(x.add(&c), y).unwrap(), format!("translate(x + {c})"))
            } else {
                (RationalMap::new(x, y.add(&c)).unwrap(), format!("translate(y + {c})"))
            }
        }
        2 => {
            if rng.gen_bool(0.5) {
                (RationalMap::new(x.add(&y), y).unwrap(), "shear(x + y, y)".into())
            } else {
                let sq = x.mul(&x);
                (RationalMap::new(x, y.add(&sq)).unwrap(), "shear(x, y + x^2)".into())
            }
        }
        _ => {
            let (a, b) = (small_rat(rng), small_rat(rng));
            let xy = x.mul(&y);
            (
                RationalMap::new(x.scale(&a), xy.scale(&b)).unwrap(),
                format!("monomial_scaled({a} x, {b} x*y)"),
            )
        }
    }
}

fn chain(pieces: &[(RationalMap, String)]) -> Option<(RationalMap, String)> {
    let mut map = RationalMap::identity();
    for (p, _) in pieces {
        map = compose(&map, p).ok()?;
    }
    let recipe = pieces.iter().map(|(_, r)| r.as_str()).collect::<Vec<_>>().join(" then ");
    Some((map, recipe))
}

fn draw(rng: &mut ChaCha8Rng, expected: bool, max_degree: u32) -> Option<CorpusEntry> {
    for _ in 0..MAX_DRAWS {
        let len = rng.gen_range(1..=3);
        let mut pieces: Vec<_> = (0..len).map(|_| symplectic_piece(rng)).collect();
        if !expected {
            let at = rng.gen_range(0..=pieces.len());
            pieces.insert(at, perturbation(rng));
        }
        let Some((map, recipe)) = chain(&pieces) else { continue };
        if map.degree() > max_degree {
            continue;
        }
        let Ok(verdict) = is_symplectic_form(&map) else { continue };
        // labels are only kept once the Jacobian test confirms them
        if (verdict.kind == FormKind::Preserves) == expected {
            return Some(CorpusEntry { map, expected, recipe });
        }
    }
    None
}

/// Seeded mixture of compositions of form-preserving generators (even
/// positions, expected `true`) and of compositions containing one
/// perturbation (odd positions, expected `false`). Every map is dominant
/// with coordinate degrees at most `max_degree`.
pub fn gen_corpus(seed: u64, count: usize, max_degree: u32) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let expected = i % 2 == 0;
        let entry = draw(&mut rng, expected, max_degree.max(1)).unwrap_or_else(|| {
            let map = if expected {
                RationalMap::identity()
            } else {
                gen_monomial([[2, 0], [0, 1]]).unwrap()
            };
            let recipe = if expected { "identity" } else { "monomial([[2, 0], [0, 1]])" };
            CorpusEntry { map, expected, recipe: recipe.into() }
        });
        out.push(entry);
    }
    out
}
