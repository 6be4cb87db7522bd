use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{gcd, homogenize, Poly, Rat};
use crate::geom::{raw_intersection, Shear};

use super::{RationalMap, SymplecticError};

/// Size of the fiber `phi^-1(a, b)` away from the indeterminacy and polar
/// loci, with flags that mark a target as non-generic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCount {
    /// Geometric points, each orbit counted with its degree.
    pub count: u64,
    /// Some solution has intersection multiplicity above one.
    pub nonreduced: bool,
    /// `f - a` and `g - b` shared a factor, removed before counting.
    pub removed_components: bool,
}

impl FiberCount {
    pub fn is_generic(&self) -> bool {
        !self.nonreduced && !self.removed_components
    }
}

/// Counts solutions of `f = a, g = b` in the affine plane where neither
/// denominator vanishes.
pub fn fiber_count(phi: &RationalMap, target: (&Rat, &Rat), shear: &Shear) -> Result<FiberCount, SymplecticError> {
    let (f, g) = (phi.f(), phi.g());
    let mut p = f.numerator() - &f.denominator().scale(target.0);
    let mut q = g.numerator() - &g.denominator().scale(target.1);
    let mut removed_components = false;
    let common = gcd(&p, &q);
    if !common.is_constant() {
        removed_components = true;
        p = p.div_exact(&common).expect("gcd divides");
        q = q.div_exact(&common).expect("gcd divides");
    }
    if p.is_zero() || q.is_zero() {
        return Err(SymplecticError::NotZeroDimensional);
    }
    let mut out = FiberCount {
        count: 0,
        nonreduced: false,
        removed_components,
    };
    if p.is_constant() || q.is_constant() {
        return Ok(out);
    }
    let (ph, qh) = (homogenize(&p, None)?, homogenize(&q, None)?);
    let polar: Vec<Poly> = [f.denominator(), g.denominator()]
        .into_iter()
        .filter(|d| !d.is_constant())
        .map(|d| homogenize(d, None))
        .collect::<Result<_, _>>()?;
    let (points, _) = raw_intersection(&ph, &qh, shear)?;
    for pt in points {
        if pt.field.is_zero(&pt.coords()[2]) {
            continue;
        }
        if polar.iter().any(|d| pt.eval(d).is_zero()) {
            continue;
        }
        out.count += pt.degree() as u64;
        if pt.multiplicity > 1 {
            out.nonreduced = true;
        }
    }
    Ok(out)
}

const MAX_REDRAWS: usize = 25;

fn random_target(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let n: i64 = rng.gen_range(-60..=60);
        let d: i64 = rng.gen_range(1..=9);
        if n != 0 {
            return Rat::new(n.into(), d.into());
        }
    }
}

/// `trials` fiber counts at seeded random targets; targets whose flags mark
/// them as non-generic are replaced by fresh draws.
pub fn fiber_count_with_redraws(
    phi: &RationalMap,
    seed: u64,
    trials: usize,
    shear: &Shear,
) -> Result<Vec<((Rat, Rat), FiberCount, usize)>, SymplecticError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let mut redraws = 0;
        loop {
            let (a, b) = (random_target(&mut rng), random_target(&mut rng));
            let fc = fiber_count(phi, (&a, &b), shear)?;
            if fc.is_generic() || redraws == MAX_REDRAWS {
                out.push(((a, b), fc, redraws));
                break;
            }
            redraws += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::symplectic::gen_monomial;

    #[test]
    fn square_map_has_two_preimages() {
        let s = Shear::from_seed(0);
        let phi = gen_monomial([[2, 0], [0, 1]]).unwrap();
        let fc = fiber_count(&phi, (&rat(3), &rat(5)), &s).unwrap();
        assert_eq!(fc.count, 2);
        assert!(fc.is_generic());
        // over a square the two points are rational, still two of them
        assert_eq!(fiber_count(&phi, (&rat(4), &rat(5)), &s).unwrap().count, 2);
        // the branch locus is flagged
        assert!(fiber_count(&phi, (&rat(0), &rat(5)), &s).unwrap().nonreduced);
    }

    #[test]
    fn birational_maps_have_one_preimage() {
        let s = Shear::from_seed(1);
        let phi = gen_monomial([[1, 1], [0, 1]]).unwrap();
        assert_eq!(fiber_count(&phi, (&rat(2), &rat(7)), &s).unwrap().count, 1);
        let inv = gen_monomial([[-1, 0], [0, -1]]).unwrap();
        assert_eq!(fiber_count(&inv, (&rat(2), &rat(7)), &s).unwrap().count, 1);
        assert_eq!(fiber_count(&RationalMap::identity(), (&rat(0), &rat(0)), &s).unwrap().count, 1);
    }

    #[test]
    fn torus_cover_degree() {
        let s = Shear::from_seed(2);
        let phi = gen_monomial([[2, 1], [-1, 3]]).unwrap();
        let counts = fiber_count_with_redraws(&phi, 9, 3, &s).unwrap();
        assert!(counts.iter().all(|(_, fc, _)| fc.count == 7 && fc.is_generic()));
    }
}
