use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{rat, Poly, Rat, Vars};

/// An invertible linear change of coordinates `(X, Y, Z) = A (U, V, W)`
/// used to put curves in general position before eliminating a variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shear {
    matrix: [[Rat; 3]; 3],
    seed: u64,
}

const ENTRY_RANGE: i64 = 4;

fn det3(m: &[[Rat; 3]; 3]) -> Rat {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// splitmix64 finaliser, used to spread derived seeds.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Shear {
    /// Random small-integer matrix with nonzero determinant.
    pub fn from_seed(seed: u64) -> Shear {
        let mut rng = ChaCha8Rng::seed_from_u64(mix(seed));
        loop {
            let matrix: [[Rat; 3]; 3] = std::array::from_fn(|_| {
                std::array::from_fn(|_| rat(rng.gen_range(-ENTRY_RANGE..=ENTRY_RANGE)))
            });
            if !det3(&matrix).is_zero() {
                return Shear { matrix, seed };
            }
        }
    }

    /// The identity change of coordinates. Rarely generic; useful in tests.
    pub fn identity() -> Shear {
        let matrix = std::array::from_fn(|i| std::array::from_fn(|j| rat((i == j) as i64)));
        Shear { matrix, seed: 0 }
    }

    pub fn from_matrix(matrix: [[Rat; 3]; 3], seed: u64) -> Option<Shear> {
        (!det3(&matrix).is_zero()).then_some(Shear { matrix, seed })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn matrix(&self) -> &[[Rat; 3]; 3] {
        &self.matrix
    }

    /// The `k`-th replacement shear, drawn when this one fails a genericity test.
    pub fn derive(&self, k: u64) -> Shear {
        let mut s = Shear::from_seed(mix(self.seed ^ mix(k.wrapping_add(1))));
        s.seed = self.seed;
        s
    }

    /// `F(A (U, V, W))`, still written in `X, Y, Z`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let vars = Vars::projective();
        let images: Vec<Poly> = (0..3)
            .map(|i| {
                Poly::from_terms(
                    &vars,
                    (0..3).map(|j| (crate::arith::Monomial::var(j, 1), self.matrix[i][j].clone())),
                )
            })
            .collect();
        f.compose(&images)
    }

    /// `A w` for a column vector over any ring given by `mul` and `add`.
    pub fn map_point<T: Clone>(
        &self,
        w: &[T; 3],
        scale: impl Fn(&Rat, &T) -> T,
        add: impl Fn(&T, &T) -> T,
    ) -> [T; 3] {
        std::array::from_fn(|i| {
            let mut acc = scale(&self.matrix[i][0], &w[0]);
            for j in 1..3 {
                acc = add(&acc, &scale(&self.matrix[i][j], &w[j]));
            }
            acc
        })
    }
}

impl fmt::Display for Shear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|r| format!("[{}, {}, {}]", r[0], r[1], r[2]))
            .collect();
        write!(f, "seed {} [{}]", self.seed, rows.join(", "))
    }
}
