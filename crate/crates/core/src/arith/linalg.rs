//! Incremental row echelon form over Q that remembers how each row was
//! built from the inserted generators. Used to find minimal polynomials in
//! number fields.

use num_traits::{One, Zero};

use super::rat::Rat;

#[derive(Debug, Default)]
pub(crate) struct Echelon {
    dim: usize,
    generators: usize,
    rows: Vec<Row>,
}

#[derive(Debug)]
struct Row {
    pivot: usize,
    vec: Vec<Rat>,
    combo: Vec<Rat>,
}

impl Echelon {
    pub fn new(dim: usize) -> Echelon {
        Echelon {
            dim,
            generators: 0,
            rows: Vec::new(),
        }
    }

    /// Insert the next generator. Returns `Some(relation)` when it lies in
    /// the span of the earlier ones: `sum_k relation[k] * g_k = 0` with the
    /// coefficient of the new generator equal to 1. Dependent generators are
    /// still counted but not stored.
    pub fn insert(&mut self, v: Vec<Rat>) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.dim);
        let idx = self.generators;
        self.generators += 1;
        let mut v = v;
        let mut combo = vec![Rat::zero(); idx + 1];
        combo[idx] = Rat::one();
        for row in &self.rows {
            let c = v[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (a, b) in v.iter_mut().zip(&row.vec) {
                if !b.is_zero() {
                    *a -= &c * b;
                }
            }
            for (a, b) in combo.iter_mut().zip(&row.combo) {
                if !b.is_zero() {
                    *a -= &c * b;
                }
            }
        }
        match v.iter().position(|a| !a.is_zero()) {
            None => Some(combo),
            Some(pivot) => {
                let inv = v[pivot].recip();
                for a in v.iter_mut() {
                    *a *= &inv;
                }
                for a in combo.iter_mut() {
                    *a *= &inv;
                }
                self.rows.push(Row { pivot, vec: v, combo });
                None
            }
        }
    }
}
