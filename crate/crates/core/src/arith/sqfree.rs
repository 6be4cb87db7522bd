//! Squarefree decomposition of multivariate polynomials (Yun's algorithm,
//! applied recursively to contents).

use std::collections::BTreeMap;

use super::gcd::{content_in, gcd};
use super::poly::Poly;
use super::rat::Rat;
use super::ArithError;

/// Result of [`squarefree_decomposition`]: `unit * prod(part^mult) == p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: Rat,
    pub parts: Vec<(Poly, u32)>,
}

/// Decompose `p` into pairwise coprime squarefree parts, one per
/// multiplicity. Parts are normalized primitive integer polynomials.
pub fn squarefree_decomposition(p: &Poly) -> Result<SquarefreeDecomposition, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroInput("squarefree_decomposition"));
    }
    let mut by_mult: BTreeMap<u32, Poly> = BTreeMap::new();
    if !p.is_constant() {
        collect(p, &mut by_mult);
    }
    let parts: Vec<(Poly, u32)> = by_mult.into_iter().map(|(m, f)| (f.normalized(), m)).collect();
    let mut lc = Rat::from_integer(1.into());
    for (f, m) in &parts {
        lc *= num_traits::pow(f.lead_coeff(), *m as usize);
    }
    Ok(SquarefreeDecomposition {
        unit: p.lead_coeff() / lc,
        parts,
    })
}

fn collect(p: &Poly, out: &mut BTreeMap<u32, Poly>) {
    let v = (0..p.nvars()).find(|&i| p.uses_var(i)).expect("nonconstant");
    let c = content_in(p, v);
    let pp = p.div_exact(&c).expect("content divides");
    for (a, m) in yun(&pp, v) {
        push(out, a, m);
    }
    if !c.is_constant() {
        collect(&c, out);
    }
}

fn push(out: &mut BTreeMap<u32, Poly>, a: Poly, m: u32) {
    let entry = out.entry(m).or_insert_with(|| Poly::one(a.vars()));
    *entry = &*entry * &a;
}

/// Yun's algorithm for `f` primitive of positive degree in variable `v`.
fn yun(f: &Poly, v: usize) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    let df = f.derivative(v);
    let g = gcd(f, &df);
    let mut c = f.div_exact(&g).expect("gcd divides");
    let mut d = &df.div_exact(&g).expect("gcd divides") - &c.derivative(v);
    let mut i = 1;
    while !c.is_constant() {
        let a = gcd(&c, &d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        c = c.div_exact(&a).expect("gcd divides");
        d = &d.div_exact(&a).expect("gcd divides") - &c.derivative(v);
        i += 1;
    }
    out
}
