//! Serializable reports. Field order is the key order of the JSON output,
//! so keep it stable.

use serde::Serialize;
use tamesym::analysis::{Orientation, Prop6Report};
use tamesym::arith::Vars;
use tamesym::ktheory::TameElement;
use tamesym::{ClosedPoint, Divisor, ZeroCycle};

#[derive(Serialize)]
#[serde(untagged)]
pub enum PointOut {
    Rational(String),
    Triangular { chart: String, p: String, q: String },
}

impl From<&ClosedPoint> for PointOut {
    fn from(p: &ClosedPoint) -> PointOut {
        if p.is_rational() {
            return PointOut::Rational(p.to_string());
        }
        PointOut::Triangular {
            chart: p.chart().to_string(),
            p: p.p().to_poly(&Vars::chart(), 0).to_string(),
            q: p.q().to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct CycleTerm {
    pub point: PointOut,
    pub multiplicity: i64,
}

pub fn cycle_out(z: &ZeroCycle) -> Vec<CycleTerm> {
    z.points()
        .map(|(p, n)| CycleTerm {
            point: p.into(),
            multiplicity: n,
        })
        .collect()
}

#[derive(Serialize)]
pub struct DivisorTerm {
    pub curve: String,
    pub label: String,
    pub multiplicity: i64,
}

pub fn divisor_out(d: &Divisor) -> Vec<DivisorTerm> {
    d.components()
        .map(|(c, n)| DivisorTerm {
            curve: c.to_string(),
            label: c.label(),
            multiplicity: n,
        })
        .collect()
}

#[derive(Serialize)]
pub struct TameComponent {
    pub curve: String,
    pub label: String,
    pub cycle: Vec<CycleTerm>,
}

pub fn tame_out(t: &TameElement) -> Vec<TameComponent> {
    t.components()
        .map(|(c, z)| TameComponent {
            curve: c.to_string(),
            label: c.label(),
            cycle: cycle_out(z),
        })
        .collect()
}

#[derive(Serialize)]
pub struct Prop6Out {
    pub tame_preserved: bool,
    pub orientation: Option<&'static str>,
    pub no_common_components_except_l_inf: bool,
    pub base_loci_disjoint: bool,
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
    pub violation: bool,
    pub torus_form: bool,
}

impl From<&Prop6Report> for Prop6Out {
    fn from(r: &Prop6Report) -> Prop6Out {
        let h = &r.hypotheses;
        Prop6Out {
            tame_preserved: h.tame_preserved,
            orientation: h.orientation.map(|o| match o {
                Orientation::Standard => "standard",
                Orientation::Swapped => "swapped",
            }),
            no_common_components_except_l_inf: h.no_common_components_except_l_inf,
            base_loci_disjoint: h.base_loci_disjoint,
            hypotheses_hold: h.all_hold(),
            conclusion_holds: r.conclusion_holds,
            violation: r.is_violation(),
            torus_form: r.torus_form,
        }
    }
}

#[derive(Serialize)]
pub struct FiberOut {
    pub target: [String; 2],
    pub count: u64,
    pub generic: bool,
    pub redraws: usize,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub map: [String; 2],
    pub form_verdict: String,
    pub ratio: String,
    pub k2_verdict: bool,
    pub agreement: bool,
    pub divisor_f: Vec<DivisorTerm>,
    pub divisor_g: Vec<DivisorTerm>,
    pub tame: Vec<TameComponent>,
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prop6: Option<Prop6Out>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fibers: Option<Vec<FiberOut>>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Timings>,
}

#[derive(Serialize, Default)]
pub struct Timings {
    pub form: f64,
    pub k2: f64,
    pub total: f64,
}

#[derive(Serialize)]
pub struct CorpusLine {
    pub map: [String; 2],
    pub expected: bool,
    pub recipe: String,
}

#[derive(Serialize)]
pub struct InvariantTally {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

#[derive(Serialize)]
pub struct SelfcheckReport {
    pub seed: u64,
    pub trials: usize,
    pub invariants: Vec<InvariantTally>,
    pub passed: bool,
}
