//! Case classification of a symbol pair by how the coordinate lines occur in
//! the two divisors, and checks of the base-locus criterion for maps whose
//! symbol equals `{x, y}`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::arith::{rat, Rat, RationalFunction};
use crate::geom::{principal_divisor, ClosedPoint, Curve, Divisor, GeomError, Intersector, Shear};
use crate::ktheory::{preserves_k2_with, KtError};
use crate::symplectic::RationalMap;

/// How a coordinate line occurs in the pair `(D, E)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    Absent,
    /// In `Supp D` only.
    I,
    /// In `Supp E` only.
    II,
    /// In both supports.
    III,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::Absent => "Absent",
            Membership::I => "I",
            Membership::II => "II",
            Membership::III => "III",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CaseLabel {
    pub l_h: Membership,
    pub l_v: Membership,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(l_h: {}, l_v: {})", self.l_h, self.l_v)
    }
}

fn membership(d: &Divisor, e: &Divisor, c: &Curve) -> Membership {
    match (d.contains(c), e.contains(c)) {
        (false, false) => Membership::Absent,
        (true, false) => Membership::I,
        (false, true) => Membership::II,
        (true, true) => Membership::III,
    }
}

pub fn classify_case(d: &Divisor, e: &Divisor) -> CaseLabel {
    CaseLabel {
        l_h: membership(d, e, &Curve::l_h()),
        l_v: membership(d, e, &Curve::l_v()),
    }
}

/// `Supp D ∩ Supp E`
pub fn common_components(d: &Divisor, e: &Divisor) -> BTreeSet<Curve> {
    d.support().filter(|c| e.contains(c)).cloned().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepDiagnostics {
    /// `Supp(D ⊓ E)` lies in `{0, ∞_h, ∞_v}`.
    pub step1: bool,
    pub step1_offenders: Vec<ClosedPoint>,
    /// No component other than `l_h`, `l_v` passes through the origin.
    pub step2: bool,
    pub step2_offenders: Vec<Curve>,
}

pub fn step_diagnostics_with(ix: &mut Intersector, d: &Divisor, e: &Divisor) -> Result<StepDiagnostics, GeomError> {
    let named = [ClosedPoint::origin(), ClosedPoint::inf_h(), ClosedPoint::inf_v()];
    let meet = ix.sqcap(d, e)?;
    let step1_offenders: Vec<ClosedPoint> = meet.support().filter(|p| !named.contains(p)).cloned().collect();
    let origin = [rat(0), rat(0), rat(1)];
    let step2_offenders: Vec<Curve> = d
        .support()
        .chain(e.support())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .filter(|c| **c != Curve::l_h() && **c != Curve::l_v())
        .filter(|c| c.poly().eval(&origin).is_zero())
        .cloned()
        .collect();
    Ok(StepDiagnostics {
        step1: step1_offenders.is_empty(),
        step1_offenders,
        step2: step2_offenders.is_empty(),
        step2_offenders,
    })
}

pub fn step_diagnostics(d: &Divisor, e: &Divisor, shear: &Shear) -> Result<StepDiagnostics, GeomError> {
    step_diagnostics_with(&mut Intersector::new(shear), d, e)
}

/// Which coordinate line lies in which divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `l_h` only in `D`, `l_v` only in `E`.
    Standard,
    /// `l_v` only in `D`, `l_h` only in `E`.
    Swapped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop6Hypotheses {
    pub tame_preserved: bool,
    pub orientation: Option<Orientation>,
    pub no_common_components_except_l_inf: bool,
    pub base_loci_disjoint: bool,
}

impl Prop6Hypotheses {
    pub fn all_hold(&self) -> bool {
        self.tame_preserved
            && self.orientation.is_some()
            && self.no_common_components_except_l_inf
            && self.base_loci_disjoint
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop6Report {
    pub hypotheses: Prop6Hypotheses,
    /// True only when every hypothesis holds and the divisors have the
    /// predicted shapes.
    pub conclusion_holds: bool,
    pub d: Divisor,
    pub e: Divisor,
    pub case: CaseLabel,
    pub common_components: Vec<Curve>,
    pub shared_base_points: Vec<ClosedPoint>,
    /// `f` and `g` are constant multiples of the coordinates (in either order).
    pub torus_form: bool,
}

impl Prop6Report {
    /// Hypotheses hold but the shapes differ: a counterexample.
    pub fn is_violation(&self) -> bool {
        self.hypotheses.all_hold() && !self.conclusion_holds
    }
}

fn line_minus_infinity(c: Curve) -> Divisor {
    Divisor::from_terms([(c, 1), (Curve::l_inf(), -1)])
}

fn constant_multiple(f: &RationalFunction, g: &RationalFunction) -> bool {
    f.div(g).map(|q| q.is_constant()).unwrap_or(false)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Kt(#[from] KtError),
}

/// Checks each hypothesis of the base-locus criterion on `phi = (f, g)` and,
/// when all hold, whether `div f` and `div g` are `l_h - l_inf` and
/// `l_v - l_inf` in the order given by the orientation.
pub fn prop6_verify(phi: &RationalMap, shear: &Shear) -> Result<Prop6Report, AnalysisError> {
    let mut ix = Intersector::new(shear);
    prop6_verify_with(&mut ix, phi)
}

pub fn prop6_verify_with(ix: &mut Intersector, phi: &RationalMap) -> Result<Prop6Report, AnalysisError> {
    let d = principal_divisor(phi.f())?;
    let e = principal_divisor(phi.g())?;
    let tame_preserved = preserves_k2_with(ix, phi)?;
    let case = classify_case(&d, &e);
    let orientation = match (case.l_h, case.l_v) {
        (Membership::I, Membership::II) => Some(Orientation::Standard),
        (Membership::II, Membership::I) => Some(Orientation::Swapped),
        _ => None,
    };
    let common: Vec<Curve> = common_components(&d, &e).into_iter().collect();
    let no_common = common.iter().all(|c| c.is_l_inf());
    let bf = ix.base_locus(&d)?;
    let bg = ix.base_locus(&e)?;
    let shared: Vec<ClosedPoint> = bf.intersection(&bg).cloned().collect();
    let hypotheses = Prop6Hypotheses {
        tame_preserved,
        orientation,
        no_common_components_except_l_inf: no_common,
        base_loci_disjoint: shared.is_empty(),
    };
    let shapes = match orientation {
        Some(Orientation::Standard) => {
            d == line_minus_infinity(Curve::l_h()) && e == line_minus_infinity(Curve::l_v())
        }
        Some(Orientation::Swapped) => {
            d == line_minus_infinity(Curve::l_v()) && e == line_minus_infinity(Curve::l_h())
        }
        None => false,
    };
    let (x, y) = (RationalFunction::x(), RationalFunction::y());
    let torus_form = (constant_multiple(phi.f(), &x) && constant_multiple(phi.g(), &y))
        || (constant_multiple(phi.f(), &y) && constant_multiple(phi.g(), &x));
    Ok(Prop6Report {
        conclusion_holds: hypotheses.all_hold() && shapes,
        hypotheses,
        d,
        e,
        case,
        common_components: common,
        shared_base_points: shared,
        torus_form,
    })
}

/// The scalars `(a, b)` when `phi = (a x, b y)`.
pub fn torus_scalars(phi: &RationalMap) -> Option<(Rat, Rat)> {
    let a = phi.f().div(&RationalFunction::x()).ok()?.constant_value()?;
    let b = phi.g().div(&RationalFunction::y()).ok()?.constant_value()?;
    Some((a, b))
}
