//! Branch-and-bound certification of polynomial signs and set containment on
//! boxes.
//!
//! Certificates subdivide by bisecting the widest coordinate; the budget
//! counts boxes examined. `CertTrue`/`FullyIn`/`FullyOut` verdicts are only
//! emitted with a complete enclosure certificate over a cover of the box;
//! `Unknown` is an honest verdict after budget exhaustion.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use crate::geom::OpenBox;
use crate::interval::poly_range;
use crate::poly::Polynomial;
use crate::rat::Point;
use crate::set::SemiAlgebraicSet;

/// Subdivision budget: the maximum number of boxes examined by one
/// certification call.
#[derive(Debug, Clone, Copy)]
pub struct CertBudget {
    pub max_boxes: usize,
}

impl Default for CertBudget {
    fn default() -> Self {
        CertBudget { max_boxes: 4096 }
    }
}

/// Summary of the subdivision tree behind a verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CertTrace {
    pub boxes_examined: usize,
    pub max_depth: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignRelation {
    GreaterZero,
    LessZero,
    NonZero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignVerdict {
    /// The relation holds at every point of the box.
    CertTrue(CertTrace),
    /// The relation fails at every point of the box.
    CertFalse(CertTrace),
    Unknown(CertTrace),
}

impl SignVerdict {
    pub fn is_true(&self) -> bool {
        matches!(self, SignVerdict::CertTrue(_))
    }
    pub fn is_false(&self) -> bool {
        matches!(self, SignVerdict::CertFalse(_))
    }
}

enum RangeCall {
    HoldsEverywhere,
    FailsEverywhere,
    Inconclusive,
}

fn classify_range(p: &Polynomial, b: &OpenBox, rel: SignRelation) -> RangeCall {
    let r = poly_range(p, b);
    match rel {
        SignRelation::GreaterZero => {
            if r.lo().is_positive() {
                RangeCall::HoldsEverywhere
            } else if !r.hi().is_positive() {
                RangeCall::FailsEverywhere
            } else {
                RangeCall::Inconclusive
            }
        }
        SignRelation::LessZero => {
            if r.hi().is_negative() {
                RangeCall::HoldsEverywhere
            } else if !r.lo().is_negative() {
                RangeCall::FailsEverywhere
            } else {
                RangeCall::Inconclusive
            }
        }
        SignRelation::NonZero => {
            if !r.contains_zero() {
                RangeCall::HoldsEverywhere
            } else if r.lo().is_zero() && r.hi().is_zero() {
                RangeCall::FailsEverywhere
            } else {
                RangeCall::Inconclusive
            }
        }
    }
}

fn point_satisfies(p: &Polynomial, rel: SignRelation, point: &[crate::rat::Rat]) -> bool {
    let v = p.eval(point).expect("dimension checked by caller");
    match rel {
        SignRelation::GreaterZero => v.is_positive(),
        SignRelation::LessZero => v.is_negative(),
        SignRelation::NonZero => !v.is_zero(),
    }
}

/// Certifies that `p <rel> 0` holds (or fails) at every point of `b`.
pub fn certify_sign(
    p: &Polynomial,
    b: &OpenBox,
    rel: SignRelation,
    budget: CertBudget,
) -> SignVerdict {
    assert_eq!(p.num_vars(), b.dim());
    let mut trace = CertTrace::default();
    let mut queue: VecDeque<(OpenBox, usize)> = VecDeque::new();
    queue.push_back((b.clone(), 0));
    // Evidence against each certificate: a leaf or sample point going the
    // other way makes that verdict unreachable.
    let mut holds_somewhere = false;
    let mut fails_somewhere = false;
    let mut any_leaf_holds = false;
    let mut any_leaf_fails = false;
    while let Some((cur, depth)) = queue.pop_front() {
        trace.boxes_examined += 1;
        trace.max_depth = trace.max_depth.max(depth);
        if trace.boxes_examined > budget.max_boxes {
            return SignVerdict::Unknown(trace);
        }
        match classify_range(p, &cur, rel) {
            RangeCall::HoldsEverywhere => {
                any_leaf_holds = true;
                holds_somewhere = true;
            }
            RangeCall::FailsEverywhere => {
                any_leaf_fails = true;
                fails_somewhere = true;
            }
            RangeCall::Inconclusive => {
                if point_satisfies(p, rel, &cur.center()) {
                    holds_somewhere = true;
                } else {
                    fails_somewhere = true;
                }
                let (l, r) = cur.bisect(cur.widest_axis());
                queue.push_back((l, depth + 1));
                queue.push_back((r, depth + 1));
            }
        }
        if holds_somewhere && fails_somewhere {
            return SignVerdict::Unknown(trace);
        }
    }
    if any_leaf_holds && !fails_somewhere {
        SignVerdict::CertTrue(trace)
    } else if any_leaf_fails && !holds_somewhere {
        SignVerdict::CertFalse(trace)
    } else {
        SignVerdict::Unknown(trace)
    }
}

/// Certified relation of a box to a semi-algebraic set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoxStatus {
    /// Certified `b` is a subset of the set.
    FullyIn(CertTrace),
    /// Certified `b` and the set are disjoint.
    FullyOut(CertTrace),
    /// Found an exact member and an exact non-member point.
    Mixed {
        member: Point,
        non_member: Point,
        trace: CertTrace,
    },
    Unknown(CertTrace),
}

impl BoxStatus {
    pub fn is_in(&self) -> bool {
        matches!(self, BoxStatus::FullyIn(_))
    }
    pub fn is_out(&self) -> bool {
        matches!(self, BoxStatus::FullyOut(_))
    }
    pub fn trace(&self) -> &CertTrace {
        match self {
            BoxStatus::FullyIn(t) | BoxStatus::FullyOut(t) | BoxStatus::Unknown(t) => t,
            BoxStatus::Mixed { trace, .. } => trace,
        }
    }
    pub fn label(&self) -> &'static str {
        match self {
            BoxStatus::FullyIn(_) => "fully-in",
            BoxStatus::FullyOut(_) => "fully-out",
            BoxStatus::Mixed { .. } => "mixed",
            BoxStatus::Unknown(_) => "unknown",
        }
    }
}

/// One disjunct covers the whole box: every equation is identically zero on
/// it (which for a full-dimensional box means the zero polynomial) and every
/// strict inequality has a positive lower range bound.
fn disjunct_covers(d: &crate::set::BasicSet, b: &OpenBox) -> bool {
    for f in d.equations() {
        let r = poly_range(f, b);
        if !(r.lo().is_zero() && r.hi().is_zero()) {
            return false;
        }
    }
    for g in d.strict_positives() {
        if !poly_range(g, b).lo().is_positive() {
            return false;
        }
    }
    true
}

/// The disjunct certifies empty on the box: some equation's range excludes
/// zero or some strict inequality is certified nonpositive.
fn disjunct_empty(d: &crate::set::BasicSet, b: &OpenBox) -> bool {
    for f in d.equations() {
        if !poly_range(f, b).contains_zero() {
            return true;
        }
    }
    for g in d.strict_positives() {
        if !poly_range(g, b).hi().is_positive() {
            return true;
        }
    }
    false
}

/// Certifies whether `b` lies inside `x`, outside `x`, provably meets both
/// sides (`Mixed`, with exact witness points), or could not be decided.
pub fn certify_set_status(
    x: &SemiAlgebraicSet,
    b: &OpenBox,
    budget: CertBudget,
) -> BoxStatus {
    assert_eq!(x.num_vars(), b.dim());
    let mut trace = CertTrace::default();
    if x.disjuncts().is_empty() {
        return BoxStatus::FullyOut(trace);
    }
    let mut queue: VecDeque<(OpenBox, usize)> = VecDeque::new();
    queue.push_back((b.clone(), 0));
    let mut any_in_leaf = false;
    let mut any_out_leaf = false;
    let mut member: Option<Point> = None;
    let mut non_member: Option<Point> = None;
    while let Some((cur, depth)) = queue.pop_front() {
        trace.boxes_examined += 1;
        trace.max_depth = trace.max_depth.max(depth);
        if trace.boxes_examined > budget.max_boxes {
            return BoxStatus::Unknown(trace);
        }
        if x.disjuncts().iter().all(|d| disjunct_empty(d, &cur)) {
            any_out_leaf = true;
            if member.is_none() {
                non_member.get_or_insert_with(|| cur.center());
            }
        } else if x.disjuncts().iter().any(|d| disjunct_covers(d, &cur)) {
            any_in_leaf = true;
            member.get_or_insert_with(|| cur.center());
        } else {
            let c = cur.center();
            if x.contains(&c).expect("dimensions checked") {
                member.get_or_insert(c);
            } else {
                non_member.get_or_insert(c);
            }
            let (l, r) = cur.bisect(cur.widest_axis());
            queue.push_back((l, depth + 1));
            queue.push_back((r, depth + 1));
        }
        if let (Some(m), Some(nm)) = (&member, &non_member) {
            return BoxStatus::Mixed {
                member: m.clone(),
                non_member: nm.clone(),
                trace,
            };
        }
    }
    if any_in_leaf && !any_out_leaf {
        BoxStatus::FullyIn(trace)
    } else if any_out_leaf && !any_in_leaf {
        BoxStatus::FullyOut(trace)
    } else {
        BoxStatus::Unknown(trace)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotone {
    Increasing,
    Decreasing,
    Constant,
}

impl Monotone {
    pub fn label(&self) -> &'static str {
        match self {
            Monotone::Increasing => "inc",
            Monotone::Decreasing => "dec",
            Monotone::Constant => "const",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegularVerdict {
    /// Every partial derivative certified strictly positive, strictly
    /// negative, or identically zero on the box.
    Regular(Vec<Monotone>),
    NotCertified,
}

/// Certifies that `f` is regular on `b`: in each coordinate separately,
/// strictly increasing, strictly decreasing, or constant.
pub fn certify_regular(f: &Polynomial, b: &OpenBox, budget: CertBudget) -> RegularVerdict {
    assert_eq!(f.num_vars(), b.dim());
    let mut profile = Vec::with_capacity(f.num_vars());
    for i in 0..f.num_vars() {
        let d = f.partial_derivative(i);
        if d.is_zero() {
            profile.push(Monotone::Constant);
            continue;
        }
        if certify_sign(&d, b, SignRelation::GreaterZero, budget).is_true() {
            profile.push(Monotone::Increasing);
        } else if certify_sign(&d, b, SignRelation::LessZero, budget).is_true() {
            profile.push(Monotone::Decreasing);
        } else {
            return RegularVerdict::NotCertified;
        }
    }
    RegularVerdict::Regular(profile)
}
