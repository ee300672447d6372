//! Exact arithmetic in one variable: quadratic surds, real roots of
//! degree <= 2 polynomials, and complete feasibility decisions on open
//! intervals.
//!
//! Every polynomial condition appearing in the corpus has degree at most two
//! along a line, so fiber feasibility reduces to root enumeration in
//! `Q(sqrt(d))` plus exact sign evaluation. Higher degrees fall back to an
//! honest `Undecided`.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::rat::{rat, rint, sqrt_bounds, sqrt_exact, Rat};

/// The real number `a + b*sqrt(d)`. Normalized: `d = 0` when `b = 0`, and
/// `d` is never a perfect rational square when `b != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExt {
    a: Rat,
    b: Rat,
    d: Rat,
}

impl QuadExt {
    pub fn from_rat(a: Rat) -> Self {
        QuadExt {
            a,
            b: Rat::zero(),
            d: Rat::zero(),
        }
    }

    /// Builds `a + b*sqrt(d)`, folding perfect squares into the rational
    /// part. Requires `d >= 0`.
    pub fn new(a: Rat, b: Rat, d: Rat) -> Self {
        assert!(!d.is_negative(), "radicand must be nonnegative");
        if b.is_zero() || d.is_zero() {
            return Self::from_rat(a);
        }
        if let Some(s) = sqrt_exact(&d) {
            return Self::from_rat(a + b * s);
        }
        QuadExt { a, b, d }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Exact sign. Zero is only possible for rational values: with `d` not a
    /// perfect square, `a + b*sqrt(d) = 0` would make `sqrt(d)` rational.
    pub fn sign(&self) -> Ordering {
        if self.b.is_zero() {
            return self.a.cmp(&Rat::zero());
        }
        if self.a.is_zero() {
            return self.b.cmp(&Rat::zero());
        }
        let a_pos = self.a.is_positive();
        let b_pos = self.b.is_positive();
        match (a_pos, b_pos) {
            (true, true) => Ordering::Greater,
            (false, false) => Ordering::Less,
            (false, true) => {
                // sign(b*sqrt(d) - |a|): compare b^2 d with a^2.
                let lhs = &self.b * &self.b * &self.d;
                let rhs = &self.a * &self.a;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => Ordering::Greater,
                    Ordering::Less => Ordering::Less,
                    Ordering::Equal => unreachable!("sqrt(d) would be rational"),
                }
            }
            (true, false) => {
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * &self.d;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => Ordering::Greater,
                    Ordering::Less => Ordering::Less,
                    Ordering::Equal => unreachable!("sqrt(d) would be rational"),
                }
            }
        }
    }

    pub fn is_zero_value(&self) -> bool {
        self.b.is_zero() && self.a.is_zero()
    }

    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        QuadExt {
            a: &self.a - r,
            b: self.b.clone(),
            d: self.d.clone(),
        }
        .sign()
    }

    /// Total order on quadratic surds, exact across different radicands.
    pub fn cmp_value(&self, other: &QuadExt) -> Ordering {
        if self.b.is_zero() {
            return other.cmp_rat(&self.a).reverse();
        }
        if other.b.is_zero() {
            return self.cmp_rat(&other.a);
        }
        // Same field: direct sign of the difference.
        if let Some(rho) = sqrt_exact(&(&other.d / &self.d)) {
            return QuadExt::new(
                &self.a - &other.a,
                &self.b - &other.b * rho,
                self.d.clone(),
            )
            .sign();
        }
        // Independent radicals: the values are distinct; separate them by
        // interval refinement.
        let mut eps = rint(1);
        for _ in 0..512 {
            let (alo, ahi) = self.rational_bounds(&eps);
            let (blo, bhi) = other.rational_bounds(&eps);
            if ahi < blo {
                return Ordering::Less;
            }
            if bhi < alo {
                return Ordering::Greater;
            }
            eps /= rint(4);
        }
        unreachable!("distinct surds failed to separate")
    }

    /// Rational bracket `(lo, hi)` with `lo <= value <= hi` and width
    /// controlled by `eps` (exact for rational values).
    pub fn rational_bounds(&self, eps: &Rat) -> (Rat, Rat) {
        if self.b.is_zero() {
            return (self.a.clone(), self.a.clone());
        }
        let (slo, shi) = sqrt_bounds(&self.d, eps);
        if self.b.is_positive() {
            (&self.a + &self.b * slo, &self.a + &self.b * shi)
        } else {
            (&self.a + &self.b * shi, &self.a + &self.b * slo)
        }
    }
}

/// Evaluates a univariate polynomial (dense coefficients, low to high) at a
/// quadratic surd; the result stays in the same field.
pub fn poly_eval_quadext(coeffs: &[Rat], x: &QuadExt) -> QuadExt {
    // Horner in (u + v*sqrt(d)) coordinates.
    let mut u = Rat::zero();
    let mut v = Rat::zero();
    for c in coeffs.iter().rev() {
        // (u + v s)(a + b s) + c  where s^2 = d
        let nu = &u * &x.a + &v * &x.b * &x.d + c;
        let nv = &u * &x.b + &v * &x.a;
        u = nu;
        v = nv;
    }
    QuadExt::new(u, v, x.d.clone())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Roots {
    /// The zero polynomial: every point is a root.
    IdenticallyZero,
    /// All real roots, ascending and distinct.
    Finite(Vec<QuadExt>),
    TooHighDegree,
}

/// Real roots of a univariate polynomial of degree <= 2.
pub fn real_roots(coeffs: &[Rat]) -> Roots {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    match c.len() {
        0 => Roots::IdenticallyZero,
        1 => Roots::Finite(vec![]),
        2 => Roots::Finite(vec![QuadExt::from_rat(-&c[0] / &c[1])]),
        3 => {
            let disc = &c[1] * &c[1] - rint(4) * &c[2] * &c[0];
            match disc.cmp(&Rat::zero()) {
                Ordering::Less => Roots::Finite(vec![]),
                Ordering::Equal => {
                    Roots::Finite(vec![QuadExt::from_rat(-&c[1] / (rint(2) * &c[2]))])
                }
                Ordering::Greater => {
                    let mid = -&c[1] / (rint(2) * &c[2]);
                    let half = rint(1) / (rint(2) * &c[2]);
                    let r1 = QuadExt::new(mid.clone(), half.clone(), disc.clone());
                    let r2 = QuadExt::new(mid, -half, disc);
                    let mut v = vec![r1, r2];
                    if v[0].cmp_value(&v[1]) == Ordering::Greater {
                        v.swap(0, 1);
                    }
                    Roots::Finite(v)
                }
            }
        }
        _ => Roots::TooHighDegree,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CondKind {
    /// `p = 0`
    Eq,
    /// `p > 0`
    Gt,
}

/// One univariate condition: dense coefficients, low to high.
#[derive(Debug, Clone)]
pub struct Cond1 {
    pub coeffs: Vec<Rat>,
    pub kind: CondKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decision1 {
    /// Feasible; carries a rational witness when one exists (surd-only
    /// witnesses are certified without being representable).
    In(Option<Rat>),
    /// Certified infeasible on the whole open interval.
    Out,
    /// Out of scope for the exact machinery (degree > 2 in the wrong place).
    Undecided,
}

fn trim(coeffs: &[Rat]) -> Vec<Rat> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}

fn eval_rat(coeffs: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Decides `exists z in (lo, hi): all conditions hold`, exactly, for
/// conditions of degree <= 2 (inequality-only systems additionally need all
/// inequalities of degree <= 2; systems led by an equation allow any degree
/// in the side conditions since those are only evaluated at roots).
pub fn decide_1d(conds: &[Cond1], lo: &Rat, hi: &Rat) -> Decision1 {
    assert!(lo < hi);
    let mut equations: Vec<Vec<Rat>> = Vec::new();
    let mut positives: Vec<Vec<Rat>> = Vec::new();
    for cond in conds {
        let c = trim(&cond.coeffs);
        match cond.kind {
            CondKind::Eq => match c.len() {
                0 => {}
                1 => return Decision1::Out,
                _ => equations.push(c),
            },
            CondKind::Gt => match c.len() {
                0 => return Decision1::Out,
                1 => {
                    if !c[0].is_positive() {
                        return Decision1::Out;
                    }
                }
                _ => positives.push(c),
            },
        }
    }

    if let Some(first) = equations.first() {
        let roots = match real_roots(first) {
            Roots::IdenticallyZero => unreachable!("trivial equations were dropped"),
            Roots::TooHighDegree => return Decision1::Undecided,
            Roots::Finite(r) => r,
        };
        for root in roots {
            if root.cmp_rat(lo) != Ordering::Greater || root.cmp_rat(hi) != Ordering::Less {
                continue;
            }
            let eq_ok = equations[1..]
                .iter()
                .all(|e| poly_eval_quadext(e, &root).is_zero_value());
            let gt_ok = positives
                .iter()
                .all(|g| poly_eval_quadext(g, &root).sign() == Ordering::Greater);
            if eq_ok && gt_ok {
                return Decision1::In(root.as_rational().cloned());
            }
        }
        return Decision1::Out;
    }

    // Inequalities only: the feasible set is a union of open intervals whose
    // endpoints are roots of the g's (or lo/hi); one rational sample per
    // sign-constant region decides feasibility exactly.
    if positives.iter().any(|g| g.len() > 3) {
        return Decision1::Undecided;
    }
    let mut breakpoints: Vec<QuadExt> = Vec::new();
    for g in &positives {
        if let Roots::Finite(roots) = real_roots(g) {
            for r in roots {
                if r.cmp_rat(lo) == Ordering::Greater && r.cmp_rat(hi) == Ordering::Less {
                    breakpoints.push(r);
                }
            }
        }
    }
    breakpoints.sort_by(|x, y| x.cmp_value(y));
    breakpoints.dedup_by(|x, y| x.cmp_value(y) == Ordering::Equal);

    let candidates = region_samples(&breakpoints, lo, hi);
    for c in candidates {
        if positives.iter().all(|g| eval_rat(g, &c).is_positive()) {
            return Decision1::In(Some(c));
        }
    }
    Decision1::Out
}

/// One rational point strictly inside each maximal breakpoint-free region of
/// `(lo, hi)`.
fn region_samples(breakpoints: &[QuadExt], lo: &Rat, hi: &Rat) -> Vec<Rat> {
    if breakpoints.is_empty() {
        return vec![(lo + hi) / rint(2)];
    }
    let mut eps = (hi - lo) / rint(8);
    'refine: for _ in 0..512 {
        // Widen each bracket so its endpoints sit strictly between the
        // breakpoint and its neighbours (a rational breakpoint's raw bracket
        // is the degenerate point itself).
        let pad = &eps / rint(2);
        let brackets: Vec<(Rat, Rat)> = breakpoints
            .iter()
            .map(|r| {
                let (blo, bhi) = r.rational_bounds(&eps);
                (blo - &pad, bhi + &pad)
            })
            .collect();
        // Brackets must avoid the endpoints and be pairwise disjoint so each
        // gap endpoint is a valid region sample.
        if brackets[0].0 <= *lo || brackets.last().unwrap().1 >= *hi {
            eps /= rint(4);
            continue 'refine;
        }
        for w in brackets.windows(2) {
            if w[0].1 >= w[1].0 {
                eps /= rint(4);
                continue 'refine;
            }
        }
        let mut samples = Vec::with_capacity(brackets.len() + 1);
        samples.push(brackets[0].0.clone());
        for b in &brackets {
            samples.push(b.1.clone());
        }
        return samples;
    }
    // Breakpoints are distinct reals, so refinement always separates them.
    unreachable!("isolating intervals failed to separate")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        rat(n, d)
    }

    #[test]
    fn surd_signs() {
        // 1 - sqrt(2) < 0, -1 + sqrt(2) > 0, 3 - sqrt(4) folds to 1.
        assert_eq!(
            QuadExt::new(rint(1), rint(-1), rint(2)).sign(),
            Ordering::Less
        );
        assert_eq!(
            QuadExt::new(rint(-1), rint(1), rint(2)).sign(),
            Ordering::Greater
        );
        let folded = QuadExt::new(rint(3), rint(-1), rint(4));
        assert_eq!(folded.as_rational(), Some(&rint(1)));
    }

    #[test]
    fn surd_ordering_across_fields() {
        // sqrt(2) < sqrt(3) < 2 - sqrt(1/50)
        let s2 = QuadExt::new(rint(0), rint(1), rint(2));
        let s3 = QuadExt::new(rint(0), rint(1), rint(3));
        let other = QuadExt::new(rint(2), rint(-1), q(1, 50));
        assert_eq!(s2.cmp_value(&s3), Ordering::Less);
        assert_eq!(s3.cmp_value(&other), Ordering::Less);
        assert_eq!(s2.cmp_value(&s2.clone()), Ordering::Equal);
        // Same field, shifted radicand: sqrt(8) = 2 sqrt(2).
        let s8 = QuadExt::new(rint(0), rint(1), rint(8));
        let twice = QuadExt::new(rint(0), rint(2), rint(2));
        assert_eq!(s8.cmp_value(&twice), Ordering::Equal);
    }

    #[test]
    fn quadratic_roots() {
        // z^2 - 1: roots -1, 1 (rational after folding).
        let r = real_roots(&[rint(-1), rint(0), rint(1)]);
        match r {
            Roots::Finite(v) => {
                assert_eq!(v[0].as_rational(), Some(&rint(-1)));
                assert_eq!(v[1].as_rational(), Some(&rint(1)));
            }
            _ => panic!("expected roots"),
        }
        // z^2 - 2: surd roots.
        if let Roots::Finite(v) = real_roots(&[rint(-2), rint(0), rint(1)]) {
            assert_eq!(v.len(), 2);
            assert!(v[0].as_rational().is_none());
            assert_eq!(
                poly_eval_quadext(&[rint(-2), rint(0), rint(1)], &v[0]).sign(),
                Ordering::Equal
            );
        } else {
            panic!("expected roots");
        }
        // z^2 + 1: none.
        assert_eq!(real_roots(&[rint(1), rint(0), rint(1)]), Roots::Finite(vec![]));
    }

    #[test]
    fn decide_equation_with_side_conditions() {
        // z^2 = 2 with z > 0 in (-10, 10): feasible, surd witness.
        let conds = [
            Cond1 {
                coeffs: vec![rint(-2), rint(0), rint(1)],
                kind: CondKind::Eq,
            },
            Cond1 {
                coeffs: vec![rint(0), rint(1)],
                kind: CondKind::Gt,
            },
        ];
        assert_eq!(
            decide_1d(&conds, &rint(-10), &rint(10)),
            Decision1::In(None)
        );
        // Same equation restricted to (2, 3): no root there.
        assert_eq!(decide_1d(&conds, &rint(2), &rint(3)), Decision1::Out);
    }

    #[test]
    fn decide_rational_equation() {
        // 2z - 1 = 0 in (0, 1): witness 1/2.
        let conds = [Cond1 {
            coeffs: vec![rint(-1), rint(2)],
            kind: CondKind::Eq,
        }];
        assert_eq!(
            decide_1d(&conds, &rint(0), &rint(1)),
            Decision1::In(Some(q(1, 2)))
        );
    }

    #[test]
    fn decide_inequalities_only() {
        // z > 0 and 1 - z^2 > 0 in (-2, 2): open unit interval feasible.
        let conds = [
            Cond1 {
                coeffs: vec![rint(0), rint(1)],
                kind: CondKind::Gt,
            },
            Cond1 {
                coeffs: vec![rint(1), rint(0), rint(-1)],
                kind: CondKind::Gt,
            },
        ];
        match decide_1d(&conds, &rint(-2), &rint(2)) {
            Decision1::In(Some(w)) => {
                assert!(w.is_positive() && &w * &w < rint(1));
            }
            other => panic!("expected rational witness, got {other:?}"),
        }
        // z > 0 and z^2 - 2 > 0 and 1 - z > 0: infeasible.
        let conds = [
            Cond1 {
                coeffs: vec![rint(0), rint(1)],
                kind: CondKind::Gt,
            },
            Cond1 {
                coeffs: vec![rint(-2), rint(0), rint(1)],
                kind: CondKind::Gt,
            },
            Cond1 {
                coeffs: vec![rint(1), rint(-1)],
                kind: CondKind::Gt,
            },
        ];
        assert_eq!(decide_1d(&conds, &rint(-4), &rint(4)), Decision1::Out);
    }

    #[test]
    fn contradiction_and_trivia() {
        let conds = [Cond1 {
            coeffs: vec![rint(5)],
            kind: CondKind::Eq,
        }];
        assert_eq!(decide_1d(&conds, &rint(0), &rint(1)), Decision1::Out);
        let conds = [Cond1 {
            coeffs: vec![],
            kind: CondKind::Eq,
        }];
        assert_eq!(
            decide_1d(&conds, &rint(0), &rint(1)),
            Decision1::In(Some(q(1, 2)))
        );
    }

    #[test]
    fn high_degree_is_undecided() {
        let conds = [Cond1 {
            coeffs: vec![rint(-1), rint(0), rint(0), rint(1)],
            kind: CondKind::Eq,
        }];
        assert_eq!(decide_1d(&conds, &rint(-2), &rint(2)), Decision1::Undecided);
    }
}
