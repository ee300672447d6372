//! Semi-algebraic sets in disjunctive form and their exact set algebra.
//!
//! A set is a finite union of basic sets, each given by polynomial equations
//! (`f = 0`) and strict inequalities (`g > 0`). Membership is decided by
//! exact rational evaluation. Complement expands negated atoms and
//! redistributes to disjunctive form, which can blow up exponentially; a
//! configurable disjunct budget fails loudly instead of silently degrading.

use num_traits::{Signed, Zero};

use crate::geom::{AffineMap, OpenBox};
use crate::poly::{sphere_poly, AlgebraError, Polynomial};
use crate::rat::{rint, Point, Rat};

/// Conjunction of polynomial conditions: all `equations = 0` and all
/// `strict_positives > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSet {
    num_vars: usize,
    equations: Vec<Polynomial>,
    strict_positives: Vec<Polynomial>,
}

/// One negated atom, as a union of atoms.
enum NegatedAtom {
    // not (f = 0)  =>  f > 0  or  -f > 0
    // not (g > 0)  =>  g = 0  or  -g > 0
    Choices(Vec<Atom>),
}

#[derive(Clone)]
enum Atom {
    Eq(Polynomial),
    Gt(Polynomial),
}

impl BasicSet {
    pub fn new(
        num_vars: usize,
        equations: Vec<Polynomial>,
        strict_positives: Vec<Polynomial>,
    ) -> Result<Self, AlgebraError> {
        for p in equations.iter().chain(&strict_positives) {
            if p.num_vars() != num_vars {
                return Err(AlgebraError::DimensionMismatch {
                    expected: num_vars,
                    got: p.num_vars(),
                });
            }
        }
        Ok(BasicSet {
            num_vars,
            equations,
            strict_positives,
        })
    }

    /// The whole space: an empty conjunction.
    pub fn top(num_vars: usize) -> Self {
        BasicSet {
            num_vars,
            equations: Vec::new(),
            strict_positives: Vec::new(),
        }
    }

    /// The single point `{p}`.
    pub fn singleton(point: &[Rat]) -> Self {
        let n = point.len();
        let equations = point
            .iter()
            .enumerate()
            .map(|(i, v)| {
                Polynomial::var(n, i).add(&Polynomial::constant(n, -v.clone()))
            })
            .collect();
        BasicSet {
            num_vars: n,
            equations,
            strict_positives: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn strict_positives(&self) -> &[Polynomial] {
        &self.strict_positives
    }

    pub fn contains(&self, point: &[Rat]) -> Result<bool, AlgebraError> {
        if point.len() != self.num_vars {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.num_vars,
                got: point.len(),
            });
        }
        for f in &self.equations {
            if !f.eval(point)?.is_zero() {
                return Ok(false);
            }
        }
        for g in &self.strict_positives {
            if !g.eval(point)?.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Drops constant-true atoms, deduplicates, and detects statically
    /// unsatisfiable conjunctions. Returns `None` when unsatisfiable.
    fn normalized(mut self) -> Option<BasicSet> {
        let mut eqs: Vec<Polynomial> = Vec::new();
        for f in self.equations.drain(..) {
            if let Some(c) = f.as_constant() {
                if c.is_zero() {
                    continue; // 0 = 0
                }
                return None; // nonzero constant = 0
            }
            if !eqs.contains(&f) && !eqs.contains(&f.neg()) {
                eqs.push(f);
            }
        }
        let mut gts: Vec<Polynomial> = Vec::new();
        for g in self.strict_positives.drain(..) {
            if let Some(c) = g.as_constant() {
                if c.is_positive() {
                    continue; // constant > 0 holds
                }
                return None; // constant <= 0 required > 0
            }
            if gts.contains(&g) {
                continue;
            }
            gts.push(g);
        }
        // g > 0 and -g > 0 together are unsatisfiable; g = 0 with g > 0 too.
        for g in &gts {
            let ng = g.neg();
            if gts.contains(&ng) || eqs.contains(g) || eqs.contains(&ng) {
                return None;
            }
        }
        Some(BasicSet {
            num_vars: self.num_vars,
            equations: eqs,
            strict_positives: gts,
        })
    }

    fn negated_atoms(&self) -> Vec<NegatedAtom> {
        let mut out = Vec::new();
        for f in &self.equations {
            out.push(NegatedAtom::Choices(vec![
                Atom::Gt(f.clone()),
                Atom::Gt(f.neg()),
            ]));
        }
        for g in &self.strict_positives {
            out.push(NegatedAtom::Choices(vec![
                Atom::Eq(g.clone()),
                Atom::Gt(g.neg()),
            ]));
        }
        out
    }

    fn merged_with(&self, other: &BasicSet) -> BasicSet {
        let mut equations = self.equations.clone();
        equations.extend(other.equations.iter().cloned());
        let mut strict_positives = self.strict_positives.clone();
        strict_positives.extend(other.strict_positives.iter().cloned());
        BasicSet {
            num_vars: self.num_vars,
            equations,
            strict_positives,
        }
    }

    fn map_polys(&self, f: impl Fn(&Polynomial) -> Polynomial, num_vars: usize) -> BasicSet {
        BasicSet {
            num_vars,
            equations: self.equations.iter().map(&f).collect(),
            strict_positives: self.strict_positives.iter().map(&f).collect(),
        }
    }
}

/// Finite union of basic sets, with an optional outer bound (used only by
/// sampling oracles) and a list of distinguished rational member points.
#[derive(Debug, Clone, PartialEq)]
pub struct SemiAlgebraicSet {
    num_vars: usize,
    disjuncts: Vec<BasicSet>,
    declared_bound: Option<OpenBox>,
    distinguished_points: Vec<Point>,
}

impl SemiAlgebraicSet {
    pub fn empty(num_vars: usize) -> Self {
        SemiAlgebraicSet {
            num_vars,
            disjuncts: Vec::new(),
            declared_bound: None,
            distinguished_points: Vec::new(),
        }
    }

    pub fn full(num_vars: usize) -> Self {
        SemiAlgebraicSet {
            num_vars,
            disjuncts: vec![BasicSet::top(num_vars)],
            declared_bound: None,
            distinguished_points: Vec::new(),
        }
    }

    pub fn from_disjuncts(
        num_vars: usize,
        disjuncts: Vec<BasicSet>,
    ) -> Result<Self, AlgebraError> {
        for d in &disjuncts {
            if d.num_vars() != num_vars {
                return Err(AlgebraError::DimensionMismatch {
                    expected: num_vars,
                    got: d.num_vars(),
                });
            }
        }
        Ok(SemiAlgebraicSet {
            num_vars,
            disjuncts: disjuncts
                .into_iter()
                .filter_map(|d| d.normalized())
                .collect(),
            declared_bound: None,
            distinguished_points: Vec::new(),
        })
    }

    /// The single point `{p}` with the point recorded as distinguished.
    pub fn point(p: &[Rat]) -> Self {
        SemiAlgebraicSet {
            num_vars: p.len(),
            disjuncts: vec![BasicSet::singleton(p)],
            declared_bound: None,
            distinguished_points: vec![p.to_vec()],
        }
    }

    pub fn with_bound(mut self, bound: OpenBox) -> Self {
        assert_eq!(bound.dim(), self.num_vars);
        self.declared_bound = Some(bound);
        self
    }

    /// Records a distinguished point; it must be an exact member.
    pub fn with_distinguished_point(mut self, p: Point) -> Result<Self, AlgebraError> {
        if !self.contains(&p)? {
            return Err(AlgebraError::PointNotMember);
        }
        self.distinguished_points.push(p);
        Ok(self)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn disjuncts(&self) -> &[BasicSet] {
        &self.disjuncts
    }

    pub fn declared_bound(&self) -> Option<&OpenBox> {
        self.declared_bound.as_ref()
    }

    pub fn distinguished_points(&self) -> &[Point] {
        &self.distinguished_points
    }

    pub fn is_syntactically_empty(&self) -> bool {
        self.disjuncts.is_empty()
    }

    /// Exact membership: some disjunct has all equations `= 0` and all
    /// strict inequalities `> 0` at `point`.
    pub fn contains(&self, point: &[Rat]) -> Result<bool, AlgebraError> {
        if point.len() != self.num_vars {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.num_vars,
                got: point.len(),
            });
        }
        for d in &self.disjuncts {
            if d.contains(point)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Image under an affine map: every polynomial condition is composed with
    /// the inverse map, bounds and distinguished points are mapped forward.
    pub fn affine_image(&self, map: &AffineMap) -> SemiAlgebraicSet {
        assert_eq!(map.dim(), self.num_vars);
        SemiAlgebraicSet {
            num_vars: self.num_vars,
            disjuncts: self
                .disjuncts
                .iter()
                .map(|d| d.map_polys(|p| p.compose_affine(map), self.num_vars))
                .collect(),
            declared_bound: self
                .declared_bound
                .as_ref()
                .map(|b| b.affine_image(map)),
            distinguished_points: self
                .distinguished_points
                .iter()
                .map(|p| map.apply(p))
                .collect(),
        }
    }

    /// Re-embeds into `new_num_vars` variables at the given (zero-based,
    /// injective) positions. Bounds and points are dropped: the image is a
    /// cylinder, unbounded along the fresh coordinates.
    pub fn inflate(&self, new_num_vars: usize, positions: &[usize]) -> SemiAlgebraicSet {
        assert_eq!(positions.len(), self.num_vars);
        SemiAlgebraicSet {
            num_vars: new_num_vars,
            disjuncts: self
                .disjuncts
                .iter()
                .map(|d| d.map_polys(|p| p.inflate(new_num_vars, positions), new_num_vars))
                .collect(),
            declared_bound: None,
            distinguished_points: Vec::new(),
        }
    }
}

/// Set-level operations with a disjunct budget guarding the disjunctive-form
/// blow-up of complement and its derivatives.
#[derive(Debug, Clone)]
pub struct SetAlgebra {
    pub disjunct_budget: usize,
}

impl Default for SetAlgebra {
    fn default() -> Self {
        SetAlgebra {
            disjunct_budget: 4096,
        }
    }
}

impl SetAlgebra {
    pub fn new(disjunct_budget: usize) -> Self {
        SetAlgebra { disjunct_budget }
    }

    fn check_dims(
        &self,
        x: &SemiAlgebraicSet,
        y: &SemiAlgebraicSet,
    ) -> Result<(), AlgebraError> {
        if x.num_vars != y.num_vars {
            return Err(AlgebraError::DimensionMismatch {
                expected: x.num_vars,
                got: y.num_vars,
            });
        }
        Ok(())
    }

    fn check_budget(&self, needed: usize) -> Result<(), AlgebraError> {
        if needed > self.disjunct_budget {
            return Err(AlgebraError::DisjunctBudget {
                needed,
                budget: self.disjunct_budget,
            });
        }
        Ok(())
    }

    pub fn union(
        &self,
        x: &SemiAlgebraicSet,
        y: &SemiAlgebraicSet,
    ) -> Result<SemiAlgebraicSet, AlgebraError> {
        self.check_dims(x, y)?;
        self.check_budget(x.disjuncts.len() + y.disjuncts.len())?;
        let mut disjuncts = x.disjuncts.clone();
        disjuncts.extend(y.disjuncts.iter().cloned());
        let declared_bound = match (&x.declared_bound, &y.declared_bound) {
            (Some(a), Some(b)) => Some(a.hull(b)),
            _ => None,
        };
        let mut distinguished_points = x.distinguished_points.clone();
        distinguished_points.extend(y.distinguished_points.iter().cloned());
        Ok(SemiAlgebraicSet {
            num_vars: x.num_vars,
            disjuncts,
            declared_bound,
            distinguished_points,
        })
    }

    pub fn intersect(
        &self,
        x: &SemiAlgebraicSet,
        y: &SemiAlgebraicSet,
    ) -> Result<SemiAlgebraicSet, AlgebraError> {
        self.check_dims(x, y)?;
        self.check_budget(x.disjuncts.len().saturating_mul(y.disjuncts.len()))?;
        let mut disjuncts = Vec::new();
        for a in &x.disjuncts {
            for b in &y.disjuncts {
                if let Some(d) = a.merged_with(b).normalized() {
                    disjuncts.push(d);
                }
            }
        }
        let declared_bound = x
            .declared_bound
            .clone()
            .or_else(|| y.declared_bound.clone());
        let mut distinguished_points = Vec::new();
        for p in x
            .distinguished_points
            .iter()
            .chain(&y.distinguished_points)
        {
            if x.contains(p)? && y.contains(p)? && !distinguished_points.contains(p) {
                distinguished_points.push(p.clone());
            }
        }
        Ok(SemiAlgebraicSet {
            num_vars: x.num_vars,
            disjuncts,
            declared_bound,
            distinguished_points,
        })
    }

    /// Complement in disjunctive form: negated atoms are expanded
    /// (`not (f=0)` to `f>0 or -f>0`; `not (g>0)` to `g=0 or -g>0`) and the
    /// conjunction over disjuncts is redistributed.
    pub fn complement(
        &self,
        x: &SemiAlgebraicSet,
    ) -> Result<SemiAlgebraicSet, AlgebraError> {
        // Complement of a union = intersection of per-disjunct complements.
        let mut acc: Vec<BasicSet> = vec![BasicSet::top(x.num_vars)];
        for d in &x.disjuncts {
            let negs = d.negated_atoms();
            if negs.is_empty() {
                // Complement of the whole space is empty.
                acc.clear();
                break;
            }
            let choice_count: usize = negs
                .iter()
                .map(|NegatedAtom::Choices(c)| c.len())
                .sum();
            self.check_budget(acc.len().saturating_mul(choice_count).max(acc.len()))?;
            let mut next: Vec<BasicSet> = Vec::new();
            for base in &acc {
                for NegatedAtom::Choices(choices) in &negs {
                    for atom in choices {
                        let mut b = base.clone();
                        match atom {
                            Atom::Eq(p) => b.equations.push(p.clone()),
                            Atom::Gt(p) => b.strict_positives.push(p.clone()),
                        }
                        if let Some(b) = b.normalized() {
                            next.push(b);
                        }
                    }
                }
            }
            self.check_budget(next.len())?;
            acc = next;
        }
        Ok(SemiAlgebraicSet {
            num_vars: x.num_vars,
            disjuncts: acc,
            declared_bound: None,
            distinguished_points: Vec::new(),
        })
    }

    pub fn difference(
        &self,
        x: &SemiAlgebraicSet,
        y: &SemiAlgebraicSet,
    ) -> Result<SemiAlgebraicSet, AlgebraError> {
        self.check_dims(x, y)?;
        let mut result = self.intersect(x, &self.complement(y)?)?;
        result.declared_bound = x.declared_bound.clone();
        let mut points = Vec::new();
        for p in &x.distinguished_points {
            if !y.contains(p)? {
                points.push(p.clone());
            }
        }
        result.distinguished_points = points;
        Ok(result)
    }

    /// Cartesian product; the variables of `y` are reindexed after those of
    /// `x`.
    pub fn product(
        &self,
        x: &SemiAlgebraicSet,
        y: &SemiAlgebraicSet,
    ) -> Result<SemiAlgebraicSet, AlgebraError> {
        let n = x.num_vars + y.num_vars;
        self.check_budget(x.disjuncts.len().saturating_mul(y.disjuncts.len()))?;
        let x_pos: Vec<usize> = (0..x.num_vars).collect();
        let y_pos: Vec<usize> = (x.num_vars..n).collect();
        let mut disjuncts = Vec::new();
        for a in &x.disjuncts {
            let a_inf = a.map_polys(|p| p.inflate(n, &x_pos), n);
            for b in &y.disjuncts {
                let b_inf = b.map_polys(|p| p.inflate(n, &y_pos), n);
                disjuncts.push(a_inf.merged_with(&b_inf));
            }
        }
        let declared_bound = match (&x.declared_bound, &y.declared_bound) {
            (Some(a), Some(b)) => {
                let mut intervals = a.intervals().to_vec();
                intervals.extend(b.intervals().iter().cloned());
                Some(OpenBox::new(intervals).expect("valid bounds"))
            }
            _ => None,
        };
        let mut distinguished_points = Vec::new();
        for p in &x.distinguished_points {
            for q in &y.distinguished_points {
                let mut v = p.clone();
                v.extend(q.iter().cloned());
                distinguished_points.push(v);
            }
        }
        Ok(SemiAlgebraicSet {
            num_vars: n,
            disjuncts,
            declared_bound,
            distinguished_points,
        })
    }
}

/// The unit sphere `sum x_i^2 = 1` with outer bound `(-2, 2)^n`.
pub fn unit_sphere(n: usize) -> SemiAlgebraicSet {
    let eq = sphere_poly(n, &rint(1));
    SemiAlgebraicSet {
        num_vars: n,
        disjuncts: vec![BasicSet {
            num_vars: n,
            equations: vec![eq],
            strict_positives: Vec::new(),
        }],
        declared_bound: Some(OpenBox::cube(n, &rint(2))),
        distinguished_points: Vec::new(),
    }
}

/// The closed unit ball: sphere union open interior.
pub fn unit_ball(n: usize) -> SemiAlgebraicSet {
    let eq = sphere_poly(n, &rint(1));
    SemiAlgebraicSet {
        num_vars: n,
        disjuncts: vec![
            BasicSet {
                num_vars: n,
                equations: vec![eq.clone()],
                strict_positives: Vec::new(),
            },
            BasicSet {
                num_vars: n,
                equations: Vec::new(),
                strict_positives: vec![eq.neg()],
            },
        ],
        declared_bound: Some(OpenBox::cube(n, &rint(2))),
        distinguished_points: Vec::new(),
    }
}

/// The unit sphere together with its center, the center recorded as a
/// distinguished point.
pub fn unit_dotted_sphere(n: usize) -> SemiAlgebraicSet {
    let origin = vec![rint(0); n];
    let mut s = unit_sphere(n);
    s.disjuncts.push(BasicSet::singleton(&origin));
    s.distinguished_points.push(origin);
    s
}

/// Affine image of the unit sphere under `map`.
pub fn sphere_of(map: &AffineMap, n: usize) -> SemiAlgebraicSet {
    assert_eq!(map.dim(), n);
    unit_sphere(n).affine_image(map)
}

/// Affine image of the closed unit ball under `map`.
pub fn ball_of(map: &AffineMap, n: usize) -> SemiAlgebraicSet {
    assert_eq!(map.dim(), n);
    unit_ball(n).affine_image(map)
}

/// Affine image of the dotted sphere; the distinguished point is `map`'s
/// translation vector.
pub fn dotted_sphere_of(map: &AffineMap, n: usize) -> SemiAlgebraicSet {
    assert_eq!(map.dim(), n);
    unit_dotted_sphere(n).affine_image(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn halfspace(n: usize, var: usize) -> SemiAlgebraicSet {
        SemiAlgebraicSet::from_disjuncts(
            n,
            vec![BasicSet::new(n, vec![], vec![Polynomial::var(n, var)]).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn membership_sphere_and_dotted() {
        let sq = unit_sphere(3);
        assert!(sq.contains(&[rint(0), rint(0), rint(1)]).unwrap());
        assert!(!sq.contains(&[rint(0), rint(0), rat(1, 2)]).unwrap());
        let dotted = unit_dotted_sphere(3);
        assert!(dotted.contains(&[rint(0), rint(0), rint(0)]).unwrap());
        assert!(dotted.contains(&[rint(1), rint(0), rint(0)]).unwrap());
        assert!(!dotted.contains(&[rat(1, 2), rint(0), rint(0)]).unwrap());
    }

    #[test]
    fn membership_dimension_error() {
        let sq = unit_sphere(3);
        assert!(matches!(
            sq.contains(&[rint(0)]),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn difference_structure() {
        // {x>0} - {y>0} = {x>0, -y>0} union {x>0, y=0}
        let alg = SetAlgebra::default();
        let x_pos = halfspace(2, 0);
        let y_pos = halfspace(2, 1);
        let d = alg.difference(&x_pos, &y_pos).unwrap();
        assert_eq!(d.disjuncts().len(), 2);
        // Brute-force over sign vectors of (x, y).
        let vals = [rint(-1), rint(0), rint(1)];
        for x in &vals {
            for y in &vals {
                let p = vec![x.clone(), y.clone()];
                let expected = x.is_positive() && !y.is_positive();
                assert_eq!(d.contains(&p).unwrap(), expected, "at {p:?}");
            }
        }
    }

    #[test]
    fn self_difference_empty_pointwise() {
        let alg = SetAlgebra::default();
        let x = unit_ball(2);
        let d = alg.difference(&x, &x).unwrap();
        for k in -4i64..=4 {
            for l in -4i64..=4 {
                let p = vec![rat(k, 3), rat(l, 3)];
                assert!(!d.contains(&p).unwrap());
            }
        }
    }

    #[test]
    fn product_of_halfspaces() {
        let alg = SetAlgebra::default();
        let a = halfspace(1, 0);
        let p = alg.product(&a, &a).unwrap();
        assert_eq!(p.num_vars(), 2);
        assert!(p.contains(&[rint(1), rint(2)]).unwrap());
        assert!(!p.contains(&[rint(1), rint(-2)]).unwrap());
    }

    #[test]
    fn complement_involution_pointwise() {
        let alg = SetAlgebra::default();
        let ball = unit_ball(2);
        let cc = alg.complement(&alg.complement(&ball).unwrap()).unwrap();
        for k in -6i64..=6 {
            for l in -6i64..=6 {
                let p = vec![rat(k, 4), rat(l, 4)];
                assert_eq!(cc.contains(&p).unwrap(), ball.contains(&p).unwrap());
            }
        }
    }

    #[test]
    fn complement_budget_fails_loudly() {
        let alg = SetAlgebra::new(4);
        // Intersection of three half-space complements needs 2^3 = 8 > 4.
        let mut disjuncts = Vec::new();
        for i in 0..3 {
            disjuncts.push(
                BasicSet::new(3, vec![Polynomial::var(3, i)], vec![]).unwrap(),
            );
        }
        let x = SemiAlgebraicSet::from_disjuncts(3, disjuncts).unwrap();
        assert!(matches!(
            alg.complement(&x),
            Err(AlgebraError::DisjunctBudget { .. })
        ));
    }

    #[test]
    fn shapes_under_affine_maps() {
        let map = AffineMap::new(rat(1, 2), vec![rint(1), rint(1), rint(1)]).unwrap();
        let ball = ball_of(&map, 3);
        assert!(ball.contains(&[rint(1), rint(1), rint(1)]).unwrap());
        assert!(!ball.contains(&[rint(0), rint(0), rint(0)]).unwrap());
        let sphere = sphere_of(&map, 3);
        assert!(sphere
            .contains(&[rat(3, 2), rint(1), rint(1)])
            .unwrap());
        let dotted = dotted_sphere_of(&map, 3);
        assert_eq!(dotted.distinguished_points(), &[map.translation().to_vec()]);
        assert!(dotted.contains(&[rint(1), rint(1), rint(1)]).unwrap());
    }

    #[test]
    fn sphere_membership_transports() {
        let map = AffineMap::new(rat(2, 3), vec![rat(1, 2), rint(-1), rint(0)]).unwrap();
        let s = sphere_of(&map, 3);
        let unit = unit_sphere(3);
        for k in 0..50i64 {
            let q = vec![rat(k, 7), rat(k - 25, 9), rat((k * k) % 11, 6)];
            assert_eq!(
                s.contains(&map.apply(&q)).unwrap(),
                unit.contains(&q).unwrap()
            );
        }
    }

    #[test]
    fn distinguished_point_validation() {
        let s = unit_sphere(2);
        assert!(matches!(
            s.clone().with_distinguished_point(vec![rint(0), rint(0)]),
            Err(AlgebraError::PointNotMember)
        ));
        let ok = s.with_distinguished_point(vec![rint(0), rint(1)]).unwrap();
        assert_eq!(ok.distinguished_points().len(), 1);
    }
}
