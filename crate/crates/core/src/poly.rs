//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A polynomial is a finite map from exponent vectors to nonzero rational
//! coefficients. The map is a `BTreeMap` so iteration order, and hence every
//! derived textual form, is deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::geom::AffineMap;
use crate::rat::{format_rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("disjunct budget exceeded: construction needs {needed} disjuncts, budget is {budget}")]
    DisjunctBudget { needed: usize, budget: usize },
    #[error("declared distinguished point is not a member of the set")]
    PointNotMember,
    #[error("invalid box: lower endpoint must be strictly below upper endpoint")]
    InvalidBox,
    #[error("invalid affine map: scale must be strictly positive")]
    InvalidScale,
}

/// Sparse exact-rational multivariate polynomial.
///
/// Invariants: no stored zero coefficient; every exponent vector has length
/// `num_vars`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rat) -> Self {
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; num_vars], c);
        }
        p
    }

    /// The monomial `x_i` (zero-based variable index).
    pub fn var(num_vars: usize, i: usize) -> Self {
        assert!(i < num_vars, "variable index out of range");
        let mut expo = vec![0; num_vars];
        expo[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(expo, Rat::one());
        Polynomial { num_vars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// duplicates and dropping zero coefficients.
    pub fn from_terms<I>(num_vars: usize, iter: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rat)>,
    {
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (expo, coeff) in iter {
            assert_eq!(expo.len(), num_vars, "exponent vector length mismatch");
            let entry = terms.entry(expo).or_insert_with(Rat::zero);
            *entry += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial { num_vars, terms }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (expo, c) = self.terms.iter().next().unwrap();
            if expo.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Largest exponent of variable `i` across terms.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        let mut terms = self.terms.clone();
        for (expo, c) in &other.terms {
            let entry = terms.entry(expo.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial {
            num_vars: self.num_vars,
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let expo: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = terms.entry(expo).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial {
            num_vars: self.num_vars,
            terms,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.num_vars, Rat::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat, AlgebraError> {
        if point.len() != self.num_vars {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.num_vars,
                got: point.len(),
            });
        }
        let mut acc = Rat::zero();
        for (expo, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (x, &e) in point.iter().zip(expo) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn partial_derivative(&self, i: usize) -> Self {
        assert!(i < self.num_vars);
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (expo, coeff) in &self.terms {
            if expo[i] == 0 {
                continue;
            }
            let mut e = expo.clone();
            let k = e[i];
            e[i] -= 1;
            let entry = terms.entry(e).or_insert_with(Rat::zero);
            *entry += coeff * Rat::from_integer(k.into());
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial {
            num_vars: self.num_vars,
            terms,
        }
    }

    /// Exact expansion of `s^deg * p((x - t) / s)` for the affine map
    /// `x -> s*x + t`. The composed polynomial has, at `map(q)`, the same
    /// sign as `p` at `q`: it equals `s^deg * p(q)` there with `s > 0`.
    pub fn compose_affine(&self, map: &AffineMap) -> Self {
        assert_eq!(self.num_vars, map.dim());
        let deg = self.degree();
        let mut acc = Self::zero(self.num_vars);
        for (expo, coeff) in &self.terms {
            let total: u32 = expo.iter().sum();
            // c * s^(deg-|e|) * prod_i (x_i - t_i)^(e_i)
            let mut term = Self::constant(
                self.num_vars,
                coeff * num_traits::pow::pow(map.scale().clone(), (deg - total) as usize),
            );
            for (i, &e) in expo.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let lin = Self::var(self.num_vars, i).add(&Self::constant(
                    self.num_vars,
                    -map.translation()[i].clone(),
                ));
                term = term.mul(&lin.pow(e));
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitutes rational values for a subset of the variables; the result
    /// ranges over the remaining variables in their original order.
    pub fn restrict(&self, values: &[Option<Rat>]) -> Self {
        assert_eq!(values.len(), self.num_vars);
        let free: Vec<usize> = (0..self.num_vars).filter(|&i| values[i].is_none()).collect();
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (expo, coeff) in &self.terms {
            let mut c = coeff.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    for _ in 0..expo[i] {
                        c *= v;
                    }
                }
            }
            if c.is_zero() {
                continue;
            }
            let new_expo: Vec<u32> = free.iter().map(|&i| expo[i]).collect();
            let entry = terms.entry(new_expo).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial {
            num_vars: free.len(),
            terms,
        }
    }

    /// Re-embeds the polynomial into `new_num_vars` variables, sending the
    /// i-th variable to position `positions[i]` (zero-based, injective).
    pub fn inflate(&self, new_num_vars: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.num_vars);
        assert!(positions.iter().all(|&p| p < new_num_vars));
        let terms = self
            .terms
            .iter()
            .map(|(expo, c)| {
                let mut e = vec![0u32; new_num_vars];
                for (i, &pos) in positions.iter().enumerate() {
                    e[pos] = expo[i];
                }
                (e, c.clone())
            })
            .collect();
        Polynomial {
            num_vars: new_num_vars,
            terms,
        }
    }

    /// Dense coefficient vector (low to high) for univariate polynomials.
    pub fn univariate_coeffs(&self) -> Option<Vec<Rat>> {
        if self.num_vars != 1 {
            return None;
        }
        let deg = self.degree() as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (expo, c) in &self.terms {
            coeffs[expo[0] as usize] = c.clone();
        }
        Some(coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (expo, coeff) in self.terms.iter().rev() {
            let mag = coeff.abs();
            if first {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in expo.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", format_rat(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", format_rat(&mag))?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `sum x_i^2 - r^2` over `n` variables: the sphere polynomial used by the
/// witness shapes.
pub fn sphere_poly(n: usize, radius: &Rat) -> Polynomial {
    let mut p = Polynomial::constant(n, -(radius * radius));
    for i in 0..n {
        p = p.add(&Polynomial::var(n, i).pow(2));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    fn unit_sphere3() -> Polynomial {
        sphere_poly(3, &rint(1))
    }

    #[test]
    fn eval_unit_sphere_points() {
        let p = unit_sphere3();
        assert_eq!(p.eval(&[rint(1), rint(0), rint(0)]).unwrap(), rint(0));
        assert_eq!(p.eval(&[rint(0), rint(0), rint(0)]).unwrap(), rint(-1));
        assert_eq!(
            p.eval(&[rat(1, 2), rat(1, 2), rat(1, 2)]).unwrap(),
            rat(-1, 4)
        );
    }

    #[test]
    fn eval_dimension_mismatch() {
        let p = unit_sphere3();
        assert_eq!(
            p.eval(&[rint(0)]),
            Err(AlgebraError::DimensionMismatch {
                expected: 3,
                got: 1
            })
        );
    }

    #[test]
    fn arithmetic_cancellation() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let s = x.add(&y);
        let d = s.sub(&y);
        assert_eq!(d, x);
        assert!(s.sub(&s).is_zero());
        let sq = s.mul(&s);
        // (x+y)^2 = x^2 + 2xy + y^2
        assert_eq!(sq.terms.len(), 3);
        assert_eq!(sq.degree(), 2);
    }

    #[test]
    fn compose_identity_is_noop() {
        let p = unit_sphere3();
        let id = AffineMap::identity(3);
        assert_eq!(p.compose_affine(&id), p);
    }

    #[test]
    fn compose_linear_example() {
        // p = x, map scale 2 translation 3 -> x - 3 (deg 1, s^0 factor).
        let p = Polynomial::var(1, 0);
        let map = AffineMap::new(rint(2), vec![rint(3)]).unwrap();
        let q = p.compose_affine(&map);
        let expected = Polynomial::var(1, 0).add(&Polynomial::constant(1, rint(-3)));
        assert_eq!(q, expected);
    }

    #[test]
    fn compose_sign_matches_preimage() {
        let p = sphere_poly(3, &rint(1)).add(&Polynomial::var(3, 1));
        let map = AffineMap::new(rat(1, 3), vec![rat(1, 2), rint(-1), rat(2, 7)]).unwrap();
        let q = p.compose_affine(&map);
        // Deterministic battery of rational points.
        for k in 0..100i64 {
            let pt = vec![rat(k, 7), rat(k - 50, 11), rat(3 * k % 13, 5)];
            let image = map.apply(&pt);
            let a = p.eval(&pt).unwrap();
            let b = q.eval(&image).unwrap();
            assert_eq!(a.is_zero(), b.is_zero());
            assert_eq!(a.is_negative(), b.is_negative());
        }
    }

    #[test]
    fn restrict_and_inflate() {
        // p = x1^2 + x2*x3
        let p = Polynomial::var(3, 0).pow(2).add(
            &Polynomial::var(3, 1).mul(&Polynomial::var(3, 2)),
        );
        let r = p.restrict(&[Some(rint(2)), None, None]);
        // -> 4 + x1*x2 over the two remaining vars
        assert_eq!(r.num_vars(), 2);
        assert_eq!(r.eval(&[rint(3), rint(5)]).unwrap(), rint(19));
        let q = Polynomial::var(2, 0).inflate(4, &[2, 0]);
        assert!(q.uses_var(2) && !q.uses_var(0));
    }

    #[test]
    fn derivative() {
        let p = Polynomial::var(2, 0).pow(2).scale(&rint(3));
        let d = p.partial_derivative(0);
        assert_eq!(d, Polynomial::var(2, 0).scale(&rint(6)));
        assert!(p.partial_derivative(1).is_zero());
    }

    #[test]
    fn display_form() {
        let p = sphere_poly(2, &rint(1));
        assert_eq!(p.to_string(), "x1^2 + x2^2 - 1");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
    }
}
