//! Open rational boxes and affine maps.
//!
//! Open boxes are the only open sets this crate manipulates: they are open,
//! semi-algebraic, closed under bisection, and support interval certification
//! directly. Affine maps are a positive uniform scaling followed by a
//! translation.

use num_traits::Signed;

use crate::poly::AlgebraError;
use crate::rat::{format_rat, rint, Point, Rat};

/// Open axis-aligned box with rational endpoints, `lo_i < hi_i` for all i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenBox {
    intervals: Vec<(Rat, Rat)>,
}

impl OpenBox {
    pub fn new(intervals: Vec<(Rat, Rat)>) -> Result<Self, AlgebraError> {
        if intervals.iter().any(|(lo, hi)| lo >= hi) {
            return Err(AlgebraError::InvalidBox);
        }
        Ok(OpenBox { intervals })
    }

    /// The cube `(-r, r)^n`.
    pub fn cube(n: usize, r: &Rat) -> Self {
        assert!(r.is_positive());
        OpenBox {
            intervals: (0..n).map(|_| (-r.clone(), r.clone())).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[(Rat, Rat)] {
        &self.intervals
    }

    pub fn lo(&self, i: usize) -> &Rat {
        &self.intervals[i].0
    }

    pub fn hi(&self, i: usize) -> &Rat {
        &self.intervals[i].1
    }

    pub fn width(&self, i: usize) -> Rat {
        self.hi(i) - self.lo(i)
    }

    pub fn min_width(&self) -> Rat {
        (0..self.dim()).map(|i| self.width(i)).min().unwrap()
    }

    pub fn center(&self) -> Point {
        self.intervals
            .iter()
            .map(|(lo, hi)| (lo + hi) / rint(2))
            .collect()
    }

    /// Strict interior membership.
    pub fn contains_point(&self, p: &[Rat]) -> bool {
        p.len() == self.dim()
            && p.iter()
                .zip(&self.intervals)
                .all(|(x, (lo, hi))| lo < x && x < hi)
    }

    /// Closure membership (`lo <= x <= hi`).
    pub fn closure_contains_point(&self, p: &[Rat]) -> bool {
        p.len() == self.dim()
            && p.iter()
                .zip(&self.intervals)
                .all(|(x, (lo, hi))| lo <= x && x <= hi)
    }

    /// `other` is contained in `self` (as subsets of space, endpoints may touch).
    pub fn contains_box(&self, other: &OpenBox) -> bool {
        self.dim() == other.dim()
            && self
                .intervals
                .iter()
                .zip(&other.intervals)
                .all(|((slo, shi), (olo, ohi))| slo <= olo && ohi <= shi)
    }

    /// Index of the widest coordinate (first maximum, deterministic).
    pub fn widest_axis(&self) -> usize {
        let mut best = 0;
        let mut best_w = self.width(0);
        for i in 1..self.dim() {
            let w = self.width(i);
            if w > best_w {
                best = i;
                best_w = w;
            }
        }
        best
    }

    /// Splits at the midpoint of `axis`. The two open halves jointly cover
    /// the box only up to the splitting hyperplane; certification works with
    /// closures, for which the cover is exact.
    pub fn bisect(&self, axis: usize) -> (OpenBox, OpenBox) {
        let (lo, hi) = &self.intervals[axis];
        let mid = (lo + hi) / rint(2);
        let mut left = self.clone();
        let mut right = self.clone();
        left.intervals[axis].1 = mid.clone();
        right.intervals[axis].0 = mid;
        (left, right)
    }

    /// Image under an affine map (componentwise `s*x + t`).
    pub fn affine_image(&self, map: &AffineMap) -> OpenBox {
        assert_eq!(self.dim(), map.dim());
        OpenBox {
            intervals: self
                .intervals
                .iter()
                .enumerate()
                .map(|(i, (lo, hi))| {
                    (
                        lo * map.scale() + &map.translation()[i],
                        hi * map.scale() + &map.translation()[i],
                    )
                })
                .collect(),
        }
    }

    /// Smallest box containing both.
    pub fn hull(&self, other: &OpenBox) -> OpenBox {
        assert_eq!(self.dim(), other.dim());
        OpenBox {
            intervals: self
                .intervals
                .iter()
                .zip(&other.intervals)
                .map(|((alo, ahi), (blo, bhi))| {
                    (alo.min(blo).clone(), ahi.max(bhi).clone())
                })
                .collect(),
        }
    }

    /// Box scaled about its center by `factor > 0`.
    pub fn scaled_about_center(&self, factor: &Rat) -> OpenBox {
        assert!(factor.is_positive());
        OpenBox {
            intervals: self
                .intervals
                .iter()
                .map(|(lo, hi)| {
                    let c = (lo + hi) / rint(2);
                    let h = (hi - lo) / rint(2) * factor;
                    (&c - &h, &c + &h)
                })
                .collect(),
        }
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .intervals
            .iter()
            .map(|(lo, hi)| format!("({}, {})", format_rat(lo), format_rat(hi)))
            .collect();
        parts.join(" x ")
    }
}

/// Positive uniform scaling composed with a translation: `x -> s*x + t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    scale: Rat,
    translation: Point,
}

impl AffineMap {
    pub fn new(scale: Rat, translation: Point) -> Result<Self, AlgebraError> {
        if !scale.is_positive() {
            return Err(AlgebraError::InvalidScale);
        }
        Ok(AffineMap { scale, translation })
    }

    pub fn identity(n: usize) -> Self {
        AffineMap {
            scale: rint(1),
            translation: vec![rint(0); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    pub fn translation(&self) -> &[Rat] {
        &self.translation
    }

    pub fn apply(&self, q: &[Rat]) -> Point {
        assert_eq!(q.len(), self.dim());
        q.iter()
            .zip(&self.translation)
            .map(|(x, t)| x * &self.scale + t)
            .collect()
    }

    pub fn apply_inverse(&self, x: &[Rat]) -> Point {
        assert_eq!(x.len(), self.dim());
        x.iter()
            .zip(&self.translation)
            .map(|(x, t)| (x - t) / &self.scale)
            .collect()
    }

    pub fn describe(&self) -> String {
        format!(
            "scale {} center {}",
            format_rat(&self.scale),
            crate::rat::format_point(&self.translation)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn box_validation() {
        assert!(OpenBox::new(vec![(rint(0), rint(1))]).is_ok());
        assert_eq!(
            OpenBox::new(vec![(rint(1), rint(1))]),
            Err(AlgebraError::InvalidBox)
        );
    }

    #[test]
    fn bisect_and_widest() {
        let b = OpenBox::new(vec![(rint(0), rint(1)), (rint(0), rint(4))]).unwrap();
        assert_eq!(b.widest_axis(), 1);
        let (l, r) = b.bisect(1);
        assert_eq!(l.hi(1), &rint(2));
        assert_eq!(r.lo(1), &rint(2));
        assert!(b.contains_box(&l) && b.contains_box(&r));
    }

    #[test]
    fn affine_roundtrip() {
        let m = AffineMap::new(rat(1, 2), vec![rint(1), rint(-2)]).unwrap();
        let p = vec![rat(3, 7), rat(-1, 5)];
        assert_eq!(m.apply_inverse(&m.apply(&p)), p);
        assert!(AffineMap::new(rint(0), vec![rint(0)]).is_err());
    }

    #[test]
    fn box_affine_image() {
        let b = OpenBox::cube(2, &rint(1));
        let m = AffineMap::new(rat(1, 2), vec![rint(1), rint(1)]).unwrap();
        let img = b.affine_image(&m);
        assert_eq!(img.lo(0), &rat(1, 2));
        assert_eq!(img.hi(0), &rat(3, 2));
    }
}
