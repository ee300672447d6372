//! Interval arithmetic over rational endpoints.
//!
//! Endpoints are exact rationals, so no outward rounding is needed and every
//! enclosure is deterministic and bit-exact reproducible.

use num_traits::{One, Signed, Zero};

use crate::geom::OpenBox;
use crate::poly::Polynomial;
use crate::rat::Rat;

/// Closed interval `[lo, hi]` with rational endpoints, `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(r: Rat) -> Self {
        Interval {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, r: &Rat) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, c: &Rat) -> Interval {
        if c.is_negative() {
            Interval {
                lo: &self.hi * c,
                hi: &self.lo * c,
            }
        } else {
            Interval {
                lo: &self.lo * c,
                hi: &self.hi * c,
            }
        }
    }

    /// Integer power with the even-power tightening: when the base interval
    /// straddles zero and the exponent is even, the result starts at zero.
    pub fn pow(&self, n: u32) -> Interval {
        if n == 0 {
            return Interval::point(Rat::one());
        }
        let lo_n = pow_rat(&self.lo, n);
        let hi_n = pow_rat(&self.hi, n);
        if n % 2 == 1 {
            return Interval { lo: lo_n, hi: hi_n };
        }
        if !self.lo.is_negative() {
            Interval { lo: lo_n, hi: hi_n }
        } else if !self.hi.is_positive() {
            Interval { lo: hi_n, hi: lo_n }
        } else {
            Interval {
                lo: Rat::zero(),
                hi: lo_n.max(hi_n),
            }
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo <= hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }
}

fn pow_rat(r: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..n {
        acc *= r;
    }
    acc
}

/// Term-by-term interval enclosure of `{p(x) : x in closure(b)}`.
pub fn poly_range(p: &Polynomial, b: &OpenBox) -> Interval {
    let coords: Vec<Interval> = b
        .intervals()
        .iter()
        .map(|(lo, hi)| Interval::new(lo.clone(), hi.clone()))
        .collect();
    poly_range_intervals(p, &coords)
}

/// Enclosure of `p` over a box given as per-coordinate intervals.
pub fn poly_range_intervals(p: &Polynomial, coords: &[Interval]) -> Interval {
    assert_eq!(coords.len(), p.num_vars());
    let mut acc = Interval::point(Rat::zero());
    for (expo, coeff) in p.terms() {
        let mut term = Interval::point(Rat::one());
        for (iv, &e) in coords.iter().zip(expo) {
            if e > 0 {
                term = term.mul(&iv.pow(e));
            }
        }
        acc = acc.add(&term.scale(coeff));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::sphere_poly;
    use crate::rat::{rat, rint};

    #[test]
    fn constant_on_any_box() {
        let p = Polynomial::constant(2, rint(5));
        let b = OpenBox::cube(2, &rint(3));
        let r = poly_range(&p, &b);
        assert_eq!(r, Interval::point(rint(5)));
    }

    #[test]
    fn identity_on_unit_interval() {
        let p = Polynomial::var(1, 0);
        let b = OpenBox::new(vec![(rint(0), rint(1))]).unwrap();
        let r = poly_range(&p, &b);
        assert!(r.contains(&rint(0)) && r.contains(&rint(1)));
    }

    #[test]
    fn sphere_poly_on_small_cube() {
        // x^2+y^2+z^2-1 on (-1/4, 1/4)^3: term-by-term range [-1, -13/16].
        let p = sphere_poly(3, &rint(1));
        let b = OpenBox::cube(3, &rat(1, 4));
        let r = poly_range(&p, &b);
        assert!(Interval::new(rint(-1), rat(-13, 16)).contains_interval(&r));
        assert_eq!(r, Interval::new(rint(-1), rat(-13, 16)));
    }

    #[test]
    fn even_power_tightening() {
        let iv = Interval::new(rint(-2), rint(1));
        assert_eq!(iv.pow(2), Interval::new(rint(0), rint(4)));
        assert_eq!(iv.pow(3), Interval::new(rint(-8), rint(1)));
        assert_eq!(
            Interval::new(rint(-3), rint(-2)).pow(2),
            Interval::new(rint(4), rint(9))
        );
    }

    #[test]
    fn enclosure_contains_sampled_values() {
        let p = sphere_poly(2, &rint(1)).mul(&Polynomial::var(2, 0));
        let b = OpenBox::new(vec![(rat(-1, 2), rint(2)), (rint(-1), rat(3, 2))]).unwrap();
        let r = poly_range(&p, &b);
        for i in 0..=8 {
            for j in 0..=8 {
                let x = b.lo(0) + (b.hi(0) - b.lo(0)) * rat(i, 8);
                let y = b.lo(1) + (b.hi(1) - b.lo(1)) * rat(j, 8);
                let v = p.eval(&[x, y]).unwrap();
                assert!(r.contains(&v));
            }
        }
    }
}
