//! Deterministic low-discrepancy sampling with exact rational outputs.
//!
//! Halton sequences (van der Corput radical inverse in coprime prime bases)
//! produce rationals whose denominators are prime powers, so every sample is
//! exact and the whole stream is reproducible from the starting index. The
//! sphere sampler maps low-discrepancy points through the two stereographic
//! charts, whose images are exact rational points of the unit sphere.

use num_bigint::BigInt;
use num_traits::One;

use crate::geom::OpenBox;
use crate::rat::{rint, Point, Rat};

const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Radical inverse of `index` in the given base: reverses the base-b digits
/// across the radix point. Strictly inside (0, 1) for index > 0.
fn radical_inverse(mut index: u64, base: u64) -> Rat {
    let mut num = BigInt::from(0u8);
    let mut den = BigInt::one();
    while index > 0 {
        num = num * base + BigInt::from(index % base);
        den *= base;
        index /= base;
    }
    Rat::new(num, den)
}

/// Deterministic Halton sequence over `(0,1)^dim`, offset by a seed.
#[derive(Debug, Clone)]
pub struct Halton {
    dim: usize,
    index: u64,
}

impl Halton {
    /// The seed offsets the start index; identical seeds replay identical
    /// streams.
    pub fn new(dim: usize, seed: u64) -> Self {
        assert!(dim <= PRIMES.len(), "dimension too large for Halton bases");
        Halton {
            dim,
            index: seed.wrapping_mul(7919).wrapping_add(1),
        }
    }

    pub fn next_unit(&mut self) -> Point {
        let i = self.index;
        self.index = self.index.wrapping_add(1);
        (0..self.dim)
            .map(|d| {
                let r = radical_inverse(i, PRIMES[d]);
                if r == rint(0) {
                    // Cannot occur for i > 0; keep outputs interior anyway.
                    Rat::new(BigInt::one(), BigInt::from(2u8))
                } else {
                    r
                }
            })
            .collect()
    }

    /// Next sample strictly inside the open box.
    pub fn next_in_box(&mut self, b: &OpenBox) -> Point {
        assert_eq!(b.dim(), self.dim);
        let u = self.next_unit();
        u.into_iter()
            .zip(b.intervals())
            .map(|(t, (lo, hi))| lo + (hi - lo) * t)
            .collect()
    }

    /// Next sample in the centered cube `(-1, 1)^dim`.
    pub fn next_symmetric(&mut self) -> Point {
        let u = self.next_unit();
        u.into_iter().map(|t| t * rint(2) - rint(1)).collect()
    }
}

/// Exact rational points on the unit sphere in `R^n`, alternating between
/// the two stereographic charts so the whole sphere is covered.
#[derive(Debug, Clone)]
pub struct SphereSampler {
    halton: Halton,
    flip: bool,
}

impl SphereSampler {
    pub fn new(n: usize, seed: u64) -> Self {
        assert!(n >= 2);
        SphereSampler {
            halton: Halton::new(n - 1, seed),
            flip: false,
        }
    }

    /// Exact point with `sum x_i^2 = 1`.
    pub fn next(&mut self) -> Point {
        let u = self.halton.next_symmetric();
        let q: Rat = u.iter().map(|t| t * t).sum();
        let denom = &q + rint(1);
        let mut point: Point = u.iter().map(|t| t * rint(2) / &denom).collect();
        let last = (&q - rint(1)) / &denom;
        // Alternate projection poles to cover both hemispheres.
        point.push(if self.flip { -last } else { last });
        self.flip = !self.flip;
        point
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use num_traits::Zero;

    #[test]
    fn halton_is_deterministic_and_interior() {
        let mut a = Halton::new(3, 42);
        let mut b = Halton::new(3, 42);
        let box3 = OpenBox::cube(3, &rint(2));
        for _ in 0..50 {
            let pa = a.next_in_box(&box3);
            let pb = b.next_in_box(&box3);
            assert_eq!(pa, pb);
            assert!(box3.contains_point(&pa));
        }
        let mut c = Halton::new(3, 43);
        assert_ne!(a.next_unit(), c.next_unit());
    }

    #[test]
    fn sphere_points_are_exact() {
        let mut s = SphereSampler::new(3, 7);
        let mut saw_upper = false;
        let mut saw_lower = false;
        for _ in 0..100 {
            let p = s.next();
            let norm2: Rat = p.iter().map(|t| t * t).sum();
            assert_eq!(norm2, rint(1));
            if p[2] > rat(1, 3) {
                saw_upper = true;
            }
            if p[2] < rat(-1, 3) {
                saw_lower = true;
            }
        }
        assert!(saw_upper && saw_lower, "both chart poles covered");
    }

    #[test]
    fn radical_inverse_values() {
        assert_eq!(radical_inverse(1, 2), rat(1, 2));
        assert_eq!(radical_inverse(2, 2), rat(1, 4));
        assert_eq!(radical_inverse(3, 2), rat(3, 4));
        assert_eq!(radical_inverse(4, 3), rat(4, 9));
        assert!(!radical_inverse(5, 5).is_zero());
    }
}
