//! Exact rational scalars and a few helpers shared across the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number. All correctness-bearing arithmetic in this crate
/// uses this type; there is no floating point anywhere.
pub type Rat = BigRational;

/// A point with exact rational coordinates.
pub type Point = Vec<Rat>;

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `1/2^k`.
pub fn pow2_inv(k: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(2u8).pow(k))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Formats a point as `(x1, x2, ...)`.
pub fn format_point(p: &[Rat]) -> String {
    let coords: Vec<String> = p.iter().map(format_rat).collect();
    format!("({})", coords.join(", "))
}

/// Parses `p` or `p/q` with an optional leading sign.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid integer `{num}`"))?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| format!("invalid integer `{d}`"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err("zero denominator".to_string());
    }
    Ok(Rat::new(n, d))
}

/// Exact square root when `r` is a perfect square of a rational; `None`
/// otherwise. Requires `r >= 0`.
pub fn sqrt_exact(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// Rational lower/upper bounds of `sqrt(r)` with `hi - lo <= eps`.
/// Requires `r >= 0` and `eps > 0`.
pub fn sqrt_bounds(r: &Rat, eps: &Rat) -> (Rat, Rat) {
    assert!(!r.is_negative(), "sqrt_bounds of a negative rational");
    if let Some(s) = sqrt_exact(r) {
        return (s.clone(), s);
    }
    // Integer floor sqrt of the numerator/denominator gives a first bracket.
    let mut lo = Rat::new(r.numer().sqrt(), r.denom().sqrt() + BigInt::one());
    let mut hi = Rat::new(r.numer().sqrt() + BigInt::one(), r.denom().sqrt());
    debug_assert!(&(&lo * &lo) <= r && r <= &(&hi * &hi));
    while &hi - &lo > *eps {
        let mid = (&lo + &hi) / rint(2);
        if &(&mid * &mid) <= r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-7").unwrap(), rint(-7));
        assert_eq!(parse_rat(" -3/9 ").unwrap(), rat(-1, 3));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(format_rat(&rat(-1, 3)), "-1/3");
        assert_eq!(format_rat(&rint(5)), "5");
    }

    #[test]
    fn exact_sqrt() {
        assert_eq!(sqrt_exact(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(sqrt_exact(&rint(2)), None);
        assert_eq!(sqrt_exact(&rint(0)), Some(rint(0)));
        assert_eq!(sqrt_exact(&rint(-1)), None);
    }

    #[test]
    fn sqrt_bracket() {
        let (lo, hi) = sqrt_bounds(&rint(2), &rat(1, 1000));
        assert!(&lo * &lo <= rint(2) && rint(2) <= &hi * &hi);
        assert!(&hi - &lo <= rat(1, 1000));
        let (lo, hi) = sqrt_bounds(&rat(9, 16), &rat(1, 1_000_000));
        assert_eq!(lo, rat(3, 4));
        assert_eq!(hi, rat(3, 4));
    }
}
