//! Exact rational helpers: parsing, formatting, certified square/nth roots
//! and outward-bounded interval arithmetic.
//!
//! Everything here is exact. Square roots and n-th roots of rationals are
//! irrational in general, so they are only ever produced as certified
//! two-sided rational bounds; the bounds can be made as tight as needed.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parses an exact rational from `p/q`, a finite decimal, or an integer.
///
/// Floating point notation (`1e-3`, `inf`, ...) is rejected: configs must be
/// exact.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidConfig(format!("not an exact rational: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.trim_start().starts_with('-');
        let i: BigInt = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        let f: BigInt = frac_part.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let num = i.magnitude().clone() * scale.magnitude().clone() + f.magnitude().clone();
        let num = BigInt::from_biguint(
            if negative {
                num_bigint::Sign::Minus
            } else {
                num_bigint::Sign::Plus
            },
            num,
        );
        return Ok(BigRational::new(num, scale));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from(n))
}

/// Formats a rational as `p/q`, or just `p` when it is an integer.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Floor of the integer square root.
pub fn isqrt_floor(n: &BigUint) -> BigUint {
    n.sqrt()
}

/// Ceiling of the integer square root.
pub fn isqrt_ceil(n: &BigUint) -> BigUint {
    let r = n.sqrt();
    if &r * &r == *n {
        r
    } else {
        r + BigUint::one()
    }
}

/// Certified two-sided bounds for sqrt(q), `q >= 0`, with absolute width
/// at most `2^-bits` (or exact when q is a perfect rational square).
pub fn sqrt_bounds(q: &BigRational, bits: u32) -> (BigRational, BigRational) {
    assert!(!q.is_negative(), "sqrt of negative rational");
    if q.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    // sqrt(a/b) = sqrt(a*b) / b; scale by 4^bits for precision.
    let a = q.numer().magnitude();
    let b = q.denom().magnitude();
    let scaled = a * b << (2 * bits as usize);
    let r = isqrt_floor(&scaled);
    let den = BigInt::from(b.clone()) << (bits as usize);
    if &r * &r == scaled {
        let v = BigRational::new(BigInt::from(r), den);
        return (v.clone(), v);
    }
    let lo = BigRational::new(BigInt::from(r.clone()), den.clone());
    let hi = BigRational::new(BigInt::from(r + BigUint::one()), den);
    (lo, hi)
}

/// Floor of the integer n-th root.
pub fn inth_root_floor(n: &BigUint, k: u32) -> BigUint {
    n.nth_root(k)
}

/// Certified two-sided bounds for q^(1/k), `q >= 0`, `k >= 1`.
pub fn nth_root_bounds(q: &BigRational, k: u32, bits: u32) -> (BigRational, BigRational) {
    assert!(k >= 1);
    assert!(!q.is_negative());
    if k == 1 {
        return (q.clone(), q.clone());
    }
    if q.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    // (a/b)^(1/k) = (a * b^(k-1))^(1/k) / b; scale by 2^(k*bits).
    let a = q.numer().magnitude();
    let b = q.denom().magnitude();
    let scaled = a * b.pow(k - 1) << ((k * bits) as usize);
    let r = inth_root_floor(&scaled, k);
    let den = BigInt::from(b.clone()) << (bits as usize);
    if r.pow(k) == scaled {
        let v = BigRational::new(BigInt::from(r), den);
        return (v.clone(), v);
    }
    let lo = BigRational::new(BigInt::from(r.clone()), den.clone());
    let hi = BigRational::new(BigInt::from(r + BigUint::one()), den);
    (lo, hi)
}

/// Rounds `q` down to the dyadic grid with denominator `2^bits`.
pub fn dyadic_floor(q: &BigRational, bits: u32) -> BigRational {
    let scaled = q * BigRational::from(BigInt::one() << (bits as usize));
    let fl = scaled.floor();
    fl / BigRational::from(BigInt::one() << (bits as usize))
}

/// A closed rational interval `[lo, hi]`.
///
/// All operations are exact; the interval only widens where a quantity
/// (square root, modulus) has no rational value.
#[derive(Debug, Clone, PartialEq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        RatInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Self) -> Self {
        RatInterval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> Self {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_negative() {
            RatInterval::new(&self.hi * c, &self.lo * c)
        } else {
            RatInterval::new(&self.lo * c, &self.hi * c)
        }
    }

    pub fn shift(&self, c: &BigRational) -> Self {
        RatInterval::new(&self.lo + c, &self.hi + c)
    }

    /// |self| as an interval.
    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let hi = if -&self.lo > self.hi {
                -self.lo.clone()
            } else {
                self.hi.clone()
            };
            RatInterval::new(BigRational::zero(), hi)
        }
    }

    /// Interval square, tight (not self.mul(self), which overcounts
    /// the dependency).
    pub fn square(&self) -> Self {
        let a = self.abs();
        RatInterval::new(&a.lo * &a.lo, &a.hi * &a.hi)
    }

    /// sqrt of a nonnegative interval, outward-rounded to `bits`.
    pub fn sqrt(&self, bits: u32) -> Self {
        let lo = if self.lo.is_negative() {
            BigRational::zero()
        } else {
            sqrt_bounds(&self.lo, bits).0
        };
        let hi = sqrt_bounds(&self.hi, bits).1;
        RatInterval::new(lo, hi)
    }

    /// Evaluates a polynomial with rational coefficients (low-to-high) over
    /// the interval by Horner's rule. Exact, possibly wider than the true
    /// image.
    pub fn eval_poly(&self, coeffs: &[BigRational]) -> Self {
        let mut acc = RatInterval::point(BigRational::zero());
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).shift(c);
        }
        acc
    }

    /// True if the intervals cannot intersect.
    pub fn disjoint(&self, other: &Self) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

/// gcd of two i64 magnitudes.
pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    a.unsigned_abs().gcd(&b.unsigned_abs()) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("1.5").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert_eq!(parse_rational("-7/10").unwrap(), rat(-7, 10));
        assert!(parse_rational("1e-3").is_err());
        assert!(parse_rational("nan").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn fmt_roundtrip() {
        assert_eq!(fmt_rational(&rat(3, 2)), "3/2");
        assert_eq!(fmt_rational(&rat_int(-4)), "-4");
        assert_eq!(parse_rational(&fmt_rational(&rat(-7, 12))).unwrap(), rat(-7, 12));
    }

    #[test]
    fn sqrt_bounds_bracket() {
        let two = rat_int(2);
        let (lo, hi) = sqrt_bounds(&two, 40);
        assert!(&lo * &lo <= two && two <= &hi * &hi);
        assert!(&hi - &lo <= rat(1, 1 << 30));
        // perfect square collapses
        let (lo, hi) = sqrt_bounds(&rat(9, 4), 10);
        assert_eq!(lo, rat(3, 2));
        assert_eq!(hi, rat(3, 2));
    }

    #[test]
    fn nth_root_bounds_bracket() {
        let v = rat_int(5);
        let (lo, hi) = nth_root_bounds(&v, 3, 30);
        assert!(lo.pow(3) <= v && v <= hi.pow(3));
        let (lo, hi) = nth_root_bounds(&rat(8, 27), 3, 10);
        assert_eq!(lo, rat(2, 3));
        assert_eq!(hi, rat(2, 3));
    }

    #[test]
    fn interval_ops() {
        let a = RatInterval::new(rat_int(-1), rat_int(2));
        let sq = a.square();
        assert_eq!(sq.lo, rat_int(0));
        assert_eq!(sq.hi, rat_int(4));
        let b = a.abs();
        assert_eq!(b.lo, rat_int(0));
        assert_eq!(b.hi, rat_int(2));
        // x^2 - 2 over [1, 3/2]
        let p = vec![rat_int(-2), rat_int(0), rat_int(1)];
        let img = RatInterval::new(rat_int(1), rat(3, 2)).eval_poly(&p);
        assert!(img.lo <= rat(-3, 4) && img.hi >= rat(1, 4));
    }
}
