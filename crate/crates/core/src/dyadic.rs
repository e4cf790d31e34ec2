//! Exact dyadic rationals `num / 2^exp`.
//!
//! Every coordinate and every ℓ∞ / ℓ1 distance between points of a digital
//! point set is dyadic, and so is every squared ℓ2 distance. Values are kept
//! normalized (odd numerator, or zero with exponent zero) so that structural
//! equality is numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// A non-negative dyadic rational `num / 2^exp`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Dyadic {
    num: u128,
    exp: i32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    pub fn new(num: u128, exp: i32) -> Self {
        if num == 0 {
            return Self::ZERO;
        }
        let tz = num.trailing_zeros();
        Dyadic {
            num: num >> tz,
            exp: exp - tz as i32,
        }
    }

    /// `2^e`.
    pub fn pow2(e: i32) -> Self {
        Dyadic { num: 1, exp: -e }
    }

    /// Normalized numerator.
    pub fn numerator(&self) -> u128 {
        self.num
    }

    /// Normalized exponent: the value is `numerator() / 2^exponent()`.
    pub fn exponent(&self) -> i32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// `Some(e)` when the value is exactly `2^e`.
    pub fn log2(&self) -> Option<i32> {
        (self.num == 1).then_some(-self.exp)
    }

    /// Multiplies by `2^k`.
    pub fn mul_pow2(&self, k: i32) -> Self {
        if self.is_zero() {
            return *self;
        }
        Dyadic {
            num: self.num,
            exp: self.exp - k,
        }
    }

    pub fn half(&self) -> Self {
        self.mul_pow2(-1)
    }

    /// Numerator of the value expressed over `2^scale`, if it is an integer
    /// there and fits.
    pub fn numerator_at(&self, scale: i32) -> Option<u128> {
        let shift = scale - self.exp;
        if shift < 0 {
            return None;
        }
        if self.num == 0 {
            return Some(0);
        }
        if shift >= 128 || self.num.leading_zeros() < shift as u32 {
            return None;
        }
        Some(self.num << shift)
    }

    pub fn checked_add(&self, other: &Dyadic) -> Option<Dyadic> {
        let e = self.exp.max(other.exp);
        let a = self.numerator_at(e)?;
        let b = other.numerator_at(e)?;
        Some(Dyadic::new(a.checked_add(b)?, e))
    }

    /// `self - other`, or `None` when the result would be negative or overflow.
    pub fn checked_sub(&self, other: &Dyadic) -> Option<Dyadic> {
        let e = self.exp.max(other.exp);
        let a = self.numerator_at(e)?;
        let b = other.numerator_at(e)?;
        Some(Dyadic::new(a.checked_sub(b)?, e))
    }

    pub fn to_f64(&self) -> f64 {
        // Split the power so that 2^-exp does not overflow for large exponents.
        let mut v = self.num as f64;
        let mut e = self.exp;
        while e > 1000 {
            v *= 2f64.powi(-1000);
            e -= 1000;
        }
        v * 2f64.powi(-e)
    }

    pub fn to_rational(&self) -> BigRational {
        let num = BigInt::from(self.num);
        if self.exp >= 0 {
            BigRational::new(num, BigInt::from(1) << self.exp as usize)
        } else {
            BigRational::from_integer(num << (-self.exp) as usize)
        }
    }

    /// Position of the most significant bit relative to the binary point.
    fn magnitude_bits(&self) -> i64 {
        (128 - self.num.leading_zeros()) as i64 - self.exp as i64
    }

    /// Floor and ceiling dyadic approximations of `sqrt(self)`, both exact
    /// when the value is a perfect square at the working precision.
    pub fn sqrt_bounds(&self) -> (Dyadic, Dyadic) {
        if self.is_zero() {
            return (Dyadic::ZERO, Dyadic::ZERO);
        }
        let bits = (128 - self.num.leading_zeros()) as i64;
        // Largest t with bits + 2t - exp <= 126, so the shifted radicand fits.
        let t = (126 - bits + self.exp as i64).div_euclid(2);
        let shift = 2 * t - self.exp as i64;
        let (lo_rad, hi_rad) = if shift >= 0 {
            let r = self.num << shift;
            (r, r)
        } else {
            let s = (-shift) as u32;
            let floor = self.num >> s;
            let exact = floor << s == self.num;
            (floor, if exact { floor } else { floor + 1 })
        };
        let lo = isqrt(lo_rad);
        let hi = {
            let r = isqrt(hi_rad);
            if r * r == hi_rad {
                r
            } else {
                r + 1
            }
        };
        (Dyadic::new(lo, t as i32), Dyadic::new(hi, t as i32))
    }
}

/// Floor of the square root of a `u128`.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// Smallest `r` with `r * r >= n`.
pub fn isqrt_ceil(n: u128) -> u128 {
    let r = isqrt(n);
    if r * r == n {
        r
    } else {
        r + 1
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (ma, mb) = (self.magnitude_bits(), other.magnitude_bits());
        if ma != mb {
            return ma.cmp(&mb);
        }
        // Same leading bit position: align on the larger exponent, which
        // cannot overflow because both numerators then have the same width.
        match self.exp.cmp(&other.exp) {
            Ordering::Equal => self.num.cmp(&other.num),
            Ordering::Greater => self.num.cmp(&(other.num << (self.exp - other.exp))),
            Ordering::Less => (self.num << (other.exp - self.exp)).cmp(&other.num),
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    /// Renders as `num/2^e` with `e >= 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp >= 0 {
            write!(f, "{}/2^{}", self.num, self.exp)
        } else {
            let n = self
                .num
                .checked_shl((-self.exp) as u32)
                .filter(|n| n >> (-self.exp) as u32 == self.num);
            match n {
                Some(n) => write!(f, "{}/2^0", n),
                None => write!(f, "{}*2^{}", self.num, -self.exp),
            }
        }
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 0,
            msg: format!("invalid dyadic `{s}`"),
        };
        let s = s.trim();
        match s.split_once("/2^") {
            Some((num, exp)) => {
                let num: u128 = num.parse().map_err(|_| bad())?;
                let exp: i32 = exp.parse().map_err(|_| bad())?;
                Ok(Dyadic::new(num, exp))
            }
            None => Ok(Dyadic::new(s.parse().map_err(|_| bad())?, 0)),
        }
    }
}

/// An exact base-2 logarithm in half units, enough for square roots of
/// powers of two.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Log2 {
    halves: i64,
}

impl Log2 {
    pub fn from_integer(e: i64) -> Self {
        Log2 { halves: 2 * e }
    }

    pub fn from_halves(halves: i64) -> Self {
        Log2 { halves }
    }

    pub fn halves(&self) -> i64 {
        self.halves
    }

    pub fn as_integer(&self) -> Option<i64> {
        (self.halves % 2 == 0).then_some(self.halves / 2)
    }

    pub fn to_f64(&self) -> f64 {
        self.halves as f64 / 2.0
    }
}

impl fmt::Display for Log2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.halves % 2 == 0 {
            write!(f, "{}", self.halves / 2)
        } else {
            let sign = if self.halves < 0 { "-" } else { "" };
            write!(f, "{}{}.5", sign, self.halves.abs() / 2)
        }
    }
}

impl FromStr for Log2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 0,
            msg: format!("invalid log2 value `{s}`"),
        };
        let s = s.trim();
        if let Some(int) = s.strip_suffix(".5") {
            let neg = int.starts_with('-');
            let whole: i64 = int.trim_start_matches('-').parse().map_err(|_| bad())?;
            let halves = 2 * whole + 1;
            Ok(Log2::from_halves(if neg { -halves } else { halves }))
        } else {
            Ok(Log2::from_integer(s.parse().map_err(|_| bad())?))
        }
    }
}

/// A length known exactly either directly or through its square.
///
/// ℓ∞ and ℓ1 lengths between dyadic points are dyadic; ℓ2 lengths are carried
/// as their exact dyadic square.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Magnitude {
    value: Dyadic,
    squared: bool,
}

impl Magnitude {
    pub fn length(value: Dyadic) -> Self {
        Magnitude {
            value,
            squared: false,
        }
    }

    pub fn from_square(square: Dyadic) -> Self {
        Magnitude {
            value: square,
            squared: true,
        }
    }

    /// The stored dyadic: the length itself, or its square.
    pub fn value(&self) -> Dyadic {
        self.value
    }

    pub fn is_squared(&self) -> bool {
        self.squared
    }

    /// Exact log2 of the length, when the length is a power of `sqrt(2)`.
    pub fn log2(&self) -> Option<Log2> {
        let e = self.value.log2()? as i64;
        Some(if self.squared {
            Log2::from_halves(e)
        } else {
            Log2::from_integer(e)
        })
    }

    pub fn half(&self) -> Self {
        let k = if self.squared { -2 } else { -1 };
        Magnitude {
            value: self.value.mul_pow2(k),
            squared: self.squared,
        }
    }

    /// Dyadic lower and upper bounds on the length.
    pub fn length_bounds(&self) -> (Dyadic, Dyadic) {
        if self.squared {
            self.value.sqrt_bounds()
        } else {
            (self.value, self.value)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let v = self.value.to_f64();
        if self.squared {
            v.sqrt()
        } else {
            v
        }
    }
}

impl PartialOrd for Magnitude {
    /// Only magnitudes of the same kind are comparable.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.squared == other.squared).then(|| self.value.cmp(&other.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalizes() {
        assert_eq!(Dyadic::new(4, 6), Dyadic::new(1, 4));
        assert_eq!(Dyadic::new(0, 9), Dyadic::ZERO);
        assert_eq!(Dyadic::new(2, 6).log2(), Some(-5));
        assert_eq!(Dyadic::new(3, 6).log2(), None);
        assert_eq!(Dyadic::new(8, 0), Dyadic::pow2(3));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(Dyadic::new(3, 6).to_string(), "3/2^6");
        assert_eq!(Dyadic::new(2, 0).to_string(), "2/2^0");
        assert_eq!("17/2^6".parse::<Dyadic>().unwrap(), Dyadic::new(17, 6));
        assert_eq!("34/2^7".parse::<Dyadic>().unwrap(), Dyadic::new(17, 6));
        assert!("x/2^3".parse::<Dyadic>().is_err());
        assert_eq!(Log2::from_halves(-11).to_string(), "-5.5");
        assert_eq!(Log2::from_halves(-10).to_string(), "-5");
        assert_eq!(Log2::from_halves(1).to_string(), "0.5");
        assert_eq!(Log2::from_halves(-1).to_string(), "-0.5");
        for h in -40..40 {
            let l = Log2::from_halves(h);
            assert_eq!(l.to_string().parse::<Log2>().unwrap(), l);
        }
    }

    #[test]
    fn sqrt_bounds_of_squares() {
        let (lo, hi) = Dyadic::new(1, 10).sqrt_bounds();
        assert_eq!((lo, hi), (Dyadic::pow2(-5), Dyadic::pow2(-5)));
        let (lo, hi) = Dyadic::new(2, 0).sqrt_bounds();
        assert!(lo < hi);
        assert!(lo.to_f64() <= 2f64.sqrt() && 2f64.sqrt() <= hi.to_f64());
        assert!(hi.to_f64() - lo.to_f64() < 1e-15);
    }

    #[test]
    fn magnitude_log2_and_half() {
        let m = Magnitude::from_square(Dyadic::pow2(-11));
        assert_eq!(m.log2(), Some(Log2::from_halves(-11)));
        assert_eq!(m.half().value(), Dyadic::pow2(-13));
        let l = Magnitude::length(Dyadic::pow2(-5));
        assert_eq!(l.half().log2(), Some(Log2::from_integer(-6)));
        assert!(l.partial_cmp(&m).is_none());
    }

    proptest! {
        #[test]
        fn ordering_matches_rationals(a in 0u64.., ea in -20i32..80, b in 0u64.., eb in -20i32..80) {
            let x = Dyadic::new(a as u128, ea);
            let y = Dyadic::new(b as u128, eb);
            prop_assert_eq!(x.cmp(&y), x.to_rational().cmp(&y.to_rational()));
        }

        #[test]
        fn add_sub_exact(a in 0u64.., ea in 0i32..60, b in 0u64.., eb in 0i32..60) {
            let x = Dyadic::new(a as u128, ea);
            let y = Dyadic::new(b as u128, eb);
            let s = x.checked_add(&y).unwrap();
            prop_assert_eq!(s.to_rational(), x.to_rational() + y.to_rational());
            prop_assert_eq!(s.checked_sub(&y).unwrap(), x);
        }

        #[test]
        fn sqrt_bounds_bracket(a in 1u64.., e in 0i32..128) {
            let v = Dyadic::new(a as u128, e);
            let (lo, hi) = v.sqrt_bounds();
            let r = v.to_rational();
            prop_assert!(lo.to_rational() * lo.to_rational() <= r);
            prop_assert!(hi.to_rational() * hi.to_rational() >= r);
        }

        #[test]
        fn isqrt_is_floor(n in any::<u128>()) {
            let r = isqrt(n);
            prop_assert!(r.checked_mul(r).unwrap() <= n);
            prop_assert!((r + 1).checked_mul(r + 1).is_none_or(|s| s > n));
        }
    }
}
