use std::fmt;
use std::str::FromStr;

use crate::dyadic::{isqrt_ceil, Dyadic, Magnitude};
use crate::error::{domain, Error, Result};

/// The ℓp norm used to measure distances.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Norm {
    L1,
    L2,
    LInf,
}

impl Norm {
    pub const ALL: [Norm; 3] = [Norm::L1, Norm::L2, Norm::LInf];

    /// Largest working scale for which distance numerators fit a `u128`.
    pub fn max_scale(self) -> u32 {
        match self {
            Norm::L2 => 63,
            Norm::L1 | Norm::LInf => 64,
        }
    }

    pub(crate) fn check_scale(self, scale: u32) -> Result<()> {
        if scale > self.max_scale() {
            return domain(format!(
                "{self} distances need scale <= {}, got {scale}",
                self.max_scale()
            ));
        }
        Ok(())
    }

    /// Distance numerator between two points at a common scale `s`: over
    /// `2^s` for ℓ1 and ℓ∞, and the squared distance over `2^(2s)` for ℓ2.
    #[inline]
    pub fn distance(self, a: (u64, u64), b: (u64, u64)) -> u128 {
        let dx = a.0.abs_diff(b.0) as u128;
        let dy = a.1.abs_diff(b.1) as u128;
        match self {
            Norm::LInf => dx.max(dy),
            Norm::L1 => dx + dy,
            Norm::L2 => dx * dx + dy * dy,
        }
    }

    /// A coordinate-wise bound `w`: any pair within distance numerator `d`
    /// has `|dx| <= w` and `|dy| <= w`.
    #[inline]
    pub fn window(self, d: u128) -> u128 {
        match self {
            Norm::LInf | Norm::L1 => d,
            Norm::L2 => isqrt_ceil(d),
        }
    }

    /// Whether distance numerator `d` is at most the ℓ∞ length `len`
    /// (both at the same scale).
    #[inline]
    pub(crate) fn within_linf(self, d: u128, len: u128) -> bool {
        match self {
            Norm::LInf | Norm::L1 => d <= len,
            Norm::L2 => len.checked_mul(len).is_none_or(|sq| d <= sq),
        }
    }

    /// Interprets a distance numerator produced at scale `scale`.
    pub fn magnitude(self, num: u128, scale: u32) -> Magnitude {
        match self {
            Norm::LInf | Norm::L1 => Magnitude::length(Dyadic::new(num, scale as i32)),
            Norm::L2 => Magnitude::from_square(Dyadic::new(num, 2 * scale as i32)),
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::L1 => "l1",
            Norm::L2 => "l2",
            Norm::LInf => "linf",
        })
    }
}

impl FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "l1" => Ok(Norm::L1),
            "l2" => Ok(Norm::L2),
            "linf" | "l_inf" | "inf" => Ok(Norm::LInf),
            other => domain(format!("unknown norm `{other}` (expected l1, l2 or linf)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances() {
        let (a, b) = ((1, 7), (4, 3));
        assert_eq!(Norm::LInf.distance(a, b), 4);
        assert_eq!(Norm::L1.distance(a, b), 7);
        assert_eq!(Norm::L2.distance(a, b), 25);
        let far = (u64::MAX >> 1, u64::MAX >> 1);
        assert_eq!(Norm::L2.distance((0, 0), far), 2 * (far.0 as u128).pow(2));
    }

    #[test]
    fn windows_cover_coordinates() {
        for d in 0..2000u128 {
            let w = Norm::L2.window(d);
            assert!(w * w >= d);
            assert!(w == 0 || (w - 1) * (w - 1) < d);
        }
    }

    #[test]
    fn parse_roundtrip() {
        for n in Norm::ALL {
            assert_eq!(n.to_string().parse::<Norm>().unwrap(), n);
        }
        assert!("l3".parse::<Norm>().is_err());
    }
}
