use std::fmt;

use crate::dyadic::Dyadic;
use crate::error::{domain, Result};
use crate::MAX_SCALE;

/// A point `(nx / 2^scale, ny / 2^scale)` of `[0, 1)^2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DyadicPoint {
    scale: u32,
    nx: u64,
    ny: u64,
}

pub(crate) fn fits(v: u64, scale: u32) -> bool {
    scale >= 64 || v >> scale == 0
}

impl DyadicPoint {
    pub fn new(scale: u32, nx: u64, ny: u64) -> Result<Self> {
        if !(1..=MAX_SCALE).contains(&scale) {
            return domain(format!("scale {scale} outside 1..={MAX_SCALE}"));
        }
        if !fits(nx, scale) || !fits(ny, scale) {
            return domain(format!("numerators ({nx}, {ny}) not below 2^{scale}"));
        }
        Ok(DyadicPoint { scale, nx, ny })
    }

    pub(crate) fn new_unchecked(scale: u32, nx: u64, ny: u64) -> Self {
        debug_assert!(fits(nx, scale) && fits(ny, scale));
        DyadicPoint { scale, nx, ny }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn nx(&self) -> u64 {
        self.nx
    }

    pub fn ny(&self) -> u64 {
        self.ny
    }

    pub fn x(&self) -> Dyadic {
        Dyadic::new(self.nx as u128, self.scale as i32)
    }

    pub fn y(&self) -> Dyadic {
        Dyadic::new(self.ny as u128, self.scale as i32)
    }

    /// The same point expressed at a finer scale.
    pub fn rescale(&self, scale: u32) -> Result<Self> {
        if scale < self.scale || scale > MAX_SCALE {
            return domain(format!(
                "cannot rescale from 2^{} to 2^{scale}",
                self.scale
            ));
        }
        let s = scale - self.scale;
        Ok(DyadicPoint {
            scale,
            nx: self.nx << s,
            ny: self.ny << s,
        })
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x().to_f64(), self.y().to_f64())
    }
}

impl fmt::Display for DyadicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})/2^{}", self.nx, self.ny, self.scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_range() {
        assert!(DyadicPoint::new(3, 7, 0).is_ok());
        assert!(DyadicPoint::new(3, 8, 0).is_err());
        assert!(DyadicPoint::new(0, 0, 0).is_err());
        assert!(DyadicPoint::new(65, 0, 0).is_err());
        assert!(DyadicPoint::new(64, u64::MAX, u64::MAX).is_ok());
    }

    #[test]
    fn rescale_keeps_value() {
        let p = DyadicPoint::new(3, 5, 1).unwrap();
        let q = p.rescale(10).unwrap();
        assert_eq!((q.nx(), q.ny()), (5 << 7, 1 << 7));
        assert_eq!((q.x(), q.y()), (p.x(), p.y()));
        assert!(p.rescale(2).is_err());
    }
}
