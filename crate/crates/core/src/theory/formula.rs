use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use crate::digital::sobol_point;
use crate::dyadic::Dyadic;
use crate::error::{domain, Result};
use crate::geometry::Norm;

/// Which case of the closed form applies to `m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Kind {
    /// `m = 2^v`.
    Pow2,
    /// `m = 2^v - 1` (and not a power of two).
    Pow2Minus1,
    /// `m = 2^v + 2^w + c` with `v > w >= 0` and `0 <= c < 2^w`.
    General,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Pow2 => "POW2",
            Kind::Pow2Minus1 => "POW2_MINUS1",
            Kind::General => "GENERAL",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MDecomposition {
    pub m: u32,
    pub kind: Kind,
    pub v: u32,
    /// Meaningful for [`Kind::General`] only (zero otherwise).
    pub w: u32,
    /// Meaningful for [`Kind::General`] only (zero otherwise).
    pub c: u32,
}

impl MDecomposition {
    pub fn big_v(&self) -> u64 {
        1 << self.v
    }

    pub fn big_w(&self) -> u64 {
        1 << self.w
    }
}

/// Classifies `m >= 1`. Powers of two win over `2^v - 1` forms, so `m = 1`
/// is `Pow2` with `v = 0` (and `m = 2` is `Pow2` with `v = 1`).
pub fn decompose(m: u32) -> Result<MDecomposition> {
    if m == 0 {
        return domain("decompose needs m >= 1");
    }
    let log2 = |x: u32| 31 - x.leading_zeros();
    let mut d = MDecomposition {
        m,
        kind: Kind::General,
        v: log2(m),
        w: 0,
        c: 0,
    };
    if m.is_power_of_two() {
        d.kind = Kind::Pow2;
    } else if (m + 1).is_power_of_two() {
        d.kind = Kind::Pow2Minus1;
        d.v = log2(m + 1);
    } else {
        let r = m - (1 << d.v);
        d.w = log2(r);
        d.c = r - (1 << d.w);
    }
    Ok(d)
}

/// Exact ℓ∞ separation radius of the first `2^m` Sobol' points:
/// `2^(-m-1)` when `m` is `2^v` or `2^v - 1`, else `2^(-2^v - 2^w)`.
pub fn separation_formula(m: u32) -> Result<Dyadic> {
    let d = decompose(m)?;
    let e = match d.kind {
        Kind::Pow2 | Kind::Pow2Minus1 => m as i32 + 1,
        Kind::General => (d.big_v() + d.big_w()) as i32,
    };
    Ok(Dyadic::pow2(-e))
}

/// Index pair `(2^(V+W-1) + 2^(W-1), 2^(V+W) - 2^W)` whose Sobol' points are
/// `2^(-V-W+1)` apart in ℓ∞, for `m` of kind [`Kind::General`]; `None`
/// otherwise.
pub fn witness_pair(m: u32) -> Result<Option<(u64, u64)>> {
    let d = decompose(m)?;
    if d.kind != Kind::General {
        return Ok(None);
    }
    let (v, w) = (d.big_v(), d.big_w());
    if v + w > 64 {
        return domain(format!("witness indices for m = {m} exceed 64 bits"));
    }
    let p = (1u64 << (v + w - 1)) + (1u64 << (w - 1));
    let q = ((1u128 << (v + w)) - (1u128 << w)) as u64;
    Ok(Some((p, q)))
}

/// Exact ℓ∞ distance between Sobol' points `p` and `q` at scale `m`.
pub fn sobol_distance(p: u64, q: u64, m: u32) -> Result<Dyadic> {
    let a = sobol_point(p, m)?;
    let b = sobol_point(q, m)?;
    Ok(Dyadic::new(
        Norm::LInf.distance((a.nx(), a.ny()), (b.nx(), b.ny())),
        m as i32,
    ))
}

/// `2^(quarters / 4)`: a power of two with exponent in quarter units.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct QuarterPow2 {
    pub quarters: i64,
}

impl QuarterPow2 {
    pub fn new(quarters: i64) -> Self {
        QuarterPow2 { quarters }
    }

    pub fn to_f64(&self) -> f64 {
        2f64.powf(self.quarters as f64 / 4.0)
    }

    /// Exact comparison of a dyadic `x` with this power: compares `x^4`
    /// with `2^quarters`.
    pub fn cmp_dyadic(&self, x: &Dyadic) -> Ordering {
        if x.is_zero() {
            return Ordering::Greater;
        }
        // x^4 = num^4 / 2^(4 exp) against 2^quarters.
        let lhs = BigUint::from(x.numerator()).pow(4);
        let shift = self.quarters + 4 * x.exponent() as i64;
        let one = BigUint::from(1u32);
        let ord = if shift >= 0 {
            lhs.cmp(&(one << shift as u64))
        } else {
            (lhs << (-shift) as u64).cmp(&one)
        };
        ord.reverse()
    }
}

impl fmt::Display for QuarterPow2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.quarters % 4 == 0 {
            write!(f, "2^{}", self.quarters / 4)
        } else {
            write!(f, "2^({}/4)", self.quarters)
        }
    }
}

/// Upper bounds on `q∞(Q_{2^m})` from the `N^(-3/4)` decay.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CorollaryBounds {
    pub m: u32,
    /// `2^(-3m/4 - 5/4)`, valid for every `m`.
    pub general_bound: QuarterPow2,
    /// `2^(-3m/4 - 3/2)`, valid for `m` not in `{1, 5}`.
    pub strong_bound: Option<QuarterPow2>,
    /// Whether the strong bound is attained, i.e. `m = 2^v - 2`, `v >= 2`.
    pub equality_expected: bool,
}

pub fn corollary_bounds(m: u32) -> Result<CorollaryBounds> {
    if m == 0 {
        return domain("corollary_bounds needs m >= 1");
    }
    let m4 = 3 * m as i64;
    Ok(CorollaryBounds {
        m,
        general_bound: QuarterPow2::new(-m4 - 5),
        strong_bound: (m != 1 && m != 5).then(|| QuarterPow2::new(-m4 - 6)),
        equality_expected: m >= 2 && (m + 2).is_power_of_two(),
    })
}

/// Outcome of checking the bounds against a separation radius.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BoundCheck {
    pub general_holds: bool,
    /// `None` when the strong bound does not apply.
    pub strong_holds: Option<bool>,
    /// `None` when the strong bound does not apply; otherwise whether
    /// attainment matches `equality_expected`.
    pub equality_matches: Option<bool>,
}

impl BoundCheck {
    pub fn all_hold(&self) -> bool {
        self.general_holds
            && self.strong_holds.unwrap_or(true)
            && self.equality_matches.unwrap_or(true)
    }
}

impl CorollaryBounds {
    pub fn check(&self, q: &Dyadic) -> BoundCheck {
        let general_holds = self.general_bound.cmp_dyadic(q) != Ordering::Less;
        let strong = self.strong_bound.map(|b| b.cmp_dyadic(q));
        BoundCheck {
            general_holds,
            strong_holds: strong.map(|o| o != Ordering::Less),
            equality_matches: strong.map(|o| (o == Ordering::Equal) == self.equality_expected),
        }
    }
}

/// Constant `C1` with `q∞(Q_N) <= C1 N^(-3/4)`: `2^(-1/2)` for `N >= 2`,
/// improved to `2^(-3/4)` from `N = 64` on.
pub fn limsup_constant(n: u64) -> Result<QuarterPow2> {
    match n {
        0 | 1 => domain(format!("limsup constant needs N >= 2, got {n}")),
        2..=63 => Ok(QuarterPow2::new(-2)),
        _ => Ok(QuarterPow2::new(-3)),
    }
}

/// Exact test of `N^(3/4) q <= C`: compares `q^4 N^3` with `C^4`.
pub fn decay_bound_holds(n: u64, q: &Dyadic, c: QuarterPow2) -> bool {
    // q^4 N^3 = num^4 N^3 / 2^(4 exp) <= 2^quarters
    let lhs = BigUint::from(q.numerator()).pow(4) * BigUint::from(n).pow(3);
    let shift = c.quarters + 4 * q.exponent() as i64;
    let one = BigUint::from(1u32);
    if shift >= 0 {
        lhs <= one << shift as u64
    } else {
        lhs << (-shift) as u64 <= one
    }
}
